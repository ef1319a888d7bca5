#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "wzz/birth_order.hpp"
#include "wzz/engine.hpp"
#include "wzz/filtration.hpp"
#include "wzz/simplex.hpp"
#include "wzz/wire_store.hpp"

namespace wzz {

/// Dense Z2 vector.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t bits) : words_((bits + 63) / 64, 0) {}

    void set(std::size_t k) { words_[k / 64] |= std::uint64_t{1} << (k % 64); }
    void flip(std::size_t k) { words_[k / 64] ^= std::uint64_t{1} << (k % 64); }
    bool test(std::size_t k) const { return (words_[k / 64] >> (k % 64)) & 1; }
    BitVec& operator^=(const BitVec& o);
    bool none() const;
    /// Highest set bit, or -1.
    long top() const;

private:
    std::vector<std::uint64_t> words_;
};

/// Row echelon form over Z2, keyed by the highest set bit.
class Echelon {
public:
    /// Reduces v in place; true if it ends up zero.
    bool reduce(BitVec& v) const;
    /// Adds v to the span. Returns false if v was already in it.
    bool insert(BitVec v);
    std::size_t rank() const { return rows_.size(); }

private:
    std::unordered_map<long, BitVec> rows_;
};

struct BettiNumbers {
    // Indexed by degree p.
    std::vector<int> z, b, h;

    int cycles(int p) const { return p >= 0 && p < static_cast<int>(z.size()) ? z[p] : 0; }
    int boundaries(int p) const { return p >= 0 && p < static_cast<int>(b.size()) ? b[p] : 0; }
    int homology(int p) const { return p >= 0 && p < static_cast<int>(h.size()) ? h[p] : 0; }
};

BettiNumbers betti_numbers(const ComplexState& k);

/// Whether z bounds in k. Throws std::invalid_argument if z is not a cycle
/// of k.
bool is_boundary(const ComplexState& k, const Chain& z);

/// Per-index facts about one filtration with cached elimination bases.
/// Meant for small inputs.
class Oracle {
public:
    /// Keeps a reference to f.
    explicit Oracle(const ZigzagFiltration& f);
    explicit Oracle(ZigzagFiltration&&) = delete;

    std::size_t m() const { return f_->length(); }
    const ZigzagFiltration& filtration() const { return *f_; }
    const ComplexState& complex(std::size_t j) const { return complexes_.at(j); }
    /// z is a cycle with all simplices in K_j.
    bool is_cycle_in(std::size_t j, const Chain& z) const;
    /// z lies in B(K_j). False when z is not contained in K_j.
    bool in_boundaries(std::size_t j, const Chain& z);
    const BettiNumbers& betti(std::size_t j);
    int max_degree() const { return max_dim_; }

    /// Rank of the given degree-p chains, all of which must be in the total complex.
    std::size_t rank(int p, const std::vector<Chain>& chains) const;

private:
    BitVec vectorize(int p, const Chain& c) const;
    const Echelon& boundary_basis(std::size_t j, int p);

    const ZigzagFiltration* f_;
    std::vector<ComplexState> complexes_;
    int max_dim_ = -1;
    // per degree: simplex -> position in the bit vectors
    std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> position_;
    std::vector<std::unordered_map<int, Echelon>> bases_;
    std::vector<std::optional<BettiNumbers>> betti_;
};

/// Outcome of a batch of checks: one line per check.
class Certificate {
public:
    void pass(const std::string& check);
    void fail(const std::string& check, const std::string& context);
    void merge(const Certificate& other);

    bool ok() const { return failures_ == 0; }
    std::size_t failures() const { return failures_; }
    const std::vector<std::string>& lines() const { return lines_; }
    /// First failing line, if any.
    std::optional<std::string> first_failure() const;
    void write(std::ostream& out) const;

private:
    std::vector<std::string> lines_;
    std::size_t failures_ = 0;
};

/// Checks rep against the representative conditions for its interval in the
/// prefix of the filtration ending at index horizon (default m).
Certificate check_representative(Oracle& oracle, const Representative& rep,
                                 std::optional<std::size_t> horizon = std::nullopt);

/// Birth and death index multisets per module and degree, derived from Betti
/// numbers of consecutive complexes.
struct IndexSets {
    // [degree] -> sorted indices
    std::vector<std::vector<Index>> h_births, h_deaths, b_births, b_deaths;
};
IndexSets birth_death_sets(Oracle& oracle);

/// Matches interval births and deaths against the independently derived
/// index sets and checks b <= d.
Certificate check_pairing(Oracle& oracle, const std::vector<BarEntry>& bars, bool check_boundary = true);

Certificate check_wire(Oracle& oracle, const Wire& wire, const SimplexTable& table);

/// Standard column reduction for an all-insert filtration, in the zigzag
/// index convention.
std::vector<BarEntry> classical_persistence(const ZigzagFiltration& f);

Certificate check_order_properties(const std::vector<BirthKey>& keys);

/// Checks that the H cycles and B cycles at index j together form a basis of
/// Z(K_j) and the B cycles a basis of B(K_j), degree by degree.
Certificate check_cycle_basis(Oracle& oracle, std::size_t j, const std::vector<Chain>& h_cycles,
                              const std::vector<Chain>& b_cycles);

/// Sum of representatives for [b, i] and [b', i] with b before b' in the
/// birth order; the result is for [b', i] in the module of the second.
Representative representative_sum(const Representative& rep, const Representative& rep2);

/// Runs every check on an engine result: representatives, pairing, wires.
Certificate certify(Oracle& oracle, const PersistenceResult& result);

}  // namespace wzz
