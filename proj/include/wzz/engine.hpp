#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <vector>

#include "wzz/birth_order.hpp"
#include "wzz/filtration.hpp"
#include "wzz/pivot_matrices.hpp"
#include "wzz/wire_store.hpp"

namespace wzz {

/// A finalized bar of the homology (H) or boundary (B) zigzag module.
struct Interval {
    Module module = Module::H;
    int degree = 0;
    Index birth = 0;
    Index death = 0;
    Direction arrow_into_birth = Direction::Forward;
    Bundle bundle;

    BirthKey key() const { return {birth, module, arrow_into_birth}; }
};

/// Barcode order: H before B, then degree, birth, death.
bool barcode_less(const Interval& a, const Interval& b);

struct RunStats {
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t h_intervals = 0;
    std::size_t b_intervals = 0;
    std::size_t wires = 0;
    std::size_t summations = 0;
    /// Largest sampled size of the engine's own data (columns, bundles, wires).
    std::size_t peak_footprint_bytes = 0;
};

struct PersistenceResult {
    std::vector<Interval> intervals;  ///< in barcode order
    WireStore wires;
    RunStats stats;

    Representative representative(const Interval& iv) const;
    /// Representatives for every interval, in barcode order.
    std::vector<Representative> representatives() const;
};

enum class StepCase {
    ForwardBirth,   ///< insertion, homology birth
    ForwardDeath,   ///< insertion, homology death + boundary birth
    BackwardBirth,  ///< deletion, boundary death + homology birth
    BackwardDeath,  ///< deletion, homology death
};

struct StepReport {
    Index arrow = 0;
    StepCase kind = StepCase::ForwardBirth;
    std::optional<Interval> finalized;
    std::optional<Index> new_wire;
    Reduction reduction;  ///< forward arrows only
    std::vector<Summation> summations;
};

/// Incremental zigzag persistence with wire-bundle representatives. One
/// instance processes one filtration, one arrow per step().
class WiredZigzag {
public:
    /// Throws FiltrationError if f is not a valid zigzag filtration.
    /// Keeps a reference to f.
    explicit WiredZigzag(const ZigzagFiltration& f);
    explicit WiredZigzag(ZigzagFiltration&&) = delete;

    bool done() const { return next_ == filtration_->length(); }
    /// Index of the next arrow, equal to the index of the current complex.
    Index current_index() const { return static_cast<Index>(next_); }

    StepReport step();
    /// Closes every active interval at m. Call once, after the last step.
    PersistenceResult finish();

    const MatrixTriple& matrices() const { return matrices_; }
    MatrixTriple& matrices() { return matrices_; }
    const WireStore& wires() const { return wires_; }
    const std::vector<Interval>& finalized() const { return finalized_; }

    /// A matrix column converted from live-ids to total-complex keys.
    KeyChain to_keys(const IdColumn& c) const;
    Chain to_chain(const IdColumn& c) const;
    std::optional<Index> live_id(const Simplex& s) const;
    /// Column slots of the given family containing a live simplex.
    std::vector<std::uint32_t> columns_containing(Family which, const Simplex& s);

    BirthKey birth_key(Index b, Module module) const;

private:
    void forward(Index i, SimplexKey key, StepReport& report);
    void backward(Index i, SimplexKey key, StepReport& report);
    IdColumn boundary_ids(SimplexKey key) const;
    void finalize(Module module, int degree, Index birth, Index death, Bundle bundle,
                  StepReport* report);
    void sample_footprint();

    const ZigzagFiltration* filtration_;
    std::shared_ptr<SimplexTable> table_;
    WireStore wires_;
    MatrixTriple matrices_;
    std::vector<SimplexKey> key_of_arrow_;
    std::vector<std::vector<SimplexKey>> faces_;
    std::vector<std::int64_t> live_;  // key -> live-id, -1 when absent
    std::vector<Interval> finalized_;
    std::size_t next_ = 0;
    std::size_t size_ = 0;
    std::size_t finalized_bytes_ = 0;
    RunStats stats_;
    bool finished_ = false;
};

/// Runs the whole filtration.
PersistenceResult run(const ZigzagFiltration& f);

/// Barcode text: one `<H|B> <p> <b> <d>` line per interval, barcode order.
struct BarEntry {
    Module module = Module::H;
    int degree = 0;
    Index birth = 0;
    Index death = 0;

    friend auto operator<=>(const BarEntry&, const BarEntry&) = default;
};

std::vector<BarEntry> bars(const std::vector<Interval>& intervals, bool include_boundary = true);
void write_barcode(std::ostream& out, const std::vector<BarEntry>& bars);
std::vector<BarEntry> read_barcode(std::istream& in);
void sort_barcode(std::vector<BarEntry>& bars);

}  // namespace wzz
