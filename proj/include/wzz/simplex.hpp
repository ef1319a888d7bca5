#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace wzz {

using Vertex = std::uint32_t;
/// Arrow / complex index. Also used as the live-id of a simplex, which is the
/// arrow index at which it was most recently inserted.
using Index = std::uint32_t;
/// Identity of a simplex in the total complex (union of all complexes).
using SimplexKey = std::uint32_t;

/// A simplex given by its strictly increasing vertex list.
class Simplex {
public:
    Simplex() = default;
    explicit Simplex(std::vector<Vertex> vertices);
    Simplex(std::initializer_list<Vertex> vertices);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
    std::size_t size() const { return vertices_.size(); }

    /// Codimension-one faces; face k omits vertex k.
    std::vector<Simplex> faces() const;
    bool is_face_of(const Simplex& other) const;

    std::string to_string() const;

    friend auto operator<=>(const Simplex&, const Simplex&) = default;
    friend bool operator==(const Simplex&, const Simplex&) = default;

private:
    std::vector<Vertex> vertices_;
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept;
};

/// A Z2 chain: a finite set of simplices of one common dimension.
/// The empty chain has no degree and is compatible with every degree.
class Chain {
public:
    Chain() = default;
    /// Repeated simplices cancel in pairs.
    explicit Chain(std::vector<Simplex> simplices);
    Chain(std::initializer_list<Simplex> simplices);

    bool empty() const { return simplices_.empty(); }
    std::size_t size() const { return simplices_.size(); }
    std::optional<int> degree() const;
    bool contains(const Simplex& s) const;

    const std::vector<Simplex>& simplices() const { return simplices_; }
    auto begin() const { return simplices_.begin(); }
    auto end() const { return simplices_.end(); }

    Chain& operator+=(const Chain& other);
    friend Chain operator+(Chain a, const Chain& b) { return a += b; }
    friend bool operator==(const Chain&, const Chain&) = default;

    std::string to_string() const;

private:
    std::vector<Simplex> simplices_;  // sorted, unique
};

/// Z2 sum; throws std::invalid_argument on a degree mismatch between two
/// non-empty chains.
Chain chain_add(const Chain& a, const Chain& b);

/// Simplicial boundary over Z2.
Chain boundary(const Chain& c);
Chain boundary(const Simplex& s);

/// The live simplices of one complex together with their live-ids.
class ComplexState {
public:
    bool contains(const Simplex& s) const { return live_.count(s) != 0; }
    std::optional<Index> live_id(const Simplex& s) const;
    std::size_t size() const { return live_.size(); }
    bool empty() const { return live_.empty(); }

    void insert(const Simplex& s, Index id);
    void erase(const Simplex& s);

    /// Live simplices in lexicographic order.
    std::vector<Simplex> simplices() const;
    bool contains_chain(const Chain& c) const;

private:
    std::unordered_map<Simplex, Index, SimplexHash> live_;
};

/// Largest live-id among the simplices of c; nullopt for the empty chain.
/// Throws std::out_of_range if some simplex of c is not live.
std::optional<Index> pivot(const Chain& c, const ComplexState& state);

using KeyChain = std::vector<SimplexKey>;  // sorted

/// Interning table for the total complex.
class SimplexTable {
public:
    SimplexKey intern(const Simplex& s);
    std::optional<SimplexKey> find(const Simplex& s) const;
    const Simplex& simplex(SimplexKey k) const { return simplices_[k]; }
    std::size_t size() const { return simplices_.size(); }

    Chain to_chain(std::span<const SimplexKey> keys) const;
    KeyChain to_keys(const Chain& c);

private:
    std::vector<Simplex> simplices_;
    std::unordered_map<Simplex, SimplexKey, SimplexHash> index_;
};

}  // namespace wzz
