#pragma once

#include <cstddef>
#include <istream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "wzz/birth_order.hpp"
#include "wzz/simplex.hpp"

namespace wzz {

enum class WireKind : char { NonBoundary = 'N', Boundary = 'B' };

/// A fixed cycle with a starting index. Cycles live in the total complex.
struct Wire {
    Index start = 0;
    WireKind kind = WireKind::NonBoundary;
    int degree = 0;
    KeyChain cycle;
};

/// A set of wire starting indices, kept sorted.
struct Bundle {
    std::vector<Index> wires;

    Bundle() = default;
    Bundle(std::initializer_list<Index> starts);
    explicit Bundle(std::vector<Index> starts);

    bool empty() const { return wires.empty(); }
    std::size_t size() const { return wires.size(); }
    Bundle& operator^=(const Bundle& other);
    friend bool operator==(const Bundle&, const Bundle&) = default;
};

/// Symmetric difference of the two index sets.
Bundle bundle_sum(const Bundle& a, const Bundle& b);

struct Segment {
    Index lo = 0;
    Index hi = 0;
    Chain cycle;

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// An explicit interval representative stored as maximal constant segments
/// partitioning [birth, death].
struct Representative {
    Module module = Module::H;
    int degree = 0;
    Index birth = 0;
    Index death = 0;
    std::vector<Segment> segments;

    /// Cycle at index alpha in [birth, death].
    const Chain& at(Index alpha) const;
    friend bool operator==(const Representative&, const Representative&) = default;
};

class WireError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Registry of all wires of one run, at most one per starting index.
class WireStore {
public:
    WireStore() : table_(std::make_shared<SimplexTable>()) {}
    explicit WireStore(std::shared_ptr<SimplexTable> table) : table_(std::move(table)) {}

    /// Registers a wire from an explicit cycle. Throws WireError on a duplicate
    /// start, a non-cycle or an empty cycle.
    Index register_wire(Index start, const Chain& cycle, WireKind kind);
    /// Same, from a sorted key chain already interned in table().
    Index register_wire(Index start, KeyChain cycle, int degree, WireKind kind);

    bool contains(Index start) const;
    const Wire& wire(Index start) const;
    std::size_t size() const { return count_; }
    /// All registered starting indices in increasing order.
    std::vector<Index> starts() const;

    /// Sum of the wires of W starting at or before i.
    KeyChain bundle_last_keys(const Bundle& w, Index i) const;
    Chain bundle_last_cycle(const Bundle& w, Index i) const;

    /// Expands a bundle into the representative it generates on [b, d].
    Representative extract_representative(const Bundle& w, Module module, Index b, Index d) const;

    const SimplexTable& table() const { return *table_; }
    SimplexTable& table() { return *table_; }
    std::shared_ptr<SimplexTable> shared_table() const { return table_; }

    std::size_t footprint_bytes() const { return footprint_; }

private:
    std::shared_ptr<SimplexTable> table_;
    std::vector<Wire> wires_;
    std::vector<std::int64_t> slot_;  // start -> position in wires_, -1 if none
    std::size_t count_ = 0;
    std::size_t footprint_ = 0;
};

/// Representative file: per interval `R <H|B> <p> <b> <d> <nsegs>`, then per
/// segment `S <lo> <hi> <nsimplices>` followed by one simplex per line.
void write_representatives(std::ostream& out, const std::vector<Representative>& reps);
std::vector<Representative> read_representatives(std::istream& in);

}  // namespace wzz
