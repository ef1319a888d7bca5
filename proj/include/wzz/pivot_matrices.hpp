#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wzz/birth_order.hpp"
#include "wzz/simplex.hpp"
#include "wzz/wire_store.hpp"

namespace wzz {

/// A matrix column as the sorted live-ids of its simplices; the pivot is the
/// last entry.
using IdColumn = std::vector<Index>;

inline std::optional<Index> column_pivot(const IdColumn& c)
{
    if (c.empty()) return std::nullopt;
    return c.back();
}

/// Broken internal invariant. Carries the arrow index once the engine knows it.
class InvariantError : public std::logic_error {
public:
    explicit InvariantError(const std::string& what, std::optional<std::size_t> arrow = std::nullopt)
        : std::logic_error(arrow ? "arrow " + std::to_string(*arrow) + ": " + what : what),
          arrow_(arrow), detail_(what) {}
    std::optional<std::size_t> arrow() const { return arrow_; }
    const std::string& detail() const { return detail_; }

private:
    std::optional<std::size_t> arrow_;
    std::string detail_;
};

enum class Family : char { Z = 'Z', B = 'B', C = 'C' };

/// A cycle column of Z tracking the last cycle of an active homology interval.
struct ColumnZ {
    IdColumn chain;
    BirthKey birth;
    Bundle bundle;
    int degree = 0;
};

/// A paired column of B and C: bchain = boundary(cchain), tracking the last
/// cycle of an active boundary interval.
struct ColumnBC {
    IdColumn bchain;
    IdColumn cchain;
    BirthKey birth;
    Bundle bundle;
    int degree = 0;  ///< degree of bchain
};

/// Handle to a Z column or a B/C column pair.
struct ColumnRef {
    Family family = Family::Z;  ///< Z or B
    std::uint32_t slot = 0;

    friend bool operator==(const ColumnRef&, const ColumnRef&) = default;
};

/// One column summation: source was added into target; pivot is the shared
/// pivot that triggered it (or the pivot of the target before the sum).
struct Summation {
    ColumnRef target;
    ColumnRef source;
    Index pivot = 0;
    BirthKey target_birth;
    BirthKey source_birth;
};

/// Columns whose sum reproduces a cycle exactly.
struct Reduction {
    std::vector<std::uint32_t> z;  ///< Z slots (the set J)
    std::vector<std::uint32_t> b;  ///< B/C slots (the set I)
};

/// The Z, B and C column families. Pivots of Z and B columns are kept
/// pairwise distinct outside of an explicit add/restore window.
class MatrixTriple {
public:
    std::uint32_t add_z_column(ColumnZ col);
    std::uint32_t add_bc_column(ColumnBC col);
    void delete_z_column(std::uint32_t slot);
    void delete_bc_column(std::uint32_t slot);

    /// Pivot-matching elimination of a cycle against Z and B. Throws
    /// InvariantError if a residual remains.
    Reduction reduce_boundary(const IdColumn& cycle) const;

    /// Resolves the (at most one) pivot collision left by the last add, summing
    /// the earlier-born column into the later one until pivots are distinct.
    std::vector<Summation> restore_distinct_pivots();

    /// Slots of columns of the given family whose chain contains live-id id.
    /// For Family::C the slot is the B/C pair slot.
    std::vector<std::uint32_t> columns_containing(Family which, Index id);
    /// Forgets row-index entries of a live-id that has left the complex.
    void drop_rows(Index id);

    // Raw column arithmetic. These keep the row index current but do not touch
    // pivot ownership; callers bracket them with release/claim_pivot.
    void add_to_z(std::uint32_t slot, const IdColumn& chain, const Bundle& bundle, int degree);
    void add_to_bc(std::uint32_t slot, const IdColumn& bchain, const IdColumn& cchain,
                   const Bundle& bundle, int degree);
    void add_to_c(std::uint32_t slot, const IdColumn& cchain);

    /// Drops pivot ownership of the column if it holds it.
    void release_pivot(ColumnRef ref);
    /// Takes ownership of the column's current pivot; throws InvariantError on
    /// a clash or an empty column.
    void claim_pivot(ColumnRef ref);

    const ColumnZ& z(std::uint32_t slot) const { return z_.at(slot).col; }
    const ColumnBC& bc(std::uint32_t slot) const { return bc_.at(slot).col; }
    const IdColumn& chain(ColumnRef ref) const;
    const BirthKey& birth(ColumnRef ref) const;

    std::vector<std::uint32_t> z_slots() const;
    std::vector<std::uint32_t> bc_slots() const;
    std::size_t z_count() const { return z_count_; }
    std::size_t bc_count() const { return bc_count_; }
    std::optional<ColumnRef> pivot_owner(Index id) const;

    /// Full recheck: Z and B pivots pairwise distinct and the pivot table
    /// agrees with the columns.
    bool pivots_distinct() const;

    std::size_t footprint_bytes() const;

private:
    struct RowEntry {
        std::uint32_t slot;
        std::uint64_t uid;
    };
    template <class Col>
    struct Slot {
        Col col;
        std::uint64_t uid = 0;
        bool alive = false;
    };

    void index_rows(std::vector<std::vector<RowEntry>>& rows, const IdColumn& entries,
                    std::uint32_t slot, std::uint64_t uid);
    void index_new_rows(std::vector<std::vector<RowEntry>>& rows, const IdColumn& target,
                        const IdColumn& added, std::uint32_t slot, std::uint64_t uid);
    void set_owner(Index id, std::optional<ColumnRef> ref);
    void sum_into(ColumnRef target, ColumnRef source);

    std::vector<Slot<ColumnZ>> z_;
    std::vector<Slot<ColumnBC>> bc_;
    std::vector<std::uint32_t> z_free_, bc_free_;
    std::size_t z_count_ = 0, bc_count_ = 0;
    std::uint64_t next_uid_ = 1;

    // Lazily pruned row indices: per live-id, columns that may contain it.
    std::vector<std::vector<RowEntry>> z_rows_, c_rows_;
    // live-id -> owning Z/B column, encoded as 2*slot + (family == B) + 1; 0 = none.
    std::vector<std::uint64_t> owner_;
    std::optional<ColumnRef> pending_;
};

}  // namespace wzz
