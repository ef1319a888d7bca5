#include "wzz/pivot_matrices.hpp"

#include <algorithm>
#include <unordered_set>

#include "wzz/sorted_ops.hpp"

namespace wzz {

namespace {

std::uint64_t encode(ColumnRef ref)
{
    return 2 * static_cast<std::uint64_t>(ref.slot) + (ref.family == Family::B ? 1 : 0) + 1;
}

ColumnRef decode(std::uint64_t code)
{
    --code;
    return {(code & 1) ? Family::B : Family::Z, static_cast<std::uint32_t>(code >> 1)};
}

template <class SlotVec>
std::uint32_t allocate(SlotVec& slots, std::vector<std::uint32_t>& free_list)
{
    if (!free_list.empty()) {
        auto s = free_list.back();
        free_list.pop_back();
        return s;
    }
    slots.emplace_back();
    return static_cast<std::uint32_t>(slots.size() - 1);
}

void check_degree(int have, int got, bool empty)
{
    if (!empty && have != got)
        throw InvariantError("summing columns of degree " + std::to_string(got) + " into degree " +
                             std::to_string(have));
}

}  // namespace

void MatrixTriple::index_rows(std::vector<std::vector<RowEntry>>& rows, const IdColumn& entries,
                              std::uint32_t slot, std::uint64_t uid)
{
    for (Index id : entries) {
        if (rows.size() <= id) rows.resize(std::max<std::size_t>(id + 1, rows.size() * 2));
        rows[id].push_back({slot, uid});
    }
}

void MatrixTriple::index_new_rows(std::vector<std::vector<RowEntry>>& rows, const IdColumn& target,
                                  const IdColumn& added, std::uint32_t slot, std::uint64_t uid)
{
    auto t = target.begin();
    for (Index id : added) {
        while (t != target.end() && *t < id) ++t;
        if (t != target.end() && *t == id) continue;
        if (rows.size() <= id) rows.resize(std::max<std::size_t>(id + 1, rows.size() * 2));
        rows[id].push_back({slot, uid});
    }
}

void MatrixTriple::set_owner(Index id, std::optional<ColumnRef> ref)
{
    if (owner_.size() <= id) owner_.resize(std::max<std::size_t>(id + 1, owner_.size() * 2), 0);
    owner_[id] = ref ? encode(*ref) : 0;
}

std::optional<ColumnRef> MatrixTriple::pivot_owner(Index id) const
{
    if (id >= owner_.size() || owner_[id] == 0) return std::nullopt;
    return decode(owner_[id]);
}

const IdColumn& MatrixTriple::chain(ColumnRef ref) const
{
    return ref.family == Family::Z ? z(ref.slot).chain : bc(ref.slot).bchain;
}

const BirthKey& MatrixTriple::birth(ColumnRef ref) const
{
    return ref.family == Family::Z ? z(ref.slot).birth : bc(ref.slot).birth;
}

std::uint32_t MatrixTriple::add_z_column(ColumnZ col)
{
    if (pending_) throw InvariantError("column added while a pivot collision is pending");
    if (col.chain.empty()) throw InvariantError("empty Z column");
    auto slot = allocate(z_, z_free_);
    auto& s = z_[slot];
    s.col = std::move(col);
    s.uid = next_uid_++;
    s.alive = true;
    ++z_count_;
    index_rows(z_rows_, s.col.chain, slot, s.uid);

    ColumnRef ref{Family::Z, slot};
    if (pivot_owner(s.col.chain.back())) pending_ = ref;
    else set_owner(s.col.chain.back(), ref);
    return slot;
}

std::uint32_t MatrixTriple::add_bc_column(ColumnBC col)
{
    if (pending_) throw InvariantError("column added while a pivot collision is pending");
    if (col.bchain.empty() || col.cchain.empty()) throw InvariantError("empty B/C column");
    auto slot = allocate(bc_, bc_free_);
    auto& s = bc_[slot];
    s.col = std::move(col);
    s.uid = next_uid_++;
    s.alive = true;
    ++bc_count_;
    index_rows(c_rows_, s.col.cchain, slot, s.uid);

    ColumnRef ref{Family::B, slot};
    if (pivot_owner(s.col.bchain.back())) pending_ = ref;
    else set_owner(s.col.bchain.back(), ref);
    return slot;
}

void MatrixTriple::delete_z_column(std::uint32_t slot)
{
    if (slot >= z_.size() || !z_[slot].alive) throw std::out_of_range("no Z column in slot " + std::to_string(slot));
    release_pivot({Family::Z, slot});
    z_[slot].alive = false;
    z_[slot].col = ColumnZ{};
    z_free_.push_back(slot);
    --z_count_;
}

void MatrixTriple::delete_bc_column(std::uint32_t slot)
{
    if (slot >= bc_.size() || !bc_[slot].alive) throw std::out_of_range("no B/C column in slot " + std::to_string(slot));
    release_pivot({Family::B, slot});
    bc_[slot].alive = false;
    bc_[slot].col = ColumnBC{};
    bc_free_.push_back(slot);
    --bc_count_;
}

void MatrixTriple::release_pivot(ColumnRef ref)
{
    const auto& c = chain(ref);
    if (c.empty()) return;
    auto owner = pivot_owner(c.back());
    if (owner && *owner == ref) set_owner(c.back(), std::nullopt);
}

void MatrixTriple::claim_pivot(ColumnRef ref)
{
    const auto& c = chain(ref);
    if (c.empty()) throw InvariantError("column became empty");
    auto owner = pivot_owner(c.back());
    if (owner && !(*owner == ref))
        throw InvariantError("pivot " + std::to_string(c.back()) + " claimed twice");
    set_owner(c.back(), ref);
}

void MatrixTriple::add_to_z(std::uint32_t slot, const IdColumn& chain, const Bundle& bundle, int degree)
{
    auto& s = z_.at(slot);
    check_degree(s.col.degree, degree, chain.empty());
    index_new_rows(z_rows_, s.col.chain, chain, slot, s.uid);
    xor_sorted(s.col.chain, chain);
    s.col.bundle ^= bundle;
}

void MatrixTriple::add_to_bc(std::uint32_t slot, const IdColumn& bchain, const IdColumn& cchain,
                             const Bundle& bundle, int degree)
{
    auto& s = bc_.at(slot);
    check_degree(s.col.degree, degree, bchain.empty());
    index_new_rows(c_rows_, s.col.cchain, cchain, slot, s.uid);
    xor_sorted(s.col.bchain, bchain);
    xor_sorted(s.col.cchain, cchain);
    s.col.bundle ^= bundle;
}

void MatrixTriple::add_to_c(std::uint32_t slot, const IdColumn& cchain)
{
    auto& s = bc_.at(slot);
    index_new_rows(c_rows_, s.col.cchain, cchain, slot, s.uid);
    xor_sorted(s.col.cchain, cchain);
}

void MatrixTriple::sum_into(ColumnRef target, ColumnRef source)
{
    if (target.family == Family::Z) {
        if (source.family == Family::Z) {
            const auto& src = z(source.slot);
            add_to_z(target.slot, src.chain, src.bundle, src.degree);
        } else {
            const auto& src = bc(source.slot);
            add_to_z(target.slot, src.bchain, src.bundle, src.degree);
        }
    } else {
        if (source.family != Family::B) throw InvariantError("a Z column cannot be added into B");
        const auto& src = bc(source.slot);
        add_to_bc(target.slot, src.bchain, src.cchain, src.bundle, src.degree);
    }
}

Reduction MatrixTriple::reduce_boundary(const IdColumn& cycle) const
{
    if (pending_) throw InvariantError("reduction while a pivot collision is pending");
    Reduction out;
    IdColumn work = cycle;
    while (!work.empty()) {
        auto owner = pivot_owner(work.back());
        if (!owner)
            throw InvariantError("cycle not spanned by Z and B: residual pivot " + std::to_string(work.back()));
        xor_sorted(work, chain(*owner));
        (owner->family == Family::Z ? out.z : out.b).push_back(owner->slot);
    }
    // Pivots strictly decrease, so no column is hit twice; keep Z2 parity anyway.
    for (auto* v : {&out.z, &out.b}) {
        std::sort(v->begin(), v->end());
        std::vector<std::uint32_t> odd;
        for (std::size_t k = 0; k < v->size();) {
            std::size_t j = k;
            while (j < v->size() && (*v)[j] == (*v)[k]) ++j;
            if ((j - k) % 2) odd.push_back((*v)[k]);
            k = j;
        }
        *v = std::move(odd);
    }
    return out;
}

std::vector<Summation> MatrixTriple::restore_distinct_pivots()
{
    std::vector<Summation> events;
    const std::size_t limit = z_count_ + bc_count_ + 1;
    while (pending_) {
        ColumnRef x = *pending_;
        const IdColumn& cx = chain(x);
        if (cx.empty()) throw InvariantError("column reduced to zero while restoring pivots");
        Index p = cx.back();
        auto owner = pivot_owner(p);
        if (!owner || *owner == x) {
            set_owner(p, x);
            pending_.reset();
            break;
        }
        ColumnRef y = *owner;
        ColumnRef target, source;
        if (x.family != y.family) {
            // Boundary births precede every homology birth: B is summed into Z.
            target = x.family == Family::Z ? x : y;
        } else {
            target = precedes(birth(x), birth(y)) ? y : x;
        }
        source = target == x ? y : x;

        set_owner(p, source);
        events.push_back({target, source, p, birth(target), birth(source)});
        sum_into(target, source);
        pending_ = target;
        if (events.size() > limit) throw InvariantError("pivot collisions did not resolve");
    }
    return events;
}

std::vector<std::uint32_t> MatrixTriple::columns_containing(Family which, Index id)
{
    std::vector<std::uint32_t> out;
    if (which == Family::B) {
        for (std::uint32_t s = 0; s < bc_.size(); ++s)
            if (bc_[s].alive && sorted_contains(bc_[s].col.bchain, id)) out.push_back(s);
        return out;
    }
    auto& rows = which == Family::Z ? z_rows_ : c_rows_;
    if (id >= rows.size()) return out;
    auto& entries = rows[id];
    std::vector<RowEntry> kept;
    for (const auto& e : entries) {
        bool valid;
        if (which == Family::Z)
            valid = e.slot < z_.size() && z_[e.slot].alive && z_[e.slot].uid == e.uid &&
                    sorted_contains(z_[e.slot].col.chain, id);
        else
            valid = e.slot < bc_.size() && bc_[e.slot].alive && bc_[e.slot].uid == e.uid &&
                    sorted_contains(bc_[e.slot].col.cchain, id);
        if (valid && std::find(out.begin(), out.end(), e.slot) == out.end()) {
            out.push_back(e.slot);
            kept.push_back(e);
        }
    }
    entries = std::move(kept);
    std::sort(out.begin(), out.end());
    return out;
}

void MatrixTriple::drop_rows(Index id)
{
    if (id < z_rows_.size()) std::vector<RowEntry>().swap(z_rows_[id]);
    if (id < c_rows_.size()) std::vector<RowEntry>().swap(c_rows_[id]);
}

std::vector<std::uint32_t> MatrixTriple::z_slots() const
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t s = 0; s < z_.size(); ++s)
        if (z_[s].alive) out.push_back(s);
    return out;
}

std::vector<std::uint32_t> MatrixTriple::bc_slots() const
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t s = 0; s < bc_.size(); ++s)
        if (bc_[s].alive) out.push_back(s);
    return out;
}

bool MatrixTriple::pivots_distinct() const
{
    if (pending_) return false;
    std::unordered_set<Index> seen;
    auto check = [&](ColumnRef ref) {
        const auto& c = chain(ref);
        if (c.empty() || !seen.insert(c.back()).second) return false;
        auto owner = pivot_owner(c.back());
        return owner && *owner == ref;
    };
    for (auto s : z_slots())
        if (!check({Family::Z, s})) return false;
    for (auto s : bc_slots())
        if (!check({Family::B, s})) return false;
    std::size_t owned = 0;
    for (auto code : owner_) owned += code != 0;
    return owned == seen.size();
}

std::size_t MatrixTriple::footprint_bytes() const
{
    std::size_t bytes = 0;
    for (const auto& s : z_)
        if (s.alive) bytes += sizeof(s) + (s.col.chain.size() + s.col.bundle.size()) * sizeof(Index);
    for (const auto& s : bc_)
        if (s.alive)
            bytes += sizeof(s) +
                     (s.col.bchain.size() + s.col.cchain.size() + s.col.bundle.size()) * sizeof(Index);
    return bytes;
}

}  // namespace wzz
