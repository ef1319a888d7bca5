#include "wzz/engine.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <tuple>

#include "wzz/sorted_ops.hpp"

namespace wzz {

namespace {

int module_rank(Module m) { return m == Module::H ? 0 : 1; }

constexpr std::size_t kSampleEvery = 64;

}  // namespace

bool barcode_less(const Interval& a, const Interval& b)
{
    return std::tuple(module_rank(a.module), a.degree, a.birth, a.death) <
           std::tuple(module_rank(b.module), b.degree, b.birth, b.death);
}

Representative PersistenceResult::representative(const Interval& iv) const
{
    Representative rep = wires.extract_representative(iv.bundle, iv.module, iv.birth, iv.death);
    if (rep.degree != iv.degree)
        throw WireError("bundle degree " + std::to_string(rep.degree) + " differs from interval degree " +
                        std::to_string(iv.degree));
    return rep;
}

std::vector<Representative> PersistenceResult::representatives() const
{
    std::vector<Representative> out;
    out.reserve(intervals.size());
    for (const auto& iv : intervals) out.push_back(representative(iv));
    return out;
}

WiredZigzag::WiredZigzag(const ZigzagFiltration& f)
    : filtration_(&f), table_(std::make_shared<SimplexTable>()), wires_(table_)
{
    require_valid(f);
    key_of_arrow_.reserve(f.length());
    for (const auto& step : f.steps()) key_of_arrow_.push_back(table_->intern(step.simplex));

    // Faces of every simplex are present before it, so they are already interned.
    faces_.resize(table_->size());
    for (SimplexKey k = 0; k < table_->size(); ++k) {
        const Simplex& s = table_->simplex(k);
        if (s.dimension() == 0) continue;
        for (const auto& face : s.faces()) {
            auto fk = table_->find(face);
            if (!fk) throw InvariantError("face " + face.to_string() + " never appears");
            faces_[k].push_back(*fk);
        }
    }
    live_.assign(table_->size(), -1);
    stats_.m = f.length();
}

KeyChain WiredZigzag::to_keys(const IdColumn& c) const
{
    KeyChain out;
    out.reserve(c.size());
    for (Index id : c) out.push_back(key_of_arrow_[id]);
    std::sort(out.begin(), out.end());
    return out;
}

Chain WiredZigzag::to_chain(const IdColumn& c) const { return table_->to_chain(to_keys(c)); }

std::optional<Index> WiredZigzag::live_id(const Simplex& s) const
{
    auto k = table_->find(s);
    if (!k || live_[*k] < 0) return std::nullopt;
    return static_cast<Index>(live_[*k]);
}

std::vector<std::uint32_t> WiredZigzag::columns_containing(Family which, const Simplex& s)
{
    auto id = live_id(s);
    if (!id) return {};
    return matrices_.columns_containing(which, *id);
}

BirthKey WiredZigzag::birth_key(Index b, Module module) const
{
    if (b == 0 || b > filtration_->length()) throw std::out_of_range("no arrow into index " + std::to_string(b));
    return {b, module, filtration_->forward(b - 1) ? Direction::Forward : Direction::Backward};
}

IdColumn WiredZigzag::boundary_ids(SimplexKey key) const
{
    IdColumn out;
    out.reserve(faces_[key].size());
    for (SimplexKey fk : faces_[key]) {
        if (live_[fk] < 0) throw InvariantError("face of inserted simplex is not live");
        out.push_back(static_cast<Index>(live_[fk]));
    }
    std::sort(out.begin(), out.end());
    return out;
}

void WiredZigzag::finalize(Module module, int degree, Index birth, Index death, Bundle bundle,
                           StepReport* report)
{
    Interval iv;
    iv.module = module;
    iv.degree = degree;
    iv.birth = birth;
    iv.death = death;
    iv.arrow_into_birth = birth_key(birth, module).arrow_into;
    iv.bundle = std::move(bundle);
    if (iv.bundle.empty()) throw InvariantError("finalized interval with an empty bundle");
    finalized_bytes_ += sizeof(Interval) + iv.bundle.size() * sizeof(Index);
    if (report) report->finalized = iv;
    finalized_.push_back(std::move(iv));
}

StepReport WiredZigzag::step()
{
    if (done()) throw std::logic_error("no arrows left");
    const Index i = static_cast<Index>(next_);
    StepReport report;
    report.arrow = i;
    try {
        if (filtration_->forward(i)) forward(i, key_of_arrow_[i], report);
        else backward(i, key_of_arrow_[i], report);
    } catch (const InvariantError& e) {
        if (e.arrow()) throw;
        throw InvariantError(e.detail(), i);
    } catch (const WireError& e) {
        throw InvariantError(e.what(), i);
    }
    stats_.summations += report.summations.size();
    stats_.n = std::max(stats_.n, size_);
    ++next_;
    if (next_ % kSampleEvery == 0 || done()) sample_footprint();
    return report;
}

void WiredZigzag::forward(Index i, SimplexKey key, StepReport& report)
{
    const int dim = table_->simplex(key).dimension();
    IdColumn bd = boundary_ids(key);
    report.reduction = matrices_.reduce_boundary(bd);
    const auto& red = report.reduction;

    if (red.z.empty()) {
        // The boundary already bounds in K_i: a new cycle through sigma is born.
        IdColumn w;
        for (auto slot : red.b) xor_sorted(w, matrices_.bc(slot).cchain);
        live_[key] = i;
        ++size_;
        w.push_back(i);  // every live-id is below i
        wires_.register_wire(i + 1, to_keys(w), dim, WireKind::NonBoundary);
        report.new_wire = i + 1;
        matrices_.add_z_column({std::move(w), {i + 1, Module::H, Direction::Forward}, Bundle{i + 1}, dim});
        report.summations = matrices_.restore_distinct_pivots();
        if (!report.summations.empty()) throw InvariantError("fresh cycle pivot collided");
        report.kind = StepCase::ForwardBirth;
        return;
    }

    // A homology class dies; the youngest birth in the order is the one to end.
    std::uint32_t lambda = red.z.front();
    Bundle wstar;
    for (auto slot : red.z) {
        const auto& col = matrices_.z(slot);
        if (col.degree != dim - 1) throw InvariantError("Z column degree mismatch in reduction");
        if (slot != lambda && col.birth.index == matrices_.z(lambda).birth.index)
            throw InvariantError("two active intervals share a birth index");
        if (precedes(matrices_.z(lambda).birth, col.birth)) lambda = slot;
        wstar ^= col.bundle;
    }
    finalize(Module::H, dim - 1, matrices_.z(lambda).birth.index, i, std::move(wstar), &report);
    matrices_.delete_z_column(lambda);

    live_[key] = i;
    ++size_;
    wires_.register_wire(i + 1, to_keys(bd), dim - 1, WireKind::Boundary);
    report.new_wire = i + 1;
    matrices_.add_bc_column({std::move(bd), IdColumn{i}, {i + 1, Module::B, Direction::Forward}, Bundle{i + 1}, dim - 1});
    report.summations = matrices_.restore_distinct_pivots();
    report.kind = StepCase::ForwardDeath;
}

void WiredZigzag::backward(Index i, SimplexKey key, StepReport& report)
{
    if (live_[key] < 0) throw InvariantError("deleted simplex is not live");
    const Index id = static_cast<Index>(live_[key]);
    auto zc = matrices_.columns_containing(Family::Z, id);

    auto by_birth = [&](Family fam) {
        return [this, fam](std::uint32_t a, std::uint32_t b) {
            return precedes(matrices_.birth({fam, a}), matrices_.birth({fam, b}));
        };
    };

    if (zc.empty()) {
        // Boundary death and homology birth: thin the C columns through sigma to one.
        auto cc = matrices_.columns_containing(Family::C, id);
        if (cc.empty()) throw InvariantError("deleted simplex lies in no column");
        std::sort(cc.begin(), cc.end(), by_birth(Family::B));

        for (auto s : cc) matrices_.release_pivot({Family::B, s});
        IdColumn c1 = matrices_.bc(cc[0]).cchain;
        IdColumn c2 = matrices_.bc(cc[0]).bchain;
        Bundle u = matrices_.bc(cc[0]).bundle;
        const int deg = matrices_.bc(cc[0]).degree;
        std::uint32_t carried = cc[0];
        BirthKey carried_birth = matrices_.bc(cc[0]).birth;
        for (std::size_t k = 1; k < cc.size(); ++k) {
            const std::uint32_t a = cc[k];
            const auto& col = matrices_.bc(a);
            ColumnRef src{Family::B, carried};
            if (col.bchain.back() > c2.back()) {
                report.summations.push_back({{Family::B, a}, src, col.bchain.back(), col.birth, carried_birth});
                matrices_.add_to_bc(a, c2, c1, u, deg);
            } else {
                report.summations.push_back({{Family::B, a}, src, c2.back(), col.birth, carried_birth});
                IdColumn t1 = col.cchain, t2 = col.bchain;
                Bundle tu = col.bundle;
                matrices_.add_to_bc(a, c2, c1, u, deg);
                c1 = std::move(t1);
                c2 = std::move(t2);
                u = std::move(tu);
                carried = a;
                carried_birth = col.birth;
            }
        }
        for (std::size_t k = 1; k < cc.size(); ++k) {
            if (sorted_contains(matrices_.bc(cc[k]).cchain, id))
                throw InvariantError("C column still holds the deleted simplex");
            matrices_.claim_pivot({Family::B, cc[k]});
        }

        const std::uint32_t lambda = cc[0];
        const auto& col = matrices_.bc(lambda);
        IdColumn w = col.bchain;
        finalize(Module::B, deg, col.birth.index, i, col.bundle, &report);
        matrices_.delete_bc_column(lambda);

        live_[key] = -1;
        --size_;
        matrices_.drop_rows(id);
        wires_.register_wire(i + 1, to_keys(w), deg, WireKind::NonBoundary);
        report.new_wire = i + 1;
        matrices_.add_z_column({std::move(w), {i + 1, Module::H, Direction::Backward}, Bundle{i + 1}, deg});
        auto more = matrices_.restore_distinct_pivots();
        report.summations.insert(report.summations.end(), more.begin(), more.end());
        report.kind = StepCase::BackwardBirth;
        return;
    }

    // Homology death. Clear sigma from C first; boundaries of C stay the same.
    {
        IdColumn zk = matrices_.z(zc.front()).chain;
        for (auto s : matrices_.columns_containing(Family::C, id)) matrices_.add_to_c(s, zk);
    }
    std::sort(zc.begin(), zc.end(), by_birth(Family::Z));
    for (auto s : zc) matrices_.release_pivot({Family::Z, s});
    IdColumn z = matrices_.z(zc[0]).chain;
    Bundle w = matrices_.z(zc[0]).bundle;
    const int deg = matrices_.z(zc[0]).degree;
    std::uint32_t carried = zc[0];
    BirthKey carried_birth = matrices_.z(zc[0]).birth;
    for (std::size_t k = 1; k < zc.size(); ++k) {
        const std::uint32_t a = zc[k];
        const auto& col = matrices_.z(a);
        ColumnRef src{Family::Z, carried};
        if (col.chain.back() > z.back()) {
            report.summations.push_back({{Family::Z, a}, src, col.chain.back(), col.birth, carried_birth});
            matrices_.add_to_z(a, z, w, deg);
        } else {
            report.summations.push_back({{Family::Z, a}, src, z.back(), col.birth, carried_birth});
            IdColumn tz = col.chain;
            Bundle tw = col.bundle;
            matrices_.add_to_z(a, z, w, deg);
            z = std::move(tz);
            w = std::move(tw);
            carried = a;
            carried_birth = col.birth;
        }
    }
    for (std::size_t k = 1; k < zc.size(); ++k) {
        if (sorted_contains(matrices_.z(zc[k]).chain, id))
            throw InvariantError("Z column still holds the deleted simplex");
        matrices_.claim_pivot({Family::Z, zc[k]});
    }
    const auto& col = matrices_.z(zc[0]);
    finalize(Module::H, deg, col.birth.index, i, col.bundle, &report);
    matrices_.delete_z_column(zc[0]);
    if (!matrices_.columns_containing(Family::C, id).empty())
        throw InvariantError("C column still holds the deleted simplex");

    live_[key] = -1;
    --size_;
    matrices_.drop_rows(id);
    report.kind = StepCase::BackwardDeath;
}

void WiredZigzag::sample_footprint()
{
    std::size_t bytes = matrices_.footprint_bytes() + wires_.footprint_bytes() + finalized_bytes_;
    stats_.peak_footprint_bytes = std::max(stats_.peak_footprint_bytes, bytes);
}

PersistenceResult WiredZigzag::finish()
{
    if (finished_) throw std::logic_error("finish called twice");
    if (!done()) throw std::logic_error("finish called before the last arrow");
    finished_ = true;
    sample_footprint();

    const Index m = static_cast<Index>(filtration_->length());
    for (auto s : matrices_.z_slots()) {
        const auto& col = matrices_.z(s);
        finalize(Module::H, col.degree, col.birth.index, m, col.bundle, nullptr);
    }
    for (auto s : matrices_.bc_slots()) {
        const auto& col = matrices_.bc(s);
        finalize(Module::B, col.degree, col.birth.index, m, col.bundle, nullptr);
    }

    PersistenceResult out;
    out.intervals = std::move(finalized_);
    std::sort(out.intervals.begin(), out.intervals.end(), barcode_less);
    stats_.wires = wires_.size();
    for (const auto& iv : out.intervals) (iv.module == Module::H ? stats_.h_intervals : stats_.b_intervals)++;
    out.stats = stats_;
    out.wires = std::move(wires_);
    return out;
}

PersistenceResult run(const ZigzagFiltration& f)
{
    WiredZigzag engine(f);
    while (!engine.done()) engine.step();
    return engine.finish();
}

std::vector<BarEntry> bars(const std::vector<Interval>& intervals, bool include_boundary)
{
    std::vector<BarEntry> out;
    for (const auto& iv : intervals)
        if (include_boundary || iv.module == Module::H) out.push_back({iv.module, iv.degree, iv.birth, iv.death});
    sort_barcode(out);
    return out;
}

void sort_barcode(std::vector<BarEntry>& bars)
{
    std::sort(bars.begin(), bars.end(), [](const BarEntry& a, const BarEntry& b) {
        return std::tuple(module_rank(a.module), a.degree, a.birth, a.death) <
               std::tuple(module_rank(b.module), b.degree, b.birth, b.death);
    });
}

void write_barcode(std::ostream& out, const std::vector<BarEntry>& bars)
{
    for (const auto& b : bars)
        out << static_cast<char>(b.module) << ' ' << b.degree << ' ' << b.birth << ' ' << b.death << '\n';
}

std::vector<BarEntry> read_barcode(std::istream& in)
{
    std::vector<BarEntry> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        char mod = 0;
        long long p = -1, b = -1, d = -1;
        std::string rest;
        ss >> mod >> p >> b >> d;
        if (!ss || (ss >> rest)) throw ParseError(lineno, "expected '<H|B> <p> <b> <d>'");
        if (mod != 'H' && mod != 'B') throw ParseError(lineno, "module must be H or B");
        if (p < 0 || b < 0 || d < 0) throw ParseError(lineno, "negative field");
        if (b > d) throw ParseError(lineno, "birth after death");
        out.push_back({static_cast<Module>(mod), static_cast<int>(p), static_cast<Index>(b), static_cast<Index>(d)});
    }
    return out;
}

}  // namespace wzz
