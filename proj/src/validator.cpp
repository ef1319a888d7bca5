#include "wzz/validator.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wzz {

BitVec& BitVec::operator^=(const BitVec& o)
{
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    for (std::size_t k = 0; k < o.words_.size(); ++k) words_[k] ^= o.words_[k];
    return *this;
}

bool BitVec::none() const
{
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

long BitVec::top() const
{
    for (std::size_t k = words_.size(); k-- > 0;)
        if (words_[k]) return static_cast<long>(64 * k + 63 - __builtin_clzll(words_[k]));
    return -1;
}

bool Echelon::reduce(BitVec& v) const
{
    for (long t = v.top(); t >= 0; t = v.top()) {
        auto it = rows_.find(t);
        if (it == rows_.end()) return false;
        v ^= it->second;
    }
    return true;
}

bool Echelon::insert(BitVec v)
{
    if (reduce(v)) return false;
    long t = v.top();
    rows_.emplace(t, std::move(v));
    return true;
}

namespace {

using Positions = std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>>;

void add_position(Positions& pos, const Simplex& s)
{
    auto p = static_cast<std::size_t>(s.dimension());
    if (pos.size() <= p) pos.resize(p + 1);
    pos[p].emplace(s, pos[p].size());
}

BitVec vectorize_in(const Positions& pos, int p, const Chain& c)
{
    if (p < 0 || p >= static_cast<int>(pos.size())) {
        if (c.empty()) return BitVec();
        throw std::invalid_argument("chain outside the complex");
    }
    const auto& map = pos[static_cast<std::size_t>(p)];
    BitVec v(map.size());
    for (const auto& s : c) {
        auto it = map.find(s);
        if (it == map.end()) throw std::invalid_argument("simplex {" + s.to_string() + "} outside the complex");
        v.flip(it->second);
    }
    return v;
}

// Echelon basis of the degree-p boundaries of the given simplices.
Echelon boundaries_of(const Positions& pos, const std::vector<Simplex>& simplices, int p)
{
    Echelon e;
    for (const auto& s : simplices)
        if (s.dimension() == p + 1) e.insert(vectorize_in(pos, p, boundary(s)));
    return e;
}

BettiNumbers betti_from(const std::vector<std::size_t>& counts, const std::vector<std::size_t>& brank)
{
    BettiNumbers out;
    std::size_t dims = counts.size();
    out.z.resize(dims);
    out.b.resize(dims);
    out.h.resize(dims);
    for (std::size_t p = 0; p < dims; ++p) {
        std::size_t rank_d = p == 0 ? 0 : brank[p - 1];
        out.z[p] = static_cast<int>(counts[p] - rank_d);
        out.b[p] = static_cast<int>(brank[p]);
        out.h[p] = out.z[p] - out.b[p];
    }
    return out;
}

std::string interval_name(Module module, int p, Index b, Index d)
{
    std::ostringstream ss;
    ss << static_cast<char>(module) << p << " [" << b << ',' << d << ']';
    return ss.str();
}

}  // namespace

BettiNumbers betti_numbers(const ComplexState& k)
{
    auto simplices = k.simplices();
    Positions pos;
    for (const auto& s : simplices) add_position(pos, s);
    std::vector<std::size_t> counts(pos.size()), brank(pos.size());
    for (std::size_t p = 0; p < pos.size(); ++p) {
        counts[p] = pos[p].size();
        brank[p] = boundaries_of(pos, simplices, static_cast<int>(p)).rank();
    }
    return betti_from(counts, brank);
}

bool is_boundary(const ComplexState& k, const Chain& z)
{
    if (z.empty()) return true;
    if (!k.contains_chain(z)) throw std::invalid_argument("chain not contained in the complex");
    if (!boundary(z).empty()) throw std::invalid_argument("chain is not a cycle");
    auto simplices = k.simplices();
    Positions pos;
    for (const auto& s : simplices) add_position(pos, s);
    int p = *z.degree();
    BitVec v = vectorize_in(pos, p, z);
    return boundaries_of(pos, simplices, p).reduce(v);
}

Oracle::Oracle(const ZigzagFiltration& f) : f_(&f)
{
    require_valid(f);
    complexes_.reserve(f.length() + 1);
    ComplexState k;
    complexes_.push_back(k);
    Positions pos;
    for (std::size_t i = 0; i < f.length(); ++i) {
        const auto& s = f[i].simplex;
        max_dim_ = std::max(max_dim_, s.dimension());
        if (pos.size() <= static_cast<std::size_t>(s.dimension()) ||
            !pos[static_cast<std::size_t>(s.dimension())].count(s))
            add_position(pos, s);
        apply_step(f, i, k);
        complexes_.push_back(k);
    }
    position_ = std::move(pos);
    bases_.resize(f.length() + 1);
    betti_.resize(f.length() + 1);
}

BitVec Oracle::vectorize(int p, const Chain& c) const { return vectorize_in(position_, p, c); }

const Echelon& Oracle::boundary_basis(std::size_t j, int p)
{
    auto& cache = bases_.at(j);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    Echelon e;
    for (const auto& s : complexes_[j].simplices())
        if (s.dimension() == p + 1) e.insert(vectorize(p, boundary(s)));
    return cache.emplace(p, std::move(e)).first->second;
}

bool Oracle::is_cycle_in(std::size_t j, const Chain& z) const
{
    return complexes_.at(j).contains_chain(z) && boundary(z).empty();
}

bool Oracle::in_boundaries(std::size_t j, const Chain& z)
{
    if (z.empty()) return true;
    if (!is_cycle_in(j, z)) return false;
    BitVec v = vectorize(*z.degree(), z);
    return boundary_basis(j, *z.degree()).reduce(v);
}

const BettiNumbers& Oracle::betti(std::size_t j)
{
    auto& slot = betti_.at(j);
    if (slot) return *slot;
    std::size_t dims = static_cast<std::size_t>(max_dim_ + 1);
    std::vector<std::size_t> counts(dims, 0), brank(dims, 0);
    for (const auto& s : complexes_[j].simplices()) ++counts[static_cast<std::size_t>(s.dimension())];
    for (std::size_t p = 0; p < dims; ++p) brank[p] = boundary_basis(j, static_cast<int>(p)).rank();
    slot = betti_from(counts, brank);
    return *slot;
}

std::size_t Oracle::rank(int p, const std::vector<Chain>& chains) const
{
    Echelon e;
    for (const auto& c : chains) e.insert(vectorize(p, c));
    return e.rank();
}

void Certificate::pass(const std::string& check) { lines_.push_back("PASS " + check); }

void Certificate::fail(const std::string& check, const std::string& context)
{
    lines_.push_back("FAIL " + check + ": " + context);
    ++failures_;
}

void Certificate::merge(const Certificate& other)
{
    lines_.insert(lines_.end(), other.lines_.begin(), other.lines_.end());
    failures_ += other.failures_;
}

std::optional<std::string> Certificate::first_failure() const
{
    for (const auto& l : lines_)
        if (l.rfind("FAIL", 0) == 0) return l;
    return std::nullopt;
}

void Certificate::write(std::ostream& out) const
{
    for (const auto& l : lines_) out << l << '\n';
}

namespace {

// First violated condition of rep, or nullopt.
std::optional<std::string> representative_violation(Oracle& o, const Representative& rep, std::size_t horizon)
{
    const auto& f = o.filtration();
    const Index b = rep.birth, d = rep.death;
    if (b < 1 || b > d || d > horizon) return "interval out of range";
    if (rep.segments.empty() || rep.segments.front().lo != b || rep.segments.back().hi != d)
        return "segments do not cover the interval";
    for (std::size_t k = 0; k < rep.segments.size(); ++k) {
        const auto& s = rep.segments[k];
        if (s.lo > s.hi) return "empty segment";
        if (k + 1 < rep.segments.size() && rep.segments[k + 1].lo != s.hi + 1) return "segments not contiguous";
    }

    const bool h = rep.module == Module::H;
    for (std::size_t k = 0; k < rep.segments.size(); ++k) {
        const auto& seg = rep.segments[k];
        const Chain& z = seg.cycle;
        if (z.empty()) return "zero cycle at " + std::to_string(seg.lo);
        if (*z.degree() != rep.degree) return "cycle degree differs at " + std::to_string(seg.lo);
        for (Index a = seg.lo; a <= seg.hi; ++a) {
            if (!o.is_cycle_in(a, z)) return "not a cycle of K_" + std::to_string(a);
            bool bd = o.in_boundaries(a, z);
            if (h && bd) return "trivial homology class at " + std::to_string(a);
            if (!h && !bd) return "not a boundary at " + std::to_string(a);
        }
        if (k + 1 < rep.segments.size()) {
            const Index a = seg.hi;
            const Chain& next = rep.segments[k + 1].cycle;
            if (!h) return "boundary cycle changes at " + std::to_string(a + 1);
            std::size_t larger = f.forward(a) ? a + 1 : a;
            if (!o.in_boundaries(larger, chain_add(z, next)))
                return "cycles at " + std::to_string(a) + " and " + std::to_string(a + 1) + " not homologous";
        }
    }

    const Chain& zb = rep.segments.front().cycle;
    const bool fwd_in = f.forward(b - 1);
    if (h) {
        if (fwd_in) {
            if (o.complex(b - 1).contains_chain(zb)) return "birth: cycle already in K_" + std::to_string(b - 1);
        } else if (!o.in_boundaries(b - 1, zb) || o.in_boundaries(b, zb)) {
            return "birth: class not in the kernel of the backward map";
        }
    } else {
        if (!fwd_in) return "birth: boundary birth after a backward arrow";
        if (o.in_boundaries(b - 1, zb)) return "birth: already a boundary in K_" + std::to_string(b - 1);
    }

    if (d < horizon) {
        const Chain& zd = rep.segments.back().cycle;
        const bool fwd_out = f.forward(d);
        if (h) {
            if (!fwd_out) {
                if (o.complex(d + 1).contains_chain(zd)) return "death: cycle survives into K_" + std::to_string(d + 1);
            } else if (!o.in_boundaries(d + 1, zd)) {
                return "death: class not in the kernel of the forward map";
            }
        } else {
            if (fwd_out) return "death: boundary death before a forward arrow";
            if (o.in_boundaries(d + 1, zd)) return "death: still a boundary in K_" + std::to_string(d + 1);
        }
    }
    return std::nullopt;
}

}  // namespace

Certificate check_representative(Oracle& oracle, const Representative& rep, std::optional<std::size_t> horizon)
{
    Certificate cert;
    std::string name = "representative " + interval_name(rep.module, rep.degree, rep.birth, rep.death);
    auto bad = representative_violation(oracle, rep, horizon.value_or(oracle.m()));
    if (bad) cert.fail(name, *bad);
    else cert.pass(name);
    return cert;
}

IndexSets birth_death_sets(Oracle& o)
{
    IndexSets out;
    const std::size_t dims = static_cast<std::size_t>(std::max(o.max_degree() + 1, 0));
    for (auto* v : {&out.h_births, &out.h_deaths, &out.b_births, &out.b_deaths}) v->resize(dims);
    const auto& f = o.filtration();
    for (std::size_t j = 0; j < o.m(); ++j) {
        BettiNumbers a = o.betti(j), c = o.betti(j + 1);
        for (std::size_t p = 0; p < dims; ++p) {
            int dh = c.homology(static_cast<int>(p)) - a.homology(static_cast<int>(p));
            int db = c.boundaries(static_cast<int>(p)) - a.boundaries(static_cast<int>(p));
            if (dh > 0) out.h_births[p].push_back(static_cast<Index>(j + 1));
            if (dh < 0) out.h_deaths[p].push_back(static_cast<Index>(j));
            if (f.forward(j) && db > 0) out.b_births[p].push_back(static_cast<Index>(j + 1));
            if (!f.forward(j) && db < 0) out.b_deaths[p].push_back(static_cast<Index>(j));
        }
    }
    const auto& end = o.betti(o.m());
    for (std::size_t p = 0; p < dims; ++p) {
        out.h_deaths[p].insert(out.h_deaths[p].end(), static_cast<std::size_t>(end.homology(static_cast<int>(p))),
                               static_cast<Index>(o.m()));
        out.b_deaths[p].insert(out.b_deaths[p].end(), static_cast<std::size_t>(end.boundaries(static_cast<int>(p))),
                               static_cast<Index>(o.m()));
    }
    return out;
}

Certificate check_pairing(Oracle& oracle, const std::vector<BarEntry>& bars, bool check_boundary)
{
    Certificate cert;
    IndexSets sets = birth_death_sets(oracle);

    std::map<std::pair<char, int>, std::pair<std::vector<Index>, std::vector<Index>>> got;
    for (const auto& bar : bars) {
        if (bar.module == Module::B && !check_boundary) continue;
        if (bar.birth > bar.death) {
            cert.fail("pairing", "birth after death in " + interval_name(bar.module, bar.degree, bar.birth, bar.death));
            continue;
        }
        auto& [bs, ds] = got[{static_cast<char>(bar.module), bar.degree}];
        bs.push_back(bar.birth);
        ds.push_back(bar.death);
    }

    auto compare = [&](Module mod, int p, const std::vector<Index>& births, const std::vector<Index>& deaths) {
        std::string name = std::string("pairing ") + static_cast<char>(mod) + std::to_string(p);
        std::vector<Index> bs, ds;
        auto it = got.find({static_cast<char>(mod), p});
        if (it != got.end()) {
            bs = it->second.first;
            ds = it->second.second;
            got.erase(it);
        }
        std::sort(bs.begin(), bs.end());
        std::sort(ds.begin(), ds.end());
        auto show = [](const std::vector<Index>& v) {
            std::string s = "{";
            for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
            return s + "}";
        };
        if (bs != births) cert.fail(name, "births " + show(bs) + " expected " + show(births));
        else if (ds != deaths) cert.fail(name, "deaths " + show(ds) + " expected " + show(deaths));
        else cert.pass(name);
    };
    for (std::size_t p = 0; p < sets.h_births.size(); ++p) {
        compare(Module::H, static_cast<int>(p), sets.h_births[p], sets.h_deaths[p]);
        if (check_boundary) compare(Module::B, static_cast<int>(p), sets.b_births[p], sets.b_deaths[p]);
    }
    for (const auto& [key, v] : got)
        cert.fail("pairing", std::string("intervals in unexpected module/degree ") + key.first +
                                 std::to_string(key.second));
    return cert;
}

Certificate check_wire(Oracle& o, const Wire& wire, const SimplexTable& table)
{
    Certificate cert;
    const Index i = wire.start;
    std::string name = "wire " + std::to_string(i);
    auto violation = [&]() -> std::optional<std::string> {
        if (i < 1 || i > o.m()) return "start out of range";
        Chain z = table.to_chain(wire.cycle);
        if (z.empty()) return "empty cycle";
        if (*z.degree() != wire.degree) return "degree mismatch";
        if (!o.is_cycle_in(i, z)) return "not a cycle of K_" + std::to_string(i);
        const bool fwd = o.filtration().forward(i - 1);
        if (wire.kind == WireKind::NonBoundary) {
            if (fwd) {
                if (o.complex(i - 1).contains_chain(z)) return "(i): already a cycle of K_" + std::to_string(i - 1);
            } else if (!o.in_boundaries(i - 1, z) || o.in_boundaries(i, z)) {
                return "(ii): not in B(K_" + std::to_string(i - 1) + ") minus B(K_" + std::to_string(i) + ")";
            }
        } else {
            if (!fwd) return "(iii): boundary wire after a backward arrow";
            if (!o.in_boundaries(i, z) || o.in_boundaries(i - 1, z))
                return "(iii): not in B(K_" + std::to_string(i) + ") minus B(K_" + std::to_string(i - 1) + ")";
        }
        return std::nullopt;
    }();
    if (violation) cert.fail(name, *violation);
    else cert.pass(name);
    return cert;
}

std::vector<BarEntry> classical_persistence(const ZigzagFiltration& f)
{
    for (const auto& st : f.steps())
        if (st.op != Op::Insert) throw std::invalid_argument("classical persistence needs an insert-only filtration");
    require_valid(f);

    const std::size_t m = f.length();
    std::unordered_map<Simplex, Index, SimplexHash> index_of;
    std::vector<std::vector<Index>> cols(m);
    std::unordered_map<Index, Index> low_owner;
    std::vector<bool> paired(m, false);
    std::vector<BarEntry> out;

    for (Index j = 0; j < m; ++j) {
        const Simplex& s = f[j].simplex;
        index_of.emplace(s, j);
        auto& col = cols[j];
        if (s.dimension() > 0)
            for (const auto& face : s.faces()) col.push_back(index_of.at(face));
        std::sort(col.begin(), col.end());
        while (!col.empty()) {
            auto it = low_owner.find(col.back());
            if (it == low_owner.end()) break;
            std::vector<Index> sum;
            std::set_symmetric_difference(col.begin(), col.end(), cols[it->second].begin(), cols[it->second].end(),
                                          std::back_inserter(sum));
            col = std::move(sum);
        }
        if (!col.empty()) {
            Index i = col.back();
            low_owner.emplace(i, j);
            paired[i] = paired[j] = true;
            out.push_back({Module::H, f[i].simplex.dimension(), i + 1, j});
        }
    }
    for (Index j = 0; j < m; ++j)
        if (!paired[j]) out.push_back({Module::H, f[j].simplex.dimension(), j + 1, static_cast<Index>(m)});
    sort_barcode(out);
    return out;
}

Certificate check_order_properties(const std::vector<BirthKey>& keys)
{
    Certificate cert;
    const std::size_t n = keys.size();
    std::vector<char> rel(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) rel[a * n + b] = precedes(keys[a], keys[b]);

    for (std::size_t a = 0; a < n; ++a) {
        if (rel[a * n + a]) {
            cert.fail("order", "irreflexivity fails at " + to_string(keys[a]));
            return cert;
        }
        for (std::size_t b = a + 1; b < n; ++b) {
            if (keys[a] == keys[b]) {
                cert.fail("order", "repeated key " + to_string(keys[a]));
                return cert;
            }
            if (rel[a * n + b] == rel[b * n + a]) {
                cert.fail("order", "totality/antisymmetry fails for " + to_string(keys[a]) + " and " + to_string(keys[b]));
                return cert;
            }
        }
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (!rel[a * n + b]) continue;
            for (std::size_t c = 0; c < n; ++c)
                if (rel[b * n + c] && !rel[a * n + c]) {
                    cert.fail("order", "transitivity fails for " + to_string(keys[a]) + ", " + to_string(keys[b]) +
                                           ", " + to_string(keys[c]));
                    return cert;
                }
        }
    cert.pass("order on " + std::to_string(n) + " keys");
    return cert;
}

Certificate check_cycle_basis(Oracle& o, std::size_t j, const std::vector<Chain>& h_cycles,
                              const std::vector<Chain>& b_cycles)
{
    Certificate cert;
    const std::string name = "cycle basis at " + std::to_string(j);
    const auto& betti = o.betti(j);
    const int dims = o.max_degree() + 1;
    std::vector<std::vector<Chain>> hs(static_cast<std::size_t>(std::max(dims, 0))), bs(hs.size());

    auto sort_in = [&](const std::vector<Chain>& from, std::vector<std::vector<Chain>>& into, bool boundary_part) {
        for (const auto& c : from) {
            if (c.empty() || !o.is_cycle_in(j, c)) return false;
            if (boundary_part && !o.in_boundaries(j, c)) return false;
            into.at(static_cast<std::size_t>(*c.degree())).push_back(c);
        }
        return true;
    };
    if (!sort_in(h_cycles, hs, false) || !sort_in(b_cycles, bs, true)) {
        cert.fail(name, "a listed chain is not a cycle (or boundary) of the complex");
        return cert;
    }
    for (int p = 0; p < dims; ++p) {
        const auto& h = hs[static_cast<std::size_t>(p)];
        const auto& b = bs[static_cast<std::size_t>(p)];
        if (static_cast<int>(b.size()) != betti.boundaries(p) || o.rank(p, b) != b.size()) {
            cert.fail(name, "degree " + std::to_string(p) + " boundary cycles are not a basis of B");
            return cert;
        }
        std::vector<Chain> all = b;
        all.insert(all.end(), h.begin(), h.end());
        if (static_cast<int>(all.size()) != betti.cycles(p) || o.rank(p, all) != all.size()) {
            cert.fail(name, "degree " + std::to_string(p) + " cycles are not a basis of Z");
            return cert;
        }
    }
    cert.pass(name);
    return cert;
}

Representative representative_sum(const Representative& rep, const Representative& rep2)
{
    if (rep.death != rep2.death) throw std::invalid_argument("summed representatives must end at the same index");
    if (rep.degree != rep2.degree) throw std::invalid_argument("summed representatives differ in degree");
    if (rep.birth == rep2.birth) throw std::invalid_argument("summed representatives share a birth");

    Representative out;
    out.module = rep2.module;
    out.degree = rep2.degree;
    out.birth = rep2.birth;
    out.death = rep2.death;
    for (Index a = out.birth; a <= out.death; ++a) {
        Chain z = rep2.at(a);
        if (a >= rep.birth) z = chain_add(z, rep.at(a));
        if (!out.segments.empty() && out.segments.back().cycle == z) out.segments.back().hi = a;
        else out.segments.push_back({a, a, std::move(z)});
    }
    return out;
}

Certificate certify(Oracle& oracle, const PersistenceResult& result)
{
    Certificate cert;
    for (const auto& iv : result.intervals) {
        try {
            cert.merge(check_representative(oracle, result.representative(iv)));
        } catch (const std::exception& e) {
            cert.fail("representative " + interval_name(iv.module, iv.degree, iv.birth, iv.death), e.what());
        }
    }
    cert.merge(check_pairing(oracle, bars(result.intervals, true)));
    for (Index s : result.wires.starts()) cert.merge(check_wire(oracle, result.wires.wire(s), result.wires.table()));
    return cert;
}

}  // namespace wzz
