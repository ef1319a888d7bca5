#include "wzz/wire_store.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "wzz/filtration.hpp"
#include "wzz/sorted_ops.hpp"

namespace wzz {

Bundle::Bundle(std::initializer_list<Index> starts) : Bundle(std::vector<Index>(starts)) {}

Bundle::Bundle(std::vector<Index> starts) : wires(std::move(starts))
{
    std::sort(wires.begin(), wires.end());
    if (std::adjacent_find(wires.begin(), wires.end()) != wires.end())
        throw WireError("bundle lists a wire twice");
}

Bundle& Bundle::operator^=(const Bundle& other)
{
    xor_sorted(wires, other.wires);
    return *this;
}

Bundle bundle_sum(const Bundle& a, const Bundle& b)
{
    Bundle out = a;
    out ^= b;
    return out;
}

const Chain& Representative::at(Index alpha) const
{
    if (alpha < birth || alpha > death)
        throw std::out_of_range("index " + std::to_string(alpha) + " outside representative");
    auto it = std::upper_bound(segments.begin(), segments.end(), alpha,
                               [](Index a, const Segment& s) { return a < s.lo; });
    if (it == segments.begin()) throw std::out_of_range("malformed representative segments");
    return std::prev(it)->cycle;
}

Index WireStore::register_wire(Index start, const Chain& cycle, WireKind kind)
{
    if (cycle.empty()) throw WireError("wire " + std::to_string(start) + " has an empty cycle");
    if (!boundary(cycle).empty()) throw WireError("wire " + std::to_string(start) + " is not a cycle");
    return register_wire(start, table_->to_keys(cycle), *cycle.degree(), kind);
}

Index WireStore::register_wire(Index start, KeyChain cycle, int degree, WireKind kind)
{
    if (contains(start)) throw WireError("duplicate wire at index " + std::to_string(start));
    if (cycle.empty()) throw WireError("wire " + std::to_string(start) + " has an empty cycle");
    if (slot_.size() <= start) slot_.resize(std::max<std::size_t>(start + 1, slot_.size() * 2), -1);
    slot_[start] = static_cast<std::int64_t>(wires_.size());
    footprint_ += sizeof(Wire) + cycle.size() * sizeof(SimplexKey);
    wires_.push_back({start, kind, degree, std::move(cycle)});
    ++count_;
    return start;
}

bool WireStore::contains(Index start) const { return start < slot_.size() && slot_[start] >= 0; }

const Wire& WireStore::wire(Index start) const
{
    if (!contains(start)) throw WireError("no wire at index " + std::to_string(start));
    return wires_[static_cast<std::size_t>(slot_[start])];
}

std::vector<Index> WireStore::starts() const
{
    std::vector<Index> out;
    out.reserve(wires_.size());
    for (const auto& w : wires_) out.push_back(w.start);
    std::sort(out.begin(), out.end());
    return out;
}

KeyChain WireStore::bundle_last_keys(const Bundle& w, Index i) const
{
    KeyChain z;
    std::optional<int> degree;
    for (Index start : w.wires) {
        if (start > i) break;
        const Wire& wire = this->wire(start);
        if (degree && *degree != wire.degree) throw WireError("bundle mixes wire degrees");
        degree = wire.degree;
        xor_sorted(z, wire.cycle);
    }
    return z;
}

Chain WireStore::bundle_last_cycle(const Bundle& w, Index i) const
{
    return table_->to_chain(bundle_last_keys(w, i));
}

Representative WireStore::extract_representative(const Bundle& w, Module module, Index b, Index d) const
{
    if (b > d) throw std::invalid_argument("interval birth after death");

    // Wires starting after d never contribute.
    auto last = std::upper_bound(w.wires.begin(), w.wires.end(), d);
    auto first_after_b = std::upper_bound(w.wires.begin(), last, b);
    if (w.wires.begin() == first_after_b)
        throw WireError("bundle has no wire at or before the birth index " + std::to_string(b));

    Representative rep;
    rep.module = module;
    rep.birth = b;
    rep.death = d;
    rep.degree = wire(w.wires.front()).degree;

    KeyChain z;
    for (auto it = w.wires.begin(); it != first_after_b; ++it) {
        const Wire& wr = wire(*it);
        if (wr.degree != rep.degree) throw WireError("bundle mixes wire degrees");
        xor_sorted(z, wr.cycle);
    }
    Index lo = b;
    for (auto it = first_after_b; it != last; ++it) {
        const Wire& wr = wire(*it);
        if (wr.degree != rep.degree) throw WireError("bundle mixes wire degrees");
        rep.segments.push_back({lo, *it - 1, table_->to_chain(z)});
        xor_sorted(z, wr.cycle);
        lo = *it;
    }
    rep.segments.push_back({lo, d, table_->to_chain(z)});
    return rep;
}

void write_representatives(std::ostream& out, const std::vector<Representative>& reps)
{
    for (const auto& rep : reps) {
        out << "R " << static_cast<char>(rep.module) << ' ' << rep.degree << ' ' << rep.birth << ' '
            << rep.death << ' ' << rep.segments.size() << '\n';
        for (const auto& seg : rep.segments) {
            out << "S " << seg.lo << ' ' << seg.hi << ' ' << seg.cycle.size() << '\n';
            for (const auto& s : seg.cycle) out << s.to_string() << '\n';
        }
    }
}

namespace {

struct LineReader {
    std::istream& in;
    std::size_t lineno = 0;

    bool next(std::string& line)
    {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line[0] != '#') return true;
        }
        return false;
    }

    std::string require(const char* what)
    {
        std::string line;
        if (!next(line)) throw ParseError(lineno, std::string("unexpected end of file, expected ") + what);
        return line;
    }
};

template <class... Ts>
void parse_fields(const std::string& line, std::size_t lineno, char tag, Ts&... fields)
{
    std::istringstream ss(line);
    char t = 0;
    ss >> t;
    if (t != tag) throw ParseError(lineno, std::string("expected '") + tag + "' record");
    ((ss >> fields), ...);
    std::string rest;
    if (!ss || (ss >> rest)) throw ParseError(lineno, std::string("malformed '") + tag + "' record");
}

}  // namespace

std::vector<Representative> read_representatives(std::istream& in)
{
    std::vector<Representative> reps;
    LineReader reader{in};
    std::string line;
    while (reader.next(line)) {
        Representative rep;
        char module = 0;
        std::size_t nsegs = 0;
        parse_fields(line, reader.lineno, 'R', module, rep.degree, rep.birth, rep.death, nsegs);
        if (module != 'H' && module != 'B') throw ParseError(reader.lineno, "module must be H or B");
        rep.module = static_cast<Module>(module);
        for (std::size_t k = 0; k < nsegs; ++k) {
            Segment seg;
            std::size_t count = 0;
            parse_fields(reader.require("segment"), reader.lineno, 'S', seg.lo, seg.hi, count);
            std::vector<Simplex> simplices;
            for (std::size_t j = 0; j < count; ++j) {
                std::istringstream ss(reader.require("simplex"));
                std::vector<Vertex> vs;
                Vertex v{};
                while (ss >> v) vs.push_back(v);
                if (!ss.eof()) throw ParseError(reader.lineno, "invalid vertex");
                try {
                    simplices.emplace_back(std::move(vs));
                } catch (const std::invalid_argument& e) {
                    throw ParseError(reader.lineno, e.what());
                }
            }
            try {
                seg.cycle = Chain(std::move(simplices));
            } catch (const std::invalid_argument& e) {
                throw ParseError(reader.lineno, e.what());
            }
            rep.segments.push_back(std::move(seg));
        }
        reps.push_back(std::move(rep));
    }
    return reps;
}

}  // namespace wzz
