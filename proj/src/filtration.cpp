#include "wzz/filtration.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace wzz {

void ZigzagFiltration::append(const ZigzagFiltration& other)
{
    steps_.insert(steps_.end(), other.steps_.begin(), other.steps_.end());
}

namespace {

FiltrationStep parse_line(std::string_view line, std::size_t lineno)
{
    if (line.size() < 3 || (line[0] != 'i' && line[0] != 'd') || line[1] != ' ')
        throw ParseError(lineno, "expected 'i' or 'd' followed by vertices");

    std::vector<Vertex> vertices;
    std::size_t pos = 2;
    while (true) {
        std::size_t end = line.find(' ', pos);
        if (end == std::string_view::npos) end = line.size();
        std::string_view tok = line.substr(pos, end - pos);
        if (tok.empty()) throw ParseError(lineno, "empty vertex field");
        Vertex v{};
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw ParseError(lineno, "invalid vertex '" + std::string(tok) + "'");
        if (!vertices.empty() && vertices.back() >= v)
            throw ParseError(lineno, "vertices not strictly increasing");
        vertices.push_back(v);
        if (end == line.size()) break;
        pos = end + 1;
    }
    Op op = line[0] == 'i' ? Op::Insert : Op::Delete;
    return {op, Simplex(std::move(vertices))};
}

}  // namespace

ZigzagFiltration parse_filtration(std::istream& in)
{
    std::vector<FiltrationStep> steps;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        steps.push_back(parse_line(line, lineno));
    }
    return ZigzagFiltration(std::move(steps));
}

ZigzagFiltration parse_filtration(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_filtration(in);
}

std::string serialize(const ZigzagFiltration& f)
{
    std::string out;
    for (const auto& step : f.steps()) {
        out += static_cast<char>(step.op);
        out += ' ';
        out += step.simplex.to_string();
        out += '\n';
    }
    return out;
}

void apply_step(const ZigzagFiltration& f, std::size_t i, ComplexState& state)
{
    const auto& [op, s] = f[i];
    if (op == Op::Insert) {
        if (state.contains(s)) throw FiltrationError(i, "simplex {" + s.to_string() + "} already present");
        for (const auto& face : s.faces())
            if (!state.contains(face))
                throw FiltrationError(i, "faces of {" + s.to_string() + "} missing");
        state.insert(s, static_cast<Index>(i));
    } else {
        if (!state.contains(s)) throw FiltrationError(i, "simplex {" + s.to_string() + "} absent");
        // A coface is a live simplex one dimension up containing s.
        for (const auto& t : state.simplices())
            if (t.dimension() == s.dimension() + 1 && s.is_face_of(t))
                throw FiltrationError(i, "simplex {" + s.to_string() + "} has live coface {" +
                                             t.to_string() + "}");
        state.erase(s);
    }
}

ValidationReport validate(const ZigzagFiltration& f)
{
    ValidationReport report;
    report.m = f.length();

    // Coface counts make deletion checks O(1) instead of a scan of the complex.
    std::unordered_map<Simplex, std::size_t, SimplexHash> cofaces;
    std::size_t size = 0;
    for (std::size_t i = 0; i < f.length(); ++i) {
        const auto& [op, s] = f[i];
        if (op == Op::Insert) {
            if (cofaces.count(s)) {
                report.error = FiltrationError(i, "simplex {" + s.to_string() + "} already present");
                return report;
            }
            auto faces = s.faces();
            for (const auto& face : faces)
                if (!cofaces.count(face)) {
                    report.error = FiltrationError(i, "faces of {" + s.to_string() + "} missing");
                    return report;
                }
            for (const auto& face : faces) ++cofaces[face];
            cofaces.emplace(s, 0);
            report.n = std::max(report.n, ++size);
        } else {
            auto it = cofaces.find(s);
            if (it == cofaces.end()) {
                report.error = FiltrationError(i, "simplex {" + s.to_string() + "} absent");
                return report;
            }
            if (it->second != 0) {
                report.error = FiltrationError(i, "simplex {" + s.to_string() + "} has a live coface");
                return report;
            }
            cofaces.erase(it);
            for (const auto& face : s.faces()) --cofaces[face];
            --size;
        }
    }
    return report;
}

void require_valid(const ZigzagFiltration& f)
{
    auto report = validate(f);
    if (!report.ok()) throw *report.error;
}

ComplexState complex_at(const ZigzagFiltration& f, std::size_t j)
{
    if (j > f.length())
        throw std::out_of_range("complex index " + std::to_string(j) + " outside [0, " +
                                std::to_string(f.length()) + "]");
    ComplexState state;
    for (std::size_t i = 0; i < j; ++i) apply_step(f, i, state);
    return state;
}

}  // namespace wzz
