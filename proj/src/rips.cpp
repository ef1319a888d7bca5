#include "wzz/rips.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace wzz {

PointCloud load_points(std::istream& in)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        std::vector<double> row;
        std::string tok;
        while (ss >> tok) {
            double x = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
            if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(x))
                throw ParseError(lineno, "invalid coordinate '" + tok + "'");
            row.push_back(x);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(lineno, "expected " + std::to_string(rows.front().size()) + " coordinates, got " +
                                         std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    PointCloud out;
    if (rows.empty()) return out;
    out.points.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            out.points(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    return out;
}

PointCloud load_points(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return load_points(in);
}

PointCloud random_cloud(std::size_t n, int dim, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PointCloud out;
    out.points.resize(static_cast<Eigen::Index>(n), dim);
    for (Eigen::Index r = 0; r < out.points.rows(); ++r)
        for (Eigen::Index c = 0; c < dim; ++c) out.points(r, c) = u(rng);
    return out;
}

namespace {

Eigen::MatrixXd distance_matrix(const Eigen::MatrixXd& pts)
{
    const Eigen::Index n = pts.rows();
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        d(a, a) = 0;
        for (Eigen::Index b = a + 1; b < n; ++b) d(a, b) = d(b, a) = (pts.row(a) - pts.row(b)).norm();
    }
    return d;
}

GreedyPermutation greedy_from(const Eigen::MatrixXd& d)
{
    GreedyPermutation out;
    const auto n = static_cast<std::size_t>(d.rows());
    if (n == 0) return out;
    std::vector<double> near(n, std::numeric_limits<double>::infinity());
    std::vector<bool> used(n, false);
    std::size_t next = 0;
    double radius = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0 && radius == 0) {
            out.dropped = n - k;
            break;
        }
        out.order.push_back(next);
        out.radii.push_back(radius);
        used[next] = true;
        std::size_t far = n;
        double best = -1;
        for (std::size_t v = 0; v < n; ++v) {
            if (used[v]) continue;
            near[v] = std::min(near[v], d(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(next)));
            if (near[v] > best) {
                best = near[v];
                far = v;
            }
        }
        if (far == n) break;
        next = far;
        radius = best;
    }
    return out;
}

void extend_cliques(const Eigen::MatrixXd& dist, const std::vector<std::size_t>& vs, double r, int max_dim,
                    std::vector<Vertex>& current, const std::vector<std::size_t>& candidates,
                    std::vector<Simplex>& out)
{
    out.emplace_back(current);
    if (static_cast<int>(current.size()) > max_dim) return;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        std::size_t v = candidates[k];
        std::vector<std::size_t> next;
        for (std::size_t j = k + 1; j < candidates.size(); ++j)
            if (dist(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(candidates[j])) <= r)
                next.push_back(candidates[j]);
        current.push_back(static_cast<Vertex>(v));
        extend_cliques(dist, vs, r, max_dim, current, next, out);
        current.pop_back();
    }
}

bool by_dim_then_lex(const Simplex& a, const Simplex& b)
{
    if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
    return a < b;
}

}  // namespace

GreedyPermutation greedy_permutation(const PointCloud& p)
{
    if (p.size() == 0) throw std::invalid_argument("greedy permutation of an empty cloud");
    return greedy_from(distance_matrix(p.points));
}

std::vector<Simplex> rips_complex(const Eigen::MatrixXd& dist, const std::vector<std::size_t>& vertices, double r,
                                  int max_dim)
{
    std::vector<std::size_t> vs = vertices;
    std::sort(vs.begin(), vs.end());
    std::vector<Simplex> out;
    std::vector<Vertex> current;
    for (std::size_t k = 0; k < vs.size(); ++k) {
        std::vector<std::size_t> next;
        for (std::size_t j = k + 1; j < vs.size(); ++j)
            if (dist(static_cast<Eigen::Index>(vs[k]), static_cast<Eigen::Index>(vs[j])) <= r) next.push_back(vs[j]);
        current.assign(1, static_cast<Vertex>(vs[k]));
        extend_cliques(dist, vs, r, max_dim, current, next, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void append_transition(ZigzagFiltration& f, const std::vector<Simplex>& a, const std::vector<Simplex>& b)
{
    std::vector<Simplex> added, removed;
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(added));
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(removed));
    std::sort(added.begin(), added.end(), by_dim_then_lex);
    std::sort(removed.begin(), removed.end(), [](const Simplex& x, const Simplex& y) { return by_dim_then_lex(y, x); });
    for (auto& s : added) f.insert(std::move(s));
    for (auto& s : removed) f.remove(std::move(s));
}

ZigzagFiltration oscillating_rips(const PointCloud& p, double mu, double nu, int max_dim,
                                  std::vector<std::size_t>* stage_ends)
{
    if (!(mu > 0) || !(mu <= nu) || !std::isfinite(nu)) throw std::invalid_argument("need 0 < mu <= nu");
    if (max_dim < 1) throw std::invalid_argument("max_dim must be at least 1");
    ZigzagFiltration f;
    if (p.size() == 0) return f;

    const Eigen::MatrixXd dist = distance_matrix(p.points);
    const GreedyPermutation g = greedy_from(dist);
    const std::size_t n = g.order.size();
    // theta[i]: covering radius of the first i+1 points.
    auto theta = [&](std::size_t i) { return i + 1 < n ? g.radii[i + 1] : 0.0; };

    std::vector<std::size_t> prefix{g.order[0]};
    std::vector<Simplex> current = rips_complex(dist, prefix, mu * theta(0), max_dim);
    append_transition(f, {}, current);
    if (stage_ends) stage_ends->push_back(f.length());
    for (std::size_t i = 0; i + 1 < n; ++i) {
        prefix.push_back(g.order[i + 1]);
        auto grown = rips_complex(dist, prefix, nu * theta(i), max_dim);
        append_transition(f, current, grown);
        if (stage_ends) stage_ends->push_back(f.length());
        current = std::move(grown);
        if (i + 2 == n) break;
        auto shrunk = rips_complex(dist, prefix, mu * theta(i + 1), max_dim);
        append_transition(f, current, shrunk);
        if (stage_ends) stage_ends->push_back(f.length());
        current = std::move(shrunk);
    }
    return f;
}

ZigzagFiltration with_teardown(const ZigzagFiltration& f)
{
    ComplexState k;
    for (std::size_t i = 0; i < f.length(); ++i) apply_step(f, i, k);
    ZigzagFiltration out = f;
    append_transition(out, k.simplices(), {});
    return out;
}

}  // namespace wzz
