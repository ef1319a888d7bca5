#pragma once

#include <cstdint>
#include <istream>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "wzz/filtration.hpp"

namespace wzz {

/// One point per row.
struct PointCloud {
    Eigen::MatrixXd points;

    std::size_t size() const { return static_cast<std::size_t>(points.rows()); }
    int dim() const { return static_cast<int>(points.cols()); }
};

/// Whitespace-separated coordinates, one point per line; '#' lines and blank
/// lines are skipped. Throws ParseError on ragged rows or bad numbers.
PointCloud load_points(std::istream& in);
PointCloud load_points(std::string_view text);

/// Uniform random points in the unit cube of the given dimension.
PointCloud random_cloud(std::size_t n, int dim, std::uint64_t seed);

struct GreedyPermutation {
    std::vector<std::size_t> order;  ///< point indices, starting at point 0
    /// radii[k] = distance from order[k] to the earlier points; radii[0] is +inf.
    std::vector<double> radii;
    /// Points left out because they coincide with an earlier point.
    std::size_t dropped = 0;
};

/// Farthest-point traversal. Duplicate points (radius 0) are dropped.
GreedyPermutation greedy_permutation(const PointCloud& p);

/// All cliques of at most max_dim + 1 of the given vertices whose pairwise
/// distances are at most r, sorted by vertex list.
std::vector<Simplex> rips_complex(const Eigen::MatrixXd& dist, const std::vector<std::size_t>& vertices,
                                  double r, int max_dim);

/// Simplex-wise steps turning complex a into complex b through a union:
/// insertions by dimension then vertex order, deletions by dimension
/// descending then reverse vertex order. Inputs sorted by vertex list.
void append_transition(ZigzagFiltration& f, const std::vector<Simplex>& a, const std::vector<Simplex>& b);

/// Oscillating Rips zigzag along the greedy order. With theta_i the covering
/// radius of the first i+1 points, it runs
///   R(P_i; mu theta_i) -> R(P_{i+1}; nu theta_i) <- R(P_{i+1}; mu theta_{i+1})
/// and stops after the last growth (the final shrink to radius 0 is left
/// out). Vertices are the original point indices. stage_ends, if given,
/// receives the filtration length after every complex-level step.
ZigzagFiltration oscillating_rips(const PointCloud& p, double mu, double nu, int max_dim,
                                  std::vector<std::size_t>* stage_ends = nullptr);

/// f followed by deletion of everything still present, ending empty.
ZigzagFiltration with_teardown(const ZigzagFiltration& f);

}  // namespace wzz
