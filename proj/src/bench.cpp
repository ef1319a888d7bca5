#include "wzz/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wzz/engine.hpp"

namespace wzz {

std::vector<LadderRow> run_ladder(const ZigzagFiltration& block, int rungs, int trials)
{
    if (rungs < 1 || trials < 1) throw std::invalid_argument("need at least one rung and one trial");
    if (!complex_at(block, block.length()).empty()) throw std::invalid_argument("ladder block must end empty");

    std::vector<LadderRow> rows;
    ZigzagFiltration f = block;
    for (int r = 0; r < rungs; ++r) {
        if (r > 0) f.append(ZigzagFiltration(f));
        LadderRow row;
        row.blocks = std::size_t{1} << r;
        row.seconds = std::numeric_limits<double>::infinity();
        for (int t = 0; t < trials; ++t) {
            auto start = std::chrono::steady_clock::now();
            PersistenceResult res = run(f);
            double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            row.seconds = std::min(row.seconds, s);
            row.m = res.stats.m;
            row.n = res.stats.n;
            row.peak_footprint_bytes = res.stats.peak_footprint_bytes;
        }
        rows.push_back(row);
    }
    return rows;
}

double fitted_exponent(const std::vector<LadderRow>& rows)
{
    if (rows.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        double x = std::log(static_cast<double>(r.m)), y = std::log(std::max(r.seconds, 1e-9));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double k = static_cast<double>(rows.size());
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace wzz
