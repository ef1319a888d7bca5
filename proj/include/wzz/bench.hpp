#pragma once

#include <cstddef>
#include <vector>

#include "wzz/filtration.hpp"

namespace wzz {

struct LadderRow {
    std::size_t blocks = 0;
    std::size_t m = 0;
    std::size_t n = 0;
    double seconds = 0;  ///< fastest of the trials
    std::size_t peak_footprint_bytes = 0;
};

/// Times the engine on 1, 2, 4, ... copies of block (which must end at the
/// empty complex), so m doubles while the largest complex stays the same.
std::vector<LadderRow> run_ladder(const ZigzagFiltration& block, int rungs, int trials);

/// Least-squares slope of log(seconds) against log(m).
double fitted_exponent(const std::vector<LadderRow>& rows);

}  // namespace wzz
