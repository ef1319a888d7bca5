#pragma once

#include "wzz/filtration.hpp"

namespace wzz::testing {

// u = 0, v = 1, w = 2 throughout.
inline const char* const kF1Text = "i 0\ni 1\ni 0 1\nd 0 1\nd 1\n";
inline const char* const kF2Text = "i 0\ni 1\ni 2\ni 0 1\ni 0 2\ni 1 2\ni 0 1 2\nd 0 1 2\n";

inline ZigzagFiltration f1() { return parse_filtration(kF1Text); }
inline ZigzagFiltration f2() { return parse_filtration(kF2Text); }

}  // namespace wzz::testing
