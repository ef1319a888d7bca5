#pragma once

#include <string>

#include "wzz/simplex.hpp"

namespace wzz {

/// Which zigzag module an interval belongs to: homology (H) or boundary (B).
enum class Module : char { H = 'H', B = 'B' };

enum class Direction : char { Forward = 'F', Backward = 'B' };

/// A birth index together with what is needed to order it.
struct BirthKey {
    Index index = 0;
    Module module = Module::H;
    Direction arrow_into = Direction::Forward;  ///< direction of K_{index-1} <-> K_index

    friend bool operator==(const BirthKey&, const BirthKey&) = default;
};

/// The total order on birth indices. Boundary births precede homology births;
/// boundary births are ordered by index; a homology birth entered by a forward
/// arrow comes after every smaller homology birth, and one entered by a
/// backward arrow comes before every smaller homology birth.
bool precedes(const BirthKey& a, const BirthKey& b);

std::string to_string(const BirthKey& k);

}  // namespace wzz
