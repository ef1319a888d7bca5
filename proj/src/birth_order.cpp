#include "wzz/birth_order.hpp"

namespace wzz {

bool precedes(const BirthKey& a, const BirthKey& b)
{
    if (a.module != b.module) return a.module == Module::B;
    if (a.module == Module::B) return a.index < b.index;
    if (a.index < b.index) return b.arrow_into == Direction::Forward;
    if (b.index < a.index) return a.arrow_into == Direction::Backward;
    return false;
}

std::string to_string(const BirthKey& k)
{
    return std::string("(") + std::to_string(k.index) + "," + static_cast<char>(k.module) + "," +
           static_cast<char>(k.arrow_into) + ")";
}

}  // namespace wzz
