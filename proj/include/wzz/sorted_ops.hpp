#pragma once

#include <algorithm>
#include <vector>

namespace wzz {

/// In-place symmetric difference of two sorted, duplicate-free vectors.
/// This is the Z2 sum used for chains, matrix columns and bundles alike.
template <class T>
void xor_sorted(std::vector<T>& a, const std::vector<T>& b)
{
    if (b.empty()) return;
    if (a.empty()) {
        a = b;
        return;
    }
    thread_local std::vector<T> scratch;
    scratch.clear();
    scratch.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(scratch));
    a.swap(scratch);
}

template <class T>
std::vector<T> xor_sorted_copy(std::vector<T> a, const std::vector<T>& b)
{
    xor_sorted(a, b);
    return a;
}

template <class T>
bool sorted_contains(const std::vector<T>& a, const T& x)
{
    return std::binary_search(a.begin(), a.end(), x);
}

}  // namespace wzz
