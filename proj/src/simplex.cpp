#include "wzz/simplex.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "wzz/sorted_ops.hpp"

namespace wzz {

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices))
{
    if (vertices_.empty()) throw std::invalid_argument("simplex must have at least one vertex");
    for (std::size_t k = 1; k < vertices_.size(); ++k)
        if (vertices_[k - 1] >= vertices_[k])
            throw std::invalid_argument("simplex vertices must be strictly increasing");
}

Simplex::Simplex(std::initializer_list<Vertex> vertices) : Simplex(std::vector<Vertex>(vertices)) {}

std::vector<Simplex> Simplex::faces() const
{
    std::vector<Simplex> out;
    if (vertices_.size() < 2) return out;
    out.reserve(vertices_.size());
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
        std::vector<Vertex> f;
        f.reserve(vertices_.size() - 1);
        for (std::size_t j = 0; j < vertices_.size(); ++j)
            if (j != k) f.push_back(vertices_[j]);
        out.emplace_back(std::move(f));
    }
    return out;
}

bool Simplex::is_face_of(const Simplex& other) const
{
    return vertices_.size() < other.vertices_.size() &&
           std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(),
                         vertices_.end());
}

std::string Simplex::to_string() const
{
    std::string s;
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
        if (k) s += ' ';
        s += std::to_string(vertices_[k]);
    }
    return s;
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept
{
    std::size_t seed = s.size();
    for (Vertex v : s.vertices()) seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
}

namespace {

void sort_and_cancel(std::vector<Simplex>& v)
{
    std::sort(v.begin(), v.end());
    std::vector<Simplex> out;
    out.reserve(v.size());
    for (std::size_t k = 0; k < v.size();) {
        std::size_t j = k;
        while (j < v.size() && v[j] == v[k]) ++j;
        if ((j - k) % 2 == 1) out.push_back(std::move(v[k]));
        k = j;
    }
    v = std::move(out);
}

}  // namespace

Chain::Chain(std::vector<Simplex> simplices) : simplices_(std::move(simplices))
{
    sort_and_cancel(simplices_);
    for (const auto& s : simplices_)
        if (s.dimension() != simplices_.front().dimension())
            throw std::invalid_argument("chain must be dimension-homogeneous");
}

Chain::Chain(std::initializer_list<Simplex> simplices) : Chain(std::vector<Simplex>(simplices)) {}

std::optional<int> Chain::degree() const
{
    if (simplices_.empty()) return std::nullopt;
    return simplices_.front().dimension();
}

bool Chain::contains(const Simplex& s) const { return sorted_contains(simplices_, s); }

Chain& Chain::operator+=(const Chain& other)
{
    if (!empty() && !other.empty() && *degree() != *other.degree())
        throw std::invalid_argument("cannot add chains of degree " + std::to_string(*degree()) +
                                    " and " + std::to_string(*other.degree()));
    xor_sorted(simplices_, other.simplices_);
    return *this;
}

std::string Chain::to_string() const
{
    if (empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < simplices_.size(); ++k) {
        if (k) s += " + ";
        s += "[" + simplices_[k].to_string() + "]";
    }
    return s;
}

Chain chain_add(const Chain& a, const Chain& b) { return a + b; }

Chain boundary(const Simplex& s) { return Chain(s.faces()); }

Chain boundary(const Chain& c)
{
    std::vector<Simplex> faces;
    for (const auto& s : c) {
        auto f = s.faces();
        faces.insert(faces.end(), std::make_move_iterator(f.begin()),
                     std::make_move_iterator(f.end()));
    }
    return Chain(std::move(faces));
}

std::optional<Index> ComplexState::live_id(const Simplex& s) const
{
    auto it = live_.find(s);
    if (it == live_.end()) return std::nullopt;
    return it->second;
}

void ComplexState::insert(const Simplex& s, Index id)
{
    if (!live_.emplace(s, id).second)
        throw std::invalid_argument("simplex {" + s.to_string() + "} is already live");
}

void ComplexState::erase(const Simplex& s)
{
    if (live_.erase(s) == 0)
        throw std::invalid_argument("simplex {" + s.to_string() + "} is not live");
}

std::vector<Simplex> ComplexState::simplices() const
{
    std::vector<Simplex> out;
    out.reserve(live_.size());
    for (const auto& [s, id] : live_) out.push_back(s);
    std::sort(out.begin(), out.end());
    return out;
}

bool ComplexState::contains_chain(const Chain& c) const
{
    return std::all_of(c.begin(), c.end(), [&](const Simplex& s) { return contains(s); });
}

std::optional<Index> pivot(const Chain& c, const ComplexState& state)
{
    std::optional<Index> best;
    for (const auto& s : c) {
        auto id = state.live_id(s);
        if (!id) throw std::out_of_range("simplex {" + s.to_string() + "} is not live");
        if (!best || *id > *best) best = id;
    }
    return best;
}

SimplexKey SimplexTable::intern(const Simplex& s)
{
    auto [it, inserted] = index_.emplace(s, static_cast<SimplexKey>(simplices_.size()));
    if (inserted) simplices_.push_back(s);
    return it->second;
}

std::optional<SimplexKey> SimplexTable::find(const Simplex& s) const
{
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Chain SimplexTable::to_chain(std::span<const SimplexKey> keys) const
{
    std::vector<Simplex> out;
    out.reserve(keys.size());
    for (SimplexKey k : keys) out.push_back(simplices_.at(k));
    return Chain(std::move(out));
}

KeyChain SimplexTable::to_keys(const Chain& c)
{
    KeyChain out;
    out.reserve(c.size());
    for (const auto& s : c) out.push_back(intern(s));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace wzz
