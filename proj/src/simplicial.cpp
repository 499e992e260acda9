#include "sigtda/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sigtda {

Simplex::Simplex(std::vector<int> verts) : vertices(std::move(verts)) {
    if (vertices.empty()) throw std::invalid_argument("Simplex: empty vertex set");
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw std::invalid_argument("Simplex: repeated vertex");
}

bool Simplex::contains(const Simplex& other) const {
    return std::includes(vertices.begin(), vertices.end(), other.vertices.begin(),
                         other.vertices.end());
}

bool Simplex::disjoint(const Simplex& other) const {
    auto a = vertices.begin();
    auto b = other.vertices.begin();
    while (a != vertices.end() && b != other.vertices.end()) {
        if (*a == *b) return false;
        if (*a < *b) ++a; else ++b;
    }
    return true;
}

Simplex Simplex::unite(const Simplex& other) const {
    std::vector<int> merged;
    std::set_union(vertices.begin(), vertices.end(), other.vertices.begin(),
                   other.vertices.end(), std::back_inserter(merged));
    Simplex s;
    s.vertices = std::move(merged);
    return s;
}

std::vector<Simplex> Simplex::facets() const {
    std::vector<Simplex> out;
    if (vertices.size() < 2) return out;
    for (std::size_t skip = 0; skip < vertices.size(); ++skip) {
        Simplex f;
        f.vertices.reserve(vertices.size() - 1);
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (i != skip) f.vertices.push_back(vertices[i]);
        out.push_back(std::move(f));
    }
    return out;
}

bool Simplex::operator<(const Simplex& o) const {
    if (vertices.size() != o.vertices.size()) return vertices.size() < o.vertices.size();
    return vertices < o.vertices;
}

WeightedComplex::WeightedComplex(int vertex_count) : vertex_count_(vertex_count) {
    if (vertex_count < 1)
        throw std::invalid_argument("WeightedComplex: vertex_count must be >= 1");
    for (int v = 0; v < vertex_count; ++v) {
        Simplex s;
        s.vertices = {v};
        simplices_.emplace(std::move(s), 0.0);
    }
}

void WeightedComplex::insert(const Simplex& s, double weight) {
    if (s.vertices.empty()) throw std::invalid_argument("insert: empty simplex");
    if (s.vertices.front() < 0 || s.vertices.back() >= vertex_count_)
        throw std::invalid_argument("insert: vertex outside 0.." +
                                    std::to_string(vertex_count_ - 1));
    if (!std::isfinite(weight) || weight < 0.0)
        throw std::invalid_argument("insert: weight must be finite and >= 0");

    auto [it, fresh] = simplices_.emplace(s, weight);
    if (!fresh) it->second = std::max(it->second, weight);
    for (const auto& f : s.facets()) insert(f, 0.0);
}

bool WeightedComplex::contains(const Simplex& s) const { return simplices_.count(s) > 0; }

double WeightedComplex::weight(const Simplex& s) const {
    auto it = simplices_.find(s);
    if (it == simplices_.end()) throw std::invalid_argument("weight: simplex not in complex");
    return it->second;
}

std::size_t WeightedComplex::count_of_dimension(std::size_t dim) const {
    std::size_t n = 0;
    for (const auto& [s, w] : simplices_)
        if (s.dimension() == dim) ++n;
    return n;
}

void WeightedComplex::validate() const {
    for (int v = 0; v < vertex_count_; ++v) {
        Simplex s;
        s.vertices = {v};
        if (!contains(s)) throw std::logic_error("WeightedComplex: missing vertex");
    }
    for (const auto& [s, w] : simplices_) {
        if (!std::isfinite(w) || w < 0.0)
            throw std::logic_error("WeightedComplex: invalid weight");
        for (const auto& f : s.facets())
            if (!contains(f)) throw std::logic_error("WeightedComplex: closure violated");
    }
}

std::vector<Simplex> link(const WeightedComplex& complex, const Simplex& sigma) {
    if (!complex.contains(sigma))
        throw std::invalid_argument("link: sigma is not a face of the complex");
    std::vector<Simplex> out;
    for (const auto& [tau, w] : complex.simplices()) {
        if (!sigma.disjoint(tau)) continue;
        if (complex.contains(sigma.unite(tau))) out.push_back(tau);
    }
    return out;
}

}  // namespace sigtda
