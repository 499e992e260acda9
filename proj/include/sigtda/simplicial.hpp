#pragma once

#include <cstddef>
#include <map>
#include <vector>

namespace sigtda {

// ============================================================================
// Weighted abstract simplicial complexes over channel vertices
// ============================================================================
//
// Vertices are 0-based channel indices. A simplex is its sorted vertex set;
// the complex maps each stored simplex to a nonnegative selection weight.
// Closure (every subset of a stored simplex is stored) is an invariant of
// WeightedComplex and enforced on insertion.

struct Simplex {
    std::vector<int> vertices;  // sorted, distinct, non-empty

    Simplex() = default;
    explicit Simplex(std::vector<int> verts);

    std::size_t dimension() const { return vertices.size() - 1; }

    bool contains(const Simplex& other) const;  // other subset of this
    bool disjoint(const Simplex& other) const;
    Simplex unite(const Simplex& other) const;

    // All faces of dimension one less (empty for vertices).
    std::vector<Simplex> facets() const;

    bool operator==(const Simplex& o) const { return vertices == o.vertices; }
    bool operator<(const Simplex& o) const;  // by dimension, then lexicographic
};

class WeightedComplex {
public:
    WeightedComplex() = default;
    explicit WeightedComplex(int vertex_count);

    int vertex_count() const { return vertex_count_; }

    // Inserts the simplex and every missing face. The simplex takes
    // max(existing, weight); faces added purely for closure get weight 0.
    void insert(const Simplex& s, double weight);

    bool contains(const Simplex& s) const;
    double weight(const Simplex& s) const;

    std::size_t size() const { return simplices_.size(); }
    std::size_t count_of_dimension(std::size_t dim) const;

    // Sorted, deterministic iteration (dimension then lexicographic).
    const std::map<Simplex, double>& simplices() const { return simplices_; }

    void validate() const;  // closure, weights finite and >= 0, vertices present

private:
    int vertex_count_ = 0;
    std::map<Simplex, double> simplices_;
};

// All faces tau disjoint from sigma with tau u sigma in the complex.
// Throws when sigma itself is absent.
std::vector<Simplex> link(const WeightedComplex& complex, const Simplex& sigma);

}  // namespace sigtda
