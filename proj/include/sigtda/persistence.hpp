#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sigtda/simplicial.hpp"

namespace sigtda {

// ============================================================================
// Filtrations, persistence diagrams, Betti numbers, persistence entropy
// ============================================================================
//
// Birth times are induced by the selection weights: a simplex of weight
// beta enters at 1 - beta / sum(beta), so heavily supported simplices appear
// early. Faces inherit earlier births from their cofaces until the filtration
// is subset-monotone. Homology is computed over the two-element field by
// standard left-to-right boundary-matrix reduction.

struct Filtration {
    // Sorted by (birth, dimension, lexicographic vertices); every face
    // precedes its cofaces.
    std::vector<std::pair<Simplex, double>> entries;

    void validate() const;
};

struct PersistenceBar {
    int dim = 0;
    double birth = 0.0;
    std::optional<double> death;  // empty = essential class

    bool essential() const { return !death.has_value(); }
};

struct PersistenceDiagram {
    std::vector<PersistenceBar> bars;

    std::size_t essential_count(int dim) const;
};

struct BettiVector {
    std::size_t b0 = 0;
    std::size_t b1 = 0;
};

// Vertices are born at 0; positive-weight simplices at 1 - beta/sum(beta)
// (sum over positive-weight non-vertex simplices); zero-weight closure faces
// provisionally at 1. Births are then lowered to restore subset monotonicity.
// When no positive weight exists the filtration holds the vertices only.
Filtration births_from_weights(const WeightedComplex& complex);

// GF(2) boundary-matrix reduction in filtration order. Pairing (creator,
// destroyer) emits one bar per simplex; unpaired creators become essential
// bars. Bars of every dimension present are kept, including zero-length ones.
PersistenceDiagram reduce_boundary(const Filtration& filtration);

// b0 = connected components, b1 = rank of first GF(2) homology.
BettiVector betti(const WeightedComplex& complex);

// Shannon entropy of normalized bar lifetimes, with essential deaths clamped
// to 1.0. Zero-length bars are dropped; the entropy of at most one surviving
// bar is 0. The dimension-free overload pools dimensions 0 and 1.
double persistence_entropy(const PersistenceDiagram& diagram);
double persistence_entropy(const PersistenceDiagram& diagram, int dim);

}  // namespace sigtda
