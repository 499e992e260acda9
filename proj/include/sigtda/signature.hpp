#pragma once

#include <cstddef>
#include <vector>

#include "sigtda/path.hpp"

namespace sigtda {

// ============================================================================
// Truncated path signatures
// ============================================================================
//
// The signature of a d-dimensional path is the sequence of its iterated
// integral tensors. Level k is a tensor with d^k coefficients, one per word
// (i1,...,ik) over the alphabet {1,...,d}, stored flat in lexicographic word
// order: word (i1,...,ik) sits at index sum_j (i_j - 1) * d^(k-j).
//
// For piecewise-linear paths the signature is computed exactly: each linear
// segment contributes the truncated tensor exponential of its increment, and
// segments are combined with the tensor-algebra product (Chen's identity).

// A word over the alphabet {1,...,d}; letters are 1-based.
struct Word {
    std::vector<int> letters;

    // Flat index of this word within its level's coefficient block.
    std::size_t index(std::size_t d) const;
};

struct TruncatedSignature {
    std::size_t d = 0;                       // alphabet size
    std::size_t deg = 0;                     // truncation order
    std::vector<std::vector<double>> levels; // levels[k-1] holds d^k coefficients

    // Coefficient lookup by word; word length must be in [1, deg].
    double coeff(const Word& w) const;

    static TruncatedSignature zero(std::size_t d, std::size_t deg);
};

// Signature of a single linear segment with increment delta: level k equals
// the k-fold tensor power of delta divided by k!.
TruncatedSignature segment_signature(const std::vector<double>& delta, std::size_t deg);

// Truncated tensor-algebra product (Chen's identity for concatenated paths):
// result level k = sum_{j=0..k} left_j (x) right_{k-j}, with level 0 = 1.
TruncatedSignature chen_concat(const TruncatedSignature& left, const TruncatedSignature& right);

// Signature of a piecewise-linear path: left-to-right Chen fold over the
// segment signatures of consecutive increments.
TruncatedSignature path_signature(const Path& path, std::size_t deg);

// Scaling by a constant: level k is multiplied by lambda^k.
TruncatedSignature rescale_signature(const TruncatedSignature& sig, double lambda);

// Levels 1..deg concatenated in order; length sum_k d^k.
std::vector<double> flatten(const TruncatedSignature& sig);

// Inverse of flatten for the given shape.
TruncatedSignature unflatten(const std::vector<double>& flat, std::size_t d, std::size_t deg);

// Number of coefficients in the flattened signature: sum_{k=1..deg} d^k.
std::size_t flat_length(std::size_t d, std::size_t deg);

}  // namespace sigtda
