#pragma once

#include <cstddef>
#include <vector>

namespace sigtda {

// ============================================================================
// Piecewise-linear multidimensional path
// ============================================================================
//
// A path is a strictly increasing time grid plus one point of R^d per grid
// node. All signature computations treat the path as the linear interpolation
// of its samples.

struct Path {
    std::vector<double> times;                // strictly increasing, size n >= 2
    std::vector<std::vector<double>> values;  // n points, each of dimension d

    std::size_t sample_count() const { return times.size(); }
    std::size_t dimension() const { return values.empty() ? 0 : values.front().size(); }

    // Throws std::invalid_argument when the invariants above are violated.
    void validate() const;
};

// Prepends the timestamp as coordinate 0, turning a d-dimensional path into a
// (d+1)-dimensional one whose first coordinate is strictly increasing.
Path time_augment(const Path& path);

// Per coordinate: subtract the sample mean, divide by the sample standard
// deviation (n-1 denominator). Coordinates with zero variance are centered
// only. Timestamps are untouched.
Path normalize_path(const Path& path);

// For a time-augmented scalar path (t, x), returns (t, x, ..., x) with the
// data coordinate repeated so the total dimension equals target_dim.
// lift_path(p, 2) is the identity.
Path lift_path(const Path& path, std::size_t target_dim);

}  // namespace sigtda
