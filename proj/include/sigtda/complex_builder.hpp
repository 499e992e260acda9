#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sigtda/lasso.hpp"
#include "sigtda/simplicial.hpp"

namespace sigtda {

// ============================================================================
// Signature-regression construction of the interaction complex
// ============================================================================
//
// For each channel the flattened truncated signature of its time-augmented,
// normalized window path is regressed on the signatures of the other channels
// (stage one, edges) and on the signatures of channel pairs (stage two,
// triangles). A LASSO fit whose R^2 clears the gate contributes one simplex
// per surviving coefficient, weighted by |beta|.
//
// Window paths use the unit time grid: sample i of an n-sample window sits at
// time i/(n-1), so the augmented time coordinate spans [0, 1] regardless of
// the window length in seconds. Channels that are constant over the window
// carry no signal and are left out of the regressions entirely; they remain
// isolated vertices.

struct ChannelWindow {
    int channel = 0;          // 0-based channel index
    double t_start = 0.0;     // window interval [t-L, t] in seconds
    double t_end = 0.0;
    std::vector<double> samples;  // >= 2 samples, uniform grid
};

struct BuildParams {
    std::size_t deg = 3;
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    double r2_threshold = 0.67;
    int max_dim = 2;          // 1 = edges only, 2 = edges and triangles
    LassoOptions solver;
};

// Stage k=1: one regression per channel against the other channels' single
// signatures. Returns each selected edge {i, j} with its weight, deduplicated
// across regressions by maximum |beta|.
std::vector<std::pair<Simplex, double>> stage_one(const std::vector<ChannelWindow>& windows,
                                                  std::size_t deg, double lambda1,
                                                  double r2_threshold,
                                                  const LassoOptions& solver = {});

// Stage k=2: one regression per channel against all unordered pair signatures
// (t, X^{j1}, X^{j2}) with j1 < j2, both distinct from the target. The target
// signature is lifted to dimension 3 so feature vectors share length.
std::vector<std::pair<Simplex, double>> stage_two(const std::vector<ChannelWindow>& windows,
                                                  std::size_t deg, double lambda2,
                                                  double r2_threshold,
                                                  const LassoOptions& solver = {});

// Runs both stages over a shared signature cache and assembles the weighted
// complex: vertices are always present, closure faces are added with weight
// 0, and simplices reached from several regressions keep the maximum weight.
WeightedComplex build_complex(const std::vector<ChannelWindow>& windows,
                              const BuildParams& params);

}  // namespace sigtda
