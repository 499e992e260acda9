#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace sigtda {

// ============================================================================
// L1-penalized least squares by cyclic coordinate descent
// ============================================================================
//
// Objective, exactly as minimized (no sample-size factor):
//
//     ||y - sum_j beta_j x_j||^2 + lambda * sum_j |beta_j|
//
// The coordinate update therefore soft-thresholds at lambda/2: the derivative
// of the squared term is twice the residual correlation. Coordinates are
// visited in column order, which fixes the outcome on degenerate (duplicate
// column) instances.

struct DesignMatrix {
    std::vector<std::vector<double>> columns;  // each of common length m
    std::vector<std::string> labels;           // unique, aligned with columns

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    std::size_t cols() const { return columns.size(); }

    void validate() const;
};

struct ColumnStats {
    std::vector<double> mean;
    std::vector<double> scale;          // sample std; 1.0 where variance is zero
    std::vector<bool> zero_variance;    // flagged constant columns
};

struct LassoOptions {
    double tol = 1e-7;        // convergence: max coordinate change per sweep
    std::size_t max_iter = 10000;  // maximum sweeps
    bool record_objective = false;
};

struct LassoFit {
    std::vector<double> beta;
    double r2 = 0.0;
    double lambda = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> objective_trace;  // per sweep, when requested
};

// Centers every column to mean 0 and scales nonzero-variance columns to unit
// sample standard deviation (n-1 denominator). Zero-variance columns are
// centered only and flagged.
std::pair<DesignMatrix, ColumnStats> standardize_columns(const DesignMatrix& X);

LassoFit fit_lasso(const DesignMatrix& X, const std::vector<double>& y, double lambda,
                   const LassoOptions& opts = {});

// 1 - RSS/TSS with TSS about the mean of y. Defined as 0 when TSS = 0 and
// RSS > 0, and 1 when both vanish.
double r_squared(const DesignMatrix& X, const std::vector<double>& y,
                 const std::vector<double>& beta);

// Columns surviving the selection gate: empty unless fit.r2 > r2_threshold
// (strict), otherwise every column with |beta| above the zero-snap tolerance,
// paired with |beta| as its selection weight.
std::vector<std::pair<std::size_t, double>> select(const LassoFit& fit, double r2_threshold);

constexpr double kBetaZeroSnap = 1e-10;

}  // namespace sigtda
