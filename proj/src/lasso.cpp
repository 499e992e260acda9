#include "sigtda/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace sigtda {

void DesignMatrix::validate() const {
    if (columns.size() != labels.size())
        throw std::invalid_argument("DesignMatrix: columns/labels size mismatch");
    const std::size_t m = rows();
    if (m < 1) throw std::invalid_argument("DesignMatrix: empty columns");
    for (const auto& col : columns)
        if (col.size() != m)
            throw std::invalid_argument("DesignMatrix: columns of unequal length");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size())
        throw std::invalid_argument("DesignMatrix: duplicate column labels");
}

std::pair<DesignMatrix, ColumnStats> standardize_columns(const DesignMatrix& X) {
    X.validate();
    const std::size_t m = X.rows();
    if (m < 2) throw std::invalid_argument("standardize_columns: need at least 2 rows");

    DesignMatrix out = X;
    ColumnStats stats;
    stats.mean.resize(X.cols());
    stats.scale.resize(X.cols());
    stats.zero_variance.resize(X.cols());

    for (std::size_t j = 0; j < X.cols(); ++j) {
        const auto& col = X.columns[j];
        double mean = 0.0;
        for (double v : col) mean += v;
        mean /= static_cast<double>(m);

        double ss = 0.0;
        for (double v : col) ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(ss / static_cast<double>(m - 1));

        stats.mean[j] = mean;
        stats.zero_variance[j] = (sd == 0.0);
        stats.scale[j] = stats.zero_variance[j] ? 1.0 : sd;

        auto& dst = out.columns[j];
        for (std::size_t i = 0; i < m; ++i) dst[i] = (col[i] - mean) / stats.scale[j];
    }
    return {std::move(out), std::move(stats)};
}

namespace {

double soft_threshold(double z, double gamma) {
    if (z > gamma) return z - gamma;
    if (z < -gamma) return z + gamma;
    return 0.0;
}

double objective(const std::vector<double>& residual, const std::vector<double>& beta,
                 double lambda) {
    double rss = 0.0;
    for (double r : residual) rss += r * r;
    double l1 = 0.0;
    for (double b : beta) l1 += std::abs(b);
    return rss + lambda * l1;
}

}  // namespace

LassoFit fit_lasso(const DesignMatrix& X, const std::vector<double>& y, double lambda,
                   const LassoOptions& opts) {
    X.validate();
    const std::size_t m = X.rows();
    const std::size_t p = X.cols();
    if (y.size() != m)
        throw std::invalid_argument("fit_lasso: y length " + std::to_string(y.size()) +
                                    " does not match design rows " + std::to_string(m));
    if (lambda < 0.0 || !std::isfinite(lambda))
        throw std::invalid_argument("fit_lasso: lambda must be finite and >= 0");
    for (double v : y)
        if (!std::isfinite(v)) throw std::invalid_argument("fit_lasso: non-finite target entry");
    for (const auto& col : X.columns)
        for (double v : col)
            if (!std::isfinite(v)) throw std::invalid_argument("fit_lasso: non-finite design entry");

    std::vector<double> col_sq(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        double s = 0.0;
        for (double v : X.columns[j]) s += v * v;
        col_sq[j] = s;
    }

    LassoFit fit;
    fit.lambda = lambda;
    fit.beta.assign(p, 0.0);
    std::vector<double> residual = y;  // y - X beta, warm start beta = 0

    const double shrink = lambda / 2.0;
    std::size_t sweep = 0;
    for (; sweep < opts.max_iter; ++sweep) {
        double max_change = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            if (col_sq[j] == 0.0) continue;  // constant column, coefficient stays 0
            const auto& xj = X.columns[j];
            const double old = fit.beta[j];
            double corr = 0.0;
            for (std::size_t i = 0; i < m; ++i) corr += xj[i] * residual[i];
            corr += col_sq[j] * old;  // partial residual correlation
            const double next = soft_threshold(corr, shrink) / col_sq[j];
            const double change = next - old;
            if (change != 0.0) {
                for (std::size_t i = 0; i < m; ++i) residual[i] -= change * xj[i];
                fit.beta[j] = next;
            }
            max_change = std::max(max_change, std::abs(change));
        }
        if (opts.record_objective)
            fit.objective_trace.push_back(objective(residual, fit.beta, lambda));
        if (max_change < opts.tol) {
            fit.converged = true;
            ++sweep;
            break;
        }
    }
    fit.iterations = sweep;
    fit.r2 = r_squared(X, y, fit.beta);
    return fit;
}

double r_squared(const DesignMatrix& X, const std::vector<double>& y,
                 const std::vector<double>& beta) {
    X.validate();
    const std::size_t m = X.rows();
    if (y.size() != m) throw std::invalid_argument("r_squared: y length mismatch");
    if (beta.size() != X.cols()) throw std::invalid_argument("r_squared: beta length mismatch");

    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(m);

    double rss = 0.0, tss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double pred = 0.0;
        for (std::size_t j = 0; j < X.cols(); ++j) pred += beta[j] * X.columns[j][i];
        rss += (y[i] - pred) * (y[i] - pred);
        tss += (y[i] - mean) * (y[i] - mean);
    }
    if (tss == 0.0) return rss == 0.0 ? 1.0 : 0.0;
    return 1.0 - rss / tss;
}

std::vector<std::pair<std::size_t, double>> select(const LassoFit& fit, double r2_threshold) {
    std::vector<std::pair<std::size_t, double>> picked;
    if (!(fit.r2 > r2_threshold)) return picked;
    for (std::size_t j = 0; j < fit.beta.size(); ++j) {
        const double w = std::abs(fit.beta[j]);
        if (w > kBetaZeroSnap) picked.emplace_back(j, w);
    }
    return picked;
}

}  // namespace sigtda
