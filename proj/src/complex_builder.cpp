#include "sigtda/complex_builder.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "sigtda/path.hpp"
#include "sigtda/signature.hpp"

namespace sigtda {

namespace {

// Per-window signature cache shared by the two stages. Signatures are
// computed once per channel and once per unordered pair, then reused across
// the d regressions of each stage.
struct WindowFeatures {
    std::size_t d = 0;
    std::size_t deg = 0;
    std::size_t n = 0;                        // samples per window
    std::vector<double> grid;                 // unit time grid
    std::vector<bool> active;                 // nonzero variance over the window
    std::vector<std::vector<double>> values;  // normalized samples per channel

    std::vector<std::vector<double>> single_sig;  // flattened (t, x_i) signatures
    std::vector<std::vector<double>> lifted_sig;  // flattened lift to dim 3
    std::map<std::pair<int, int>, std::vector<double>> pair_sig;

    WindowFeatures(const std::vector<ChannelWindow>& windows, std::size_t deg_);

    const std::vector<double>& single(int i);
    const std::vector<double>& lifted(int i);
    const std::vector<double>& pair(int j1, int j2);

private:
    Path channel_path(int i) const;
};

WindowFeatures::WindowFeatures(const std::vector<ChannelWindow>& windows, std::size_t deg_) {
    if (windows.empty()) throw std::invalid_argument("build: no channel windows");
    d = windows.size();
    deg = deg_;
    if (deg < 1) throw std::invalid_argument("build: deg must be >= 1");
    n = windows.front().samples.size();
    if (n < 2) throw std::invalid_argument("build: windows need at least 2 samples");

    for (std::size_t i = 0; i < d; ++i) {
        if (windows[i].channel != static_cast<int>(i))
            throw std::invalid_argument("build: window " + std::to_string(i) +
                                        " carries channel index " +
                                        std::to_string(windows[i].channel));
        if (windows[i].samples.size() != n)
            throw std::invalid_argument("build: channel windows of unequal length");
    }

    grid.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        grid[k] = static_cast<double>(k) / static_cast<double>(n - 1);

    active.resize(d);
    values.resize(d);
    single_sig.resize(d);
    lifted_sig.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        Path raw;
        raw.times = grid;
        raw.values.reserve(n);
        for (double v : windows[i].samples) raw.values.push_back({v});
        Path norm = normalize_path(raw);
        values[i].reserve(n);
        for (const auto& p : norm.values) values[i].push_back(p[0]);

        double first = windows[i].samples.front();
        bool constant = true;
        for (double v : windows[i].samples)
            if (v != first) { constant = false; break; }
        active[i] = !constant;
    }
}

Path WindowFeatures::channel_path(int i) const {
    Path p;
    p.times = grid;
    p.values.reserve(n);
    for (double v : values[i]) p.values.push_back({v});
    return p;
}

const std::vector<double>& WindowFeatures::single(int i) {
    if (single_sig[i].empty())
        single_sig[i] = flatten(path_signature(time_augment(channel_path(i)), deg));
    return single_sig[i];
}

const std::vector<double>& WindowFeatures::lifted(int i) {
    if (lifted_sig[i].empty())
        lifted_sig[i] = flatten(path_signature(lift_path(time_augment(channel_path(i)), 3), deg));
    return lifted_sig[i];
}

const std::vector<double>& WindowFeatures::pair(int j1, int j2) {
    auto key = std::make_pair(j1, j2);
    auto it = pair_sig.find(key);
    if (it != pair_sig.end()) return it->second;

    Path p;
    p.times = grid;
    p.values.reserve(n);
    for (std::size_t k = 0; k < n; ++k) p.values.push_back({grid[k], values[j1][k], values[j2][k]});
    auto flat = flatten(path_signature(p, deg));
    return pair_sig.emplace(key, std::move(flat)).first->second;
}

std::vector<double> centered(const std::vector<double>& y) {
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    std::vector<double> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] - mean;
    return out;
}

void keep_max(std::map<Simplex, double>& dst, const Simplex& s, double w) {
    auto [it, fresh] = dst.emplace(s, w);
    if (!fresh && w > it->second) it->second = w;
}

std::map<Simplex, double> run_stage_one(WindowFeatures& feat, double lambda1,
                                        double r2_threshold, const LassoOptions& solver) {
    std::map<Simplex, double> edges;
    const int d = static_cast<int>(feat.d);
    if (d < 2) return edges;

    for (int i = 0; i < d; ++i) {
        if (!feat.active[i]) continue;

        DesignMatrix X;
        std::vector<int> col_channel;
        for (int j = 0; j < d; ++j) {
            if (j == i || !feat.active[j]) continue;
            X.columns.push_back(feat.single(j));
            X.labels.push_back(std::to_string(j));
            col_channel.push_back(j);
        }
        if (X.columns.empty()) continue;

        auto [Xstd, stats] = standardize_columns(X);
        auto fit = fit_lasso(Xstd, centered(feat.single(i)), lambda1, solver);
        for (const auto& [col, w] : select(fit, r2_threshold))
            keep_max(edges, Simplex({i, col_channel[col]}), w);
    }
    return edges;
}

std::map<Simplex, double> run_stage_two(WindowFeatures& feat, double lambda2,
                                        double r2_threshold, const LassoOptions& solver) {
    std::map<Simplex, double> triangles;
    const int d = static_cast<int>(feat.d);
    if (d < 3) return triangles;

    for (int i = 0; i < d; ++i) {
        if (!feat.active[i]) continue;

        DesignMatrix X;
        std::vector<std::pair<int, int>> col_pair;
        for (int j1 = 0; j1 < d; ++j1) {
            if (j1 == i || !feat.active[j1]) continue;
            for (int j2 = j1 + 1; j2 < d; ++j2) {
                if (j2 == i || !feat.active[j2]) continue;
                X.columns.push_back(feat.pair(j1, j2));
                X.labels.push_back(std::to_string(j1) + "," + std::to_string(j2));
                col_pair.emplace_back(j1, j2);
            }
        }
        if (X.columns.empty()) continue;

        auto [Xstd, stats] = standardize_columns(X);
        auto fit = fit_lasso(Xstd, centered(feat.lifted(i)), lambda2, solver);
        for (const auto& [col, w] : select(fit, r2_threshold)) {
            const auto& [j1, j2] = col_pair[col];
            keep_max(triangles, Simplex({i, j1, j2}), w);
        }
    }
    return triangles;
}

}  // namespace

std::vector<std::pair<Simplex, double>> stage_one(const std::vector<ChannelWindow>& windows,
                                                  std::size_t deg, double lambda1,
                                                  double r2_threshold,
                                                  const LassoOptions& solver) {
    WindowFeatures feat(windows, deg);
    auto edges = run_stage_one(feat, lambda1, r2_threshold, solver);
    return {edges.begin(), edges.end()};
}

std::vector<std::pair<Simplex, double>> stage_two(const std::vector<ChannelWindow>& windows,
                                                  std::size_t deg, double lambda2,
                                                  double r2_threshold,
                                                  const LassoOptions& solver) {
    WindowFeatures feat(windows, deg);
    auto triangles = run_stage_two(feat, lambda2, r2_threshold, solver);
    return {triangles.begin(), triangles.end()};
}

WeightedComplex build_complex(const std::vector<ChannelWindow>& windows,
                              const BuildParams& params) {
    if (params.max_dim != 1 && params.max_dim != 2)
        throw std::invalid_argument("build_complex: max_dim must be 1 or 2");

    WindowFeatures feat(windows, params.deg);
    WeightedComplex complex(static_cast<int>(feat.d));

    for (const auto& [s, w] : run_stage_one(feat, params.lambda1, params.r2_threshold,
                                            params.solver))
        complex.insert(s, w);
    if (params.max_dim == 2) {
        for (const auto& [s, w] : run_stage_two(feat, params.lambda2, params.r2_threshold,
                                                params.solver))
            complex.insert(s, w);
    }
    return complex;
}

}  // namespace sigtda
