#include "sigtda/path.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sigtda {

void Path::validate() const {
    if (times.size() < 2)
        throw std::invalid_argument("Path: need at least 2 samples, got " +
                                    std::to_string(times.size()));
    if (times.size() != values.size())
        throw std::invalid_argument("Path: times/values length mismatch");
    const std::size_t d = values.front().size();
    if (d < 1) throw std::invalid_argument("Path: dimension must be >= 1");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].size() != d)
            throw std::invalid_argument("Path: inconsistent point dimension at sample " +
                                        std::to_string(i));
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("Path: times not strictly increasing at sample " +
                                        std::to_string(i));
    }
}

Path time_augment(const Path& path) {
    path.validate();
    Path out;
    out.times = path.times;
    out.values.reserve(path.values.size());
    for (std::size_t i = 0; i < path.values.size(); ++i) {
        std::vector<double> p;
        p.reserve(path.values[i].size() + 1);
        p.push_back(path.times[i]);
        p.insert(p.end(), path.values[i].begin(), path.values[i].end());
        out.values.push_back(std::move(p));
    }
    return out;
}

Path normalize_path(const Path& path) {
    path.validate();
    const std::size_t n = path.sample_count();
    const std::size_t d = path.dimension();

    Path out = path;
    for (std::size_t c = 0; c < d; ++c) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += path.values[i][c];
        mean /= static_cast<double>(n);

        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dev = path.values[i][c] - mean;
            ss += dev * dev;
        }
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));

        if (sd > 0.0) {
            for (std::size_t i = 0; i < n; ++i)
                out.values[i][c] = (path.values[i][c] - mean) / sd;
        } else {
            for (std::size_t i = 0; i < n; ++i) out.values[i][c] = 0.0;
        }
    }
    return out;
}

Path lift_path(const Path& path, std::size_t target_dim) {
    path.validate();
    if (path.dimension() != 2)
        throw std::invalid_argument("lift_path: expects a time-augmented scalar path (t, x)");
    if (target_dim < 2) throw std::invalid_argument("lift_path: target_dim must be >= 2");

    Path out;
    out.times = path.times;
    out.values.reserve(path.values.size());
    for (const auto& p : path.values) {
        std::vector<double> q;
        q.reserve(target_dim);
        q.push_back(p[0]);
        for (std::size_t c = 1; c < target_dim; ++c) q.push_back(p[1]);
        out.values.push_back(std::move(q));
    }
    return out;
}

}  // namespace sigtda
