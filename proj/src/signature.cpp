#include "sigtda/signature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sigtda {

std::size_t Word::index(std::size_t d) const {
    std::size_t idx = 0;
    for (int letter : letters) {
        if (letter < 1 || static_cast<std::size_t>(letter) > d)
            throw std::invalid_argument("Word: letter out of range 1..d");
        idx = idx * d + static_cast<std::size_t>(letter - 1);
    }
    return idx;
}

double TruncatedSignature::coeff(const Word& w) const {
    if (w.letters.empty() || w.letters.size() > deg)
        throw std::invalid_argument("coeff: word length must be in 1..deg");
    return levels[w.letters.size() - 1][w.index(d)];
}

TruncatedSignature TruncatedSignature::zero(std::size_t d, std::size_t deg) {
    TruncatedSignature s;
    s.d = d;
    s.deg = deg;
    s.levels.resize(deg);
    std::size_t sz = 1;
    for (std::size_t k = 1; k <= deg; ++k) {
        sz *= d;
        s.levels[k - 1].assign(sz, 0.0);
    }
    return s;
}

TruncatedSignature segment_signature(const std::vector<double>& delta, std::size_t deg) {
    if (deg < 1) throw std::invalid_argument("segment_signature: deg must be >= 1");
    const std::size_t d = delta.size();
    if (d < 1) throw std::invalid_argument("segment_signature: empty increment");

    TruncatedSignature s = TruncatedSignature::zero(d, deg);
    s.levels[0] = delta;
    // level k = (level k-1 tensor delta) / k
    for (std::size_t k = 2; k <= deg; ++k) {
        const auto& prev = s.levels[k - 2];
        auto& cur = s.levels[k - 1];
        std::size_t pos = 0;
        for (double p : prev)
            for (double x : delta) cur[pos++] = p * x / static_cast<double>(k);
    }
    return s;
}

TruncatedSignature chen_concat(const TruncatedSignature& left, const TruncatedSignature& right) {
    if (left.d != right.d)
        throw std::invalid_argument("chen_concat: dimension mismatch");
    if (left.deg != right.deg)
        throw std::invalid_argument("chen_concat: truncation order mismatch");

    const std::size_t d = left.d;
    const std::size_t deg = left.deg;
    TruncatedSignature out = TruncatedSignature::zero(d, deg);

    // sizes[k] = d^k
    std::vector<std::size_t> sizes(deg + 1, 1);
    for (std::size_t k = 1; k <= deg; ++k) sizes[k] = sizes[k - 1] * d;

    for (std::size_t k = 1; k <= deg; ++k) {
        auto& cur = out.levels[k - 1];
        // j = 0 and j = k use the implicit level-0 coefficient 1
        for (std::size_t i = 0; i < cur.size(); ++i)
            cur[i] = left.levels[k - 1][i] + right.levels[k - 1][i];
        for (std::size_t j = 1; j < k; ++j) {
            const auto& a = left.levels[j - 1];
            const auto& b = right.levels[k - j - 1];
            const std::size_t bs = sizes[k - j];
            for (std::size_t ia = 0; ia < a.size(); ++ia) {
                const double av = a[ia];
                if (av == 0.0) continue;
                double* dst = cur.data() + ia * bs;
                for (std::size_t ib = 0; ib < bs; ++ib) dst[ib] += av * b[ib];
            }
        }
    }
    return out;
}

TruncatedSignature path_signature(const Path& path, std::size_t deg) {
    path.validate();
    if (deg < 1) throw std::invalid_argument("path_signature: deg must be >= 1");

    const std::size_t d = path.dimension();
    std::vector<double> delta(d);
    for (std::size_t c = 0; c < d; ++c) delta[c] = path.values[1][c] - path.values[0][c];
    TruncatedSignature acc = segment_signature(delta, deg);

    for (std::size_t i = 2; i < path.sample_count(); ++i) {
        for (std::size_t c = 0; c < d; ++c)
            delta[c] = path.values[i][c] - path.values[i - 1][c];
        acc = chen_concat(acc, segment_signature(delta, deg));
    }
    return acc;
}

TruncatedSignature rescale_signature(const TruncatedSignature& sig, double lambda) {
    TruncatedSignature out = sig;
    double factor = 1.0;
    for (std::size_t k = 1; k <= sig.deg; ++k) {
        factor *= lambda;
        for (double& v : out.levels[k - 1]) v *= factor;
    }
    return out;
}

std::vector<double> flatten(const TruncatedSignature& sig) {
    std::vector<double> out;
    out.reserve(flat_length(sig.d, sig.deg));
    for (const auto& level : sig.levels) out.insert(out.end(), level.begin(), level.end());
    return out;
}

TruncatedSignature unflatten(const std::vector<double>& flat, std::size_t d, std::size_t deg) {
    if (flat.size() != flat_length(d, deg))
        throw std::invalid_argument("unflatten: flat vector length does not match (d, deg)");
    TruncatedSignature s = TruncatedSignature::zero(d, deg);
    std::size_t pos = 0;
    for (std::size_t k = 1; k <= deg; ++k) {
        auto& level = s.levels[k - 1];
        for (double& v : level) v = flat[pos++];
    }
    return s;
}

std::size_t flat_length(std::size_t d, std::size_t deg) {
    std::size_t len = 0, sz = 1;
    for (std::size_t k = 1; k <= deg; ++k) {
        sz *= d;
        len += sz;
    }
    return len;
}

}  // namespace sigtda
