#include "sigtda/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace sigtda {

void Filtration::validate() const {
    std::map<Simplex, std::size_t> position;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& [s, birth] = entries[i];
        if (i > 0 && entries[i - 1].second > birth)
            throw std::invalid_argument("Filtration: births not non-decreasing");
        for (const auto& f : s.facets()) {
            auto it = position.find(f);
            if (it == position.end())
                throw std::invalid_argument("Filtration: face missing or after its coface");
            if (entries[it->second].second > birth)
                throw std::invalid_argument("Filtration: face born after its coface");
        }
        position.emplace(s, i);
    }
}

std::size_t PersistenceDiagram::essential_count(int dim) const {
    std::size_t n = 0;
    for (const auto& bar : bars)
        if (bar.essential() && bar.dim == dim) ++n;
    return n;
}

Filtration births_from_weights(const WeightedComplex& complex) {
    complex.validate();

    double weight_sum = 0.0;
    for (const auto& [s, w] : complex.simplices()) {
        if (w < 0.0) throw std::invalid_argument("births_from_weights: negative weight");
        if (s.dimension() >= 1 && w > 0.0) weight_sum += w;
    }

    Filtration filt;
    if (weight_sum == 0.0) {
        // Degenerate complex: nothing was selected, keep the vertices only.
        for (const auto& [s, w] : complex.simplices())
            if (s.dimension() == 0) filt.entries.emplace_back(s, 0.0);
        return filt;
    }

    std::map<Simplex, double> birth;
    std::size_t max_dim = 0;
    for (const auto& [s, w] : complex.simplices()) {
        max_dim = std::max(max_dim, s.dimension());
        if (s.dimension() == 0)
            birth[s] = 0.0;
        else if (w > 0.0)
            birth[s] = 1.0 - w / weight_sum;
        else
            birth[s] = 1.0;  // closure face, repaired below
    }

    // Monotonicity fix: sweep cofaces from the top dimension down, lowering
    // each face to its earliest coface.
    for (std::size_t dim = max_dim; dim >= 1; --dim) {
        for (const auto& [s, w] : complex.simplices()) {
            if (s.dimension() != dim) continue;
            const double b = birth[s];
            for (const auto& f : s.facets()) {
                auto it = birth.find(f);
                if (it->second > b) it->second = b;
            }
        }
    }

    filt.entries.assign(birth.begin(), birth.end());
    std::sort(filt.entries.begin(), filt.entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    return filt;
}

PersistenceDiagram reduce_boundary(const Filtration& filtration) {
    filtration.validate();
    const std::size_t n = filtration.entries.size();

    std::map<Simplex, std::size_t> position;
    for (std::size_t i = 0; i < n; ++i) position.emplace(filtration.entries[i].first, i);

    // Boundary columns over GF(2), rows sorted ascending.
    std::vector<std::vector<std::size_t>> columns(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& f : filtration.entries[i].first.facets())
            columns[i].push_back(position.at(f));
        std::sort(columns[i].begin(), columns[i].end());
    }

    constexpr std::size_t kUnpaired = static_cast<std::size_t>(-1);
    std::vector<std::size_t> pivot_owner(n, kUnpaired);
    std::vector<std::size_t> paired_with(n, kUnpaired);

    std::vector<std::size_t> merged;
    for (std::size_t j = 0; j < n; ++j) {
        auto& col = columns[j];
        while (!col.empty() && pivot_owner[col.back()] != kUnpaired) {
            const auto& other = columns[pivot_owner[col.back()]];
            merged.clear();
            std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                          std::back_inserter(merged));
            col.swap(merged);
        }
        if (!col.empty()) {
            pivot_owner[col.back()] = j;
            paired_with[col.back()] = j;
        }
    }

    PersistenceDiagram diagram;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [s, birth] = filtration.entries[i];
        if (!columns[i].empty()) continue;  // destroyer column, belongs to its pivot's bar
        PersistenceBar bar;
        bar.dim = static_cast<int>(s.dimension());
        bar.birth = birth;
        if (paired_with[i] != kUnpaired) bar.death = filtration.entries[paired_with[i]].second;
        diagram.bars.push_back(bar);
    }
    return diagram;
}

BettiVector betti(const WeightedComplex& complex) {
    complex.validate();
    Filtration filt;
    for (const auto& [s, w] : complex.simplices()) filt.entries.emplace_back(s, 0.0);
    std::sort(filt.entries.begin(), filt.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    auto diagram = reduce_boundary(filt);
    return {diagram.essential_count(0), diagram.essential_count(1)};
}

namespace {

double entropy_of_lifetimes(const std::vector<double>& lifetimes) {
    if (lifetimes.size() <= 1) return 0.0;
    double total = 0.0;
    for (double l : lifetimes) total += l;
    if (total <= 0.0) return 0.0;
    double pe = 0.0;
    for (double l : lifetimes) {
        const double p = l / total;
        pe -= p * std::log(p);
    }
    return pe;
}

}  // namespace

double persistence_entropy(const PersistenceDiagram& diagram) {
    std::vector<double> lifetimes;
    for (const auto& bar : diagram.bars) {
        if (bar.dim != 0 && bar.dim != 1) continue;
        const double l = bar.death.value_or(1.0) - bar.birth;
        if (l > 0.0) lifetimes.push_back(l);
    }
    return entropy_of_lifetimes(lifetimes);
}

double persistence_entropy(const PersistenceDiagram& diagram, int dim) {
    std::vector<double> lifetimes;
    for (const auto& bar : diagram.bars) {
        if (bar.dim != dim) continue;
        const double l = bar.death.value_or(1.0) - bar.birth;
        if (l > 0.0) lifetimes.push_back(l);
    }
    return entropy_of_lifetimes(lifetimes);
}

}  // namespace sigtda
