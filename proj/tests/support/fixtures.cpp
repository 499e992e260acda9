#include "support/fixtures.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fixtures {

namespace {

void put_field(std::string& out, const std::string& text, std::size_t width) {
    if (text.size() > width)
        throw std::invalid_argument("edf fixture field too wide: '" + text + "'");
    out += text;
    out.append(width - text.size(), ' ');
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

void put_int16_le(std::string& out, int v) {
    const auto u = static_cast<std::uint16_t>(static_cast<std::int16_t>(v));
    out += static_cast<char>(u & 0xFF);
    out += static_cast<char>((u >> 8) & 0xFF);
}

}  // namespace

std::string write_edf(const EdfFixture& fixture) {
    const std::size_t ns = fixture.signals.size();
    std::string out;
    put_field(out, fixture.version, 8);
    put_field(out, fixture.patient, 80);
    put_field(out, fixture.recording, 80);
    put_field(out, fixture.start_date, 8);
    put_field(out, fixture.start_time, 8);
    put_field(out, std::to_string(256 * (ns + 1)), 8);
    put_field(out, "", 44);
    const long declared = fixture.declared_record_count == -2
                              ? static_cast<long>(fixture.records.size())
                              : fixture.declared_record_count;
    put_field(out, std::to_string(declared), 8);
    put_field(out, num(fixture.record_duration), 8);
    put_field(out, std::to_string(ns), 4);

    for (const auto& s : fixture.signals) put_field(out, s.label, 16);
    for (const auto& s : fixture.signals) put_field(out, s.transducer, 80);
    for (const auto& s : fixture.signals) put_field(out, s.physical_dimension, 8);
    for (const auto& s : fixture.signals) put_field(out, num(s.physical_min), 8);
    for (const auto& s : fixture.signals) put_field(out, num(s.physical_max), 8);
    for (const auto& s : fixture.signals)
        put_field(out, std::to_string(s.digital_min), 8);
    for (const auto& s : fixture.signals)
        put_field(out, std::to_string(s.digital_max), 8);
    for (const auto& s : fixture.signals) put_field(out, s.prefiltering, 80);
    for (const auto& s : fixture.signals)
        put_field(out, std::to_string(s.samples_per_record), 8);
    for (std::size_t i = 0; i < ns; ++i) put_field(out, "", 32);

    for (const auto& record : fixture.records) {
        if (record.size() != ns)
            throw std::invalid_argument("edf fixture record has wrong signal count");
        for (std::size_t s = 0; s < ns; ++s) {
            if (record[s].size() !=
                static_cast<std::size_t>(fixture.signals[s].samples_per_record))
                throw std::invalid_argument("edf fixture record has wrong sample count");
            for (int v : record[s]) put_int16_le(out, v);
        }
    }
    return out;
}

int physical_to_digital(double physical, const EdfFixtureSignal& signal) {
    const double gain = (signal.physical_max - signal.physical_min) /
                        (static_cast<double>(signal.digital_max) -
                         static_cast<double>(signal.digital_min));
    const double raw =
        (physical - signal.physical_min) / gain + static_cast<double>(signal.digital_min);
    const long rounded = std::lround(raw);
    if (rounded < signal.digital_min) return signal.digital_min;
    if (rounded > signal.digital_max) return signal.digital_max;
    return static_cast<int>(rounded);
}

sigtda::Simplex sx(std::initializer_list<int> vertices) {
    return sigtda::Simplex(std::vector<int>(vertices));
}

sigtda::WeightedComplex make_complex(
    int vertex_count,
    std::initializer_list<std::pair<std::vector<int>, double>> weighted) {
    sigtda::WeightedComplex complex(vertex_count);
    for (const auto& [vertices, weight] : weighted)
        complex.insert(sigtda::Simplex(vertices), weight);
    return complex;
}

sigtda::Path make_path(std::vector<double> times,
                       std::vector<std::vector<double>> values) {
    sigtda::Path p;
    p.times = std::move(times);
    p.values = std::move(values);
    p.validate();
    return p;
}

sigtda::Path random_path(oracles::TestRng& rng, std::size_t d,
                         std::size_t min_samples, std::size_t max_samples) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(
        static_cast<int>(min_samples), static_cast<int>(max_samples)));
    sigtda::Path p;
    p.times.resize(n);
    p.values.assign(n, std::vector<double>(d));
    double t = rng.uniform(-1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        p.times[i] = t;
        t += rng.uniform(0.25, 1.75);
        for (std::size_t c = 0; c < d; ++c) p.values[i][c] = rng.uniform(-2.0, 2.0);
    }
    p.validate();
    return p;
}

sigtda::WeightedComplex random_complex(oracles::TestRng& rng, int max_vertices) {
    const int v = rng.uniform_int(1, max_vertices);
    sigtda::WeightedComplex complex(v);
    for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b)
            if (rng.uniform() < 0.4)
                complex.insert(sx({a, b}), rng.uniform() < 0.15 ? 0.0
                                                                : rng.uniform(0.0, 2.0));
    for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b)
            for (int c = b + 1; c < v; ++c)
                if (rng.uniform() < 0.12)
                    complex.insert(sx({a, b, c}), rng.uniform(0.0, 1.5));
    complex.validate();
    return complex;
}

}  // namespace fixtures
