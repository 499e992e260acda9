#pragma once

// Test fixtures: an independent EDF byte composer (never calls the parser)
// and generators for random paths and weighted complexes.

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "sigtda/path.hpp"
#include "sigtda/simplicial.hpp"
#include "support/oracles.hpp"

namespace fixtures {

struct EdfFixtureSignal {
    std::string label = "sig";
    std::string transducer;
    std::string physical_dimension = "uV";
    double physical_min = -100.0;
    double physical_max = 100.0;
    int digital_min = -32768;
    int digital_max = 32767;
    std::string prefiltering;
    int samples_per_record = 4;
};

struct EdfFixture {
    std::string version = "0";
    std::string patient = "test patient";
    std::string recording = "test recording";
    std::string start_date = "01.01.20";
    std::string start_time = "00.00.00";
    double record_duration = 1.0;
    long declared_record_count = -2;  // -2 writes the actual record count
    std::vector<EdfFixtureSignal> signals;
    // records[r][s] holds signal s's digital samples within record r.
    std::vector<std::vector<std::vector<int>>> records;
};

// Composes the byte stream exactly as the EDF layout prescribes; performs no
// validation, so malformed fixtures can be produced by editing the result.
std::string write_edf(const EdfFixture& fixture);

// Affine physical -> digital quantization with rounding and clamping.
int physical_to_digital(double physical, const EdfFixtureSignal& signal);

sigtda::Simplex sx(std::initializer_list<int> vertices);

sigtda::WeightedComplex make_complex(
    int vertex_count,
    std::initializer_list<std::pair<std::vector<int>, double>> weighted);

sigtda::Path make_path(std::vector<double> times,
                       std::vector<std::vector<double>> values);

// Piecewise-linear path with unit-spaced jittered times and O(1) values.
sigtda::Path random_path(oracles::TestRng& rng, std::size_t d,
                         std::size_t min_samples, std::size_t max_samples);

// Random weighted complex: vertices, edges, and triangles with weights in
// [0, 2]; closure faces appear automatically.
sigtda::WeightedComplex random_complex(oracles::TestRng& rng, int max_vertices);

}  // namespace fixtures
