#pragma once

// Sliding-window orchestration: per-timestamp complex construction and
// persistence invariants, rolling mean/std bands, synthetic recordings for
// harness runs, and CSV / JSON-lines emission of trajectories.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sigtda/complex_builder.hpp"
#include "sigtda/ingest.hpp"
#include "sigtda/lasso.hpp"
#include "sigtda/persistence.hpp"
#include "sigtda/simplicial.hpp"

namespace sigtda {

struct AnalysisConfig {
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    std::size_t window_length = 50;   // L: trailing seconds per window, >= 2
    std::size_t deg = 3;
    int max_dim = 2;                  // 1 = edges only, 2 = edges + triangles
    double r2_threshold = 0.67;
    std::size_t stride = 1;
    std::vector<std::string> channels;  // empty keeps every channel
    std::size_t band_window = 120;      // h for rolling bands, 0 disables
    std::uint64_t rng_seed = 0;
    std::size_t jobs = 0;               // worker threads, 0 = hardware count
    LassoOptions solver;

    void validate() const;  // throws std::invalid_argument
};

struct TrajectoryPoint {
    double t = 0.0;  // seconds
    std::size_t b0 = 0;
    std::size_t b1 = 0;
    double pe_total = 0.0;
    double pe_dim0 = 0.0;
    double pe_dim1 = 0.0;
    std::size_t edge_count = 0;
    std::size_t triangle_count = 0;
};

// Full per-window artifacts, for inspection beyond the trajectory row.
struct WindowResult {
    WeightedComplex complex;
    Filtration filtration;
    PersistenceDiagram diagram;
    TrajectoryPoint point;
};

// Analyzes the window [t - L, t] of a 1-Hz recording; t must be an integer
// sample index with L <= t <= sample_count() - 1.
WindowResult analyze_window(const Recording& recording, double t,
                            const AnalysisConfig& config);

// One complex per t = L, L + stride, ... over a 1-Hz recording. Windows are
// processed by a worker pool; output is ordered by t regardless of schedule.
// Any per-window failure aborts the run naming the smallest failing t.
std::vector<TrajectoryPoint> sliding_analysis(const Recording& recording,
                                              const AnalysisConfig& config);

// Trailing-window statistics of one trajectory field. Row i carries the mean
// and sample standard deviation of rows [i - h + 1, i]; rows before index h
// are undefined.
struct Bands {
    std::string field;
    std::size_t h = 0;
    std::vector<std::optional<double>> mean;     // aligned with trajectory rows
    std::vector<std::optional<double>> std_dev;  // sample std, n - 1 denominator
};

// field is one of: b0, b1, pe_total, pe_dim0, pe_dim1, edges, triangles.
// Requires h >= 2 and trajectory longer than h.
Bands rolling_bands(const std::vector<TrajectoryPoint>& trajectory,
                    const std::string& field, std::size_t h);

// Synthetic 1-Hz recording: independent blocks of channels, each block an
// affine mixture of one latent driver plus white noise. Channels are named
// ch1..chN in block order.
struct SynthSpec {
    std::vector<std::size_t> block_sizes;
    double noise = 0.05;     // white-noise amplitude added per channel
    double duration = 600.0; // seconds; samples run t = 0..duration
};

// Deterministic for a fixed (spec, seed) pair, across platforms.
Recording synth_generate(const SynthSpec& spec, std::uint64_t seed);

enum class EmitFormat { csv, jsonlines };

// Writes the trajectory, optional bands columns (mean_<field>, std_<field>;
// blank / null where undefined), and an optional in_seizure flag column.
// Numbers are rendered with 12 significant digits.
void emit(const std::vector<TrajectoryPoint>& trajectory, const Bands* bands,
          EmitFormat format, std::ostream& out,
          const SeizureAnnotations* annotations = nullptr);

// File variant; I/O failures are reported with the path.
void emit(const std::vector<TrajectoryPoint>& trajectory, const Bands* bands,
          EmitFormat format, const std::string& path,
          const SeizureAnnotations* annotations = nullptr);

}  // namespace sigtda
