#include "sigtda/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

namespace sigtda {

namespace {

constexpr double kPi = 3.141592653589793238462643;

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double field_value(const TrajectoryPoint& p, const std::string& field) {
    if (field == "b0") return static_cast<double>(p.b0);
    if (field == "b1") return static_cast<double>(p.b1);
    if (field == "pe_total") return p.pe_total;
    if (field == "pe_dim0") return p.pe_dim0;
    if (field == "pe_dim1") return p.pe_dim1;
    if (field == "edges") return static_cast<double>(p.edge_count);
    if (field == "triangles") return static_cast<double>(p.triangle_count);
    throw std::invalid_argument(
        "unknown band field '" + field +
        "' (expected one of b0, b1, pe_total, pe_dim0, pe_dim1, edges, triangles)");
}

// Window analysis on a recording whose channel selection is already applied.
WindowResult analyze_selected(const Recording& recording, std::size_t t,
                              const AnalysisConfig& config) {
    const std::size_t L = config.window_length;
    std::vector<ChannelWindow> windows(recording.channel_count());
    for (std::size_t c = 0; c < recording.channel_count(); ++c) {
        ChannelWindow& w = windows[c];
        w.channel = static_cast<int>(c);
        w.t_start = static_cast<double>(t - L);
        w.t_end = static_cast<double>(t);
        const auto& samples = recording.samples[c];
        w.samples.assign(samples.begin() + static_cast<std::ptrdiff_t>(t - L),
                         samples.begin() + static_cast<std::ptrdiff_t>(t + 1));
    }

    BuildParams params;
    params.deg = config.deg;
    params.lambda1 = config.lambda1;
    params.lambda2 = config.lambda2;
    params.r2_threshold = config.r2_threshold;
    params.max_dim = config.max_dim;
    params.solver = config.solver;

    WindowResult result;
    result.complex = build_complex(windows, params);
    result.filtration = births_from_weights(result.complex);
    result.diagram = reduce_boundary(result.filtration);
    const BettiVector bv = betti(result.complex);

    // A complex with no positive weights filters to bare vertices; its
    // entropy is defined as 0 rather than the log of the channel count.
    const bool degenerate = result.complex.count_of_dimension(1) == 0 &&
                            result.complex.count_of_dimension(2) == 0;

    TrajectoryPoint& p = result.point;
    p.t = static_cast<double>(t);
    p.b0 = bv.b0;
    p.b1 = bv.b1;
    p.pe_total = degenerate ? 0.0 : persistence_entropy(result.diagram);
    p.pe_dim0 = degenerate ? 0.0 : persistence_entropy(result.diagram, 0);
    p.pe_dim1 = degenerate ? 0.0 : persistence_entropy(result.diagram, 1);
    p.edge_count = result.complex.count_of_dimension(1);
    p.triangle_count = result.complex.count_of_dimension(2);
    return result;
}

Recording with_channel_selection(const Recording& recording,
                                 const AnalysisConfig& config) {
    if (config.channels.empty()) return recording;
    return recording.select_channels(config.channels);
}

// Deterministic RNG: raw mt19937_64 draws mapped to doubles by hand, since
// the standard distributions are not bit-identical across implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gaussian() {  // Box-Muller, one spare cached
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * kPi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace

void AnalysisConfig::validate() const {
    if (window_length < 2)
        throw std::invalid_argument("window_length must be at least 2");
    if (stride < 1) throw std::invalid_argument("stride must be at least 1");
    if (!(r2_threshold > 0.0 && r2_threshold < 1.0))
        throw std::invalid_argument("r2_threshold must lie strictly between 0 and 1");
    if (deg < 1) throw std::invalid_argument("deg must be at least 1");
    if (max_dim != 1 && max_dim != 2)
        throw std::invalid_argument("max_dim must be 1 or 2");
    if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0))
        throw std::invalid_argument("penalties must be non-negative");
    if (band_window == 1)
        throw std::invalid_argument("band_window must be 0 (disabled) or at least 2");
}

WindowResult analyze_window(const Recording& recording, double t,
                            const AnalysisConfig& config) {
    config.validate();
    recording.validate();
    if (recording.rate != 1.0)
        throw std::invalid_argument("analyze_window expects a 1 Hz recording");
    const Recording selected = with_channel_selection(recording, config);
    const double rounded = std::floor(t + 0.5);
    if (!(std::abs(t - rounded) < 1e-9) || rounded < 0.0)
        throw std::invalid_argument("t must be a non-negative integer second");
    const std::size_t ti = static_cast<std::size_t>(rounded);
    if (ti < config.window_length || ti >= selected.sample_count())
        throw std::invalid_argument("t must satisfy L <= t <= duration");
    return analyze_selected(selected, ti, config);
}

std::vector<TrajectoryPoint> sliding_analysis(const Recording& recording,
                                              const AnalysisConfig& config) {
    config.validate();
    recording.validate();
    if (recording.rate != 1.0)
        throw std::invalid_argument("sliding_analysis expects a 1 Hz recording");
    const Recording selected = with_channel_selection(recording, config);

    const std::size_t n = selected.sample_count();
    const std::size_t L = config.window_length;
    if (n < L + 2)
        throw std::invalid_argument(
            "recording too short: needs more than " + std::to_string(L) +
            " seconds, got " + std::to_string(n == 0 ? 0 : n - 1));

    std::vector<std::size_t> ts;
    for (std::size_t t = L; t <= n - 1; t += config.stride) ts.push_back(t);

    std::vector<TrajectoryPoint> trajectory(ts.size());
    std::size_t jobs = config.jobs;
    if (jobs == 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        jobs = hc == 0 ? 1 : hc;
    }
    if (jobs > ts.size()) jobs = ts.size();

    if (jobs <= 1) {
        for (std::size_t i = 0; i < ts.size(); ++i) {
            try {
                trajectory[i] = analyze_selected(selected, ts[i], config).point;
            } catch (const std::exception& e) {
                throw std::runtime_error("window at t=" + std::to_string(ts[i]) +
                                         " failed: " + e.what());
            }
        }
        return trajectory;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::vector<std::pair<std::size_t, std::string>> errors;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= ts.size() || failed.load()) return;
            try {
                trajectory[i] = analyze_selected(selected, ts[i], config).point;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                errors.emplace_back(ts[i], e.what());
                failed.store(true);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    if (!errors.empty()) {
        auto worst = errors.front();
        for (const auto& e : errors)
            if (e.first < worst.first) worst = e;
        throw std::runtime_error("window at t=" + std::to_string(worst.first) +
                                 " failed: " + worst.second);
    }
    return trajectory;
}

Bands rolling_bands(const std::vector<TrajectoryPoint>& trajectory,
                    const std::string& field, std::size_t h) {
    if (h < 2) throw std::invalid_argument("band window h must be at least 2");
    if (trajectory.size() <= h)
        throw std::invalid_argument("band window h=" + std::to_string(h) +
                                    " is not smaller than the trajectory (" +
                                    std::to_string(trajectory.size()) + " points)");
    field_value(TrajectoryPoint{}, field);  // validates the field name

    Bands bands;
    bands.field = field;
    bands.h = h;
    bands.mean.assign(trajectory.size(), std::nullopt);
    bands.std_dev.assign(trajectory.size(), std::nullopt);
    for (std::size_t i = h; i < trajectory.size(); ++i) {
        double sum = 0.0;
        for (std::size_t k = i - h + 1; k <= i; ++k)
            sum += field_value(trajectory[k], field);
        const double mean = sum / static_cast<double>(h);
        double ss = 0.0;
        for (std::size_t k = i - h + 1; k <= i; ++k) {
            const double d = field_value(trajectory[k], field) - mean;
            ss += d * d;
        }
        bands.mean[i] = mean;
        bands.std_dev[i] = std::sqrt(ss / static_cast<double>(h - 1));
    }
    return bands;
}

Recording synth_generate(const SynthSpec& spec, std::uint64_t seed) {
    if (spec.block_sizes.empty())
        throw std::invalid_argument("synth spec needs at least one block");
    for (std::size_t size : spec.block_sizes)
        if (size == 0)
            throw std::invalid_argument("synth block sizes must be positive");
    if (!(spec.noise >= 0.0))
        throw std::invalid_argument("synth noise level must be non-negative");
    if (!(spec.duration >= 1.0))
        throw std::invalid_argument("synth duration must be at least 1 second");

    const std::size_t n = static_cast<std::size_t>(spec.duration) + 1;
    Rng rng(seed);

    Recording rec;
    rec.rate = 1.0;
    std::size_t channel_id = 1;
    for (std::size_t size : spec.block_sizes) {
        // Latent driver: three sinusoids plus a damped random walk.
        double amp[3], freq[3], phase[3];
        for (int k = 0; k < 3; ++k) {
            amp[k] = rng.uniform(0.5, 1.5);
            freq[k] = rng.uniform(0.02, 0.2);
            phase[k] = rng.uniform(0.0, 2.0 * kPi);
        }
        std::vector<double> gain(size), offset(size);
        for (std::size_t c = 0; c < size; ++c) {
            gain[c] = rng.uniform(0.5, 2.0);
            offset[c] = rng.uniform(-1.0, 1.0);
        }
        std::vector<double> driver(n);
        double walk = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            if (t > 0) walk += rng.gaussian();
            double v = 0.3 * walk;
            for (int k = 0; k < 3; ++k)
                v += amp[k] *
                     std::sin(2.0 * kPi * freq[k] *
                                  static_cast<double>(t) +
                              phase[k]);
            driver[t] = v;
        }
        for (std::size_t c = 0; c < size; ++c) {
            std::vector<double> samples(n);
            for (std::size_t t = 0; t < n; ++t)
                samples[t] =
                    gain[c] * driver[t] + offset[c] + spec.noise * rng.gaussian();
            rec.samples.push_back(std::move(samples));
            rec.channel_names.push_back("ch" + std::to_string(channel_id++));
        }
    }
    rec.validate();
    return rec;
}

namespace {

void emit_csv(const std::vector<TrajectoryPoint>& trajectory, const Bands* bands,
              std::ostream& out, const SeizureAnnotations* annotations) {
    out << "t,b0,b1,pe_total,pe_dim0,pe_dim1,edges,triangles";
    if (bands) out << ",mean_" << bands->field << ",std_" << bands->field;
    if (annotations) out << ",in_seizure";
    out << "\n";
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        const TrajectoryPoint& p = trajectory[i];
        out << format_number(p.t) << ',' << p.b0 << ',' << p.b1 << ','
            << format_number(p.pe_total) << ',' << format_number(p.pe_dim0) << ','
            << format_number(p.pe_dim1) << ',' << p.edge_count << ','
            << p.triangle_count;
        if (bands) {
            out << ',';
            if (bands->mean[i]) out << format_number(*bands->mean[i]);
            out << ',';
            if (bands->std_dev[i]) out << format_number(*bands->std_dev[i]);
        }
        if (annotations) out << ',' << (annotations->contains(p.t) ? 1 : 0);
        out << "\n";
    }
}

void emit_jsonlines(const std::vector<TrajectoryPoint>& trajectory,
                    const Bands* bands, std::ostream& out,
                    const SeizureAnnotations* annotations) {
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        const TrajectoryPoint& p = trajectory[i];
        out << "{\"t\":" << format_number(p.t) << ",\"b0\":" << p.b0
            << ",\"b1\":" << p.b1 << ",\"pe_total\":" << format_number(p.pe_total)
            << ",\"pe_dim0\":" << format_number(p.pe_dim0)
            << ",\"pe_dim1\":" << format_number(p.pe_dim1)
            << ",\"edges\":" << p.edge_count
            << ",\"triangles\":" << p.triangle_count;
        if (bands) {
            out << ",\"mean_" << bands->field << "\":";
            if (bands->mean[i]) out << format_number(*bands->mean[i]);
            else out << "null";
            out << ",\"std_" << bands->field << "\":";
            if (bands->std_dev[i]) out << format_number(*bands->std_dev[i]);
            else out << "null";
        }
        if (annotations)
            out << ",\"in_seizure\":" << (annotations->contains(p.t) ? "true" : "false");
        out << "}\n";
    }
}

}  // namespace

void emit(const std::vector<TrajectoryPoint>& trajectory, const Bands* bands,
          EmitFormat format, std::ostream& out,
          const SeizureAnnotations* annotations) {
    if (bands && (bands->mean.size() != trajectory.size() ||
                  bands->std_dev.size() != trajectory.size()))
        throw std::invalid_argument("bands are not aligned with the trajectory");
    if (format == EmitFormat::csv)
        emit_csv(trajectory, bands, out, annotations);
    else
        emit_jsonlines(trajectory, bands, out, annotations);
}

void emit(const std::vector<TrajectoryPoint>& trajectory, const Bands* bands,
          EmitFormat format, const std::string& path,
          const SeizureAnnotations* annotations) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    emit(trajectory, bands, format, out, annotations);
    out.flush();
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace sigtda
