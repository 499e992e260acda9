// sigtda: per-window simplicial complexes over multichannel signals via
// truncated path signatures and LASSO selection, with Betti number and
// persistence entropy trajectories.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sigtda/edf.hpp"
#include "sigtda/ingest.hpp"
#include "sigtda/path.hpp"
#include "sigtda/pipeline.hpp"
#include "sigtda/signature.hpp"

namespace {

int g_log_level = 1;  // 0 quiet, 1 info, 2 debug

void init_log_level() {
    const char* env = std::getenv("SIGTDA_LOG");
    if (!env) return;
    std::string v(env);
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (v == "quiet" || v == "0") g_log_level = 0;
    else if (v == "info" || v == "1") g_log_level = 1;
    else if (v == "debug" || v == "2") g_log_level = 2;
}

void log_info(const std::string& m) {
    if (g_log_level >= 1) std::cerr << "[sigtda] " << m << "\n";
}

void log_debug(const std::string& m) {
    if (g_log_level >= 2) std::cerr << "[sigtda:debug] " << m << "\n";
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
    out.flush();
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

bool has_edf_extension(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return false;
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext == "edf";
}

struct InputOpts {
    std::string path;
    double rate = 1.0;  // CSV only; EDF carries its own rate
    std::vector<std::string> channels;
};

void add_input_options(CLI::App* cmd, InputOpts& in) {
    cmd->add_option("input", in.path,
                    "Recording file: .edf, or CSV with a channel-name header row")
        ->required();
    cmd->add_option("--rate", in.rate,
                    "Sample rate in Hz of CSV input (EDF declares its own)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--channels", in.channels,
                    "Channels to keep, comma separated (default: all)")
        ->delimiter(',');
}

// Loads, selects channels, and resamples to the 1-Hz grid the analysis runs on.
sigtda::Recording load_recording(const InputOpts& in) {
    sigtda::Recording rec;
    if (has_edf_extension(in.path)) {
        rec = sigtda::parse_edf(sigtda::read_binary_file(in.path));
    } else {
        rec = sigtda::parse_csv(read_text_file(in.path), in.rate);
    }
    log_debug("loaded " + std::to_string(rec.channel_count()) + " channels, " +
              std::to_string(rec.sample_count()) + " samples at " +
              format_number(rec.rate) + " Hz from " + in.path);
    if (!in.channels.empty()) rec = rec.select_channels(in.channels);
    if (rec.rate != 1.0) {
        rec = sigtda::resample_mean(rec, 1.0);
        log_debug("resampled to 1 Hz: " + std::to_string(rec.sample_count()) +
                  " samples");
    }
    log_info(in.path + ": " + std::to_string(rec.channel_count()) +
             " channels, " + std::to_string(rec.sample_count()) +
             " seconds at 1 Hz");
    return rec;
}

void add_analysis_options(CLI::App* cmd, sigtda::AnalysisConfig& cfg) {
    cmd->add_option("--lambda1", cfg.lambda1, "Edge-stage L1 penalty")
        ->capture_default_str();
    cmd->add_option("--lambda2", cfg.lambda2, "Triangle-stage L1 penalty")
        ->capture_default_str();
    cmd->add_option("--window,-L", cfg.window_length,
                    "Trailing window length L in seconds")
        ->capture_default_str();
    cmd->add_option("--deg", cfg.deg, "Signature truncation degree")
        ->capture_default_str();
    cmd->add_option("--max-dim", cfg.max_dim,
                    "Top simplex dimension: 1 (edges) or 2 (triangles)")
        ->capture_default_str();
    cmd->add_option("--r2-threshold", cfg.r2_threshold,
                    "Minimum R^2 for a regression to contribute simplices")
        ->capture_default_str();
    cmd->add_option("--stride", cfg.stride, "Seconds between window endpoints")
        ->capture_default_str();
    cmd->add_option("--jobs", cfg.jobs, "Worker threads (0 = all cores)")
        ->capture_default_str();
}

void write_trajectory(const std::vector<sigtda::TrajectoryPoint>& trajectory,
                      const sigtda::Bands* bands, const std::string& format,
                      const std::string& out,
                      const sigtda::SeizureAnnotations* annotations) {
    const sigtda::EmitFormat f =
        format == "csv" ? sigtda::EmitFormat::csv : sigtda::EmitFormat::jsonlines;
    if (out.empty() || out == "-")
        sigtda::emit(trajectory, bands, f, std::cout, annotations);
    else
        sigtda::emit(trajectory, bands, f, out, annotations);
}

struct AnalyzeOpts {
    InputOpts input;
    sigtda::AnalysisConfig cfg;
    std::string band_field = "b1";
    std::string format = "csv";
    std::string out = "-";
    std::string annotations_path;
};

int run_analyze(const AnalyzeOpts& opts) {
    const sigtda::Recording rec = load_recording(opts.input);
    const auto start = std::chrono::steady_clock::now();
    const auto trajectory = sigtda::sliding_analysis(rec, opts.cfg);
    const auto elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    log_info("analyzed " + std::to_string(trajectory.size()) + " windows in " +
             format_number(elapsed) + " s");

    std::optional<sigtda::Bands> bands;
    if (opts.cfg.band_window > 0) {
        if (trajectory.size() > opts.cfg.band_window) {
            bands = sigtda::rolling_bands(trajectory, opts.band_field,
                                          opts.cfg.band_window);
        } else {
            std::cerr << "[sigtda] warning: trajectory ("
                      << trajectory.size() << " points) is not longer than the "
                      << "band window h=" << opts.cfg.band_window
                      << "; band columns omitted\n";
        }
    }
    std::optional<sigtda::SeizureAnnotations> annotations;
    if (!opts.annotations_path.empty())
        annotations =
            sigtda::load_annotations(read_text_file(opts.annotations_path));

    write_trajectory(trajectory, bands ? &*bands : nullptr, opts.format,
                     opts.out, annotations ? &*annotations : nullptr);
    return 0;
}

struct SignatureOpts {
    InputOpts input;
    long from = 0;
    long to = -1;  // -1 = last sample
    std::size_t deg = 3;
    bool no_time = false;
    bool no_normalize = false;
    std::string out = "-";
};

int run_signature(const SignatureOpts& opts) {
    const sigtda::Recording rec = load_recording(opts.input);
    const long last = static_cast<long>(rec.sample_count()) - 1;
    const long to = opts.to < 0 ? last : opts.to;
    if (opts.from < 0 || to > last || to - opts.from < 1)
        throw std::runtime_error(
            "interval [" + std::to_string(opts.from) + ", " + std::to_string(to) +
            "] must contain at least two samples inside 0.." + std::to_string(last));

    const std::size_t a = static_cast<std::size_t>(opts.from);
    const std::size_t b = static_cast<std::size_t>(to);
    const std::size_t len = b - a + 1;
    sigtda::Path path;
    path.times.resize(len);
    path.values.assign(len, std::vector<double>(rec.channel_count()));
    for (std::size_t i = 0; i < len; ++i) {
        path.times[i] = static_cast<double>(i) / static_cast<double>(len - 1);
        for (std::size_t c = 0; c < rec.channel_count(); ++c)
            path.values[i][c] = rec.samples[c][a + i];
    }
    if (!opts.no_normalize) path = sigtda::normalize_path(path);
    if (!opts.no_time) path = sigtda::time_augment(path);

    std::ostringstream legend;
    legend << "coordinates:";
    std::size_t letter = 1;
    if (!opts.no_time) legend << " 1=time", letter = 2;
    for (std::size_t c = 0; c < rec.channel_count(); ++c)
        legend << ' ' << letter++ << '=' << rec.channel_names[c];
    log_info(legend.str());

    const sigtda::TruncatedSignature sig = sigtda::path_signature(path, opts.deg);
    std::ostringstream body;
    body << "word,value\n";
    for (std::size_t k = 1; k <= sig.deg; ++k) {
        std::vector<int> letters(k, 1);
        for (std::size_t flat = 0; flat < sig.levels[k - 1].size(); ++flat) {
            for (std::size_t j = 0; j < k; ++j) {
                if (j > 0) body << '.';
                body << letters[j];
            }
            body << ',' << format_number(sig.levels[k - 1][flat]) << '\n';
            for (std::size_t j = k; j-- > 0;) {  // next word, counting base d
                if (letters[j] < static_cast<int>(sig.d)) {
                    ++letters[j];
                    break;
                }
                letters[j] = 1;
            }
        }
    }
    if (opts.out.empty() || opts.out == "-") std::cout << body.str();
    else write_text_file(opts.out, body.str());
    return 0;
}

struct ComplexAtOpts {
    InputOpts input;
    sigtda::AnalysisConfig cfg;
    double at = 0.0;
    std::string out = "-";
};

int run_complex_at(const ComplexAtOpts& opts) {
    const sigtda::Recording rec = load_recording(opts.input);
    const sigtda::WindowResult wr = sigtda::analyze_window(rec, opts.at, opts.cfg);

    std::map<sigtda::Simplex, double> birth_of;
    for (const auto& [simplex, birth] : wr.filtration.entries)
        birth_of[simplex] = birth;

    nlohmann::json doc;
    doc["t"] = wr.point.t;
    doc["window_length"] = opts.cfg.window_length;
    doc["channels"] = rec.channel_names;
    doc["betti"] = {{"b0", wr.point.b0}, {"b1", wr.point.b1}};
    doc["persistence_entropy"] = {{"total", wr.point.pe_total},
                                  {"dim0", wr.point.pe_dim0},
                                  {"dim1", wr.point.pe_dim1}};
    doc["edges"] = wr.point.edge_count;
    doc["triangles"] = wr.point.triangle_count;

    nlohmann::json simplices = nlohmann::json::array();
    for (const auto& [simplex, weight] : wr.complex.simplices()) {
        nlohmann::json entry;
        entry["vertices"] = simplex.vertices;
        entry["weight"] = weight;
        entry["birth"] = birth_of.at(simplex);
        simplices.push_back(std::move(entry));
    }
    doc["simplices"] = std::move(simplices);

    nlohmann::json bars = nlohmann::json::array();
    for (const auto& bar : wr.diagram.bars) {
        nlohmann::json entry;
        entry["dim"] = bar.dim;
        entry["birth"] = bar.birth;
        if (bar.death) entry["death"] = *bar.death;
        else entry["death"] = nullptr;
        bars.push_back(std::move(entry));
    }
    doc["bars"] = std::move(bars);

    const std::string text = doc.dump(2) + "\n";
    if (opts.out.empty() || opts.out == "-") std::cout << text;
    else write_text_file(opts.out, text);
    return 0;
}

struct SynthOpts {
    std::vector<std::size_t> blocks;
    double duration = 600.0;
    double noise = 0.05;
    std::uint64_t seed = 0;
    std::string out = "-";
};

int run_synth(const SynthOpts& opts) {
    sigtda::SynthSpec spec;
    spec.block_sizes = opts.blocks;
    spec.duration = opts.duration;
    spec.noise = opts.noise;
    const sigtda::Recording rec = sigtda::synth_generate(spec, opts.seed);
    log_info("generated " + std::to_string(rec.channel_count()) + " channels x " +
             std::to_string(rec.sample_count()) + " samples (seed " +
             std::to_string(opts.seed) + ")");
    const std::string csv = sigtda::recording_to_csv(rec);
    if (opts.out.empty() || opts.out == "-") std::cout << csv;
    else write_text_file(opts.out, csv);
    return 0;
}

struct SweepOpts {
    InputOpts input;
    std::vector<std::size_t> windows = {50};
    std::vector<double> lambda1s = {1.0};
    std::vector<double> lambda2s = {1.0};
    sigtda::AnalysisConfig base;
    std::string format = "csv";
    std::string out_dir;
};

int run_sweep(const SweepOpts& opts) {
    const sigtda::Recording rec = load_recording(opts.input);
    std::filesystem::create_directories(opts.out_dir);
    const std::string ext = opts.format == "csv" ? "csv" : "jsonl";
    for (std::size_t L : opts.windows) {
        for (double l1 : opts.lambda1s) {
            for (double l2 : opts.lambda2s) {
                sigtda::AnalysisConfig cfg = opts.base;
                cfg.window_length = L;
                cfg.lambda1 = l1;
                cfg.lambda2 = l2;
                const auto trajectory = sigtda::sliding_analysis(rec, cfg);
                const std::string name = "sweep_L" + std::to_string(L) + "_l1" +
                                         format_number(l1) + "_l2" +
                                         format_number(l2) + "." + ext;
                const std::string path =
                    (std::filesystem::path(opts.out_dir) / name).string();
                write_trajectory(trajectory, nullptr, opts.format, path, nullptr);
                log_info(name + ": " + std::to_string(trajectory.size()) +
                         " windows");
            }
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    init_log_level();

    CLI::App app{
        "sigtda: sliding-window simplicial complexes over multichannel signals\n"
        "via truncated path signatures and LASSO selection, with Betti number\n"
        "and persistence entropy trajectories"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "sigtda 0.1.0");
    app.set_config("--config", "",
                   "Read defaults from a key=value file ([subcommand] sections)");

    AnalyzeOpts analyze_opts;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "Emit the invariant trajectory of a recording");
    add_input_options(analyze, analyze_opts.input);
    add_analysis_options(analyze, analyze_opts.cfg);
    analyze->add_option("--band-window", analyze_opts.cfg.band_window,
                        "Rolling-band window h in points (0 disables)")
        ->capture_default_str();
    analyze->add_option("--band-field", analyze_opts.band_field,
                        "Trajectory field the bands summarize")
        ->check(CLI::IsMember({"b0", "b1", "pe_total", "pe_dim0", "pe_dim1",
                               "edges", "triangles"}))
        ->capture_default_str();
    analyze->add_option("--format", analyze_opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "jsonlines"}))
        ->capture_default_str();
    analyze->add_option("--out", analyze_opts.out, "Output file (- for stdout)")
        ->capture_default_str();
    analyze
        ->add_option("--annotations", analyze_opts.annotations_path,
                     "start,end seconds per line; adds an in_seizure column")
        ->check(CLI::ExistingFile);

    SignatureOpts signature_opts;
    CLI::App* signature = app.add_subcommand(
        "signature",
        "Print the flattened signature of the selected channels over an interval");
    add_input_options(signature, signature_opts.input);
    signature->add_option("--from", signature_opts.from, "Interval start, seconds")
        ->capture_default_str();
    signature->add_option("--to", signature_opts.to,
                          "Interval end, seconds (-1 = last sample)")
        ->capture_default_str();
    signature->add_option("--deg", signature_opts.deg, "Truncation degree")
        ->capture_default_str();
    signature->add_flag("--no-time", signature_opts.no_time,
                        "Skip the time-coordinate augmentation");
    signature->add_flag("--no-normalize", signature_opts.no_normalize,
                        "Skip per-channel normalization");
    signature->add_option("--out", signature_opts.out, "Output file (- for stdout)")
        ->capture_default_str();

    ComplexAtOpts complex_opts;
    CLI::App* complex_at = app.add_subcommand(
        "complex-at", "Dump the complex, filtration, and bars at one time as JSON");
    add_input_options(complex_at, complex_opts.input);
    add_analysis_options(complex_at, complex_opts.cfg);
    complex_at->add_option("--at", complex_opts.at, "Window endpoint t in seconds")
        ->required();
    complex_at->add_option("--out", complex_opts.out, "Output file (- for stdout)")
        ->capture_default_str();

    SynthOpts synth_opts;
    CLI::App* synth = app.add_subcommand(
        "synth", "Generate a synthetic block-structured recording as CSV");
    synth->add_option("--blocks", synth_opts.blocks,
                      "Channels per independent block, comma separated (e.g. 3,3)")
        ->required()
        ->delimiter(',');
    synth->add_option("--duration", synth_opts.duration, "Length in seconds")
        ->capture_default_str();
    synth->add_option("--noise", synth_opts.noise, "White-noise amplitude")
        ->capture_default_str();
    synth->add_option("--seed", synth_opts.seed, "RNG seed")->capture_default_str();
    synth->add_option("--out", synth_opts.out, "Output file (- for stdout)")
        ->capture_default_str();

    SweepOpts sweep_opts;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Run a window/penalty grid, one trajectory file per cell");
    add_input_options(sweep, sweep_opts.input);
    sweep->add_option("--window,-L", sweep_opts.windows,
                      "Window lengths L, comma separated")
        ->delimiter(',');
    sweep->add_option("--lambda1", sweep_opts.lambda1s,
                      "Edge-stage penalties, comma separated")
        ->delimiter(',');
    sweep->add_option("--lambda2", sweep_opts.lambda2s,
                      "Triangle-stage penalties, comma separated")
        ->delimiter(',');
    sweep->add_option("--deg", sweep_opts.base.deg, "Signature truncation degree")
        ->capture_default_str();
    sweep->add_option("--max-dim", sweep_opts.base.max_dim,
                      "Top simplex dimension: 1 or 2")
        ->capture_default_str();
    sweep->add_option("--r2-threshold", sweep_opts.base.r2_threshold,
                      "Minimum R^2 for a regression to contribute simplices")
        ->capture_default_str();
    sweep->add_option("--stride", sweep_opts.base.stride,
                      "Seconds between window endpoints")
        ->capture_default_str();
    sweep->add_option("--jobs", sweep_opts.base.jobs, "Worker threads (0 = all cores)")
        ->capture_default_str();
    sweep->add_option("--format", sweep_opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "jsonlines"}))
        ->capture_default_str();
    sweep->add_option("--out-dir", sweep_opts.out_dir, "Directory for cell files")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze) return run_analyze(analyze_opts);
        if (*signature) return run_signature(signature_opts);
        if (*complex_at) return run_complex_at(complex_opts);
        if (*synth) return run_synth(synth_opts);
        if (*sweep) return run_sweep(sweep_opts);
    } catch (const std::exception& e) {
        std::cerr << "sigtda: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
