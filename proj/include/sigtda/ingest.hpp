#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sigtda {

// ============================================================================
// Recordings, CSV ingestion, per-second averaging, seizure annotations
// ============================================================================

struct Recording {
    std::vector<std::string> channel_names;
    double rate = 0.0;                          // samples per second
    std::vector<std::vector<double>> samples;   // channels x time, physical units

    std::size_t channel_count() const { return samples.size(); }
    std::size_t sample_count() const { return samples.empty() ? 0 : samples.front().size(); }

    void validate() const;

    // Recording restricted to the named channels, in the order given.
    Recording select_channels(const std::vector<std::string>& names) const;
};

struct SeizureAnnotations {
    std::vector<std::pair<double, double>> intervals;  // [start, end) seconds, sorted

    bool contains(double t) const;
};

enum class ParseErrorKind {
    truncated_file,
    bad_field,
    record_count_mismatch,
    bad_calibration,
    mixed_rates,
    ragged_row,
    non_numeric,
    empty_input,
    invalid_interval,
    overlapping_intervals,
    unknown_channel,
};

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ParseErrorKind kind() const { return kind_; }

private:
    ParseErrorKind kind_;
};

// Header row of channel names, one comma-separated row per timestamp.
// The sampling rate is supplied by the caller.
Recording parse_csv(const std::string& text, double rate);

// Inverse of parse_csv up to 12-significant-digit formatting.
std::string recording_to_csv(const Recording& recording);

// Non-overlapping block means per channel; the trailing partial block is
// dropped. target_rate must divide the recording rate evenly.
Recording resample_mean(const Recording& recording, double target_rate);

// One "start_seconds,end_seconds" interval per line; blank lines ignored.
SeizureAnnotations load_annotations(const std::string& text);

// Appends _2, _3, ... to repeated names so the result is unique.
std::vector<std::string> deduplicate_names(const std::vector<std::string>& names);

}  // namespace sigtda
