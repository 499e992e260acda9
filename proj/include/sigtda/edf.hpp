#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sigtda/ingest.hpp"

namespace sigtda {

// ============================================================================
// EDF (European Data Format) reader, CHB-MIT layout
// ============================================================================
//
// Fixed 256-byte ASCII header, one 256-byte extended header per signal
// (fields grouped by kind, fixed widths), then data records of 16-bit
// little-endian two's-complement samples, record-major, signal-major within
// a record. Samples map to physical units through the per-signal affine
// calibration digital [dmin, dmax] -> physical [pmin, pmax].
//
// All malformed inputs surface as ParseError with a specific kind; the
// parser never crashes or truncates silently.

struct EdfSignalHeader {
    std::string label;
    std::string transducer;
    std::string physical_dimension;
    double physical_min = 0.0;
    double physical_max = 0.0;
    int digital_min = 0;
    int digital_max = 0;
    std::string prefiltering;
    int samples_per_record = 0;

    bool is_annotation() const { return label == "EDF Annotations"; }
};

struct EdfHeader {
    std::string version;
    std::string patient;
    std::string recording;
    std::string start_date;
    std::string start_time;
    int header_bytes = 0;
    long record_count = 0;         // -1 in the file means unknown
    double record_duration = 0.0;  // seconds
    int signal_count = 0;
    std::vector<EdfSignalHeader> signals;
};

// Parses only the headers (fixed plus extended); data bytes are not touched.
EdfHeader parse_edf_header(const std::string& bytes);

// Full parse to a Recording in physical units. EDF Annotations signals are
// skipped; repeated labels are de-duplicated by suffixing. A record count of
// -1 is inferred from the file length when it divides evenly.
Recording parse_edf(const std::string& bytes);

// Reads a whole file into memory; throws ParseError(truncated_file) when the
// file cannot be opened.
std::string read_binary_file(const std::string& path);

}  // namespace sigtda
