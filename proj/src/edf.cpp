#include "sigtda/edf.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sigtda {

namespace {

constexpr std::size_t kFixedHeaderBytes = 256;
constexpr std::size_t kPerSignalHeaderBytes = 256;

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// Fixed-width ASCII field reader over the header bytes.
class FieldReader {
public:
    FieldReader(const std::string& bytes, std::size_t limit) : bytes_(bytes), limit_(limit) {}

    std::string text(std::size_t width, const char* name) {
        if (pos_ + width > limit_)
            throw ParseError(ParseErrorKind::truncated_file,
                             std::string("edf: header truncated in field '") + name + "'");
        std::string out = bytes_.substr(pos_, width);
        pos_ += width;
        return trim(out);
    }

    long integer(std::size_t width, const char* name) {
        const std::string t = text(width, name);
        if (t.empty())
            throw ParseError(ParseErrorKind::bad_field,
                             std::string("edf: empty numeric header field '") + name + "'");
        char* end = nullptr;
        const long v = std::strtol(t.c_str(), &end, 10);
        if (end != t.c_str() + t.size())
            throw ParseError(ParseErrorKind::bad_field,
                             std::string("edf: non-numeric header field '") + name + "' = '" +
                                 t + "'");
        return v;
    }

    double real(std::size_t width, const char* name) {
        const std::string t = text(width, name);
        if (t.empty())
            throw ParseError(ParseErrorKind::bad_field,
                             std::string("edf: empty numeric header field '") + name + "'");
        char* end = nullptr;
        const double v = std::strtod(t.c_str(), &end);
        if (end != t.c_str() + t.size() || !std::isfinite(v))
            throw ParseError(ParseErrorKind::bad_field,
                             std::string("edf: non-numeric header field '") + name + "' = '" +
                                 t + "'");
        return v;
    }

    std::size_t position() const { return pos_; }

private:
    const std::string& bytes_;
    std::size_t limit_;
    std::size_t pos_ = 0;
};

}  // namespace

EdfHeader parse_edf_header(const std::string& bytes) {
    if (bytes.size() < kFixedHeaderBytes)
        throw ParseError(ParseErrorKind::truncated_file,
                         "edf: file shorter than the 256-byte fixed header (" +
                             std::to_string(bytes.size()) + " bytes)");

    EdfHeader h;
    FieldReader r(bytes, bytes.size());
    h.version = r.text(8, "version");
    h.patient = r.text(80, "patient");
    h.recording = r.text(80, "recording");
    h.start_date = r.text(8, "start date");
    h.start_time = r.text(8, "start time");
    h.header_bytes = static_cast<int>(r.integer(8, "header bytes"));
    r.text(44, "reserved");
    h.record_count = r.integer(8, "record count");
    h.record_duration = r.real(8, "record duration");
    h.signal_count = static_cast<int>(r.integer(4, "signal count"));

    if (h.signal_count < 1)
        throw ParseError(ParseErrorKind::bad_field, "edf: signal count must be >= 1");
    const std::size_t expected_header =
        kFixedHeaderBytes + kPerSignalHeaderBytes * static_cast<std::size_t>(h.signal_count);
    if (static_cast<std::size_t>(h.header_bytes) != expected_header)
        throw ParseError(ParseErrorKind::bad_field,
                         "edf: header byte count " + std::to_string(h.header_bytes) +
                             " does not equal 256*(signals+1) = " +
                             std::to_string(expected_header));
    if (bytes.size() < expected_header)
        throw ParseError(ParseErrorKind::truncated_file,
                         "edf: file shorter than the declared header (" +
                             std::to_string(bytes.size()) + " < " +
                             std::to_string(expected_header) + " bytes)");
    if (h.record_count < -1)
        throw ParseError(ParseErrorKind::bad_field, "edf: invalid record count");
    if (!(h.record_duration > 0.0))
        throw ParseError(ParseErrorKind::bad_field, "edf: record duration must be positive");

    const std::size_t ns = static_cast<std::size_t>(h.signal_count);
    h.signals.resize(ns);
    // Extended header fields are grouped: all labels, then all transducers, ...
    for (std::size_t s = 0; s < ns; ++s) h.signals[s].label = r.text(16, "label");
    for (std::size_t s = 0; s < ns; ++s) h.signals[s].transducer = r.text(80, "transducer");
    for (std::size_t s = 0; s < ns; ++s)
        h.signals[s].physical_dimension = r.text(8, "physical dimension");
    for (std::size_t s = 0; s < ns; ++s)
        h.signals[s].physical_min = r.real(8, "physical min");
    for (std::size_t s = 0; s < ns; ++s)
        h.signals[s].physical_max = r.real(8, "physical max");
    for (std::size_t s = 0; s < ns; ++s)
        h.signals[s].digital_min = static_cast<int>(r.integer(8, "digital min"));
    for (std::size_t s = 0; s < ns; ++s)
        h.signals[s].digital_max = static_cast<int>(r.integer(8, "digital max"));
    for (std::size_t s = 0; s < ns; ++s) h.signals[s].prefiltering = r.text(80, "prefiltering");
    for (std::size_t s = 0; s < ns; ++s) {
        h.signals[s].samples_per_record =
            static_cast<int>(r.integer(8, "samples per record"));
        if (h.signals[s].samples_per_record < 1)
            throw ParseError(ParseErrorKind::bad_field,
                             "edf: samples per record must be >= 1 for signal " +
                                 std::to_string(s));
    }
    for (std::size_t s = 0; s < ns; ++s) r.text(32, "signal reserved");

    for (std::size_t s = 0; s < ns; ++s) {
        if (h.signals[s].digital_min >= h.signals[s].digital_max)
            throw ParseError(ParseErrorKind::bad_calibration,
                             "edf: zero-range calibration (digital min >= max) for signal '" +
                                 h.signals[s].label + "'");
    }
    return h;
}

Recording parse_edf(const std::string& bytes) {
    const EdfHeader h = parse_edf_header(bytes);
    const std::size_t ns = static_cast<std::size_t>(h.signal_count);

    std::size_t record_samples = 0;
    for (const auto& sig : h.signals)
        record_samples += static_cast<std::size_t>(sig.samples_per_record);
    const std::size_t record_bytes = record_samples * 2;
    const std::size_t data_bytes = bytes.size() - static_cast<std::size_t>(h.header_bytes);

    long record_count = h.record_count;
    if (record_count == -1) {
        if (record_bytes == 0 || data_bytes % record_bytes != 0)
            throw ParseError(ParseErrorKind::record_count_mismatch,
                             "edf: cannot infer record count from file length");
        record_count = static_cast<long>(data_bytes / record_bytes);
    } else if (data_bytes != static_cast<std::size_t>(record_count) * record_bytes) {
        throw ParseError(ParseErrorKind::record_count_mismatch,
                         "edf: header declares " + std::to_string(record_count) +
                             " records of " + std::to_string(record_bytes) + " bytes but " +
                             std::to_string(data_bytes) + " data bytes are present");
    }

    std::vector<std::size_t> retained;  // signal indices that carry data
    for (std::size_t s = 0; s < ns; ++s)
        if (!h.signals[s].is_annotation()) retained.push_back(s);
    if (retained.empty())
        throw ParseError(ParseErrorKind::bad_field, "edf: no data signals (annotations only)");

    const int spr = h.signals[retained.front()].samples_per_record;
    for (std::size_t s : retained)
        if (h.signals[s].samples_per_record != spr)
            throw ParseError(ParseErrorKind::mixed_rates,
                             "edf: signals with differing samples per record are unsupported");

    Recording rec;
    rec.rate = static_cast<double>(spr) / h.record_duration;
    std::vector<std::string> names;
    names.reserve(retained.size());
    for (std::size_t s : retained) names.push_back(h.signals[s].label);
    rec.channel_names = deduplicate_names(names);

    const std::size_t total = static_cast<std::size_t>(record_count) *
                              static_cast<std::size_t>(spr);
    rec.samples.assign(retained.size(), {});
    for (auto& ch : rec.samples) ch.reserve(total);

    // Per-signal affine calibration.
    std::vector<double> gain(ns), offset(ns);
    for (std::size_t s = 0; s < ns; ++s) {
        const auto& sig = h.signals[s];
        gain[s] = (sig.physical_max - sig.physical_min) /
                  (static_cast<double>(sig.digital_max) - static_cast<double>(sig.digital_min));
        offset[s] = sig.physical_min - gain[s] * static_cast<double>(sig.digital_min);
    }

    const unsigned char* data =
        reinterpret_cast<const unsigned char*>(bytes.data()) + h.header_bytes;
    std::size_t pos = 0;
    for (long r = 0; r < record_count; ++r) {
        std::size_t out_channel = 0;
        for (std::size_t s = 0; s < ns; ++s) {
            const std::size_t count = static_cast<std::size_t>(h.signals[s].samples_per_record);
            if (h.signals[s].is_annotation()) {
                pos += count * 2;
                continue;
            }
            auto& ch = rec.samples[out_channel++];
            for (std::size_t k = 0; k < count; ++k) {
                const std::uint16_t raw = static_cast<std::uint16_t>(data[pos]) |
                                          (static_cast<std::uint16_t>(data[pos + 1]) << 8);
                const std::int16_t digital = static_cast<std::int16_t>(raw);
                ch.push_back(gain[s] * static_cast<double>(digital) + offset[s]);
                pos += 2;
            }
        }
    }
    rec.validate();
    return rec;
}

std::string read_binary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(ParseErrorKind::truncated_file, "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace sigtda
