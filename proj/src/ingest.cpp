#include "sigtda/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

namespace sigtda {

void Recording::validate() const {
    if (channel_names.size() != samples.size())
        throw std::invalid_argument("Recording: name/channel count mismatch");
    if (!(rate > 0.0)) throw std::invalid_argument("Recording: rate must be positive");
    const std::size_t n = sample_count();
    for (const auto& ch : samples)
        if (ch.size() != n) throw std::invalid_argument("Recording: channels of unequal length");
}

Recording Recording::select_channels(const std::vector<std::string>& names) const {
    Recording out;
    out.rate = rate;
    for (const auto& name : names) {
        auto it = std::find(channel_names.begin(), channel_names.end(), name);
        if (it == channel_names.end()) {
            std::string available;
            for (const auto& n : channel_names) {
                if (!available.empty()) available += ", ";
                available += n;
            }
            throw ParseError(ParseErrorKind::unknown_channel,
                             "unknown channel '" + name + "' (available: " + available + ")");
        }
        out.channel_names.push_back(name);
        out.samples.push_back(samples[static_cast<std::size_t>(it - channel_names.begin())]);
    }
    return out;
}

bool SeizureAnnotations::contains(double t) const {
    for (const auto& [start, end] : intervals)
        if (t >= start && t < end) return true;
    return false;
}

std::vector<std::string> deduplicate_names(const std::vector<std::string>& names) {
    std::vector<std::string> out;
    std::map<std::string, int> seen;
    for (const auto& name : names) {
        int count = ++seen[name];
        if (count == 1) {
            out.push_back(name);
        } else {
            std::string candidate = name + "_" + std::to_string(count);
            while (seen.count(candidate)) candidate += "x";
            seen[candidate] = 1;
            out.push_back(candidate);
        }
    }
    return out;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream in(line);
    while (std::getline(in, token, sep)) out.push_back(token);
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

double parse_number(const std::string& cell, std::size_t line_no) {
    const std::string t = trim(cell);
    if (t.empty())
        throw ParseError(ParseErrorKind::non_numeric,
                         "empty numeric cell on line " + std::to_string(line_no));
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || !std::isfinite(v))
        throw ParseError(ParseErrorKind::non_numeric,
                         "non-numeric cell '" + t + "' on line " + std::to_string(line_no));
    return v;
}

}  // namespace

Recording parse_csv(const std::string& text, double rate) {
    if (!(rate > 0.0))
        throw ParseError(ParseErrorKind::bad_field, "csv: rate must be positive");

    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(line);
        }
    }
    std::size_t first = 0;
    while (first < lines.size() && trim(lines[first]).empty()) ++first;
    if (first == lines.size())
        throw ParseError(ParseErrorKind::empty_input, "csv: no header row");

    Recording rec;
    rec.rate = rate;
    {
        auto cells = split(lines[first], ',');
        for (auto& c : cells) rec.channel_names.push_back(trim(c));
        if (rec.channel_names.empty() ||
            (rec.channel_names.size() == 1 && rec.channel_names[0].empty()))
            throw ParseError(ParseErrorKind::empty_input, "csv: empty header row");
    }
    rec.channel_names = deduplicate_names(rec.channel_names);
    rec.samples.assign(rec.channel_names.size(), {});

    std::size_t body_rows = 0;
    for (std::size_t li = first + 1; li < lines.size(); ++li) {
        if (trim(lines[li]).empty()) continue;
        auto cells = split(lines[li], ',');
        if (cells.size() != rec.channel_names.size())
            throw ParseError(ParseErrorKind::ragged_row,
                             "csv: line " + std::to_string(li + 1) + " has " +
                                 std::to_string(cells.size()) + " cells, expected " +
                                 std::to_string(rec.channel_names.size()));
        for (std::size_t c = 0; c < cells.size(); ++c)
            rec.samples[c].push_back(parse_number(cells[c], li + 1));
        ++body_rows;
    }
    if (body_rows == 0)
        throw ParseError(ParseErrorKind::empty_input, "csv: no data rows");
    return rec;
}

std::string recording_to_csv(const Recording& recording) {
    recording.validate();
    std::ostringstream out;
    for (std::size_t c = 0; c < recording.channel_names.size(); ++c) {
        if (c > 0) out << ',';
        out << recording.channel_names[c];
    }
    out << '\n';
    char buf[64];
    for (std::size_t i = 0; i < recording.sample_count(); ++i) {
        for (std::size_t c = 0; c < recording.channel_count(); ++c) {
            if (c > 0) out << ',';
            std::snprintf(buf, sizeof(buf), "%.12g", recording.samples[c][i]);
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

Recording resample_mean(const Recording& recording, double target_rate) {
    recording.validate();
    if (!(target_rate > 0.0))
        throw std::invalid_argument("resample_mean: target rate must be positive");

    const double ratio = recording.rate / target_rate;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
        throw std::invalid_argument("resample_mean: target rate must divide the recording rate "
                                    "evenly (got block size " + std::to_string(ratio) + ")");
    const std::size_t block = static_cast<std::size_t>(rounded);

    Recording out;
    out.channel_names = recording.channel_names;
    out.rate = target_rate;
    const std::size_t blocks = recording.sample_count() / block;
    out.samples.reserve(recording.channel_count());
    for (const auto& ch : recording.samples) {
        std::vector<double> means;
        means.reserve(blocks);
        for (std::size_t b = 0; b < blocks; ++b) {
            double sum = 0.0;
            for (std::size_t k = 0; k < block; ++k) sum += ch[b * block + k];
            means.push_back(sum / static_cast<double>(block));
        }
        out.samples.push_back(std::move(means));
    }
    return out;
}

SeizureAnnotations load_annotations(const std::string& text) {
    SeizureAnnotations ann;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split(line, ',');
        if (cells.size() != 2)
            throw ParseError(ParseErrorKind::bad_field,
                             "annotations: line " + std::to_string(line_no) +
                                 " is not 'start,end'");
        const double start = parse_number(cells[0], line_no);
        const double end = parse_number(cells[1], line_no);
        if (start >= end)
            throw ParseError(ParseErrorKind::invalid_interval,
                             "annotations: interval on line " + std::to_string(line_no) +
                                 " has start >= end");
        ann.intervals.emplace_back(start, end);
    }
    std::sort(ann.intervals.begin(), ann.intervals.end());
    for (std::size_t i = 1; i < ann.intervals.size(); ++i) {
        if (ann.intervals[i].first < ann.intervals[i - 1].second)
            throw ParseError(ParseErrorKind::overlapping_intervals,
                             "annotations: overlapping intervals");
    }
    return ann;
}

}  // namespace sigtda
