#include "ktgaps/records.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ktgaps {

namespace {

double expected_gap_at(uint64_t p, const HLConstant& c, size_t k) {
    const double lp = std::log(static_cast<double>(p));
    return c.C * std::pow(lp, static_cast<double>(k));
}

std::string join_offsets(const std::vector<uint64_t>& offsets) {
    std::string out;
    for (size_t i = 0; i < offsets.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(offsets[i]);
    }
    return out;
}

uint64_t parse_u64_field(const std::string& text, const std::string& key) {
    size_t pos = 0;
    uint64_t value = 0;
    try {
        value = std::stoull(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("checkpoint field " + key +
                                    " is not an integer: " + text);
    }
    if (pos != text.size())
        throw std::invalid_argument("checkpoint field " + key +
                                    " has trailing characters: " + text);
    return value;
}

}  // namespace

double standardize(uint64_t p, uint64_t gap, const HLConstant& c, size_t k) {
    const double a = expected_gap_at(p, c, k);
    const double trend = a * std::log(static_cast<double>(p) / a);
    return (static_cast<double>(gap) - trend) / a;
}

void ScanCheckpoint::save(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write checkpoint file: " + path);
    out << "pattern=" << pattern_name << '\n';
    out << "offsets=" << join_offsets(offsets) << '\n';
    out << "scanned_to=" << scanned_to << '\n';
    out << "last_tuple=" << last_tuple << '\n';
    out << "current_max_gap=" << current_max_gap << '\n';
    out << "records_emitted=" << records_emitted << '\n';
    if (!out) throw std::runtime_error("failed writing checkpoint: " + path);
}

ScanCheckpoint ScanCheckpoint::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open checkpoint file: " + path);
    std::map<std::string, std::string> fields;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("malformed checkpoint line: " + line);
        fields[line.substr(0, eq)] = line.substr(eq + 1);
    }
    for (const char* key : {"pattern", "offsets", "scanned_to", "last_tuple",
                            "current_max_gap", "records_emitted"})
        if (fields.find(key) == fields.end())
            throw std::invalid_argument(std::string("checkpoint missing ") +
                                        key + " field");
    ScanCheckpoint cp;
    cp.pattern_name = fields["pattern"];
    cp.offsets = parse_offsets(fields["offsets"]);
    cp.scanned_to = parse_u64_field(fields["scanned_to"], "scanned_to");
    cp.last_tuple = parse_u64_field(fields["last_tuple"], "last_tuple");
    cp.current_max_gap =
        parse_u64_field(fields["current_max_gap"], "current_max_gap");
    cp.records_emitted =
        parse_u64_field(fields["records_emitted"], "records_emitted");
    return cp;
}

std::vector<GapRecord> scan_records(const TuplePattern& pattern,
                                    uint64_t x_max, const HLConstant& c,
                                    const ScanOptions& options,
                                    ScanCheckpoint* checkpoint_out) {
    if (x_max < 2) throw std::invalid_argument("x_max must be at least 2");
    uint64_t lo = 2;
    uint64_t prev = 0;
    bool have_prev = false;
    uint64_t max_gap = 0;
    uint64_t emitted = 0;
    if (options.resume != nullptr) {
        const ScanCheckpoint& cp = *options.resume;
        if (cp.pattern_name != pattern.name || cp.offsets != pattern.offsets)
            throw std::invalid_argument(
                "checkpoint pattern " + cp.pattern_name +
                " does not match requested pattern " + pattern.name);
        if (cp.scanned_to < 2)
            throw std::invalid_argument("checkpoint scanned_to is below 2");
        if (cp.scanned_to > x_max + 1)
            throw std::invalid_argument(
                "checkpoint already covers the requested bound");
        lo = cp.scanned_to;
        if (cp.last_tuple != 0) {
            prev = cp.last_tuple;
            have_prev = true;
        }
        max_gap = cp.current_max_gap;
        emitted = cp.records_emitted;
    }
    const uint64_t hi = x_max + 1;
    std::vector<GapRecord> out;
    FindOptions fopts;
    fopts.threads = options.threads;
    find_tuples(
        pattern, lo, hi,
        [&](uint64_t t) {
            if (have_prev) {
                const uint64_t gap = t - prev;
                if (gap > max_gap) {
                    max_gap = gap;
                    GapRecord rec;
                    rec.p = t;
                    rec.prev = prev;
                    rec.gap = gap;
                    rec.a = expected_gap_at(t, c, pattern.k());
                    rec.g_star = standardize(t, gap, c, pattern.k());
                    out.push_back(rec);
                    ++emitted;
                }
            }
            prev = t;
            have_prev = true;
        },
        fopts);
    if (checkpoint_out != nullptr) {
        checkpoint_out->pattern_name = pattern.name;
        checkpoint_out->offsets = pattern.offsets;
        checkpoint_out->scanned_to = hi;
        checkpoint_out->last_tuple = have_prev ? prev : 0;
        checkpoint_out->current_max_gap = max_gap;
        checkpoint_out->records_emitted = emitted;
    }
    return out;
}

uint64_t largest_gap_below(const std::vector<GapRecord>& records,
                           uint64_t x) {
    if (records.empty() || x < records.front().p)
        throw std::invalid_argument(
            "no record ends at or below " + std::to_string(x));
    uint64_t best = 0;
    for (const GapRecord& r : records) {
        if (r.p > x) break;
        best = r.gap;
    }
    return best;
}

double avg_gap_empirical(const TuplePattern& pattern, uint64_t x,
                         const FindOptions& options) {
    if (x < 4) throw std::invalid_argument("x is too small for a gap window");
    const uint64_t lo = x / 2;
    const uint64_t hi = x + x / 2;
    uint64_t first = 0, last = 0, count = 0;
    find_tuples(
        pattern, std::max<uint64_t>(lo, 2), hi,
        [&](uint64_t t) {
            if (count == 0) first = t;
            last = t;
            ++count;
        },
        options);
    if (count < 2)
        throw std::invalid_argument(
            "window around x contains fewer than two tuples");
    return static_cast<double>(last - first) / static_cast<double>(count - 1);
}

std::vector<std::pair<double, uint64_t>> histogram(
    const std::vector<double>& values, double bin_width) {
    if (!(bin_width > 0.0))
        throw std::invalid_argument("bin width must be positive");
    std::vector<std::pair<double, uint64_t>> bins;
    if (values.empty()) return bins;
    double lo = values.front(), hi = values.front();
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const int64_t first_bin = static_cast<int64_t>(std::floor(lo / bin_width));
    const int64_t last_bin = static_cast<int64_t>(std::floor(hi / bin_width));
    bins.resize(static_cast<size_t>(last_bin - first_bin + 1));
    for (size_t i = 0; i < bins.size(); ++i) {
        bins[i].first =
            static_cast<double>(first_bin + static_cast<int64_t>(i)) *
            bin_width;
        bins[i].second = 0;
    }
    for (double v : values) {
        int64_t b = static_cast<int64_t>(std::floor(v / bin_width));
        b = std::min(std::max(b, first_bin), last_bin);
        ++bins[static_cast<size_t>(b - first_bin)].second;
    }
    return bins;
}

std::string format_g_star(double g_star) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", g_star);
    std::string s(buf);
    if (s == "-0.000") s = "0.000";
    return s;
}

void write_records_csv(std::ostream& os, const std::string& pattern_name,
                       size_t k, const std::vector<GapRecord>& records,
                       bool header) {
    if (header) os << "pattern,k,p,prev,gap,a,g_star\n";
    char abuf[64];
    for (const GapRecord& r : records) {
        std::snprintf(abuf, sizeof(abuf), "%.6g", r.a);
        os << pattern_name << ',' << k << ',' << r.p << ',' << r.prev << ','
           << r.gap << ',' << abuf << ',' << format_g_star(r.g_star) << '\n';
    }
}

}  // namespace ktgaps
