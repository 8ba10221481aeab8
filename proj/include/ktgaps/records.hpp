#ifndef KTGAPS_RECORDS_HPP
#define KTGAPS_RECORDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ktgaps/hl.hpp"
#include "ktgaps/pattern.hpp"
#include "ktgaps/sieve.hpp"

namespace ktgaps {

// One maximal gap: the gap between consecutive tuple starts prev and p was
// strictly greater than every earlier gap of the scan. a = C * ln^k p is the
// expected average gap at p and g_star = (gap - a*ln(p/a)) / a.
struct GapRecord {
    uint64_t p = 0;
    uint64_t prev = 0;
    uint64_t gap = 0;
    double a = 0.0;
    double g_star = 0.0;
};

// Resumable scan state. scanned_to is an exclusive bound: every tuple start
// below it has been consumed by the fold.
struct ScanCheckpoint {
    std::string pattern_name;
    std::vector<uint64_t> offsets;
    uint64_t scanned_to = 0;
    uint64_t last_tuple = 0;
    uint64_t current_max_gap = 0;
    uint64_t records_emitted = 0;

    void save(const std::string& path) const;
    static ScanCheckpoint load(const std::string& path);
};

// g_star for a gap ending at p. Natural logs; a = C * ln^k p.
double standardize(uint64_t p, uint64_t gap, const HLConstant& c, size_t k);

struct ScanOptions {
    unsigned threads = 1;
    const ScanCheckpoint* resume = nullptr;
};

// Folds the ordered tuple stream of the pattern over [2, x_max] (checkpoint
// bound if resuming) into the maximal-gap records, in order. The first gap of
// a fresh scan is always a record; later gaps must strictly exceed the
// running maximum. Fills *checkpoint_out (if given) with the state at x_max.
std::vector<GapRecord> scan_records(const TuplePattern& pattern,
                                    uint64_t x_max, const HLConstant& c,
                                    const ScanOptions& opt = {},
                                    ScanCheckpoint* checkpoint_out = nullptr);

// Gap of the last record with p <= x. Throws if x precedes the first record.
uint64_t largest_gap_below(const std::vector<GapRecord>& records, uint64_t x);

// Mean start-to-start gap between consecutive tuples inside [x/2, 3x/2].
// Diagnostic companion to the modeled average gap a(x).
double avg_gap_empirical(const TuplePattern& pattern, uint64_t x,
                         const FindOptions& opt = {});

// Counts of values per half-open bin [bin_lo, bin_lo + width) with bin_lo
// aligned to multiples of width. Empty input gives an empty list.
std::vector<std::pair<double, uint64_t>> histogram(
    const std::vector<double>& values, double bin_width);

// CSV row format: pattern,k,p,prev,gap,a,g_star with a at 6 significant
// digits and g_star at 3 decimals.
void write_records_csv(std::ostream& out, const std::string& pattern_name,
                       size_t k, const std::vector<GapRecord>& records,
                       bool header);
std::string format_g_star(double g_star);

}  // namespace ktgaps

#endif
