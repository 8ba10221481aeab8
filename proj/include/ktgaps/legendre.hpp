#ifndef KTGAPS_LEGENDRE_HPP
#define KTGAPS_LEGENDRE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ktgaps/pattern.hpp"

namespace ktgaps {

// n^r in exact integer arithmetic; nullopt on overflow past 2^64 - 1.
std::optional<uint64_t> checked_pow(uint64_t n, unsigned r);

// True iff some tuple of any member pattern lies strictly inside the open
// interval (n^r, (n+1)^r): initial prime p > n^r and p + span < (n+1)^r.
// Throws if (n+1)^r overflows.
bool has_tuple_between(const std::vector<TuplePattern>& patterns, uint64_t n,
                       unsigned r);

struct PowerIntervalReport {
    unsigned r = 0;
    uint64_t n_checked = 0;              // highest n actually scanned
    std::vector<uint64_t> failures;      // ascending
    std::optional<uint64_t> last_failure;
    bool truncated = false;              // stopped early at the overflow edge
};

// Checks every n in [1, n_max] for a tuple inside (n^r, (n+1)^r). Stops at
// the last n whose interval fits in 64 bits and flags truncation. Failure
// order is independent of thread count.
PowerIntervalReport scan_threshold(const std::vector<TuplePattern>& patterns,
                                   unsigned r, uint64_t n_max,
                                   unsigned threads = 1);

}  // namespace ktgaps

#endif
