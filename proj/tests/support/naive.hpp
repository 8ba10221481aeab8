#ifndef KTGAPS_TESTS_NAIVE_HPP
#define KTGAPS_TESTS_NAIVE_HPP

// Trial-division reference implementations, deliberately independent of the
// production sieve, used to cross-check tuple streams and record folds.

#include <cstdint>
#include <vector>

#include "ktgaps/pattern.hpp"

namespace naive {

inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Primality of every integer in [0, limit], one trial division per entry.
inline std::vector<bool> prime_table(uint64_t limit) {
    std::vector<bool> table(limit + 1, false);
    for (uint64_t n = 2; n <= limit; ++n) table[n] = is_prime(n);
    return table;
}

inline std::vector<uint64_t> tuples(const ktgaps::TuplePattern& pattern,
                                    uint64_t lo, uint64_t hi) {
    std::vector<uint64_t> out;
    for (uint64_t n = lo; n < hi; ++n) {
        bool all = true;
        for (uint64_t d : pattern.offsets) {
            if (!is_prime(n + d)) {
                all = false;
                break;
            }
        }
        if (all) out.push_back(n);
    }
    return out;
}

struct Record {
    uint64_t p = 0;
    uint64_t prev = 0;
    uint64_t gap = 0;
};

// Record fold over a precomputed primality table: a gap becomes a record
// exactly when it strictly exceeds every earlier gap.
inline std::vector<Record> records_from_table(
    const ktgaps::TuplePattern& pattern, uint64_t x_max,
    const std::vector<bool>& table) {
    std::vector<Record> out;
    uint64_t prev = 0;
    bool have_prev = false;
    uint64_t max_gap = 0;
    for (uint64_t n = 2; n <= x_max; ++n) {
        bool all = true;
        for (uint64_t d : pattern.offsets) {
            if (!table[n + d]) {
                all = false;
                break;
            }
        }
        if (!all) continue;
        if (have_prev) {
            const uint64_t gap = n - prev;
            if (gap > max_gap) {
                max_gap = gap;
                out.push_back({n, prev, gap});
            }
        }
        prev = n;
        have_prev = true;
    }
    return out;
}

inline std::vector<Record> records(const ktgaps::TuplePattern& pattern,
                                   uint64_t x_max) {
    const std::vector<bool> table = prime_table(x_max + pattern.span());
    return records_from_table(pattern, x_max, table);
}

}  // namespace naive

#endif
