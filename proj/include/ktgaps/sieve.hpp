#ifndef KTGAPS_SIEVE_HPP
#define KTGAPS_SIEVE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ktgaps/pattern.hpp"

namespace ktgaps {

// Simple sieve of Eratosthenes; primes <= limit, ascending.
std::vector<uint32_t> simple_sieve(uint32_t limit);

// Streams primes p with lo <= p < hi, ascending. 2 <= lo < hi <= 2^63.
void primes_in_range(uint64_t lo, uint64_t hi,
                     const std::function<void(uint64_t)>& emit);
std::vector<uint64_t> primes_in_range(uint64_t lo, uint64_t hi);

struct FindOptions {
    unsigned threads = 1;
    // Odd numbers per segment. 2^22 odds = 8 MiB of integers per 512 KiB
    // bitmap, sized for L2 residency.
    uint32_t segment_odds = 1u << 22;
};

// Streams initial primes p in [lo, hi) such that p + d is prime for every
// offset d of the pattern, ascending regardless of thread count. Tuples may
// extend past hi; membership is decided by the initial prime alone.
void find_tuples(const TuplePattern& pattern, uint64_t lo, uint64_t hi,
                 const std::function<void(uint64_t)>& emit,
                 const FindOptions& opt = {});
std::vector<uint64_t> find_tuples(const TuplePattern& pattern, uint64_t lo,
                                  uint64_t hi, const FindOptions& opt = {});

// Reusable early-exit scanner. Construction sieves base primes once for
// bounds up to max_bound; first_in is const and safe to call from many
// threads.
class TupleScanner {
  public:
    TupleScanner(std::vector<TuplePattern> patterns, uint64_t max_bound);

    // First start of pattern `idx` in [lo, hi), or nullopt. hi must not
    // exceed max_bound.
    std::optional<uint64_t> first_in(size_t idx, uint64_t lo,
                                     uint64_t hi) const;

    const std::vector<TuplePattern>& patterns() const { return patterns_; }

  private:
    std::vector<TuplePattern> patterns_;
    std::vector<std::vector<uint16_t>> residues_;
    std::vector<uint32_t> base_primes_;
    uint64_t max_bound_;
};

// First tuple start in [lo, hi), or nullopt. Accepts a pattern set; a hit
// from any member counts. Sieves in chunks and stops early.
std::optional<uint64_t> find_first_tuple(
    const std::vector<TuplePattern>& patterns, uint64_t lo, uint64_t hi);

}  // namespace ktgaps

#endif
