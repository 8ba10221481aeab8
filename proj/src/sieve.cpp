#include "ktgaps/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace ktgaps {

namespace {

constexpr uint64_t kMaxBound = 1ull << 63;
constexpr uint64_t kWheel = 210;  // 2*3*5*7
constexpr uint64_t kWheelCut = 11;  // below this, candidates bypass the wheel

uint64_t isqrt_u64(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool trial_prime(uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// Wheel residues r mod 210 such that r + d is coprime to 210 for every
// offset d. Every tuple start p >= 11 has p mod 210 in this set, because
// each member p + d is then a prime > 7.
std::vector<uint16_t> wheel_residues(const TuplePattern& pattern) {
    std::vector<uint16_t> out;
    for (uint64_t r = 1; r < kWheel; r += 2) {
        bool ok = true;
        for (uint64_t d : pattern.offsets) {
            uint64_t m = (r + d) % kWheel;
            if (m % 3 == 0 || m % 5 == 0 || m % 7 == 0 || m % 2 == 0) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(static_cast<uint16_t>(r));
    }
    return out;
}

// Sets bit i of words for each odd number seg_lo + 2i in [seg_lo, seg_end)
// that survives sieving by base_primes. seg_lo must be odd.
void sieve_odd_segment(uint64_t seg_lo, uint64_t seg_end,
                       const std::vector<uint32_t>& base_primes,
                       std::vector<uint64_t>& words) {
    const uint64_t nbits = (seg_end - seg_lo + 1) / 2;
    words.assign((nbits + 63) / 64, ~0ull);
    if (nbits % 64 != 0) words.back() = (1ull << (nbits % 64)) - 1;
    for (uint32_t p32 : base_primes) {
        if (p32 == 2) continue;
        const uint64_t p = p32;
        uint64_t start = p * p;
        if (start >= seg_end) break;
        if (start < seg_lo) {
            uint64_t m = (seg_lo + p - 1) / p * p;
            if (m % 2 == 0) m += p;
            start = m;
            if (start >= seg_end) continue;
        }
        for (uint64_t x = start; x < seg_end; x += 2 * p) {
            const uint64_t i = (x - seg_lo) >> 1;
            words[i >> 6] &= ~(1ull << (i & 63));
        }
    }
    if (seg_lo == 1) words[0] &= ~1ull;
}

inline bool bit_set(const std::vector<uint64_t>& words, uint64_t i) {
    return (words[i >> 6] >> (i & 63)) & 1;
}

// Appends tuple starts of the pattern found in [max(seg_lo, from), until)
// using a bitmap that covers odds in [seg_lo, seg_lo + 2*words_bits).
void extract_tuples(const std::vector<uint64_t>& words, uint64_t seg_lo,
                    uint64_t from, uint64_t until,
                    const std::vector<uint16_t>& residues,
                    const std::vector<uint64_t>& half_offsets,
                    std::vector<uint64_t>& out) {
    const uint64_t lo = std::max(seg_lo, from);
    uint64_t block = lo / kWheel * kWheel;
    for (; block < until; block += kWheel) {
        for (uint16_t r : residues) {
            const uint64_t c = block + r;
            if (c < lo) continue;
            if (c >= until) break;
            const uint64_t base = (c - seg_lo) >> 1;
            bool ok = true;
            for (uint64_t h : half_offsets) {
                if (!bit_set(words, base + h)) {
                    ok = false;
                    break;
                }
            }
            if (ok) out.push_back(c);
        }
    }
}

// Tuple starts below the wheel cut, by trial division.
void small_tuples(const TuplePattern& pattern, uint64_t lo, uint64_t hi,
                  std::vector<uint64_t>& out) {
    const uint64_t stop = std::min<uint64_t>(hi, kWheelCut);
    for (uint64_t n = lo; n < stop; ++n) {
        bool ok = true;
        for (uint64_t d : pattern.offsets) {
            if (!trial_prime(n + d)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(n);
    }
}

std::vector<uint32_t> base_primes_for(uint64_t sieve_end) {
    const uint64_t limit = isqrt_u64(sieve_end > 0 ? sieve_end - 1 : 0);
    return simple_sieve(static_cast<uint32_t>(std::max<uint64_t>(limit, 3)));
}

std::vector<uint64_t> half_offsets_of(const TuplePattern& pattern) {
    std::vector<uint64_t> halves;
    halves.reserve(pattern.k());
    for (uint64_t d : pattern.offsets) halves.push_back(d / 2);
    return halves;
}

struct SegmentPlan {
    uint64_t lo = 0;     // first odd candidate position
    uint64_t hi = 0;     // exclusive bound on tuple starts
    uint64_t span = 0;   // sieve overhang for tuple members
    uint64_t step = 0;   // odds per segment * 2
    size_t count = 0;

    SegmentPlan(uint64_t wheel_lo, uint64_t hi_, uint64_t span_,
                uint32_t segment_odds)
        : lo(wheel_lo | 1), hi(hi_), span(span_),
          step(2ull * std::max<uint32_t>(segment_odds, 1u << 10)) {
        count = lo < hi ? static_cast<size_t>((hi - lo + step - 1) / step) : 0;
    }
    uint64_t seg_lo(size_t i) const { return lo + step * i; }
    uint64_t seg_hi(size_t i) const { return std::min(hi, seg_lo(i) + step); }
};

void process_segment(const SegmentPlan& plan, size_t i,
                     const std::vector<uint32_t>& base_primes,
                     const std::vector<uint16_t>& residues,
                     const std::vector<uint64_t>& halves,
                     std::vector<uint64_t>& words,
                     std::vector<uint64_t>& found) {
    const uint64_t seg_lo = plan.seg_lo(i);
    const uint64_t seg_hi = plan.seg_hi(i);
    sieve_odd_segment(seg_lo, seg_hi + plan.span, base_primes, words);
    extract_tuples(words, seg_lo, seg_lo, seg_hi, residues, halves, found);
}

void run_parallel_segments(const SegmentPlan& plan,
                           const std::vector<uint32_t>& base_primes,
                           const std::vector<uint16_t>& residues,
                           const std::vector<uint64_t>& halves,
                           unsigned threads,
                           const std::function<void(uint64_t)>& emit) {
    std::mutex mu;
    std::condition_variable cv;
    std::vector<std::unique_ptr<std::vector<uint64_t>>> done(plan.count);
    std::atomic<size_t> next_claim{0};
    size_t next_deliver = 0;
    const size_t window = static_cast<size_t>(threads) * 4;

    auto worker = [&] {
        std::vector<uint64_t> words;
        while (true) {
            const size_t i = next_claim.fetch_add(1);
            if (i >= plan.count) return;
            {
                std::unique_lock<std::mutex> lock(mu);
                cv.wait(lock, [&] { return i < next_deliver + window; });
            }
            auto found = std::make_unique<std::vector<uint64_t>>();
            process_segment(plan, i, base_primes, residues, halves, words,
                            *found);
            {
                std::lock_guard<std::mutex> lock(mu);
                done[i] = std::move(found);
            }
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    const unsigned n_workers =
        static_cast<unsigned>(std::min<size_t>(threads, plan.count));
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);

    while (next_deliver < plan.count) {
        std::unique_ptr<std::vector<uint64_t>> batch;
        {
            std::unique_lock<std::mutex> lock(mu);
            cv.wait(lock, [&] { return done[next_deliver] != nullptr; });
            batch = std::move(done[next_deliver]);
            ++next_deliver;
        }
        cv.notify_all();
        for (uint64_t p : *batch) emit(p);
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace

std::vector<uint32_t> simple_sieve(uint32_t limit) {
    std::vector<uint32_t> primes;
    if (limit < 2) return primes;
    primes.push_back(2);
    const uint64_t n_odds = (static_cast<uint64_t>(limit) - 1) / 2;
    std::vector<uint64_t> words((n_odds + 64) / 64, ~0ull);
    for (uint64_t i = 1; ; ++i) {  // bit i <-> 2i + 1
        const uint64_t p = 2 * i + 1;
        if (p * p > limit) break;
        if (!bit_set(words, i)) continue;
        for (uint64_t j = (p * p - 1) / 2; j <= n_odds; j += p)
            words[j >> 6] &= ~(1ull << (j & 63));
    }
    for (uint64_t i = 1; i <= n_odds; ++i)
        if (bit_set(words, i)) primes.push_back(static_cast<uint32_t>(2 * i + 1));
    return primes;
}

void find_tuples(const TuplePattern& pattern, uint64_t lo, uint64_t hi,
                 const std::function<void(uint64_t)>& emit,
                 const FindOptions& opt) {
    if (lo < 2) throw std::invalid_argument("lower bound must be at least 2");
    if (hi > kMaxBound) throw std::invalid_argument("upper bound exceeds 2^63");
    if (lo > hi) throw std::invalid_argument("bounds inverted");
    if (lo == hi) return;

    std::vector<uint64_t> small;
    small_tuples(pattern, lo, hi, small);
    for (uint64_t p : small) emit(p);
    if (hi <= kWheelCut) return;

    const uint64_t wheel_lo = std::max(lo, kWheelCut);
    const SegmentPlan plan(wheel_lo, hi, pattern.span(), opt.segment_odds);
    if (plan.count == 0) return;
    const std::vector<uint32_t> base_primes = base_primes_for(hi + plan.span);
    const std::vector<uint16_t> residues = wheel_residues(pattern);
    const std::vector<uint64_t> halves = half_offsets_of(pattern);

    unsigned threads = opt.threads;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (threads > 1 && plan.count > 1) {
        run_parallel_segments(plan, base_primes, residues, halves, threads,
                              emit);
        return;
    }
    std::vector<uint64_t> words;
    std::vector<uint64_t> found;
    for (size_t i = 0; i < plan.count; ++i) {
        found.clear();
        process_segment(plan, i, base_primes, residues, halves, words, found);
        for (uint64_t p : found) emit(p);
    }
}

std::vector<uint64_t> find_tuples(const TuplePattern& pattern, uint64_t lo,
                                  uint64_t hi, const FindOptions& opt) {
    std::vector<uint64_t> out;
    find_tuples(pattern, lo, hi, [&](uint64_t p) { out.push_back(p); }, opt);
    return out;
}

void primes_in_range(uint64_t lo, uint64_t hi,
                     const std::function<void(uint64_t)>& emit) {
    if (lo < 2 || lo >= hi) throw std::invalid_argument("need 2 <= lo < hi");
    find_tuples(builtin_pattern("prime"), lo, hi, emit);
}

std::vector<uint64_t> primes_in_range(uint64_t lo, uint64_t hi) {
    std::vector<uint64_t> out;
    primes_in_range(lo, hi, [&](uint64_t p) { out.push_back(p); });
    return out;
}

TupleScanner::TupleScanner(std::vector<TuplePattern> patterns,
                           uint64_t max_bound)
    : patterns_(std::move(patterns)), max_bound_(max_bound) {
    if (patterns_.empty())
        throw std::invalid_argument("scanner needs at least one pattern");
    uint64_t max_span = 0;
    for (const TuplePattern& p : patterns_) {
        residues_.push_back(wheel_residues(p));
        max_span = std::max(max_span, p.span());
    }
    base_primes_ = base_primes_for(max_bound_ + max_span);
}

std::optional<uint64_t> TupleScanner::first_in(size_t idx, uint64_t lo,
                                               uint64_t hi) const {
    const TuplePattern& pattern = patterns_.at(idx);
    if (hi > max_bound_)
        throw std::invalid_argument("bound exceeds scanner capacity");
    lo = std::max<uint64_t>(lo, 2);
    if (lo >= hi) return std::nullopt;

    std::vector<uint64_t> small;
    small_tuples(pattern, lo, hi, small);
    if (!small.empty()) return small.front();
    if (hi <= kWheelCut) return std::nullopt;

    const std::vector<uint64_t> halves = half_offsets_of(pattern);
    const uint64_t span = pattern.span();
    const uint64_t chunk = 2ull * (1u << 22);
    std::vector<uint64_t> words;
    std::vector<uint64_t> found;
    for (uint64_t seg_lo = std::max(lo, kWheelCut) | 1; seg_lo < hi;
         seg_lo += chunk) {
        const uint64_t seg_hi = std::min(hi, seg_lo + chunk);
        sieve_odd_segment(seg_lo, seg_hi + span, base_primes_, words);
        found.clear();
        extract_tuples(words, seg_lo, seg_lo, seg_hi, residues_[idx], halves,
                       found);
        if (!found.empty()) return found.front();
    }
    return std::nullopt;
}

std::optional<uint64_t> find_first_tuple(
    const std::vector<TuplePattern>& patterns, uint64_t lo, uint64_t hi) {
    if (lo >= hi) return std::nullopt;
    TupleScanner scanner(patterns, hi);
    std::optional<uint64_t> best;
    for (size_t i = 0; i < patterns.size(); ++i) {
        const std::optional<uint64_t> hit = scanner.first_in(i, lo, hi);
        if (hit && (!best || *hit < *best)) best = hit;
    }
    return best;
}

}  // namespace ktgaps
