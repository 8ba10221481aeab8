#include "ktgaps/legendre.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "ktgaps/sieve.hpp"

namespace ktgaps {

namespace {

constexpr uint64_t kMaxBound = 1ULL << 63;

// Largest n with (n + 1)^r inside the scannable range, at most n_max.
uint64_t safe_n_limit(unsigned r, uint64_t n_max) {
    uint64_t lo = 0, hi = n_max;
    while (lo < hi) {
        const uint64_t mid = lo + (hi - lo + 1) / 2;
        const std::optional<uint64_t> p = checked_pow(mid + 1, r);
        if (p.has_value() && *p <= kMaxBound)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

bool interval_has_tuple(const TupleScanner& scanner, uint64_t n, unsigned r) {
    const uint64_t lo_pow = *checked_pow(n, r);
    const uint64_t hi_pow = *checked_pow(n + 1, r);
    for (size_t idx = 0; idx < scanner.patterns().size(); ++idx) {
        const uint64_t span = scanner.patterns()[idx].span();
        if (hi_pow - lo_pow <= span + 1) continue;
        const uint64_t lo = lo_pow + 1;
        const uint64_t hi = hi_pow - span;
        if (scanner.first_in(idx, lo, hi).has_value()) return true;
    }
    return false;
}

}  // namespace

std::optional<uint64_t> checked_pow(uint64_t n, unsigned r) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < r; ++i) {
        acc *= n;
        if (acc > static_cast<unsigned __int128>(UINT64_MAX))
            return std::nullopt;
    }
    return static_cast<uint64_t>(acc);
}

bool has_tuple_between(const std::vector<TuplePattern>& patterns, uint64_t n,
                       unsigned r) {
    if (patterns.empty())
        throw std::invalid_argument("need at least one pattern");
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (r < 2) throw std::invalid_argument("exponent must be at least 2");
    const std::optional<uint64_t> hi_pow = checked_pow(n + 1, r);
    if (!hi_pow.has_value() || *hi_pow > kMaxBound)
        throw std::invalid_argument(
            "(n+1)^r exceeds the scannable range");
    TupleScanner scanner(patterns, *hi_pow);
    return interval_has_tuple(scanner, n, r);
}

PowerIntervalReport scan_threshold(const std::vector<TuplePattern>& patterns,
                                   unsigned r, uint64_t n_max,
                                   unsigned threads) {
    if (patterns.empty())
        throw std::invalid_argument("need at least one pattern");
    if (r < 2) throw std::invalid_argument("exponent must be at least 2");
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");

    PowerIntervalReport report;
    report.r = r;
    const uint64_t limit = safe_n_limit(r, n_max);
    report.truncated = limit < n_max;
    report.n_checked = limit;
    if (limit == 0) return report;

    TupleScanner scanner(patterns, *checked_pow(limit + 1, r));

    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    threads = static_cast<unsigned>(std::min<uint64_t>(threads, limit));

    std::atomic<uint64_t> next{1};
    std::vector<std::vector<uint64_t>> failures(threads);
    const auto worker = [&](unsigned id) {
        for (;;) {
            const uint64_t n = next.fetch_add(1);
            if (n > limit) return;
            if (!interval_has_tuple(scanner, n, r))
                failures[id].push_back(n);
        }
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (std::thread& th : pool) th.join();
    }

    for (const std::vector<uint64_t>& part : failures)
        report.failures.insert(report.failures.end(), part.begin(),
                               part.end());
    std::sort(report.failures.begin(), report.failures.end());
    if (!report.failures.empty())
        report.last_failure = report.failures.back();
    return report;
}

}  // namespace ktgaps
