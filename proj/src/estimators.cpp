#include "ktgaps/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ktgaps {

namespace {

double expected_gap(double p, const EstimatorParams& params) {
    return params.C * std::pow(std::log(p), static_cast<double>(params.k));
}

void check_p(double p) {
    if (!(p >= 3.0)) throw std::invalid_argument("p must be at least 3");
}

}  // namespace

double default_b(size_t k) {
    if (k == 0) throw std::invalid_argument("k must be positive");
    if (k == 1) return 3.0;
    return 2.0 / static_cast<double>(k);
}

EstimatorParams EstimatorParams::with_default_b(const HLConstant& c,
                                                size_t k) {
    EstimatorParams params;
    params.C = c.C;
    params.k = k;
    params.b = default_b(k);
    return params;
}

double expected_average_gap(double x, const EstimatorParams& params) {
    check_p(x);
    return expected_gap(x, params);
}

double e1(double p, const EstimatorParams& params) {
    check_p(p);
    const double a = expected_gap(p, params);
    return std::max(a, a * (std::log(p / a) - params.b));
}

double e2(double p, const EstimatorParams& params) {
    check_p(p);
    const double a = expected_gap(p, params);
    return std::max(a, a * std::log(p / a));
}

double e3(double p, const EstimatorParams& params) {
    check_p(p);
    const double a = expected_gap(p, params);
    return a * std::log(p);
}

TrendlineFit trendline_slope(const std::vector<GapRecord>& records, size_t k,
                             uint64_t lo, uint64_t hi) {
    if (lo >= hi) throw std::invalid_argument("range is empty");
    double num = 0.0, den = 0.0;
    size_t n = 0;
    for (const GapRecord& r : records) {
        if (r.p <= lo || r.p >= hi) continue;
        const double xi =
            std::pow(std::log(static_cast<double>(r.p)),
                     static_cast<double>(k + 1));
        num += xi * static_cast<double>(r.gap);
        den += xi * xi;
        ++n;
    }
    if (n == 0)
        throw std::invalid_argument("no records fall inside the range");
    return {k, lo, hi, num / den, n};
}

double fit_b_median(const std::vector<GapRecord>& records,
                    const EstimatorParams& params) {
    std::vector<double> bs;
    bs.reserve(records.size());
    for (const GapRecord& r : records) {
        const double a = expected_gap(static_cast<double>(r.p), params);
        if (static_cast<double>(r.gap) <= a) {
            bs.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        const double p = static_cast<double>(r.p);
        bs.push_back(std::log(p / a) - static_cast<double>(r.gap) / a);
    }
    if (bs.size() < 2)
        throw std::invalid_argument("need at least two records to fit b");
    std::sort(bs.begin(), bs.end());
    const size_t n = bs.size();
    double median;
    if (n % 2 == 1) {
        median = bs[n / 2];
    } else {
        median = 0.5 * (bs[n / 2 - 1] + bs[n / 2]);
    }
    if (!std::isfinite(median))
        throw std::invalid_argument(
            "too many records sit at or below the expected gap to fit b");
    return median;
}

DispersionFractions e1_residual_fractions(
    const std::vector<GapRecord>& records, const EstimatorParams& params) {
    if (records.empty())
        throw std::invalid_argument("no records to measure dispersion on");
    size_t within2 = 0, within1 = 0;
    for (const GapRecord& r : records) {
        const double p = static_cast<double>(r.p);
        const double a = expected_gap(p, params);
        const double res = (static_cast<double>(r.gap) - e1(p, params)) / a;
        if (std::abs(res) <= 2.0) ++within2;
        if (std::abs(res) <= 1.0) ++within1;
    }
    const double n = static_cast<double>(records.size());
    return {static_cast<double>(within2) / n,
            static_cast<double>(within1) / n};
}

size_t sign_changes(const std::vector<GapRecord>& records,
                    const EstimatorParams& params) {
    size_t changes = 0;
    int prev_sign = 0;
    for (const GapRecord& r : records) {
        const double res =
            static_cast<double>(r.gap) - e1(static_cast<double>(r.p), params);
        const int s = (res > 0.0) - (res < 0.0);
        if (s == 0) continue;
        if (prev_sign != 0 && s != prev_sign) ++changes;
        prev_sign = s;
    }
    return changes;
}

}  // namespace ktgaps
