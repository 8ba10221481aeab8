#ifndef KTGAPS_ESTIMATORS_HPP
#define KTGAPS_ESTIMATORS_HPP

#include <cstddef>
#include <vector>

#include "ktgaps/hl.hpp"
#include "ktgaps/records.hpp"

namespace ktgaps {

struct EstimatorParams {
    double C = 1.0;
    size_t k = 1;
    double b = 0.0;

    static EstimatorParams with_default_b(const HLConstant& c, size_t k);
};

// Default b: 2/k for k >= 2, 3 for k = 1.
double default_b(size_t k);

// a(x) = C * ln^k x, the expected average gap near x. Domain x >= 3.
double expected_average_gap(double x, const EstimatorParams& params);

// Record-gap estimators, all clamped below by a:
//   E1 = max(a, a*ln(p/a) - b*a)
//   E2 = max(a, a*ln(p/a))
//   E3 = a*ln(p) = C * ln^{k+1} p
double e1(double p, const EstimatorParams& params);
double e2(double p, const EstimatorParams& params);
double e3(double p, const EstimatorParams& params);

struct TrendlineFit {
    size_t k = 0;
    uint64_t range_lo = 0;
    uint64_t range_hi = 0;
    double slope = 0.0;
    size_t n_points = 0;
};

// Zero-intercept least squares gap ~ slope * xi with xi = ln^{k+1} p, over
// records with lo < p < hi. Throws if the selection is empty.
TrendlineFit trendline_slope(const std::vector<GapRecord>& records, size_t k,
                             uint64_t lo, uint64_t hi);

// The b for which the counts of records strictly above and strictly below
// the E1 curve differ by at most one: the median of per-record residuals
// b_i = (a*ln(p/a) - gap)/a, where records with gap <= a (below the clamp
// for every b) contribute +infinity. Throws on fewer than 2 records or if
// the median itself is unbounded.
double fit_b_median(const std::vector<GapRecord>& records,
                    const EstimatorParams& params);

// Fractions of records whose residual (gap - E1)/a lies in [-2, 2] and in
// [-1, 1].
struct DispersionFractions {
    double within_2 = 0.0;
    double within_1 = 0.0;
};
DispersionFractions e1_residual_fractions(const std::vector<GapRecord>& records,
                                          const EstimatorParams& params);

// Diagnostic: how often the sign of gap - E1 flips across the record
// sequence. Records on the curve keep the previous sign.
size_t sign_changes(const std::vector<GapRecord>& records,
                    const EstimatorParams& params);

}  // namespace ktgaps

#endif
