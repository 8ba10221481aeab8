#ifndef KTGAPS_EVSTATS_HPP
#define KTGAPS_EVSTATS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ktgaps {

// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286;

// Gumbel (max extreme value) distribution: CDF exp(-e^{-(t-mu)/beta}),
// mode mu, scale beta, mean mu + gamma*beta, median mu - beta*ln(ln 2).
double gumbel_cdf(double t, double mu, double beta);
double gumbel_pdf(double t, double mu, double beta);
double gumbel_quantile(double q, double mu, double beta);

struct GumbelFit {
    double mu = 0.0;
    double beta = 0.0;
    size_t n = 0;
    double ks_stat = 0.0;
    double ad_stat = 0.0;
    unsigned iterations = 0;
};

// Maximum-likelihood Gumbel fit. beta solves the fixed point
//   beta = mean(x) - sum(x_i e^{-x_i/beta}) / sum(e^{-x_i/beta})
// from beta_0 = sd(x)*sqrt(6)/pi, tolerance 1e-10, at most 200 iterations;
// then mu = -beta * ln(mean(e^{-x_i/beta})). Throws on n < 8, a constant
// sample, or non-convergence. ks_stat/ad_stat are filled against the fit.
GumbelFit gumbel_fit_mle(const std::vector<double>& sample);

// Distribution function for goodness-of-fit statistics.
struct FittedCdf {
    std::string name;
    // Parameter meaning depends on the family; cdf() is the contract.
    double p1 = 0.0;
    double p2 = 0.0;
    double cdf(double x) const;
};

// Moment fits on the sample: normal (mean, sd), logistic (mean,
// sd*sqrt(3)/pi), uniform (min, max), gumbel (explicit parameters).
FittedCdf fit_normal_moments(const std::vector<double>& sample);
FittedCdf fit_logistic_moments(const std::vector<double>& sample);
FittedCdf fit_uniform_minmax(const std::vector<double>& sample);
FittedCdf gumbel_cdf_of(double mu, double beta);

// KS = max_i max(i/n - F(x_i), F(x_i) - (i-1)/n) over the sorted sample.
// AD = -n - (1/n) sum (2i-1) [ln F(x_i) + ln(1 - F(x_{n+1-i}))].
// F values are clamped into [1e-300, 1 - 1e-16]; *clamped reports whether
// the clamp fired.
double ks_statistic(const std::vector<double>& sample, const FittedCdf& fit,
                    bool* clamped = nullptr);
double ad_statistic(const std::vector<double>& sample, const FittedCdf& fit,
                    bool* clamped = nullptr);

// Closed forms for the maximum waiting interval among Poisson events of mean
// spacing a over horizon T, and for the longest success run in n Bernoulli(P)
// trials (q = 1 - P):
//   E(max interval) = a*ln(T/a) + gamma*a        SD(max interval) = pi*a/sqrt(6)
//   E(R_n) = log_{1/P}(n q) + gamma/ln(1/P) - 1/2
//   Var(R_n) = pi^2 / (6 ln^2(1/P)) + 1/12
double expected_max_interval(double a, double T);  // requires a > 1, T > 10a
double sd_max_interval(double a);
double expected_longest_run(double P, double n);  // requires 1/2 < P < 1, nq >= 10
double var_longest_run(double P);

enum class SimModel { exponential_intervals, geometric_runs };

struct SimSpec {
    SimModel model = SimModel::exponential_intervals;
    double a = 0.0;       // mean interval (exponential model)
    double P = 0.0;       // heads probability (geometric model)
    double horizon = 0.0; // T: time span or toss count
    uint64_t trials = 1;
    uint64_t seed = 42;
};

struct SimSummary {
    double mean_max = 0.0;
    double sd_max = 0.0;
    std::vector<double> maxima;  // per trial, in trial order
};

// Monte-Carlo per-trial extreme: exponential model draws interarrivals of
// mean a until the horizon and keeps the largest completed interval;
// geometric model records the longest heads run in `horizon` tosses, the
// final run truncated at the horizon. Each trial uses an independent
// substream derived from (seed, trial index), so results do not depend on
// the thread count.
SimSummary simulate_extremes(const SimSpec& spec, unsigned threads = 1);

}  // namespace ktgaps

#endif
