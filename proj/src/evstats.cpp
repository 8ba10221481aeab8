#include "ktgaps/evstats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

namespace ktgaps {

namespace {

constexpr double kPi = 3.14159265358979323846;

double mean_of(const std::vector<double>& x) {
    return std::accumulate(x.begin(), x.end(), 0.0) /
           static_cast<double>(x.size());
}

double sample_sd(const std::vector<double>& x, double mean) {
    if (x.size() < 2) return 0.0;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

uint64_t splitmix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class TrialRng {
  public:
    TrialRng(uint64_t seed, uint64_t trial)
        : gen_(splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * (trial + 1)))) {}

    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

  private:
    std::mt19937_64 gen_;
};

double run_exponential_trial(TrialRng& rng, double a, double horizon) {
    double cum = 0.0;
    double best = 0.0;
    for (;;) {
        const double len = -a * std::log1p(-rng.uniform());
        if (cum + len > horizon) return best;
        cum += len;
        best = std::max(best, len);
    }
}

double run_geometric_trial(TrialRng& rng, double P, uint64_t tosses) {
    const double log_p = std::log(P);
    uint64_t remaining = tosses;
    uint64_t best = 0;
    while (remaining > 0) {
        const double u = rng.uniform();
        uint64_t run;
        if (u <= 0.0) {
            run = remaining;
        } else {
            const double r = std::floor(std::log(u) / log_p);
            run = r >= static_cast<double>(remaining)
                      ? remaining
                      : static_cast<uint64_t>(r);
        }
        const uint64_t visible = std::min(run, remaining);
        best = std::max(best, visible);
        const uint64_t consumed = run >= remaining ? remaining : run + 1;
        remaining -= consumed;
    }
    return static_cast<double>(best);
}

}  // namespace

double gumbel_cdf(double t, double mu, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    return std::exp(-std::exp(-(t - mu) / beta));
}

double gumbel_pdf(double t, double mu, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    const double z = (t - mu) / beta;
    return std::exp(-z - std::exp(-z)) / beta;
}

double gumbel_quantile(double q, double mu, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("quantile level must lie in (0, 1)");
    return mu - beta * std::log(-std::log(q));
}

double FittedCdf::cdf(double t) const {
    if (name == "gumbel") return gumbel_cdf(t, p1, p2);
    if (name == "normal")
        return 0.5 * std::erfc(-(t - p1) / (p2 * std::sqrt(2.0)));
    if (name == "logistic") return 1.0 / (1.0 + std::exp(-(t - p1) / p2));
    if (name == "uniform") {
        if (t <= p1) return 0.0;
        if (t >= p2) return 1.0;
        return (t - p1) / (p2 - p1);
    }
    throw std::logic_error("unknown distribution name: " + name);
}

FittedCdf gumbel_cdf_of(double mu, double beta) {
    return {"gumbel", mu, beta};
}

FittedCdf fit_normal_moments(const std::vector<double>& x) {
    if (x.size() < 2)
        throw std::invalid_argument("need at least two points to fit");
    const double m = mean_of(x);
    const double s = sample_sd(x, m);
    if (!(s > 0.0)) throw std::invalid_argument("sample has zero spread");
    return {"normal", m, s};
}

FittedCdf fit_logistic_moments(const std::vector<double>& x) {
    if (x.size() < 2)
        throw std::invalid_argument("need at least two points to fit");
    const double m = mean_of(x);
    const double s = sample_sd(x, m);
    if (!(s > 0.0)) throw std::invalid_argument("sample has zero spread");
    return {"logistic", m, s * std::sqrt(3.0) / kPi};
}

FittedCdf fit_uniform_minmax(const std::vector<double>& x) {
    if (x.empty()) throw std::invalid_argument("sample is empty");
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    if (!(*hi > *lo)) throw std::invalid_argument("sample has zero spread");
    return {"uniform", *lo, *hi};
}

double ks_statistic(const std::vector<double>& x, const FittedCdf& fit,
                    bool* clamped) {
    if (x.empty()) throw std::invalid_argument("sample is empty");
    if (clamped != nullptr) *clamped = false;
    std::vector<double> s(x);
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (size_t i = 0; i < s.size(); ++i) {
        const double f = fit.cdf(s[i]);
        const double hi = (static_cast<double>(i) + 1.0) / n - f;
        const double lo = f - static_cast<double>(i) / n;
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

double ad_statistic(const std::vector<double>& x, const FittedCdf& fit,
                    bool* clamped) {
    if (x.empty()) throw std::invalid_argument("sample is empty");
    std::vector<double> s(x);
    std::sort(s.begin(), s.end());
    const size_t n = s.size();
    bool any_clamped = false;
    const auto clamp_cdf = [&](double t) {
        double f = fit.cdf(t);
        if (f < 1e-300) {
            f = 1e-300;
            any_clamped = true;
        } else if (f > 1.0 - 1e-16) {
            f = 1.0 - 1e-16;
            any_clamped = true;
        }
        return f;
    };
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double w = 2.0 * static_cast<double>(i) + 1.0;
        sum += w * (std::log(clamp_cdf(s[i])) +
                    std::log1p(-clamp_cdf(s[n - 1 - i])));
    }
    if (clamped != nullptr) *clamped = any_clamped;
    const double nd = static_cast<double>(n);
    return -nd - sum / nd;
}

GumbelFit gumbel_fit_mle(const std::vector<double>& x) {
    if (x.size() < 8)
        throw std::invalid_argument(
            "need at least eight points for a location-scale fit");
    const size_t n = x.size();
    const double mean = mean_of(x);
    const double sd = sample_sd(x, mean);
    if (!(sd > 0.0))
        throw std::invalid_argument("sample is constant; scale is undefined");
    const double x_min = *std::min_element(x.begin(), x.end());
    std::vector<double> y(n);
    for (size_t i = 0; i < n; ++i) y[i] = x[i] - x_min;
    const double y_mean = mean - x_min;

    double beta = sd * std::sqrt(6.0) / kPi;
    unsigned iterations = 0;
    bool converged = false;
    for (unsigned it = 1; it <= 200; ++it) {
        double num = 0.0, den = 0.0;
        for (double v : y) {
            const double w = std::exp(-v / beta);
            num += v * w;
            den += w;
        }
        const double next = y_mean - num / den;
        iterations = it;
        if (!(next > 0.0))
            throw std::runtime_error(
                "scale iteration left the positive domain");
        if (std::abs(next - beta) < 1e-10) {
            beta = next;
            converged = true;
            break;
        }
        beta = next;
    }
    if (!converged)
        throw std::runtime_error(
            "scale iteration did not settle within 200 steps (last " +
            std::to_string(beta) + ")");
    double acc = 0.0;
    for (double v : y) acc += std::exp(-v / beta);
    const double mu =
        x_min - beta * std::log(acc / static_cast<double>(n));

    GumbelFit fit;
    fit.mu = mu;
    fit.beta = beta;
    fit.n = n;
    fit.iterations = iterations;
    const FittedCdf cdf = gumbel_cdf_of(mu, beta);
    fit.ks_stat = ks_statistic(x, cdf);
    fit.ad_stat = ad_statistic(x, cdf);
    return fit;
}

double expected_max_interval(double a, double T) {
    if (!(a > 1.0))
        throw std::invalid_argument("mean interval a must exceed 1");
    if (!(T > 10.0 * a))
        throw std::invalid_argument("horizon must exceed 10 mean intervals");
    return a * std::log(T / a) + kEulerGamma * a;
}

double sd_max_interval(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
    return kPi * a / std::sqrt(6.0);
}

double expected_longest_run(double P, double n) {
    if (!(P > 0.5 && P < 1.0))
        throw std::invalid_argument("P must lie in (1/2, 1)");
    const double q = 1.0 - P;
    if (!(n * q >= 10.0))
        throw std::invalid_argument("expected failure count must reach 10");
    const double log_inv = -std::log(P);
    return std::log(n * q) / log_inv + kEulerGamma / log_inv - 0.5;
}

double var_longest_run(double P) {
    if (!(P > 0.0 && P < 1.0))
        throw std::invalid_argument("P must lie in (0, 1)");
    const double log_inv = -std::log(P);
    return kPi * kPi / (6.0 * log_inv * log_inv) + 1.0 / 12.0;
}

SimSummary simulate_extremes(const SimSpec& spec, unsigned threads) {
    if (spec.trials < 1)
        throw std::invalid_argument("need at least one trial");
    uint64_t tosses = 0;
    if (spec.model == SimModel::exponential_intervals) {
        if (!(spec.a > 0.0))
            throw std::invalid_argument("mean interval a must be positive");
        if (!(spec.horizon > spec.a))
            throw std::invalid_argument(
                "horizon must exceed one mean interval");
    } else {
        if (!(spec.P > 0.0 && spec.P < 1.0))
            throw std::invalid_argument("P must lie in (0, 1)");
        if (!(spec.horizon >= 1.0))
            throw std::invalid_argument("need a horizon of at least 1 toss");
        tosses = static_cast<uint64_t>(spec.horizon);
    }

    SimSummary out;
    out.maxima.assign(spec.trials, 0.0);
    const auto run_block = [&](uint64_t begin, uint64_t end) {
        for (uint64_t t = begin; t < end; ++t) {
            TrialRng rng(spec.seed, t);
            out.maxima[t] =
                spec.model == SimModel::exponential_intervals
                    ? run_exponential_trial(rng, spec.a, spec.horizon)
                    : run_geometric_trial(rng, spec.P, tosses);
        }
    };

    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    threads = static_cast<unsigned>(
        std::min<uint64_t>(threads, spec.trials));
    if (threads <= 1) {
        run_block(0, spec.trials);
    } else {
        std::vector<std::thread> pool;
        const uint64_t chunk = (spec.trials + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            const uint64_t begin = static_cast<uint64_t>(w) * chunk;
            const uint64_t end = std::min<uint64_t>(begin + chunk, spec.trials);
            if (begin >= end) break;
            pool.emplace_back(run_block, begin, end);
        }
        for (std::thread& th : pool) th.join();
    }

    const double m = mean_of(out.maxima);
    out.mean_max = m;
    out.sd_max = sample_sd(out.maxima, m);
    return out;
}

}  // namespace ktgaps
