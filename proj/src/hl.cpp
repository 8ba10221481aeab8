#include "ktgaps/hl.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ktgaps/sieve.hpp"

namespace ktgaps {

namespace {

struct ProductForm {
    std::vector<uint64_t> offsets;
    double lead;
    uint32_t p_min;
    int p_power;      // exponent of p in the numerator
    uint64_t p_minus; // numerator factor (p - p_minus)
    int denom_power;  // exponent of (p - 1) in the denominator
};

// The three displayed Euler products. Each term is p^a (p - m) / (p-1)^e.
const ProductForm* product_form(const TuplePattern& pattern) {
    static const std::vector<ProductForm> forms = {
        {{0, 2}, 2.0, 3, 1, 2, 2},
        {{0, 2, 6, 8}, 27.0 / 2.0, 5, 3, 4, 4},
        {{0, 4, 6, 10, 12, 16}, 759375.0 / 8192.0, 7, 5, 6, 6},
    };
    for (const ProductForm& f : forms)
        if (f.offsets == pattern.offsets) return &f;
    return nullptr;
}

struct BuiltinConstant {
    std::vector<uint64_t> offsets;
    double H;
    double C;
};

// H from the Euler products, C as conventionally tabled alongside them.
const std::vector<BuiltinConstant>& builtin_constants() {
    static const std::vector<BuiltinConstant> table = {
        {{0}, 1.0, 1.0},
        {{0, 2}, 1.3203236316, 0.75739},
        {{0, 2, 6, 8}, 4.1511808632, 0.240895},
        {{0, 4, 6, 10, 12, 16}, 17.2986123004, 0.057808},
    };
    return table;
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb,
                        double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps,
                            depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double eps = rel_tol * std::max(std::abs(whole), 1.0);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, 60);
}

std::string strip(const std::string& s) {
    const size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

double hl_truncated_product(const TuplePattern& pattern,
                            uint32_t prime_limit) {
    const ProductForm* form = product_form(pattern);
    if (form == nullptr)
        throw std::invalid_argument(
            "no product formula for pattern " + pattern.name +
            "; use the precomputed constants table");
    if (prime_limit < 11)
        throw std::invalid_argument("prime_limit must be at least 11");
    double log_sum = 0.0;
    for (uint32_t p : simple_sieve(prime_limit)) {
        if (p < form->p_min) continue;
        const double pd = p;
        log_sum += form->p_power * std::log(pd) +
                   std::log(pd - static_cast<double>(form->p_minus)) -
                   form->denom_power * std::log(pd - 1.0);
    }
    return form->lead * std::exp(log_sum);
}

ConstantsRegistry::ConstantsRegistry() {
    for (const BuiltinConstant& b : builtin_constants())
        entries_.push_back(
            {b.offsets, {b.H, b.C, ConstantSource::precomputed}});
}

void ConstantsRegistry::add(const std::vector<uint64_t>& offsets, double H,
                            ConstantSource source) {
    if (!(H > 0.0)) throw std::invalid_argument("H must be positive");
    for (Entry& e : entries_) {
        if (e.offsets == offsets) {
            e.value = {H, 1.0 / H, source};
            return;
        }
    }
    entries_.push_back({offsets, {H, 1.0 / H, source}});
}

void ConstantsRegistry::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open constants file: " + path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        std::istringstream row(s);
        std::string name, offsets_text, h_text;
        if (!std::getline(row, name, ',') ||
            !std::getline(row, offsets_text, ',') ||
            !std::getline(row, h_text))
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected name,offsets,H");
        const std::vector<uint64_t> offsets = parse_offsets(offsets_text);
        TuplePattern validated(strip(name), offsets);
        const double H = std::stod(strip(h_text));
        add(offsets, H, ConstantSource::user_supplied);
    }
}

bool ConstantsRegistry::has(const TuplePattern& pattern) const {
    for (const Entry& e : entries_)
        if (e.offsets == pattern.offsets) return true;
    return false;
}

HLConstant ConstantsRegistry::constant_for(const TuplePattern& pattern) const {
    for (const Entry& e : entries_)
        if (e.offsets == pattern.offsets) return e.value;
    throw std::invalid_argument("no constant known for pattern " +
                                pattern.name +
                                "; supply one via a constants file");
}

double hl_count_estimate(const HLConstant& c, size_t k, double x) {
    if (!(x >= 2.0)) throw std::invalid_argument("x must be at least 2");
    if (x == 2.0) return 0.0;
    const double kd = static_cast<double>(k);
    const auto integrand = [kd](double t) {
        return std::exp(-kd * std::log(std::log(t)));
    };
    return c.H * integrate(integrand, 2.0, x, 1e-9);
}

}  // namespace ktgaps
