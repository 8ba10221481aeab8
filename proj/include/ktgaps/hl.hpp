#ifndef KTGAPS_HL_HPP
#define KTGAPS_HL_HPP

#include <string>
#include <vector>

#include "ktgaps/pattern.hpp"

namespace ktgaps {

enum class ConstantSource { precomputed, truncated_product, user_supplied };

// Density constant H for one pattern and its reciprocal C = 1/H. The
// expected tuple count below x is H * integral(2, x, dt/ln^k t) and the
// expected average gap near x is C * ln^k x.
struct HLConstant {
    double H = 0.0;
    double C = 0.0;
    ConstantSource source = ConstantSource::precomputed;
};

// Truncated Euler product for the built-in twin/quad/sextuplet formulas:
//   H_2 = 2        * prod_{3 <= p <= limit} p(p-2)/(p-1)^2
//   H_4 = 27/2     * prod_{5 <= p <= limit} p^3(p-4)/(p-1)^4
//   H_6 = 15^5/2^13 * prod_{7 <= p <= limit} p^5(p-6)/(p-1)^6
// Converges slowly; use constant_for() for authoritative values.
double hl_truncated_product(const TuplePattern& pattern, uint32_t prime_limit);

// Registry of pattern constants: the built-in table (C_1 = 1, C_2 = 0.75739,
// C_4 = 0.240895, C_6 = 0.057808; H = 1/C) plus any entries loaded from a
// constants file of `name,offset:offset:...,H` lines.
class ConstantsRegistry {
  public:
    ConstantsRegistry();
    void load_file(const std::string& path);
    void add(const std::vector<uint64_t>& offsets, double H,
             ConstantSource source);
    // Throws std::invalid_argument if the pattern has no known constant.
    HLConstant constant_for(const TuplePattern& pattern) const;
    bool has(const TuplePattern& pattern) const;

  private:
    struct Entry {
        std::vector<uint64_t> offsets;
        HLConstant value;
    };
    std::vector<Entry> entries_;
};

// H * integral(2, x, dt/ln^k t) by adaptive Simpson quadrature, relative
// tolerance 1e-9. x = 2 gives 0; x < 2 throws.
double hl_count_estimate(const HLConstant& c, size_t k, double x);

}  // namespace ktgaps

#endif
