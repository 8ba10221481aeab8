#ifndef KTGAPS_PATTERN_HPP
#define KTGAPS_PATTERN_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ktgaps {

// An admissible k-tuple offset pattern. offsets[0] is always 0; a tuple at p
// consists of the primes p + d for each offset d.
struct TuplePattern {
    std::string name;
    std::vector<uint64_t> offsets;

    TuplePattern(std::string name, std::vector<uint64_t> offsets);

    size_t k() const { return offsets.size(); }
    uint64_t span() const { return offsets.back(); }
};

// True iff for every prime q <= k the offsets leave at least one residue
// class mod q uncovered. Throws on unsorted, negative-like, or empty input,
// or if offsets[0] != 0.
bool is_admissible(const std::vector<int64_t>& offsets);

// Built-in patterns: prime [0], twin [0,2], quad [0,2,6,8],
// sextuplet [0,4,6,10,12,16].
const std::vector<TuplePattern>& builtin_patterns();

// Lookup by name; throws std::invalid_argument for unknown names.
const TuplePattern& builtin_pattern(const std::string& name);

// Parses "0,2,6" or "0:2:6" into offsets for a custom pattern.
std::vector<uint64_t> parse_offsets(const std::string& text);

}  // namespace ktgaps

#endif
