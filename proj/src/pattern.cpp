#include "ktgaps/pattern.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ktgaps {

namespace {

std::vector<uint64_t> small_primes_upto(size_t n) {
    std::vector<uint64_t> out;
    for (uint64_t q = 2; q <= n; ++q) {
        bool prime = true;
        for (uint64_t d = 2; d * d <= q; ++d)
            if (q % d == 0) { prime = false; break; }
        if (prime) out.push_back(q);
    }
    return out;
}

}  // namespace

bool is_admissible(const std::vector<int64_t>& offsets) {
    if (offsets.empty())
        throw std::invalid_argument("offsets must be non-empty");
    if (offsets.front() != 0)
        throw std::invalid_argument("offsets must start at 0");
    for (size_t i = 0; i < offsets.size(); ++i) {
        if (offsets[i] < 0)
            throw std::invalid_argument("offsets must be non-negative");
        if (i > 0 && offsets[i] <= offsets[i - 1])
            throw std::invalid_argument("offsets must be strictly increasing");
    }
    for (uint64_t q : small_primes_upto(offsets.size())) {
        std::set<uint64_t> residues;
        for (int64_t d : offsets) residues.insert(static_cast<uint64_t>(d) % q);
        if (residues.size() == q) return false;
    }
    return true;
}

TuplePattern::TuplePattern(std::string name_, std::vector<uint64_t> offsets_)
    : name(std::move(name_)), offsets(std::move(offsets_)) {
    if (name.empty()) throw std::invalid_argument("pattern name must be non-empty");
    std::vector<int64_t> signed_offsets(offsets.begin(), offsets.end());
    if (!is_admissible(signed_offsets))
        throw std::invalid_argument("pattern " + name + " is not admissible");
    for (size_t i = 1; i < offsets.size(); ++i)
        if (offsets[i] % 2 != 0)
            throw std::invalid_argument("offsets beyond the first must be even");
}

const std::vector<TuplePattern>& builtin_patterns() {
    static const std::vector<TuplePattern> patterns = {
        TuplePattern("prime", {0}),
        TuplePattern("twin", {0, 2}),
        TuplePattern("quad", {0, 2, 6, 8}),
        TuplePattern("sextuplet", {0, 4, 6, 10, 12, 16}),
    };
    return patterns;
}

const TuplePattern& builtin_pattern(const std::string& name) {
    for (const TuplePattern& p : builtin_patterns())
        if (p.name == name) return p;
    throw std::invalid_argument("unknown pattern: " + name);
}

std::vector<uint64_t> parse_offsets(const std::string& text) {
    std::vector<uint64_t> out;
    std::string item;
    std::string normalized = text;
    std::replace(normalized.begin(), normalized.end(), ':', ',');
    std::istringstream in(normalized);
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        size_t pos = 0;
        long long v = std::stoll(item, &pos);
        if (pos != item.size() || v < 0)
            throw std::invalid_argument("bad offset: " + item);
        out.push_back(static_cast<uint64_t>(v));
    }
    if (out.empty()) throw std::invalid_argument("no offsets in: " + text);
    return out;
}

}  // namespace ktgaps
