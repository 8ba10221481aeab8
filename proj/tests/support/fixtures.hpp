#ifndef KTGAPS_TESTS_SUPPORT_FIXTURES_HPP
#define KTGAPS_TESTS_SUPPORT_FIXTURES_HPP

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ktgaps/records.hpp"

namespace fixtures {

struct Row {
    uint64_t p = 0;
    uint64_t gap = 0;
    double g_star = 0.0;
    std::string g_star_text;
};

inline std::vector<Row> load(const std::string& name) {
    const std::string path =
        std::string(KTGAPS_DATA_DIR) + "/fixtures/" + name + "_records.csv";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixture: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty fixture: " + path);
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string p_text, gap_text, g_text;
        std::getline(fields, p_text, ',');
        std::getline(fields, gap_text, ',');
        std::getline(fields, g_text, ',');
        Row row;
        row.p = std::stoull(p_text);
        row.gap = std::stoull(gap_text);
        row.g_star = std::stod(g_text);
        row.g_star_text = g_text;
        rows.push_back(row);
    }
    return rows;
}

inline std::vector<ktgaps::GapRecord> as_records(const std::vector<Row>& rows) {
    std::vector<ktgaps::GapRecord> records;
    records.reserve(rows.size());
    for (const Row& row : rows) {
        ktgaps::GapRecord r;
        r.p = row.p;
        r.prev = row.p - row.gap;
        r.gap = row.gap;
        r.g_star = row.g_star;
        records.push_back(r);
    }
    return records;
}

}  // namespace fixtures

#endif
