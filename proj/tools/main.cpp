#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ktgaps/estimators.hpp"
#include "ktgaps/evstats.hpp"
#include "ktgaps/hl.hpp"
#include "ktgaps/legendre.hpp"
#include "ktgaps/pattern.hpp"
#include "ktgaps/records.hpp"
#include "ktgaps/sieve.hpp"

namespace {

using nlohmann::json;
using namespace ktgaps;

uint64_t parse_bound(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty numeric bound");
    if (text.find_first_not_of("0123456789") == std::string::npos) {
        try {
            return std::stoull(text);
        } catch (const std::exception&) {
            throw std::invalid_argument("bound out of range: " + text);
        }
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == nullptr || *end != '\0')
        throw std::invalid_argument("cannot parse bound: " + text);
    if (!(v >= 0.0)) throw std::invalid_argument("bound must not be negative");
    if (v > 9.223372036854775808e18)
        throw std::invalid_argument("bound exceeds 2^63: " + text);
    if (v != std::floor(v))
        throw std::invalid_argument("bound must be an integer: " + text);
    return static_cast<uint64_t>(v);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

// Output sink that writes to a file, or to stdout when the path is "-".
class OutSink {
  public:
    OutSink(const std::string& path, bool append) {
        if (path != "-") {
            file_.open(path, append ? std::ios::app : std::ios::trunc);
            if (!file_)
                throw std::invalid_argument("cannot open output file: " +
                                            path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

std::vector<std::string> read_lines(const std::string& path) {
    std::vector<std::string> lines;
    std::string line;
    if (path == "-") {
        while (std::getline(std::cin, line)) lines.push_back(line);
        return lines;
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

void strip_cr(std::vector<std::string>& lines) {
    for (std::string& l : lines)
        if (!l.empty() && l.back() == '\r') l.pop_back();
}

std::string trim_ws(const std::string& s) {
    const size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

// Expands "--config FILE" in place into the long options named by the
// file's key=value lines. Keys mirror option names without the leading
// dashes; blank lines and lines starting with '#' are skipped. Keys
// already present on the command line are dropped, so explicit options
// override file-supplied values.
std::vector<std::string> apply_config_file(std::vector<std::string> args) {
    bool found = false;
    size_t insert_at = 0;
    std::string path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            found = true;
            path = args[i + 1];
            insert_at = i + 2;
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            found = true;
            path = args[i].substr(9);
            insert_at = i + 1;
            break;
        }
    }
    if (!found) return args;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::vector<std::string> expanded;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string entry = trim_ws(line);
        if (entry.empty() || entry[0] == '#') continue;
        const size_t eq = entry.find('=');
        const std::string key =
            eq == std::string::npos ? "" : trim_ws(entry.substr(0, eq));
        if (key.empty())
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": expected key=value");
        if (key == "config")
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": config files cannot chain");
        const std::string flag = "--" + key;
        const bool given =
            std::any_of(args.begin(), args.end(), [&](const std::string& a) {
                return a == flag || a.rfind(flag + "=", 0) == 0;
            });
        if (!given)
            expanded.push_back(flag + "=" + trim_ws(entry.substr(eq + 1)));
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(insert_at),
                expanded.begin(), expanded.end());
    return args;
}

void add_config_option(CLI::App* cmd) {
    cmd->add_option("--config",
                    "Key=value file applied as defaults for this command");
}

// Options shared by subcommands that select a pattern and its constant.
struct PatternArgs {
    std::string pattern;
    std::string offsets;
    std::string name = "custom";
    std::string constants_file;
    double hk = 0.0;
    double ck = 0.0;
};

void add_pattern_options(CLI::App* cmd, PatternArgs& args,
                         const std::string& default_pattern) {
    args.pattern = default_pattern;
    cmd->add_option("--pattern", args.pattern,
                    "Built-in pattern name (prime, twin, quad, sextuplet) or "
                    "a name declared in --constants-file");
    cmd->add_option("--offsets", args.offsets,
                    "Custom offsets, e.g. 0,4,6 or 0:4:6 (first must be 0)");
    cmd->add_option("--name", args.name,
                    "Label for a custom --offsets pattern");
    cmd->add_option("--constants-file", args.constants_file,
                    "CSV of name,offsets,H rows adding patterns/constants");
    auto* hk = cmd->add_option(
        "--hk", args.hk, "Override the density constant H for the pattern");
    auto* ck = cmd->add_option(
        "--ck", args.ck, "Override the gap constant C = 1/H for the pattern");
    hk->excludes(ck);
}

// Patterns declared in a constants file, so --pattern can name them.
std::vector<TuplePattern> file_patterns(const std::string& path) {
    std::vector<TuplePattern> out;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open constants file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() < 3) continue;
        std::string name = fields[0];
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        out.emplace_back(name, parse_offsets(fields[1]));
    }
    return out;
}

TuplePattern resolve_pattern(const PatternArgs& args,
                             ConstantsRegistry& registry) {
    if (!args.constants_file.empty()) registry.load_file(args.constants_file);
    if (!args.offsets.empty())
        return TuplePattern(args.name, parse_offsets(args.offsets));
    for (const TuplePattern& p : builtin_patterns())
        if (p.name == args.pattern) return p;
    if (!args.constants_file.empty())
        for (const TuplePattern& p : file_patterns(args.constants_file))
            if (p.name == args.pattern) return p;
    throw std::invalid_argument(
        "unknown pattern '" + args.pattern +
        "'; use a built-in name, --offsets, or a --constants-file entry");
}

HLConstant resolve_constant(const PatternArgs& args,
                            const TuplePattern& pattern,
                            const ConstantsRegistry& registry) {
    if (args.hk != 0.0) {
        if (!(args.hk > 0.0))
            throw std::invalid_argument("--hk must be positive");
        return {args.hk, 1.0 / args.hk, ConstantSource::user_supplied};
    }
    if (args.ck != 0.0) {
        if (!(args.ck > 0.0))
            throw std::invalid_argument("--ck must be positive");
        return {1.0 / args.ck, args.ck, ConstantSource::user_supplied};
    }
    return registry.constant_for(pattern);
}

json record_to_json(const std::string& name, size_t k, const GapRecord& r) {
    json j;
    j["pattern"] = name;
    j["k"] = k;
    j["p"] = r.p;
    j["prev"] = r.prev;
    j["gap"] = r.gap;
    j["a"] = r.a;
    j["g_star"] = r.g_star;
    return j;
}

// ---------------------------------------------------------------- scan ----

struct ScanArgs {
    PatternArgs pattern;
    std::string max_text;
    std::string out = "-";
    std::string format = "csv";
    std::string checkpoint;
    std::string resume;
    unsigned threads = 1;
};

void run_scan(const ScanArgs& args) {
    ConstantsRegistry registry;
    const TuplePattern pattern = resolve_pattern(args.pattern, registry);
    const HLConstant constant =
        resolve_constant(args.pattern, pattern, registry);
    const uint64_t x_max = parse_bound(args.max_text);

    ScanCheckpoint resume_cp;
    ScanOptions options;
    options.threads = args.threads;
    if (!args.resume.empty()) {
        resume_cp = ScanCheckpoint::load(args.resume);
        options.resume = &resume_cp;
    }
    ScanCheckpoint final_cp;
    const std::vector<GapRecord> records =
        scan_records(pattern, x_max, constant, options, &final_cp);

    const bool append = options.resume != nullptr;
    OutSink sink(args.out, append);
    if (args.format == "csv") {
        write_records_csv(sink.stream(), pattern.name, pattern.k(), records,
                          !append);
    } else {
        json arr = json::array();
        for (const GapRecord& r : records)
            arr.push_back(record_to_json(pattern.name, pattern.k(), r));
        sink.stream() << arr.dump(2) << '\n';
    }
    if (!sink.stream())
        throw std::runtime_error("failed writing output to " + args.out);
    if (!args.checkpoint.empty()) final_cp.save(args.checkpoint);
}

// ------------------------------------------------------------ estimate ----

struct EstimateArgs {
    PatternArgs pattern;
    std::vector<double> points;
    std::vector<double> range;
    double b = std::numeric_limits<double>::quiet_NaN();
    std::string out = "-";
    std::string format = "csv";
};

void run_estimate(const EstimateArgs& args) {
    ConstantsRegistry registry;
    const TuplePattern pattern = resolve_pattern(args.pattern, registry);
    const HLConstant constant =
        resolve_constant(args.pattern, pattern, registry);
    EstimatorParams params = EstimatorParams::with_default_b(constant,
                                                             pattern.k());
    if (!std::isnan(args.b)) params.b = args.b;

    std::vector<double> ps = args.points;
    if (!args.range.empty()) {
        const double lo = args.range[0];
        const double hi = args.range[1];
        const size_t count = static_cast<size_t>(args.range[2]);
        if (!(lo >= 3.0) || !(hi >= lo))
            throw std::invalid_argument("range endpoints must satisfy "
                                        "3 <= lo <= hi");
        if (count < 1)
            throw std::invalid_argument("range count must be positive");
        if (count == 1) {
            ps.push_back(lo);
        } else {
            const double step =
                (std::log(hi) - std::log(lo)) / static_cast<double>(count - 1);
            for (size_t i = 0; i < count; ++i)
                ps.push_back(std::exp(std::log(lo) +
                                      step * static_cast<double>(i)));
        }
    }
    if (ps.empty())
        throw std::invalid_argument("supply evaluation points via --p or "
                                    "--range");
    for (double p : ps)
        if (!(p >= 3.0))
            throw std::invalid_argument(
                "evaluation points must be at least 3");

    OutSink sink(args.out, false);
    std::ostream& os = sink.stream();
    if (args.format == "csv") {
        os << "p,a,e1,e2,e3\n";
        char buf[256];
        for (double p : ps) {
            std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g,%.10g",
                          p, expected_average_gap(p, params), e1(p, params),
                          e2(p, params), e3(p, params));
            os << buf << '\n';
        }
    } else {
        json arr = json::array();
        for (double p : ps) {
            json j;
            j["p"] = p;
            j["a"] = expected_average_gap(p, params);
            j["e1"] = e1(p, params);
            j["e2"] = e2(p, params);
            j["e3"] = e3(p, params);
            arr.push_back(j);
        }
        os << arr.dump(2) << '\n';
    }
}

// ----------------------------------------------------------------- fit ----

struct FitArgs {
    std::string in;
    std::string out = "-";
};

std::vector<double> read_gstar_column(const std::string& path) {
    std::vector<std::string> lines = read_lines(path);
    strip_cr(lines);
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw std::invalid_argument("input file is empty");

    const std::vector<std::string> header = split_csv(lines[0]);
    size_t col = header.size();
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == "g_star") col = i;

    std::vector<double> values;
    size_t first_row = 0;
    if (col == header.size()) {
        char* end = nullptr;
        std::strtod(lines[0].c_str(), &end);
        const bool numeric = end != nullptr && *end == '\0' &&
                             !lines[0].empty();
        if (!numeric)
            throw std::invalid_argument(
                "input needs a g_star column or one number per line");
        col = 0;
    } else {
        first_row = 1;
    }
    for (size_t i = first_row; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::vector<std::string> fields = split_csv(lines[i]);
        if (col >= fields.size())
            throw std::invalid_argument("row " + std::to_string(i + 1) +
                                        " is missing the value column");
        values.push_back(std::stod(fields[col]));
    }
    return values;
}

json fitted_block(const FittedCdf& fit, const std::vector<double>& sample) {
    json j;
    j["p1"] = fit.p1;
    j["p2"] = fit.p2;
    j["ks"] = ks_statistic(sample, fit);
    bool clamped = false;
    j["ad"] = ad_statistic(sample, fit, &clamped);
    j["ad_clamped"] = clamped;
    return j;
}

void run_fit(const FitArgs& args) {
    const std::vector<double> sample = read_gstar_column(args.in);
    const GumbelFit gumbel = gumbel_fit_mle(sample);

    json out;
    out["n"] = sample.size();
    json g = fitted_block(gumbel_cdf_of(gumbel.mu, gumbel.beta), sample);
    g["mu"] = gumbel.mu;
    g["beta"] = gumbel.beta;
    g["iterations"] = gumbel.iterations;
    out["gumbel"] = g;
    out["normal"] = fitted_block(fit_normal_moments(sample), sample);
    out["logistic"] = fitted_block(fit_logistic_moments(sample), sample);
    out["uniform"] = fitted_block(fit_uniform_minmax(sample), sample);

    const char* names[4] = {"gumbel", "normal", "logistic", "uniform"};
    std::string best_ks = "gumbel", best_ad = "gumbel";
    for (const char* n : names) {
        if (out[n]["ks"].get<double>() < out[best_ks]["ks"].get<double>())
            best_ks = n;
        if (out[n]["ad"].get<double>() < out[best_ad]["ad"].get<double>())
            best_ad = n;
    }
    out["best_ks"] = best_ks;
    out["best_ad"] = best_ad;

    OutSink sink(args.out, false);
    sink.stream() << out.dump(2) << '\n';
}

// ------------------------------------------------------------ trendline ----

struct TrendlineArgs {
    std::string in;
    unsigned k = 0;
    std::string lo_text;
    std::string hi_text;
    std::string out = "-";
};

void run_trendline(const TrendlineArgs& args) {
    std::vector<std::string> lines = read_lines(args.in);
    strip_cr(lines);
    if (lines.empty()) throw std::invalid_argument("input file is empty");
    const std::vector<std::string> header = split_csv(lines[0]);
    size_t p_col = header.size(), gap_col = header.size(),
           k_col = header.size();
    for (size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "p") p_col = i;
        if (header[i] == "gap") gap_col = i;
        if (header[i] == "k") k_col = i;
    }
    if (p_col == header.size() || gap_col == header.size())
        throw std::invalid_argument("input needs p and gap columns");

    std::vector<GapRecord> records;
    size_t k = args.k;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::vector<std::string> fields = split_csv(lines[i]);
        GapRecord r;
        r.p = std::stoull(fields[p_col]);
        r.gap = std::stoull(fields[gap_col]);
        records.push_back(r);
        if (k == 0 && k_col < fields.size()) k = std::stoul(fields[k_col]);
    }
    if (k == 0)
        throw std::invalid_argument(
            "pass --k; the input has no k column to infer it from");

    const TrendlineFit fit = trendline_slope(records, k,
                                             parse_bound(args.lo_text),
                                             parse_bound(args.hi_text));
    json out;
    out["k"] = fit.k;
    out["lo"] = fit.range_lo;
    out["hi"] = fit.range_hi;
    out["slope"] = fit.slope;
    out["n_points"] = fit.n_points;
    OutSink sink(args.out, false);
    sink.stream() << out.dump(2) << '\n';
}

// ------------------------------------------------------------- legendre ----

struct LegendreArgs {
    std::vector<std::string> pattern_names;
    std::vector<std::string> offsets;
    unsigned exponent = 2;
    std::string n_max_text;
    unsigned threads = 1;
    std::string failures_out;
    std::string out = "-";
};

void run_legendre(const LegendreArgs& args) {
    std::vector<TuplePattern> patterns;
    for (const std::string& name : args.pattern_names) {
        if (name == "triplet") {
            patterns.emplace_back("triplet_026",
                                  std::vector<uint64_t>{0, 2, 6});
            patterns.emplace_back("triplet_046",
                                  std::vector<uint64_t>{0, 4, 6});
            continue;
        }
        bool found = false;
        for (const TuplePattern& p : builtin_patterns())
            if (p.name == name) {
                patterns.push_back(p);
                found = true;
            }
        if (!found)
            throw std::invalid_argument(
                "unknown pattern '" + name +
                "'; use a built-in name, triplet, or --offsets");
    }
    for (size_t i = 0; i < args.offsets.size(); ++i)
        patterns.emplace_back("custom" + std::to_string(i + 1),
                              parse_offsets(args.offsets[i]));
    if (patterns.empty())
        throw std::invalid_argument("select patterns via --pattern or "
                                    "--offsets");

    const uint64_t n_max = parse_bound(args.n_max_text);
    const PowerIntervalReport report =
        scan_threshold(patterns, args.exponent, n_max, args.threads);

    json out;
    out["exponent"] = report.r;
    out["n_max"] = n_max;
    out["n_checked"] = report.n_checked;
    out["truncated"] = report.truncated;
    out["failure_count"] = report.failures.size();
    if (report.last_failure.has_value())
        out["last_failure"] = *report.last_failure;
    else
        out["last_failure"] = nullptr;
    out["failures"] = report.failures;
    OutSink sink(args.out, false);
    sink.stream() << out.dump(2) << '\n';

    if (!args.failures_out.empty()) {
        OutSink fsink(args.failures_out, false);
        fsink.stream() << "n\n";
        for (uint64_t n : report.failures) fsink.stream() << n << '\n';
    }
}

// ------------------------------------------------------------- simulate ----

struct SimulateArgs {
    std::string model;
    double a = 0.0;
    double P = 0.0;
    double horizon = 0.0;
    std::string trials_text = "1000";
    uint64_t seed = 42;
    unsigned threads = 1;
    double bin_width = 0.0;
    std::string hist_out;
    std::string out = "-";
};

void run_simulate(const SimulateArgs& args) {
    SimSpec spec;
    if (args.model == "exponential") {
        spec.model = SimModel::exponential_intervals;
    } else if (args.model == "geometric") {
        spec.model = SimModel::geometric_runs;
    } else {
        throw std::invalid_argument(
            "--model must be exponential or geometric");
    }
    spec.a = args.a;
    spec.P = args.P;
    spec.horizon = args.horizon;
    spec.trials = parse_bound(args.trials_text);
    spec.seed = args.seed;

    const SimSummary summary = simulate_extremes(spec, args.threads);

    json out;
    out["model"] = args.model;
    if (spec.model == SimModel::exponential_intervals)
        out["a"] = spec.a;
    else
        out["p"] = spec.P;
    out["horizon"] = spec.horizon;
    out["trials"] = spec.trials;
    out["seed"] = spec.seed;
    out["mean_max"] = summary.mean_max;
    out["sd_max"] = summary.sd_max;
    try {
        json expected;
        if (spec.model == SimModel::exponential_intervals) {
            expected["mean"] = expected_max_interval(spec.a, spec.horizon);
            expected["sd"] = sd_max_interval(spec.a);
        } else {
            expected["mean"] = expected_longest_run(spec.P, spec.horizon);
            expected["sd"] = std::sqrt(var_longest_run(spec.P));
        }
        out["expected"] = expected;
    } catch (const std::invalid_argument&) {
        out["expected"] = nullptr;
    }
    OutSink sink(args.out, false);
    sink.stream() << out.dump(2) << '\n';

    if (!args.hist_out.empty()) {
        if (!(args.bin_width > 0.0))
            throw std::invalid_argument(
                "--hist-out needs a positive --bin-width");
        OutSink hsink(args.hist_out, false);
        hsink.stream() << "bin_lo,count\n";
        char buf[64];
        for (const auto& [lo, count] :
             histogram(summary.maxima, args.bin_width)) {
            std::snprintf(buf, sizeof(buf), "%.10g", lo);
            hsink.stream() << buf << ',' << count << '\n';
        }
    }
}

// ------------------------------------------------------------ constants ----

struct ConstantsArgs {
    PatternArgs pattern;
    unsigned prime_limit = 0;
    std::string out = "-";
};

void print_constant(std::ostream& os, const TuplePattern& pattern,
                    const HLConstant& c) {
    const char* source = "precomputed";
    if (c.source == ConstantSource::truncated_product)
        source = "truncated product";
    else if (c.source == ConstantSource::user_supplied)
        source = "user supplied";
    char hbuf[64], cbuf[64];
    std::snprintf(hbuf, sizeof(hbuf), "%.6g", c.H);
    std::snprintf(cbuf, sizeof(cbuf), "%.6g", c.C);
    std::string offs;
    for (size_t i = 0; i < pattern.offsets.size(); ++i)
        offs += (i ? "," : "") + std::to_string(pattern.offsets[i]);
    os << pattern.name << " (offsets " << offs << ", k=" << pattern.k()
       << "): H = " << hbuf << ", C = " << cbuf << " [" << source << "]\n";
}

void run_constants(const ConstantsArgs& args, bool pattern_given) {
    ConstantsRegistry registry;
    if (!pattern_given && args.pattern.offsets.empty()) {
        if (!args.pattern.constants_file.empty())
            registry.load_file(args.pattern.constants_file);
        OutSink sink(args.out, false);
        for (const TuplePattern& p : builtin_patterns())
            print_constant(sink.stream(), p, registry.constant_for(p));
        return;
    }
    const TuplePattern pattern = resolve_pattern(args.pattern, registry);
    OutSink sink(args.out, false);
    if (args.prime_limit > 0) {
        const double H = hl_truncated_product(pattern, args.prime_limit);
        print_constant(sink.stream(), pattern,
                       {H, 1.0 / H, ConstantSource::truncated_product});
        return;
    }
    print_constant(sink.stream(), pattern,
                   resolve_constant(args.pattern, pattern, registry));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Prime k-tuple gap records: sieve scans, record extraction, "
        "gap-size estimators, extreme-value fits, and power-interval "
        "threshold searches"};
    app.require_subcommand(1);

    ScanArgs scan_args;
    CLI::App* scan_cmd = app.add_subcommand(
        "scan", "Scan for record gaps between consecutive tuples");
    add_pattern_options(scan_cmd, scan_args.pattern, "prime");
    scan_cmd->add_option("--max", scan_args.max_text,
                         "Upper bound on tuple starts (accepts 1e9 form)")
        ->required();
    scan_cmd->add_option("--out", scan_args.out, "Output path or - (stdout)");
    scan_cmd->add_option("--format", scan_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    scan_cmd->add_option("--checkpoint", scan_args.checkpoint,
                         "Write a resume checkpoint here after the scan");
    scan_cmd->add_option("--resume", scan_args.resume,
                         "Continue from this checkpoint; appends to --out");
    scan_cmd->add_option("--threads", scan_args.threads,
                         "Sieve worker threads (0 = hardware)");
    add_config_option(scan_cmd);

    EstimateArgs est_args;
    CLI::App* est_cmd = app.add_subcommand(
        "estimate", "Evaluate the record-gap estimators at chosen points");
    add_pattern_options(est_cmd, est_args.pattern, "prime");
    est_cmd->add_option("--p", est_args.points, "Evaluation point(s)");
    est_cmd->add_option("--range", est_args.range,
                        "Log-spaced points: LO HI COUNT")
        ->expected(3);
    est_cmd->add_option("--b", est_args.b,
                        "Calibration offset b (default 3 for k=1, else 2/k)");
    est_cmd->add_option("--out", est_args.out, "Output path or - (stdout)");
    est_cmd->add_option("--format", est_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    add_config_option(est_cmd);

    FitArgs fit_args;
    CLI::App* fit_cmd = app.add_subcommand(
        "fit", "Fit extreme-value and comparison distributions to g* data");
    fit_cmd->add_option("--in", fit_args.in,
                        "Records CSV with a g_star column, one number per "
                        "line, or - (stdin)")
        ->required();
    fit_cmd->add_option("--out", fit_args.out, "Output path or - (stdout)");
    add_config_option(fit_cmd);

    TrendlineArgs trend_args;
    CLI::App* trend_cmd = app.add_subcommand(
        "trendline", "Zero-intercept slope of record gaps vs log^(k+1) p");
    trend_cmd->add_option("--in", trend_args.in,
                          "Records CSV with p and gap columns, or - (stdin)")
        ->required();
    trend_cmd->add_option("--k", trend_args.k,
                          "Tuple size (default: k column of the input)");
    trend_cmd->add_option("--lo", trend_args.lo_text,
                          "Lower range bound, exclusive")
        ->required();
    trend_cmd->add_option("--hi", trend_args.hi_text,
                          "Upper range bound, exclusive")
        ->required();
    trend_cmd->add_option("--out", trend_args.out,
                          "Output path or - (stdout)");
    add_config_option(trend_cmd);

    LegendreArgs leg_args;
    CLI::App* leg_cmd = app.add_subcommand(
        "legendre",
        "Find n whose interval (n^r, (n+1)^r) misses all selected tuples");
    leg_cmd->add_option("--pattern", leg_args.pattern_names,
                        "Built-in pattern name or triplet (both forms)");
    leg_cmd->add_option("--offsets", leg_args.offsets,
                        "Custom offset group(s), e.g. 0,2,6");
    leg_cmd->add_option("--exponent", leg_args.exponent,
                        "Power r of the interval endpoints (default 2)");
    leg_cmd->add_option("--n-max", leg_args.n_max_text,
                        "Largest n to check (accepts 1e4 form)")
        ->required();
    leg_cmd->add_option("--threads", leg_args.threads,
                        "Worker threads (0 = hardware)");
    leg_cmd->add_option("--failures-out", leg_args.failures_out,
                        "Also write failing n as CSV here");
    leg_cmd->add_option("--out", leg_args.out, "Output path or - (stdout)");
    add_config_option(leg_cmd);

    SimulateArgs sim_args;
    CLI::App* sim_cmd = app.add_subcommand(
        "simulate",
        "Monte Carlo extremes: longest exponential interval or success run");
    sim_cmd->add_option("--model", sim_args.model,
                        "exponential or geometric")
        ->required();
    sim_cmd->add_option("--a", sim_args.a,
                        "Mean interval length (exponential model)");
    sim_cmd->add_option("--p", sim_args.P,
                        "Per-toss success probability (geometric model)");
    sim_cmd->add_option("--horizon", sim_args.horizon,
                        "Total length T or toss count n")
        ->required();
    sim_cmd->add_option("--trials", sim_args.trials_text,
                        "Number of trials (accepts 1e4 form)");
    sim_cmd->add_option("--seed", sim_args.seed,
                        "RNG seed; fixed default 42, never wall-clock");
    sim_cmd->add_option("--threads", sim_args.threads,
                        "Worker threads (0 = hardware)");
    sim_cmd->add_option("--bin-width", sim_args.bin_width,
                        "Histogram bin width for --hist-out");
    sim_cmd->add_option("--hist-out", sim_args.hist_out,
                        "Write a bin_lo,count histogram CSV here");
    sim_cmd->add_option("--out", sim_args.out, "Output path or - (stdout)");
    add_config_option(sim_cmd);

    ConstantsArgs const_args;
    CLI::App* const_cmd = app.add_subcommand(
        "constants", "Show density constants H and C for patterns");
    add_pattern_options(const_cmd, const_args.pattern, "");
    const_cmd->add_option("--prime-limit", const_args.prime_limit,
                          "Recompute H as a product over primes below this");
    const_cmd->add_option("--out", const_args.out,
                          "Output path or - (stdout)");
    add_config_option(const_cmd);

    try {
        if (argc > 0) app.name(argv[0]);
        std::vector<std::string> args;
        for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
        args = apply_config_file(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion")
            return app.exit(e);
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*scan_cmd) run_scan(scan_args);
        if (*est_cmd) run_estimate(est_args);
        if (*fit_cmd) run_fit(fit_args);
        if (*trend_cmd) run_trendline(trend_args);
        if (*leg_cmd) run_legendre(leg_args);
        if (*sim_cmd) run_simulate(sim_args);
        if (*const_cmd)
            run_constants(const_args,
                          const_cmd->count("--pattern") > 0);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
