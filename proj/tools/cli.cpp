#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "divkit/bounds_engine.hpp"
#include "divkit/distributions.hpp"
#include "divkit/divergences.hpp"
#include "divkit/errors.hpp"
#include "divkit/generators.hpp"
#include "divkit/inequality_engine.hpp"
#include "divkit/json_text.hpp"
#include "divkit/measure_id.hpp"
#include "divkit/ratio_table.hpp"
#include "divkit/trials.hpp"

namespace divkit::cli {

namespace {

using nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 1;
constexpr double kChainTol = 1e-10;
constexpr double kIdentityTol = 1e-12;
constexpr double kProbabilitySumSlack = 1e-9;
const std::vector<int> kReportPartialSums{0, 1, 2, 3, 4, 5, 10, 20};

struct Options {
    std::string p_path;
    std::string q_path;
    bool counts = false;
    double alpha = 0.5;
    std::string format = "json";
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::string dims = "2..16";
    std::size_t trials = 10000;
    std::optional<double> tol;
    std::string measure;
    std::string chain;
    std::string ratio;
    bool all = false;
    std::string group;
    std::size_t max_violations = 0;
};

std::string located(const std::filesystem::path& path, std::size_t line, const std::string& what) {
    return path.string() + ":" + std::to_string(line) + ": " + what;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(const std::string& token) {
    if (token.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) return std::nullopt;
    return v;
}

std::size_t line_at(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Line of every top-level element of a syntactically valid JSON array.
std::vector<std::size_t> element_lines(const std::string& text) {
    std::vector<std::size_t> lines;
    std::size_t line = 1;
    int depth = 0;
    bool expect_value = false;
    bool in_string = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\n') ++line;
        if (in_string) {
            if (c == '\\') ++i;
            else if (c == '"') in_string = false;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (expect_value && depth == 1 && c != ']') {
            lines.push_back(line);
            expect_value = false;
        }
        if (c == '"') in_string = true;
        else if (c == '[' || c == '{') {
            ++depth;
            if (depth == 1) expect_value = true;
        } else if (c == ']' || c == '}') --depth;
        else if (c == ',' && depth == 1) expect_value = true;
    }
    return lines;
}

NumberColumn read_json_numbers(const std::filesystem::path& path, const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(located(path, line_at(text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON"));
    }
    if (!doc.is_array()) throw InputError(located(path, 1, "expected a JSON array of numbers"));
    NumberColumn col;
    const std::vector<std::size_t> lines = element_lines(text);
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const std::size_t line = i < lines.size() ? lines[i] : 1;
        if (!doc[i].is_number()) {
            throw InputError(located(path, line, "element " + std::to_string(i) + " is not a number"));
        }
        col.values.push_back(doc[i].get<double>());
        col.lines.push_back(line);
    }
    return col;
}

NumberColumn read_csv_numbers(const std::filesystem::path& path, const std::string& text) {
    NumberColumn col;
    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;
    bool header_allowed = true;
    while (std::getline(in, raw)) {
        ++line;
        std::string cell = trim(raw);
        if (cell.empty()) continue;
        if (const auto comma = cell.find(','); comma != std::string::npos) {
            if (!trim(cell.substr(comma + 1)).empty()) throw InputError(located(path, line, "expected a single column"));
            cell = trim(cell.substr(0, comma));
        }
        const auto v = parse_number(cell);
        if (!v) {
            if (header_allowed) {
                header_allowed = false;
                continue;
            }
            throw InputError(located(path, line, "'" + cell + "' is not a number"));
        }
        header_allowed = false;
        col.values.push_back(*v);
        col.lines.push_back(line);
    }
    return col;
}

Distribution load_distribution(const std::string& file, const Options& opt) {
    const std::filesystem::path path(file);
    const NumberColumn col = read_numbers(path);
    const std::size_t last_line = col.lines.empty() ? 1 : col.lines.back();
    if (col.values.size() < 2) {
        throw InputError(located(path, last_line, "need at least 2 values, got " + std::to_string(col.values.size())));
    }
    try {
        if (opt.counts) {
            std::vector<std::uint64_t> counts;
            for (std::size_t i = 0; i < col.values.size(); ++i) {
                const double v = col.values[i];
                if (!(v >= 0.0) || v != std::floor(v) || v >= 9.2e18) {
                    throw InputError(located(path, col.lines[i], "count must be a nonnegative integer"));
                }
                counts.push_back(static_cast<std::uint64_t>(v));
            }
            return from_counts_smoothed(counts, opt.alpha);
        }
        double total = 0.0;
        for (std::size_t i = 0; i < col.values.size(); ++i) {
            const double v = col.values[i];
            if (!std::isfinite(v) || v <= 0.0) {
                throw InputError(located(path, col.lines[i], "probability must be > 0 (use --counts for histograms)"));
            }
            total += v;
        }
        if (std::abs(total - 1.0) > kProbabilitySumSlack) {
            throw InputError(located(path, last_line, "probabilities sum to " + format_double(total) + ", expected 1"));
        }
        return from_weights(col.values);
    } catch (const Error& e) {
        throw InputError(located(path, last_line, e.what()));
    }
}

std::pair<Distribution, Distribution> load_pair(const Options& opt) {
    if (opt.p_path.empty() || opt.q_path.empty()) throw InputError("both --p and --q are required");
    Distribution p = load_distribution(opt.p_path, opt);
    Distribution q = load_distribution(opt.q_path, opt);
    if (p.dim() != q.dim()) {
        throw DimensionMismatch(opt.p_path + " has " + std::to_string(p.dim()) + " entries, " + opt.q_path + " has " +
                                std::to_string(q.dim()));
    }
    return {std::move(p), std::move(q)};
}

// FNV-1a over the bit patterns of p then q.
std::string inputs_hash(const Distribution& p, const Distribution& q) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](const Distribution& d) {
        for (double v : d.probs()) {
            unsigned char bytes[sizeof(double)];
            std::memcpy(bytes, &v, sizeof v);
            for (unsigned char b : bytes) {
                h ^= b;
                h *= 0x100000001b3ULL;
            }
        }
    };
    feed(p);
    feed(q);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string csv_number(double v) {
    return std::isfinite(v) ? format_double(v) : "";
}

std::string csv_bool(bool b) {
    return b ? "true" : "false";
}

std::uint64_t resolve_seed(const Options& opt) {
    if (opt.seed) return *opt.seed;
    if (const char* env = std::getenv("DIVKIT_SEED"); env && *env) {
        char* end = nullptr;
        errno = 0;
        const unsigned long long v = std::strtoull(env, &end, 0);
        if (errno != 0 || *end != '\0') throw InputError(std::string("DIVKIT_SEED is not an integer: '") + env + "'");
        return v;
    }
    return kDefaultSeed;
}

struct Outcome {
    std::string text;
    int code = kOk;
};

Outcome cmd_compute(const Options& opt) {
    const auto [p, q] = load_pair(opt);
    const MeasureId id = MeasureId::parse(opt.measure);
    const double value = measure_value(id, p, q);
    if (opt.format == "csv") {
        return {"measure,value,dims,inputs_hash\n" + id.name() + "," + csv_number(value) + "," +
                std::to_string(p.dim()) + "," + inputs_hash(p, q) + "\n"};
    }
    ordered_json j;
    j["measure"] = id.name();
    j["value"] = value;
    j["dims"] = p.dim();
    j["inputs_hash"] = inputs_hash(p, q);
    return {to_json_text(j)};
}

Outcome cmd_report(const Options& opt) {
    const auto [p, q] = load_pair(opt);
    std::vector<std::pair<std::string, double>> rows;
    auto guarded = [](auto&& fn) {
        try {
            return fn();
        } catch (const Overflow&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    for (const MeasureId& id : catalog_ids()) {
        rows.emplace_back(id.name(), guarded([&] { return measure_value(id, p, q); }));
    }
    for (int t : kReportPartialSums) {
        rows.emplace_back("partial_sum:" + std::to_string(t), partial_sum(t, p, q).value);
    }
    if (opt.format == "csv") {
        std::string text = "measure,value\n";
        for (const auto& [name, v] : rows) text += name + "," + csv_number(v) + "\n";
        return {text};
    }
    ordered_json j;
    j["dims"] = p.dim();
    j["inputs_hash"] = inputs_hash(p, q);
    j["p"] = p.probs();
    j["q"] = q.probs();
    ordered_json list = ordered_json::array();
    for (const auto& [name, v] : rows) list.push_back(ordered_json{{"measure", name}, {"value", v}});
    j["rows"] = std::move(list);
    return {to_json_text(j)};
}

Outcome identity_outcome(const IdentityReport& rep, const std::string& format) {
    const int code = rep.ok() ? kOk : kFailed;
    if (format == "csv") {
        std::string text = "name,lhs,rhs,trials,failures,max_rel_error,informational,ok\n";
        for (const auto& c : rep.checks) {
            text += c.name + "," + c.lhs + "," + c.rhs + "," + std::to_string(c.trials) + "," +
                    std::to_string(c.failures) + "," + csv_number(c.max_rel_error) + "," + csv_bool(c.informational) +
                    "," + csv_bool(c.ok()) + "\n";
        }
        return {text, code};
    }
    return {to_json_text(to_json(rep)), code};
}

Outcome cmd_verify(const Options& opt) {
    const std::vector<std::size_t> dims = parse_dims(opt.dims);
    const std::uint64_t seed = resolve_seed(opt);
    const auto& groups = identity_groups();
    if (std::find(groups.begin(), groups.end(), opt.chain) != groups.end()) {
        return identity_outcome(check_identities(opt.trials, dims, seed, opt.tol.value_or(kIdentityTol), opt.chain),
                                opt.format);
    }
    const ChainSpec* chain = find_chain(opt.chain);
    if (!chain) throw UnknownId("unknown chain '" + opt.chain + "'");
    const VerifyReport rep = verify(*chain, opt.trials, dims, seed, opt.tol.value_or(kChainTol));
    const int code = rep.ok() ? kOk : kFailed;
    if (opt.format == "csv") {
        std::string text = "from,to,lhs,rhs,passes,failures,worst_slack,worst_ratio\n";
        for (const auto& e : rep.edges) {
            text += std::to_string(e.from) + "," + std::to_string(e.to) + "," + chain->nodes[e.from].label() + "," +
                    chain->nodes[e.to].label() + "," + std::to_string(e.passes) + "," + std::to_string(e.failures) +
                    "," + csv_number(e.worst_slack) + "," + csv_number(e.worst_ratio) + "\n";
        }
        return {text, code};
    }
    return {to_json_text(to_json(rep, *chain, opt.max_violations)), code};
}

Outcome cmd_identities(const Options& opt) {
    const std::vector<std::size_t> dims = parse_dims(opt.dims);
    return identity_outcome(check_identities(opt.trials, dims, resolve_seed(opt), opt.tol.value_or(kIdentityTol), opt.group),
                            opt.format);
}

double to_double(const Fraction& f) {
    return static_cast<double>(f.numerator()) / static_cast<double>(f.denominator());
}

struct BetaRow {
    BoundEstimate estimate;
    const RatioEntry* entry = nullptr;
    bool match = true;
};

BetaRow estimate_row(const MeasureId& upper, const MeasureId& lower, const std::string& name,
                     const RatioEntry* entry) {
    BetaRow row;
    row.entry = entry;
    row.estimate = estimate_sup(generator_for(upper), generator_for(lower), GridSpec{}, name);
    if (entry) row.match = std::abs(row.estimate.beta_hat - to_double(entry->beta)) <= beta_tolerance(*entry);
    return row;
}

ordered_json beta_json(const BetaRow& row) {
    ordered_json j;
    if (row.entry) j["label"] = row.entry->label;
    const ordered_json estimate = to_json(row.estimate);
    for (const auto& [k, v] : estimate.items()) j[k] = v;
    if (row.entry) {
        const double expected = to_double(row.entry->beta);
        j["expected"] = fraction_string(row.entry->beta);
        j["expected_value"] = expected;
        j["abs_error"] = std::abs(row.estimate.beta_hat - expected);
        j["tolerance"] = beta_tolerance(*row.entry);
        j["match"] = row.match;
    }
    return j;
}

std::string beta_csv(const std::vector<BetaRow>& rows) {
    std::string text = "label,name,beta_hat,alpha_hat,argmax,limit_at_one,monotone_ok,expected,match\n";
    for (const auto& r : rows) {
        const auto& e = r.estimate;
        text += (r.entry ? r.entry->label : "") + "," + e.name + "," + csv_number(e.beta_hat) + "," +
                csv_number(e.alpha_hat) + "," + csv_number(e.argmax) + "," + csv_number(e.limit_at_one) + "," +
                csv_bool(e.monotone_ok) + "," + (r.entry ? fraction_string(r.entry->beta) : "") + "," +
                (r.entry ? csv_bool(r.match) : "") + "\n";
    }
    return text;
}

Outcome cmd_beta(const Options& opt) {
    std::vector<BetaRow> rows;
    if (opt.all) {
        for (const RatioEntry& e : beta_regression_table()) rows.push_back(estimate_row(e.upper, e.lower, e.ratio_name(), &e));
    } else if (!opt.ratio.empty()) {
        if (const RatioEntry* e = find_ratio(opt.ratio)) {
            rows.push_back(estimate_row(e->upper, e->lower, e->ratio_name(), e));
        } else {
            const auto slash = opt.ratio.find('/');
            if (slash == std::string::npos || opt.ratio.find('/', slash + 1) != std::string::npos) {
                throw UnknownId("ratio must be a table label or 'upper/lower', got '" + opt.ratio + "'");
            }
            const MeasureId upper = MeasureId::parse(opt.ratio.substr(0, slash));
            const MeasureId lower = MeasureId::parse(opt.ratio.substr(slash + 1));
            rows.push_back(estimate_row(upper, lower, upper.name() + "/" + lower.name(), nullptr));
        }
    } else {
        throw InputError("beta needs --ratio or --all");
    }
    const std::size_t matched =
        static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const BetaRow& r) { return r.match; }));
    const int code = matched == rows.size() ? kOk : kFailed;
    if (opt.format == "csv") return {beta_csv(rows), code};
    if (!opt.all) return {to_json_text(beta_json(rows.front())), code};
    ordered_json j;
    j["total"] = rows.size();
    j["matched"] = matched;
    ordered_json list = ordered_json::array();
    for (const auto& r : rows) list.push_back(beta_json(r));
    j["entries"] = std::move(list);
    return {to_json_text(j), code};
}

void add_pair_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--p", opt.p_path, "First distribution (CSV column or JSON array)")->required();
    cmd->add_option("--q", opt.q_path, "Second distribution (CSV column or JSON array)")->required();
    cmd->add_flag("--counts", opt.counts, "Inputs are histogram counts; apply additive smoothing");
    cmd->add_option("--alpha", opt.alpha, "Smoothing pseudocount for --counts")->check(CLI::PositiveNumber);
}

void add_trial_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--trials", opt.trials, "Number of random pairs")->check(CLI::PositiveNumber);
    cmd->add_option("--dims", opt.dims, "Dimensions: range '2..16' or list '2,4,8'");
    cmd->add_option("--seed", opt.seed, "Seed (falls back to DIVKIT_SEED)");
    cmd->add_option("--tol", opt.tol, "Relative tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

NumberColumn read_numbers(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw InputError(located(path, 1, "file is empty"));
    return text[first] == '[' ? read_json_numbers(path, text) : read_csv_numbers(path, text);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Symmetric divergence measures, inequality chains and bound constants", "divkit"};
    app.require_subcommand(1);

    CLI::App* compute = app.add_subcommand("compute", "Evaluate one measure on a pair of distributions");
    add_pair_options(compute, opt);
    compute->add_option("--measure", opt.measure, "Measure name, e.g. delta, k_t:2, d:k0-h, l:7")->required();

    CLI::App* report = app.add_subcommand("report", "Evaluate every catalog measure on a pair");
    add_pair_options(report, opt);

    CLI::App* verify_cmd = app.add_subcommand("verify", "Check an inequality chain or identity group on random pairs");
    verify_cmd->add_option("--chain", opt.chain, "Chain name (eq15, eq21, ...) or identity group (eq33, ...)")->required();
    add_trial_options(verify_cmd, opt);
    verify_cmd->add_option("--max-violations", opt.max_violations, "Cap on listed violations (0 = all)");

    CLI::App* identities = app.add_subcommand("identities", "Check the exact identities on random pairs");
    identities->add_option("--group", opt.group, "Restrict to one identity group");
    add_trial_options(identities, opt);

    CLI::App* beta = app.add_subcommand("beta", "Estimate sharp bound constants");
    beta->add_option("--ratio", opt.ratio, "Table label or 'upper/lower' measure names");
    beta->add_flag("--all", opt.all, "Regress the full constant table");

    for (CLI::App* cmd : {compute, report, verify_cmd, identities, beta}) {
        cmd->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--out", opt.out_path, "Write the report to this file instead of stdout");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "divkit: " << e.what() << "\n";
        return kInputError;
    }

    try {
        Outcome result;
        if (compute->parsed()) result = cmd_compute(opt);
        else if (report->parsed()) result = cmd_report(opt);
        else if (verify_cmd->parsed()) result = cmd_verify(opt);
        else if (identities->parsed()) result = cmd_identities(opt);
        else result = cmd_beta(opt);

        if (opt.out_path.empty()) {
            out << result.text;
        } else {
            std::ofstream file(opt.out_path, std::ios::binary);
            if (!file) throw InputError(opt.out_path + ": cannot open for writing");
            file << result.text;
        }
        return result.code;
    } catch (const DimensionMismatch& e) {
        err << "divkit: " << e.what() << "\n";
        return kDimensionMismatch;
    } catch (const InputError& e) {
        err << "divkit: " << e.what() << "\n";
        return kInputError;
    } catch (const Overflow& e) {
        err << "divkit: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        err << "divkit: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "divkit: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "divkit: " << e.what() << "\n";
        return kFailed;
    }
}

}  // namespace divkit::cli
