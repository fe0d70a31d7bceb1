// One line per acceptance criterion; exit status 0 only when every line passes.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "divkit/bounds_engine.hpp"
#include "divkit/divergences.hpp"
#include "divkit/errors.hpp"
#include "divkit/generators.hpp"
#include "divkit/inequality_engine.hpp"
#include "divkit/ratio_table.hpp"
#include "divkit/trials.hpp"

using namespace divkit;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::vector<std::size_t> dims_2_16() {
    return parse_dims("2..16");
}

double rel_err(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double to_double(const Fraction& f) {
    return static_cast<double>(f.numerator()) / static_cast<double>(f.denominator());
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

template <class Fn>
double seconds(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Verdict dual_path() {
    const auto dims = dims_2_16();
    const auto& ids = catalog_ids();
    double worst = 0.0;
    std::string worst_id;
    std::size_t mismatches = 0;
    std::size_t overflow_pairs = 0;
    const double secs = seconds([&] {
        for (std::size_t i = 0; i < 10000; ++i) {
            const TrialPair t = uniform_pair(kSeed, i, dims);
            for (const MeasureId& id : ids) {
                double a = 0.0;
                double b = 0.0;
                int overflows = 0;
                try {
                    a = closed_form(id, t.p, t.q).value;
                } catch (const Overflow&) {
                    ++overflows;
                }
                try {
                    b = csiszar(generator_for(id), t.p, t.q).value;
                } catch (const Overflow&) {
                    ++overflows;
                }
                if (overflows == 2) {
                    ++overflow_pairs;
                    continue;
                }
                const double e = overflows ? std::numeric_limits<double>::infinity() : rel_err(a, b);
                if (e > 1e-12) ++mismatches;
                if (e > worst) {
                    worst = e;
                    worst_id = id.name();
                }
            }
        }
    });
    Verdict v;
    v.pass = mismatches == 0 && secs < 10.0;
    v.detail = std::to_string(ids.size()) + " ids x 10^4 pairs, worst rel " + fmt(worst) +
               (worst_id.empty() ? "" : " (" + worst_id + ")") + ", " + std::to_string(mismatches) +
               " mismatches, " + std::to_string(overflow_pairs) + " exp overflows on both paths, " + fmt(secs) + " s";
    return v;
}

Verdict identity_suite() {
    const IdentityReport r = check_identities(10000, dims_2_16(), kSeed, 1e-12);
    std::size_t checked = 0;
    std::vector<std::string> failed;
    std::string l6;
    for (const auto& c : r.checks) {
        // The closed L forms under test are the typeset ones; the library's
        // corrected forms ("-closed") are reported separately below.
        if (c.name.size() > 7 && c.name.compare(c.name.size() - 7, 7, "-closed") == 0) continue;
        if (c.informational) {
            l6 = c.name + " " + (c.failures == 0 ? "agrees" : "disagrees") + " (informational)";
            continue;
        }
        ++checked;
        if (c.failures > 0) failed.push_back(c.name);
    }
    bool corrected_ok = true;
    for (const auto& c : r.checks) {
        if (c.name.find("-closed") != std::string::npos && c.failures > 0) corrected_ok = false;
    }
    Verdict v;
    v.pass = failed.empty();
    v.detail = std::to_string(checked - failed.size()) + "/" + std::to_string(checked) + " identities hold";
    if (!failed.empty()) {
        v.detail += "; failing:";
        for (const auto& f : failed) v.detail += " " + f;
        v.detail += std::string("; corrected L forms ") + (corrected_ok ? "all agree" : "DISAGREE");
    }
    v.detail += "; " + l6;
    return v;
}

Verdict chain_suite() {
    const std::vector<std::string> names{"eq15", "eq21", "eq25", "eq26", "eq27", "eq28",
                                         "eq29", "eq30", "eq31", "eq32", "eq34", "eq35"};
    std::vector<std::string> failing;
    const double secs = seconds([&] {
        for (const auto& n : names) {
            const ChainSpec& chain = *find_chain(n);
            const VerifyReport r = verify(chain, 100000, dims_2_16(), kSeed, 1e-10);
            if (r.ok()) continue;
            const ViolationReport& first = r.violations.front();
            failing.push_back(n + " [" + chain.nodes[first.from].label() + " <= " + chain.nodes[first.to].label() +
                              ": " + std::to_string(r.violations.size()) + " violations]");
        }
    });
    Verdict v;
    v.pass = failing.empty() && secs < 120.0;
    v.detail = std::to_string(names.size() - failing.size()) + "/" + std::to_string(names.size()) +
               " chains clean over 10^5 pairs, " + fmt(secs) + " s";
    for (const auto& f : failing) v.detail += "; " + f;
    return v;
}

Verdict beta_regression() {
    std::size_t matched = 0;
    std::size_t monotone = 0;
    double worst = 0.0;
    std::string misses;
    const auto& table = beta_regression_table();
    const double secs = seconds([&] {
        for (const RatioEntry& e : table) {
            const BoundEstimate est = estimate_sup(generator_for(e.upper), generator_for(e.lower));
            const double err = std::abs(est.beta_hat - to_double(e.beta));
            worst = std::max(worst, err / std::max(1.0, to_double(e.beta)));
            if (err <= beta_tolerance(e)) ++matched;
            else misses += " " + e.label;
            if (est.monotone_ok) ++monotone;
        }
    });
    Verdict v;
    v.pass = matched == table.size() && monotone == table.size() && secs < 60.0;
    v.detail = std::to_string(matched) + "/" + std::to_string(table.size()) + " constants, " +
               std::to_string(monotone) + " monotone, worst scaled error " + fmt(worst) + ", " + fmt(secs) + " s" +
               (misses.empty() ? "" : "; missed:" + misses);
    return v;
}

Verdict convexity() {
    const auto& ids = catalog_ids();
    std::size_t negative = 0;
    for (const MeasureId& id : ids) {
        const Generator& g = generator_for(id);
        for (int i = 0; i < 1000; ++i) {
            const double x = std::pow(10.0, -6.0 + 12.0 * (i + 0.5) / 1000);
            if (f2(g, x) < -1e-9) ++negative;
        }
    }
    std::size_t violations = 0;
    std::size_t skipped = 0;
    const auto dims = dims_2_16();
    for (std::size_t i = 0; i < 1000; ++i) {
        const std::size_t dim = trial_dim(dims, i);
        const Distribution p1 = random(dim, derive_seed(kSeed, i, 11));
        const Distribution q1 = random(dim, derive_seed(kSeed, i, 12));
        const Distribution p2 = random(dim, derive_seed(kSeed, i, 13));
        const Distribution q2 = random(dim, derive_seed(kSeed, i, 14));
        const double w = random(2, derive_seed(kSeed, i, 15))[0];
        const Distribution pm = mix(p1, p2, w);
        const Distribution qm = mix(q1, q2, w);
        for (const MeasureId& id : ids) {
            try {
                const double lhs = measure_value(id, pm, qm);
                const double rhs = (1 - w) * measure_value(id, p1, q1) + w * measure_value(id, p2, q2);
                if (lhs > rhs + 1e-12 * std::max(1.0, std::abs(rhs))) ++violations;
            } catch (const Overflow&) {
                ++skipped;
            }
        }
    }
    Verdict v;
    v.pass = negative == 0 && violations == 0;
    v.detail = std::to_string(ids.size()) + " generators: " + std::to_string(negative) + " negative f'' samples, " +
               std::to_string(violations) + " mixture violations over 10^3 tuples" +
               (skipped ? ", " + std::to_string(skipped) + " exp overflows skipped" : "");
    return v;
}

Verdict series() {
    std::size_t pairs = 0;
    std::size_t not_monotone = 0;
    std::size_t over = 0;
    double worst = 0.0;
    double worst_u = 0.0;
    for (std::size_t i = 0; pairs < 2000; ++i) {
        const Distribution p = random(2, derive_seed(kSeed, i, 21));
        const Distribution q = random(2, derive_seed(kSeed, i, 22));
        double u = 0.0;
        for (std::size_t j = 0; j < 2; ++j) u = std::max(u, std::pow(p[j] - q[j], 2) / (p[j] * q[j]));
        if (u > 4.0) continue;
        ++pairs;
        double prev = -1.0;
        for (int t = 0; t <= 20; ++t) {
            const double s = partial_sum(t, p, q).value;
            if (s < prev) ++not_monotone;
            prev = s;
        }
        const double full = exp_divergence(p, q).value;
        const double e = full == 0.0 ? 0.0 : std::abs(full - prev) / full;
        if (e >= 1e-12) ++over;
        if (e > worst) {
            worst = e;
            worst_u = u;
        }
    }
    Verdict v;
    v.pass = not_monotone == 0 && over == 0;
    v.detail = std::to_string(pairs) + " dim-2 pairs with u <= 4: " + std::to_string(not_monotone) +
               " monotonicity breaks, " + std::to_string(over) + " with truncation error >= 1e-12 (worst " +
               fmt(worst) + " at u = " + fmt(worst_u) + ")";
    return v;
}

Verdict falsification() {
    const std::array<const char*, 5> labels{"TDelta_K0Delta", "hI_K0Delta", "FT_FPsi", "PsiJ_PsiK0", "L8_L12"};
    std::size_t caught = 0;
    std::string detail;
    for (const char* label : labels) {
        const RatioEntry& e = *find_ratio(label);
        const CertifyReport r = certify(generator_for(e.upper), generator_for(e.lower), to_double(e.beta) / 2, 10000,
                                        dims_2_16(), kSeed, 1e-10);
        if (r.violations > 0) ++caught;
        detail += std::string(" ") + label + ":" + std::to_string(r.violations);
    }
    Verdict v;
    v.pass = caught == labels.size();
    v.detail = std::to_string(caught) + "/5 halved constants falsified within 10^4 pairs;" + detail;
    return v;
}

std::string capture(const std::string& cmd, int& status) {
    std::string out;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    status = ::pclose(pipe);
    return out;
}

Verdict cli_determinism() {
    const std::string cli = DIVKIT_CLI_PATH;
    const std::vector<std::string> commands{cli + " verify --chain eq21 --trials 20000 --dims 2..16 --seed 99",
                                            cli + " verify --chain eq15 --trials 20000 --seed 5 --format csv",
                                            cli + " beta --all"};
    std::size_t identical = 0;
    for (const auto& c : commands) {
        int s1 = 0;
        int s2 = 0;
        const std::string a = capture(c, s1);
        const std::string b = capture(c, s2);
        if (!a.empty() && a == b && s1 == s2) ++identical;
    }
    Verdict v;
    v.pass = identical == commands.size();
    v.detail = std::to_string(identical) + "/" + std::to_string(commands.size()) + " commands byte-identical across two runs";
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"dual-path agreement", dual_path},
        {"identity suite", identity_suite},
        {"chain suite", chain_suite},
        {"constant regression", beta_regression},
        {"convexity suite", convexity},
        {"series convergence", series},
        {"falsification sanity", falsification},
        {"CLI determinism", cli_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.detail = std::string("exception: ") + e.what();
        }
        if (!v.pass) ++failed;
        std::cout << (v.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << v.detail
                  << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
