#include "divkit/bounds_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "divkit/divergences.hpp"
#include "divkit/errors.hpp"
#include "divkit/trials.hpp"

namespace divkit {

namespace {

constexpr int kRichardsonLevels = 9;
constexpr double kSideAgreement = 1e-6;
constexpr double kMonotoneSlack = 1e-9;

bool vanishes_at_one(const Generator& g) {
    if (g.exact_second) return g.exact_second->is_zero() || g.exact_second->order_at_one() > 0;
    return f2(g, 1.0L, 0.0L) == 0.0L;
}

long double raw_ratio(const Generator& f1, const Generator& f2g, long double x, long double xm) {
    const long double num = f2(f1, x, xm);
    const long double den = f2(f2g, x, xm);
    if (den == 0.0L) throw ZeroDenominator("f2'' vanishes at x = " + std::to_string(static_cast<double>(x)));
    return num / den;
}

long double richardson(const Generator& f1, const Generator& f2g, int side) {
    std::array<std::array<long double, kRichardsonLevels>, kRichardsonLevels> t{};
    for (int k = 0; k < kRichardsonLevels; ++k) {
        const long double h = 1e-2L * std::ldexp(1.0L, -k) * side;
        t[k][0] = raw_ratio(f1, f2g, 1.0L + h, h);
        long double factor = 1.0L;
        for (int j = 1; j <= k; ++j) {
            factor *= 2.0L;
            t[k][j] = t[k][j - 1] + (t[k][j - 1] - t[k - 1][j - 1]) / (factor - 1.0L);
        }
    }
    return t[kRichardsonLevels - 1][kRichardsonLevels - 1];
}

std::vector<double> grid_points(const GridSpec& grid) {
    std::vector<double> xs;
    xs.reserve(grid.u_points + grid.log_points);
    for (std::size_t i = 0; i < grid.u_points; ++i) {
        const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(grid.u_points);
        xs.push_back(u / (1.0 - u));
    }
    if (grid.log_points >= 2) {
        const double a = std::log(grid.log_min);
        const double b = std::log(grid.log_max);
        for (std::size_t i = 0; i < grid.log_points; ++i) {
            xs.push_back(std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(grid.log_points - 1)));
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

}  // namespace

double limit_at_one(const Generator& f1, const Generator& f2g) {
    const long double left = richardson(f1, f2g, -1);
    const long double right = richardson(f1, f2g, +1);
    const long double mid = 0.5L * (left + right);
    if (std::abs(left - right) > kSideAgreement * std::max(1.0L, std::abs(mid))) {
        throw OneSidedMismatch("left limit " + std::to_string(static_cast<double>(left)) + " vs right limit " +
                               std::to_string(static_cast<double>(right)));
    }
    return static_cast<double>(mid);
}

double ratio(const Generator& f1, const Generator& f2g, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw NonPositiveX("ratio needs x > 0");
    if (std::abs(x - 1.0) <= kLimitWindow && vanishes_at_one(f1) && vanishes_at_one(f2g)) {
        return limit_at_one(f1, f2g);
    }
    const long double xl = x;
    return static_cast<double>(raw_ratio(f1, f2g, xl, xl - 1.0L));
}

BoundEstimate estimate_sup(const Generator& f1, const Generator& f2g, const GridSpec& grid, const std::string& name) {
    BoundEstimate est;
    est.name = name.empty() ? f1.id.name() + "/" + f2g.id.name() : name;
    est.grid = grid;
    est.limit_at_one = limit_at_one(f1, f2g);
    const bool singular = vanishes_at_one(f1) && vanishes_at_one(f2g);

    const std::vector<double> xs = grid_points(grid);
    est.samples = xs.size();
    double max_g = -std::numeric_limits<double>::infinity();
    double min_g = std::numeric_limits<double>::infinity();
    bool monotone = true;
    double prev = 0.0;
    bool have_prev = false;
    bool past_one = false;
    for (double x : xs) {
        const double g = (singular && std::abs(x - 1.0) <= kLimitWindow) ? est.limit_at_one : ratio(f1, f2g, x);
        if (g > max_g) {
            max_g = g;
            est.argmax = x;
        }
        if (g < min_g) {
            min_g = g;
            est.argmin = x;
        }
        if (!past_one && x > 1.0) {
            // Compare the first point right of 1 against the limit, not the left branch.
            past_one = true;
            prev = est.limit_at_one;
            have_prev = true;
        }
        if (have_prev) {
            const double slack = kMonotoneSlack * std::max(1.0, std::abs(g));
            if (!past_one && g < prev - slack) monotone = false;
            if (past_one && g > prev + slack) monotone = false;
        }
        prev = g;
        have_prev = true;
    }
    est.sampled_max = max_g;
    est.beta_hat = std::max(max_g, est.limit_at_one);
    if (est.limit_at_one >= max_g) est.argmax = 1.0;
    est.alpha_hat = std::min(min_g, est.limit_at_one);
    est.monotone_ok = monotone;
    return est;
}

CertifyReport certify(const Generator& f1, const Generator& f2g, double beta, std::size_t trials,
                      const std::vector<std::size_t>& dims, std::uint64_t seed, double tol) {
    CertifyReport rep;
    rep.beta = beta;
    rep.trials = trials;
    rep.min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < trials; ++i) {
        const TrialPair pair = trial_pair(seed, i, dims);
        const double a = csiszar(f1, pair.p, pair.q).value;
        const double b = csiszar(f2g, pair.p, pair.q).value;
        const double rhs = beta * b;
        if (b > 0.0) {
            const double r = a / b;
            if (r > rep.worst_ratio) {
                rep.worst_ratio = r;
                rep.worst_trial = i;
            }
            rep.min_ratio = std::min(rep.min_ratio, r);
        }
        if (a - rhs > tol * std::max({1.0, std::abs(a), std::abs(rhs)})) {
            if (rep.violations == 0) rep.first_violation_trial = i;
            ++rep.violations;
        }
    }
    return rep;
}

const std::vector<RatioEntry>& beta_regression_table() {
    return ratio_table();
}

double beta_tolerance(const RatioEntry& entry) {
    if (entry.group == "series") return 1e-9;
    const double beta = static_cast<double>(entry.beta.numerator()) / static_cast<double>(entry.beta.denominator());
    return 1e-6 * std::max(1.0, beta);
}

nlohmann::ordered_json to_json(const BoundEstimate& e) {
    nlohmann::ordered_json j;
    j["name"] = e.name;
    j["beta_hat"] = e.beta_hat;
    j["alpha_hat"] = e.alpha_hat;
    j["argmax"] = e.argmax;
    j["argmin"] = e.argmin;
    j["limit_at_one"] = e.limit_at_one;
    j["sampled_max"] = e.sampled_max;
    j["monotone_ok"] = e.monotone_ok;
    j["grid"] = {{"u_points", e.grid.u_points},
                 {"log_points", e.grid.log_points},
                 {"log_min", e.grid.log_min},
                 {"log_max", e.grid.log_max},
                 {"samples", e.samples}};
    return j;
}

}  // namespace divkit
