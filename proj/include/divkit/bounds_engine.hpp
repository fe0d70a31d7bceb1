#pragma once

#include <cstddef>
#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "divkit/generators.hpp"
#include "divkit/ratio_table.hpp"

namespace divkit {

// Sampling of (0, inf): x = u / (1 - u) on a uniform u grid, plus log-spaced points.
struct GridSpec {
    std::size_t u_points = 10000;
    std::size_t log_points = 2001;
    double log_min = 1e-8;
    double log_max = 1e8;
};

struct BoundEstimate {
    std::string name;
    double beta_hat = 0.0;
    double alpha_hat = 0.0;
    double argmax = 1.0;
    double argmin = 1.0;
    double limit_at_one = 0.0;
    double sampled_max = 0.0;
    bool monotone_ok = false;
    std::size_t samples = 0;
    GridSpec grid;
};

// Window around x = 1 inside which ratio() returns the extrapolated limit.
inline constexpr double kLimitWindow = 1e-3;

// f1''(x) / f2''(x); near x = 1, where both second derivatives vanish, the
// two-sided Richardson limit.
double ratio(const Generator& f1, const Generator& f2, double x);

// Richardson extrapolation of g(1 +- 1e-2 * 2^-k), k = 0..8, per side; throws
// OneSidedMismatch when the sides disagree by more than 1e-6.
double limit_at_one(const Generator& f1, const Generator& f2);

BoundEstimate estimate_sup(const Generator& f1, const Generator& f2, const GridSpec& grid = {},
                           const std::string& name = "");

struct CertifyReport {
    double beta = 0.0;
    std::size_t trials = 0;
    std::size_t violations = 0;
    std::size_t first_violation_trial = 0;
    double worst_ratio = 0.0;  // max C_f1 / C_f2 observed
    double min_ratio = 0.0;    // min C_f1 / C_f2 observed
    std::size_t worst_trial = 0;
};

// C_f1 <= beta C_f2 + tol * max(1, |lhs|, |rhs|) on seeded trial pairs.
CertifyReport certify(const Generator& f1, const Generator& f2, double beta, std::size_t trials,
                      const std::vector<std::size_t>& dims, std::uint64_t seed, double tol);

const std::vector<RatioEntry>& beta_regression_table();

// Regression tolerance for a tabled constant: 1e-6 max(1, beta), tightened to
// 1e-9 for the two series constants.
double beta_tolerance(const RatioEntry& entry);

nlohmann::ordered_json to_json(const BoundEstimate& estimate);

}  // namespace divkit
