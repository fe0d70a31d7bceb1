#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divkit/measure_id.hpp"
#include "divkit/sqrt_rational.hpp"

namespace divkit {

// f evaluated with x and x - 1 supplied separately; callers that know x - 1
// more accurately than x (e.g. (p - q) / q) keep that precision.
using ScalarFn = std::function<long double(long double x, long double x_minus_one)>;

struct Generator {
    MeasureId id;
    ScalarFn value;                        // f
    ScalarFn second;                       // closed-form f''; empty when absent
    std::optional<SqrtRational> exact;     // f, when algebraic in sqrt(x)
    std::optional<SqrtRational> exact_second;
    // Taylor coefficients of f in powers of x - 1; set for the logarithmic
    // differences, whose direct evaluation cancels near x = 1.
    std::vector<long double> series;
    std::string description;

    double f(double x) const;
    long double f(long double x, long double x_minus_one) const { return value(x, x_minus_one); }
    bool has_closed_second() const { return static_cast<bool>(second); }
};

// Radius in |x - 1| inside which `series` replaces the direct formula.
inline constexpr long double kSeriesRadius = 0.05L;

long double eval_series(const std::vector<long double>& coeffs, long double x_minus_one);

// Exact Taylor coefficients at x = 1 of a member of the eight-member ordering
// (unweighted), through (x - 1)^kSeriesOrder.
inline constexpr int kSeriesOrder = 30;
const std::vector<Rational>& member_series(Base b);

// Catalog entry; Diff ids compose w_a f_a - w_b f_b, L ids compose the chain difference.
const Generator& generator_for(const MeasureId& id);

const Generator& l_generator(int k);

// f''(x): the closed form when present, else a central difference.
double f2(const Generator& gen, double x);
long double f2(const Generator& gen, long double x, long double x_minus_one);

// Central 3-point difference with step rel_step * max(1, x), capped at x / 2 so
// the stencil stays inside (0, inf). Evaluated in long double.
long double finite_difference_second(const Generator& gen, long double x, long double rel_step = 1e-6L);

// w + w^2/2 - (1 + w) log(1 + w) for w >= 0, computed without cancellation
// (about w^3 / 6 near 0). With w = (sqrt(x) - 1)^2 / (2 sqrt(x)) the K0 - T
// difference generator is sqrt(x) times this.
long double log_remainder3(long double w);

// a_coeff * a - b_coeff * b.
Generator combine(const Generator& a, const Rational& a_coeff, const Generator& b, const Rational& b_coeff,
                  MeasureId id, std::string description);

Generator scaled(const Generator& g, const Rational& c);

// Copy with the closed-form second derivative removed (forces the finite-difference path).
Generator without_closed_second(const Generator& g);

// Six-member ordering underlying the L measures: m_1 .. m_6.
struct ChainTerm {
    Fraction coeff;
    MeasureId measure;
};
const std::array<ChainTerm, 6>& l_chain();
// (j, i) with L_k = m_j - m_i, 1-based.
std::pair<int, int> l_pair(int k);

Rational to_rational(const Fraction& f);

}  // namespace divkit
