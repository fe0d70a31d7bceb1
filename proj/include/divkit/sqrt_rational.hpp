#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace divkit {

using Rational = boost::multiprecision::cpp_rational;

// Exact function of x > 0 of the form N(s) / (s^a * (1 + s^2)^b) with s = sqrt(x)
// and N a polynomial with rational coefficients. Closed under +, -, *, scaling
// and d/dx, which covers every algebraic generator and all their derivatives.
//
// For evaluation N is stored factored as (s - 1)^k * M(s), so values near x = 1
// keep full relative precision.
class SqrtRational {
public:
    SqrtRational() = default;

    // coeffs are ascending powers of s.
    SqrtRational(std::vector<Rational> numerator, int s_power, int one_plus_x_power);

    static SqrtRational constant(const Rational& c);
    static SqrtRational sqrt_x();  // s
    static SqrtRational x();       // s^2

    SqrtRational operator+(const SqrtRational& o) const;
    SqrtRational operator-(const SqrtRational& o) const;
    SqrtRational operator*(const SqrtRational& o) const;
    SqrtRational operator*(const Rational& c) const;
    SqrtRational pow(unsigned n) const;
    // Division by s^a (1 + x)^b.
    SqrtRational over(int s_power, int one_plus_x_power) const;

    SqrtRational derivative() const;  // d/dx

    bool is_zero() const { return numerator_.empty(); }
    // Multiplicity of the root at x = 1.
    int order_at_one() const { return one_order_; }
    // Leading coefficient c in f(x) ~ c (x - 1)^k as x -> 1.
    Rational leading_at_one() const;

    long double operator()(long double x, long double x_minus_one) const;
    double operator()(double x) const;

    const std::vector<Rational>& numerator() const { return numerator_; }
    int s_power() const { return s_power_; }
    int one_plus_x_power() const { return q_power_; }

private:
    void normalize();

    std::vector<Rational> numerator_;  // full N(s), ascending
    int s_power_ = 0;
    int q_power_ = 0;

    int one_order_ = 0;                // k
    std::vector<Rational> cofactor_;   // M(s), ascending
    std::vector<long double> cofactor_ld_;
};

}  // namespace divkit
