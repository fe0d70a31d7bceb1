#include "divkit/sqrt_rational.hpp"

#include <cmath>
#include <stdexcept>

namespace divkit {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

Poly scale(const Poly& a, const Rational& c) {
    if (c == 0) return {};
    Poly r(a);
    for (auto& x : r) x *= c;
    return r;
}

Poly shift_s(const Poly& a, int n) {
    if (a.empty()) return {};
    Poly r(a.size() + static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < a.size(); ++i) r[i + static_cast<std::size_t>(n)] = a[i];
    return r;
}

const Poly& one_plus_s2() {
    static const Poly p{Rational(1), Rational(0), Rational(1)};
    return p;
}

Poly mul_one_plus_s2(const Poly& a, int n) {
    Poly r(a);
    for (int i = 0; i < n; ++i) r = mul(r, one_plus_s2());
    return r;
}

Poly poly_derivative(const Poly& a) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<long long>(i);
    trim(r);
    return r;
}

// Exact division by (s - root) when it divides evenly; returns false otherwise.
bool divide_linear(const Poly& a, const Rational& root, Poly& out) {
    if (a.empty()) return false;
    const std::size_t n = a.size();
    Poly q(n - 1);
    Rational carry = 0;
    for (std::size_t i = n; i-- > 1;) {
        carry = a[i] + carry * root;
        q[i - 1] = carry;
    }
    const Rational rem = a[0] + carry * root;
    if (rem != 0) return false;
    out = std::move(q);
    return true;
}

// Exact division by 1 + s^2; returns false when it does not divide.
bool divide_one_plus_s2(const Poly& a, Poly& out) {
    if (a.size() < 3) return false;
    Poly r(a);
    Poly q(a.size() - 2);
    for (std::size_t i = r.size(); i-- > 2;) {
        const Rational c = r[i];
        q[i - 2] = c;
        r[i] -= c;
        r[i - 2] -= c;
    }
    if (r[0] != 0 || r[1] != 0) return false;
    trim(q);
    out = std::move(q);
    return true;
}

long double to_ld(const Rational& r) {
    return static_cast<long double>(r);
}

}  // namespace

SqrtRational::SqrtRational(std::vector<Rational> numerator, int s_power, int one_plus_x_power)
    : numerator_(std::move(numerator)), s_power_(s_power), q_power_(one_plus_x_power) {
    normalize();
}

SqrtRational SqrtRational::constant(const Rational& c) {
    return SqrtRational({c}, 0, 0);
}

SqrtRational SqrtRational::sqrt_x() {
    return SqrtRational({Rational(0), Rational(1)}, 0, 0);
}

SqrtRational SqrtRational::x() {
    return SqrtRational({Rational(0), Rational(0), Rational(1)}, 0, 0);
}

void SqrtRational::normalize() {
    trim(numerator_);
    if (numerator_.empty()) {
        s_power_ = q_power_ = one_order_ = 0;
        cofactor_.clear();
        cofactor_ld_.clear();
        return;
    }
    // Cancel s factors against the denominator, and move any excess to the numerator.
    while (s_power_ > 0 && numerator_.front() == 0) {
        numerator_.erase(numerator_.begin());
        --s_power_;
    }
    if (s_power_ < 0) {
        numerator_ = shift_s(numerator_, -s_power_);
        s_power_ = 0;
    }
    if (q_power_ < 0) {
        numerator_ = mul_one_plus_s2(numerator_, -q_power_);
        q_power_ = 0;
    }
    Poly reduced;
    while (q_power_ > 0 && divide_one_plus_s2(numerator_, reduced)) {
        numerator_ = reduced;
        --q_power_;
    }
    one_order_ = 0;
    cofactor_ = numerator_;
    while (divide_linear(cofactor_, Rational(1), reduced)) {
        cofactor_ = reduced;
        ++one_order_;
    }
    cofactor_ld_.resize(cofactor_.size());
    for (std::size_t i = 0; i < cofactor_.size(); ++i) cofactor_ld_[i] = to_ld(cofactor_[i]);
}

SqrtRational SqrtRational::operator+(const SqrtRational& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    const int a = std::max(s_power_, o.s_power_);
    const int b = std::max(q_power_, o.q_power_);
    Poly lhs = mul_one_plus_s2(shift_s(numerator_, a - s_power_), b - q_power_);
    Poly rhs = mul_one_plus_s2(shift_s(o.numerator_, a - o.s_power_), b - o.q_power_);
    return SqrtRational(add(lhs, rhs), a, b);
}

SqrtRational SqrtRational::operator-(const SqrtRational& o) const {
    return *this + o * Rational(-1);
}

SqrtRational SqrtRational::operator*(const SqrtRational& o) const {
    return SqrtRational(mul(numerator_, o.numerator_), s_power_ + o.s_power_, q_power_ + o.q_power_);
}

SqrtRational SqrtRational::operator*(const Rational& c) const {
    return SqrtRational(scale(numerator_, c), s_power_, q_power_);
}

SqrtRational SqrtRational::pow(unsigned n) const {
    SqrtRational r = constant(1);
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
}

SqrtRational SqrtRational::over(int s_power, int one_plus_x_power) const {
    return SqrtRational(numerator_, s_power_ + s_power, q_power_ + one_plus_x_power);
}

SqrtRational SqrtRational::derivative() const {
    if (is_zero()) return {};
    // d/ds [N / (s^a (1+s^2)^b)] = [N' s (1+s^2) - N (a (1+s^2) + 2 b s^2)] / (s^{a+1} (1+s^2)^{b+1}),
    // then d/dx = (1 / (2 s)) d/ds.
    const Poly dn = poly_derivative(numerator_);
    Poly term1 = mul(shift_s(dn, 1), one_plus_s2());
    Poly factor{Rational(s_power_), Rational(0), Rational(s_power_ + 2 * q_power_)};
    trim(factor);
    Poly term2 = mul(numerator_, factor);
    Poly num = add(term1, scale(term2, Rational(-1)));
    return SqrtRational(scale(num, Rational(1, 2)), s_power_ + 2, q_power_ + 1);
}

Rational SqrtRational::leading_at_one() const {
    if (is_zero()) return 0;
    // Near s = 1: (s - 1) ~ (x - 1) / 2, denominator -> 2^b.
    Rational m1 = 0;
    for (const auto& c : cofactor_) m1 += c;
    Rational denom = 1;
    for (int i = 0; i < q_power_; ++i) denom *= 2;
    for (int i = 0; i < one_order_; ++i) denom *= 2;
    return m1 / denom;
}

long double SqrtRational::operator()(long double x, long double x_minus_one) const {
    if (cofactor_ld_.empty()) return 0.0L;
    const long double s = std::sqrt(x);
    long double m = 0.0L;
    for (std::size_t i = cofactor_ld_.size(); i-- > 0;) m = m * s + cofactor_ld_[i];
    if (one_order_ > 0) {
        const long double t = x_minus_one / (s + 1.0L);
        long double tk = 1.0L;
        for (int i = 0; i < one_order_; ++i) tk *= t;
        m *= tk;
    }
    long double den = 1.0L;
    for (int i = 0; i < s_power_; ++i) den *= s;
    const long double one_plus_x = 1.0L + x;
    for (int i = 0; i < q_power_; ++i) den *= one_plus_x;
    return m / den;
}

double SqrtRational::operator()(double x) const {
    const long double xl = x;
    return static_cast<double>((*this)(xl, xl - 1.0L));
}

}  // namespace divkit
