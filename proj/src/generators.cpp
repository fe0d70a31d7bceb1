#include "divkit/generators.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "divkit/errors.hpp"

namespace divkit {

namespace {

using SR = SqrtRational;

SR s_() { return SR::sqrt_x(); }
SR x_() { return SR::x(); }
SR one() { return SR::constant(1); }
SR xm1() { return x_() - one(); }
SR sm1() { return s_() - one(); }
SR xp1() { return x_() + one(); }

ScalarFn eval_of(const SR& r) {
    return [r](long double x, long double xm) { return r(x, xm); };
}

Generator algebraic(MeasureId id, SR f, std::string description) {
    Generator g;
    g.id = id;
    g.exact = f;
    g.exact_second = f.derivative().derivative();
    g.value = eval_of(f);
    g.second = eval_of(*g.exact_second);
    g.description = std::move(description);
    return g;
}

Generator logarithmic(MeasureId id, ScalarFn f, SR f2, std::string description) {
    Generator g;
    g.id = id;
    g.value = std::move(f);
    g.exact_second = f2;
    g.second = eval_of(f2);
    g.description = std::move(description);
    return g;
}

SR k_t_exact(int t) {
    return xm1().pow(static_cast<unsigned>(2 * t + 2)).over(2 * t + 1, 0);
}

long double exp_k_value(long double x, long double xm) {
    const long double u = xm * xm / x;
    if (u > 700.0L) throw Overflow("exponent (x-1)^2/x = " + std::to_string(static_cast<double>(u)) + " exceeds 700");
    return xm * xm / std::sqrt(x) * std::exp(u);
}

long double exp_k_second(long double x, long double xm) {
    // f = A e^u with A = (x-1)^2 / sqrt(x), u = (x-1)^2 / x.
    const long double s = std::sqrt(x);
    const long double x2 = x * x;
    const long double u = xm * xm / x;
    const long double a = xm * xm / s;
    const long double da = xm * (3.0L * x + 1.0L) / (2.0L * x * s);
    const long double dda = (3.0L * x2 + 2.0L * x + 3.0L) / (4.0L * x2 * s);
    const long double du = xm * (x + 1.0L) / x2;
    const long double ddu = 2.0L / (x2 * x);
    return std::exp(u) * (dda + 2.0L * da * du + a * ddu + a * du * du);
}

Generator make_base(const MeasureId& id) {
    const Rational half(1, 2);
    switch (id.base) {
        case Base::delta:
            return algebraic(id, xm1().pow(2).over(0, 1), "(x-1)^2/(x+1)");
        case Base::hellinger:
            return algebraic(id, sm1().pow(2) * half, "(sqrt(x)-1)^2/2");
        case Base::psi:
            return algebraic(id, (xm1().pow(2) * xp1()).over(2, 0), "(x-1)^2 (x+1)/x");
        case Base::k0:
            return algebraic(id, k_t_exact(0), "(x-1)^2/sqrt(x)");
        case Base::f:
            return algebraic(id, (x_().pow(2) - one()).pow(2).over(3, 0) * half, "(x^2-1)^2/(2 x^(3/2))");
        case Base::j:
            return logarithmic(
                id, [](long double, long double xm) { return xm * std::log1p(xm); }, xp1().over(4, 0),
                "(x-1) ln x");
        case Base::i:
            return logarithmic(
                id,
                [](long double x, long double xm) {
                    const long double r = xm / (x + 1.0L);
                    return 0.5L * (x * std::log1p(r) + std::log1p(-r));
                },
                SR::constant(half).over(2, 1), "(x/2) ln x - ((x+1)/2) ln((x+1)/2)");
        case Base::t:
            return logarithmic(
                id,
                [](long double x, long double xm) { return 0.25L * (x + 1.0L) * std::log1p(xm * xm / (4.0L * x)); },
                (x_().pow(2) + one()).over(4, 1) * Rational(1, 4), "((x+1)/2) ln((x+1)/(2 sqrt(x)))");
        case Base::k_t:
            return algebraic(id, k_t_exact(id.index),
                             "(x-1)^" + std::to_string(2 * id.index + 2) + "/x^(" + std::to_string(2 * id.index + 1) +
                                 "/2)");
        case Base::b1:
            return algebraic(id, k_t_exact(1), "(x-1)^4/x^(3/2)");
        case Base::b2:
            return algebraic(id, sm1().pow(4).over(0, 1), "(sqrt(x)-1)^4/(x+1)");
        case Base::b3:
            return algebraic(id, sm1().pow(4).over(1, 0), "(sqrt(x)-1)^4/sqrt(x)");
        case Base::b4:
            return algebraic(id, (xm1().pow(2) * sm1().pow(2)).over(1, 1), "(x-1)^2 (sqrt(x)-1)^2/((x+1) sqrt(x))");
        case Base::b5:
            return algebraic(id, (xm1().pow(2) * sm1().pow(2)).over(2, 0), "(x-1)^2 (sqrt(x)-1)^2/x");
        case Base::b6:
            return algebraic(id, xm1().pow(4).over(2, 1), "(x-1)^4/(x (x+1))");
        case Base::exp_k: {
            Generator g;
            g.id = id;
            g.value = exp_k_value;
            g.second = exp_k_second;
            g.description = "(x-1)^2/sqrt(x) exp((x-1)^2/x)";
            return g;
        }
    }
    throw UnknownId("unknown base measure");
}

std::string coeff_prefix(const Fraction& c) {
    return c == Fraction(1) ? std::string() : "(" + fraction_string(c) + ")";
}

Generator make(const MeasureId& id);

using Series = std::vector<Rational>;

Series zero_series() {
    return Series(kSeriesOrder + 1, Rational(0));
}

// (1 + a d)^alpha
Series binomial(const Rational& alpha, const Rational& a) {
    Series c = zero_series();
    c[0] = 1;
    for (int n = 1; n <= kSeriesOrder; ++n) c[n] = c[n - 1] * (alpha - (n - 1)) / n * a;
    return c;
}

// log(1 + a d)
Series log_series(const Rational& a) {
    Series c = zero_series();
    Rational power = 1;
    for (int n = 1; n <= kSeriesOrder; ++n) {
        power *= a;
        c[n] = (n % 2 == 1 ? power : Rational(-power)) / n;
    }
    return c;
}

Series poly(std::initializer_list<Rational> coeffs) {
    Series c = zero_series();
    int n = 0;
    for (const auto& v : coeffs) c[n++] = v;
    return c;
}

Series operator*(const Series& a, const Series& b) {
    Series c = zero_series();
    for (int i = 0; i <= kSeriesOrder; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= kSeriesOrder; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

Series operator*(const Series& a, const Rational& k) {
    Series c(a);
    for (auto& v : c) v *= k;
    return c;
}

Series operator+(const Series& a, const Series& b) {
    Series c(a);
    for (int i = 0; i <= kSeriesOrder; ++i) c[i] += b[i];
    return c;
}

Series operator-(const Series& a, const Series& b) {
    return a + b * Rational(-1);
}

Series shifted(const Series& a, int k) {
    Series c = zero_series();
    for (int i = 0; i + k <= kSeriesOrder; ++i) c[i + k] = a[i];
    return c;
}

Series make_member_series(Base b) {
    const Rational half(1, 2);
    switch (b) {
        case Base::delta: return shifted(binomial(-1, half), 2) * half;
        case Base::hellinger: {
            const Series root = binomial(half, 1) - poly({1});
            return root * root * half;
        }
        case Base::psi: return shifted(poly({2, 1}) * binomial(-1, 1), 2);
        case Base::k0: return shifted(binomial(-half, 1), 2);
        case Base::f: return shifted(poly({4, 4, 1}) * binomial(Rational(-3, 2), 1), 2) * half;
        case Base::j: return shifted(log_series(1), 1);
        case Base::i: return (poly({1, 1}) * (log_series(1) - log_series(half)) - log_series(half)) * half;
        case Base::t: return poly({1, half}) * (log_series(half) - log_series(1) * half);
        default: break;
    }
    throw InvalidPair("no series for " + MeasureId::of(b).name());
}

bool logarithmic_member(Base b) {
    return b == Base::j || b == Base::i || b == Base::t;
}

Generator make_diff(const MeasureId& id) {
    const WeightedId up = chain_member(id.base);
    const WeightedId lo = chain_member(id.lower);
    const Generator& a = generator_for(MeasureId::of(up.id));
    const Generator& b = generator_for(MeasureId::of(lo.id));
    Generator g = combine(a, to_rational(up.coeff), b, to_rational(lo.coeff), id,
                          coeff_prefix(up.coeff) + MeasureId::of(up.id).name() + " - " + coeff_prefix(lo.coeff) +
                              MeasureId::of(lo.id).name());
    if (logarithmic_member(up.id) || logarithmic_member(lo.id)) {
        const Series diff = member_series(up.id) * to_rational(up.coeff) - member_series(lo.id) * to_rational(lo.coeff);
        for (const Rational& c : diff) g.series.push_back(static_cast<long double>(c));
        g.value = [direct = g.value, coeffs = g.series](long double x, long double xm) {
            return std::abs(xm) <= kSeriesRadius ? eval_series(coeffs, xm) : direct(x, xm);
        };
    }
    if (id == MeasureId::diff(Base::k0, Base::t)) {
        // Vanishes to sixth order at x = 1; the plain difference loses everything there.
        g.value = [](long double x, long double xm) {
            const long double s = std::sqrt(x);
            const long double sm = xm / (s + 1.0L);
            return s * log_remainder3(sm * sm / (2.0L * s));
        };
    }
    return g;
}

Generator make_l(const MeasureId& id) {
    const auto [j, i] = l_pair(id.index);
    const ChainTerm& hi = l_chain()[static_cast<std::size_t>(j - 1)];
    const ChainTerm& lo = l_chain()[static_cast<std::size_t>(i - 1)];
    return combine(generator_for(hi.measure), to_rational(hi.coeff), generator_for(lo.measure), to_rational(lo.coeff),
                   id,
                   coeff_prefix(hi.coeff) + hi.measure.name() + " - " + coeff_prefix(lo.coeff) + lo.measure.name());
}

Generator make(const MeasureId& id) {
    switch (id.family) {
        case Family::base: return make_base(id);
        case Family::diff: return make_diff(id);
        case Family::l: return make_l(id);
    }
    throw UnknownId("corrupt measure id");
}

}  // namespace

double Generator::f(double x) const {
    const long double xl = x;
    return static_cast<double>(value(xl, xl - 1.0L));
}

const Generator& generator_for(const MeasureId& id) {
    // Entries are created on first use and never mutated afterwards.
    static std::mutex mutex;
    static std::map<MeasureId, std::unique_ptr<Generator>> cache;
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(id);
        if (it != cache.end()) return *it->second;
    }
    // Built outside the lock: composite ids recurse into generator_for.
    auto gen = std::make_unique<Generator>(make(id));
    std::lock_guard lock(mutex);
    auto [it, inserted] = cache.emplace(id, std::move(gen));
    return *it->second;
}

const Generator& l_generator(int k) {
    return generator_for(MeasureId::l(k));
}

long double finite_difference_second(const Generator& gen, long double x, long double rel_step) {
    const long double h = std::min(rel_step * std::max(1.0L, x), x / 2.0L);
    const long double xm = x - 1.0L;
    const long double up = gen.value(x + h, xm + h);
    const long double mid = gen.value(x, xm);
    const long double down = gen.value(x - h, xm - h);
    return (up - 2.0L * mid + down) / (h * h);
}

long double eval_series(const std::vector<long double>& coeffs, long double x_minus_one) {
    long double acc = 0.0L;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x_minus_one + *it;
    return acc;
}

const std::vector<Rational>& member_series(Base b) {
    static const std::map<Base, Series> table = [] {
        std::map<Base, Series> t;
        for (const auto& m : chain_members()) t.emplace(m.id, make_member_series(m.id));
        return t;
    }();
    const auto it = table.find(b);
    if (it == table.end()) throw InvalidPair("no series for " + MeasureId::of(b).name());
    return it->second;
}

long double log_remainder3(long double w) {
    if (w >= 0.1L) return w + 0.5L * w * w - (1.0L + w) * std::log1p(w);
    long double sum = 0.0L;
    long double power = w * w;
    for (int n = 3; n < 64; ++n) {
        power *= w;
        const long double term = power / (static_cast<long double>(n) * (n - 1));
        sum += (n % 2 == 1) ? term : -term;
        if (term <= 1e-22L * sum) break;
    }
    return sum;
}

long double f2(const Generator& gen, long double x, long double x_minus_one) {
    if (!(x > 0.0L) || !std::isfinite(x)) throw NonPositiveX("second derivative needs x > 0");
    if (gen.second) return gen.second(x, x_minus_one);
    return finite_difference_second(gen, x);
}

double f2(const Generator& gen, double x) {
    const long double xl = x;
    return static_cast<double>(f2(gen, xl, xl - 1.0L));
}

Generator combine(const Generator& a, const Rational& a_coeff, const Generator& b, const Rational& b_coeff,
                  MeasureId id, std::string description) {
    Generator g;
    g.id = id;
    g.description = std::move(description);
    if (a.exact && b.exact) {
        g.exact = *a.exact * a_coeff - *b.exact * b_coeff;
        g.value = eval_of(*g.exact);
    } else {
        const long double wa = static_cast<long double>(a_coeff);
        const long double wb = static_cast<long double>(b_coeff);
        g.value = [fa = a.value, fb = b.value, wa, wb](long double x, long double xm) {
            return wa * fa(x, xm) - wb * fb(x, xm);
        };
    }
    if (a.exact_second && b.exact_second) {
        g.exact_second = *a.exact_second * a_coeff - *b.exact_second * b_coeff;
        g.second = eval_of(*g.exact_second);
    } else if (a.second && b.second) {
        const long double wa = static_cast<long double>(a_coeff);
        const long double wb = static_cast<long double>(b_coeff);
        g.second = [sa = a.second, sb = b.second, wa, wb](long double x, long double xm) {
            return wa * sa(x, xm) - wb * sb(x, xm);
        };
    }
    return g;
}

Generator scaled(const Generator& g, const Rational& c) {
    Generator out = g;
    const long double w = static_cast<long double>(c);
    if (g.exact) {
        out.exact = *g.exact * c;
        out.value = eval_of(*out.exact);
    } else {
        out.value = [f = g.value, w](long double x, long double xm) { return w * f(x, xm); };
    }
    if (g.exact_second) {
        out.exact_second = *g.exact_second * c;
        out.second = eval_of(*out.exact_second);
    } else if (g.second) {
        out.second = [f = g.second, w](long double x, long double xm) { return w * f(x, xm); };
    }
    out.description = "(" + c.str() + ") * [" + g.description + "]";
    return out;
}

Generator without_closed_second(const Generator& g) {
    Generator out = g;
    out.second = nullptr;
    out.exact_second.reset();
    return out;
}

const std::array<ChainTerm, 6>& l_chain() {
    static const std::array<ChainTerm, 6> chain{{
        {Fraction(1), MeasureId::diff(Base::hellinger, Base::delta)},
        {Fraction(1, 2), MeasureId::diff(Base::k0, Base::delta)},
        {Fraction(1), MeasureId::diff(Base::k0, Base::hellinger)},
        {Fraction(1, 4), MeasureId::diff(Base::psi, Base::delta)},
        {Fraction(1), MeasureId::diff(Base::psi, Base::k0)},
        {Fraction(1), MeasureId::diff(Base::f, Base::k0)},
    }};
    return chain;
}

std::pair<int, int> l_pair(int k) {
    static constexpr std::array<std::pair<int, int>, 15> pairs{{
        {2, 1}, {3, 2}, {3, 1}, {4, 3}, {4, 2}, {4, 1}, {5, 4}, {5, 3},
        {5, 2}, {5, 1}, {6, 5}, {6, 4}, {6, 3}, {6, 2}, {6, 1},
    }};
    if (k < 1 || k > 15) throw IndexOutOfRange("L index must be in 1..15, got " + std::to_string(k));
    return pairs[static_cast<std::size_t>(k - 1)];
}

Rational to_rational(const Fraction& f) {
    return Rational(f.numerator(), f.denominator());
}

}  // namespace divkit
