#include "divkit/divergences.hpp"

#include <cmath>
#include <string>

#include "divkit/errors.hpp"
#include "divkit/summation.hpp"

namespace divkit {

namespace {

using LD = long double;

void check_dims(const Distribution& p, const Distribution& q) {
    if (p.dim() != q.dim()) {
        throw DimensionMismatch("p has dim " + std::to_string(p.dim()) + ", q has dim " + std::to_string(q.dim()));
    }
}

struct Coord {
    LD p, q;
    LD d;    // p - q
    LD s;    // p + q
    LD pq;
    LD ab;   // sqrt(pq)
    LD dr;   // sqrt(p) - sqrt(q)
    LD sr;   // sqrt(p) + sqrt(q)

    Coord(double pi, double qi)
        : p(pi), q(qi), d(static_cast<LD>(pi) - static_cast<LD>(qi)), s(p + q), pq(p * q), ab(std::sqrt(pq)) {
        sr = std::sqrt(p) + std::sqrt(q);
        dr = d / sr;
    }
};

LD ipow(LD x, int n) {
    LD r = 1.0L;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

LD exp_exponent_checked(const Coord& c) {
    const LD u = c.d * c.d / c.pq;
    if (u > 700.0L) throw Overflow("(p-q)^2/(pq) = " + std::to_string(static_cast<double>(u)) + " exceeds 700");
    return u;
}

LD base_term(Base b, int index, const Coord& c) {
    switch (b) {
        case Base::delta: return c.d * c.d / c.s;
        case Base::hellinger: return 0.5L * c.dr * c.dr;
        case Base::psi: return c.d * c.d * c.s / c.pq;
        case Base::k0: return c.d * c.d / c.ab;
        case Base::f: return c.d * c.d * c.s * c.s / (2.0L * c.pq * c.ab);
        case Base::j: return c.d * std::log1p(c.d / c.q);
        case Base::i: {
            const LD r = c.d / c.s;
            return 0.5L * (c.p * std::log1p(r) + c.q * std::log1p(-r));
        }
        case Base::t: return 0.25L * c.s * std::log1p(c.d * c.d / (4.0L * c.pq));
        case Base::k_t: return ipow(c.d, 2 * index + 2) / ipow(c.ab, 2 * index + 1);
        case Base::b1: return ipow(c.d, 4) / (c.pq * c.ab);
        case Base::b2: return ipow(c.dr, 4) / c.s;
        case Base::b3: return ipow(c.dr, 4) / c.ab;
        case Base::b4: return c.d * c.d * c.dr * c.dr / (c.s * c.ab);
        case Base::b5: return c.d * c.d * c.dr * c.dr / c.pq;
        case Base::b6: return ipow(c.d, 4) / (c.pq * c.s);
        case Base::exp_k: return c.d * c.d / c.ab * std::exp(exp_exponent_checked(c));
    }
    throw UnknownId("unknown base measure");
}

// Differences of two algebraic members, factored so that nothing cancels near p = q.
// Returns false when a member is logarithmic.
bool algebraic_diff_term(Base up, Base lo, const Coord& c, LD& out) {
    const LD d2 = c.d * c.d;
    const LD r2 = c.dr * c.dr;
    const LD pq32 = c.pq * c.ab;
    auto is = [&](Base u, Base l) { return up == u && lo == l; };
    if (is(Base::hellinger, Base::delta)) out = r2 * r2 / (4.0L * c.s);
    else if (is(Base::k0, Base::delta)) out = d2 * r2 / (8.0L * c.ab * c.s);
    else if (is(Base::k0, Base::hellinger)) out = r2 * r2 / (8.0L * c.ab);
    else if (is(Base::psi, Base::delta)) out = d2 * d2 / (16.0L * c.pq * c.s);
    else if (is(Base::psi, Base::hellinger)) out = r2 * r2 * (c.s + 4.0L * c.ab) / (16.0L * c.pq);
    else if (is(Base::psi, Base::k0)) out = d2 * r2 / (16.0L * c.pq);
    else if (is(Base::f, Base::delta)) out = d2 * r2 * (c.s * c.s + 2.0L * c.ab * c.s + 4.0L * c.pq) / (32.0L * pq32 * c.s);
    else if (is(Base::f, Base::hellinger)) out = r2 * r2 * (c.s * c.s + 4.0L * c.ab * c.s + 8.0L * c.pq) / (32.0L * pq32);
    else if (is(Base::f, Base::k0)) out = d2 * d2 / (32.0L * pq32);
    else if (is(Base::f, Base::psi)) out = d2 * c.s * r2 / (32.0L * pq32);
    else return false;
    return true;
}

// Per-coordinate L_k in factored form (corrected where the typeset form is wrong).
LD l_term(int k, const Coord& c) {
    const LD d2 = c.d * c.d;
    const LD r2 = c.dr * c.dr;
    const LD r4 = r2 * r2;
    const LD pq32 = c.pq * c.ab;
    switch (k) {
        case 1:
        case 2: return r4 * r2 / (16.0L * c.ab * c.s);
        case 3: return r4 * r2 / (8.0L * c.ab * c.s);
        case 4: return r4 * r4 / (64.0L * c.pq * c.s);
        case 5: return d2 * r4 / (64.0L * c.pq * c.s);
        case 6: return (c.s + 6.0L * c.ab) * r4 * r2 / (64.0L * c.pq * c.s);
        case 7: return (2.0L * c.s + r2) * d2 * r2 / (64.0L * c.pq * c.s);
        case 8: return c.s * r4 / (16.0L * c.pq);
        case 9: return d2 * (r2 + c.ab) * r2 / (16.0L * c.pq * c.s);
        case 10: return (c.s * c.s + 2.0L * c.ab * r2) * r4 / (16.0L * c.pq * c.s);
        case 11: return c.s * d2 * r2 / (32.0L * pq32);
        case 12: return (c.s + c.ab + r2) * d2 * d2 / (64.0L * pq32 * c.s);
        case 13: return c.s * (c.s + 4.0L * c.ab) * r4 / (32.0L * pq32);
        case 14: return (c.p * c.p + c.q * c.q + 2.0L * c.ab * c.s) * c.sr * c.sr * r4 / (32.0L * pq32 * c.s);
        case 15:
            return (ipow(c.p, 3) + ipow(c.q, 3) + 4.0L * c.ab * (c.p * c.p + c.q * c.q) + 7.0L * c.pq * c.s) * r4 /
                   (32.0L * pq32 * c.s);
    }
    throw IndexOutOfRange("L index must be in 1..15, got " + std::to_string(k));
}

LD l_printed_term(int k, const Coord& c) {
    const LD r2 = c.dr * c.dr;
    const LD r4 = r2 * r2;
    const LD pq32 = c.pq * c.ab;
    switch (k) {
        case 6: return (c.s + 6.0L * c.ab) * r2 / (64.0L * c.pq * c.s);
        case 10: return (c.ab * c.s + r2) * r4 / (16.0L * c.pq * c.s);
        case 13: return c.s * (c.s + 4.0L * c.ab) * r4 / (64.0L * pq32 * c.s);
        case 15: return c.sr * c.sr * l_term(15, c);
        default: return l_term(k, c);
    }
}

LD term(const MeasureId& id, const Coord& c) {
    switch (id.family) {
        case Family::base: return base_term(id.base, id.index, c);
        case Family::diff: {
            if (id.base == Base::k0 && id.lower == Base::t) return c.ab * log_remainder3(c.dr * c.dr / (2.0L * c.ab));
            if (LD v = 0.0L; algebraic_diff_term(id.base, id.lower, c, v)) return v;
            const WeightedId up = chain_member(id.base);
            const WeightedId lo = chain_member(id.lower);
            const LD wu = static_cast<LD>(up.coeff.numerator()) / static_cast<LD>(up.coeff.denominator());
            const LD wl = static_cast<LD>(lo.coeff.numerator()) / static_cast<LD>(lo.coeff.denominator());
            return wu * base_term(up.id, 0, c) - wl * base_term(lo.id, 0, c);
        }
        case Family::l: return l_term(id.index, c);
    }
    throw UnknownId("corrupt measure id");
}

template <typename TermFn>
double sum_terms(const Distribution& p, const Distribution& q, TermFn&& fn) {
    check_dims(p, q);
    CompensatedSum<LD> acc;
    for (std::size_t i = 0; i < p.dim(); ++i) acc += fn(Coord(p[i], q[i]));
    const LD v = acc.value();
    if (!std::isfinite(v)) throw Overflow("divergence sum is not finite");
    return static_cast<double>(v);
}

}  // namespace

DivergenceValue csiszar(const Generator& gen, const Distribution& p, const Distribution& q) {
    const double v = sum_terms(p, q, [&](const Coord& c) {
        const LD x = c.p / c.q;
        return c.q * gen.value(x, c.d / c.q);
    });
    return {gen.id, v, p.dim()};
}

DivergenceValue closed_form(const MeasureId& id, const Distribution& p, const Distribution& q) {
    // Logarithmic differences switch to their Taylor series close to p_i = q_i.
    const std::vector<long double>* series = nullptr;
    if (id.family == Family::diff && !(id.base == Base::k0 && id.lower == Base::t)) {
        const Generator& g = generator_for(id);
        if (!g.series.empty()) series = &g.series;
    }
    return {id, sum_terms(p, q, [&](const Coord& c) {
                if (series) {
                    const LD ratio_m1 = c.d / c.q;
                    if (std::abs(ratio_m1) <= kSeriesRadius) return c.q * eval_series(*series, ratio_m1);
                }
                return term(id, c);
            }),
            p.dim()};
}

DivergenceValue k_t(int t, const Distribution& p, const Distribution& q) {
    return closed_form(MeasureId::k_t(t), p, q);
}

DivergenceValue exp_divergence(const Distribution& p, const Distribution& q) {
    return closed_form(MeasureId::of(Base::exp_k), p, q);
}

DivergenceValue partial_sum(int terms, const Distribution& p, const Distribution& q) {
    if (terms < 0) throw IndexOutOfRange("number of series terms must be >= 0");
    check_dims(p, q);
    // Plain accumulation of nonnegative addends keeps the sequence of partial sums monotone.
    LD acc = 0.0L;
    LD factorial = 1.0L;
    for (int t = 0; t <= terms; ++t) {
        if (t > 0) factorial *= static_cast<LD>(t);
        CompensatedSum<LD> kt;
        for (std::size_t i = 0; i < p.dim(); ++i) kt += base_term(Base::k_t, t, Coord(p[i], q[i]));
        acc += kt.value() / factorial;
    }
    return {MeasureId::of(Base::exp_k), static_cast<double>(acc), p.dim()};
}

DivergenceValue difference(const WeightedId& upper, const WeightedId& lower, const Distribution& p,
                           const Distribution& q) {
    const int u = chain_position(upper.id);
    const int l = chain_position(lower.id);
    if (u < 0 || l < 0 || u <= l || chain_member(upper.id) != upper || chain_member(lower.id) != lower) {
        throw InvalidPair("difference needs (upper, lower) members of the ordering with their chain coefficients");
    }
    return closed_form(MeasureId::diff(upper.id, lower.id), p, q);
}

DivergenceValue l_measure(int k, const Distribution& p, const Distribution& q) {
    return csiszar(l_generator(k), p, q);
}

double l_printed_form(int k, const Distribution& p, const Distribution& q) {
    if (k < 1 || k > 15) throw IndexOutOfRange("L index must be in 1..15, got " + std::to_string(k));
    return sum_terms(p, q, [&](const Coord& c) { return l_printed_term(k, c); });
}

bool l_printed_form_is_erratum(int k) {
    return k == 6 || k == 10 || k == 13 || k == 15;
}

}  // namespace divkit
