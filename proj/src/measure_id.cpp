#include "divkit/measure_id.hpp"

#include <charconv>

#include "divkit/errors.hpp"

namespace divkit {

namespace {

struct BaseName {
    Base base;
    std::string_view name;
    std::string_view short_name;  // used inside difference names
};

constexpr std::array<BaseName, 15> kBaseNames{{
    {Base::delta, "delta", "delta"},
    {Base::hellinger, "hellinger", "h"},
    {Base::psi, "psi", "psi"},
    {Base::k0, "k0", "k0"},
    {Base::f, "f", "f"},
    {Base::j, "j", "j"},
    {Base::i, "i", "i"},
    {Base::t, "t", "t"},
    {Base::b1, "b1", "b1"},
    {Base::b2, "b2", "b2"},
    {Base::b3, "b3", "b3"},
    {Base::b4, "b4", "b4"},
    {Base::b5, "b5", "b5"},
    {Base::b6, "b6", "b6"},
    {Base::exp_k, "exp_k", "exp_k"},
}};

std::string_view base_name(Base b, bool short_form) {
    for (const auto& e : kBaseNames) {
        if (e.base == b) return short_form ? e.short_name : e.name;
    }
    throw UnknownId("no name for base measure");
}

bool lookup_base(std::string_view text, Base& out) {
    for (const auto& e : kBaseNames) {
        if (text == e.name || text == e.short_name) {
            out = e.base;
            return true;
        }
    }
    return false;
}

int parse_int(std::string_view text, std::string_view whole) {
    int v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw UnknownId("bad index in measure name '" + std::string(whole) + "'");
    }
    return v;
}

}  // namespace

MeasureId MeasureId::of(Base b) {
    if (b == Base::k_t) throw UnknownId("k_t needs an index; use MeasureId::k_t");
    return MeasureId{Family::base, b, Base::delta, 0};
}

MeasureId MeasureId::k_t(int t) {
    if (t < 0) throw IndexOutOfRange("k_t index must be >= 0");
    return MeasureId{Family::base, Base::k_t, Base::delta, t};
}

MeasureId MeasureId::diff(Base upper, Base lower) {
    const int u = chain_position(upper);
    const int l = chain_position(lower);
    if (u < 0 || l < 0 || u <= l) throw InvalidPair("difference needs two ordered chain members");
    return MeasureId{Family::diff, upper, lower, 0};
}

MeasureId MeasureId::l(int k) {
    if (k < 1 || k > 15) throw IndexOutOfRange("L index must be in 1..15, got " + std::to_string(k));
    return MeasureId{Family::l, Base::delta, Base::delta, k};
}

std::string MeasureId::name() const {
    switch (family) {
        case Family::base:
            if (base == Base::k_t) return "k_t:" + std::to_string(index);
            return std::string(base_name(base, false));
        case Family::diff:
            return "d:" + std::string(base_name(base, true)) + "-" + std::string(base_name(lower, true));
        case Family::l:
            return "l:" + std::to_string(index);
    }
    throw UnknownId("corrupt measure id");
}

MeasureId MeasureId::parse(std::string_view name) {
    if (name.starts_with("k_t:")) return k_t(parse_int(name.substr(4), name));
    if (name.starts_with("l:")) return l(parse_int(name.substr(2), name));
    if (name.starts_with("d:")) {
        const auto body = name.substr(2);
        // Split at the dash; neither member name contains one.
        const auto dash = body.find('-');
        Base upper{}, lower{};
        if (dash == std::string_view::npos || !lookup_base(body.substr(0, dash), upper) ||
            !lookup_base(body.substr(dash + 1), lower)) {
            throw UnknownId("unknown difference '" + std::string(name) + "'");
        }
        try {
            return diff(upper, lower);
        } catch (const InvalidPair&) {
            throw UnknownId("'" + std::string(name) + "' is not an ordered chain pair");
        }
    }
    Base b{};
    if (lookup_base(name, b)) return of(b);
    throw UnknownId("unknown measure '" + std::string(name) + "'");
}

const std::array<WeightedId, 8>& chain_members() {
    static const std::array<WeightedId, 8> members{{
        {Base::delta, Fraction(1, 4)},
        {Base::i, Fraction(1)},
        {Base::hellinger, Fraction(1)},
        {Base::j, Fraction(1, 8)},
        {Base::t, Fraction(1)},
        {Base::k0, Fraction(1, 8)},
        {Base::psi, Fraction(1, 16)},
        {Base::f, Fraction(1, 16)},
    }};
    return members;
}

int chain_position(Base b) {
    const auto& m = chain_members();
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].id == b) return static_cast<int>(i);
    }
    return -1;
}

WeightedId chain_member(Base b) {
    const int pos = chain_position(b);
    if (pos < 0) throw InvalidPair("not a member of the eight-measure ordering");
    return chain_members()[static_cast<std::size_t>(pos)];
}

const std::vector<MeasureId>& catalog_ids() {
    static const std::vector<MeasureId> ids = [] {
        std::vector<MeasureId> v;
        for (Base b : {Base::delta, Base::hellinger, Base::psi, Base::k0, Base::f, Base::j, Base::i, Base::t, Base::b1,
                       Base::b2, Base::b3, Base::b4, Base::b5, Base::b6}) {
            v.push_back(MeasureId::of(b));
        }
        for (int t = 0; t <= 5; ++t) v.push_back(MeasureId::k_t(t));
        v.push_back(MeasureId::of(Base::exp_k));
        const auto& m = chain_members();
        for (std::size_t up = 1; up < m.size(); ++up) {
            for (std::size_t lo = 0; lo < up; ++lo) v.push_back(MeasureId::diff(m[up].id, m[lo].id));
        }
        for (int k = 1; k <= 15; ++k) v.push_back(MeasureId::l(k));
        return v;
    }();
    return ids;
}

std::string fraction_string(const Fraction& f) {
    if (f.denominator() == 1) return std::to_string(f.numerator());
    return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

Fraction parse_fraction(std::string_view text) {
    const auto slash = text.find('/');
    auto parse = [&](std::string_view part) {
        std::int64_t v = 0;
        const auto* end = part.data() + part.size();
        auto [ptr, ec] = std::from_chars(part.data(), end, v);
        if (ec != std::errc() || ptr != end || part.empty()) {
            throw std::invalid_argument("bad fraction '" + std::string(text) + "'");
        }
        return v;
    };
    if (slash == std::string_view::npos) return Fraction(parse(text));
    return Fraction(parse(text.substr(0, slash)), parse(text.substr(slash + 1)));
}

}  // namespace divkit
