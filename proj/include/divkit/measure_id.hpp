#pragma once

#include <array>
#include <boost/rational.hpp>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace divkit {

enum class Base : std::uint8_t { delta, hellinger, psi, k0, f, j, i, t, k_t, b1, b2, b3, b4, b5, b6, exp_k };

enum class Family : std::uint8_t { base, diff, l };

using Fraction = boost::rational<std::int64_t>;

struct MeasureId {
    Family family = Family::base;
    Base base = Base::delta;   // the measure itself, or the upper chain member of a difference
    Base lower = Base::delta;  // lower chain member of a difference
    int index = 0;             // t for k_t, k for L

    static MeasureId of(Base b);
    static MeasureId k_t(int t);
    // Chain difference c_upper - c_lower; upper must sit to the right of lower.
    static MeasureId diff(Base upper, Base lower);
    static MeasureId l(int k);

    // Stable string name ("k0", "k_t:2", "d:k0-h", "l:7").
    std::string name() const;
    static MeasureId parse(std::string_view name);

    auto operator<=>(const MeasureId&) const = default;
};

// A base measure scaled by its coefficient in the eight-member ordering
// (1/4)Delta <= I <= h <= (1/8)J <= T <= (1/8)K0 <= (1/16)Psi <= (1/16)F.
struct WeightedId {
    Base id;
    Fraction coeff;

    bool operator==(const WeightedId&) const = default;
};

const std::array<WeightedId, 8>& chain_members();
// Position in the ordering, or -1 when b is not a member.
int chain_position(Base b);
WeightedId chain_member(Base b);

// Every catalog id in registry order: bases, B1..B6, K_0..K_5, exp_k, the 28
// differences, L1..L15.
const std::vector<MeasureId>& catalog_ids();

std::string fraction_string(const Fraction& f);
Fraction parse_fraction(std::string_view text);

}  // namespace divkit
