#pragma once

#include <string>
#include <vector>

#include "divkit/measure_id.hpp"

namespace divkit {

// A sharp two-measure bound upper <= beta * lower, beta being the supremum of
// the second-derivative ratio of the two generators.
struct RatioEntry {
    std::string label;  // short label, e.g. "K0J_PsiI"
    MeasureId upper;
    MeasureId lower;
    Fraction beta;
    std::string group;  // "diff" (28-difference family), "l" (L family), "series" (K_t terms)

    std::string ratio_name() const { return upper.name() + "/" + lower.name(); }
};

// 18 difference pairs, 14 L pairs, 2 series pairs.
const std::vector<RatioEntry>& ratio_table();

// By short label or by "upper/lower" ratio name; nullptr when absent.
const RatioEntry* find_ratio(const std::string& key);

}  // namespace divkit
