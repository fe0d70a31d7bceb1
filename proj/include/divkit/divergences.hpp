#pragma once

#include <cstddef>

#include "divkit/distributions.hpp"
#include "divkit/generators.hpp"
#include "divkit/measure_id.hpp"

namespace divkit {

struct DivergenceValue {
    MeasureId measure;
    double value = 0.0;
    std::size_t p_dim = 0;
};

// sum_i q_i f(p_i / q_i), compensated.
DivergenceValue csiszar(const Generator& gen, const Distribution& p, const Distribution& q);

// Direct per-coordinate formula in (p_i, q_i); never goes through f.
DivergenceValue closed_form(const MeasureId& id, const Distribution& p, const Distribution& q);

DivergenceValue k_t(int t, const Distribution& p, const Distribution& q);

// Throws Overflow when some (p_i - q_i)^2 / (p_i q_i) exceeds 700.
DivergenceValue exp_divergence(const Distribution& p, const Distribution& q);

// sum_{t=0..terms} K_t / t!
DivergenceValue partial_sum(int terms, const Distribution& p, const Distribution& q);

// upper.coeff * upper - lower.coeff * lower for an ordered pair of the eight-member ordering.
DivergenceValue difference(const WeightedId& upper, const WeightedId& lower, const Distribution& p,
                           const Distribution& q);

// L_k through the chain-difference generator.
DivergenceValue l_measure(int k, const Distribution& p, const Distribution& q);

// L_k through the sum formulas as they are typeset in the literature. Four of
// them (k = 6, 10, 13, 15) are not homogeneous of degree one and disagree with
// the chain difference; see l_printed_form_is_erratum.
double l_printed_form(int k, const Distribution& p, const Distribution& q);
bool l_printed_form_is_erratum(int k);

}  // namespace divkit
