#include "divkit/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "divkit/errors.hpp"
#include "divkit/summation.hpp"

namespace divkit {

namespace {

double kahan_total(std::span<const double> xs) {
    CompensatedSum<double> acc;
    for (double x : xs) acc += x;
    return acc.value();
}

std::vector<double> normalized(std::span<const double> w) {
    const double total = kahan_total(w);
    std::vector<double> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] / total;
    return out;
}

// Exponential(1) variate from the raw 64-bit stream so the sequence does not
// depend on the standard library's distribution implementation.
double unit_exponential(std::mt19937_64& rng) {
    double u;
    do {
        u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    } while (u == 0.0);
    return -std::log(u);
}

double unit_uniform(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) {
    if (probs.size() < 2) throw TooShort("distribution needs at least 2 entries, got " + std::to_string(probs.size()));
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (!std::isfinite(probs[i]) || probs[i] <= 0.0) {
            throw NonPositiveWeight("entry " + std::to_string(i) + " is not a positive finite number");
        }
    }
    probs_ = normalized(probs);
    if (std::abs(kahan_total(probs_) - 1.0) > kSumTolerance) {
        throw NonPositiveWeight("entries do not normalize to 1");
    }
    for (double p : probs_) {
        if (!(p > 0.0)) throw NonPositiveWeight("entry underflows to zero after normalization");
    }
}

double Distribution::min_mass() const {
    return *std::min_element(probs_.begin(), probs_.end());
}

Distribution from_weights(std::span<const double> weights, double tol) {
    if (weights.size() < 2) throw TooShort("need at least 2 weights, got " + std::to_string(weights.size()));
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!std::isfinite(weights[i]) || weights[i] <= 0.0) {
            throw NonPositiveWeight("weight " + std::to_string(i) + " must be finite and > 0");
        }
    }
    Distribution d(normalized(weights));
    if (std::abs(kahan_total(d.probs()) - 1.0) > tol) throw NonPositiveWeight("normalization drift exceeds tolerance");
    return d;
}

Distribution from_counts_smoothed(std::span<const std::uint64_t> counts, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw NonPositiveAlpha("smoothing alpha must be > 0");
    if (counts.size() < 2) throw TooShort("need at least 2 counts, got " + std::to_string(counts.size()));
    if (std::all_of(counts.begin(), counts.end(), [](std::uint64_t c) { return c == 0; })) {
        throw AllZeroCounts("at least one count must be positive");
    }
    std::vector<double> w(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) w[i] = static_cast<double>(counts[i]) + alpha;
    return from_weights(w);
}

Distribution random(std::size_t dim, std::uint64_t seed) {
    if (dim < 2) throw TooShort("dim must be >= 2");
    std::mt19937_64 rng(seed);
    std::vector<double> w(dim);
    for (double& x : w) x = unit_exponential(rng);
    return Distribution(normalized(w));
}

Distribution random_near_boundary(std::size_t dim, std::uint64_t seed, double min_mass) {
    if (dim < 2) throw TooShort("dim must be >= 2");
    if (!(min_mass > 0.0) || min_mass * static_cast<double>(dim) >= 1.0) {
        throw NonPositiveWeight("min_mass must be in (0, 1/dim)");
    }
    std::mt19937_64 rng(seed);
    std::vector<double> w(dim);
    // Heavy skew: most coordinates collapse toward 0, a few carry the mass.
    for (double& x : w) x = std::pow(unit_exponential(rng), 8.0);
    // At least one coordinate sits essentially at the floor.
    const std::size_t pinned = static_cast<std::size_t>(rng() % dim);
    w[pinned] = 0.0;
    const double total = kahan_total(w);
    const double free_mass = 1.0 - static_cast<double>(dim) * min_mass;
    for (double& x : w) {
        const double scaled = total > 0.0 ? x / total : 1.0 / static_cast<double>(dim);
        x = min_mass * (1.0 + unit_uniform(rng) * 1e-3) + free_mass * scaled;
    }
    return Distribution(normalized(w));
}

Distribution mix(const Distribution& base, const Distribution& other, double weight) {
    if (base.dim() != other.dim()) throw DimensionMismatch("mix of distributions with different dims");
    std::vector<double> w(base.dim());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = (1.0 - weight) * base[i] + weight * other[i];
    return Distribution(std::move(w));
}

}  // namespace divkit
