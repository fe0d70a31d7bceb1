#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace divkit {

// A point of the open probability simplex: strictly positive entries summing to 1.
class Distribution {
public:
    static constexpr double kSumTolerance = 1e-12;

    // Validates positivity and the unit sum; renormalizes once before checking.
    explicit Distribution(std::vector<double> probs);

    std::size_t dim() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }
    double min_mass() const;

    bool operator==(const Distribution&) const = default;

private:
    std::vector<double> probs_;
};

Distribution from_weights(std::span<const double> weights, double tol = Distribution::kSumTolerance);

Distribution from_counts_smoothed(std::span<const std::uint64_t> counts, double alpha);

// Uniform draw from the open simplex (normalized exponential spacings).
Distribution random(std::size_t dim, std::uint64_t seed);

// Draw with several coordinates pushed toward the boundary; every entry is >= min_mass.
Distribution random_near_boundary(std::size_t dim, std::uint64_t seed, double min_mass = 1e-6);

// (1 - weight) * base + weight * other, renormalized.
Distribution mix(const Distribution& base, const Distribution& other, double weight);

}  // namespace divkit
