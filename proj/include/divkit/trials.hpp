#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "divkit/distributions.hpp"

namespace divkit {

enum class TrialKind { uniform, boundary_uniform, boundary_boundary, near_diagonal };

std::string to_string(TrialKind kind);

struct TrialPair {
    Distribution p;
    Distribution q;
    TrialKind kind;
};

// Independent stream for (seed, index, stream); lets trials run in any order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t stream = 0);

// Dimension for trial `index`, cycling through dims.
std::size_t trial_dim(const std::vector<std::size_t>& dims, std::size_t index);

// Mixed adversarial draw: the kind cycles with the index (uniform, near-boundary
// against uniform, near-boundary on both sides, near-diagonal).
TrialPair trial_pair(std::uint64_t seed, std::size_t index, const std::vector<std::size_t>& dims);

// Two independent uniform simplex draws.
TrialPair uniform_pair(std::uint64_t seed, std::size_t index, const std::vector<std::size_t>& dims);

// "2..16" or "2,4,8" (ranges and lists may be mixed: "2..4,8").
std::vector<std::size_t> parse_dims(const std::string& text);

}  // namespace divkit
