#include "divkit/trials.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "divkit/errors.hpp"

namespace divkit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double unit_from(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::string to_string(TrialKind kind) {
    switch (kind) {
        case TrialKind::uniform: return "uniform";
        case TrialKind::boundary_uniform: return "boundary-uniform";
        case TrialKind::boundary_boundary: return "boundary-boundary";
        case TrialKind::near_diagonal: return "near-diagonal";
    }
    return "unknown";
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t stream) {
    return splitmix64(splitmix64(splitmix64(seed) ^ index) ^ (stream * 0xd1b54a32d192ed03ULL));
}

std::size_t trial_dim(const std::vector<std::size_t>& dims, std::size_t index) {
    if (dims.empty()) throw TooShort("dimension list is empty");
    return dims[index % dims.size()];
}

TrialPair trial_pair(std::uint64_t seed, std::size_t index, const std::vector<std::size_t>& dims) {
    const std::size_t dim = trial_dim(dims, index);
    const auto kind = static_cast<TrialKind>(index % 4);
    const std::uint64_t s1 = derive_seed(seed, index, 1);
    const std::uint64_t s2 = derive_seed(seed, index, 2);
    switch (kind) {
        case TrialKind::uniform:
            return {random(dim, s1), random(dim, s2), kind};
        case TrialKind::boundary_uniform:
            return {random_near_boundary(dim, s1), random(dim, s2), kind};
        case TrialKind::boundary_boundary:
            return {random_near_boundary(dim, s1), random_near_boundary(dim, s2), kind};
        case TrialKind::near_diagonal: {
            // Mixing weight log-uniform in [1e-4, 0.5].
            const double u = unit_from(derive_seed(seed, index, 3));
            const double weight = 0.5 * std::pow(10.0, -u * std::log10(5000.0));
            Distribution p = random(dim, s1);
            Distribution q = mix(p, random(dim, s2), weight);
            return {std::move(p), std::move(q), kind};
        }
    }
    throw std::logic_error("unreachable trial kind");
}

TrialPair uniform_pair(std::uint64_t seed, std::size_t index, const std::vector<std::size_t>& dims) {
    const std::size_t dim = trial_dim(dims, index);
    return {random(dim, derive_seed(seed, index, 1)), random(dim, derive_seed(seed, index, 2)), TrialKind::uniform};
}

std::vector<std::size_t> parse_dims(const std::string& text) {
    std::vector<std::size_t> dims;
    std::stringstream ss(text);
    std::string part;
    auto to_dim = [&](const std::string& s) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad dimension '" + s + "' in '" + text + "'");
        }
        if (pos != s.size() || v < 2) throw std::invalid_argument("dimension must be an integer >= 2: '" + s + "'");
        return static_cast<std::size_t>(v);
    };
    while (std::getline(ss, part, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            dims.push_back(to_dim(part));
            continue;
        }
        const std::size_t lo = to_dim(part.substr(0, dots));
        const std::size_t hi = to_dim(part.substr(dots + 2));
        if (hi < lo) throw std::invalid_argument("empty dimension range '" + part + "'");
        for (std::size_t d = lo; d <= hi; ++d) dims.push_back(d);
    }
    if (dims.empty()) throw std::invalid_argument("no dimensions in '" + text + "'");
    return dims;
}

}  // namespace divkit
