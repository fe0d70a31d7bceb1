#pragma once

#include <cstddef>
#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "divkit/distributions.hpp"
#include "divkit/measure_id.hpp"

namespace divkit {

struct NodeTerm {
    Fraction coeff;
    MeasureId measure;

    bool operator==(const NodeTerm&) const = default;
};

// A positive combination of measures; most nodes hold a single term.
struct ChainNode {
    std::vector<NodeTerm> terms;

    std::string label() const;
    bool operator==(const ChainNode&) const = default;
};

ChainNode node(Fraction coeff, MeasureId measure);
ChainNode node(MeasureId measure);
ChainNode sum_node(std::vector<NodeTerm> terms);

// from <= to
struct ChainEdge {
    std::size_t from;
    std::size_t to;
};

struct ChainSpec {
    std::string name;
    std::vector<ChainNode> nodes;
    std::vector<ChainEdge> edges;

    // Throws InvalidChain on cycles, unreferenced nodes, non-positive
    // coefficients or ids outside the catalog.
    void validate() const;
};

// Incremental construction; equal nodes are shared.
class ChainBuilder {
public:
    explicit ChainBuilder(std::string name) { spec_.name = std::move(name); }

    std::size_t add(const ChainNode& n);
    ChainBuilder& edge(const ChainNode& from, const ChainNode& to);
    // Consecutive nodes joined by edges.
    ChainBuilder& path(const std::vector<ChainNode>& nodes);
    // Stacked alternatives: each stage is a list of branches (node paths); every
    // branch end of one stage is joined to every branch start of the next.
    ChainBuilder& stages(const std::vector<std::vector<std::vector<ChainNode>>>& stages);
    ChainSpec build() const;

private:
    ChainSpec spec_;
};

const std::vector<ChainSpec>& builtin_chains();
const ChainSpec* find_chain(const std::string& name);

struct ViolationReport {
    std::string chain;
    std::size_t from = 0;
    std::size_t to = 0;
    std::size_t trial = 0;
    Distribution p{{0.5, 0.5}};
    Distribution q{{0.5, 0.5}};
    double lhs = 0.0;
    double rhs = 0.0;
    double deficit = 0.0;
};

struct EdgeStats {
    std::size_t from = 0;
    std::size_t to = 0;
    std::size_t passes = 0;
    std::size_t failures = 0;
    // min over trials of (rhs - lhs) / max(1, |lhs|, |rhs|)
    double worst_slack = 0.0;
    // max over trials of lhs / rhs (rhs > 0)
    double worst_ratio = 0.0;
};

struct VerifyReport {
    std::string chain;
    std::size_t trials = 0;
    std::vector<std::size_t> dims;
    std::uint64_t seed = 0;
    double tol = 0.0;
    std::vector<EdgeStats> edges;
    std::vector<ViolationReport> violations;

    bool ok() const { return violations.empty(); }
};

// Checks every edge on `trials` seeded pairs (see trial_pair); a violation is
// lhs - rhs > tol * max(1, |lhs|, |rhs|).
VerifyReport verify(const ChainSpec& chain, std::size_t trials, const std::vector<std::size_t>& dims,
                    std::uint64_t seed, double tol);

// Value of a node on (p, q). L measures use the chain-difference generator,
// everything else the direct formula.
double node_value(const ChainNode& n, const Distribution& p, const Distribution& q);
double measure_value(const MeasureId& id, const Distribution& p, const Distribution& q);

struct IdentityCheck {
    std::string name;
    std::string lhs;
    std::string rhs;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double max_rel_error = 0.0;
    bool informational = false;  // reported, never fails the suite
    bool ok() const { return informational || failures == 0; }
};

struct IdentityReport {
    std::size_t trials = 0;
    std::vector<std::size_t> dims;
    std::uint64_t seed = 0;
    double tol = 0.0;
    std::vector<IdentityCheck> checks;

    bool ok() const;
};

// Exact identities on uniform pairs with |lhs - rhs| <= tol * max(|lhs|, |rhs|):
// (1/2)F = K0 + (1/4)K1, B1..B6 against differences, L2 = L1, L3 = 2 L1, the
// typeset L forms against the chain difference (L6 informational) and the
// library L forms against the chain difference. `only` restricts to one
// group ("eq33", "b-identities", "l-identities", "l-printed", "l-closed").
IdentityReport check_identities(std::size_t trials, const std::vector<std::size_t>& dims, std::uint64_t seed,
                                double tol, const std::string& only = "");

const std::vector<std::string>& identity_groups();

nlohmann::ordered_json to_json(const Distribution& d);
nlohmann::ordered_json to_json(const ChainSpec& chain);
// Violation list capped at max_violations (0 = all); the total count is always present.
nlohmann::ordered_json to_json(const VerifyReport& report, const ChainSpec& chain, std::size_t max_violations = 0);
nlohmann::ordered_json to_json(const IdentityReport& report);

}  // namespace divkit
