#include "divkit/inequality_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "divkit/divergences.hpp"
#include "divkit/errors.hpp"
#include "divkit/trials.hpp"

namespace divkit {

double measure_value(const MeasureId& id, const Distribution& p, const Distribution& q) {
    if (id.family == Family::l) return l_measure(id.index, p, q).value;
    return closed_form(id, p, q).value;
}

namespace {

using Cache = std::map<MeasureId, double>;

double cached_value(const MeasureId& id, const Distribution& p, const Distribution& q, Cache& cache) {
    auto it = cache.find(id);
    if (it != cache.end()) return it->second;
    const double v = measure_value(id, p, q);
    cache.emplace(id, v);
    return v;
}

double node_value_cached(const ChainNode& n, const Distribution& p, const Distribution& q, Cache& cache) {
    long double acc = 0.0L;
    for (const auto& t : n.terms) {
        const long double c = static_cast<long double>(t.coeff.numerator()) / t.coeff.denominator();
        acc += c * cached_value(t.measure, p, q, cache);
    }
    return static_cast<double>(acc);
}

double scale_of(double a, double b) {
    return std::max({1.0, std::abs(a), std::abs(b)});
}

double rel_error(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace

double node_value(const ChainNode& n, const Distribution& p, const Distribution& q) {
    Cache cache;
    return node_value_cached(n, p, q, cache);
}

VerifyReport verify(const ChainSpec& chain, std::size_t trials, const std::vector<std::size_t>& dims,
                    std::uint64_t seed, double tol) {
    chain.validate();
    VerifyReport report;
    report.chain = chain.name;
    report.trials = trials;
    report.dims = dims;
    report.seed = seed;
    report.tol = tol;
    for (const auto& e : chain.edges) {
        EdgeStats s;
        s.from = e.from;
        s.to = e.to;
        s.worst_slack = std::numeric_limits<double>::infinity();
        report.edges.push_back(s);
    }
    std::vector<double> values(chain.nodes.size());
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const TrialPair pair = trial_pair(seed, trial, dims);
        Cache cache;
        for (std::size_t n = 0; n < chain.nodes.size(); ++n) {
            values[n] = node_value_cached(chain.nodes[n], pair.p, pair.q, cache);
        }
        for (std::size_t e = 0; e < chain.edges.size(); ++e) {
            const double lhs = values[chain.edges[e].from];
            const double rhs = values[chain.edges[e].to];
            const double scale = scale_of(lhs, rhs);
            EdgeStats& s = report.edges[e];
            s.worst_slack = std::min(s.worst_slack, (rhs - lhs) / scale);
            if (rhs > 0.0) s.worst_ratio = std::max(s.worst_ratio, lhs / rhs);
            if (lhs - rhs > tol * scale) {
                ++s.failures;
                report.violations.push_back(
                    {chain.name, s.from, s.to, trial, pair.p, pair.q, lhs, rhs, lhs - rhs});
            } else {
                ++s.passes;
            }
        }
    }
    return report;
}

bool IdentityReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.ok(); });
}

const std::vector<std::string>& identity_groups() {
    static const std::vector<std::string> groups{"eq33", "b-identities", "l-identities", "l-printed", "l-closed"};
    return groups;
}

IdentityReport check_identities(std::size_t trials, const std::vector<std::size_t>& dims, std::uint64_t seed,
                                double tol, const std::string& only) {
    if (!only.empty() && std::find(identity_groups().begin(), identity_groups().end(), only) == identity_groups().end()) {
        throw UnknownId("unknown identity group '" + only + "'");
    }
    using Eval = std::function<double(const Distribution&, const Distribution&)>;
    struct Pending {
        std::string group;
        IdentityCheck check;
        Eval lhs;
        Eval rhs;
    };
    auto cf = [](MeasureId id, double c = 1.0) -> Eval {
        return [id, c](const Distribution& p, const Distribution& q) { return c * closed_form(id, p, q).value; };
    };
    auto lm = [](int k, double c = 1.0) -> Eval {
        return [k, c](const Distribution& p, const Distribution& q) { return c * l_measure(k, p, q).value; };
    };

    std::vector<Pending> pending;
    pending.push_back({"eq33",
                       {"eq33", "(1/2)f", "k0 + (1/4)k_t:1"},
                       cf(MeasureId::of(Base::f), 0.5),
                       [](const Distribution& p, const Distribution& q) {
                           return closed_form(MeasureId::of(Base::k0), p, q).value +
                                  0.25 * closed_form(MeasureId::k_t(1), p, q).value;
                       }});
    const std::array<std::tuple<Base, double, Base, Base>, 6> b_ids{{
        {Base::b1, 32.0, Base::f, Base::k0},
        {Base::b2, 4.0, Base::hellinger, Base::delta},
        {Base::b3, 8.0, Base::k0, Base::hellinger},
        {Base::b4, 8.0, Base::k0, Base::delta},
        {Base::b5, 16.0, Base::psi, Base::k0},
        {Base::b6, 16.0, Base::psi, Base::delta},
    }};
    for (const auto& [b, c, up, lo] : b_ids) {
        const MeasureId bid = MeasureId::of(b);
        const MeasureId did = MeasureId::diff(up, lo);
        const std::string coeff = std::to_string(static_cast<int>(c));
        pending.push_back({"b-identities", {bid.name() + "=" + coeff + did.name(), bid.name(), coeff + " " + did.name()},
                           cf(bid), cf(did, c)});
    }
    pending.push_back({"l-identities", {"l2=l1", "l:2", "l:1"}, lm(2), lm(1)});
    pending.push_back({"l-identities", {"l3=2l1", "l:3", "2 l:1"}, lm(3), lm(1, 2.0)});
    for (int k = 1; k <= 15; ++k) {
        IdentityCheck c{"l" + std::to_string(k) + "-printed", "typeset l:" + std::to_string(k),
                        "chain difference l:" + std::to_string(k)};
        c.informational = (k == 6);
        pending.push_back({"l-printed", c,
                           [k](const Distribution& p, const Distribution& q) { return l_printed_form(k, p, q); },
                           lm(k)});
    }
    for (int k = 1; k <= 15; ++k) {
        pending.push_back({"l-closed",
                           {"l" + std::to_string(k) + "-closed", "closed form l:" + std::to_string(k),
                            "chain difference l:" + std::to_string(k)},
                           cf(MeasureId::l(k)), lm(k)});
    }
    if (!only.empty()) {
        std::erase_if(pending, [&](const Pending& p) { return p.group != only; });
    }

    IdentityReport report;
    report.trials = trials;
    report.dims = dims;
    report.seed = seed;
    report.tol = tol;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const TrialPair pair = uniform_pair(seed, trial, dims);
        for (auto& item : pending) {
            const double a = item.lhs(pair.p, pair.q);
            const double b = item.rhs(pair.p, pair.q);
            const double err = rel_error(a, b);
            ++item.check.trials;
            item.check.max_rel_error = std::max(item.check.max_rel_error, err);
            if (!(err <= tol)) ++item.check.failures;
        }
    }
    for (auto& item : pending) report.checks.push_back(item.check);
    return report;
}

nlohmann::ordered_json to_json(const Distribution& d) {
    return nlohmann::ordered_json(d.probs());
}

nlohmann::ordered_json to_json(const ChainSpec& chain) {
    nlohmann::ordered_json j;
    j["name"] = chain.name;
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : chain.nodes) j["nodes"].push_back(n.label());
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : chain.edges) j["edges"].push_back({e.from, e.to});
    return j;
}

nlohmann::ordered_json to_json(const VerifyReport& report, const ChainSpec& chain, std::size_t max_violations) {
    nlohmann::ordered_json j;
    j["chain"] = report.chain;
    j["trials"] = report.trials;
    j["dims"] = report.dims;
    j["seed"] = report.seed;
    j["tol"] = report.tol;
    j["verified"] = report.ok();
    j["violation_count"] = report.violations.size();
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : report.edges) {
        nlohmann::ordered_json je;
        je["from"] = chain.nodes[e.from].label();
        je["to"] = chain.nodes[e.to].label();
        je["passes"] = e.passes;
        je["failures"] = e.failures;
        je["worst_slack"] = e.worst_slack;
        je["worst_ratio"] = e.worst_ratio;
        j["edges"].push_back(je);
    }
    j["violations"] = nlohmann::ordered_json::array();
    const std::size_t shown =
        max_violations == 0 ? report.violations.size() : std::min(max_violations, report.violations.size());
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& v = report.violations[i];
        nlohmann::ordered_json jv;
        jv["trial"] = v.trial;
        jv["from"] = chain.nodes[v.from].label();
        jv["to"] = chain.nodes[v.to].label();
        jv["lhs"] = v.lhs;
        jv["rhs"] = v.rhs;
        jv["deficit"] = v.deficit;
        jv["p"] = to_json(v.p);
        jv["q"] = to_json(v.q);
        j["violations"].push_back(jv);
    }
    return j;
}

nlohmann::ordered_json to_json(const IdentityReport& report) {
    nlohmann::ordered_json j;
    j["trials"] = report.trials;
    j["dims"] = report.dims;
    j["seed"] = report.seed;
    j["tol"] = report.tol;
    j["ok"] = report.ok();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["lhs"] = c.lhs;
        jc["rhs"] = c.rhs;
        jc["trials"] = c.trials;
        jc["failures"] = c.failures;
        jc["max_rel_error"] = c.max_rel_error;
        jc["informational"] = c.informational;
        jc["ok"] = c.ok();
        j["checks"].push_back(jc);
    }
    return j;
}

}  // namespace divkit
