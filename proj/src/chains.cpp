#include <algorithm>
#include <queue>

#include "divkit/errors.hpp"
#include "divkit/generators.hpp"
#include "divkit/inequality_engine.hpp"
#include "divkit/ratio_table.hpp"

namespace divkit {

std::string ChainNode::label() const {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0) out += " + ";
        if (terms[i].coeff != Fraction(1)) out += "(" + fraction_string(terms[i].coeff) + ")";
        out += terms[i].measure.name();
    }
    return out;
}

ChainNode node(Fraction coeff, MeasureId measure) {
    return ChainNode{{NodeTerm{coeff, measure}}};
}

ChainNode node(MeasureId measure) {
    return node(Fraction(1), measure);
}

ChainNode sum_node(std::vector<NodeTerm> terms) {
    return ChainNode{std::move(terms)};
}

void ChainSpec::validate() const {
    if (nodes.empty() || edges.empty()) throw InvalidChain(name + ": chain needs nodes and edges");
    std::vector<int> indegree(nodes.size(), 0);
    std::vector<bool> referenced(nodes.size(), false);
    std::vector<std::vector<std::size_t>> out(nodes.size());
    for (const auto& e : edges) {
        if (e.from >= nodes.size() || e.to >= nodes.size() || e.from == e.to) {
            throw InvalidChain(name + ": edge endpoints out of range");
        }
        referenced[e.from] = referenced[e.to] = true;
        out[e.from].push_back(e.to);
        ++indegree[e.to];
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!referenced[i]) throw InvalidChain(name + ": node " + nodes[i].label() + " has no edge");
        if (nodes[i].terms.empty()) throw InvalidChain(name + ": empty node");
        for (const auto& t : nodes[i].terms) {
            if (t.coeff <= Fraction(0)) throw InvalidChain(name + ": non-positive coefficient in " + nodes[i].label());
            try {
                generator_for(t.measure);
            } catch (const Error& err) {
                throw InvalidChain(name + ": " + err.what());
            }
        }
    }
    std::queue<std::size_t> ready;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (indegree[i] == 0) ready.push(i);
    }
    std::size_t seen = 0;
    while (!ready.empty()) {
        const std::size_t n = ready.front();
        ready.pop();
        ++seen;
        for (std::size_t m : out[n]) {
            if (--indegree[m] == 0) ready.push(m);
        }
    }
    if (seen != nodes.size()) throw InvalidChain(name + ": edges form a cycle");
}

std::size_t ChainBuilder::add(const ChainNode& n) {
    auto it = std::find(spec_.nodes.begin(), spec_.nodes.end(), n);
    if (it != spec_.nodes.end()) return static_cast<std::size_t>(it - spec_.nodes.begin());
    spec_.nodes.push_back(n);
    return spec_.nodes.size() - 1;
}

ChainBuilder& ChainBuilder::edge(const ChainNode& from, const ChainNode& to) {
    const std::size_t a = add(from);
    const std::size_t b = add(to);
    for (const auto& e : spec_.edges) {
        if (e.from == a && e.to == b) return *this;
    }
    spec_.edges.push_back({a, b});
    return *this;
}

ChainBuilder& ChainBuilder::path(const std::vector<ChainNode>& nodes) {
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) edge(nodes[i], nodes[i + 1]);
    if (nodes.size() == 1) add(nodes.front());
    return *this;
}

ChainBuilder& ChainBuilder::stages(const std::vector<std::vector<std::vector<ChainNode>>>& stages) {
    for (std::size_t s = 0; s < stages.size(); ++s) {
        for (const auto& branch : stages[s]) path(branch);
        if (s + 1 == stages.size()) break;
        for (const auto& from_branch : stages[s]) {
            for (const auto& to_branch : stages[s + 1]) edge(from_branch.back(), to_branch.front());
        }
    }
    return *this;
}

ChainSpec ChainBuilder::build() const {
    spec_.validate();
    return spec_;
}

namespace {

using B = Base;
using F = Fraction;
using Stages = std::vector<std::vector<std::vector<ChainNode>>>;

ChainNode dn(F c, B upper, B lower) { return node(c, MeasureId::diff(upper, lower)); }
ChainNode ln(F c, int k) { return node(c, MeasureId::l(k)); }
NodeTerm term(F c, MeasureId id) { return NodeTerm{c, id}; }
MeasureId m(B b) { return MeasureId::of(b); }

// Shared tail of the difference chains, from (1/3)D_PsiT / (1/3)D_PsiK0 to (1/3)D_FPsi.
Stages upper_tail() {
    return {
        {{dn(F(1, 3), B::psi, B::t)}, {dn(F(1, 3), B::psi, B::k0), dn(F(1, 9), B::f, B::delta)}},
        {{dn(F(1, 8), B::f, B::i), dn(F(2, 15), B::f, B::hellinger), dn(F(1, 7), B::f, B::j)}},
        {{dn(F(1, 6), B::f, B::t)}, {dn(F(1, 6), B::f, B::k0)}},
        {{dn(F(1, 3), B::f, B::psi)}},
    };
}

ChainSpec eq15() {
    std::vector<ChainNode> nodes;
    for (const auto& w : chain_members()) nodes.push_back(node(w.coeff, m(w.id)));
    return ChainBuilder("eq15").path(nodes).build();
}

ChainSpec eq21() {
    Stages st{
        {{dn(F(1, 3), B::t, B::delta)}, {dn(F(2), B::hellinger, B::i)}},
        {{dn(F(1, 3), B::k0, B::delta)}, {dn(F(2), B::j, B::hellinger)}},
        {{dn(F(1, 2), B::k0, B::i), dn(F(2, 3), B::k0, B::hellinger)}},
        {{dn(F(1), B::k0, B::j)}, {dn(F(1, 6), B::psi, B::delta)}},
        {{dn(F(1, 5), B::psi, B::i), dn(F(1, 4), B::psi, B::j)}},
    };
    for (auto& s : upper_tail()) st.push_back(s);
    return ChainBuilder("eq21").stages(st).build();
}

ChainSpec eq25() {
    return ChainBuilder("eq25")
        .path({dn(F(1), B::i, B::delta), dn(F(2, 3), B::hellinger, B::delta), dn(F(1, 2), B::j, B::delta),
               dn(F(1, 3), B::t, B::delta), dn(F(1), B::t, B::j), dn(F(2, 3), B::t, B::hellinger),
               dn(F(2), B::j, B::hellinger), dn(F(1, 6), B::psi, B::delta), dn(F(1, 5), B::psi, B::i),
               dn(F(2, 9), B::psi, B::hellinger), dn(F(1, 4), B::psi, B::j), dn(F(1, 3), B::psi, B::t)})
        .build();
}

ChainSpec eq26() {
    return ChainBuilder("eq26")
        .path({dn(F(2, 3), B::hellinger, B::delta), dn(F(2), B::hellinger, B::i), dn(F(1), B::t, B::j)})
        .build();
}

ChainSpec eq27() {
    Stages st{
        {{dn(F(1), B::i, B::delta), dn(F(2, 3), B::hellinger, B::delta), dn(F(1, 2), B::j, B::delta)}},
        {{dn(F(1, 3), B::t, B::delta)}, {dn(F(2), B::hellinger, B::i)}},
        {{dn(F(1, 3), B::k0, B::delta)},
         {dn(F(1), B::t, B::j), dn(F(2, 3), B::t, B::hellinger), dn(F(2), B::j, B::hellinger)}},
        {{dn(F(1, 2), B::k0, B::i), dn(F(2, 3), B::k0, B::hellinger)}},
        {{dn(F(1), B::k0, B::j)}, {dn(F(1, 6), B::psi, B::delta)}},
        {{dn(F(1, 5), B::psi, B::i), dn(F(2, 9), B::psi, B::hellinger), dn(F(1, 4), B::psi, B::j)}},
    };
    for (auto& s : upper_tail()) st.push_back(s);
    return ChainBuilder("eq27").stages(st).build();
}

ChainSpec eq28() {
    return ChainBuilder("eq28")
        .path({dn(F(1), B::hellinger, B::delta), dn(F(1, 2), B::k0, B::delta), dn(F(1), B::k0, B::hellinger),
               dn(F(1, 4), B::psi, B::delta), dn(F(1, 2), B::psi, B::k0), dn(F(1, 4), B::f, B::k0)})
        .build();
}

ChainSpec eq29() {
    return ChainBuilder("eq29").path({ln(F(1), 1), ln(F(1, 2), 6), dn(F(1), B::k0, B::t), ln(F(1), 5)}).build();
}

ChainSpec eq30() {
    const ChainNode l7 = ln(F(1), 7), l8 = ln(F(1), 8), l9 = ln(F(1), 9);
    const ChainNode l12 = ln(F(1, 3), 12), l13 = ln(F(1, 3), 13);
    const ChainNode l14 = ln(F(1, 3), 14), l15 = ln(F(1, 3), 15);
    const ChainNode l11 = ln(F(1, 2), 11);
    return ChainBuilder("eq30")
        .edge(l7, l8)
        .edge(l7, l9)
        .edge(l8, l12)
        .edge(l8, l13)
        .edge(l12, l11)
        .edge(l13, l11)
        .edge(l8, l14)
        .edge(l8, l15)
        .edge(l9, l14)
        .edge(l9, l15)
        .edge(l14, l11)
        .build();
}

ChainSpec eq31() {
    return ChainBuilder("eq31").edge(ln(F(1), 5), node(F(1, 2048), MeasureId::k_t(2))).build();
}

ChainSpec eq32() {
    return ChainBuilder("eq32").edge(ln(F(1), 4), node(F(1, 32768), MeasureId::k_t(3))).build();
}

ChainSpec eq34() {
    return ChainBuilder("eq34")
        .path({sum_node({term(F(1, 4), m(B::psi)), term(F(1), m(B::delta))}),
               sum_node({term(F(1), m(B::k0)), term(F(1, 128), MeasureId::k_t(2))}),
               sum_node({term(F(8), m(B::t)), term(F(3, 256), MeasureId::k_t(2))})})
        .build();
}

ChainSpec eq35() {
    return ChainBuilder("eq35")
        .path({sum_node({term(F(1, 2), m(B::psi)), term(F(32), m(B::hellinger))}),
               sum_node({term(F(2), m(B::delta)), term(F(4), m(B::k0)), term(F(1, 1024), MeasureId::k_t(3))}),
               sum_node({term(F(5), m(B::k0)), term(F(1, 1024), MeasureId::k_t(3))})})
        .build();
}

ChainSpec table_edges(const std::string& name, const std::string& group) {
    ChainBuilder b(name);
    for (const auto& e : ratio_table()) {
        if (e.group == group) b.edge(node(e.upper), node(e.beta, e.lower));
    }
    return b.build();
}

}  // namespace

const std::vector<ChainSpec>& builtin_chains() {
    static const std::vector<ChainSpec> chains{
        eq15(), eq21(), eq25(), eq26(), eq27(), eq28(), eq29(), eq30(), eq31(), eq32(), eq34(), eq35(),
        table_edges("thm31-edges", "diff"), table_edges("thm41-edges", "l"),
    };
    return chains;
}

const ChainSpec* find_chain(const std::string& name) {
    for (const auto& c : builtin_chains()) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

}  // namespace divkit
