#include "divkit/ratio_table.hpp"

namespace divkit {

namespace {

MeasureId d(Base upper, Base lower) { return MeasureId::diff(upper, lower); }
MeasureId l(int k) { return MeasureId::l(k); }

}  // namespace

const std::vector<RatioEntry>& ratio_table() {
    using B = Base;
    static const std::vector<RatioEntry> table{
        {"TDelta_K0Delta", d(B::t, B::delta), d(B::k0, B::delta), Fraction(1), "diff"},
        {"hI_K0Delta", d(B::hellinger, B::i), d(B::k0, B::delta), Fraction(1, 6), "diff"},
        {"K0Delta_K0I", d(B::k0, B::delta), d(B::k0, B::i), Fraction(3, 2), "diff"},
        {"Jh_K0I", d(B::j, B::hellinger), d(B::k0, B::i), Fraction(1, 4), "diff"},
        {"K0I_K0h", d(B::k0, B::i), d(B::k0, B::hellinger), Fraction(4, 3), "diff"},
        {"K0h_K0J", d(B::k0, B::hellinger), d(B::k0, B::j), Fraction(3, 2), "diff"},
        {"K0h_PsiDelta", d(B::k0, B::hellinger), d(B::psi, B::delta), Fraction(1, 4), "diff"},
        {"K0J_PsiI", d(B::k0, B::j), d(B::psi, B::i), Fraction(1, 5), "diff"},
        {"PsiJ_PsiK0", d(B::psi, B::j), d(B::psi, B::k0), Fraction(4, 3), "diff"},
        {"PsiK0_FDelta", d(B::psi, B::k0), d(B::f, B::delta), Fraction(1, 3), "diff"},
        {"PsiT_FI", d(B::psi, B::t), d(B::f, B::i), Fraction(3, 8), "diff"},
        {"FDelta_FI", d(B::f, B::delta), d(B::f, B::i), Fraction(9, 8), "diff"},
        {"FI_Fh", d(B::f, B::i), d(B::f, B::hellinger), Fraction(16, 15), "diff"},
        {"Fh_FJ", d(B::f, B::hellinger), d(B::f, B::j), Fraction(15, 14), "diff"},
        {"FJ_FT", d(B::f, B::j), d(B::f, B::t), Fraction(7, 6), "diff"},
        {"FJ_FK0", d(B::f, B::j), d(B::f, B::k0), Fraction(7, 6), "diff"},
        {"FT_FPsi", d(B::f, B::t), d(B::f, B::psi), Fraction(2), "diff"},
        {"FK0_FPsi", d(B::f, B::k0), d(B::f, B::psi), Fraction(2), "diff"},
        {"L1_L6", l(1), l(6), Fraction(1, 2), "l"},
        {"L1_DK0T", l(1), d(B::k0, B::t), Fraction(3, 2), "l"},
        {"DK0T_L5", d(B::k0, B::t), l(5), Fraction(2, 3), "l"},
        {"L7_L8", l(7), l(8), Fraction(1), "l"},
        {"L7_L9", l(7), l(9), Fraction(1), "l"},
        {"L8_L12", l(8), l(12), Fraction(1, 3), "l"},
        {"L8_L13", l(8), l(13), Fraction(1, 3), "l"},
        {"L12_L11", l(12), l(11), Fraction(3, 2), "l"},
        {"L13_L11", l(13), l(11), Fraction(3, 2), "l"},
        {"L8_L14", l(8), l(14), Fraction(1, 3), "l"},
        {"L8_L15", l(8), l(15), Fraction(1, 3), "l"},
        {"L9_L14", l(9), l(14), Fraction(1, 3), "l"},
        {"L9_L15", l(9), l(15), Fraction(1, 3), "l"},
        {"L14_L11", l(14), l(11), Fraction(3, 2), "l"},
        {"L5_K2", l(5), MeasureId::k_t(2), Fraction(1, 2048), "series"},
        {"L4_K3", l(4), MeasureId::k_t(3), Fraction(1, 32768), "series"},
    };
    return table;
}

const RatioEntry* find_ratio(const std::string& key) {
    for (const auto& e : ratio_table()) {
        if (e.label == key || e.ratio_name() == key) return &e;
    }
    return nullptr;
}

}  // namespace divkit
