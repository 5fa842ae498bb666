#include <qflag/checks.hpp>
#include <qflag/multiplicativity.hpp>
#include <qflag/realization.hpp>

#include <gtest/gtest.h>

using namespace qflag;

namespace {

struct A2Fixture : ::testing::Test {
    QuantumAlgebra alg{CartanDatum::from_label("A2")};
    PBWBasis pbw{alg, ReducedWord(alg.datum(), {1, 2, 1})};
    CanonicalBasis cb{pbw};
    const Datum e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1}, zero{0, 0, 0};
};

} // namespace

TEST_F(A2Fixture, QCommuteExamples) {
    const ShuffleVec& E1 = cb.dual_pbw_vec(e1);
    EXPECT_EQ(q_commute_exponent(alg, E1, E1), 0);
    EXPECT_EQ(q_commute_exponent(alg, cb.canonical_vec(cb.flag_minor(3).datum), E1), 1);
    EXPECT_FALSE(q_commute_exponent(alg, E1, cb.dual_pbw_vec(e3)).has_value());
    EXPECT_EQ(q_commute_exponent(alg, UPlusExpr::generator(1), UPlusExpr::generator(1)), 0);
}

TEST_F(A2Fixture, QCommuteExponentIsAntisymmetric) {
    for (const auto& m : pbw.data_up_to_height(2))
        for (const auto& n : pbw.data_up_to_height(2)) {
            const auto a = q_commute_exponent(alg, cb.canonical_vec(m), cb.canonical_vec(n));
            const auto b = q_commute_exponent(alg, cb.canonical_vec(n), cb.canonical_vec(m));
            ASSERT_EQ(a.has_value(), b.has_value());
            if (a) {
                EXPECT_EQ(*a, -*b);
            }
        }
}

TEST_F(A2Fixture, MultiplicativeExamples) {
    for (const auto& m : pbw.data_up_to_height(3)) {
        const auto r = is_multiplicative(cb, m, zero);
        ASSERT_TRUE(r.has_value());
        EXPECT_EQ(r->power, 0);
        EXPECT_EQ(r->datum, m);
    }
    const auto r = is_multiplicative(cb, cb.flag_minor(1).datum, cb.flag_minor(3).datum);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->datum, cb.flag_minor(1).datum + cb.flag_minor(3).datum);
    EXPECT_EQ(r->power, pbw.d_form(cb.flag_minor(1).datum, cb.flag_minor(3).datum));
    EXPECT_FALSE(is_multiplicative(cb, e1, e3).has_value());
}

TEST_F(A2Fixture, CongruenceExamples) {
    EXPECT_TRUE(check_511(cb, zero, e2));
    EXPECT_TRUE(check_511(cb, e1, e1));
    EXPECT_TRUE(check_511(cb, cb.flag_minor(1).datum, e2));
}

TEST_F(A2Fixture, AdaptedMonomials) {
    EXPECT_EQ(adapted_monomials(pbw, 0), std::vector<Datum>{zero});
    const auto h1 = adapted_monomials(pbw, 1);
    EXPECT_NE(std::find(h1.begin(), h1.end(), e1), h1.end());
    EXPECT_EQ(h1.front(), zero);
    const auto h3 = adapted_monomials(pbw, 3);
    EXPECT_NE(std::find(h3.begin(), h3.end(), Datum{2, 0, 1}), h3.end());
    EXPECT_EQ(std::find(h3.begin(), h3.end(), e3), h3.end());
    for (std::size_t i = 1; i < h3.size(); ++i)
        EXPECT_LE(pbw.weight(h3[i - 1]).height(), pbw.weight(h3[i]).height());
}

TEST(Theorem51, NoViolationsOnA2Orientations) {
    const QuantumAlgebra alg(CartanDatum::from_label("A2"));
    for (const auto& o : Orientation::all(alg.datum())) {
        const PBWBasis pbw(alg, adapted_word(alg.datum(), o));
        const CanonicalBasis cb(pbw);
        const auto r = verify_theorem_51(cb, 4);
        EXPECT_TRUE(r.ok()) << o.str();
        EXPECT_GT(r.q_commuting, 0);
        EXPECT_EQ(r.q_commuting, static_cast<int>(r.q_commuting_pairs.size()));
        // b b' = q^{-d(m,m')} B and b' b = q^{-d(m',m)} B give the q-commutation exponent
        for (const auto& p : r.q_commuting_pairs)
            if (p.multiplicative) {
                EXPECT_EQ(*p.q_commute, pbw.d_form(p.mp, p.m) - pbw.d_form(p.m, p.mp));
            }
    }
}

TEST(Theorem51, NoViolationsOnA3LeftOrientation) {
    const QuantumAlgebra alg(CartanDatum::from_label("A3"));
    const PBWBasis pbw(alg, adapted_word(alg.datum(), Orientation::parse(alg.datum(), "2>1,3>2")));
    const CanonicalBasis cb(pbw);
    const auto r = verify_theorem_51(cb, 3);
    EXPECT_TRUE(r.ok());
    EXPECT_GT(r.pairs_scanned, 100);
}

TEST(Theorem51, ExploratoryScanCountsButDoesNotFlag) {
    const QuantumAlgebra alg(CartanDatum::from_label("A2"));
    const PBWBasis pbw(alg, ReducedWord(alg.datum(), {1, 2, 1}));
    const CanonicalBasis cb(pbw);
    const auto plain = verify_theorem_51(cb, 3);
    const auto wide = verify_theorem_51(cb, 3, true);
    EXPECT_GE(wide.pairs_scanned, plain.pairs_scanned);
    EXPECT_TRUE(wide.ok());
}

TEST(Realization, FlagMinorWeights) {
    const auto A2 = CartanDatum::from_label("A2");
    EXPECT_EQ(flag_minor_weight(A2, {1, 2, 1}, 2), (RootVec{{1, 1}}));
    const auto D4 = CartanDatum::from_label("D4");
    const Word w = complete_to_longest(D4, {2, 1, 3, 2});
    EXPECT_EQ(static_cast<int>(w.size()), 12);
    EXPECT_TRUE(is_reduced(D4, w));
    EXPECT_EQ(flag_minor_weight(D4, w, 4), (RootVec{{1, 2, 1, 0}}));
    EXPECT_THROW(complete_to_longest(D4, {1, 1}), NotReduced);
}

TEST(Realization, AdaptedWordsRealizeTheirOwnMinors) {
    const QuantumAlgebra alg(CartanDatum::from_label("A3"));
    FlagMinorCatalog cat(alg);
    const Word w = adapted_word(alg.datum(), Orientation::parse(alg.datum(), "2>1,3>2")).word();
    for (int k = 1; k <= 6; ++k) {
        const auto r = realize_flag_minor(cat, w, k);
        ASSERT_TRUE(r.match.has_value()) << k;
        EXPECT_GE(r.candidates, 1);
    }
}

TEST(Realization, TypeAClaimAndD4Remark) {
    const QuantumAlgebra A3(CartanDatum::from_label("A3"));
    const auto claim = check_claim43(A3);
    EXPECT_TRUE(claim.ok());
    EXPECT_EQ(claim.checked, 96);
    const QuantumAlgebra D4(CartanDatum::from_label("D4"));
    const auto remark = check_remark43(D4);
    EXPECT_TRUE(remark.ok());
    EXPECT_TRUE(remark.findings.empty());
}
