#include <qflag/checks.hpp>
#include <qflag/quiver.hpp>

#include <gtest/gtest.h>

using namespace qflag;

namespace {

const CartanDatum A2 = CartanDatum::from_label("A2");
const CartanDatum A3 = CartanDatum::from_label("A3");
const CartanDatum D4 = CartanDatum::from_label("D4");

// Rank of a rational matrix by Gaussian elimination.
int rank_of(std::vector<std::vector<Rational>> m) {
    int r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
        std::size_t p = static_cast<std::size_t>(r);
        while (p < m.size() && m[p][c] == 0)
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[static_cast<std::size_t>(r)]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == static_cast<std::size_t>(r) || m[i][c] == 0)
                continue;
            const Rational f = m[i][c] / m[static_cast<std::size_t>(r)][c];
            for (std::size_t j = 0; j < cols; ++j)
                m[i][j] -= f * m[static_cast<std::size_t>(r)][j];
        }
        ++r;
    }
    return r;
}

// dim Hom(M, N) for the thin modules of a type A quiver with dimension vectors a, b in {0,1}^n:
// unknowns x_v on common support, one equation x_w [v,w in M] = [v,w in N] x_v per arrow v -> w.
int thin_hom_dim(const Orientation& o, const RootVec& a, const RootVec& b) {
    const int n = o.rank();
    std::vector<std::vector<Rational>> eq;
    for (const auto& [v, w] : o.arrows()) {
        std::vector<Rational> row(static_cast<std::size_t>(n), 0);
        const bool mvw = a[v - 1] && a[w - 1], nvw = b[v - 1] && b[w - 1];
        if (mvw && b[w - 1])
            row[static_cast<std::size_t>(w - 1)] += 1;
        if (nvw && a[v - 1])
            row[static_cast<std::size_t>(v - 1)] -= 1;
        eq.push_back(row);
    }
    int unknowns = 0;
    for (int v = 0; v < n; ++v)
        if (a[v] && b[v])
            ++unknowns;
        else
            for (auto& row : eq)
                row[static_cast<std::size_t>(v)] = 0;
    return unknowns - rank_of(eq);
}

} // namespace

TEST(Orientation, ParseAndRender) {
    const auto o = Orientation::parse(A3, "2>1,3>2");
    EXPECT_EQ(o.str(), "2>1,3>2");
    EXPECT_EQ(o.sinks(), std::vector<int>{1});
    EXPECT_THROW(Orientation::parse(A3, "2>1"), InvalidOrientation);
    EXPECT_THROW(Orientation::parse(A3, "1>3,2>1,3>2"), InvalidOrientation);
    EXPECT_THROW(Orientation::parse(A2, "2-1"), InvalidOrientation);
    EXPECT_THROW(Orientation::parse(CartanDatum::from_label("B2"), "2>1"), InvalidOrientation);
}

TEST(Orientation, CountsPerType) {
    EXPECT_EQ(Orientation::all(A2).size(), 2u);
    EXPECT_EQ(Orientation::all(A3).size(), 4u);
    EXPECT_EQ(Orientation::all(D4).size(), 8u);
}

TEST(Orientation, ReflectAtSink) {
    EXPECT_EQ(Orientation::parse(A2, "2>1").reflect_at_sink(1), Orientation::parse(A2, "1>2"));
    EXPECT_EQ(Orientation::parse(A3, "2>1,3>2").reflect_at_sink(1), Orientation::parse(A3, "1>2,3>2"));
    EXPECT_THROW(Orientation::parse(A3, "2>1,3>2").reflect_at_sink(2), NotASink);
    EXPECT_THROW(Orientation::parse(A3, "2>1,3>2").reflect_at_sink(3), NotASink);
}

TEST(AdaptedWord, Examples) {
    EXPECT_EQ(adapted_word(A2, Orientation::parse(A2, "2>1")).word(), (Word{1, 2, 1}));
    EXPECT_EQ(adapted_word(A2, Orientation::parse(A2, "1>2")).word(), (Word{2, 1, 2}));
    EXPECT_EQ(adapted_word(A3, Orientation::parse(A3, "2>1,3>2")).word(), (Word{1, 2, 1, 3, 2, 1}));
}

TEST(AdaptedWord, IsReducedSinkSequence) {
    for (const auto* d : {&A2, &A3, &D4})
        for (const auto& o : Orientation::all(*d)) {
            const Word w = adapted_word(*d, o).word();
            EXPECT_EQ(static_cast<int>(w.size()), d->num_positive_roots());
            EXPECT_TRUE(is_sink_sequence(o, w));
            EXPECT_TRUE(is_adapted(*d, o, w));
            for (const auto& aw : all_adapted_words(*d, o))
                EXPECT_TRUE(is_sink_sequence(o, aw));
        }
    EXPECT_FALSE(is_adapted(A2, Orientation::parse(A2, "2>1"), {2, 1, 2}));
}

TEST(Tau, Examples) {
    const ReducedWord w(A2, {1, 2, 1});
    EXPECT_EQ(tau(w, 3), 1);
    EXPECT_FALSE(tau(w, 2).has_value());
    EXPECT_FALSE(tau(w, 1).has_value());
}

TEST(Quiver, EpsilonAndZetaExamples) {
    const Quiver Q(A2, Orientation::parse(A2, "2>1"));
    const Datum S1{1, 0, 0}, S2{0, 0, 1};
    EXPECT_EQ(Q.dimension(S1), A2.simple_root(1));
    EXPECT_EQ(Q.dimension(S2), A2.simple_root(2));
    EXPECT_EQ(Q.epsilon(S2, S1), 0);
    EXPECT_EQ(Q.zeta(S2, S1), 1);
    EXPECT_EQ(Q.d_form(S2, S1), -1);
    EXPECT_EQ(Q.d_form(S2, S1), Q.epsilon(S1, S2) - Q.zeta(S2, S1));
    EXPECT_EQ(Q.d_form(S1, S2), 0);
    EXPECT_EQ(Q.d_form(S1, S2), Q.epsilon(S2, S1) - Q.zeta(S1, S2));
}

TEST(Quiver, IndecomposablesAreBricksWithoutSelfExtensions) {
    for (const auto* d : {&A2, &A3, &D4})
        for (const auto& o : Orientation::all(*d)) {
            const Quiver Q(*d, o);
            for (int k = 1; k <= Q.size(); ++k) {
                const Datum m = unit_datum(Q.size(), k);
                EXPECT_EQ(Q.dimension(m), Q.word().beta(k));
                EXPECT_EQ(Q.hom_dim(m, m), 1);
                EXPECT_EQ(Q.ext_dim(m, m), 0);
                EXPECT_EQ(Q.is_projective(k), !Q.tau_index(k).has_value());
            }
        }
}

TEST(Quiver, HomDimensionsMatchLinearAlgebraInTypeA) {
    for (const char* t : {"A2", "A3", "A4"}) {
        const auto d = CartanDatum::from_label(t);
        for (const auto& o : Orientation::all(d)) {
            const Quiver Q(d, o);
            for (int k = 1; k <= Q.size(); ++k)
                for (int l = 1; l <= Q.size(); ++l) {
                    const RootVec a = Q.word().beta(k), b = Q.word().beta(l);
                    const int hom = thin_hom_dim(o, a, b);
                    ASSERT_EQ(Q.indecomposable_hom(k, l), hom) << t << " " << o.str() << " " << k << "," << l;
                    const Datum mk = unit_datum(Q.size(), k), ml = unit_datum(Q.size(), l);
                    ASSERT_EQ(Q.ext_dim(mk, ml), hom - o.euler_form(a, b));
                }
        }
    }
}

TEST(Quiver, DIdentityOnEveryOrientation) {
    for (const char* t : {"A2", "A3", "A4", "D4"}) {
        const auto d = CartanDatum::from_label(t);
        for (const auto& o : Orientation::all(d)) {
            const auto r = check_d_identity(Quiver(d, o));
            EXPECT_TRUE(r.ok()) << t << " " << o.str();
            EXPECT_GT(r.checked, 0);
        }
    }
}

TEST(Quiver, MonotonicityAlongExtOrder) {
    const QuantumAlgebra alg(A3);
    for (const auto& o : Orientation::all(A3)) {
        const Quiver Q(A3, o);
        const PBWBasis pbw(alg, Q.word());
        for (int k = 1; k <= Q.size(); ++k) {
            const auto r = check_monotone(Q, pbw, k, 3);
            EXPECT_TRUE(r.value_failures.empty() && r.monotone_failures.empty()) << o.str() << " k=" << k;
        }
        EXPECT_EQ(Q.d_form(flag_datum(Q.word(), 2), Datum(6, 0)), 0);
        EXPECT_EQ(Q.epsilon(Datum(6, 0), unit_datum(6, 2)), 0);
    }
}

TEST(Quiver, FlagDatum) {
    const ReducedWord w(A2, {1, 2, 1});
    EXPECT_EQ(flag_datum(w, 0), (Datum{0, 0, 0}));
    EXPECT_EQ(flag_datum(w, 1), (Datum{1, 0, 0}));
    EXPECT_EQ(flag_datum(w, 3), (Datum{1, 0, 1}));
}

TEST(TypeAFlagWord, Examples) {
    const auto a = typeA_flag_word(A2, {2});
    EXPECT_EQ(a.prefix, (Word{1}));
    EXPECT_TRUE(is_adapted(A2, a.orientation, a.completion.word()));
    const auto b = typeA_flag_word(A3, {2, 3});
    EXPECT_EQ(b.prefix, (Word{1, 2}));
    EXPECT_EQ(Word(b.completion.word().begin(), b.completion.word().begin() + 2), b.prefix);
    EXPECT_TRUE(is_adapted(A3, b.orientation, b.completion.word()));
    EXPECT_TRUE(typeA_flag_word(A3, {1, 2}).prefix.empty());
    EXPECT_THROW(typeA_flag_word(D4, {1}), std::invalid_argument);
    EXPECT_THROW(typeA_flag_word(A3, {2, 2}), std::invalid_argument);
}

TEST(TypeAFlagWord, PrefixMinorWeightMatchesRowSet) {
    // rows I = {i_1 < ... < i_k}: the weight (Id - w) varpi_k of the minor is sum_j (e_j - e_{i_j}) in the e-basis,
    // i.e. the root sum_j (a_j + ... + a_{i_j - 1}).
    for (const auto& rows : std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 3}, {2, 4}, {3, 4}, {1, 3}, {2, 3, 4}}) {
        const auto f = typeA_flag_word(A3, rows);
        RootVec expected;
        for (std::size_t j = 0; j < rows.size(); ++j)
            for (int a = static_cast<int>(j) + 1; a < rows[j]; ++a)
                expected[a - 1] += 1;
        const WeightVec om = A3.fundamental_weight(static_cast<int>(rows.size()));
        EXPECT_EQ(A3.weight_to_root(om - A3.weyl_act(f.prefix, om)), expected) << format_word(rows);
    }
}
