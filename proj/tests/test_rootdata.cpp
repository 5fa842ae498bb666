#include <qflag/rootdata.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace qflag;

namespace {

RootVec root(std::initializer_list<int> c) {
    RootVec r;
    int i = 0;
    for (int x : c)
        r[i++] = x;
    return r;
}

// s_i(x) = x - (2 (x, a_i) / (a_i, a_i)) a_i computed from the Cartan matrix columns.
RootVec reflect_by_matrix(const CartanDatum& d, int i, RootVec x) {
    int pairing = 0;
    for (int j = 1; j <= d.rank(); ++j)
        pairing += x[j - 1] * d.cartan(i, j);
    x[i - 1] -= pairing;
    return x;
}

} // namespace

TEST(Form, Examples) {
    const auto A2 = CartanDatum::from_label("A2");
    EXPECT_EQ(A2.form(A2.simple_root(1), A2.simple_root(2)), -1);
    EXPECT_EQ(A2.form(A2.fundamental_weight(1), A2.simple_root(1)), 1);
    EXPECT_EQ(A2.form(A2.fundamental_weight(1), A2.simple_root(2)), 0);
    const auto B2 = CartanDatum::from_label("B2");
    EXPECT_EQ(B2.form(B2.simple_root(2), B2.simple_root(2)), 4);
    EXPECT_EQ(B2.form(B2.simple_root(1), B2.simple_root(1)), 2);
    EXPECT_EQ(B2.form(B2.fundamental_weight(2), B2.simple_root(2)), 2);
}

TEST(Form, IsSymmetric) {
    for (const char* t : {"A2", "A3", "A4", "B2", "D4"}) {
        const auto d = CartanDatum::from_label(t);
        for (int i = 1; i <= d.rank(); ++i)
            for (int j = 1; j <= d.rank(); ++j)
                EXPECT_EQ(d.form(d.simple_root(i), d.simple_root(j)), d.form(d.simple_root(j), d.simple_root(i)));
    }
}

TEST(Weyl, Examples) {
    const auto A2 = CartanDatum::from_label("A2");
    EXPECT_EQ(A2.weyl_act({1}, A2.simple_root(1)), -A2.simple_root(1));
    EXPECT_EQ(A2.weyl_act({1}, A2.simple_root(2)), root({1, 1}));
    WeightVec minus_om2;
    minus_om2[1] = -1;
    EXPECT_EQ(A2.weyl_act({1, 2, 1}, A2.fundamental_weight(1)), minus_om2);
}

TEST(Weyl, ReflectionMatchesCartanMatrix) {
    for (const char* t : {"A3", "B2", "D4"}) {
        const auto d = CartanDatum::from_label(t);
        for (const auto& r : d.positive_roots())
            for (int i = 1; i <= d.rank(); ++i)
                EXPECT_EQ(d.reflect(i, r), reflect_by_matrix(d, i, r));
    }
}

TEST(Weyl, FormIsInvariant) {
    std::mt19937 rng(17);
    for (const char* t : {"A3", "B2", "D4"}) {
        const auto d = CartanDatum::from_label(t);
        std::uniform_int_distribution<int> letter(1, d.rank()), len(0, 8), coord(-3, 3);
        for (int trial = 0; trial < 200; ++trial) {
            Word w(static_cast<std::size_t>(len(rng)));
            for (auto& x : w)
                x = letter(rng);
            RootVec a, b;
            for (int i = 0; i < d.rank(); ++i) {
                a[i] = coord(rng);
                b[i] = coord(rng);
            }
            ASSERT_EQ(d.form(d.weyl_act(w, a), d.weyl_act(w, b)), d.form(a, b));
        }
    }
}

TEST(LongestWord, Lengths) {
    EXPECT_EQ(longest_word(CartanDatum::from_label("A2")).length(), 3);
    EXPECT_EQ(longest_word(CartanDatum::from_label("B2")).length(), 4);
    EXPECT_EQ(longest_word(CartanDatum::from_label("A3")).length(), 6);
    EXPECT_EQ(longest_word(CartanDatum::from_label("D4")).length(), 12);
}

TEST(LongestWord, SendsPositiveRootsToNegative) {
    for (const char* t : {"A2", "A3", "B2", "D4"}) {
        const auto d = CartanDatum::from_label(t);
        const Word w = longest_word(d).word();
        for (const auto& r : d.positive_roots()) {
            RootVec x = r;
            for (auto it = w.rbegin(); it != w.rend(); ++it)
                x = reflect_by_matrix(d, *it, x);
            EXPECT_FALSE(x.is_nonneg());
        }
    }
}

TEST(LongestWord, CountsOfReducedWords) {
    EXPECT_EQ(all_longest_words(CartanDatum::from_label("A2")).size(), 2u);
    EXPECT_EQ(all_longest_words(CartanDatum::from_label("B2")).size(), 2u);
    EXPECT_EQ(all_longest_words(CartanDatum::from_label("A3")).size(), 16u);
    for (const auto& w : all_longest_words(CartanDatum::from_label("A3")))
        EXPECT_TRUE(same_weyl_element(CartanDatum::from_label("A3"), w, {1, 2, 1, 3, 2, 1}));
}

TEST(Betas, Examples) {
    const auto A2 = CartanDatum::from_label("A2");
    EXPECT_EQ(ReducedWord(A2, {1, 2, 1}).betas(), (std::vector<RootVec>{root({1, 0}), root({1, 1}), root({0, 1})}));
    EXPECT_EQ(ReducedWord(A2, {2, 1, 2}).betas(), (std::vector<RootVec>{root({0, 1}), root({1, 1}), root({1, 0})}));
    EXPECT_THROW(ReducedWord(A2, {1, 1, 2}), NotReduced);
    EXPECT_FALSE(is_reduced(A2, {1, 1}));
}

TEST(Betas, EnumerateEachPositiveRootOnce) {
    for (const char* t : {"A3", "B2", "D4"}) {
        const auto d = CartanDatum::from_label(t);
        for (const auto& w : {longest_word(d).word()}) {
            const auto betas = beta_sequence(d, w);
            std::set<RootVec> seen(betas.begin(), betas.end());
            EXPECT_EQ(seen.size(), betas.size());
            EXPECT_EQ(seen, std::set<RootVec>(d.positive_roots().begin(), d.positive_roots().end()));
            // beta_k = s_{i_1} ... s_{i_{k-1}} (a_{i_k}) through the matrix reflection
            for (std::size_t k = 0; k < w.size(); ++k) {
                RootVec x = d.simple_root(w[k]);
                for (std::size_t j = k; j-- > 0;)
                    x = reflect_by_matrix(d, w[j], x);
                EXPECT_EQ(betas[k], x);
            }
        }
    }
}

TEST(Betas, B2Roots) {
    const auto B2 = CartanDatum::from_label("B2");
    EXPECT_EQ(B2.num_positive_roots(), 4);
    EXPECT_TRUE(B2.is_root(root({2, 1})));
    EXPECT_TRUE(B2.is_root(root({1, 1})));
    EXPECT_FALSE(B2.is_root(root({1, 2})));
}

TEST(DualVertex, Examples) {
    EXPECT_EQ(dual_vertex(CartanDatum::from_label("A2"), 1), 2);
    EXPECT_EQ(dual_vertex(CartanDatum::from_label("A3"), 2), 2);
    EXPECT_EQ(dual_vertex(CartanDatum::from_label("A3"), 1), 3);
    EXPECT_EQ(dual_vertex(CartanDatum::from_label("D4"), 1), 1);
    EXPECT_EQ(dual_vertex(CartanDatum::from_label("B2"), 2), 2);
}

TEST(Datum, RejectsUnsupportedTypes) {
    EXPECT_THROW(CartanDatum::from_label("G2"), std::invalid_argument);
    EXPECT_THROW(CartanDatum::from_label("A9"), std::invalid_argument);
    EXPECT_THROW(CartanDatum::from_label("A2").simple_root(3), std::out_of_range);
}
