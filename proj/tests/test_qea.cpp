#include "oracles.hpp"

#include <qflag/checks.hpp>
#include <qflag/qea.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace qflag;

namespace {

RatScalar q(int e) { return RatScalar::q_pow(e); }

UPlusExpr E(int i, int k = 1) { return UPlusExpr::generator(i, k); }

UPlusExpr word(std::initializer_list<int> letters) {
    UPlusExpr x = UPlusExpr::one();
    for (int i : letters)
        x = x * E(i);
    return x;
}

RootVec alpha(const CartanDatum& d, int i) { return d.simple_root(i); }

} // namespace

TEST(Pairing, GeneratorAxioms) {
    const QuantumAlgebra alg(CartanDatum::from_label("A2"));
    EXPECT_EQ(alg.pairing(E(1), E(1)), RatScalar(1) / (RatScalar(1) - q(2)));
    EXPECT_TRUE(alg.pairing(E(1), E(2)).is_zero());
    EXPECT_EQ(alg.pairing(UPlusExpr::one(), alpha(alg.datum(), 1), UPlusExpr::one(), alpha(alg.datum(), 2)), q(1));
    EXPECT_EQ(alg.pairing(UPlusExpr::one(), UPlusExpr::one()), RatScalar(1));
}

TEST(Pairing, LongRootGenerator) {
    const QuantumAlgebra alg(CartanDatum::from_label("B2"));
    EXPECT_EQ(alg.pairing(E(2), E(2)), RatScalar(1) / (RatScalar(1) - q(4)));
}

TEST(Pairing, PlainWordsAgreeWithMatchingSum) {
    std::mt19937 rng(23);
    for (const char* t : {"A2", "A3", "B2"}) {
        const QuantumAlgebra alg(CartanDatum::from_label(t));
        const CartanDatum& d = alg.datum();
        std::uniform_int_distribution<int> letter(1, d.rank()), len(1, 5);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<int> u(static_cast<std::size_t>(len(rng)));
            for (auto& x : u)
                x = letter(rng);
            std::vector<int> w = u;
            std::shuffle(w.begin(), w.end(), rng);
            UPlusExpr xu = UPlusExpr::one(), yw = UPlusExpr::one();
            for (int i : u)
                xu = xu * E(i);
            for (int i : w)
                yw = yw * E(i);
            RootVec mu;
            for (int i : u)
                mu = mu + d.simple_root(i);
            ASSERT_EQ(alg.pairing(xu, yw), alg.weight_factor(mu) * oracle::matching_sum(d, u, w))
                << t << " " << format_word(u) << " | " << format_word(w);
        }
    }
}

TEST(Pairing, IsMultiplicativeInTheShuffleSense) {
    const QuantumAlgebra alg(CartanDatum::from_label("A3"));
    const UPlusExpr x = word({1, 2}) - q(1) * word({2, 1});
    const UPlusExpr y = word({3}) + word({2});
    EXPECT_EQ(alg.vec(x * y), alg.shuffle(alg.vec(x), alg.vec(y)));
    EXPECT_EQ(alg.vec(y * x * y), alg.shuffle(alg.shuffle(alg.vec(y), alg.vec(x)), alg.vec(y)));
}

TEST(Serre, ElementsVanish) {
    for (const char* t : {"A2", "A3", "B2", "D4"}) {
        const QuantumAlgebra alg(CartanDatum::from_label(t));
        EXPECT_TRUE(check_serre(alg).ok()) << t;
        EXPECT_TRUE(check_pairing_axioms(alg).ok()) << t;
    }
    const QuantumAlgebra A2(CartanDatum::from_label("A2"));
    const UPlusExpr s12 = E(1, 2) * E(2) - word({1, 2, 1}) + E(2) * E(1, 2);
    EXPECT_TRUE(A2.canonical_form(s12).is_zero());
    EXPECT_TRUE(A2.canonical_form(UPlusExpr()).is_zero());
}

TEST(Serre, NonSerreCombinationIsNonzero) {
    const QuantumAlgebra A2(CartanDatum::from_label("A2"));
    EXPECT_FALSE(A2.canonical_form(E(1, 2) * E(2) + E(2) * E(1, 2)).is_zero());
    const auto cf = A2.canonical_form(E(1, 2));
    ASSERT_EQ(cf.entries.size(), 1u);
    EXPECT_EQ(cf.entries.begin()->first, PlainWord("\x01\x01"));
    EXPECT_FALSE(cf.entries.begin()->second.is_zero());
}

TEST(Involutions, Examples) {
    EXPECT_EQ(eta(UPlusExpr::scalar(q(1)) * word({1, 2})), UPlusExpr::scalar(q(-1)) * word({1, 2}));
    EXPECT_EQ(sigma(word({1, 2})), word({2, 1}));
    EXPECT_EQ(sigma_eta(word({1, 2}) - q(-1) * word({2, 1})), word({2, 1}) - q(1) * word({1, 2}));
}

TEST(Involutions, VectorFormMatchesWordForm) {
    std::mt19937 rng(29);
    for (const char* t : {"A2", "B2", "A3"}) {
        const QuantumAlgebra alg(CartanDatum::from_label(t));
        std::uniform_int_distribution<int> letter(1, alg.rank());
        for (int trial = 0; trial < 50; ++trial) {
            // homogeneous: random permutations of one multiset of letters
            std::vector<int> base(4);
            for (auto& x : base)
                x = letter(rng);
            UPlusExpr x;
            for (int term = 0; term < 3; ++term) {
                std::shuffle(base.begin(), base.end(), rng);
                UPlusExpr w = UPlusExpr::one();
                for (int i : base)
                    w = w * E(i);
                x += oracle::random_scalar(rng) * w;
            }
            ASSERT_EQ(alg.sigma_eta(alg.vec(x)), alg.vec(sigma_eta(x)));
        }
    }
}

TEST(Triangular, Examples) {
    const QuantumAlgebra alg(CartanDatum::from_label("A2"));
    const RootVec a1 = alpha(alg.datum(), 1);
    const TriExpr e1f1 = alg.tri_mul(TriExpr::E(1), TriExpr::F(1));
    const RatScalar inv = RatScalar(1) / (q(1) - q(-1));
    const TriExpr expected = TriExpr::term({PlainWord(1, 1), {}, PlainWord(1, 1)}, RatScalar(1)) +
                             inv * TriExpr::K(a1) - inv * TriExpr::K(-a1);
    EXPECT_EQ(e1f1, expected);
    EXPECT_EQ(alg.tri_mul(TriExpr::E(1), TriExpr::F(2)),
              TriExpr::term({PlainWord(1, 2), {}, PlainWord(1, 1)}, RatScalar(1)));
    // K_{a1} E_1 = q^2 E_1 K_{a1}, i.e. E_1 K_{a1} = q^{-2} K_{a1} E_1 in F K E order
    EXPECT_EQ(alg.tri_mul(TriExpr::E(1), TriExpr::K(a1)), q(-2) * TriExpr::term({{}, a1, PlainWord(1, 1)}, RatScalar(1)));
    EXPECT_EQ(alg.tri_mul(TriExpr::K(a1), TriExpr::K(-a1)), TriExpr::one());
}

TEST(Triangular, IsAssociative) {
    std::mt19937 rng(31);
    const QuantumAlgebra alg(CartanDatum::from_label("A2"));
    std::uniform_int_distribution<int> gen(0, 5), len(1, 3);
    auto random_monomial = [&] {
        TriExpr x = TriExpr::one();
        for (int l = len(rng); l > 0; --l) {
            const int g = gen(rng);
            const int i = g % 2 + 1;
            const TriExpr f = g < 2 ? TriExpr::E(i) : g < 4 ? TriExpr::F(i) : TriExpr::K(alpha(alg.datum(), i));
            x = alg.tri_mul(x, f);
        }
        return x;
    };
    for (int trial = 0; trial < 100; ++trial) {
        const TriExpr a = random_monomial(), b = random_monomial(), c = random_monomial();
        ASSERT_TRUE(alg.tri_equals(alg.tri_mul(alg.tri_mul(a, b), c), alg.tri_mul(a, alg.tri_mul(b, c))));
    }
}

TEST(Braid, Examples) {
    const QuantumAlgebra alg(CartanDatum::from_label("A2"));
    const RootVec a1 = alpha(alg.datum(), 1), a2 = alpha(alg.datum(), 2);
    EXPECT_EQ(alg.braid_T(1, TriExpr::E(1)), RatScalar(-1) * TriExpr::term({PlainWord(1, 1), a1, {}}, RatScalar(1)));
    EXPECT_TRUE(alg.tri_equals(alg.braid_T(1, TriExpr::E(2)),
                               TriExpr::from_uplus(word({1, 2}) - q(-1) * word({2, 1}), alg.datum())));
    EXPECT_EQ(alg.braid_T(1, TriExpr::K(a2)), TriExpr::K(a1 + a2));
}

TEST(Braid, RelationsHoldOnGenerators) {
    for (const char* t : {"A2", "B2"}) {
        const QuantumAlgebra alg(CartanDatum::from_label(t));
        const int m = std::string(t) == "A2" ? 3 : 4;
        auto apply = [&](int first, const TriExpr& x) {
            TriExpr y = x;
            for (int k = 0; k < m; ++k)
                y = alg.braid_T((k % 2 == 0) == (first == 1) ? 2 : 1, y);
            return y;
        };
        for (int i = 1; i <= 2; ++i)
            for (const TriExpr& g : {TriExpr::E(i), TriExpr::F(i)})
                EXPECT_TRUE(alg.tri_equals(apply(1, g), apply(2, g))) << t << " generator " << i;
    }
}

TEST(Braid, PreservesCommutatorRelation) {
    const QuantumAlgebra alg(CartanDatum::from_label("A2"));
    const TriExpr lhs = alg.tri_mul(TriExpr::E(1), TriExpr::F(1)) - alg.tri_mul(TriExpr::F(1), TriExpr::E(1));
    const TriExpr te = alg.braid_T(2, TriExpr::E(1)), tf = alg.braid_T(2, TriExpr::F(1));
    const TriExpr rhs = alg.tri_mul(te, tf) - alg.tri_mul(tf, te);
    EXPECT_TRUE(alg.tri_equals(alg.braid_T(2, lhs), rhs));
}
