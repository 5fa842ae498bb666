#pragma once

/**
 * @file multiplicativity.hpp
 * @brief q-commutation and multiplicativity of dual canonical elements, the
 *        adapted algebra spanned by flag-minor monomials, and a scan harness
 *        for the multiplicativity theorem on adapted words.
 */

#include "canonical.hpp"
#include "quiver.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qflag {

/// m with b b' = q^m b' b, if any.
inline std::optional<int> q_commute_exponent(const QuantumAlgebra& alg, const ShuffleVec& b, const ShuffleVec& bp) {
    const ShuffleVec lhs = alg.shuffle(b, bp);
    const ShuffleVec rhs = alg.shuffle(bp, b);
    if (lhs.is_zero() && rhs.is_zero())
        return 0;
    const auto r = ShuffleVec::ratio(lhs, rhs);
    if (!r)
        return std::nullopt;
    const auto p = as_signed_q_power(*r);
    if (!p || p->first != 1)
        return std::nullopt;
    return p->second;
}

inline std::optional<int> q_commute_exponent(const QuantumAlgebra& alg, const UPlusExpr& b, const UPlusExpr& bp) {
    return q_commute_exponent(alg, alg.vec(b), alg.vec(bp));
}

struct Multiplicative {
    int power;    // B(m)* B(m')* = q^{-power} B(datum)*
    Datum datum;
};

/// Single-term test on the B* expansion of B(m)* B(m')*.
inline std::optional<Multiplicative> is_multiplicative(const CanonicalBasis& cb, const Datum& m, const Datum& mp) {
    const ShuffleVec prod = cb.algebra().shuffle(cb.canonical_vec(m), cb.canonical_vec(mp));
    const auto expansion = cb.expand_dual_canonical(prod);
    if (expansion.size() != 1)
        return std::nullopt;
    const auto& [datum, c] = *expansion.begin();
    const auto p = as_signed_q_power(c);
    if (!p || p->first != 1)
        return std::nullopt;
    return Multiplicative{-p->second, datum};
}

/// q^{d(m,m')} B(m)* B(m')* is congruent to B(m+m')* modulo q L*.
inline bool check_511(const CanonicalBasis& cb, const Datum& m, const Datum& mp) {
    const ShuffleVec prod = cb.algebra().shuffle(cb.canonical_vec(m), cb.canonical_vec(mp));
    const RatScalar shift = RatScalar::q_pow(cb.pbw().d_form(m, mp));
    return cb.congruent_mod_qL(shift * prod, cb.canonical_vec(m + mp));
}

/// All sums of prefix flag data n_1, ..., n_N whose weight has height at most H.
inline std::vector<Datum> adapted_monomials(const PBWBasis& pbw, int H) {
    const ReducedWord& w = pbw.word();
    const int N = w.length();
    std::vector<Datum> gens;
    std::vector<int> heights;
    for (int k = 1; k <= N; ++k) {
        gens.push_back(flag_datum(w, k));
        heights.push_back(pbw.weight(gens.back()).height());
    }
    std::set<Datum> seen;
    Datum cur(static_cast<std::size_t>(N), 0);
    auto rec = [&](auto&& self, std::size_t g, int h) -> void {
        if (g == gens.size()) {
            seen.insert(cur);
            return;
        }
        self(self, g + 1, h);
        Datum saved = cur;
        for (int hh = h + heights[g]; hh <= H; hh += heights[g]) {
            cur = cur + gens[g];
            self(self, g + 1, hh);
        }
        cur = saved;
    };
    if (H >= 0)
        rec(rec, 0, 0);
    std::vector<Datum> out(seen.begin(), seen.end());
    std::stable_sort(out.begin(), out.end(), [&](const Datum& a, const Datum& b) {
        const int ha = pbw.weight(a).height(), hb = pbw.weight(b).height();
        return ha != hb ? ha < hb : rlex_less(a, b);
    });
    return out;
}

struct PairReport {
    Datum m, mp;
    std::optional<int> q_commute;
    std::optional<Multiplicative> multiplicative;
    bool m_adapted = false;
    bool mp_adapted = false;
    bool congruence = false;
};

struct Violation {
    PairReport pair;
    std::string reason;
};

struct Theorem51Report {
    Word word;
    bool adapted_word = true;
    int pairs_scanned = 0;
    int q_commuting = 0;
    int multiplicative = 0;
    int exploratory_non_multiplicative = 0;  // q-commuting, neither factor adapted, not multiplicative
    std::vector<PairReport> q_commuting_pairs;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Scans unordered pairs (b, b') of B* elements of height <= H with b in the adapted algebra.
/// With `exploratory`, pairs with neither factor adapted are scanned as well and only counted.
inline Theorem51Report verify_theorem_51(const CanonicalBasis& cb, int H, bool exploratory = false) {
    const PBWBasis& pbw = cb.pbw();
    const QuantumAlgebra& alg = cb.algebra();
    Theorem51Report rep;
    rep.word = pbw.word().word();

    const auto mono = adapted_monomials(pbw, H);
    const std::set<Datum> in_algebra(mono.begin(), mono.end());
    const auto all = pbw.data_up_to_height(H);

    std::set<std::pair<Datum, Datum>> done;
    for (const auto& m : all) {
        for (const auto& mp : all) {
            const bool ma = in_algebra.count(m) > 0, mpa = in_algebra.count(mp) > 0;
            if (!ma && !mpa && !exploratory)
                continue;
            if (!done.insert(std::minmax(m, mp)).second)
                continue;
            PairReport pr{m, mp, std::nullopt, std::nullopt, ma, mpa, false};
            ++rep.pairs_scanned;
            pr.q_commute = q_commute_exponent(alg, cb.canonical_vec(m), cb.canonical_vec(mp));
            pr.multiplicative = is_multiplicative(cb, m, mp);
            if (pr.multiplicative) {
                ++rep.multiplicative;
                pr.congruence = check_511(cb, m, mp);
            }
            if (pr.multiplicative && !pr.q_commute)
                rep.violations.push_back({pr, "multiplicative but not q-commuting"});
            if (!pr.q_commute)
                continue;
            ++rep.q_commuting;
            if (ma || mpa) {
                if (!pr.multiplicative) {
                    rep.violations.push_back({pr, "q-commuting but not multiplicative"});
                } else {
                    if (!pr.congruence)
                        rep.violations.push_back({pr, "congruence modulo qL* fails"});
                    if (pr.multiplicative->datum != m + mp || pr.multiplicative->power != pbw.d_form(m, mp))
                        rep.violations.push_back({pr, "product is not q^{-d(m,m')} B(m+m')*"});
                }
            } else if (!pr.multiplicative) {
                ++rep.exploratory_non_multiplicative;
            }
            rep.q_commuting_pairs.push_back(std::move(pr));
        }
    }
    return rep;
}

} // namespace qflag
