#pragma once

/**
 * @file pbw.hpp
 * @brief Root vectors, PBW monomials and coordinates, the forms d and c,
 *        right-lexicographic and straightening (Ext) orders.
 */

#include "qea.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace qflag {

class NotInUqn : public std::logic_error {
public:
    explicit NotInUqn(const std::string& what) : std::logic_error(what) {}
};

/// Exponent vector m in Z_{>=0}^N relative to a fixed reduced word of w0.
using Datum = std::vector<int>;

inline std::string format_datum(const Datum& m) {
    std::string s = "[";
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (k)
            s += ",";
        s += std::to_string(m[k]);
    }
    return s + "]";
}

inline Datum unit_datum(int n, int k) {
    Datum m(static_cast<std::size_t>(n), 0);
    m[static_cast<std::size_t>(k - 1)] = 1;
    return m;
}

inline Datum operator+(Datum a, const Datum& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        a[k] += b[k];
    return a;
}

inline bool is_zero_datum(const Datum& m) {
    return std::all_of(m.begin(), m.end(), [](int x) { return x == 0; });
}

/// Right lexicographic order: compare at the largest index where m and n differ.
/// d(m, n) = sum_{i > j} (b_i, b_j) m_i n_j + sum_i <b_i, b_i>/2 m_i n_i.
inline int lusztig_d_form(const CartanDatum& d, const ReducedWord& w, const Datum& m, const Datum& n) {
    int s2 = 0;
    for (int i = 1; i <= w.length(); ++i) {
        const int mi = m[static_cast<std::size_t>(i - 1)];
        if (mi == 0)
            continue;
        for (int j = 1; j < i; ++j)
            s2 += 2 * d.form(w.beta(i), w.beta(j)) * mi * n[static_cast<std::size_t>(j - 1)];
        s2 += d.norm(w.beta(i)) * mi * n[static_cast<std::size_t>(i - 1)];
    }
    return s2 / 2;
}

inline bool rlex_less(const Datum& m, const Datum& n) {
    for (std::size_t k = m.size(); k-- > 0;)
        if (m[k] != n[k])
            return m[k] < n[k];
    return false;
}

/// Expansion in a basis indexed by data (PBW, dual PBW or dual canonical).
using DatumExpansion = std::map<Datum, RatScalar>;

class PBWBasis {
public:
    PBWBasis(const QuantumAlgebra& alg, const ReducedWord& word) : alg_(alg), word_(word) {
        if (word_.length() != alg.datum().num_positive_roots())
            throw std::invalid_argument("PBW basis needs a reduced word of the longest element");
        root_cache_ = std::make_unique<RootSlot[]>(static_cast<std::size_t>(word_.length()));
    }

    const QuantumAlgebra& algebra() const { return alg_; }
    const CartanDatum& datum() const { return alg_.datum(); }
    const ReducedWord& word() const { return word_; }
    int length() const { return word_.length(); }

    RootVec weight(const Datum& m) const {
        RootVec r;
        for (int k = 1; k <= length(); ++k)
            r = r + m[static_cast<std::size_t>(k - 1)] * word_.beta(k);
        return r;
    }

    int root_norm(int k) const { return datum().norm(word_.beta(k)); }

    /// All data of the given weight, increasing in rlex order.
    std::vector<Datum> data_of_weight(const RootVec& mu) const {
        std::vector<Datum> out;
        if (!mu.is_nonneg())
            return out;
        Datum cur(static_cast<std::size_t>(length()), 0);
        auto rec = [&](auto&& self, int k, RootVec rem) -> void {
            if (k == 0) {
                if (rem.is_zero())
                    out.push_back(cur);
                return;
            }
            const RootVec& b = word_.beta(k);
            int c = 0;
            RootVec r = rem;
            while (r.is_nonneg()) {
                cur[static_cast<std::size_t>(k - 1)] = c;
                self(self, k - 1, r);
                r = r - b;
                ++c;
            }
            cur[static_cast<std::size_t>(k - 1)] = 0;
        };
        rec(rec, length(), mu);
        std::sort(out.begin(), out.end(), rlex_less);
        return out;
    }

    /// All nonzero data of weight height <= h.
    std::vector<Datum> data_up_to_height(int h) const {
        std::vector<Datum> out;
        for (const auto& mu : weights_up_to_height(h))
            for (auto& m : data_of_weight(mu))
                out.push_back(std::move(m));
        return out;
    }

    /// Nonzero weights in the positive cone with height <= h.
    std::vector<RootVec> weights_up_to_height(int h) const {
        std::vector<RootVec> out;
        RootVec cur;
        const int n = datum().rank();
        auto rec = [&](auto&& self, int i, int left) -> void {
            if (i == n) {
                if (!cur.is_zero())
                    out.push_back(cur);
                return;
            }
            for (int c = 0; c <= left; ++c) {
                cur[i] = c;
                self(self, i + 1, left - c);
            }
            cur[i] = 0;
        };
        rec(rec, 0, h);
        std::sort(out.begin(), out.end(), [](const RootVec& a, const RootVec& b) {
            if (a.height() != b.height())
                return a.height() < b.height();
            return a < b;
        });
        return out;
    }

    // ---------------------------------------------------------- root vectors

    /// E_{beta_k} = sigma eta (T_{i_1} ... T_{i_{k-1}} (E_{i_k})), a unit multiple of the braid image
    /// normalized so that (E_{beta_k}, F_{beta_k}) = (E_i, F_i) for any simple root of the same length.
    const UPlusExpr& root_vector(int k) const {
        auto& slot = root_cache_[static_cast<std::size_t>(checked_index(k) - 1)];
        std::call_once(slot.once, [&] { slot.expr = compute_root_vector(k); });
        return slot.expr;
    }

    const ShuffleVec& root_vec(int k) const {
        auto& slot = root_cache_[static_cast<std::size_t>(checked_index(k) - 1)];
        root_vector(k);
        std::call_once(slot.vec_once, [&] { slot.vec = alg_.vec(slot.expr); });
        return slot.vec;
    }

    /// Word expansion of E(m) (concatenation of root vector divided powers).
    UPlusExpr pbw_monomial(const Datum& m) const {
        UPlusExpr out = UPlusExpr::one();
        for (int k = 1; k <= length(); ++k) {
            const int mk = m[static_cast<std::size_t>(k - 1)];
            if (mk == 0)
                continue;
            UPlusExpr p = UPlusExpr::one();
            for (int t = 0; t < mk; ++t)
                p = p * root_vector(k);
            p = RatScalar(1) / RatScalar(quantum_factorial(mk, root_norm(k))) * p;
            out = out * p;
        }
        return out;
    }

    /// Normalized pairing vector of E(m).
    ShuffleVec pbw_vec(const Datum& m) const {
        {
            std::lock_guard lock(mutex_);
            auto it = pbw_vec_cache_.find(m);
            if (it != pbw_vec_cache_.end())
                return it->second;
        }
        ShuffleVec out = ShuffleVec::unit();
        for (int k = 1; k <= length(); ++k) {
            const int mk = m[static_cast<std::size_t>(k - 1)];
            if (mk == 0)
                continue;
            ShuffleVec p = ShuffleVec::unit();
            for (int t = 0; t < mk; ++t)
                p = alg_.shuffle(p, root_vec(k));
            p = RatScalar(1) / RatScalar(quantum_factorial(mk, root_norm(k))) * p;
            out = alg_.shuffle(out, p);
        }
        std::lock_guard lock(mutex_);
        pbw_vec_cache_.emplace(m, out);
        return out;
    }

    // ------------------------------------------------------- F-side, duality

    /// (x, F(n)) for x given by its normalized pairing vector, where F(n) is the
    /// image of E(n) under the algebra isomorphism E_i -> F_i.
    RatScalar pair_with_F(const ShuffleVec& x, const Datum& n) const {
        if (x.is_zero())
            return {};
        ShuffleVec cur = x;
        for (int k = 1; k <= length() && !cur.is_zero(); ++k) {
            const int nk = n[static_cast<std::size_t>(k - 1)];
            for (int t = 0; t < nk && !cur.is_zero(); ++t)
                cur = contract_left(cur, root_words(k));
            if (nk > 1)
                cur = RatScalar(1) / RatScalar(quantum_factorial(nk, root_norm(k))) * cur;
        }
        RatScalar c = cur.at(PlainWord{});
        if (c.is_zero())
            return c;
        return c * alg_.weight_factor(weight(n));
    }

    /// (E(m), F(m)).
    RatScalar pbw_norm(const Datum& m) const { return pair_with_F(pbw_vec(m), m); }

    /// f_m = 1 / (E(m), F(m)), so that E(m)^* = f_m E(m).
    RatScalar dual_pbw_normalizer(const Datum& m) const {
        {
            std::lock_guard lock(mutex_);
            auto it = normalizer_cache_.find(m);
            if (it != normalizer_cache_.end())
                return it->second;
        }
        RatScalar n = pbw_norm(m);
        if (n.is_zero())
            throw std::logic_error("PBW monomial " + format_datum(m) + " pairs to zero with its F-mirror");
        RatScalar f = n.inverse();
        std::lock_guard lock(mutex_);
        normalizer_cache_.emplace(m, f);
        return f;
    }

    /// Normalized pairing vector of E(m)^*.
    ShuffleVec dual_pbw_vec(const Datum& m) const { return dual_pbw_normalizer(m) * pbw_vec(m); }

    /// Coordinates of x in the dual PBW basis: a_n = (x, F(n)).
    DatumExpansion dual_pbw_coordinates(const ShuffleVec& x, const RootVec& mu) const {
        DatumExpansion out;
        for (const auto& n : data_of_weight(mu)) {
            RatScalar a = pair_with_F(x, n);
            if (!a.is_zero())
                out.emplace(n, a);
        }
        return out;
    }

    /// Coordinates of x in the PBW basis: c_m = f_m (x, F(m)).
    DatumExpansion pbw_coordinates(const ShuffleVec& x, const RootVec& mu) const {
        DatumExpansion out;
        for (auto& [n, a] : dual_pbw_coordinates(x, mu))
            out.emplace(n, a * dual_pbw_normalizer(n));
        return out;
    }
    DatumExpansion pbw_coordinates(const UPlusExpr& x) const {
        if (x.is_structurally_zero())
            return {};
        return pbw_coordinates(alg_.vec(x), x.terms().begin()->first.weight());
    }

    // ------------------------------------------------------------- forms

    int d_form(const Datum& m, const Datum& n) const { return lusztig_d_form(datum(), word_, m, n); }
    /// Gr E(m) Gr E(n) = q^{c(n, m)} Gr E(n) Gr E(m), summed from the pairwise graded commutation of root vectors.
    int c_form(const Datum& n, const Datum& m) const {
        int s = 0;
        for (int i = 1; i <= length(); ++i)
            for (int j = 1; j <= length(); ++j) {
                if (i == j)
                    continue;
                const int t = datum().form(word_.beta(i), word_.beta(j)) * m[static_cast<std::size_t>(i - 1)] *
                              n[static_cast<std::size_t>(j - 1)];
                s += i < j ? t : -t;
            }
        return s;
    }

    // ------------------------------------------------------ straightening

    /// PBW coordinates of E_{b_k} E_{b_k'} - q^{<b_k', b_k>} E_{b_k'} E_{b_k}, k < k'.
    DatumExpansion straighten_commutator(int k, int kp) const {
        if (!(k < kp))
            throw std::invalid_argument("straighten_commutator requires k < k'");
        const ShuffleVec& a = root_vec(k);
        const ShuffleVec& b = root_vec(kp);
        const int e = datum().form(word_.beta(kp), word_.beta(k));
        ShuffleVec x = alg_.shuffle(a, b) - RatScalar::q_pow(e) * alg_.shuffle(b, a);
        return pbw_coordinates(x, word_.beta(k) + word_.beta(kp));
    }

    /// Reflexive-transitive closure of the straightening relations within the weight of n:
    /// returns every m with m <=_ext n.
    std::set<Datum> ext_below(const Datum& n) const {
        const RootVec mu = weight(n);
        std::lock_guard lock(ext_mutex_);
        auto& table = ext_cache_[mu];
        if (table.empty())
            table = build_ext_table(mu);
        return table.at(n);
    }

    bool ext_leq(const Datum& m, const Datum& n) const {
        if (weight(m) != weight(n))
            return false;
        return ext_below(n).count(m) > 0;
    }

    /// Generating relations of the Ext order: pairs (k, k') with their straightening support.
    const std::map<std::pair<int, int>, std::vector<Datum>>& straightening_supports() const {
        std::call_once(supports_once_, [&] {
            for (int k = 1; k <= length(); ++k)
                for (int kp = k + 1; kp <= length(); ++kp) {
                    std::vector<Datum> s;
                    for (const auto& [m, c] : straighten_commutator(k, kp))
                        s.push_back(m);
                    supports_[{k, kp}] = std::move(s);
                }
        });
        return supports_;
    }

private:
    struct RootSlot {
        std::once_flag once;
        std::once_flag vec_once;
        std::once_flag words_once;
        UPlusExpr expr;
        ShuffleVec vec;
        std::vector<std::pair<PlainWord, RatScalar>> words;
    };

    int checked_index(int k) const {
        if (k < 1 || k > length())
            throw std::out_of_range("root index " + std::to_string(k) + " out of range");
        return k;
    }

    UPlusExpr compute_root_vector(int k) const {
        const CartanDatum& d = datum();
        UPlusExpr y = UPlusExpr::generator(word_.letter(k));
        for (int j = k - 1; j >= 1; --j) {
            TriExpr t = alg_.braid_T(word_.letter(j), TriExpr::from_uplus(y, d));
            UPlusExpr part = t.uplus_part();
            TriExpr rest = t - TriExpr::from_uplus(part, d);
            if (!alg_.tri_is_zero(rest))
                throw NotInUqn("root vector " + std::to_string(k) + " of word " + format_word(word_.word()) +
                               " leaves U_q(n)");
            y = simplify(part);
        }
        return simplify(sigma_eta(y));
    }

    // Re-expresses x on a small set of plain words spanning its weight space.
    UPlusExpr simplify(const UPlusExpr& x) const {
        ShuffleVec v = alg_.vec(x);
        if (v.is_zero())
            return {};
        const RootVec mu = weight_of(v.coeffs().begin()->first);
        const auto words = datum().words_of_weight(mu);
        // Greedy basis of plain words by Gaussian elimination on their pairing vectors.
        struct Row {
            ShuffleVec vec;
            std::map<PlainWord, RatScalar> combo;  // vec = sum combo[w] * vec(w)
            PlainWord pivot;
        };
        std::vector<Row> basis;
        auto reduce = [&](ShuffleVec vec, std::map<PlainWord, RatScalar> combo) {
            for (const auto& r : basis) {
                RatScalar c = vec.at(r.pivot);
                if (c.is_zero())
                    continue;
                RatScalar f = c / r.vec.at(r.pivot);
                vec -= f * r.vec;
                for (const auto& [w, a] : r.combo) {
                    auto& slot = combo[w];
                    slot -= f * a;
                }
            }
            return std::make_pair(std::move(vec), std::move(combo));
        };
        for (const auto& w : words) {
            PlainWord pw = plain_from_word(w);
            auto [vec, combo] = reduce(alg_.word_vector(pw), {{pw, RatScalar(1)}});
            if (vec.is_zero())
                continue;
            PlainWord piv = vec.coeffs().begin()->first;
            basis.push_back({std::move(vec), std::move(combo), piv});
        }
        // Express v: v = sum_r f_r basis[r].vec, then substitute combos.
        ShuffleVec rem = v;
        std::map<PlainWord, RatScalar> out;
        for (const auto& r : basis) {
            RatScalar c = rem.at(r.pivot);
            if (c.is_zero())
                continue;
            RatScalar f = c / r.vec.at(r.pivot);
            rem -= f * r.vec;
            for (const auto& [w, a] : r.combo)
                out[w] += f * a;
        }
        if (!rem.is_zero())
            throw std::logic_error("simplify: element outside the span of words");
        UPlusExpr res;
        for (const auto& [w, c] : out)
            res.add(EWord::plain(w), c);
        return res;
    }

    const std::vector<std::pair<PlainWord, RatScalar>>& root_words(int k) const {
        auto& slot = root_cache_[static_cast<std::size_t>(checked_index(k) - 1)];
        std::call_once(slot.words_once, [&] {
            const UPlusExpr plain = root_vector(k).expanded_plain(datum());
            for (const auto& [w, c] : plain.terms())
                slot.words.emplace_back(w.expanded(), c);
        });
        return slot.words;
    }

    // R(v') = sum_u y_u x(u v').
    static ShuffleVec contract_left(const ShuffleVec& x, const std::vector<std::pair<PlainWord, RatScalar>>& y) {
        ShuffleVec out;
        for (const auto& [u, c] : y) {
            auto it = x.coeffs().lower_bound(u);
            for (; it != x.coeffs().end() && it->first.compare(0, u.size(), u) == 0; ++it)
                out.add(it->first.substr(u.size()), c * it->second);
        }
        return out;
    }

    std::map<Datum, std::set<Datum>> build_ext_table(const RootVec& mu) const {
        const auto& supports = straightening_supports();
        const auto data = data_of_weight(mu);
        std::map<Datum, std::vector<Datum>> edges;
        for (const auto& n : data) {
            auto& out = edges[n];
            for (const auto& [kk, supp] : supports) {
                const auto [k, kp] = kk;
                Datum p = n;
                if (--p[static_cast<std::size_t>(k - 1)] < 0)
                    continue;
                if (--p[static_cast<std::size_t>(kp - 1)] < 0)
                    continue;
                for (const auto& s : supp)
                    out.push_back(s + p);
            }
        }
        std::map<Datum, std::set<Datum>> table;
        for (const auto& n : data) {
            std::set<Datum> seen{n};
            std::vector<Datum> stack{n};
            while (!stack.empty()) {
                Datum cur = stack.back();
                stack.pop_back();
                for (const auto& nx : edges[cur])
                    if (seen.insert(nx).second)
                        stack.push_back(nx);
            }
            table.emplace(n, std::move(seen));
        }
        return table;
    }

    const QuantumAlgebra& alg_;
    ReducedWord word_;
    std::unique_ptr<RootSlot[]> root_cache_;
    mutable std::mutex mutex_;
    mutable std::map<Datum, ShuffleVec> pbw_vec_cache_;
    mutable std::map<Datum, RatScalar> normalizer_cache_;
    mutable std::once_flag supports_once_;
    mutable std::map<std::pair<int, int>, std::vector<Datum>> supports_;
    mutable std::mutex ext_mutex_;
    mutable std::map<RootVec, std::map<Datum, std::set<Datum>>> ext_cache_;
};

} // namespace qflag
