#pragma once

/**
 * @file qea.hpp
 * @brief Elements of U_q(n) and of U_q(g) in triangular form, the Hopf pairing
 *        and pairing-vector canonical forms.
 *
 * Relations used for normal ordering (F K E):
 *   K_l E_i = q^{<l,a_i>} E_i K_l,  K_l F_i = q^{-<l,a_i>} F_i K_l,
 *   E_i F_j = F_j E_i + delta_ij (K_{a_i} - K_{-a_i}) / (q_i - q_i^-1).
 *
 * Pairing: (E_i, F_j) = delta_ij / (1 - q_i^2), (K_l, K_m) = q^{-<l,m>}, and
 *   (x y, F_w) = sum over splittings of w into complementary subwords u, v of
 *                q^{-e} (x, F_u) (y, F_v),
 * where e sums <w_p, w_p'> over pairs with p in v, p' in u and p < p'. With
 * these choices the dual PBW normalizers take the value 1 at q = 0.
 *
 * An element x of U_q(n) of weight mu is identified by its pairing vector
 * w -> (x, F_w) over plain words w of weight mu. We store it with the factor
 * prod_i (E_i, F_i)^{k_i} removed ("normalized shuffle vector"); products of
 * elements become quantum shuffle products of these vectors.
 */

#include "rootdata.hpp"
#include "scalars.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qflag {

/// Plain word: one char per letter, letters 1..rank.
using PlainWord = std::string;

inline PlainWord plain_from_word(const Word& w) {
    PlainWord p;
    for (int i : w)
        p.push_back(static_cast<char>(i));
    return p;
}

inline RootVec weight_of(const PlainWord& w) {
    RootVec r;
    for (char c : w)
        ++r[c - 1];
    return r;
}

inline PlainWord reversed(PlainWord w) {
    std::reverse(w.begin(), w.end());
    return w;
}

/// Divided-power word E_{i_1}^{(k_1)} ... E_{i_r}^{(k_r)}.
struct EWord {
    std::vector<std::pair<int, int>> letters;

    EWord() = default;
    explicit EWord(std::vector<std::pair<int, int>> l) : letters(std::move(l)) {
        for (const auto& [g, k] : letters)
            if (k < 1)
                throw std::invalid_argument("divided power multiplicity must be positive");
    }
    static EWord plain(const PlainWord& w) {
        EWord e;
        for (char c : w)
            e.letters.emplace_back(static_cast<int>(c), 1);
        return e;
    }

    RootVec weight() const {
        RootVec r;
        for (const auto& [g, k] : letters)
            r[g - 1] += k;
        return r;
    }
    PlainWord expanded() const {
        PlainWord p;
        for (const auto& [g, k] : letters)
            p.append(static_cast<std::size_t>(k), static_cast<char>(g));
        return p;
    }
    EWord reversed() const {
        EWord r;
        r.letters.assign(letters.rbegin(), letters.rend());
        return r;
    }
    bool empty() const { return letters.empty(); }

    friend EWord operator*(const EWord& a, const EWord& b) {
        EWord r = a;
        r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
        return r;
    }
    friend auto operator<=>(const EWord&, const EWord&) = default;
};

/// Finite Q(q)-combination of divided-power E-words.
class UPlusExpr {
public:
    using Map = std::map<EWord, RatScalar>;

    UPlusExpr() = default;
    static UPlusExpr one() { return term(EWord{}, RatScalar(1)); }
    static UPlusExpr scalar(const RatScalar& s) { return term(EWord{}, s); }
    static UPlusExpr generator(int i, int k = 1) { return term(EWord({{i, k}}), RatScalar(1)); }
    static UPlusExpr term(const EWord& w, const RatScalar& c) {
        UPlusExpr x;
        x.add(w, c);
        return x;
    }

    void add(const EWord& w, const RatScalar& c) {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    const Map& terms() const { return terms_; }
    bool is_structurally_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    UPlusExpr& operator+=(const UPlusExpr& o) {
        for (const auto& [w, c] : o.terms_)
            add(w, c);
        return *this;
    }
    UPlusExpr& operator-=(const UPlusExpr& o) {
        for (const auto& [w, c] : o.terms_)
            add(w, -c);
        return *this;
    }
    friend UPlusExpr operator+(UPlusExpr a, const UPlusExpr& b) { return a += b; }
    friend UPlusExpr operator-(UPlusExpr a, const UPlusExpr& b) { return a -= b; }
    friend UPlusExpr operator*(const RatScalar& s, const UPlusExpr& x) {
        UPlusExpr r;
        if (s.is_zero())
            return r;
        for (const auto& [w, c] : x.terms_)
            r.terms_.emplace(w, s * c);
        return r;
    }
    /// Concatenation product of words (no straightening).
    friend UPlusExpr operator*(const UPlusExpr& a, const UPlusExpr& b) {
        UPlusExpr r;
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_)
                r.add(wa * wb, ca * cb);
        return r;
    }
    friend bool operator==(const UPlusExpr& a, const UPlusExpr& b) { return a.terms_ == b.terms_; }

    /// Rewrites divided powers as plain words with 1/[k]! factors.
    UPlusExpr expanded_plain(const CartanDatum& datum) const {
        UPlusExpr r;
        for (const auto& [w, c] : terms_) {
            RatScalar s = c;
            for (const auto& [g, k] : w.letters)
                if (k > 1)
                    s /= RatScalar(quantum_factorial(k, 2 * datum.sym(g)));
            r.add(EWord::plain(w.expanded()), s);
        }
        return r;
    }

    /// Renders as "c*E1*E2^(2) + ..." in the CLI grammar.
    std::string str() const {
        if (terms_.empty())
            return "0";
        std::string s;
        bool first = true;
        for (const auto& [w, c] : terms_) {
            if (!first)
                s += " + ";
            first = false;
            std::string mono;
            for (const auto& [g, k] : w.letters) {
                if (!mono.empty())
                    mono += "*";
                mono += "E" + std::to_string(g);
                if (k > 1)
                    mono += "^(" + std::to_string(k) + ")";
            }
            if (mono.empty()) {
                s += "(" + c.str() + ")";
            } else if (c.is_one()) {
                s += mono;
            } else {
                s += "(" + c.str() + ")*" + mono;
            }
        }
        return s;
    }

private:
    Map terms_;
};

/// eta: bar-conjugates coefficients, fixes words.
inline UPlusExpr eta(const UPlusExpr& x) {
    UPlusExpr r;
    for (const auto& [w, c] : x.terms())
        r.add(w, bar(c));
    return r;
}

/// sigma: reverses words, fixes coefficients.
inline UPlusExpr sigma(const UPlusExpr& x) {
    UPlusExpr r;
    for (const auto& [w, c] : x.terms())
        r.add(w.reversed(), c);
    return r;
}

inline UPlusExpr sigma_eta(const UPlusExpr& x) { return sigma(eta(x)); }

/// Normalized pairing vector of an element of U_q(n).
class ShuffleVec {
public:
    using Map = std::map<PlainWord, RatScalar>;

    ShuffleVec() = default;
    static ShuffleVec unit() {
        ShuffleVec v;
        v.c_.emplace(PlainWord{}, RatScalar(1));
        return v;
    }
    static ShuffleVec letter(int i) {
        ShuffleVec v;
        v.c_.emplace(PlainWord(1, static_cast<char>(i)), RatScalar(1));
        return v;
    }

    const Map& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }
    RatScalar at(const PlainWord& w) const {
        auto it = c_.find(w);
        return it == c_.end() ? RatScalar() : it->second;
    }

    void add(const PlainWord& w, const RatScalar& c) {
        if (c.is_zero())
            return;
        auto [it, inserted] = c_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                c_.erase(it);
        }
    }

    ShuffleVec& operator+=(const ShuffleVec& o) {
        for (const auto& [w, c] : o.c_)
            add(w, c);
        return *this;
    }
    ShuffleVec& operator-=(const ShuffleVec& o) {
        for (const auto& [w, c] : o.c_)
            add(w, -c);
        return *this;
    }
    friend ShuffleVec operator+(ShuffleVec a, const ShuffleVec& b) { return a += b; }
    friend ShuffleVec operator-(ShuffleVec a, const ShuffleVec& b) { return a -= b; }
    friend ShuffleVec operator*(const RatScalar& s, const ShuffleVec& v) {
        ShuffleVec r;
        if (s.is_zero())
            return r;
        for (const auto& [w, c] : v.c_)
            r.c_.emplace(w, s * c);
        return r;
    }
    friend bool operator==(const ShuffleVec& a, const ShuffleVec& b) { return a.c_ == b.c_; }
    friend bool operator!=(const ShuffleVec& a, const ShuffleVec& b) { return !(a == b); }

    /// Returns c if a == c * b for a scalar c (b nonzero), otherwise nullopt.
    static std::optional<RatScalar> ratio(const ShuffleVec& a, const ShuffleVec& b) {
        if (b.is_zero())
            return std::nullopt;
        if (a.c_.size() != b.c_.size())
            return std::nullopt;
        const auto& [w0, b0] = *b.c_.begin();
        auto it = a.c_.find(w0);
        if (it == a.c_.end())
            return std::nullopt;
        RatScalar r = it->second / b0;
        for (const auto& [w, c] : b.c_) {
            auto jt = a.c_.find(w);
            if (jt == a.c_.end() || jt->second != r * c)
                return std::nullopt;
        }
        return r;
    }

private:
    Map c_;
};

/// Pairing vector w -> (x, F_w) of a homogeneous element (unnormalized).
struct CanonicalForm {
    RootVec weight;
    std::map<PlainWord, RatScalar> entries;

    bool is_zero() const { return entries.empty(); }
    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

/// Triangular-form element: finite sum of c * F_a K_lambda E_b (plain words).
class TriExpr {
public:
    struct Key {
        PlainWord f;
        RootVec k;
        PlainWord e;
        friend auto operator<=>(const Key&, const Key&) = default;
    };
    using Map = std::map<Key, RatScalar>;

    TriExpr() = default;
    static TriExpr one() { return term({}, RatScalar(1)); }
    static TriExpr term(const Key& k, const RatScalar& c) {
        TriExpr t;
        t.add(k, c);
        return t;
    }
    static TriExpr E(int i) { return term({{}, {}, PlainWord(1, static_cast<char>(i))}, RatScalar(1)); }
    static TriExpr F(int i) { return term({PlainWord(1, static_cast<char>(i)), {}, {}}, RatScalar(1)); }
    static TriExpr K(const RootVec& l) { return term({{}, l, {}}, RatScalar(1)); }
    static TriExpr from_uplus(const UPlusExpr& x, const CartanDatum& datum) {
        TriExpr t;
        const UPlusExpr plain = x.expanded_plain(datum);
        for (const auto& [w, c] : plain.terms())
            t.add({{}, {}, w.expanded()}, c);
        return t;
    }

    void add(const Key& k, const RatScalar& c) {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }
    const Map& terms() const { return terms_; }
    bool is_structurally_zero() const { return terms_.empty(); }

    TriExpr& operator+=(const TriExpr& o) {
        for (const auto& [k, c] : o.terms_)
            add(k, c);
        return *this;
    }
    TriExpr& operator-=(const TriExpr& o) {
        for (const auto& [k, c] : o.terms_)
            add(k, -c);
        return *this;
    }
    friend TriExpr operator+(TriExpr a, const TriExpr& b) { return a += b; }
    friend TriExpr operator-(TriExpr a, const TriExpr& b) { return a -= b; }
    friend TriExpr operator*(const RatScalar& s, const TriExpr& x) {
        TriExpr r;
        for (const auto& [k, c] : x.terms_)
            r.add(k, s * c);
        return r;
    }
    friend bool operator==(const TriExpr& a, const TriExpr& b) { return a.terms_ == b.terms_; }

    /// Terms with empty F-part and trivial K-part, as an element of U_q(n).
    UPlusExpr uplus_part() const {
        UPlusExpr r;
        for (const auto& [k, c] : terms_)
            if (k.f.empty() && k.k.is_zero())
                r.add(EWord::plain(k.e), c);
        return r;
    }
    /// Terms with empty E-part and trivial K-part, as a mirrored word expression.
    UPlusExpr uminus_part() const {
        UPlusExpr r;
        for (const auto& [k, c] : terms_)
            if (k.e.empty() && k.k.is_zero())
                r.add(EWord::plain(k.f), c);
        return r;
    }

private:
    Map terms_;
};

/// U_q(g) for a fixed Cartan datum: products, pairing, canonical forms, braid action.
class QuantumAlgebra {
public:
    explicit QuantumAlgebra(CartanDatum datum) : datum_(std::move(datum)) {}

    const CartanDatum& datum() const { return datum_; }
    int rank() const { return datum_.rank(); }

    int letter_form(char a, char b) const { return datum_.form_entry(a, b); }

    // ---------------------------------------------------------------- pairing

    /// (E_i, F_i)
    RatScalar generator_pairing(int i) const {
        const int e = 2 * datum_.sym(i);
        return RatScalar(LaurentPoly(1), LaurentPoly(1) - LaurentPoly::q_pow(e));
    }

    /// prod_i (E_i, F_i)^{k_i}: factor between normalized and true pairing vectors.
    RatScalar weight_factor(const RootVec& mu) const {
        RatScalar r(1);
        for (int i = 1; i <= rank(); ++i)
            for (int k = 0; k < mu[i - 1]; ++k)
                r *= generator_pairing(i);
        return r;
    }

    /// Quantum shuffle product of normalized pairing vectors: vec(x * y) = x (*) y.
    ShuffleVec shuffle(const ShuffleVec& x, const ShuffleVec& y) const {
        if (x.is_zero() || y.is_zero())
            return {};
        std::unordered_map<PlainWord, std::vector<std::pair<int, long>>> buf;
        ShuffleVec out;
        for (const auto& [u, a] : x.coeffs()) {
            for (const auto& [w, b] : y.coeffs()) {
                buf.clear();
                interleave(u, w, buf);
                RatScalar ab = a * b;
                for (auto& [word, exps] : buf) {
                    std::vector<LaurentPoly::Term> t;
                    t.reserve(exps.size());
                    for (const auto& [e, n] : exps)
                        t.emplace_back(e, Integer(n));
                    LaurentPoly p = LaurentPoly::from_terms(std::move(t));
                    if (!p.is_zero())
                        out.add(word, ab * RatScalar(p));
                }
            }
        }
        return out;
    }

    /// Normalized pairing vector of a plain word E_{w_1} ... E_{w_r}.
    const ShuffleVec& word_vector(const PlainWord& w) const {
        {
            std::shared_lock lock(memo_mutex_);
            auto it = word_memo_.find(w);
            if (it != word_memo_.end())
                return it->second;
        }
        ShuffleVec v;
        if (w.empty()) {
            v = ShuffleVec::unit();
        } else {
            PlainWord head = w.substr(0, w.size() - 1);
            v = append_letter(word_vector(head), w.back());
        }
        std::unique_lock lock(memo_mutex_);
        return word_memo_.try_emplace(w, std::move(v)).first->second;
    }

    /// Normalized pairing vector of a word expression.
    ShuffleVec vec(const UPlusExpr& x) const {
        ShuffleVec out;
        const UPlusExpr plain = x.expanded_plain(datum_);
        for (const auto& [w, c] : plain.terms())
            out += c * word_vector(w.expanded());
        return out;
    }

    /// Pairing vector w -> (x, F_w) for a homogeneous x.
    CanonicalForm canonical_form(const UPlusExpr& x) const {
        CanonicalForm cf;
        if (x.is_structurally_zero())
            return cf;
        cf.weight = x.terms().begin()->first.weight();
        RatScalar g = weight_factor(cf.weight);
        const ShuffleVec v = vec(x);
        for (const auto& [w, c] : v.coeffs())
            cf.entries.emplace(w, g * c);
        return cf;
    }

    /// Normalized vector of sigma eta (x): entrywise bar times q^{-C}, where C is the sum of
    /// <w_p, w_p'> over all pairs p < p' of letters of any word of the weight.
    ShuffleVec sigma_eta(const ShuffleVec& x) const {
        if (x.is_zero())
            return {};
        const RootVec mu = weight_of(x.coeffs().begin()->first);
        int diag = 0;
        for (int i = 1; i <= rank(); ++i)
            diag += mu[i - 1] * datum_.form_entry(i, i);
        const int c = (datum_.norm(mu) - diag) / 2;
        ShuffleVec out;
        for (const auto& [w, a] : x.coeffs())
            out.add(w, bar(a).times_q_pow(-c));
        return out;
    }

    bool is_zero(const UPlusExpr& x) const { return vec(x).is_zero(); }
    bool equals(const UPlusExpr& x, const UPlusExpr& y) const { return vec(x) == vec(y); }

    /// (x K_lambda, y K_mu) with x a word expression in the E_i and y a word
    /// expression read in the F_i.
    RatScalar pairing(const UPlusExpr& x, const RootVec& kx, const UPlusExpr& y, const RootVec& ky) const {
        RatScalar s;
        ShuffleVec vx = vec(x);
        const UPlusExpr plain = y.expanded_plain(datum_);
        for (const auto& [w, c] : plain.terms()) {
            PlainWord p = w.expanded();
            RatScalar v = vx.at(p);
            if (!v.is_zero())
                s += c * v * weight_factor(weight_of(p));
        }
        return s * RatScalar::q_pow(-datum_.form(kx, ky));
    }
    RatScalar pairing(const UPlusExpr& x, const UPlusExpr& y) const { return pairing(x, {}, y, {}); }

    // ------------------------------------------------------- triangular algebra

    /// Product in U_q(g), normal ordered as F K E.
    TriExpr tri_mul(const TriExpr& x, const TriExpr& y) const {
        TriExpr out;
        for (const auto& [ky, cy] : y.terms()) {
            TriExpr acc = cy * x;
            for (char f : ky.f)
                acc = right_mul_F(acc, f);
            if (!ky.k.is_zero())
                acc = right_mul_K(acc, ky.k);
            for (char e : ky.e)
                acc = right_mul_E(acc, e);
            out += acc;
        }
        return out;
    }

    /// True iff the element is zero in U_q(g) (E- and F-parts compared modulo Serre relations).
    bool tri_is_zero(const TriExpr& x) const {
        std::map<std::tuple<RootVec, PlainWord, PlainWord>, RatScalar> acc;
        for (const auto& [k, c] : x.terms()) {
            const ShuffleVec& vf = word_vector(k.f);
            const ShuffleVec& ve = word_vector(k.e);
            for (const auto& [a, ca] : vf.coeffs())
                for (const auto& [b, cb] : ve.coeffs()) {
                    auto key = std::make_tuple(k.k, a, b);
                    auto [it, ins] = acc.try_emplace(key, c * ca * cb);
                    if (!ins)
                        it->second += c * ca * cb;
                }
        }
        for (const auto& [k, c] : acc)
            if (!c.is_zero())
                return false;
        return true;
    }

    bool tri_equals(const TriExpr& x, const TriExpr& y) const { return tri_is_zero(x - y); }

    /// Lusztig's automorphism T_i on one generator.
    TriExpr braid_generator_E(int i, int j) const {
        if (i == j)
            return RatScalar(-1) * term_FK(i, datum_.simple_root(i));
        const int r = -datum_.cartan(i, j);
        TriExpr out;
        for (int k = 0; k <= r; ++k) {
            // (-1)^k q_i^{-k} E_i^{(r-k)} E_j E_i^{(k)}
            RatScalar c = RatScalar::q_pow(-k * datum_.sym(i));
            if (k % 2)
                c = -c;
            c /= RatScalar(quantum_factorial(r - k, 2 * datum_.sym(i)));
            c /= RatScalar(quantum_factorial(k, 2 * datum_.sym(i)));
            PlainWord w(static_cast<std::size_t>(r - k), static_cast<char>(i));
            w.push_back(static_cast<char>(j));
            w.append(static_cast<std::size_t>(k), static_cast<char>(i));
            out.add({{}, {}, w}, c);
        }
        return out;
    }

    TriExpr braid_generator_F(int i, int j) const {
        if (i == j) {
            // -K_{-a_i} E_i
            return TriExpr::term({{}, -datum_.simple_root(i), PlainWord(1, static_cast<char>(i))},
                                 RatScalar(-1));
        }
        const int r = -datum_.cartan(i, j);
        TriExpr out;
        for (int k = 0; k <= r; ++k) {
            // (-1)^k q_i^{k} F_i^{(k)} F_j F_i^{(r-k)}
            RatScalar c = RatScalar::q_pow(k * datum_.sym(i));
            if (k % 2)
                c = -c;
            c /= RatScalar(quantum_factorial(r - k, 2 * datum_.sym(i)));
            c /= RatScalar(quantum_factorial(k, 2 * datum_.sym(i)));
            PlainWord w(static_cast<std::size_t>(k), static_cast<char>(i));
            w.push_back(static_cast<char>(j));
            w.append(static_cast<std::size_t>(r - k), static_cast<char>(i));
            out.add({w, {}, {}}, c);
        }
        return out;
    }

    /// T_i extended multiplicatively.
    TriExpr braid_T(int i, const TriExpr& x) const {
        datum_.check_index(i);
        TriExpr out;
        std::vector<TriExpr> imgE(static_cast<std::size_t>(rank() + 1));
        std::vector<TriExpr> imgF(static_cast<std::size_t>(rank() + 1));
        for (int j = 1; j <= rank(); ++j) {
            imgE[static_cast<std::size_t>(j)] = braid_generator_E(i, j);
            imgF[static_cast<std::size_t>(j)] = braid_generator_F(i, j);
        }
        for (const auto& [k, c] : x.terms()) {
            TriExpr acc = TriExpr::term({}, c);
            for (char f : k.f)
                acc = tri_mul(acc, imgF[static_cast<std::size_t>(f)]);
            if (!k.k.is_zero())
                acc = tri_mul(acc, TriExpr::K(datum_.reflect(i, k.k)));
            for (char e : k.e)
                acc = tri_mul(acc, imgE[static_cast<std::size_t>(e)]);
            out += acc;
        }
        return out;
    }

private:
    TriExpr term_FK(int i, const RootVec& k) const {
        return TriExpr::term({PlainWord(1, static_cast<char>(i)), k, {}}, RatScalar(1));
    }

    int form_root_letter(const RootVec& r, char c) const {
        return datum_.form(r, datum_.simple_root(c));
    }

    TriExpr right_mul_E(const TriExpr& x, char i) const {
        TriExpr out;
        for (const auto& [k, c] : x.terms()) {
            TriExpr::Key nk = k;
            nk.e.push_back(i);
            out.add(nk, c);
        }
        return out;
    }

    TriExpr right_mul_K(const TriExpr& x, const RootVec& mu) const {
        TriExpr out;
        for (const auto& [k, c] : x.terms()) {
            TriExpr::Key nk = k;
            nk.k = k.k + mu;
            out.add(nk, c.times_q_pow(-datum_.form(mu, weight_of(k.e))));
        }
        return out;
    }

    TriExpr right_mul_F(const TriExpr& x, char j) const {
        TriExpr out;
        const RootVec aj = datum_.simple_root(j);
        const int dj = datum_.sym(j);
        // 1 / (q_j - q_j^-1)
        const RatScalar inv = RatScalar(LaurentPoly(1), LaurentPoly::q_pow(dj) - LaurentPoly::q_pow(-dj));
        for (const auto& [k, c] : x.terms()) {
            TriExpr::Key moved{k.f + j, k.k, k.e};
            out.add(moved, c.times_q_pow(-datum_.form(k.k, aj)));
            RootVec prefix{};
            for (std::size_t p = 0; p < k.e.size(); ++p) {
                if (k.e[p] == j) {
                    PlainWord rest = k.e.substr(0, p) + k.e.substr(p + 1);
                    const int pa = datum_.form(aj, prefix);
                    RatScalar base = c * inv;
                    out.add({k.f, k.k + aj, rest}, base.times_q_pow(-pa));
                    out.add({k.f, k.k - aj, rest}, -base.times_q_pow(pa));
                }
                ++prefix[k.e[p] - 1];
            }
        }
        return out;
    }

    // vec(x E_i) from vec(x).
    ShuffleVec append_letter(const ShuffleVec& x, char i) const {
        ShuffleVec out;
        for (const auto& [u, a] : x.coeffs()) {
            // Insert i at position p; letters after p come from x and follow the y-letter.
            int tail = 0;
            for (const char c : u)
                tail += letter_form(i, c);
            for (std::size_t p = 0; p <= u.size(); ++p) {
                if (p > 0)
                    tail -= letter_form(i, u[p - 1]);
                PlainWord w = u.substr(0, p) + i + u.substr(p);
                out.add(w, a.times_q_pow(-tail));
            }
        }
        return out;
    }

    // All interleavings of u (first factor) and w (second factor), collecting
    // q-exponents: each (w-letter before u-letter) pair contributes -<w_l, u_l>.
    void interleave(const PlainWord& u, const PlainWord& w,
                    std::unordered_map<PlainWord, std::vector<std::pair<int, long>>>& buf) const {
        PlainWord cur;
        cur.reserve(u.size() + w.size());
        auto rec = [&](auto&& self, std::size_t i, std::size_t j, RootVec placed_w, int e) -> void {
            if (i == u.size() && j == w.size()) {
                auto& v = buf[cur];
                for (auto& [ex, n] : v)
                    if (ex == e) {
                        ++n;
                        return;
                    }
                v.emplace_back(e, 1);
                return;
            }
            if (i < u.size()) {
                cur.push_back(u[i]);
                self(self, i + 1, j, placed_w, e - form_root_letter(placed_w, u[i]));
                cur.pop_back();
            }
            if (j < w.size()) {
                cur.push_back(w[j]);
                RootVec pw = placed_w;
                ++pw[w[j] - 1];
                self(self, i, j + 1, pw, e);
                cur.pop_back();
            }
        };
        rec(rec, 0, 0, RootVec{}, 0);
    }

    CartanDatum datum_;
    mutable std::shared_mutex memo_mutex_;
    mutable std::unordered_map<PlainWord, ShuffleVec> word_memo_;
};

} // namespace qflag
