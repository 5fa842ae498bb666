#pragma once

/**
 * @file rootdata.hpp
 * @brief Cartan data, the invariant form, Weyl group words and convex orders.
 *
 * Supported types: A1..A4, B2 and D4 (rank <= 4). Conventions:
 *  - a_ij = 2 (a_i, a_j) / (a_i, a_i); short roots have (a, a) = 2.
 *  - B2: a_1 short, a_2 long.
 *  - D4: node 2 is the trivalent node.
 *  - Indices in the public API are 1-based, as in printed words.
 */

#include "scalars.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qflag {

constexpr int kMaxRank = 4;

class NotReduced : public std::invalid_argument {
public:
    explicit NotReduced(const std::string& what) : std::invalid_argument(what) {}
};

/// Integer coordinates in the simple-root basis.
struct RootVec {
    std::array<int, kMaxRank> c{};

    int& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    int operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    friend RootVec operator+(RootVec a, const RootVec& b) {
        for (int i = 0; i < kMaxRank; ++i)
            a[i] += b[i];
        return a;
    }
    friend RootVec operator-(RootVec a, const RootVec& b) {
        for (int i = 0; i < kMaxRank; ++i)
            a[i] -= b[i];
        return a;
    }
    friend RootVec operator*(int k, RootVec a) {
        for (auto& x : a.c)
            x *= k;
        return a;
    }
    RootVec operator-() const { return -1 * *this; }
    friend auto operator<=>(const RootVec&, const RootVec&) = default;

    int height() const {
        int h = 0;
        for (int x : c)
            h += x;
        return h;
    }
    bool is_zero() const { return *this == RootVec{}; }
    bool is_nonneg() const {
        return std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
    }
    bool is_positive() const { return is_nonneg() && !is_zero(); }
};

/// Integer coordinates in the fundamental-weight basis.
struct WeightVec {
    std::array<int, kMaxRank> c{};

    int& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    int operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    friend WeightVec operator+(WeightVec a, const WeightVec& b) {
        for (int i = 0; i < kMaxRank; ++i)
            a[i] += b[i];
        return a;
    }
    friend WeightVec operator-(WeightVec a, const WeightVec& b) {
        for (int i = 0; i < kMaxRank; ++i)
            a[i] -= b[i];
        return a;
    }
    friend auto operator<=>(const WeightVec&, const WeightVec&) = default;
};

/// A word in the simple reflections, 1-based.
using Word = std::vector<int>;

inline std::string format_word(const Word& w) {
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k)
            s += ",";
        s += std::to_string(w[k]);
    }
    return s;
}

class CartanDatum {
public:
    static CartanDatum from_label(const std::string& label) {
        if (label.size() != 2)
            throw std::invalid_argument("unsupported Cartan type: " + label);
        const char t = label[0];
        const int n = label[1] - '0';
        CartanDatum d;
        d.label_ = label;
        d.rank_ = n;
        if (t == 'A' && n >= 1 && n <= 4) {
            for (int i = 0; i < n; ++i) {
                d.sym_[i] = 1;
                d.cartan_[i][i] = 2;
                if (i + 1 < n)
                    d.cartan_[i][i + 1] = d.cartan_[i + 1][i] = -1;
            }
        } else if (t == 'B' && n == 2) {
            d.sym_ = {1, 2, 0, 0};
            d.cartan_[0] = {2, -2, 0, 0};
            d.cartan_[1] = {-1, 2, 0, 0};
        } else if (t == 'D' && n == 4) {
            d.sym_ = {1, 1, 1, 1};
            for (int i = 0; i < 4; ++i)
                d.cartan_[i][i] = 2;
            for (int j : {0, 2, 3})
                d.cartan_[1][j] = d.cartan_[j][1] = -1;
        } else {
            throw std::invalid_argument("unsupported Cartan type: " + label);
        }
        d.build_roots();
        return d;
    }

    const std::string& label() const { return label_; }
    int rank() const { return rank_; }
    bool simply_laced() const { return label_[0] != 'B'; }
    /// a_ij for 1-based i, j.
    int cartan(int i, int j) const { return cartan_[i - 1][j - 1]; }
    /// d_i = (a_i, a_i) / 2
    int sym(int i) const { return sym_[i - 1]; }
    int form_entry(int i, int j) const { return sym_[i - 1] * cartan_[i - 1][j - 1]; }

    RootVec simple_root(int i) const {
        check_index(i);
        RootVec r;
        r[i - 1] = 1;
        return r;
    }
    WeightVec fundamental_weight(int i) const {
        check_index(i);
        WeightVec w;
        w[i - 1] = 1;
        return w;
    }

    /// <x, y> on the root lattice.
    int form(const RootVec& x, const RootVec& y) const {
        int s = 0;
        for (int i = 0; i < rank_; ++i)
            for (int j = 0; j < rank_; ++j)
                s += x[i] * y[j] * sym_[i] * cartan_[i][j];
        return s;
    }
    /// <lambda, mu> for a weight and a root-lattice element: <w_i, a_j> = delta_ij d_j.
    int form(const WeightVec& x, const RootVec& y) const {
        int s = 0;
        for (int i = 0; i < rank_; ++i)
            s += x[i] * y[i] * sym_[i];
        return s;
    }
    int form(const RootVec& x, const WeightVec& y) const { return form(y, x); }
    /// <lambda, mu> for two weights (rational in general).
    Rational form(const WeightVec& x, const WeightVec& y) const {
        auto rx = weight_to_root_rational(x);
        Rational s = 0;
        for (int i = 0; i < rank_; ++i)
            s += rx[static_cast<std::size_t>(i)] * y[i] * sym_[i];
        return s;
    }

    int norm(const RootVec& x) const { return form(x, x); }

    WeightVec root_to_weight(const RootVec& r) const {
        WeightVec w;
        for (int i = 0; i < rank_; ++i)
            for (int j = 0; j < rank_; ++j)
                w[i] += cartan_[i][j] * r[j];
        return w;
    }

    std::vector<Rational> weight_to_root_rational(const WeightVec& w) const {
        // Solve sum_j a_ij r_j = w_i.
        const auto n = static_cast<std::size_t>(rank_);
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                m[i][j] = cartan_[i][j];
            m[i][n] = w[static_cast<int>(i)];
        }
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (m[piv][col] == 0)
                ++piv;
            std::swap(m[piv], m[col]);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col || m[r][col] == 0)
                    continue;
                Rational f = m[r][col] / m[col][col];
                for (std::size_t c = col; c <= n; ++c)
                    m[r][c] -= f * m[col][c];
            }
        }
        std::vector<Rational> out(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = m[i][n] / m[i][i];
        return out;
    }

    /// Converts a weight lying in the root lattice.
    RootVec weight_to_root(const WeightVec& w) const {
        auto r = weight_to_root_rational(w);
        RootVec out;
        for (int i = 0; i < rank_; ++i) {
            const auto& x = r[static_cast<std::size_t>(i)];
            if (x.get_den() != 1)
                throw std::invalid_argument("weight is not in the root lattice");
            out[i] = static_cast<int>(x.get_num().get_si());
        }
        return out;
    }

    RootVec reflect(int i, const RootVec& x) const {
        check_index(i);
        int coroot_pairing = 0;
        for (int j = 0; j < rank_; ++j)
            coroot_pairing += cartan_[i - 1][j] * x[j];
        RootVec r = x;
        r[i - 1] -= coroot_pairing;
        return r;
    }
    WeightVec reflect(int i, const WeightVec& x) const {
        check_index(i);
        WeightVec r = x;
        const int k = x[i - 1];
        for (int j = 0; j < rank_; ++j)
            r[j] -= k * cartan_[j][i - 1];
        return r;
    }

    /// s_{w_1} o ... o s_{w_k} applied to x (s_{w_k} first).
    template <class V>
    V weyl_act(const Word& w, V x) const {
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            x = reflect(*it, x);
        return x;
    }

    const std::vector<RootVec>& positive_roots() const { return roots_; }
    int num_positive_roots() const { return static_cast<int>(roots_.size()); }
    bool is_root(const RootVec& r) const {
        return std::find(roots_.begin(), roots_.end(), r) != roots_.end() ||
               std::find(roots_.begin(), roots_.end(), -r) != roots_.end();
    }

    /// Plain words of simple-root letters with the given weight, lexicographic.
    std::vector<Word> words_of_weight(const RootVec& mu) const;

    void check_index(int i) const {
        if (i < 1 || i > rank_)
            throw std::out_of_range("simple root index " + std::to_string(i) + " out of range for " + label_);
    }

    friend bool operator==(const CartanDatum& a, const CartanDatum& b) { return a.label_ == b.label_; }

private:
    void build_roots() {
        std::set<RootVec> seen;
        std::vector<RootVec> frontier;
        for (int i = 1; i <= rank_; ++i) {
            seen.insert(simple_root(i));
            frontier.push_back(simple_root(i));
        }
        while (!frontier.empty()) {
            RootVec r = frontier.back();
            frontier.pop_back();
            for (int i = 1; i <= rank_; ++i) {
                RootVec s = reflect(i, r);
                if (s.is_positive() && seen.insert(s).second)
                    frontier.push_back(s);
            }
        }
        roots_.assign(seen.begin(), seen.end());
        std::stable_sort(roots_.begin(), roots_.end(),
                         [](const RootVec& a, const RootVec& b) { return a.height() < b.height(); });
    }

    std::string label_;
    int rank_ = 0;
    std::array<int, kMaxRank> sym_{};
    std::array<std::array<int, kMaxRank>, kMaxRank> cartan_{};
    std::vector<RootVec> roots_;
};

inline std::vector<Word> CartanDatum::words_of_weight(const RootVec& mu) const {
    std::vector<Word> out;
    if (!mu.is_nonneg())
        return out;
    Word cur;
    RootVec rem = mu;
    const int len = mu.height();
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(cur.size()) == len) {
            out.push_back(cur);
            return;
        }
        for (int i = 1; i <= rank_; ++i) {
            if (rem[i - 1] == 0)
                continue;
            --rem[i - 1];
            cur.push_back(i);
            self(self);
            cur.pop_back();
            ++rem[i - 1];
        }
    };
    rec(rec);
    return out;
}

/// A reduced word together with its convex root sequence.
class ReducedWord {
public:
    ReducedWord() = default;
    ReducedWord(const CartanDatum& datum, Word word) : word_(std::move(word)) {
        betas_.reserve(word_.size());
        Word prefix;
        for (int i : word_) {
            datum.check_index(i);
            RootVec b = datum.weyl_act(prefix, datum.simple_root(i));
            if (!b.is_positive())
                throw NotReduced("word " + format_word(word_) + " is not reduced");
            if (std::find(betas_.begin(), betas_.end(), b) != betas_.end())
                throw NotReduced("word " + format_word(word_) + " is not reduced");
            betas_.push_back(b);
            prefix.push_back(i);
        }
    }

    const Word& word() const { return word_; }
    const std::vector<RootVec>& betas() const { return betas_; }
    int length() const { return static_cast<int>(word_.size()); }
    /// 1-based letter / root.
    int letter(int k) const { return word_[static_cast<std::size_t>(k - 1)]; }
    const RootVec& beta(int k) const { return betas_[static_cast<std::size_t>(k - 1)]; }
    Word prefix(int k) const { return Word(word_.begin(), word_.begin() + k); }

    friend bool operator==(const ReducedWord& a, const ReducedWord& b) { return a.word_ == b.word_; }
    friend bool operator<(const ReducedWord& a, const ReducedWord& b) { return a.word_ < b.word_; }

private:
    Word word_;
    std::vector<RootVec> betas_;
};

inline std::vector<RootVec> beta_sequence(const CartanDatum& datum, const Word& w) {
    return ReducedWord(datum, w).betas();
}

/// Positive roots sent to negative roots by w^-1; identifies w.
inline std::set<RootVec> inversion_set(const CartanDatum& datum, const Word& w) {
    std::set<RootVec> inv;
    Word rev(w.rbegin(), w.rend());
    for (const auto& r : datum.positive_roots())
        if (!datum.weyl_act(rev, r).is_positive())
            inv.insert(r);
    return inv;
}

inline bool same_weyl_element(const CartanDatum& datum, const Word& a, const Word& b) {
    return inversion_set(datum, a) == inversion_set(datum, b);
}

inline bool is_reduced(const CartanDatum& datum, const Word& w) {
    try {
        ReducedWord rw(datum, w);
        return true;
    } catch (const NotReduced&) {
        return false;
    }
}

/// Lexicographically smallest reduced word of the longest element.
inline ReducedWord longest_word(const CartanDatum& datum) {
    Word w;
    const int n = datum.num_positive_roots();
    while (static_cast<int>(w.size()) < n) {
        bool extended = false;
        for (int i = 1; i <= datum.rank(); ++i) {
            if (datum.weyl_act(w, datum.simple_root(i)).is_positive()) {
                w.push_back(i);
                extended = true;
                break;
            }
        }
        if (!extended)
            throw std::logic_error("longest_word: no extension found");
    }
    return ReducedWord(datum, w);
}

/// i* with w0(a_i) = -a_{i*}.
inline int dual_vertex(const CartanDatum& datum, int i) {
    const auto w0 = longest_word(datum);
    RootVec img = datum.weyl_act(w0.word(), datum.simple_root(i));
    for (int j = 1; j <= datum.rank(); ++j)
        if (img == -datum.simple_root(j))
            return j;
    throw std::logic_error("dual_vertex: image is not a negative simple root");
}

/// All reduced words of the longest element (small ranks only).
inline std::vector<Word> all_longest_words(const CartanDatum& datum) {
    std::vector<Word> out;
    const int n = datum.num_positive_roots();
    Word cur;
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(cur.size()) == n) {
            out.push_back(cur);
            return;
        }
        for (int i = 1; i <= datum.rank(); ++i) {
            RootVec b = datum.weyl_act(cur, datum.simple_root(i));
            if (!b.is_positive())
                continue;
            cur.push_back(i);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

inline std::string format_root(const RootVec& r, int rank) {
    std::string s = "[";
    for (int i = 0; i < rank; ++i) {
        if (i)
            s += ",";
        s += std::to_string(r[i]);
    }
    return s + "]";
}

} // namespace qflag
