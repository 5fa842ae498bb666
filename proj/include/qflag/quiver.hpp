#pragma once

/**
 * @file quiver.hpp
 * @brief Dynkin quiver orientations, adapted reduced words and the
 *        homological forms on indecomposable representations.
 *
 * Representations are handled through dimension data only. For a word w
 * adapted to an orientation, the indecomposable M_k has dimension vector
 * beta_k and the Auslander-Reiten translate is read off the word:
 * tau(M_k) = M_{k'} with k' < k maximal such that i_{k'} = i_k.
 * Hom dimensions follow from the Euler form by the recursion
 *   eps(M, N) = <dim M, dim N> + eps(N, tau M).
 */

#include "pbw.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qflag {

class NotASink : public std::invalid_argument {
public:
    explicit NotASink(const std::string& what) : std::invalid_argument(what) {}
};

class InvalidOrientation : public std::invalid_argument {
public:
    explicit InvalidOrientation(const std::string& what) : std::invalid_argument(what) {}
};

/// An orientation of a simply-laced Dynkin graph. Arrows are (tail, head) pairs.
class Orientation {
public:
    using Arrow = std::pair<int, int>;

    Orientation(const CartanDatum& d, std::vector<Arrow> arrows) : rank_(d.rank()), arrows_(std::move(arrows)) {
        if (!d.simply_laced())
            throw InvalidOrientation("quiver orientations need a simply-laced type, got " + d.label());
        std::set<std::pair<int, int>> edges;
        for (const auto& [a, b] : arrows_) {
            d.check_index(a);
            d.check_index(b);
            if (a == b || d.cartan(a, b) == 0)
                throw InvalidOrientation("no edge " + std::to_string(a) + "-" + std::to_string(b) + " in " +
                                         d.label());
            if (!edges.insert(std::minmax(a, b)).second)
                throw InvalidOrientation("edge " + std::to_string(a) + "-" + std::to_string(b) + " given twice");
        }
        for (int i = 1; i <= rank_; ++i)
            for (int j = i + 1; j <= rank_; ++j)
                if (d.cartan(i, j) != 0 && !edges.count({i, j}))
                    throw InvalidOrientation("edge " + std::to_string(i) + "-" + std::to_string(j) +
                                             " has no orientation");
        std::sort(arrows_.begin(), arrows_.end());
    }

    /// Parses "2>1,2>3".
    static Orientation parse(const CartanDatum& d, const std::string& text) {
        std::vector<Arrow> arrows;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto gt = item.find('>');
            if (gt == std::string::npos)
                throw InvalidOrientation("arrow '" + item + "' lacks '>'");
            try {
                std::size_t p1 = 0, p2 = 0;
                const std::string lhs = item.substr(0, gt), rhs = item.substr(gt + 1);
                const int a = std::stoi(lhs, &p1), b = std::stoi(rhs, &p2);
                if (p1 != lhs.size() || p2 != rhs.size())
                    throw std::invalid_argument(item);
                arrows.emplace_back(a, b);
            } catch (const std::logic_error&) {
                throw InvalidOrientation("malformed arrow '" + item + "'");
            }
        }
        return Orientation(d, std::move(arrows));
    }

    /// Every orientation of the Dynkin graph, in a fixed order.
    static std::vector<Orientation> all(const CartanDatum& d) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 1; i <= d.rank(); ++i)
            for (int j = i + 1; j <= d.rank(); ++j)
                if (d.cartan(i, j) != 0)
                    edges.emplace_back(i, j);
        std::vector<Orientation> out;
        for (unsigned mask = 0; mask < (1u << edges.size()); ++mask) {
            std::vector<Arrow> arrows;
            for (std::size_t e = 0; e < edges.size(); ++e) {
                const auto [i, j] = edges[e];
                if (mask >> e & 1u)
                    arrows.emplace_back(i, j);
                else
                    arrows.emplace_back(j, i);
            }
            out.emplace_back(d, std::move(arrows));
        }
        return out;
    }

    int rank() const { return rank_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }

    bool is_sink(int i) const {
        return std::none_of(arrows_.begin(), arrows_.end(), [i](const Arrow& a) { return a.first == i; });
    }

    std::vector<int> sinks() const {
        std::vector<int> out;
        for (int i = 1; i <= rank_; ++i)
            if (is_sink(i))
                out.push_back(i);
        return out;
    }

    /// Reverses every arrow at the sink i.
    Orientation reflect_at_sink(int i) const {
        if (i < 1 || i > rank_ || !is_sink(i))
            throw NotASink("vertex " + std::to_string(i) + " is not a sink of " + str());
        Orientation o = *this;
        for (auto& [a, b] : o.arrows_)
            if (b == i)
                std::swap(a, b);
        std::sort(o.arrows_.begin(), o.arrows_.end());
        return o;
    }

    /// <a, b> = sum_v a_v b_v - sum_{v -> w} a_v b_w.
    int euler_form(const RootVec& a, const RootVec& b) const {
        int s = 0;
        for (int v = 0; v < rank_; ++v)
            s += a[v] * b[v];
        for (const auto& [v, w] : arrows_)
            s -= a[v - 1] * b[w - 1];
        return s;
    }

    std::string str() const {
        std::string s;
        for (const auto& [a, b] : arrows_) {
            if (!s.empty())
                s += ",";
            s += std::to_string(a) + ">" + std::to_string(b);
        }
        return s;
    }

    friend bool operator==(const Orientation& a, const Orientation& b) { return a.arrows_ == b.arrows_; }
    friend bool operator<(const Orientation& a, const Orientation& b) { return a.arrows_ < b.arrows_; }

private:
    int rank_;
    std::vector<Arrow> arrows_;
};

/// True iff each letter of w is a sink of the orientation reached so far.
inline bool is_sink_sequence(Orientation o, const Word& w) {
    for (int i : w) {
        if (!o.is_sink(i))
            return false;
        o = o.reflect_at_sink(i);
    }
    return true;
}

inline bool is_adapted(const CartanDatum& d, const Orientation& o, const Word& w) {
    return static_cast<int>(w.size()) == d.num_positive_roots() && is_reduced(d, w) && is_sink_sequence(o, w);
}

namespace detail {

/// Depth-first extension of a reduced sink sequence to a word for w_0,
/// smallest sink first. Dead states are memoized by Weyl element and orientation.
inline std::optional<Word> extend_adapted(const CartanDatum& d, const Orientation& start, const Word& prefix) {
    if (!is_reduced(d, prefix) || !is_sink_sequence(start, prefix))
        return std::nullopt;
    Orientation o = start;
    for (int i : prefix)
        o = o.reflect_at_sink(i);
    const int n = d.num_positive_roots();
    std::set<std::pair<std::set<RootVec>, std::string>> dead;
    Word cur = prefix;
    auto rec = [&](auto&& self, const Orientation& here) -> bool {
        if (static_cast<int>(cur.size()) == n)
            return true;
        const auto key = std::make_pair(inversion_set(d, cur), here.str());
        if (dead.count(key))
            return false;
        for (int i : here.sinks()) {
            if (!d.weyl_act(cur, d.simple_root(i)).is_positive())
                continue;
            cur.push_back(i);
            if (self(self, here.reflect_at_sink(i)))
                return true;
            cur.pop_back();
        }
        dead.insert(key);
        return false;
    };
    if (!rec(rec, o))
        return std::nullopt;
    return cur;
}

} // namespace detail

/// The adapted reduced word of w_0 found by depth-first search, smallest sink first.
inline ReducedWord adapted_word(const CartanDatum& d, const Orientation& o) {
    auto w = detail::extend_adapted(d, o, {});
    if (!w)
        throw std::logic_error("no adapted word for orientation " + o.str());
    return ReducedWord(d, *w);
}

/// Every reduced word of w_0 adapted to o (its commutation class).
inline std::vector<Word> all_adapted_words(const CartanDatum& d, const Orientation& o) {
    std::vector<Word> out;
    const int n = d.num_positive_roots();
    Word cur;
    auto rec = [&](auto&& self, const Orientation& here) -> void {
        if (static_cast<int>(cur.size()) == n) {
            out.push_back(cur);
            return;
        }
        for (int i : here.sinks()) {
            if (!d.weyl_act(cur, d.simple_root(i)).is_positive())
                continue;
            cur.push_back(i);
            self(self, here.reflect_at_sink(i));
            cur.pop_back();
        }
    };
    rec(rec, o);
    return out;
}

/// AR translate on indecomposable indices: k' < k maximal with i_{k'} = i_k, or nullopt if M_k is projective.
inline std::optional<int> tau(const ReducedWord& w, int k) {
    if (k < 1 || k > w.length())
        throw std::out_of_range("indecomposable index " + std::to_string(k) + " out of range");
    for (int kp = k - 1; kp >= 1; --kp)
        if (w.letter(kp) == w.letter(k))
            return kp;
    return std::nullopt;
}

/// An orientation with an adapted word, and the Hom table of its indecomposables.
class Quiver {
public:
    Quiver(const CartanDatum& d, const Orientation& o) : Quiver(d, o, adapted_word(d, o)) {}

    Quiver(const CartanDatum& d, const Orientation& o, ReducedWord w)
        : datum_(d), orientation_(o), word_(std::move(w)) {
        if (!is_adapted(d, o, word_.word()))
            throw std::invalid_argument("word " + format_word(word_.word()) + " is not adapted to " + o.str());
        const int n = word_.length();
        hom_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
        for (int k = 1; k <= n; ++k)
            for (int l = 1; l <= n; ++l)
                fill_hom(k, l);
    }

    const CartanDatum& datum() const { return datum_; }
    const Orientation& orientation() const { return orientation_; }
    const ReducedWord& word() const { return word_; }
    int size() const { return word_.length(); }

    std::optional<int> tau_index(int k) const { return tau(word_, k); }
    bool is_projective(int k) const { return !tau_index(k).has_value(); }

    /// Dimension vector of iota^{-1}(m).
    RootVec dimension(const Datum& m) const {
        RootVec r{};
        for (int k = 1; k <= size(); ++k)
            r = r + m[static_cast<std::size_t>(k - 1)] * word_.beta(k);
        return r;
    }

    /// eps(M_k, M_l) = dim Hom(M_k, M_l).
    int indecomposable_hom(int k, int l) const {
        return hom_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(l - 1)];
    }

    /// eps(M, N) extended bilinearly.
    int epsilon(const Datum& m, const Datum& n) const {
        int s = 0;
        for (int k = 1; k <= size(); ++k) {
            const int mk = m[static_cast<std::size_t>(k - 1)];
            if (mk == 0)
                continue;
            for (int l = 1; l <= size(); ++l)
                s += mk * n[static_cast<std::size_t>(l - 1)] * hom_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(l - 1)];
        }
        return s;
    }

    /// zeta(M, N) = eps(N, tau M) = dim Ext^1(M, N).
    int zeta(const Datum& m, const Datum& n) const { return epsilon(n, tau_datum(m)); }

    int hom_dim(const Datum& m, const Datum& n) const { return epsilon(m, n); }
    int ext_dim(const Datum& m, const Datum& n) const { return zeta(m, n); }

    /// iota(tau M), projective summands dropped.
    Datum tau_datum(const Datum& m) const {
        Datum out(static_cast<std::size_t>(size()), 0);
        for (int k = 1; k <= size(); ++k)
            if (const auto t = tau_index(k))
                out[static_cast<std::size_t>(*t - 1)] += m[static_cast<std::size_t>(k - 1)];
        return out;
    }

    int d_form(const Datum& m, const Datum& n) const { return lusztig_d_form(datum_, word_, m, n); }

private:
    int& hom_at(int k, int l) { return hom_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(l - 1)]; }

    // eps(k, l) calls eps(l, tau k); the index sum strictly drops, so the recursion ends.
    int fill_hom(int k, int l) {
        int& slot = hom_at(k, l);
        if (slot >= 0)
            return slot;
        int v = orientation_.euler_form(word_.beta(k), word_.beta(l));
        if (const auto t = tau(word_, k))
            v += fill_hom(l, *t);
        if (v < 0)
            throw std::logic_error("negative Hom dimension for (" + std::to_string(k) + ", " + std::to_string(l) + ")");
        return hom_at(k, l) = v;
    }

    CartanDatum datum_;
    Orientation orientation_;
    ReducedWord word_;
    std::vector<std::vector<int>> hom_;
};

struct DatumPair {
    Datum m, n;
};

struct IdentityReport {
    int checked = 0;
    std::vector<DatumPair> failures;
    bool ok() const { return failures.empty(); }
};

/// d(iota M, iota N) = eps(N, M) - zeta(M, N) on all indecomposable pairs and
/// on `random_pairs` random decomposable pairs (fixed seed).
inline IdentityReport check_d_identity(const Quiver& Q, int random_pairs = 100, unsigned seed = 20260101u) {
    IdentityReport rep;
    const int n = Q.size();
    auto test = [&](const Datum& m, const Datum& p) {
        ++rep.checked;
        if (Q.d_form(m, p) != Q.epsilon(p, m) - Q.zeta(m, p))
            rep.failures.push_back({m, p});
    };
    for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l)
            test(unit_datum(n, k), unit_datum(n, l));
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(0, 2);
    for (int r = 0; r < random_pairs; ++r) {
        Datum a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
        for (auto& x : a)
            x = coef(rng);
        for (auto& x : b)
            x = coef(rng);
        test(a, b);
    }
    return rep;
}

/// The datum n_w attached to the prefix of length k: ones at the positions l <= k with i_l = i_k.
inline Datum flag_datum(const ReducedWord& w, int k) {
    Datum n(static_cast<std::size_t>(w.length()), 0);
    if (k == 0)
        return n;
    if (k < 0 || k > w.length())
        throw std::out_of_range("prefix length out of range");
    for (int l = 1; l <= k; ++l)
        if (w.letter(l) == w.letter(k))
            n[static_cast<std::size_t>(l - 1)] = 1;
    return n;
}

struct MonotoneReport {
    int values_checked = 0;
    int relations_checked = 0;
    std::vector<DatumPair> value_failures;     // (n_w, m) with d(n_w, m) != eps(m, M_k)
    std::vector<DatumPair> monotone_failures;  // (m, n) with m below n but d(n_w, m) > d(n_w, n)
    bool ok() const { return value_failures.empty() && monotone_failures.empty(); }
};

/// For the prefix of length k: d(n_w, m) = eps(m, M_k) on all data up to the height bound,
/// and d(n_w, .) is non-decreasing along the Ext order.
inline MonotoneReport check_monotone(const Quiver& Q, const PBWBasis& pbw, int k, int height) {
    if (pbw.word() != Q.word())
        throw std::invalid_argument("PBW basis and quiver use different words");
    MonotoneReport rep;
    const Datum nw = flag_datum(Q.word(), k);
    const Datum mk = unit_datum(Q.size(), k);
    for (const auto& mu : pbw.weights_up_to_height(height)) {
        for (const auto& n : pbw.data_of_weight(mu)) {
            ++rep.values_checked;
            const int dn = Q.d_form(nw, n);
            if (dn != Q.epsilon(n, mk))
                rep.value_failures.push_back({nw, n});
            for (const auto& m : pbw.ext_below(n)) {
                ++rep.relations_checked;
                if (Q.d_form(nw, m) > dn)
                    rep.monotone_failures.push_back({m, n});
            }
        }
    }
    return rep;
}

/// Prefix of the type A word attached to the row set I = {i_1 < ... < i_k} of an
/// (n+1) x (n+1) flag minor, with an adapted completion to a word for w_0.
struct TypeAFlagWord {
    Word prefix;
    ReducedWord completion;
    Orientation orientation;
};

/// Block j of the prefix is s_{i_j - 1} s_{i_j - 2} ... s_j. The completion is the first
/// orientation (in Orientation::all order) whose sink sequences start with the prefix.
inline TypeAFlagWord typeA_flag_word(const CartanDatum& d, const std::vector<int>& rows) {
    if (d.label()[0] != 'A')
        throw std::invalid_argument("typeA_flag_word needs type A, got " + d.label());
    std::vector<int> I = rows;
    std::sort(I.begin(), I.end());
    if (std::adjacent_find(I.begin(), I.end()) != I.end())
        throw std::invalid_argument("row set has repeated entries");
    for (int i : I)
        if (i < 1 || i > d.rank() + 1)
            throw std::out_of_range("row index " + std::to_string(i) + " out of range");
    if (I.empty() || static_cast<int>(I.size()) > d.rank())
        throw std::invalid_argument("row set size must lie in 1.." + std::to_string(d.rank()));
    Word prefix;
    for (std::size_t j = 1; j <= I.size(); ++j)
        for (int l = I[j - 1] - 1; l >= static_cast<int>(j); --l)
            prefix.push_back(l);
    for (const auto& o : Orientation::all(d))
        if (auto w = detail::extend_adapted(d, o, prefix))
            return {prefix, ReducedWord(d, *w), o};
    throw std::logic_error("no adapted completion of " + format_word(prefix));
}

} // namespace qflag
