#pragma once

/**
 * @file scalars.hpp
 * @brief Exact arithmetic in Z[q, q^-1] and its fraction field Q(q).
 *
 * LaurentPoly stores its support as a sorted vector of (exponent, coefficient)
 * pairs with no zero coefficients. RatScalar is a reduced fraction of two
 * Laurent polynomials normalized so that the denominator is an ordinary
 * polynomial with positive constant term; after normalization equality is
 * structural.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qflag {

using Integer = mpz_class;
using Rational = mpq_class;

class PoleAtZero : public std::domain_error {
public:
    PoleAtZero() : std::domain_error("scalar has a pole at q = 0") {}
};

class LaurentPoly {
public:
    using Term = std::pair<int, Integer>;

    LaurentPoly() = default;
    LaurentPoly(long c) {
        if (c != 0)
            terms_.emplace_back(0, Integer(c));
    }
    LaurentPoly(const Integer& c) {
        if (c != 0)
            terms_.emplace_back(0, c);
    }

    static LaurentPoly monomial(Integer c, int e) {
        LaurentPoly p;
        if (c != 0)
            p.terms_.emplace_back(e, std::move(c));
        return p;
    }
    static LaurentPoly q_pow(int e) { return monomial(Integer(1), e); }

    /// Builds from arbitrary (exponent, coefficient) pairs; duplicates are summed.
    static LaurentPoly from_terms(std::vector<Term> terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
        LaurentPoly p;
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().first == t.first)
                p.terms_.back().second += t.second;
            else
                p.terms_.push_back(std::move(t));
            if (p.terms_.back().second == 0)
                p.terms_.pop_back();
        }
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
    }
    bool is_monomial() const { return terms_.size() == 1; }
    int min_exp() const { return terms_.front().first; }
    int max_exp() const { return terms_.back().first; }

    Integer coeff(int e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, int x) { return t.first < x; });
        if (it != terms_.end() && it->first == e)
            return it->second;
        return Integer(0);
    }

    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& t : r.terms_)
            t.second = -t.second;
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = add(*this, o, false); }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = add(*this, o, true); }
    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return add(a, b, false); }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return add(a, b, true); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero())
            return {};
        if (a.is_monomial())
            return b.scaled(a.terms_[0].second, a.terms_[0].first);
        if (b.is_monomial())
            return a.scaled(b.terms_[0].second, b.terms_[0].first);
        int lo = a.min_exp() + b.min_exp();
        int hi = a.max_exp() + b.max_exp();
        std::vector<Integer> dense(static_cast<std::size_t>(hi - lo + 1));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                mpz_addmul(dense[static_cast<std::size_t>(ea + eb - lo)].get_mpz_t(),
                           ca.get_mpz_t(), cb.get_mpz_t());
        LaurentPoly r;
        for (std::size_t i = 0; i < dense.size(); ++i)
            if (dense[i] != 0)
                r.terms_.emplace_back(lo + static_cast<int>(i), std::move(dense[i]));
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    /// c * q^e * this
    LaurentPoly scaled(const Integer& c, int e) const {
        if (c == 0)
            return {};
        LaurentPoly r = *this;
        for (auto& t : r.terms_) {
            t.first += e;
            t.second *= c;
        }
        return r;
    }
    LaurentPoly shifted(int e) const { return scaled(Integer(1), e); }

    /// q -> q^-1
    LaurentPoly bar() const {
        LaurentPoly r;
        r.terms_.reserve(terms_.size());
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
            r.terms_.emplace_back(-it->first, it->second);
        return r;
    }

    /// q -> q^k (k may be negative)
    LaurentPoly substitute_power(int k) const {
        std::vector<Term> t;
        for (const auto& [e, c] : terms_)
            t.emplace_back(e * k, c);
        return from_terms(std::move(t));
    }

    Integer content() const {
        Integer g = 0;
        for (const auto& t : terms_)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.second.get_mpz_t());
        return g;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ < b.terms_; }

    /// "q^-1 + 2 + q^3", ascending exponents.
    std::string str() const {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Integer mag = abs(c);
            if (first) {
                if (c < 0)
                    os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            if (e == 0) {
                os << mag.get_str();
                continue;
            }
            if (mag != 1)
                os << mag.get_str() << "*";
            os << "q";
            if (e != 1)
                os << "^" << e;
        }
        return os.str();
    }

private:
    static LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b, bool negate_b) {
        LaurentPoly r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto i = a.terms_.begin();
        auto j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
                r.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->first < i->first) {
                r.terms_.emplace_back(j->first, negate_b ? Integer(-j->second) : j->second);
                ++j;
            } else {
                Integer c = negate_b ? Integer(i->second - j->second) : Integer(i->second + j->second);
                if (c != 0)
                    r.terms_.emplace_back(i->first, std::move(c));
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

namespace detail {

// Dense integer polynomials (index = degree), used only for gcd and exact division.
using Dense = std::vector<Integer>;

inline void trim(Dense& p) {
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

inline Integer dense_content(const Dense& p) {
    Integer g = 0;
    for (const auto& c : p)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

inline Dense primitive(Dense p) {
    Integer g = dense_content(p);
    if (g > 1)
        for (auto& c : p)
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return p;
}

// Pseudo-remainder of a by b.
inline Dense pseudo_rem(Dense a, const Dense& b) {
    const std::size_t db = b.size() - 1;
    const Integer& lb = b.back();
    while (a.size() >= b.size()) {
        Integer la = a.back();
        std::size_t shift = a.size() - b.size();
        for (auto& c : a)
            c *= lb;
        for (std::size_t i = 0; i <= db; ++i)
            a[i + shift] -= la * b[i];
        trim(a);
    }
    return a;
}

inline Dense gcd(Dense a, Dense b) {
    trim(a);
    trim(b);
    if (a.size() < b.size())
        std::swap(a, b);
    if (b.empty())
        return primitive(std::move(a));
    a = primitive(std::move(a));
    b = primitive(std::move(b));
    while (!b.empty()) {
        if (b.size() == 1)
            return Dense{Integer(1)};
        Dense r = pseudo_rem(a, b);
        a = std::move(b);
        b = primitive(std::move(r));
    }
    if (a.back() < 0)
        for (auto& c : a)
            c = -c;
    return a;
}

// Exact division a / b over Z[q]; b must divide a.
inline Dense div_exact(Dense a, const Dense& b) {
    trim(a);
    if (a.empty())
        return {};
    Dense quot(a.size() - b.size() + 1);
    const Integer& lb = b.back();
    while (a.size() >= b.size() && !a.empty()) {
        std::size_t shift = a.size() - b.size();
        Integer c;
        mpz_divexact(c.get_mpz_t(), a.back().get_mpz_t(), lb.get_mpz_t());
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + shift] -= c * b[i];
        quot[shift] = c;
        trim(a);
    }
    return quot;
}

inline Dense to_dense(const LaurentPoly& p, int offset) {
    Dense d(static_cast<std::size_t>(p.max_exp() - offset + 1));
    for (const auto& [e, c] : p.terms())
        d[static_cast<std::size_t>(e - offset)] = c;
    return d;
}

inline LaurentPoly from_dense(const Dense& d, int offset) {
    std::vector<LaurentPoly::Term> t;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0)
            t.emplace_back(offset + static_cast<int>(i), d[i]);
    return LaurentPoly::from_terms(std::move(t));
}

} // namespace detail

/// Element of Q(q) as a reduced fraction num/den.
class RatScalar {
public:
    RatScalar() : den_(1) {}
    RatScalar(long c) : num_(c), den_(1) {}
    RatScalar(const Integer& c) : num_(c), den_(1) {}
    RatScalar(LaurentPoly p) : num_(std::move(p)), den_(1) {}
    RatScalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }
    RatScalar(const Rational& r) : num_(Integer(r.get_num())), den_(Integer(r.get_den())) {}

    static RatScalar q_pow(int e) { return RatScalar(LaurentPoly::q_pow(e)); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_laurent() const { return den_.is_one(); }

    RatScalar operator-() const {
        RatScalar r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend RatScalar operator+(const RatScalar& a, const RatScalar& b) {
        if (a.is_zero())
            return b;
        if (b.is_zero())
            return a;
        if (a.den_.is_one() && b.den_.is_one())
            return RatScalar(a.num_ + b.num_, Raw{});
        if (a.den_ == b.den_)
            return RatScalar(a.num_ + b.num_, a.den_);
        return RatScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatScalar operator-(const RatScalar& a, const RatScalar& b) { return a + (-b); }

    friend RatScalar operator*(const RatScalar& a, const RatScalar& b) {
        if (a.is_zero() || b.is_zero())
            return {};
        if (a.den_.is_one() && b.den_.is_one())
            return RatScalar(a.num_ * b.num_, Raw{});
        return RatScalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatScalar operator/(const RatScalar& a, const RatScalar& b) {
        if (b.is_zero())
            throw std::domain_error("division by zero scalar");
        return RatScalar(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatScalar& operator+=(const RatScalar& o) { return *this = *this + o; }
    RatScalar& operator-=(const RatScalar& o) { return *this = *this - o; }
    RatScalar& operator*=(const RatScalar& o) { return *this = *this * o; }
    RatScalar& operator/=(const RatScalar& o) { return *this = *this / o; }

    RatScalar inverse() const { return RatScalar(1) / *this; }

    /// Multiply by q^e; units keep the fraction reduced.
    RatScalar times_q_pow(int e) const {
        RatScalar r = *this;
        r.num_ = num_.shifted(e);
        return r;
    }

    friend bool operator==(const RatScalar& a, const RatScalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatScalar& a, const RatScalar& b) { return !(a == b); }
    friend bool operator<(const RatScalar& a, const RatScalar& b) {
        if (a.num_ != b.num_)
            return a.num_ < b.num_;
        return a.den_ < b.den_;
    }

    std::string str() const {
        if (den_.is_one())
            return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    struct Raw {};
    RatScalar(LaurentPoly num, Raw) : num_(std::move(num)), den_(1) {}

    void normalize() {
        if (den_.is_zero())
            throw std::domain_error("zero denominator");
        if (num_.is_zero()) {
            den_ = LaurentPoly(1);
            return;
        }
        // Pull q-power units into the numerator.
        int nshift = num_.min_exp();
        int dshift = den_.min_exp();
        detail::Dense n = detail::to_dense(num_, nshift);
        detail::Dense d = detail::to_dense(den_, dshift);
        int qexp = nshift - dshift;
        if (d.size() > 1 && n.size() > 1) {
            detail::Dense g = detail::gcd(n, d);
            if (g.size() > 1) {
                n = detail::div_exact(std::move(n), g);
                d = detail::div_exact(std::move(d), g);
            }
        }
        Integer cn = detail::dense_content(n);
        Integer cd = detail::dense_content(d);
        Integer g;
        mpz_gcd(g.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
        if (d.front() < 0)
            g = -g;
        if (g != 1) {
            for (auto& c : n)
                mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
            for (auto& c : d)
                mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        }
        num_ = detail::from_dense(n, qexp);
        den_ = detail::from_dense(d, 0);
    }

    LaurentPoly num_;
    LaurentPoly den_;
};

inline std::ostream& operator<<(std::ostream& os, const RatScalar& s) { return os << s.str(); }

/// q -> q^-1, renormalized.
inline RatScalar bar(const RatScalar& s) {
    if (s.is_laurent())
        return RatScalar(s.num().bar());
    return RatScalar(s.num().bar(), s.den().bar());
}

inline LaurentPoly bar(const LaurentPoly& p) { return p.bar(); }

/// [k]_{q_a} with q_a = q^(norm/2).
inline LaurentPoly quantum_integer(int k, int norm) {
    if (k <= 0)
        throw std::invalid_argument("quantum_integer: k must be positive");
    if (norm <= 0 || norm % 2 != 0)
        throw std::invalid_argument("quantum_integer: norm must be an even positive integer");
    const int step = norm / 2;
    std::vector<LaurentPoly::Term> t;
    for (int j = 0; j < k; ++j)
        t.emplace_back(step * (k - 1 - 2 * j), Integer(1));
    return LaurentPoly::from_terms(std::move(t));
}

/// [k]_{q_a}! (empty product = 1 for k = 0).
inline LaurentPoly quantum_factorial(int k, int norm) {
    if (k < 0)
        throw std::invalid_argument("quantum_factorial: k must be non-negative");
    LaurentPoly r(1);
    for (int j = 1; j <= k; ++j)
        r *= quantum_integer(j, norm);
    return r;
}

/// Value at q = 0 of a scalar without pole there.
inline Rational eval_at_zero(const RatScalar& s) {
    if (s.is_zero())
        return Rational(0);
    // den has a nonzero constant term by normalization.
    if (s.num().min_exp() < 0)
        throw PoleAtZero();
    Rational r(s.num().coeff(0), s.den().coeff(0));
    r.canonicalize();
    return r;
}

/// True iff s is a polynomial in q with integer coefficients and no constant term.
inline bool is_in_qZq(const RatScalar& s) {
    if (s.is_zero())
        return true;
    return s.is_laurent() && s.num().min_exp() >= 1;
}

/// True iff s lies in Z[q].
inline bool is_in_Zq(const RatScalar& s) {
    if (s.is_zero())
        return true;
    return s.is_laurent() && s.num().min_exp() >= 0;
}

/// If s = c * q^e with c = +-1, returns (c, e).
inline std::optional<std::pair<int, int>> as_signed_q_power(const RatScalar& s) {
    if (!s.is_laurent() || !s.num().is_monomial())
        return std::nullopt;
    const auto& [e, c] = s.num().terms()[0];
    if (c == 1)
        return std::make_pair(1, e);
    if (c == -1)
        return std::make_pair(-1, e);
    return std::nullopt;
}

} // namespace qflag
