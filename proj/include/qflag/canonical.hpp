#pragma once

/**
 * @file canonical.hpp
 * @brief The dual canonical basis B* of U_q(n) in a PBW parametrization,
 *        the lattice L*, quantum flag minors and Demazure flags.
 *
 * An element x of weight mu is invariant under the twisted involution
 *   psi(x) = s_mu^{-1} sigma eta (x),  s_mu = (-1)^{tr mu} q^{-<mu,mu>/2} q_mu^{-1},
 * exactly when every pairing (x, F_w) with a plain F-word is bar-invariant.
 * B(n)* is the unique psi-invariant element in E(n)* + q L*.
 */

#include "pbw.hpp"

#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace qflag {

class NotUnitriangular : public std::logic_error {
public:
    explicit NotUnitriangular(const std::string& what) : std::logic_error(what) {}
};

class NoSolution : public std::logic_error {
public:
    explicit NoSolution(const std::string& what) : std::logic_error(what) {}
};

/// s_mu with sigma eta (b) = s_mu b for every b in B* of weight mu.
inline RatScalar eigen_scalar(const CartanDatum& d, const RootVec& mu) {
    int qmu = 0;
    for (int i = 1; i <= d.rank(); ++i)
        qmu += mu[i - 1] * d.sym(i);
    RatScalar s = RatScalar::q_pow(-d.norm(mu) / 2 - qmu);
    return mu.height() % 2 ? -s : s;
}

/// True iff m is supported on the first k coordinates.
inline bool demazure_flag(const Datum& m, int k) {
    for (std::size_t j = static_cast<std::size_t>(std::max(k, 0)); j < m.size(); ++j)
        if (m[j] != 0)
            return false;
    return true;
}

struct FlagMinor {
    Datum datum;
    RootVec weight;
};

class CanonicalBasis {
public:
    /// One weight space: data in increasing rlex order and the change of basis
    /// B(n)* = sum_m coeff[m][n] E(m)*.
    struct WeightSpace {
        RootVec weight;
        std::vector<Datum> data;
        std::map<Datum, std::size_t> index;
        std::vector<std::vector<RatScalar>> bar;    // psi(E(n)*) = sum_m bar[m][n] E(m)*
        std::vector<std::vector<RatScalar>> coeff;  // unitriangular, off-diagonal in qZ[q]
        std::vector<ShuffleVec> dual_pbw;           // normalized vectors of E(n)*
        std::vector<ShuffleVec> canonical;          // normalized vectors of B(n)*
    };

    explicit CanonicalBasis(const PBWBasis& pbw) : pbw_(pbw) {}

    const PBWBasis& pbw() const { return pbw_; }
    const QuantumAlgebra& algebra() const { return pbw_.algebra(); }

    const WeightSpace& weight_space(const RootVec& mu) const {
        std::shared_ptr<Slot> slot;
        {
            std::lock_guard lock(mutex_);
            auto& p = spaces_[mu];
            if (!p)
                p = std::make_shared<Slot>();
            slot = p;
        }
        std::call_once(slot->once, [&] { slot->space = build(mu); });
        return slot->space;
    }

    /// Matrix of psi on the dual PBW basis of the weight space.
    const std::vector<std::vector<RatScalar>>& bar_matrix(const RootVec& mu) const { return weight_space(mu).bar; }

    /// Dual PBW expansion of B(n)*.
    DatumExpansion dual_canonical(const Datum& n) const {
        const auto& ws = weight_space(pbw_.weight(n));
        const std::size_t j = ws.index.at(n);
        DatumExpansion out;
        for (std::size_t i = 0; i <= j; ++i)
            if (!ws.coeff[i][j].is_zero())
                out.emplace(ws.data[i], ws.coeff[i][j]);
        return out;
    }

    /// Dual PBW expansions of all B(n)* of weight mu, in rlex order of n.
    std::vector<DatumExpansion> dual_canonical_basis(const RootVec& mu) const {
        std::vector<DatumExpansion> out;
        for (const auto& n : weight_space(mu).data)
            out.push_back(dual_canonical(n));
        return out;
    }

    const ShuffleVec& canonical_vec(const Datum& n) const {
        const auto& ws = weight_space(pbw_.weight(n));
        return ws.canonical[ws.index.at(n)];
    }

    const ShuffleVec& dual_pbw_vec(const Datum& n) const {
        const auto& ws = weight_space(pbw_.weight(n));
        return ws.dual_pbw[ws.index.at(n)];
    }

    /// Coordinates of x in the dual PBW basis.
    DatumExpansion dual_pbw_coordinates(const ShuffleVec& x) const {
        if (x.is_zero())
            return {};
        return pbw_.dual_pbw_coordinates(x, weight_of(x.coeffs().begin()->first));
    }

    /// Coordinates of x in B*.
    DatumExpansion expand_dual_canonical(const ShuffleVec& x) const {
        if (x.is_zero())
            return {};
        const RootVec mu = weight_of(x.coeffs().begin()->first);
        const auto& ws = weight_space(mu);
        const std::size_t d = ws.data.size();
        std::vector<RatScalar> a(d);
        for (std::size_t i = 0; i < d; ++i)
            a[i] = pbw_.pair_with_F(x, ws.data[i]);
        // Back substitution in the upper unitriangular system coeff * b = a.
        std::vector<RatScalar> b(d);
        for (std::size_t j = d; j-- > 0;) {
            RatScalar s = a[j];
            for (std::size_t k = j + 1; k < d; ++k)
                if (!b[k].is_zero() && !ws.coeff[j][k].is_zero())
                    s -= ws.coeff[j][k] * b[k];
            b[j] = s;
        }
        DatumExpansion out;
        for (std::size_t i = 0; i < d; ++i)
            if (!b[i].is_zero())
                out.emplace(ws.data[i], b[i]);
        return out;
    }
    DatumExpansion expand_dual_canonical(const UPlusExpr& x) const { return expand_dual_canonical(algebra().vec(x)); }

    /// x in L*: all dual PBW coordinates in Z[q].
    bool in_lattice(const ShuffleVec& x) const {
        for (const auto& [m, c] : dual_pbw_coordinates(x))
            if (!is_in_Zq(c))
                return false;
        return true;
    }
    /// x in q L*: all dual PBW coordinates in qZ[q].
    bool in_q_lattice(const ShuffleVec& x) const {
        for (const auto& [m, c] : dual_pbw_coordinates(x))
            if (!is_in_qZq(c))
                return false;
        return true;
    }
    bool in_q_lattice(const UPlusExpr& x) const { return in_q_lattice(algebra().vec(x)); }
    bool congruent_mod_qL(const ShuffleVec& x, const ShuffleVec& y) const { return in_q_lattice(x - y); }

    /// Datum and weight of the flag minor attached to the prefix of length k.
    FlagMinor flag_minor(int k) const {
        const ReducedWord& w = pbw_.word();
        if (k < 1 || k > w.length())
            throw std::out_of_range("prefix length out of range");
        Datum n(static_cast<std::size_t>(w.length()), 0);
        for (int l = 1; l <= k; ++l)
            if (w.letter(l) == w.letter(k))
                n[static_cast<std::size_t>(l - 1)] = 1;
        FlagMinor f{n, pbw_.weight(n)};
        // (Id - w) varpi_{i_k} for w = s_{i_1} ... s_{i_k}
        const CartanDatum& d = pbw_.datum();
        const WeightVec om = d.fundamental_weight(w.letter(k));
        const WeightVec diff = om - d.weyl_act(w.prefix(k), om);
        if (d.root_to_weight(f.weight) != diff)
            throw std::logic_error("flag minor weight mismatch");
        return f;
    }

private:
    struct Slot {
        std::once_flag once;
        WeightSpace space;
    };

    WeightSpace build(const RootVec& mu) const {
        const QuantumAlgebra& alg = algebra();
        WeightSpace ws;
        ws.weight = mu;
        ws.data = pbw_.data_of_weight(mu);
        const std::size_t d = ws.data.size();
        for (std::size_t i = 0; i < d; ++i)
            ws.index.emplace(ws.data[i], i);
        for (const auto& n : ws.data)
            ws.dual_pbw.push_back(pbw_.dual_pbw_vec(n));

        // psi on normalized vectors: sigma eta followed by s_mu^{-1}.
        const RatScalar twist = eigen_scalar(pbw_.datum(), mu).inverse();
        ws.bar.assign(d, std::vector<RatScalar>(d));
        for (std::size_t j = 0; j < d; ++j) {
            const ShuffleVec img = twist * alg.sigma_eta(ws.dual_pbw[j]);
            for (std::size_t i = 0; i < d; ++i)
                ws.bar[i][j] = pbw_.pair_with_F(img, ws.data[i]);
        }
        for (std::size_t j = 0; j < d; ++j) {
            if (!ws.bar[j][j].is_one())
                throw NotUnitriangular("diagonal entry at " + format_datum(ws.data[j]) + " is " + ws.bar[j][j].str());
            for (std::size_t i = j + 1; i < d; ++i)
                if (!ws.bar[i][j].is_zero())
                    throw NotUnitriangular("entry below the diagonal at " + format_datum(ws.data[i]) + ", " +
                                           format_datum(ws.data[j]));
        }

        ws.coeff.assign(d, std::vector<RatScalar>(d));
        for (std::size_t n = 0; n < d; ++n) {
            ws.coeff[n][n] = RatScalar(1);
            for (std::size_t p = n; p-- > 0;) {
                // c_p - bar(c_p) = sum_{p < m <= n} r_pm bar(c_m)
                RatScalar rhs;
                for (std::size_t m = p + 1; m <= n; ++m)
                    if (!ws.coeff[m][n].is_zero() && !ws.bar[p][m].is_zero())
                        rhs += ws.bar[p][m] * bar(ws.coeff[m][n]);
                ws.coeff[p][n] = positive_part(rhs, ws.data[p], ws.data[n]);
            }
        }

        for (std::size_t n = 0; n < d; ++n) {
            ShuffleVec v;
            for (std::size_t m = 0; m <= n; ++m)
                if (!ws.coeff[m][n].is_zero())
                    v += ws.coeff[m][n] * ws.dual_pbw[m];
            ws.canonical.push_back(std::move(v));
        }
        return ws;
    }

    static RatScalar positive_part(const RatScalar& x, const Datum& p, const Datum& n) {
        if (x.is_zero())
            return x;
        if (!x.is_laurent())
            throw NoSolution("non-polynomial bar correction at " + format_datum(p) + " for " + format_datum(n));
        std::vector<LaurentPoly::Term> pos;
        for (const auto& [e, c] : x.num().terms()) {
            if (e == 0 || x.num().coeff(-e) != -c)
                throw NoSolution("bar correction not anti-invariant at " + format_datum(p) + " for " +
                                 format_datum(n));
            if (e > 0)
                pos.emplace_back(e, c);
        }
        return RatScalar(LaurentPoly::from_terms(std::move(pos)));
    }

    const PBWBasis& pbw_;
    mutable std::mutex mutex_;
    mutable std::map<RootVec, std::shared_ptr<Slot>> spaces_;
};

} // namespace qflag
