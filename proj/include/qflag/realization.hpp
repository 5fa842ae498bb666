#pragma once

/**
 * @file realization.hpp
 * @brief Element-level comparison of quantum flag minors across reduced words:
 *        which flag minors arise from prefixes of orientation-adapted words.
 */

#include "canonical.hpp"
#include "quiver.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qflag {

/// A flag minor: the prefix of `word` of length `k`, its weight and its normalized vector.
struct FlagMinorElement {
    Word word;
    int k = 0;
    RootVec weight;
    ShuffleVec element;
};

/// Owns PBW and canonical bases for the reduced words it is asked about.
class FlagMinorCatalog {
public:
    explicit FlagMinorCatalog(const QuantumAlgebra& alg) : alg_(alg) {}

    const CanonicalBasis& basis(const Word& w) {
        auto it = bases_.find(w);
        if (it == bases_.end()) {
            Entry e;
            e.pbw = std::make_unique<PBWBasis>(alg_, ReducedWord(alg_.datum(), w));
            e.cb = std::make_unique<CanonicalBasis>(*e.pbw);
            it = bases_.emplace(w, std::move(e)).first;
        }
        return *it->second.cb;
    }

    /// The flag minor B(n_{w_k})* of the prefix of length k >= 1 of the reduced word w of w_0.
    FlagMinorElement minor(const Word& w, int k) {
        const CanonicalBasis& cb = basis(w);
        const FlagMinor f = cb.flag_minor(k);
        return {w, k, f.weight, cb.canonical_vec(f.datum)};
    }

private:
    struct Entry {
        std::unique_ptr<PBWBasis> pbw;
        std::unique_ptr<CanonicalBasis> cb;
    };
    const QuantumAlgebra& alg_;
    std::map<Word, Entry> bases_;
};

/// Weight (Id - w) varpi_{i_k} of the flag minor of the prefix of length k, as a root vector.
inline RootVec flag_minor_weight(const CartanDatum& d, const Word& w, int k) {
    const Word prefix(w.begin(), w.begin() + k);
    const WeightVec om = d.fundamental_weight(w[static_cast<std::size_t>(k - 1)]);
    return d.weight_to_root(om - d.weyl_act(prefix, om));
}

/// Prefixes (as (adapted word, k)) of all orientation-adapted words whose flag minor has weight mu,
/// one representative word per distinct prefix.
inline std::vector<std::pair<Word, int>> adapted_prefixes_of_weight(const CartanDatum& d, const RootVec& mu) {
    std::map<Word, std::pair<Word, int>> reps;
    for (const auto& o : Orientation::all(d))
        for (const auto& w : all_adapted_words(d, o))
            for (int k = 1; k <= static_cast<int>(w.size()); ++k)
                if (flag_minor_weight(d, w, k) == mu)
                    reps.emplace(Word(w.begin(), w.begin() + k), std::make_pair(w, k));
    std::vector<std::pair<Word, int>> out;
    for (const auto& [prefix, rep] : reps)
        out.push_back(rep);
    return out;
}

struct RealizationResult {
    FlagMinorElement target;
    int candidates = 0;                        // adapted prefixes with the same weight
    std::optional<std::pair<Word, int>> match;  // first adapted prefix whose minor equals the target
};

/// Looks for an adapted-word prefix whose flag minor equals the flag minor of (w, k) as an element.
inline RealizationResult realize_flag_minor(FlagMinorCatalog& cat, const Word& w, int k) {
    const CartanDatum& d = cat.basis(w).pbw().datum();
    RealizationResult r{cat.minor(w, k), 0, std::nullopt};
    for (const auto& [aw, ak] : adapted_prefixes_of_weight(d, r.target.weight)) {
        ++r.candidates;
        if ((cat.minor(aw, ak).element - r.target.element).is_zero()) {
            r.match = std::make_pair(aw, ak);
            break;
        }
    }
    return r;
}

/// Extends a reduced word to a reduced word of w_0 by appending the smallest admissible letters.
inline Word complete_to_longest(const CartanDatum& d, Word w) {
    if (!is_reduced(d, w))
        throw NotReduced("word " + format_word(w) + " is not reduced");
    while (static_cast<int>(w.size()) < d.num_positive_roots()) {
        int i = 1;
        while (!d.weyl_act(w, d.simple_root(i)).is_positive())
            ++i;
        w.push_back(i);
    }
    return w;
}

} // namespace qflag
