#pragma once

/**
 * @file cli.hpp
 * @brief The qflag command-line interface as a library entry point.
 *
 * Exit codes: 0 success, 1 violations found, 2 usage error.
 */

#include "checks.hpp"
#include "multiplicativity.hpp"
#include "parse.hpp"
#include "quiver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qflag::cli {

using json = nlohmann::ordered_json;

inline constexpr int kOk = 0;
inline constexpr int kViolations = 1;
inline constexpr int kUsage = 2;

class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

struct Options {
    std::string type;
    std::string word;
    std::string orientation;
    std::string format = "json";
    std::string output;
    std::string expr;
    std::string basis = "pbw";
    std::string weight;
    std::string suite;
    std::string rows;
    int height = 0;
    bool exploratory = false;
};

inline std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::logic_error&) {
            throw UsageError("malformed " + what + ": '" + text + "'");
        }
        if (used != item.size())
            throw UsageError("malformed " + what + ": '" + text + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw UsageError("empty " + what);
    return out;
}

inline json root_json(const RootVec& r, int rank) {
    std::vector<int> v;
    for (int i = 0; i < rank; ++i)
        v.push_back(r[i]);
    return v;
}

/// {"[m]": "scalar", ...} in increasing rlex order of m.
inline json expansion_json(const DatumExpansion& e) {
    std::vector<Datum> keys;
    for (const auto& [m, c] : e)
        keys.push_back(m);
    std::sort(keys.begin(), keys.end(), rlex_less);
    json o = json::object();
    for (const auto& m : keys)
        o[format_datum(m)] = e.at(m).str();
    return o;
}

/// Writes `doc` as JSON, or its `table` array as CSV.
inline void emit(const json& doc, const std::string& table, const Options& opt, std::ostream& out) {
    std::ostringstream buf;
    if (opt.format == "csv") {
        const json& rows = doc.at(table);
        std::vector<std::string> cols;
        for (const auto& r : rows)
            for (const auto& [k, v] : r.items())
                if (std::find(cols.begin(), cols.end(), k) == cols.end())
                    cols.push_back(k);
        auto cell = [](const json& v) {
            std::string s = v.is_string() ? v.get<std::string>() : v.dump();
            if (s.find_first_of(",\"\n") != std::string::npos) {
                std::string q = "\"";
                for (char c : s)
                    q += c == '"' ? std::string("\"\"") : std::string(1, c);
                return q + "\"";
            }
            return s;
        };
        for (std::size_t i = 0; i < cols.size(); ++i)
            buf << (i ? "," : "") << cols[i];
        buf << "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < cols.size(); ++i)
                buf << (i ? "," : "") << (r.contains(cols[i]) ? cell(r[cols[i]]) : "");
            buf << "\n";
        }
    } else {
        buf << doc.dump(2) << "\n";
    }
    if (opt.output.empty()) {
        out << buf.str();
    } else {
        std::ofstream f(opt.output, std::ios::binary);
        if (!f)
            throw UsageError("cannot write " + opt.output);
        f << buf.str();
    }
}

/// Shared state of one invocation: type, algebra and the chosen word or orientation.
class Context {
public:
    explicit Context(const Options& opt) : opt_(opt), datum_(load_type(opt.type)), alg_(datum_) {
        if (!opt.word.empty() && !opt.orientation.empty())
            throw UsageError("give either --word or --orientation, not both");
        if (!opt.orientation.empty())
            orientation_ = Orientation::parse(datum_, opt.orientation);
        if (opt.height < 0)
            throw UsageError("--height must be positive");
    }

    const CartanDatum& datum() const { return datum_; }
    const QuantumAlgebra& algebra() const { return alg_; }
    const std::optional<Orientation>& orientation() const { return orientation_; }
    int rank() const { return datum_.rank(); }

    int height() const {
        if (opt_.height > 0)
            return opt_.height;
        return datum_.rank() <= 2 ? 5 : datum_.rank() == 3 ? 4 : 3;
    }

    /// The word given by --word, the adapted word of --orientation, or the smallest reduced word.
    ReducedWord word() const {
        if (!opt_.word.empty())
            return ReducedWord(datum_, parse_int_list(opt_.word, "word"));
        if (orientation_)
            return adapted_word(datum_, *orientation_);
        return longest_word(datum_);
    }

    ReducedWord longest() const {
        ReducedWord w = word();
        if (w.length() != datum_.num_positive_roots())
            throw UsageError("word " + format_word(w.word()) + " is not a reduced word of the longest element");
        return w;
    }

    /// Orientations selected by --orientation, or inferred from --word, or all of them.
    std::vector<Orientation> orientations() const {
        if (orientation_)
            return {*orientation_};
        std::vector<Orientation> all = Orientation::all(datum_);
        if (opt_.word.empty())
            return all;
        const Word w = longest().word();
        for (const auto& o : all)
            if (is_adapted(datum_, o, w))
                return {o};
        throw UsageError("word " + format_word(w) + " is not adapted to any orientation");
    }

    json header(const std::string& command) const {
        return {{"schema", 1}, {"command", command}, {"type", datum_.label()}};
    }

private:
    static CartanDatum load_type(const std::string& label) {
        try {
            return CartanDatum::from_label(label);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }

    const Options& opt_;
    CartanDatum datum_;
    QuantumAlgebra alg_;
    std::optional<Orientation> orientation_;
};

inline int cmd_rootdata(const Options& opt, std::ostream& out) {
    Context ctx(opt);
    const CartanDatum& d = ctx.datum();
    const ReducedWord w = ctx.longest();
    json doc = ctx.header("rootdata");
    json cartan = json::array();
    for (int i = 1; i <= d.rank(); ++i) {
        json row = json::array();
        for (int j = 1; j <= d.rank(); ++j)
            row.push_back(d.cartan(i, j));
        cartan.push_back(row);
    }
    doc["cartan"] = cartan;
    doc["rank"] = d.rank();
    doc["word"] = w.word();
    json roots = json::array();
    for (int k = 1; k <= w.length(); ++k)
        roots.push_back({{"k", k}, {"letter", w.letter(k)}, {"beta", root_json(w.beta(k), d.rank())}});
    doc["betas"] = roots;
    json dm = json::array();
    for (int k = 1; k <= w.length(); ++k) {
        json row = json::array();
        for (int l = 1; l <= w.length(); ++l)
            row.push_back(lusztig_d_form(d, w, unit_datum(w.length(), k), unit_datum(w.length(), l)));
        dm.push_back(row);
    }
    doc["d_matrix"] = dm;
    emit(doc, "betas", opt, out);
    return kOk;
}

inline int cmd_pbw_coords(const Options& opt, std::ostream& out) {
    Context ctx(opt);
    if (opt.expr.empty())
        throw UsageError("pbw coords needs --expr");
    const ReducedWord w = ctx.longest();
    const UPlusExpr x = parse_expr(opt.expr, ctx.rank());
    PBWBasis pbw(ctx.algebra(), w);
    CanonicalBasis cb(pbw);
    std::map<RootVec, UPlusExpr> parts;
    for (const auto& [word, c] : x.terms())
        parts[word.weight()].add(word, c);
    json terms = json::array();
    for (const auto& [mu, part] : parts) {
        const ShuffleVec v = ctx.algebra().vec(part);
        DatumExpansion e;
        if (opt.basis == "pbw")
            e = pbw.pbw_coordinates(v, mu);
        else if (opt.basis == "dual")
            e = pbw.dual_pbw_coordinates(v, mu);
        else if (opt.basis == "canonical")
            e = cb.expand_dual_canonical(v);
        else
            throw UsageError("unknown basis '" + opt.basis + "' (pbw, dual, canonical)");
        for (const auto& [m, c] : e)
            terms.push_back({{"weight", root_json(mu, ctx.rank())}, {"datum", m}, {"coeff", c.str()}});
    }
    json doc = ctx.header("pbw coords");
    doc["word"] = w.word();
    doc["expr"] = x.str();
    doc["basis"] = opt.basis;
    doc["terms"] = terms;
    emit(doc, "terms", opt, out);
    return kOk;
}

inline int cmd_basis(const Options& opt, std::ostream& out) {
    Context ctx(opt);
    const ReducedWord w = ctx.longest();
    PBWBasis pbw(ctx.algebra(), w);
    CanonicalBasis cb(pbw);
    std::vector<RootVec> weights;
    if (!opt.weight.empty()) {
        const auto v = parse_int_list(opt.weight, "weight");
        if (static_cast<int>(v.size()) != ctx.rank())
            throw UsageError("--weight needs " + std::to_string(ctx.rank()) + " entries");
        RootVec mu{};
        for (int i = 0; i < ctx.rank(); ++i) {
            if (v[static_cast<std::size_t>(i)] < 0)
                throw UsageError("--weight entries must be non-negative");
            mu[i] = v[static_cast<std::size_t>(i)];
        }
        weights.push_back(mu);
    } else {
        weights = pbw.weights_up_to_height(ctx.height());
    }
    json elements = json::array();
    for (const auto& mu : weights)
        for (const auto& n : pbw.data_of_weight(mu))
            elements.push_back({{"weight", root_json(mu, ctx.rank())},
                                {"datum", n},
                                {"dual_pbw", expansion_json(cb.dual_canonical(n))}});
    json doc = ctx.header("basis");
    doc["word"] = w.word();
    doc["elements"] = elements;
    emit(doc, "elements", opt, out);
    return kOk;
}

inline int cmd_flag_minors(const Options& opt, std::ostream& out) {
    Context ctx(opt);
    const ReducedWord w = ctx.longest();
    PBWBasis pbw(ctx.algebra(), w);
    CanonicalBasis cb(pbw);
    json minors = json::array();
    for (int k = 1; k <= w.length(); ++k) {
        const FlagMinor f = cb.flag_minor(k);
        minors.push_back({{"k", k},
                          {"prefix", w.prefix(k)},
                          {"letter", w.letter(k)},
                          {"datum", f.datum},
                          {"weight", root_json(f.weight, ctx.rank())},
                          {"dual_pbw", expansion_json(cb.dual_canonical(f.datum))}});
    }
    json doc = ctx.header("flag-minors");
    doc["word"] = w.word();
    doc["minors"] = minors;
    emit(doc, "minors", opt, out);
    return kOk;
}

inline int cmd_typeA_rows(const Options& opt, std::ostream& out) {
    Context ctx(opt);
    const auto rows = parse_int_list(opt.rows, "row set");
    const TypeAFlagWord t = typeA_flag_word(ctx.datum(), rows);
    json doc = ctx.header("flag-minors");
    doc["rows"] = rows;
    doc["prefix"] = t.prefix;
    doc["word"] = t.completion.word();
    doc["orientation"] = t.orientation.str();
    json minors = json::array();
    if (!t.prefix.empty()) {
        PBWBasis pbw(ctx.algebra(), t.completion);
        CanonicalBasis cb(pbw);
        const int k = static_cast<int>(t.prefix.size());
        const FlagMinor f = cb.flag_minor(k);
        minors.push_back({{"k", k},
                          {"prefix", t.prefix},
                          {"letter", t.completion.letter(k)},
                          {"datum", f.datum},
                          {"weight", root_json(f.weight, ctx.rank())},
                          {"dual_pbw", expansion_json(cb.dual_canonical(f.datum))}});
    }
    doc["minors"] = minors;
    emit(doc, "minors", opt, out);
    return kOk;
}

inline int cmd_quiver(const Options& opt, std::ostream& out) {
    Context ctx(opt);
    if (!ctx.orientation())
        throw UsageError("quiver needs --orientation");
    const Orientation& o = *ctx.orientation();
    const Quiver Q(ctx.datum(), o);
    const int N = Q.size();
    json table = json::array();
    json hom = json::array(), ext = json::array();
    for (int k = 1; k <= N; ++k) {
        const auto t = Q.tau_index(k);
        table.push_back({{"k", k},
                         {"letter", Q.word().letter(k)},
                         {"dim", root_json(Q.word().beta(k), ctx.rank())},
                         {"tau", t ? json(*t) : json(nullptr)},
                         {"projective", !t.has_value()}});
        json hr = json::array(), er = json::array();
        for (int l = 1; l <= N; ++l) {
            hr.push_back(Q.hom_dim(unit_datum(N, k), unit_datum(N, l)));
            er.push_back(Q.ext_dim(unit_datum(N, k), unit_datum(N, l)));
        }
        hom.push_back(hr);
        ext.push_back(er);
    }
    json doc = ctx.header("quiver");
    doc["orientation"] = o.str();
    doc["sinks"] = o.sinks();
    doc["adapted_word"] = Q.word().word();
    doc["ar_table"] = table;
    doc["hom"] = hom;
    doc["ext"] = ext;
    emit(doc, "ar_table", opt, out);
    return kOk;
}

inline json report_json(const Context& ctx, const CheckReport& r, const std::string& scope) {
    json doc = ctx.header("check");
    doc["suite"] = r.suite;
    doc["scope"] = scope;
    doc["checked"] = r.checked;
    doc["ok"] = r.ok();
    doc["failures"] = r.failures;
    doc["findings"] = r.findings;
    if (!r.notes.empty())
        doc["notes"] = r.notes;
    return doc;
}

inline int cmd_check(const Options& opt, std::ostream& out) {
    Context ctx(opt);
    const std::string& s = opt.suite;
    const int H = ctx.height();
    CheckReport rep{s};
    std::string scope;
    auto with_word = [&](auto&& fn) {
        const ReducedWord w = ctx.longest();
        PBWBasis pbw(ctx.algebra(), w);
        CanonicalBasis cb(pbw);
        scope = "word " + format_word(w.word()) + ", height " + std::to_string(H);
        rep = fn(pbw, cb);
    };
    auto per_orientation = [&](auto&& fn) {
        rep = CheckReport{s};
        std::vector<std::string> names;
        for (const auto& o : ctx.orientations()) {
            const Quiver Q(ctx.datum(), o);
            rep.merge(fn(Q));
            names.push_back(o.str());
        }
        scope = "orientations";
        for (const auto& n : names)
            scope += " [" + n + "]";
    };

    if (s == "serre") {
        rep = check_serre(ctx.algebra());
        scope = "type";
    } else if (s == "pairing") {
        with_word([&](const PBWBasis& pbw, const CanonicalBasis&) {
            CheckReport r = check_pairing_axioms(ctx.algebra());
            r.merge(check_biorthogonality(pbw, H));
            return r;
        });
    } else if (s == "prop21") {
        with_word([&](const PBWBasis&, const CanonicalBasis& cb) { return check_prop21(cb); });
    } else if (s == "cor22") {
        with_word([&](const PBWBasis&, const CanonicalBasis& cb) { return check_cor22(cb, H, true); });
    } else if (s == "prop31") {
        with_word([&](const PBWBasis&, const CanonicalBasis& cb) { return check_prop31(cb, H); });
    } else if (s == "prop32") {
        with_word([&](const PBWBasis&, const CanonicalBasis& cb) { return check_prop32(cb, H); });
    } else if (s == "prop41") {
        per_orientation([&](const Quiver& Q) { return check_prop41(Q); });
    } else if (s == "prop42") {
        per_orientation([&](const Quiver& Q) {
            PBWBasis pbw(ctx.algebra(), Q.word());
            return check_prop42(Q, pbw, H);
        });
    } else if (s == "thm51") {
        per_orientation([&](const Quiver& Q) {
            PBWBasis pbw(ctx.algebra(), Q.word());
            CanonicalBasis cb(pbw);
            return check_thm51(cb, H);
        });
    } else if (s == "remark43") {
        if (ctx.datum().label() == "D4") {
            rep = check_remark43(ctx.algebra());
            scope = "flag minor of 2,1,3,2 against all adapted words";
        } else if (ctx.datum().label()[0] == 'A') {
            rep = check_claim43(ctx.algebra());
            scope = "all flag minors of all reduced words against adapted words";
        } else {
            throw UsageError("remark43 needs type D4 (non-realization) or type A (realization)");
        }
    } else {
        throw UsageError("unknown suite '" + s + "'");
    }
    json doc = report_json(ctx, rep, scope);
    json summary = json::array();
    summary.push_back({{"suite", rep.suite}, {"checked", rep.checked}, {"ok", rep.ok()},
                       {"failures", rep.failures.size()}, {"findings", rep.findings.size()}});
    doc["summary"] = summary;
    emit(doc, "summary", opt, out);
    return rep.ok() ? kOk : kViolations;
}

inline json pair_json(const PairReport& p) {
    json j = {{"m", p.m}, {"mp", p.mp}, {"m_adapted", p.m_adapted}, {"mp_adapted", p.mp_adapted}};
    j["q_commute"] = p.q_commute ? json(*p.q_commute) : json(nullptr);
    if (p.multiplicative)
        j["multiplicative"] = {{"power", p.multiplicative->power}, {"datum", p.multiplicative->datum}};
    else
        j["multiplicative"] = nullptr;
    return j;
}

inline int cmd_mult_scan(const Options& opt, std::ostream& out) {
    Context ctx(opt);
    const ReducedWord w = ctx.longest();
    bool adapted = false;
    for (const auto& o : Orientation::all(ctx.datum()))
        if (ctx.datum().simply_laced() && is_adapted(ctx.datum(), o, w.word()))
            adapted = true;
    PBWBasis pbw(ctx.algebra(), w);
    CanonicalBasis cb(pbw);
    const auto rep = verify_theorem_51(cb, ctx.height(), opt.exploratory);
    json doc = ctx.header("mult-scan");
    doc["word"] = w.word();
    doc["adapted"] = adapted;
    doc["height"] = ctx.height();
    doc["pairs_scanned"] = rep.pairs_scanned;
    doc["q_commuting"] = rep.q_commuting;
    doc["multiplicative"] = rep.multiplicative;
    doc["exploratory_non_multiplicative"] = rep.exploratory_non_multiplicative;
    json viol = json::array();
    for (const auto& v : rep.violations) {
        json j = pair_json(v.pair);
        j["reason"] = v.reason;
        viol.push_back(j);
    }
    json pairs = json::array();
    for (const auto& p : rep.q_commuting_pairs)
        pairs.push_back(pair_json(p));
    // On words that are not adapted the theorem makes no claim: report, do not fail.
    doc[adapted ? "violations" : "observations"] = viol;
    if (!adapted)
        doc["violations"] = json::array();
    doc["pairs"] = pairs;
    emit(doc, "pairs", opt, out);
    return adapted && !rep.ok() ? kViolations : kOk;
}

/// Runs the tool on argv; output goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Exact computations with PBW, dual canonical bases and quantum flag minors of U_q(n)", "qflag"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sc, bool word, bool orientation) {
        sc->add_option("--type", opt.type, "Cartan type: A1..A4, B2, D4")->required();
        if (word)
            sc->add_option("--word", opt.word, "reduced word, comma separated, e.g. 1,2,1");
        if (orientation)
            sc->add_option("--orientation", opt.orientation, "quiver orientation, e.g. \"2>1,2>3\"");
        sc->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv"}));
        sc->add_option("--output", opt.output, "write to this file instead of standard output");
    };

    auto* rootdata = app.add_subcommand("rootdata", "convex root order and d-form of a reduced word");
    common(rootdata, true, true);

    auto* pbw = app.add_subcommand("pbw", "PBW basis computations");
    pbw->require_subcommand(1);
    auto* coords = pbw->add_subcommand("coords", "coordinates of an element in a PBW-type basis");
    common(coords, true, true);
    coords->add_option("--expr", opt.expr, "element, e.g. \"E1*E2 - q^-1*E2*E1\"")->required();
    coords->add_option("--basis", opt.basis, "pbw, dual or canonical")
        ->check(CLI::IsMember({"pbw", "dual", "canonical"}));

    auto* basis = app.add_subcommand("basis", "dual canonical basis in dual PBW coordinates");
    common(basis, true, true);
    basis->add_option("--weight", opt.weight, "weight in simple-root coordinates, e.g. 1,1");
    basis->add_option("--height", opt.height, "all weights up to this height");

    auto* minors = app.add_subcommand("flag-minors", "quantum flag minors of the prefixes of a reduced word");
    common(minors, true, true);
    minors->add_option("--rows", opt.rows, "type A row set I (e.g. 2,3): the minor with rows I and columns 1..|I|");

    auto* quiver = app.add_subcommand("quiver", "adapted word, AR translate and Hom/Ext table");
    common(quiver, false, true);

    auto* check = app.add_subcommand("check", "run a verification suite");
    common(check, true, true);
    check->add_option("suite", opt.suite, "serre, pairing, prop21, cor22, prop31, prop32, prop41, prop42, thm51, remark43")
        ->required()
        ->check(CLI::IsMember(
            {"serre", "pairing", "prop21", "cor22", "prop31", "prop32", "prop41", "prop42", "thm51", "remark43"}));
    check->add_option("--height", opt.height, "height bound");

    auto* scan = app.add_subcommand("mult-scan", "q-commutation and multiplicativity scan");
    common(scan, true, true);
    scan->add_option("--height", opt.height, "height bound");
    scan->add_flag("--exploratory", opt.exploratory, "also scan pairs with no factor in the adapted algebra");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (rootdata->parsed())
            return cmd_rootdata(opt, out);
        if (coords->parsed())
            return cmd_pbw_coords(opt, out);
        if (basis->parsed())
            return cmd_basis(opt, out);
        if (minors->parsed())
            return opt.rows.empty() ? cmd_flag_minors(opt, out) : cmd_typeA_rows(opt, out);
        if (quiver->parsed())
            return cmd_quiver(opt, out);
        if (check->parsed())
            return cmd_check(opt, out);
        if (scan->parsed())
            return cmd_mult_scan(opt, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    err << "error: no command\n";
    return kUsage;
}

} // namespace qflag::cli
