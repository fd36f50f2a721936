#pragma once

// The parryword command line: one subcommand per analysis, every one with a
// JSON mode. run() is separate from main so tests can drive it in-process.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "parryword/battery.hpp"
#include "parryword/factor_index.hpp"
#include "parryword/json_io.hpp"
#include "parryword/ls_graph.hpp"
#include "parryword/parry.hpp"
#include "parryword/substitution.hpp"
#include "parryword/ubeta.hpp"

namespace parryword::cli {

struct CommandConfig {
    std::string command;
    std::string expansion;
    std::string substitution;
    std::string file;
    std::size_t max_n = 20;
    std::size_t depth = 0;
    std::size_t budget = std::size_t{1} << 22;
    double tolerance = 1e-12;
    std::size_t count = 20;
    Letter seed = 0;
    bool beta_integers = false;
    std::string format = "json";
    std::string config_file;
};

/// Raised for well-formed but inconsistent arguments; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct Source {
    std::optional<ParryExpansion> exp;
    std::optional<Substitution> sub;
    /// Canonical substitution of the expansion, or the given substitution.
    const Substitution& substitution() const { return *sub; }
};

/// Exactly one of -e, -s, -f. A file holds expansion or substitution text,
/// or their JSON forms; rules contain '>', so the two texts cannot collide.
inline Source load_source(const CommandConfig& cfg, bool allow_substitution) {
    const int given = !cfg.expansion.empty() + !cfg.substitution.empty() + !cfg.file.empty();
    if (given != 1) throw UsageError("give exactly one of --expansion, --substitution, --file");
    Source src;
    std::string text = cfg.expansion;
    std::string rules = cfg.substitution;
    if (!cfg.file.empty()) {
        const std::string body(trim(read_file(cfg.file)));
        if (!body.empty() && (body.front() == '{' || body.front() == '"')) {
            const json j = json::parse(body);
            if (j.is_object() && j.contains("images"))
                src.sub = substitution_from_json(j);
            else
                src.exp = expansion_from_json(j);
        } else if (body.find('>') != std::string::npos) {
            rules = body;
        } else {
            text = body;
        }
    }
    if (!text.empty()) src.exp = parse_expansion(text);
    if (!rules.empty()) src.sub = parse_substitution(rules);
    if (src.exp)
        src.sub = canonical_substitution(*src.exp);
    else if (!allow_substitution)
        throw UsageError(cfg.command + " needs an expansion");
    return src;
}

inline LanguageIndex index_for(const Source& src, const CommandConfig& cfg, std::size_t max_n) {
    return stabilize(src.substitution(), cfg.seed, max_n, {cfg.budget, 0});
}

inline std::string real_text(Real x) {
    std::ostringstream out;
    out << std::setprecision(std::numeric_limits<Real>::digits10) << x;
    return out.str();
}

inline void require_format(const CommandConfig& cfg, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (cfg.format == f) return;
    std::string list;
    for (const char* f : allowed) list += (list.empty() ? "" : ", ") + std::string(f);
    throw UsageError(cfg.command + " supports --format " + list);
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

inline json special_json(const std::vector<SpecialFactor>& list) {
    json out = json::array();
    for (const auto& s : list) out.push_back(s);
    return out;
}

// Each command writes its result and returns the exit code.

inline int cmd_validate(const CommandConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text"});
    std::optional<ParryExpansion> exp;
    try {
        exp = load_source(cfg, false).exp;
    } catch (const Error& e) {
        if (cfg.format == "text") {
            out << "invalid: " << e.what() << '\n';
        } else {
            json j = {{"valid", false}, {"code", to_string(e.code())}, {"message", e.what()}};
            if (e.code() == ErrorCode::ParryConditionViolated) j["shift"] = e.detail();
            emit(out, j);
        }
        return 1;
    }
    if (cfg.format == "text")
        out << "valid " << exp->to_string() << (exp->simple() ? " simple" : " non-simple") << '\n';
    else
        emit(out, {{"valid", true}, {"canonical", exp->to_string()}, {"expansion", *exp}, {"simple", exp->simple()}});
    return 0;
}

inline int cmd_beta(const CommandConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text"});
    const ParryExpansion exp = *load_source(cfg, false).exp;
    const Real beta = beta_value(exp, static_cast<Real>(cfg.tolerance));
    if (cfg.format == "text")
        out << real_text(beta) << '\n';
    else
        emit(out, {{"expansion", exp.to_string()}, {"beta", static_cast<double>(beta)}, {"betaText", real_text(beta)}});
    return 0;
}

inline int cmd_digits(const CommandConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "csv", "text"});
    const ParryExpansion exp = *load_source(cfg, false).exp;
    const auto digits = renyi_digits(beta_value(exp, static_cast<Real>(cfg.tolerance)), cfg.count);
    if (cfg.format == "csv") {
        out << "i,digit,unsafe\n";
        for (std::size_t i = 0; i < digits.size(); ++i)
            out << i + 1 << ',' << digits[i].digit << ',' << (digits[i].unsafe ? 1 : 0) << '\n';
    } else if (cfg.format == "text") {
        for (std::size_t i = 0; i < digits.size(); ++i)
            out << (i ? "," : "") << digits[i].digit << (digits[i].unsafe ? "?" : "");
        out << '\n';
    } else {
        json list = json::array();
        for (const auto& d : digits) list.push_back({{"digit", d.digit}, {"unsafe", d.unsafe}});
        emit(out, {{"expansion", exp.to_string()}, {"digits", list}});
    }
    return 0;
}

inline int cmd_params(const CommandConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text"});
    const ParryExpansion exp = *load_source(cfg, false).exp;
    const DerivedParams d = derive_params(exp);
    if (cfg.format == "json") {
        json j = d;
        j["expansion"] = exp;
        emit(out, j);
        return 0;
    }
    out << "m=" << exp.m() << " p=" << exp.p() << " ell0=" << d.ell0;
    if (!exp.simple()) {
        out << " t=" << d.t << " zStar=" << d.z_star << " k0=";
        if (d.k0_infinite())
            out << "inf";
        else
            out << d.k0;
        out << " inS=" << (d.in_s ? "true" : "false");
    }
    out << '\n';
    return 0;
}

inline int cmd_gaps(const CommandConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "csv", "text"});
    const ParryExpansion exp = *load_source(cfg, false).exp;
    const auto gaps = gap_lengths(exp, static_cast<Real>(cfg.tolerance));
    if (cfg.format == "json") {
        json list = json::array();
        for (Real g : gaps) list.push_back(static_cast<double>(g));
        emit(out, {{"expansion", exp.to_string()}, {"gaps", list}});
        return 0;
    }
    if (cfg.format == "csv") out << "letter,gap\n";
    for (std::size_t i = 0; i < gaps.size(); ++i)
        out << i << (cfg.format == "csv" ? "," : " ") << real_text(gaps[i]) << '\n';
    return 0;
}

inline int cmd_subst(const CommandConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text"});
    const Source src = load_source(cfg, true);
    const Substitution& sub = src.substitution();
    if (cfg.format == "text") {
        out << sub.to_string() << '\n';
        return 0;
    }
    json j = sub;
    j["text"] = sub.to_string();
    j["primitive"] = is_primitive(sub);
    j["injective"] = is_injective(sub);
    emit(out, j);
    return 0;
}

inline int cmd_word(const CommandConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text"});
    const Source src = load_source(cfg, !cfg.beta_integers);
    const Word w = cfg.beta_integers ? beta_integer_word(*src.exp, cfg.count)
                                     : fixed_point_prefix(src.substitution(), cfg.seed, cfg.count).letters;
    if (cfg.format == "text")
        out << to_string(w) << '\n';
    else
        emit(out, {{"length", w.size()}, {"letters", w}});
    return 0;
}

inline int cmd_complexity(const CommandConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "csv", "text"});
    const LanguageIndex index = index_for(load_source(cfg, true), cfg, cfg.max_n);
    if (cfg.format == "csv") {
        out << complexity_csv(index);
        return 0;
    }
    const ConnectionReport conn = verify_connection(index);
    if (cfg.format == "text") {
        for (const auto& row : conn.rows) out << "C(" << row.n << ") = " << complexity(index, row.n) << '\n';
        return 0;
    }
    json rows = json::array();
    for (const auto& row : conn.rows)
        rows.push_back({{"n", row.n}, {"C", complexity(index, row.n)}, {"dC", row.delta}, {"specialSum", row.special_sum}});
    emit(out, {{"prefixLength", index.prefix_length()}, {"rows", rows}, {"connectionOk", conn.ok()}});
    return 0;
}

inline int cmd_specials(const CommandConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text"});
    const LanguageIndex index = index_for(load_source(cfg, true), cfg, cfg.max_n);
    json lengths = json::array();
    for (std::size_t n = 0; n < index.max_n(); ++n) {
        const auto left = special_factors(index, n, Side::Left);
        const auto right = special_factors(index, n, Side::Right);
        if (cfg.format == "text") {
            for (const auto& s : left) out << "n=" << n << " LS [" << to_string(s.factor) << "]\n";
            for (const auto& s : right) out << "n=" << n << " RS [" << to_string(s.factor) << "]\n";
        }
        lengths.push_back({{"n", n}, {"left", special_json(left)}, {"right", special_json(right)}});
    }
    if (cfg.format == "json") emit(out, lengths);
    return 0;
}

inline int cmd_maximal(const CommandConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text"});
    const Source src = load_source(cfg, false);
    const LanguageIndex index = index_for(src, cfg, cfg.max_n);
    const auto records = maximal_factors(*src.exp, cfg.depth ? cfg.depth : 6, index);
    if (cfg.format == "json") {
        emit(out, records);
        return 0;
    }
    for (const auto& r : records)
        out << r.family << " k=" << r.depth << " " << r.pair.to_string() << " [" << to_string(r.factor) << "] "
            << (!r.checked ? "unchecked" : r.confirmed ? "confirmed" : "refuted") << '\n';
    return 0;
}

inline int cmd_glgraph(const CommandConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "dot", "text"});
    const Source src = load_source(cfg, true);
    const LanguageIndex index = index_for(src, cfg, std::max<std::size_t>(cfg.max_n, 2));
    const GLGraph graph = build_graph(src.substitution(), index);
    if (cfg.format == "dot") {
        out << to_dot(graph);
    } else if (cfg.format == "text") {
        for (const LetterPair& v : graph.vertices) {
            const GLEdge& e = graph.edge(v);
            out << v.to_string() << " -> " << e.target.to_string() << " ["
                << (e.label.empty() ? std::string("eps") : to_string(e.label)) << "]\n";
        }
    } else {
        json j = {{"edges", graph}};
        if (src.exp) {
            json closed = json::array();
            for (const auto& [v, e] : gl_closed_form(*src.exp))
                closed.push_back({{"vertex", v}, {"target", e.target}, {"label", e.label}});
            j["closedForm"] = closed;
        }
        emit(out, j);
    }
    return 0;
}

inline int cmd_branches(const CommandConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text"});
    const Source src = load_source(cfg, true);
    const std::size_t depth = cfg.depth ? cfg.depth : cfg.max_n;
    const LanguageIndex index = index_for(src, cfg, std::max(cfg.max_n, depth));
    const GLGraph graph = build_graph(src.substitution(), index);
    const BranchAnalysis analysis = infinite_branches(src.substitution(), index, graph, depth);
    if (cfg.format == "text") {
        for (const auto& b : analysis.branches) out << b.to_string() << '\n';
        return 0;
    }
    json j = {{"branches", analysis.branches}, {"depth", depth}};
    if (analysis.witness)
        j["assumptionB"] = *analysis.witness;
    else
        j["assumptionB"] = "unknown";
    if (src.exp) j["closedForm"] = branch_list(*src.exp);
    emit(out, j);
    return 0;
}

inline int cmd_affine(const CommandConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text"});
    const AffinePrediction pred = affine_predicate(*load_source(cfg, false).exp);
    if (cfg.format == "text")
        out << (pred.affine ? "affine " + pred.complexity : std::string("not affine")) << '\n';
    else
        emit(out, pred);
    return 0;
}

inline int cmd_classify(const CommandConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text"});
    const Classification c = classify_word(*load_source(cfg, false).exp);
    if (cfg.format == "text")
        out << c.to_string() << '\n';
    else
        emit(out, c);
    return 0;
}

inline int cmd_verify(const CommandConfig& cfg, std::ostream& out) {
    require_format(cfg, {"json", "text"});
    const std::vector<BatteryItem> items =
        cfg.config_file.empty() ? default_battery() : parse_battery(json::parse(read_file(cfg.config_file)));
    const BatteryReport report = verify_battery(items);
    if (cfg.format == "text")
        out << battery_text(report);
    else
        emit(out, report);
    return report.ok() ? 0 : 1;
}

} // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CommandConfig cfg;
    CLI::App app{"Special factors of Parry-number substitution words", "parryword"};
    app.require_subcommand(1);

    struct Spec {
        const char* name;
        const char* help;
        int (*fn)(const CommandConfig&, std::ostream&);
        bool substitution;
        bool index;
    };
    const std::vector<Spec> specs = {
        {"validate", "check the Parry condition and print the canonical form", detail::cmd_validate, false, false},
        {"beta", "the Parry number beta", detail::cmd_beta, false, false},
        {"digits", "Renyi digits of 1 recomputed from beta", detail::cmd_digits, false, false},
        {"params", "derived parameters (z, y tables, ell0, k0, membership in S)", detail::cmd_params, false, false},
        {"gaps", "gap lengths between consecutive beta-integers", detail::cmd_gaps, false, false},
        {"subst", "the canonical substitution", detail::cmd_subst, true, false},
        {"word", "prefix of the fixed point (or of the beta-integer gap word)", detail::cmd_word, true, false},
        {"complexity", "brute-force factor complexity", detail::cmd_complexity, true, true},
        {"specials", "left and right special factors per length", detail::cmd_specials, true, true},
        {"maximal", "max-f-image chains with oracle verdicts", detail::cmd_maximal, false, true},
        {"glgraph", "the left-special branch graph", detail::cmd_glgraph, true, true},
        {"branches", "infinite left special branches", detail::cmd_branches, true, true},
        {"affine", "affine complexity predicate", detail::cmd_affine, false, false},
        {"classify", "Sturmian / Arnoux-Rauzy / affine / general", detail::cmd_classify, false, false},
        {"verify", "closed forms against the oracle over a battery", detail::cmd_verify, false, false},
    };
    std::vector<CLI::App*> subs;
    for (const Spec& s : specs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        subs.push_back(sub);
        sub->add_option("--format", cfg.format, "json, csv, dot or text")->capture_default_str();
        if (std::string(s.name) == "verify") {
            sub->add_option("config", cfg.config_file, "JSON array of {expansion, maxN, depth, budget}");
            continue;
        }
        sub->add_option("-e,--expansion", cfg.expansion, "expansion text, e.g. \"2(0,1)\"");
        if (s.substitution) sub->add_option("-s,--substitution", cfg.substitution, "rules, e.g. \"0>001;1>2;2>01\"");
        sub->add_option("-f,--file", cfg.file, "file holding the expansion or substitution");
        sub->add_option("--tol", cfg.tolerance, "numeric tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--count", cfg.count, "number of digits or letters")->check(CLI::Range(1, 1 << 24));
        if (s.substitution) sub->add_option("--seed", cfg.seed, "fixed-point seed letter");
        if (std::string(s.name) == "word") sub->add_flag("--beta-integers", cfg.beta_integers, "gap word of beta-integers");
        if (s.index) {
            sub->add_option("--max-n", cfg.max_n, "longest factor length indexed")->check(CLI::Range(1, 4096));
            sub->add_option("--depth", cfg.depth, "chain depth or branch check depth")->check(CLI::Range(0, 4096));
            sub->add_option("--budget", cfg.budget, "prefix length limit")->check(CLI::Range(16, 1 << 30));
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        cfg.command = specs[i].name;
        try {
            return specs[i].fn(cfg, out);
        } catch (const UsageError& e) {
            err << "usage error: " << e.what() << "\n\n" << subs[i]->help();
            return 2;
        } catch (const Error& e) {
            err << "error: " << e.what() << '\n';
            return 1;
        } catch (const json::exception& e) {
            err << "error: bad JSON: " << e.what() << '\n';
            return 1;
        }
    }
    return 2;
}

} // namespace parryword::cli
