#pragma once

// JSON forms of the library types. Field names follow the types, in
// camelCase; words are letter arrays, letter pairs two-element arrays.

#include <nlohmann/json.hpp>

#include <string>

#include "parryword/factor_index.hpp"
#include "parryword/ls_graph.hpp"
#include "parryword/parry.hpp"
#include "parryword/substitution.hpp"
#include "parryword/ubeta.hpp"

namespace parryword {

using json = nlohmann::json;

inline void to_json(json& j, const LetterPair& v) { j = json::array({v.first, v.second}); }

inline void from_json(const json& j, LetterPair& v) {
    if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::Parse, "letter pair must be [a, b]");
    v = LetterPair(j[0].get<Letter>(), j[1].get<Letter>());
}

inline void to_json(json& j, const ParryExpansion& exp) {
    j = {{"preperiod", exp.preperiod()}, {"period", exp.period()}};
}

/// Accepts the text form or {preperiod, period}.
inline ParryExpansion expansion_from_json(const json& j) {
    if (j.is_string()) return parse_expansion(j.get<std::string>());
    if (!j.is_object() || !j.contains("preperiod"))
        throw Error(ErrorCode::Parse, "expansion must be a string or {preperiod, period}");
    return validate(j.at("preperiod").get<Digits>(), j.value("period", Digits{}));
}

inline void to_json(json& j, const DerivedParams& d) {
    auto table = [](const std::map<Letter, std::uint32_t>& t) {
        json out = json::object();
        for (const auto& [k, v] : t) out[std::to_string(k)] = v;
        return out;
    };
    j = {{"simple", d.simple}, {"t", d.t}, {"zTable", table(d.z_table)}, {"yTable", table(d.y_table)},
         {"ell0", d.ell0}, {"zStar", d.z_star}, {"inS", d.in_s}};
    if (d.k0_infinite())
        j["k0"] = "inf";
    else
        j["k0"] = d.k0;
}

inline void to_json(json& j, const Substitution& sub) {
    j = {{"alphabetSize", sub.alphabet_size()}, {"images", sub.images()}};
}

inline Substitution substitution_from_json(const json& j) {
    if (j.is_string()) return parse_substitution(j.get<std::string>());
    const auto images = j.at("images").get<std::vector<Word>>();
    if (j.contains("alphabetSize") && j.at("alphabetSize").get<std::size_t>() != images.size())
        throw Error(ErrorCode::InvalidSubstitution, "alphabetSize does not match the number of images");
    return Substitution(images);
}

inline void to_json(json& j, const BranchSpec& b) {
    j = {{"kind", b.kind == BranchKind::PeriodicPoint ? "periodic" : "equation"},
         {"power", b.power},
         {"extensions", b.extensions},
         {"cycle", b.cycle_vertices},
         {"confirmed", b.confirmed}};
    if (b.kind == BranchKind::PeriodicPoint)
        j["seed"] = b.seed;
    else
        j["prefix"] = b.prefix;
}

inline void to_json(json& j, const MaximalRecord& r) {
    j = {{"factor", r.factor},   {"depth", r.depth},     {"pair", r.pair},         {"family", r.family},
         {"generator", r.generator}, {"start", r.start}, {"claimed", r.claimed}, {"checked", r.checked},
         {"confirmed", r.confirmed}, {"lcpFallback", r.lcp_fallback}};
}

inline void to_json(json& j, const SpecialFactor& s) {
    j = {{"factor", to_string(s.factor)}, {"extensions", s.extensions}};
}

inline void to_json(json& j, const GLGraph& g) {
    j = json::array();
    for (const LetterPair& v : g.vertices) {
        const GLEdge& e = g.edge(v);
        j.push_back({{"vertex", v}, {"target", e.target}, {"label", e.label}});
    }
}

inline void to_json(json& j, const ConnectionReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back({{"n", row.n}, {"delta", row.delta}, {"specialSum", row.special_sum}});
    j = {{"ok", r.ok()}, {"rows", rows}, {"violations", r.violations}};
}

inline void to_json(json& j, const AffinePrediction& a) {
    j = {{"affine", a.affine}};
    if (a.affine) {
        j["slope"] = a.slope;
        j["complexity"] = a.complexity;
    }
}

inline void to_json(json& j, const Classification& c) {
    j = {{"class", c.to_string()}};
    if (c.kind == WordClass::ArnouxRauzy) j["order"] = c.order;
}

inline void to_json(json& j, const InventoryReport& r) {
    j = {{"ok", r.ok()}, {"checked", r.checked}, {"uncovered", r.uncovered}};
}

} // namespace parryword
