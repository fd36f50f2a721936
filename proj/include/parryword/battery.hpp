#pragma once

// The closed-form-vs-oracle suite over a list of expansions. Each item
// builds one stabilized index and runs every applicable check against it;
// items are independent and run concurrently, reports come back sorted by
// expansion text.

#include <algorithm>
#include <future>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "parryword/factor_index.hpp"
#include "parryword/json_io.hpp"
#include "parryword/ls_graph.hpp"
#include "parryword/parry.hpp"
#include "parryword/sampling.hpp"
#include "parryword/substitution.hpp"
#include "parryword/ubeta.hpp"

namespace parryword {

struct BatteryItem {
    std::string expansion;
    std::size_t max_n = 40;
    std::size_t depth = 36;
    std::size_t budget = std::size_t{1} << 22;
    /// Non-affine expansions with no deviation below maxN are re-indexed up
    /// to this length before the affine check gives up.
    std::size_t affine_n = 101;
    /// Test hook: name of a closed form to perturb before comparing
    /// ("letterExtensions", "glClosedForm" or "branchList").
    std::string corrupt;
};

struct CheckResult {
    std::string check;
    bool pass = false;
    std::string detail;
    /// Factor-level differences, one line each.
    std::vector<std::string> diff;
};

struct ItemReport {
    std::string expansion;
    std::vector<CheckResult> checks;
    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    }
};

struct BatteryReport {
    std::vector<ItemReport> items;
    bool ok() const {
        return std::all_of(items.begin(), items.end(), [](const ItemReport& i) { return i.ok(); });
    }
};

inline std::vector<BatteryItem> parse_battery(const json& config) {
    if (!config.is_array()) throw Error(ErrorCode::Parse, "battery config must be a JSON array");
    std::vector<BatteryItem> out;
    for (const json& entry : config) {
        BatteryItem item;
        if (entry.is_string()) {
            item.expansion = entry.get<std::string>();
        } else {
            const json& e = entry.at("expansion");
            item.expansion = e.is_string() ? e.get<std::string>() : expansion_from_json(e).to_string();
            item.max_n = entry.value("maxN", item.max_n);
            item.depth = entry.value("depth", std::min(item.depth, item.max_n - 1));
            item.budget = entry.value("budget", item.budget);
            item.affine_n = entry.value("affineN", item.affine_n);
            item.corrupt = entry.value("corrupt", std::string());
        }
        out.push_back(std::move(item));
    }
    return out;
}

/// The named witnesses plus 25 seeded random non-simple expansions
/// (digits <= 3, m <= 3, p <= 3), without repeating a named one.
inline std::vector<BatteryItem> default_battery() {
    std::vector<BatteryItem> out;
    auto add = [&out](std::string text) {
        BatteryItem item;
        item.expansion = std::move(text);
        out.push_back(std::move(item));
    };
    for (const char* text : {"1,1", "1,1,1", "2(0,1)", "2,1(0,2)"}) add(text);
    out[3].max_n = 100;
    out[3].depth = 40;
    std::set<std::string> named;
    for (const auto& item : out) named.insert(parse_expansion(item.expansion).to_string());
    for (const auto& exp : random_non_simple(25, 61, 3, 3, 3))
        if (!named.count(exp.to_string())) add(exp.to_string());
    return out;
}

namespace detail {

inline std::string set_text(const LetterSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

inline CheckResult from_diff(std::string name, std::vector<std::string> diff, std::string detail = {}) {
    CheckResult r{std::move(name), diff.empty(), std::move(detail), std::move(diff)};
    if (r.detail.empty()) r.detail = r.pass ? "exact" : std::to_string(r.diff.size()) + " mismatches";
    return r;
}

inline CheckResult check_connection(const LanguageIndex& index) {
    const ConnectionReport report = verify_connection(index);
    std::vector<std::string> diff;
    for (std::size_t n : report.violations)
        diff.push_back("n=" + std::to_string(n) + " dC=" + std::to_string(report.rows[n].delta) +
                       " sum=" + std::to_string(report.rows[n].special_sum));
    return from_diff("connection", std::move(diff), "n < " + std::to_string(index.max_n()));
}

/// First 20 digits of renyi_digits(beta) against t_1 t_2 ..., unsafe ones skipped.
inline CheckResult check_renyi(const ParryExpansion& exp) {
    const auto digits = renyi_digits(beta_value(exp), 20);
    std::vector<std::string> diff;
    std::size_t safe = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i].unsafe) continue;
        ++safe;
        if (digits[i].digit != exp.t(i + 1))
            diff.push_back("digit " + std::to_string(i + 1) + ": got " + std::to_string(digits[i].digit) +
                           " want " + std::to_string(exp.t(i + 1)));
    }
    return from_diff("renyi", std::move(diff), std::to_string(safe) + " safe digits");
}

inline CheckResult check_simple_bounds(const ParryExpansion& exp, const LanguageIndex& index) {
    const SimpleCheckReport report = simple_parry_checks(exp, index);
    std::vector<std::string> diff;
    for (std::size_t n : report.bound_violations) diff.push_back("bound n=" + std::to_string(n));
    for (std::size_t n : report.affine_violations) diff.push_back("affine n=" + std::to_string(n));
    return from_diff("simpleBounds", std::move(diff), report.affine_condition ? "condition (iii) holds" : "");
}

inline CheckResult check_letter_extensions(const ParryExpansion& exp, const LanguageIndex& index, bool corrupt) {
    auto table = letter_extensions(exp);
    if (corrupt) {
        LetterSet& s = table.at(0);
        if (s.size() > 1)
            s.erase(s.begin());
        else
            s.push_back(static_cast<Letter>(exp.alphabet_size()));
    }
    std::vector<std::string> diff;
    for (const auto& [k, set] : table) {
        const LetterSet oracle = index.left_extensions(Word{k});
        if (set != oracle)
            diff.push_back("Lext(" + std::to_string(k) + "): closed " + set_text(set) + " oracle " + set_text(oracle));
    }
    return from_diff("letterExtensions", std::move(diff));
}

inline CheckResult check_gl(const ParryExpansion& exp, const GLGraph& graph, bool corrupt) {
    auto table = gl_closed_form(exp);
    if (corrupt && !table.empty()) table.begin()->second.label.push_back(0);
    std::vector<std::string> diff;
    for (const LetterPair& v : graph.vertices) {
        auto it = table.find(v);
        const GLEdge& e = graph.edge(v);
        if (it == table.end()) {
            diff.push_back(v.to_string() + ": missing from closed form");
        } else if (it->second.label != e.label || it->second.target != e.target) {
            diff.push_back(v.to_string() + ": closed [" + to_string(it->second.label) + "]->" +
                           it->second.target.to_string() + " oracle [" + to_string(e.label) + "]->" +
                           e.target.to_string());
        }
    }
    return from_diff("glClosedForm", std::move(diff), std::to_string(graph.vertices.size()) + " vertices");
}

inline CheckResult check_branches(const ParryExpansion& exp, const Substitution& sub, const LanguageIndex& index,
                                  const GLGraph& graph, std::size_t depth, bool corrupt) {
    std::vector<BranchSpec> closed = branch_list(exp);
    if (corrupt && !closed.empty()) closed.pop_back();
    const BranchAnalysis generic = infinite_branches(sub, index, graph, depth);
    std::set<std::string> a, b;
    for (const auto& s : closed) a.insert(s.to_string());
    for (const auto& s : generic.branches) b.insert(s.to_string());
    std::vector<std::string> diff;
    for (const auto& s : a)
        if (!b.count(s)) diff.push_back("closed only: " + s);
    for (const auto& s : b)
        if (!a.count(s)) diff.push_back("generic only: " + s);
    for (const auto& s : closed)
        if (!branch_verify(sub, s, index, depth)) diff.push_back("not left special to depth: " + s.to_string());
    return from_diff("branchList", std::move(diff), std::to_string(closed.size()) + " branches");
}

/// Confirmed records must be (a,b)-maximal in the index; claimed records the
/// index refutes are listed in the detail but do not fail the check.
inline CheckResult check_maximal(const ParryExpansion& exp, const LanguageIndex& index) {
    std::vector<std::string> diff;
    std::size_t confirmed = 0, refuted = 0;
    for (const MaximalRecord& r : maximal_factors(exp, 8, index)) {
        if (!r.checked) continue;
        if (r.confirmed) {
            ++confirmed;
            if (!is_ab_maximal(index, r.factor, r.pair.first, r.pair.second))
                diff.push_back(r.family + " k=" + std::to_string(r.depth) + " [" + to_string(r.factor) + "]");
        } else if (r.claimed) {
            ++refuted;
        }
    }
    return from_diff("maximal", std::move(diff),
                     std::to_string(confirmed) + " confirmed, " + std::to_string(refuted) + " claims refuted");
}

inline CheckResult check_inventory(const ParryExpansion& exp, const LanguageIndex& index, std::size_t depth) {
    const InventoryReport report = check_ls_inventory(exp, index, depth);
    std::vector<std::string> diff;
    for (const Word& w : report.uncovered) diff.push_back("uncovered [" + to_string(w) + "]");
    return from_diff("inventory", std::move(diff),
                     std::to_string(report.checked) + " LS factors up to length " + std::to_string(depth));
}

inline std::optional<std::size_t> first_deviation(const LanguageIndex& index) {
    const long first = delta_complexity(index, 1);
    for (std::size_t n = 2; n < index.max_n(); ++n)
        if (delta_complexity(index, n) != first) return n;
    return std::nullopt;
}

/// Affine prediction against the first differences: constant p when
/// predicted, otherwise a deviation from dC(1) below maxN, or below
/// affine_n on a second, longer index.
inline CheckResult check_affine(const ParryExpansion& exp, const Substitution& sub, const LanguageIndex& index,
                                const BatteryItem& item) {
    const AffinePrediction pred = affine_predicate(exp);
    std::vector<std::string> diff;
    for (std::size_t n = 1; pred.affine && n < index.max_n(); ++n) {
        const long d = delta_complexity(index, n);
        if (d != static_cast<long>(pred.slope)) diff.push_back("n=" + std::to_string(n) + " dC=" + std::to_string(d));
    }
    std::optional<std::size_t> deviation = first_deviation(index);
    std::size_t searched = index.max_n();
    if (!pred.affine && !deviation && item.affine_n > index.max_n()) {
        deviation = first_deviation(stabilize(sub, 0, item.affine_n, {item.budget, 0}));
        searched = item.affine_n;
    }
    if (!pred.affine && !deviation) diff.push_back("no deviation from dC(1) below " + std::to_string(searched));
    std::string detail = pred.affine ? "affine " + pred.complexity
                                     : "not affine" + (deviation ? ", first deviation n=" + std::to_string(*deviation)
                                                                 : std::string());
    return from_diff("affine", std::move(diff), std::move(detail));
}

} // namespace detail

inline ItemReport run_item(const BatteryItem& item) {
    ItemReport report{item.expansion, {}};
    auto fail = [&](std::string check, const std::exception& e) {
        report.checks.push_back({std::move(check), false, e.what(), {}});
    };
    std::optional<ParryExpansion> exp;
    try {
        exp = parse_expansion(item.expansion);
        report.expansion = exp->to_string();
    } catch (const Error& e) {
        fail("validate", e);
        return report;
    }
    report.checks.push_back({"validate", true, "valid", {}});
    try {
        report.checks.push_back(detail::check_renyi(*exp));
    } catch (const Error& e) {
        fail("renyi", e);
    }
    const Substitution sub = canonical_substitution(*exp);
    std::optional<LanguageIndex> index;
    try {
        index.emplace(stabilize(sub, 0, item.max_n, {item.budget, 0}));
    } catch (const Error& e) {
        fail("index", e);
        return report;
    }
    report.checks.push_back({"index", true, std::to_string(index->prefix_length()) + " letters", {}});
    report.checks.push_back(detail::check_connection(*index));
    if (exp->simple()) {
        report.checks.push_back(detail::check_simple_bounds(*exp, *index));
        return report;
    }
    const std::size_t depth = std::min(item.depth, item.max_n - 1);
    try {
        const AssumptionAReport a = check_assumption_A(sub, *index);
        std::vector<std::string> diff;
        if (!a.injective) diff.push_back("not injective");
        for (const auto& v : a.violations) diff.push_back(v.pair.to_string() + ": " + v.reason);
        report.checks.push_back(detail::from_diff("assumptionA", std::move(diff)));
        report.checks.push_back(detail::check_letter_extensions(*exp, *index, item.corrupt == "letterExtensions"));
        const GLGraph graph = build_graph(sub, *index);
        report.checks.push_back(detail::check_gl(*exp, graph, item.corrupt == "glClosedForm"));
        report.checks.push_back(detail::check_branches(*exp, sub, *index, graph, depth, item.corrupt == "branchList"));
        report.checks.push_back(detail::check_maximal(*exp, *index));
        report.checks.push_back(detail::check_inventory(*exp, *index, depth));
        report.checks.push_back(detail::check_affine(*exp, sub, *index, item));
    } catch (const Error& e) {
        fail("closedForms", e);
    }
    return report;
}

inline BatteryReport verify_battery(const std::vector<BatteryItem>& items) {
    std::vector<std::future<ItemReport>> jobs;
    for (const auto& item : items) jobs.push_back(std::async(std::launch::async, run_item, item));
    BatteryReport report;
    for (auto& job : jobs) report.items.push_back(job.get());
    std::stable_sort(report.items.begin(), report.items.end(),
                     [](const ItemReport& a, const ItemReport& b) { return a.expansion < b.expansion; });
    return report;
}

inline void to_json(json& j, const CheckResult& c) {
    j = {{"check", c.check}, {"pass", c.pass}, {"detail", c.detail}, {"diff", c.diff}};
}

inline void to_json(json& j, const ItemReport& r) {
    j = {{"expansion", r.expansion}, {"ok", r.ok()}, {"checks", r.checks}};
}

inline void to_json(json& j, const BatteryReport& r) { j = {{"ok", r.ok()}, {"items", r.items}}; }

inline std::string battery_text(const BatteryReport& report) {
    std::string out;
    for (const auto& item : report.items) {
        out += (item.ok() ? "ok   " : "FAIL ") + item.expansion + "\n";
        for (const auto& c : item.checks) {
            out += "  " + std::string(c.pass ? "pass " : "fail ") + c.check + ": " + c.detail + "\n";
            for (const auto& d : c.diff) out += "    " + d + "\n";
        }
    }
    return out;
}

} // namespace parryword
