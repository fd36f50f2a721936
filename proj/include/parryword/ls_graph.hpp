#pragma once

// The left-special branch graph of a substitution: f_L labels, g_L
// successor pairs, the two assumptions that make the graph functional, and
// the infinite left special branches read off its cycles.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "parryword/error.hpp"
#include "parryword/factor_index.hpp"
#include "parryword/substitution.hpp"
#include "parryword/word.hpp"

namespace parryword {

/// Unordered pair of distinct letters, stored as (min, max).
struct LetterPair {
    Letter first = 0;
    Letter second = 0;

    LetterPair() = default;
    LetterPair(Letter a, Letter b) : first(std::min(a, b)), second(std::max(a, b)) {}

    friend auto operator<=>(const LetterPair&, const LetterPair&) = default;
    std::string to_string() const {
        return "{" + std::to_string(first) + "," + std::to_string(second) + "}";
    }
};

inline Word f_left(const Substitution& sub, Letter a, Letter b) {
    return longest_common_suffix(sub.image(a), sub.image(b));
}

/// Rext(a) and Rext(b) intersect, i.e. {a,b} is a vertex of the graph.
inline bool coextendable(const LanguageIndex& index, Letter a, Letter b) {
    return (index.right_mask(Word{a}) & index.right_mask(Word{b})) != 0;
}

namespace detail {

/// Last letters of phi(c) over c in Lext(a) with Rext(ca) meeting Rext(b).
inline LetterMask case_two_letters(const Substitution& sub, const LanguageIndex& index, Letter a, Letter b) {
    LetterMask out = 0;
    const LetterMask rb = index.right_mask(Word{b});
    for (Letter c : index.left_extensions(Word{a}))
        if (index.right_mask(Word{c, a}) & rb) out |= letter_bit(sub.image(c).back());
    return out;
}

} // namespace detail

enum class GLCase { ProperSuffix, ImageIsSuffix, EqualImages };

struct GLSuccessor {
    LetterMask letters = 0;
    GLCase kind = GLCase::ProperSuffix;
    /// Case (ii): the letter preceding f_L in the longer image.
    std::optional<Letter> preceding;
    /// Case (ii): the last letters of phi(c) contributed through Lext(a).
    LetterMask through_extensions = 0;
};

/// g_L(a,b) with the case that produced it. Case (ii) reads Lext(a) and
/// Rext(ca) from the index, so the index needs maxN >= 2.
inline GLSuccessor g_left_detail(const Substitution& sub, const LanguageIndex& index, Letter a, Letter b) {
    if (a == b || !coextendable(index, a, b))
        throw Error(ErrorCode::PairNotCoextendable,
                    "Rext(" + std::to_string(a) + ") and Rext(" + std::to_string(b) + ") are disjoint");
    const Word& ia = sub.image(a);
    const Word& ib = sub.image(b);
    const std::size_t f = longest_common_suffix(ia, ib).size();
    GLSuccessor out;
    if (f < ia.size() && f < ib.size()) {
        out.letters = letter_bit(ia[ia.size() - f - 1]) | letter_bit(ib[ib.size() - f - 1]);
        return out;
    }
    if (index.max_n() < 2) throw Error(ErrorCode::OutOfRange, "g_L case (ii) needs maxN >= 2");
    if (ia.size() == ib.size()) {
        out.kind = GLCase::EqualImages;
        out.through_extensions = detail::case_two_letters(sub, index, a, b) | detail::case_two_letters(sub, index, b, a);
        out.letters = out.through_extensions;
        return out;
    }
    const Letter shorter = ia.size() < ib.size() ? a : b;
    const Letter longer = shorter == a ? b : a;
    const Word& il = sub.image(longer);
    out.kind = GLCase::ImageIsSuffix;
    out.preceding = il[il.size() - f - 1];
    out.through_extensions = detail::case_two_letters(sub, index, shorter, longer);
    out.letters = letter_bit(*out.preceding) | out.through_extensions;
    return out;
}

inline LetterSet g_left(const Substitution& sub, const LanguageIndex& index, Letter a, Letter b) {
    return mask_to_set(g_left_detail(sub, index, a, b).letters);
}

/// All vertices {a,b}, a < b, with Rext(a) and Rext(b) intersecting.
inline std::vector<LetterPair> coextendable_pairs(const LanguageIndex& index) {
    std::vector<LetterPair> out;
    const LetterSet letters = mask_to_set(index.alphabet());
    for (std::size_t i = 0; i < letters.size(); ++i)
        for (std::size_t j = i + 1; j < letters.size(); ++j)
            if (coextendable(index, letters[i], letters[j])) out.emplace_back(letters[i], letters[j]);
    return out;
}

struct AssumptionViolation {
    LetterPair pair;
    std::string reason;
};

struct AssumptionAReport {
    bool injective = false;
    std::vector<AssumptionViolation> violations;
    bool satisfied() const noexcept { return injective && violations.empty(); }
};

inline AssumptionAReport check_assumption_A(const Substitution& sub, const LanguageIndex& index) {
    AssumptionAReport report;
    report.injective = is_injective(sub);
    for (const LetterPair& v : coextendable_pairs(index)) {
        const GLSuccessor g = g_left_detail(sub, index, v.first, v.second);
        if (g.kind == GLCase::EqualImages) {
            report.violations.push_back({v, "equal images"});
            continue;
        }
        if (mask_size(g.letters) != 2)
            report.violations.push_back({v, "g_L has " + std::to_string(mask_size(g.letters)) + " letters"});
        if (g.kind == GLCase::ImageIsSuffix && (g.through_extensions & letter_bit(*g.preceding)))
            report.violations.push_back({v, "letter " + std::to_string(*g.preceding) +
                                                " preceding f_L is the last letter of phi(c)"});
    }
    return report;
}

// ---------------------------------------------------------------------------
// Assumption B: a factor with a unique decomposition into letter images.

/// Number of ways to read v inside phi(x_0) ... phi(x_k), starting at an
/// offset of phi(x_0) and ending inside phi(x_k), with x_0 ... x_k a factor
/// of the indexed word. Stops counting at `cap`.
inline std::size_t count_decompositions(const Substitution& sub, const LanguageIndex& index, const Word& v,
                                        std::size_t cap = 2) {
    if (v.empty()) return 0;
    std::size_t count = 0;
    Word letters;
    // pos: letters of v already covered
    auto extend = [&](auto&& self, std::size_t pos) -> void {
        for (Letter x = 0; x < sub.alphabet_size() && count < cap; ++x) {
            const Word& img = sub.image(x);
            const std::size_t take = std::min(img.size(), v.size() - pos);
            if (!std::equal(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(take),
                            v.begin() + static_cast<std::ptrdiff_t>(pos)))
                continue;
            letters.push_back(x);
            if (letters.size() <= index.max_n() && index.contains(letters)) {
                if (pos + take == v.size())
                    ++count;
                else
                    self(self, pos + take);
            }
            letters.pop_back();
        }
    };
    for (Letter x0 = 0; x0 < sub.alphabet_size() && count < cap; ++x0) {
        const Word& img = sub.image(x0);
        for (std::size_t o = 0; o < img.size() && count < cap; ++o) {
            const std::size_t take = std::min(img.size() - o, v.size());
            if (!std::equal(img.begin() + static_cast<std::ptrdiff_t>(o),
                            img.begin() + static_cast<std::ptrdiff_t>(o + take), v.begin()))
                continue;
            letters.assign(1, x0);
            if (!index.contains(letters)) continue;
            if (take == v.size())
                ++count;
            else
                extend(extend, take);
        }
    }
    return count;
}

/// A factor of length <= search_len with exactly one decomposition, or
/// nothing (UNKNOWN). Letter images are tried first, then all factors by
/// length and lexicographic order.
inline std::optional<Word> check_assumption_B(const Substitution& sub, const LanguageIndex& index,
                                              std::size_t search_len) {
    const std::size_t limit = std::min(search_len, index.max_n());
    for (Letter a = 0; a < sub.alphabet_size(); ++a) {
        const Word& img = sub.image(a);
        if (img.size() <= limit && index.contains(img) && count_decompositions(sub, index, img) == 1) return img;
    }
    for (std::size_t n = 1; n <= limit; ++n)
        for (const auto& rec : index.factors(n)) {
            const Word v = index.word(rec);
            if (count_decompositions(sub, index, v) == 1) return v;
        }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// The graph

struct GLEdge {
    LetterPair target;
    Word label;
};

struct GLGraph {
    std::vector<LetterPair> vertices;
    std::map<LetterPair, GLEdge> out;

    const GLEdge& edge(const LetterPair& v) const {
        auto it = out.find(v);
        if (it == out.end()) throw Error(ErrorCode::OutOfRange, "no vertex " + v.to_string());
        return it->second;
    }
    bool has_vertex(const LetterPair& v) const { return out.count(v) != 0; }
};

inline GLGraph build_graph(const Substitution& sub, const LanguageIndex& index) {
    const AssumptionAReport report = check_assumption_A(sub, index);
    if (!report.satisfied()) {
        const std::string where = report.violations.empty() ? std::string("substitution is not injective")
                                                            : report.violations.front().pair.to_string() + ": " +
                                                                  report.violations.front().reason;
        throw Error(ErrorCode::AssumptionAViolated, where);
    }
    GLGraph graph;
    graph.vertices = coextendable_pairs(index);
    for (const LetterPair& v : graph.vertices) {
        const LetterSet g = g_left(sub, index, v.first, v.second);
        graph.out[v] = GLEdge{LetterPair(g[0], g[1]), f_left(sub, v.first, v.second)};
    }
    return graph;
}

/// The cycles of the functional graph, each listed from its smallest vertex
/// along the edges; cycles sorted by that vertex.
inline std::vector<std::vector<LetterPair>> graph_cycles(const GLGraph& graph) {
    std::vector<std::vector<LetterPair>> cycles;
    std::map<LetterPair, int> state;  // 1 on the current path, 2 finished
    for (const LetterPair& start : graph.vertices) {
        if (state[start]) continue;
        std::vector<LetterPair> path;
        LetterPair v = start;
        while (graph.has_vertex(v) && state[v] == 0) {
            state[v] = 1;
            path.push_back(v);
            v = graph.edge(v).target;
        }
        if (graph.has_vertex(v) && state[v] == 1) {
            auto it = std::find(path.begin(), path.end(), v);
            std::vector<LetterPair> cycle(it, path.end());
            std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
            cycles.push_back(std::move(cycle));
        }
        for (const LetterPair& u : path) state[u] = 2;
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

enum class BranchKind { PeriodicPoint, Equation };

struct BranchSpec {
    BranchKind kind = BranchKind::Equation;
    /// Periodic point: the seed letter of (phi^power)^omega(seed).
    Letter seed = 0;
    /// Periodic point: the period; equation: the cycle length in w = s phi^power(w).
    std::size_t power = 1;
    /// Equation: the prefix s.
    Word prefix;
    std::vector<LetterPair> cycle_vertices;
    /// The extension pairs claimed for the branch.
    std::vector<LetterPair> extensions;
    bool confirmed = true;

    std::string to_string() const {
        std::string out;
        if (kind == BranchKind::PeriodicPoint) {
            out = "periodic seed=" + std::to_string(seed) + " power=" + std::to_string(power);
        } else {
            out = "equation s=[" + parryword::to_string(prefix) + "] power=" + std::to_string(power);
        }
        out += " ext=";
        for (std::size_t i = 0; i < extensions.size(); ++i) out += (i ? "," : "") + extensions[i].to_string();
        return out;
    }
};

/// s = f_L(g^{l-1}(v)) phi(f_L(g^{l-2}(v))) ... phi^{l-1}(f_L(v)) along the
/// cycle of length l through v.
inline Word equation_prefix(const Substitution& sub, const GLGraph& graph, const LetterPair& v, std::size_t l) {
    std::vector<Word> labels;
    LetterPair u = v;
    for (std::size_t i = 0; i < l; ++i) {
        labels.push_back(graph.edge(u).label);
        u = graph.edge(u).target;
    }
    Word s;
    for (std::size_t i = 0; i < l; ++i) s = concat(s, apply_power(sub, labels[l - 1 - i], i));
    return s;
}

inline Word branch_prefix(const Substitution& sub, const BranchSpec& spec, std::size_t length) {
    if (spec.kind == BranchKind::PeriodicPoint)
        return fixed_point_prefix(power(sub, spec.power), spec.seed, length).letters;
    if (spec.prefix.empty()) throw Error(ErrorCode::OutOfRange, "equation branch with empty prefix");
    Word out;
    Word block = spec.prefix;
    while (out.size() < length) {
        const std::size_t take = std::min(block.size(), length - out.size());
        out.insert(out.end(), block.begin(), block.begin() + static_cast<std::ptrdiff_t>(take));
        if (out.size() >= length) break;
        block = truncated_power(sub, block, spec.power, length - out.size());
    }
    return out;
}

/// Every prefix of length 0..depth is left special and its left extensions
/// contain every claimed pair.
inline bool branch_verify(const Substitution& sub, const BranchSpec& spec, const LanguageIndex& index,
                          std::size_t depth) {
    if (depth > index.max_n()) throw Error(ErrorCode::OutOfRange, "depth exceeds the index maxN");
    const Word w = branch_prefix(sub, spec, std::max<std::size_t>(depth, 1));
    LetterMask claimed = 0;
    for (const LetterPair& e : spec.extensions) claimed |= letter_bit(e.first) | letter_bit(e.second);
    for (std::size_t n = 0; n <= depth; ++n) {
        const LetterMask left = index.left_mask(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n)));
        if (mask_size(left) < 2 || (left & claimed) != claimed) return false;
    }
    return true;
}

struct BranchAnalysis {
    std::vector<BranchSpec> branches;
    std::optional<Word> witness;
    bool assumption_b_confirmed() const noexcept { return witness.has_value(); }
};

/// Branches from the cycles of the graph. Equation branches: one per vertex
/// of every cycle carrying a non-empty label. Periodic points: candidates of
/// period <= q whose depth-`depth` prefix is left special with a pair lying
/// on an all-empty cycle.
inline BranchAnalysis infinite_branches(const Substitution& sub, const LanguageIndex& index, const GLGraph& graph,
                                        std::size_t depth, std::size_t search_len = 8) {
    BranchAnalysis analysis;
    analysis.witness = check_assumption_B(sub, index, search_len);
    const bool confirmed = analysis.witness.has_value();
    std::map<LetterPair, std::size_t> empty_cycle_of;
    const auto cycles = graph_cycles(graph);
    for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
        const auto& cycle = cycles[ci];
        const bool all_empty = std::all_of(cycle.begin(), cycle.end(),
                                           [&](const LetterPair& v) { return graph.edge(v).label.empty(); });
        if (all_empty) {
            for (const LetterPair& v : cycle) empty_cycle_of[v] = ci;
            continue;
        }
        for (const LetterPair& v : cycle) {
            BranchSpec spec;
            spec.kind = BranchKind::Equation;
            spec.power = cycle.size();
            spec.prefix = equation_prefix(sub, graph, v, cycle.size());
            spec.cycle_vertices = cycle;
            spec.extensions = {v};
            spec.confirmed = confirmed;
            analysis.branches.push_back(std::move(spec));
        }
    }
    const std::size_t check = std::min(depth, index.max_n());
    for (const PeriodicPoint& pp : periodic_points(sub, sub.alphabet_size())) {
        const Word w = fixed_point_prefix(power(sub, pp.period), pp.seed, std::max<std::size_t>(check, 1)).letters;
        const LetterSet left = index.left_extensions(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(check)));
        BranchSpec spec;
        spec.kind = BranchKind::PeriodicPoint;
        spec.seed = pp.seed;
        spec.power = pp.period;
        spec.confirmed = confirmed;
        std::vector<std::size_t> cycle_ids;
        for (std::size_t i = 0; i < left.size(); ++i)
            for (std::size_t j = i + 1; j < left.size(); ++j) {
                const LetterPair v(left[i], left[j]);
                auto it = empty_cycle_of.find(v);
                if (it == empty_cycle_of.end()) continue;
                spec.extensions.push_back(v);
                if (std::find(cycle_ids.begin(), cycle_ids.end(), it->second) == cycle_ids.end())
                    cycle_ids.push_back(it->second);
            }
        if (spec.extensions.empty()) continue;
        for (std::size_t ci : cycle_ids)
            spec.cycle_vertices.insert(spec.cycle_vertices.end(), cycles[ci].begin(), cycles[ci].end());
        if (!branch_verify(sub, spec, index, check)) continue;
        analysis.branches.push_back(std::move(spec));
    }
    return analysis;
}

/// Graphviz rendering: vertex ids "a_b", labels "{a,b}", empty labels "eps".
inline std::string to_dot(const GLGraph& graph) {
    std::ostringstream out;
    out << "digraph GL {\n";
    for (const LetterPair& v : graph.vertices)
        out << "  \"" << v.first << '_' << v.second << "\" [label=\"" << v.to_string() << "\"];\n";
    for (const LetterPair& v : graph.vertices) {
        const GLEdge& e = graph.edge(v);
        out << "  \"" << v.first << '_' << v.second << "\" -> \"" << e.target.first << '_' << e.target.second
            << "\" [label=\"" << (e.label.empty() ? std::string("eps") : to_string(e.label)) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace parryword
