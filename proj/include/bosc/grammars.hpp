#ifndef BOSC_GRAMMARS_HPP
#define BOSC_GRAMMARS_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "bosc/error.hpp"
#include "bosc/trees.hpp"

namespace bosc {

using Word = std::vector<std::string>;

struct Rule {
    std::string lhs;
    std::vector<std::string> rhs; // empty means an ε-rule
    friend bool operator==(const Rule&, const Rule&) = default;
    friend auto operator<=>(const Rule&, const Rule&) = default;
};

struct Grammar {
    std::set<std::string> variables;
    std::set<std::string> terminals;
    std::string start;
    std::vector<Rule> rules;

    bool is_variable(const std::string& s) const { return variables.count(s) > 0; }

    void add_rule(const std::string& lhs, std::vector<std::string> rhs) {
        Rule r{lhs, std::move(rhs)};
        if (std::find(rules.begin(), rules.end(), r) == rules.end()) rules.push_back(std::move(r));
    }

    std::vector<const Rule*> rules_for(const std::string& x) const {
        std::vector<const Rule*> out;
        for (const auto& r : rules)
            if (r.lhs == x) out.push_back(&r);
        return out;
    }

    friend bool operator==(const Grammar&, const Grammar&) = default;
};

inline Grammar dyck_grammar() {
    Grammar g;
    g.variables = {"S"};
    g.terminals = {"\xC4\x81", "a"};
    g.start = "S";
    g.add_rule("S", {"\xC4\x81", "S", "a", "S"});
    g.add_rule("S", {});
    return g;
}

inline bool is_cnf(const Grammar& g) {
    for (const auto& r : g.rules) {
        if (r.rhs.size() == 1 && !g.is_variable(r.rhs[0])) continue;
        if (r.rhs.size() == 2 && g.is_variable(r.rhs[0]) && g.is_variable(r.rhs[1])) continue;
        return false;
    }
    return true;
}

inline std::set<std::string> nullable_variables(const Grammar& g) {
    std::set<std::string> n;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : g.rules) {
            if (n.count(r.lhs)) continue;
            if (std::all_of(r.rhs.begin(), r.rhs.end(), [&](const auto& s) { return n.count(s) > 0; })) {
                n.insert(r.lhs);
                changed = true;
            }
        }
    }
    return n;
}

namespace detail {

inline std::string fresh_name(const Grammar& g, const std::string& base) {
    std::string name = base;
    for (int i = 2; g.variables.count(name) || g.terminals.count(name); ++i) name = base + std::to_string(i);
    return name;
}

// Drops variables that derive no terminal word or are unreachable from the start.
inline Grammar trim(const Grammar& g) {
    std::set<std::string> gen;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : g.rules) {
            if (gen.count(r.lhs)) continue;
            if (std::all_of(r.rhs.begin(), r.rhs.end(), [&](const auto& s) { return !g.is_variable(s) || gen.count(s); })) {
                gen.insert(r.lhs);
                changed = true;
            }
        }
    }
    std::set<std::string> reach{g.start};
    std::vector<std::string> todo{g.start};
    while (!todo.empty()) {
        auto x = todo.back();
        todo.pop_back();
        for (const auto& r : g.rules) {
            if (r.lhs != x || !std::all_of(r.rhs.begin(), r.rhs.end(), [&](const auto& s) { return !g.is_variable(s) || gen.count(s); }))
                continue;
            for (const auto& s : r.rhs)
                if (g.is_variable(s) && reach.insert(s).second) todo.push_back(s);
        }
    }
    Grammar out;
    out.start = g.start;
    out.variables.insert(g.start);
    for (const auto& r : g.rules) {
        if (!reach.count(r.lhs) || !gen.count(r.lhs)) continue;
        bool ok = std::all_of(r.rhs.begin(), r.rhs.end(), [&](const auto& s) { return !g.is_variable(s) || gen.count(s); });
        if (!ok) continue;
        out.variables.insert(r.lhs);
        for (const auto& s : r.rhs) (g.is_variable(s) ? out.variables : out.terminals).insert(s);
        out.add_rule(r.lhs, r.rhs);
    }
    return out;
}

} // namespace detail

// Equivalent grammar in Chomsky normal form. Throws EpsilonLanguage when ε ∈ L(g).
inline Grammar to_cnf(const Grammar& g) {
    if (is_cnf(g)) return g;
    if (nullable_variables(g).count(g.start))
        throw EpsilonLanguage("the grammar derives the empty word, which has no CNF equivalent");

    Grammar h = g;
    // Terminals inside long right-hand sides get their own variable.
    std::map<std::string, std::string> term_var;
    std::vector<Rule> rules;
    for (auto r : h.rules) {
        if (r.rhs.size() >= 2) {
            for (auto& s : r.rhs) {
                if (h.is_variable(s)) continue;
                auto it = term_var.find(s);
                if (it == term_var.end()) {
                    auto v = detail::fresh_name(h, "T_" + s);
                    h.variables.insert(v);
                    it = term_var.emplace(s, v).first;
                }
                s = it->second;
            }
        }
        rules.push_back(std::move(r));
    }
    for (const auto& [t, v] : term_var) rules.push_back({v, {t}});

    // Binarize.
    std::vector<Rule> bin;
    for (const auto& r : rules) {
        if (r.rhs.size() <= 2) { bin.push_back(r); continue; }
        std::string lhs = r.lhs;
        for (std::size_t i = 0; i + 2 < r.rhs.size(); ++i) {
            auto v = detail::fresh_name(h, r.lhs + "_" + std::to_string(i + 1));
            h.variables.insert(v);
            bin.push_back({lhs, {r.rhs[i], v}});
            lhs = v;
        }
        bin.push_back({lhs, {r.rhs[r.rhs.size() - 2], r.rhs.back()}});
    }
    h.rules.clear();
    for (auto& r : bin) h.add_rule(r.lhs, r.rhs);

    // Remove ε-rules.
    auto nullable = nullable_variables(h);
    std::vector<Rule> del;
    for (const auto& r : h.rules) {
        std::size_t n = r.rhs.size();
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<std::string> rhs;
            bool ok = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (1u << i)) {
                    if (!nullable.count(r.rhs[i])) { ok = false; break; }
                } else rhs.push_back(r.rhs[i]);
            }
            if (ok && !rhs.empty()) del.push_back({r.lhs, rhs});
        }
    }
    h.rules.clear();
    for (auto& r : del) h.add_rule(r.lhs, r.rhs);

    // Remove unit rules.
    auto is_unit = [&](const Rule& r) { return r.rhs.size() == 1 && h.is_variable(r.rhs[0]); };
    std::vector<Rule> units_removed;
    for (const auto& x : h.variables) {
        std::set<std::string> reach{x};
        std::vector<std::string> todo{x};
        while (!todo.empty()) {
            auto y = todo.back();
            todo.pop_back();
            for (const auto& r : h.rules)
                if (r.lhs == y && is_unit(r) && reach.insert(r.rhs[0]).second) todo.push_back(r.rhs[0]);
        }
        for (const auto& y : reach)
            for (const auto& r : h.rules)
                if (r.lhs == y && !is_unit(r)) units_removed.push_back({x, r.rhs});
    }
    h.rules.clear();
    for (auto& r : units_removed) h.add_rule(r.lhs, r.rhs);
    return detail::trim(h);
}

// Membership for CNF grammars.
inline bool cyk(const Grammar& g, const Word& w) {
    if (!is_cnf(g)) throw NotCnf("cyk requires a grammar in Chomsky normal form");
    std::size_t n = w.size();
    if (n == 0) return false;
    std::vector<std::string> vars(g.variables.begin(), g.variables.end());
    std::map<std::string, std::size_t> vid;
    for (std::size_t i = 0; i < vars.size(); ++i) vid[vars[i]] = i;
    std::size_t V = vars.size();
    // t[(i * (n + 1) + len) * V + v]
    std::vector<char> t((n + 1) * (n + 1) * V, 0);
    auto at = [&](std::size_t i, std::size_t len, std::size_t v) -> char& { return t[(i * (n + 1) + len) * V + v]; };
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& r : g.rules)
            if (r.rhs.size() == 1 && r.rhs[0] == w[i]) at(i, 1, vid[r.lhs]) = 1;
    for (std::size_t len = 2; len <= n; ++len)
        for (std::size_t i = 0; i + len <= n; ++i)
            for (std::size_t k = 1; k < len; ++k)
                for (const auto& r : g.rules)
                    if (r.rhs.size() == 2 && at(i, k, vid[r.rhs[0]]) && at(i + k, len - k, vid[r.rhs[1]]))
                        at(i, len, vid[r.lhs]) = 1;
    auto s = vid.find(g.start);
    return s != vid.end() && at(0, n, s->second);
}

namespace detail {

// Exact-size parse tree generator, optionally constrained to a yield.
class TreeGen {
public:
    TreeGen(const Grammar& g, const Word* w) : g_(g), w_(w) {}

    // Trees rooted at symbol x with exactly n nodes (spanning [i, j) when a word is set).
    const std::vector<QuasiTree>& trees(const std::string& x, std::size_t i, std::size_t j, std::size_t n) {
        auto key = std::make_tuple(x, i, j, n);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::vector<QuasiTree> out;
        if (!g_.is_variable(x)) {
            if (n == 1 && (!w_ || (j == i + 1 && (*w_)[i] == x))) out.push_back(QuasiTree::leaf(Label::terminal(x)));
        } else if (n >= 2) {
            for (const auto* r : g_.rules_for(x)) {
                if (r->rhs.empty()) {
                    if (n == 2 && (!w_ || i == j))
                        out.push_back(QuasiTree::node(Label::variable(x), {QuasiTree::leaf(Label::epsilon())}));
                    continue;
                }
                std::vector<QuasiTree> kids;
                seq(*r, 0, i, j, n - 1, kids, out);
            }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    void seq(const Rule& r, std::size_t idx, std::size_t i, std::size_t j, std::size_t left,
             std::vector<QuasiTree>& kids, std::vector<QuasiTree>& out) {
        std::size_t rest = r.rhs.size() - idx;
        if (rest == 0) {
            if (left == 0 && (!w_ || i == j)) out.push_back(QuasiTree::node(Label::variable(r.lhs), kids));
            return;
        }
        if (left < rest) return;
        std::size_t m_lo = i, m_hi = w_ ? j : i;
        for (std::size_t m = m_lo; m <= m_hi; ++m) {
            for (std::size_t sz = 1; sz + (rest - 1) <= left; ++sz) {
                // sz < n, so this never re-enters the entry under construction.
                const auto& sub = trees(r.rhs[idx], i, w_ ? m : 0, sz);
                for (const auto& t : sub) {
                    kids.push_back(t);
                    seq(r, idx + 1, w_ ? m : i, j, left - sz, kids, out);
                    kids.pop_back();
                }
            }
        }
    }

    const Grammar& g_;
    const Word* w_;
    std::map<std::tuple<std::string, std::size_t, std::size_t, std::size_t>, std::vector<QuasiTree>> memo_;
};

} // namespace detail

// All parse trees rooted at the start symbol with at most max_nodes nodes.
inline std::vector<QuasiTree> enumerate_parse_trees(const Grammar& g, std::size_t max_nodes = 25) {
    detail::TreeGen gen(g, nullptr);
    std::vector<QuasiTree> out;
    for (std::size_t n = 1; n <= max_nodes; ++n) {
        const auto& ts = gen.trees(g.start, 0, 0, n);
        out.insert(out.end(), ts.begin(), ts.end());
    }
    return out;
}

// All parse trees of w rooted at the start symbol with at most max_nodes nodes.
inline std::vector<QuasiTree> parse_trees(const Grammar& g, const Word& w, std::size_t max_nodes = 64) {
    detail::TreeGen gen(g, &w);
    std::vector<QuasiTree> out;
    for (std::size_t n = 1; n <= max_nodes; ++n) {
        const auto& ts = gen.trees(g.start, 0, w.size(), n);
        out.insert(out.end(), ts.begin(), ts.end());
    }
    return out;
}

// Throws InvalidTree, naming the offending node, unless t is a quasi-tree of g.
inline void check_quasi_tree(const QuasiTree& t, const Grammar& g, bool require_start = false) {
    if (t.label.kind != Label::Kind::Variable) throw InvalidTree("root must be labelled by a variable");
    if (require_start && t.label.name != g.start) throw InvalidTree("root is " + t.label.name + ", not the start symbol " + g.start);
    auto rec = [&](auto&& self, const QuasiTree& n) -> void {
        if (n.label.kind == Label::Kind::Variable) {
            if (!g.is_variable(n.label.name)) throw InvalidTree("unknown variable " + n.label.name);
            if (n.is_leaf()) throw InvalidTree("variable " + n.label.name + " labels a leaf");
            std::vector<std::string> rhs;
            bool eps = n.children.size() == 1 && n.children[0].label.kind == Label::Kind::Epsilon;
            if (!eps)
                for (const auto& c : n.children) {
                    if (c.label.kind == Label::Kind::Epsilon) throw InvalidTree("ε must be an only child");
                    rhs.push_back(c.label.name);
                }
            if (std::find(g.rules.begin(), g.rules.end(), Rule{n.label.name, rhs}) == g.rules.end())
                throw InvalidTree("node " + n.label.name + " does not follow a rule of the grammar");
            for (const auto& c : n.children) self(self, c);
        } else {
            if (!n.is_leaf()) throw InvalidTree("terminal or ε labels an inner node");
            if (n.label.kind == Label::Kind::Terminal && !g.terminals.count(n.label.name))
                throw InvalidTree("unknown terminal " + n.label.name);
        }
    };
    rec(rec, t);
}

inline bool validate_quasi_tree(const QuasiTree& t, const Grammar& g) {
    try {
        check_quasi_tree(t, g);
        return true;
    } catch (const InvalidTree&) {
        return false;
    }
}

// ---- text format ----------------------------------------------------------
//   @start S
//   S -> a S b | a b     (uppercase = variable; "quoted" or lowercase = terminal; ε or _ = empty)

namespace detail {

inline std::string strip_comment(const std::string& line) {
    bool q = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') q = !q;
        else if (line[i] == '#' && !q) return line.substr(0, i);
    }
    return line;
}

struct Token {
    std::string text;
    bool quoted;
};

inline std::vector<Token> tokenize(const std::string& s, std::size_t line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) { ++i; continue; }
        if (s[i] == '"') {
            auto close = s.find('"', i + 1);
            if (close == std::string::npos) throw ParseError("unterminated quote", line_no);
            out.push_back({s.substr(i + 1, close - i - 1), true});
            i = close + 1;
            continue;
        }
        std::size_t st = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '"') ++i;
        out.push_back({s.substr(st, i - st), false});
    }
    return out;
}

inline bool is_epsilon_token(const Token& t) { return !t.quoted && (t.text == "_" || t.text == "\xCE\xB5"); }

} // namespace detail

inline Grammar parse_grammar(std::string_view text) {
    Grammar g;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::string> start;
    std::vector<std::pair<std::string, std::vector<detail::Token>>> pending;
    while (std::getline(in, line)) {
        ++line_no;
        auto body = detail::strip_comment(line);
        auto toks = detail::tokenize(body, line_no);
        if (toks.empty()) continue;
        if (!toks[0].quoted && toks[0].text == "@start") {
            if (toks.size() != 2) throw ParseError("@start takes exactly one variable", line_no);
            start = toks[1].text;
            continue;
        }
        if (toks.size() < 2 || toks[1].quoted || toks[1].text != "->")
            throw ParseError("expected 'X -> ...'", line_no);
        const auto& lhs = toks[0];
        if (lhs.quoted || !std::isupper(static_cast<unsigned char>(lhs.text[0])))
            throw ParseError("left-hand side must be a variable (uppercase): " + lhs.text, line_no);
        g.variables.insert(lhs.text);
        std::vector<detail::Token> alt;
        auto flush = [&] {
            std::vector<std::string> rhs;
            for (const auto& t : alt) {
                if (detail::is_epsilon_token(t)) {
                    if (alt.size() != 1) throw ParseError("ε must stand alone in an alternative", line_no);
                    continue;
                }
                rhs.push_back(t.text);
                if (!t.quoted && std::isupper(static_cast<unsigned char>(t.text[0]))) g.variables.insert(t.text);
                else g.terminals.insert(t.text);
            }
            g.add_rule(lhs.text, rhs);
            alt.clear();
        };
        for (std::size_t i = 2; i < toks.size(); ++i) {
            if (!toks[i].quoted && toks[i].text == "|") flush();
            else alt.push_back(toks[i]);
        }
        flush();
        if (!start) start = lhs.text;
    }
    if (!start) throw ParseError("grammar has no rules and no @start", line_no + 1);
    g.start = *start;
    g.variables.insert(g.start);
    for (const auto& v : g.variables)
        if (g.terminals.count(v)) throw ParseError("symbol used both as variable and terminal: " + v, line_no);
    return g;
}

inline std::string format_grammar(const Grammar& g) {
    std::string out = "@start " + g.start + "\n";
    std::vector<std::string> order;
    for (const auto& r : g.rules)
        if (std::find(order.begin(), order.end(), r.lhs) == order.end()) order.push_back(r.lhs);
    auto sym = [&](const std::string& s) { return g.is_variable(s) ? s : detail::quote_terminal(s); };
    for (const auto& x : order) {
        out += x + " ->";
        bool first = true;
        for (const auto* r : g.rules_for(x)) {
            if (!first) out += " |";
            first = false;
            if (r->rhs.empty()) out += " \xCE\xB5";
            for (const auto& s : r->rhs) out += " " + sym(s);
        }
        out += "\n";
    }
    return out;
}

// Splits on whitespace when present, otherwise greedily by longest terminal.
inline Word tokenize_word(std::string_view text, const std::set<std::string>& alphabet) {
    Word w;
    if (text.find_first_of(" \t") != std::string_view::npos) {
        std::istringstream in{std::string(text)};
        std::string t;
        while (in >> t) w.push_back(t);
        return w;
    }
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t best = 0;
        for (const auto& a : alphabet)
            if (a.size() > best && text.substr(i, a.size()) == a) best = a.size();
        if (best == 0) {
            // Unknown symbol: take one UTF-8 code point so the caller can report it.
            best = 1;
            while (i + best < text.size() && (static_cast<unsigned char>(text[i + best]) & 0xC0) == 0x80) ++best;
        }
        w.emplace_back(text.substr(i, best));
        i += best;
    }
    return w;
}

inline std::string join_word(const Word& w) {
    std::string out;
    for (const auto& s : w) out += s;
    return out;
}

} // namespace bosc

#endif
