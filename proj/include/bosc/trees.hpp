#ifndef BOSC_TREES_HPP
#define BOSC_TREES_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bosc/dyck.hpp"
#include "bosc/error.hpp"

namespace bosc {

struct Label {
    enum class Kind : unsigned char { Variable, Terminal, Epsilon };
    Kind kind = Kind::Variable;
    std::string name;

    static Label variable(std::string n) { return {Kind::Variable, std::move(n)}; }
    static Label terminal(std::string n) { return {Kind::Terminal, std::move(n)}; }
    static Label epsilon() { return {Kind::Epsilon, "\xCE\xB5"}; }

    friend bool operator==(const Label&, const Label&) = default;
    friend auto operator<=>(const Label&, const Label&) = default;
};

struct QuasiTree {
    Label label;
    std::vector<QuasiTree> children;

    bool is_leaf() const noexcept { return children.empty(); }

    static QuasiTree leaf(Label l) { return {std::move(l), {}}; }
    static QuasiTree node(Label l, std::vector<QuasiTree> cs) { return {std::move(l), std::move(cs)}; }

    friend bool operator==(const QuasiTree&, const QuasiTree&) = default;
    // Spelled out: the defaulted form does not see through the recursive vector.
    friend bool operator<(const QuasiTree& x, const QuasiTree& y) {
        if (x.label != y.label) return x.label < y.label;
        return std::lexicographical_compare(x.children.begin(), x.children.end(), y.children.begin(), y.children.end());
    }
};

inline std::size_t node_count(const QuasiTree& t) {
    std::size_t n = 1;
    for (const auto& c : t.children) n += node_count(c);
    return n;
}

inline std::size_t height(const QuasiTree& t) {
    std::size_t h = 0;
    for (const auto& c : t.children) h = std::max(h, 1 + height(c));
    return h;
}

// Strahler number.
inline unsigned dimension(const QuasiTree& t) {
    detail::RankAcc acc;
    for (const auto& c : t.children) acc.add(static_cast<int>(dimension(c)));
    return acc.rank();
}

namespace detail {
inline void node_footprint(const QuasiTree& n, std::vector<DyckSymbol>& out) {
    out.push_back(DyckSymbol::Close);
    out.insert(out.end(), n.children.size(), DyckSymbol::Open);
    for (const auto& c : n.children) node_footprint(c, out);
}

inline void flatten_into(const QuasiTree& n, std::vector<DyckSymbol>& out) {
    for (const auto& c : n.children) {
        out.push_back(DyckSymbol::Open);
        flatten_into(c, out);
        out.push_back(DyckSymbol::Close);
    }
}
} // namespace detail

// Footprint of a single node: a ā^k followed by the children's footprints.
// Not Dyck on its own; prefixing one ā makes it so.
inline std::vector<DyckSymbol> node_footprint(const QuasiTree& n) {
    std::vector<DyckSymbol> out;
    detail::node_footprint(n, out);
    return out;
}

inline DyckWord footprint(const QuasiTree& t) {
    std::vector<DyckSymbol> out{DyckSymbol::Open};
    detail::node_footprint(t, out);
    return *DyckWord::from_symbols(std::move(out));
}

inline DyckWord flattening(const QuasiTree& t) {
    std::vector<DyckSymbol> out;
    detail::flatten_into(t, out);
    return *DyckWord::from_symbols(std::move(out));
}

inline unsigned oscillation(const QuasiTree& t) { return rank(footprint(t)); }

struct TreeMetrics {
    unsigned dimension;
    unsigned oscillation;
    DyckWord footprint;
    DyckWord flattening;
};

inline TreeMetrics metrics(const QuasiTree& t) {
    auto fp = footprint(t);
    unsigned osc = rank(fp);
    return {dimension(t), osc, std::move(fp), flattening(t)};
}

inline std::vector<std::string> yield(const QuasiTree& t) {
    std::vector<std::string> out;
    auto rec = [&](auto&& self, const QuasiTree& n) -> void {
        if (n.is_leaf()) {
            if (n.label.kind == Label::Kind::Terminal) out.push_back(n.label.name);
            return;
        }
        for (const auto& c : n.children) self(self, c);
    };
    rec(rec, t);
    return out;
}

// Complete binary tree of height h.
inline QuasiTree perfect_binary(unsigned h) {
    if (h == 0) return QuasiTree::leaf(Label::terminal("x"));
    auto sub = perfect_binary(h - 1);
    return QuasiTree::node(Label::variable("N"), {sub, sub});
}

// P0 is a root with one leaf; Pn has children P(n-1) and a node holding P(n-1) and a leaf.
inline QuasiTree p_tree(unsigned n) {
    if (n == 0) return QuasiTree::node(Label::variable("P"), {QuasiTree::leaf(Label::terminal("x"))});
    auto sub = p_tree(n - 1);
    auto n2 = QuasiTree::node(Label::variable("P"), {sub, QuasiTree::leaf(Label::terminal("x"))});
    return QuasiTree::node(Label::variable("P"), {sub, std::move(n2)});
}

namespace detail {
inline bool needs_quotes(const std::string& s) {
    if (s.empty()) return true;
    for (char c : s)
        if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"') return true;
    return false;
}

inline std::string quote_terminal(const std::string& s) {
    // An uppercase terminal would read back as a variable.
    if (needs_quotes(s) || std::isupper(static_cast<unsigned char>(s[0])) || s == "_" || s == "\xCE\xB5")
        return '"' + s + '"';
    return s;
}
} // namespace detail

inline std::string to_sexpr(const QuasiTree& t) {
    std::string out = "(";
    switch (t.label.kind) {
    case Label::Kind::Epsilon: out += "\xCE\xB5"; break;
    case Label::Kind::Terminal: out += detail::quote_terminal(t.label.name); break;
    case Label::Kind::Variable: out += t.label.name; break;
    }
    for (const auto& c : t.children) out += ' ' + to_sexpr(c);
    return out + ')';
}

// Inverse of to_sexpr. Uppercase labels are variables, "ε" is the empty leaf,
// anything else (or anything quoted) is a terminal.
inline QuasiTree parse_sexpr(std::string_view text) {
    std::size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto fail = [&](const std::string& m) -> QuasiTree { throw ParseError(m, i + 1); };
    auto rec = [&](auto&& self) -> QuasiTree {
        skip();
        if (i >= text.size() || text[i] != '(') return fail("expected '('");
        ++i;
        skip();
        Label label;
        if (i < text.size() && text[i] == '"') {
            auto close = text.find('"', i + 1);
            if (close == std::string_view::npos) return fail("unterminated quoted label");
            label = Label::terminal(std::string(text.substr(i + 1, close - i - 1)));
            i = close + 1;
        } else {
            std::size_t s = i;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '(' && text[i] != ')') ++i;
            if (s == i) return fail("missing label");
            std::string name(text.substr(s, i - s));
            if (name == "\xCE\xB5") label = Label::epsilon();
            else if (std::isupper(static_cast<unsigned char>(name[0]))) label = Label::variable(name);
            else label = Label::terminal(name);
        }
        QuasiTree t{label, {}};
        for (;;) {
            skip();
            if (i >= text.size()) return fail("unexpected end of tree");
            if (text[i] == ')') { ++i; break; }
            t.children.push_back(self(self));
        }
        return t;
    };
    auto t = rec(rec);
    skip();
    if (i != text.size()) fail("trailing characters after tree");
    return t;
}

} // namespace bosc

#endif
