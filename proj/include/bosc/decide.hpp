#ifndef BOSC_DECIDE_HPP
#define BOSC_DECIDE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bosc/error.hpp"
#include "bosc/kconstruct.hpp"
#include "bosc/pda.hpp"

namespace bosc {

// One recursive query: can `symbol` be emptied by a quasi-run of the given class.
struct QueryKey {
    StackId symbol = 0;
    unsigned level = 0;
    bool hat = false;
    friend bool operator==(const QueryKey&, const QueryKey&) = default;
    friend auto operator<=>(const QueryKey&, const QueryKey&) = default;
};

struct FixpointStats {
    std::vector<std::size_t> productive_per_iteration; // after each round, including the last (stable) one
    std::size_t key_space = 0;
};

namespace detail {

inline void require_reduced(const Pda& p, const char* what) {
    if (!is_reduced(p)) throw NotReduced(std::string(what) + " needs a PDA in reduced form");
}

// Key tables indexed [symbol][level][hat].
class KeyTable {
public:
    KeyTable(std::size_t symbols, unsigned k) : k_(k), bits_(symbols * (k + 1) * 2, 0) {}
    bool get(StackId g, unsigned d, bool hat) const { return d <= k_ && bits_[idx(g, d, hat)]; }
    bool set(StackId g, unsigned d, bool hat) {
        auto& b = bits_[idx(g, d, hat)];
        if (b) return false;
        b = 1;
        return true;
    }
    std::size_t count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }
    std::size_t size() const { return bits_.size(); }

private:
    std::size_t idx(StackId g, unsigned d, bool hat) const { return (static_cast<std::size_t>(g) * (k_ + 1) + d) * 2 + hat; }
    unsigned k_;
    std::vector<char> bits_;
};

} // namespace detail

// ---- exact k-emptiness ----------------------------------------------------------
//
// Keys are (γ, d, hat): hat marks quasi-runs whose footprint has rank d and hat-rank d,
// no-hat marks rank d and hat-rank d − 1 (so (γ, 0, no-hat) is never productive).
// A word is k-oscillating iff (γ0, k, hat) or (γ0, k, no-hat) is productive.

struct ExactJustification {
    std::size_t action = 0;
    unsigned o1 = 0;
    QueryKey second{};
};

class ExactEmptiness {
public:
    ExactEmptiness(const Pda& p, unsigned k) : p_(p), k_(k), table_(p.stack_symbols.size(), k) {
        detail::require_reduced(p, "k_emptiness");
        std::size_t n = p.stack_symbols.size() * (k + 1) * 2;
        just_.assign(n, std::nullopt);
        round_.assign(n, 0);
        stats_.key_space = n;
        solve();
    }

    bool productive(QueryKey q) const { return table_.get(q.symbol, q.level, q.hat); }
    bool nonempty() const { return productive({p_.start_stack, k_, true}) || productive({p_.start_stack, k_, false}); }
    const FixpointStats& stats() const { return stats_; }

    // Actions of a run from the start symbol witnessing a k-oscillating run.
    std::optional<std::vector<std::size_t>> witness() const {
        std::optional<QueryKey> top;
        for (bool h : {true, false}) {
            QueryKey q{p_.start_stack, k_, h};
            if (productive(q) && (!top || round_[idx(q)] < round_[idx(*top)])) top = q;
        }
        if (!top) return std::nullopt;
        std::vector<std::size_t> out;
        expand(*top, out);
        return out;
    }

private:
    std::size_t idx(QueryKey q) const { return (static_cast<std::size_t>(q.symbol) * (k_ + 1) + q.level) * 2 + q.hat; }

    // Earliest-productive key of the given level, either shape.
    std::optional<QueryKey> any_at(StackId g, unsigned d, std::size_t before) const {
        std::optional<QueryKey> best;
        for (bool h : {true, false}) {
            QueryKey q{g, d, h};
            if (productive(q) && round_[idx(q)] < before && (!best || round_[idx(q)] < round_[idx(*best)])) best = q;
        }
        return best;
    }

    void expand(QueryKey q, std::vector<std::size_t>& out) const {
        const auto& j = *just_[idx(q)];
        out.push_back(j.action);
        const auto& a = p_.actions[j.action];
        if (a.is_pop()) return;
        expand(*any_at(a.push[0], j.o1, round_[idx(q)]), out);
        expand(j.second, out);
    }

    void solve() {
        std::size_t round = 0;
        for (bool changed = true; changed;) {
            changed = false;
            ++round;
            std::vector<std::pair<QueryKey, ExactJustification>> found;
            for (std::size_t ai = 0; ai < p_.actions.size(); ++ai) {
                const auto& a = p_.actions[ai];
                if (a.is_pop()) {
                    found.push_back({{a.pop, 0, true}, {ai, 0, {}}});
                    continue;
                }
                for (unsigned o1 = 0; o1 <= k_; ++o1) {
                    if (!any_at(a.push[0], o1, round)) continue;
                    for (unsigned o2 = 0; o2 <= k_; ++o2)
                        for (bool tight : {true, false}) {
                            QueryKey second{a.push[1], o2, tight};
                            if (!productive(second) || round_[idx(second)] >= round) continue;
                            unsigned h2 = tight ? o2 : o2 - 1;
                            auto [o, h] = compose_osc(o1, o2, h2);
                            if (o > k_) continue;
                            found.push_back({{a.pop, o, h == o}, {ai, o1, second}});
                        }
                }
            }
            for (auto& [q, j] : found) {
                if (table_.set(q.symbol, q.level, q.hat)) {
                    just_[idx(q)] = j;
                    round_[idx(q)] = round;
                    changed = true;
                }
            }
            stats_.productive_per_iteration.push_back(table_.count());
        }
    }

    const Pda& p_;
    unsigned k_;
    detail::KeyTable table_;
    std::vector<std::optional<ExactJustification>> just_;
    std::vector<std::size_t> round_;
    FixpointStats stats_;
};

// True iff some run of the reduced PDA p has oscillation exactly k.
inline bool k_emptiness(const Pda& p, unsigned k) { return ExactEmptiness(p, k).nonempty(); }

// ---- literal case table ------------------------------------------------------
//
// Keys carry the construction's meaning: level d means rank d, hat additionally means
// hat-rank d. A push key is productive when one of the five cases has both halves
// productive, ℓ ranging over 0..d−1.

inline detail::KeyTable case_table(const Pda& p, unsigned k, FixpointStats* stats = nullptr) {
    detail::require_reduced(p, "case_table_emptiness");
    detail::KeyTable t(p.stack_symbols.size(), k);
    if (stats) stats->key_space = t.size();
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<QueryKey> found;
        for (const auto& a : p.actions) {
            if (a.is_pop()) {
                found.push_back({a.pop, 0, false});
                found.push_back({a.pop, 0, true});
                continue;
            }
            StackId x1 = a.push[0], x2 = a.push[1];
            for (unsigned d = 1; d <= k; ++d) {
                for (unsigned l = 0; l < d; ++l) {
                    if (t.get(x2, l, false) && t.get(x1, d, false)) found.push_back({a.pop, d, true});  // (a)
                    if (t.get(x1, l, false) && t.get(x2, d, true)) found.push_back({a.pop, d, true});   // (b)
                    if (t.get(x2, l, false) && t.get(x1, d, false)) found.push_back({a.pop, d, false}); // (c)
                    if (t.get(x1, l, false) && t.get(x2, d, false)) found.push_back({a.pop, d, false}); // (d)
                }
                if (t.get(x1, d - 1, false) && t.get(x2, d - 1, true)) found.push_back({a.pop, d, false}); // (e)
            }
        }
        for (const auto& q : found) changed |= t.set(q.symbol, q.level, q.hat);
        if (stats) stats->productive_per_iteration.push_back(t.count());
    }
    return t;
}

inline bool case_table_emptiness(const Pda& p, unsigned k, FixpointStats* stats = nullptr) {
    return case_table(p, k, stats).get(p.start_stack, k, false);
}

// ---- plain emptiness and membership for reduced PDAs --------------------------------

inline bool reduced_nonempty(const Pda& p) {
    detail::require_reduced(p, "reduced_nonempty");
    std::vector<char> prod(p.stack_symbols.size(), 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& a : p.actions) {
            if (prod[a.pop]) continue;
            if (a.is_pop() || (prod[a.push[0]] && prod[a.push[1]])) prod[a.pop] = changed = true;
        }
    }
    return prod[p.start_stack];
}

// Plain emptiness of any PDA, through the reduction.
inline bool is_empty(const Pda& p) { return !reduced_nonempty(ensure_reduced(p)); }

namespace detail {

// Span table over a reduced PDA: cls[i][j][γ] is a bitmask of classes of quasi-runs
// from γ that read exactly w[i..j). Classes are closed under `combine`.
template <class Combine>
std::vector<std::uint64_t> span_table(const Pda& p, const InputWord& w, std::uint64_t pop_mask, unsigned classes, Combine combine) {
    std::size_t n = w.size(), G = p.stack_symbols.size();
    std::vector<std::uint64_t> t((n + 1) * (n + 1) * G, 0);
    auto at = [&](std::size_t i, std::size_t j, StackId g) -> std::uint64_t& { return t[(i * (n + 1) + j) * G + g]; };
    for (std::size_t len = 0; len <= n; ++len) {
        for (std::size_t i = 0; i + len <= n; ++i) {
            std::size_t j = i + len;
            for (bool changed = true; changed;) {
                changed = false;
                for (const auto& a : p.actions) {
                    std::size_t s = i;
                    if (a.read != kEpsilon) {
                        if (i >= j || w[i] != a.read) continue;
                        s = i + 1;
                    }
                    std::uint64_t add = 0;
                    if (a.is_pop()) {
                        if (s == j) add = pop_mask;
                    } else {
                        for (std::size_t m = s; m <= j; ++m) {
                            std::uint64_t c1 = at(s, m, a.push[0]), c2 = at(m, j, a.push[1]);
                            if (!c1 || !c2) continue;
                            for (unsigned x = 0; x < classes; ++x) {
                                if (!(c1 >> x & 1u)) continue;
                                for (unsigned y = 0; y < classes; ++y)
                                    if (c2 >> y & 1u) add |= combine(x, y);
                            }
                        }
                    }
                    auto& cell = at(i, j, a.pop);
                    if ((cell | add) != cell) {
                        cell |= add;
                        changed = true;
                    }
                }
            }
        }
    }
    return t;
}

// Class index for (o, H): 2o for H = o, 2o − 1 for H = o − 1.
inline unsigned osc_class(unsigned o, unsigned h) { return h == o ? 2 * o : 2 * o - 1; }
inline std::pair<unsigned, unsigned> osc_of(unsigned c) { return c % 2 == 0 ? std::pair{c / 2, c / 2} : std::pair{(c + 1) / 2, (c - 1) / 2}; }

} // namespace detail

// Plain membership for a reduced PDA (ε-moves allowed).
inline bool reduced_accepts(const Pda& p, const InputWord& w) {
    detail::require_reduced(p, "reduced_accepts");
    auto t = detail::span_table(p, w, 1, 1, [](unsigned, unsigned) -> std::uint64_t { return 1; });
    std::size_t n = w.size();
    return t[(0 * (n + 1) + n) * p.stack_symbols.size() + p.start_stack] & 1u;
}

// Oscillation values (≤ max_k) achieved by runs of the reduced PDA p on w.
inline std::set<unsigned> oscillations_on(const Pda& p, const InputWord& w, unsigned max_k) {
    detail::require_reduced(p, "k_membership");
    if (2 * max_k + 1 > 64) throw BoundExceeded("k_membership supports k ≤ 31");
    unsigned classes = 2 * max_k + 1;
    auto t = detail::span_table(p, w, 1, classes, [&](unsigned x, unsigned y) -> std::uint64_t {
        auto [o1, h1] = detail::osc_of(x);
        (void)h1;
        auto [o2, h2] = detail::osc_of(y);
        auto [o, h] = compose_osc(o1, o2, h2);
        if (o > max_k) return 0;
        return std::uint64_t{1} << detail::osc_class(o, h);
    });
    std::size_t n = w.size();
    std::uint64_t cell = t[(0 * (n + 1) + n) * p.stack_symbols.size() + p.start_stack];
    std::set<unsigned> out;
    for (unsigned c = 0; c < classes; ++c)
        if (cell >> c & 1u) out.insert(detail::osc_of(c).first);
    return out;
}

// True iff w has a run of oscillation exactly k in the reduced PDA p.
inline bool k_membership(const Pda& p, unsigned k, const InputWord& w) { return oscillations_on(p, w, k).count(k) > 0; }

// ---- witnesses ------------------------------------------------------------------

struct Witness {
    InputWord word;
    QuasiRun run;
    DyckWord footprint;
    unsigned oscillation;
};

// Builds a run of oscillation k from the fixpoint and re-checks it by replay.
inline std::optional<Witness> k_emptiness_witness(const Pda& p, unsigned k) {
    ExactEmptiness e(p, k);
    auto acts = e.witness();
    if (!acts) return std::nullopt;
    InputWord w;
    for (auto i : *acts)
        if (p.actions[i].read != kEpsilon) w.push_back(p.actions[i].read);
    auto run = build_run(p, w, *acts);
    if (!run.ids.back().tape.empty() || !is_quasi_run(run)) throw Error("internal: witness does not replay to a run");
    auto fp = run_footprint(run);
    return Witness{w, run, fp, rank(fp)};
}

// ---- PATH ---------------------------------------------------------------------

struct Graph {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t source = 0;
    std::size_t target = 0;

    std::size_t node(std::string_view n) { return Pda::intern(nodes, n); }
};

inline bool reachable(const Graph& g) {
    std::vector<char> seen(g.nodes.size(), 0);
    std::deque<std::size_t> todo{g.source};
    seen[g.source] = 1;
    while (!todo.empty()) {
        auto v = todo.front();
        todo.pop_front();
        if (v == g.target) return true;
        for (auto [a, b] : g.edges)
            if (a == v && !seen[b]) {
                seen[b] = 1;
                todo.push_back(b);
            }
    }
    return false;
}

// One state; stack symbols are nodes; an edge (u,v) replaces u by v and t pops.
inline Pda path_to_pda(const Graph& g) {
    Pda p;
    p.state("q");
    for (const auto& v : g.nodes) p.symbol(v);
    p.start_stack = static_cast<StackId>(g.source);
    for (auto [a, b] : g.edges) p.actions.push_back({0, kEpsilon, static_cast<StackId>(a), 0, {static_cast<StackId>(b)}});
    p.actions.push_back({0, kEpsilon, static_cast<StackId>(g.target), 0, {}});
    return p;
}

inline Graph parse_graph(std::string_view text) {
    Graph g;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::string> s, t;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        auto ws = detail::words_of(line);
        if (ws.empty()) continue;
        if (ws[0] == "@source" || ws[0] == "@target") {
            if (ws.size() != 2) throw ParseError(ws[0] + " takes exactly one node", line_no);
            (ws[0] == "@source" ? s : t) = ws[1];
            g.node(ws[1]);
            continue;
        }
        if (ws.size() != 3 || ws[1] != "->") throw ParseError("expected 'u -> v'", line_no);
        g.edges.emplace_back(g.node(ws[0]), g.node(ws[2]));
    }
    if (!s || !t) throw ParseError("graph needs @source and @target", line_no + 1);
    g.source = g.node(*s);
    g.target = g.node(*t);
    return g;
}

inline std::string format_graph(const Graph& g) {
    std::string out = "@source " + g.nodes[g.source] + "\n@target " + g.nodes[g.target] + "\n";
    for (auto [a, b] : g.edges) out += g.nodes[a] + " -> " + g.nodes[b] + "\n";
    return out;
}

// ---- stack height ---------------------------------------------------------------

struct HeightReport {
    std::optional<std::size_t> height; // nullopt: no runs
    bool bound_hit = false;
};

inline HeightReport max_stack_height(const Pda& p, const InputWord& w, std::size_t max_moves) {
    HeightReport r;
    r.bound_hit = for_each_run(p, w, {max_moves, 0}, [&](const RunView& v) {
        r.height = std::max(r.height.value_or(0), v.max_height);
    });
    return r;
}

} // namespace bosc

#endif
