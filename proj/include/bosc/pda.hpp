#ifndef BOSC_PDA_HPP
#define BOSC_PDA_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bosc/dyck.hpp"
#include "bosc/error.hpp"
#include "bosc/grammars.hpp"

namespace bosc {

using StateId = std::uint32_t;
using InputId = std::uint32_t;
using StackId = std::uint32_t;

inline constexpr InputId kEpsilon = std::numeric_limits<InputId>::max();

struct Action {
    StateId from = 0;
    InputId read = kEpsilon;
    StackId pop = 0;
    StateId to = 0;
    std::vector<StackId> push; // push[0] becomes the new top

    bool is_pop() const noexcept { return push.empty(); }

    friend bool operator==(const Action&, const Action&) = default;
    friend auto operator<=>(const Action&, const Action&) = default;
};

// Symbols are interned: actions refer to indices into the name tables.
struct Pda {
    std::vector<std::string> states;
    std::vector<std::string> inputs;
    std::vector<std::string> stack_symbols;
    std::vector<Action> actions;
    StateId start_state = 0;
    StackId start_stack = 0;

    static std::optional<std::uint32_t> find(const std::vector<std::string>& names, std::string_view n) {
        auto it = std::find(names.begin(), names.end(), n);
        if (it == names.end()) return std::nullopt;
        return static_cast<std::uint32_t>(it - names.begin());
    }
    static std::uint32_t intern(std::vector<std::string>& names, std::string_view n) {
        if (auto i = find(names, n)) return *i;
        names.emplace_back(n);
        return static_cast<std::uint32_t>(names.size() - 1);
    }

    StateId state(std::string_view n) { return intern(states, n); }
    InputId input(std::string_view n) { return (n.empty() || n == "_") ? kEpsilon : intern(inputs, n); }
    StackId symbol(std::string_view n) { return intern(stack_symbols, n); }

    // Convenience for hand-written fixtures; "" or "_" reads nothing.
    Pda& add(std::string_view from, std::string_view read, std::string_view pop, std::string_view to,
             std::initializer_list<std::string_view> push = {}) {
        Action a{state(from), input(read), symbol(pop), state(to), {}};
        for (auto s : push) a.push.push_back(symbol(s));
        actions.push_back(std::move(a));
        return *this;
    }

    std::string input_name(InputId i) const { return i == kEpsilon ? "_" : inputs[i]; }

    std::string action_str(const Action& a) const {
        std::string out = "(" + states[a.from] + ", " + (a.read == kEpsilon ? "\xCE\xB5" : inputs[a.read]) + ", " +
                          stack_symbols[a.pop] + ") -> (" + states[a.to] + ", ";
        if (a.push.empty()) out += "\xCE\xB5";
        for (std::size_t i = 0; i < a.push.size(); ++i) out += (i ? " " : "") + stack_symbols[a.push[i]];
        return out + ")";
    }

    friend bool operator==(const Pda&, const Pda&) = default;
};

using InputWord = std::vector<InputId>;

inline InputWord encode_word(const Pda& p, const Word& w) {
    InputWord out;
    for (const auto& s : w) {
        auto id = Pda::find(p.inputs, s);
        if (!id) throw Error("symbol '" + s + "' is not in the input alphabet");
        out.push_back(*id);
    }
    return out;
}

inline Word decode_word(const Pda& p, const InputWord& w) {
    Word out;
    for (auto i : w) out.push_back(p.inputs[i]);
    return out;
}

inline std::set<std::string> input_alphabet(const Pda& p) { return {p.inputs.begin(), p.inputs.end()}; }

// ---- IDs, moves, quasi-runs -------------------------------------------------

struct Id {
    StateId state = 0;
    InputWord tape;              // remaining input
    std::vector<StackId> stack;  // stack[0] is the top
    friend bool operator==(const Id&, const Id&) = default;
};

inline Id initial_id(const Pda& p, InputWord w) { return {p.start_state, std::move(w), {p.start_stack}}; }

inline bool applicable(const Id& id, const Action& a) {
    return a.from == id.state && !id.stack.empty() && id.stack.front() == a.pop &&
           (a.read == kEpsilon || (!id.tape.empty() && id.tape.front() == a.read));
}

inline Id move(const Id& id, const Action& a) {
    if (!applicable(id, a)) throw InapplicableAction("action does not apply to the descriptor");
    Id next;
    next.state = a.to;
    next.tape.assign(id.tape.begin() + (a.read == kEpsilon ? 0 : 1), id.tape.end());
    next.stack = a.push;
    next.stack.insert(next.stack.end(), id.stack.begin() + 1, id.stack.end());
    return next;
}

struct QuasiRun {
    std::vector<Id> ids;
    std::vector<Action> actions;
    std::size_t moves() const noexcept { return actions.size(); }
};

// Replays actions from `start`; throws InapplicableAction if any step fails.
inline QuasiRun replay(Id start, const std::vector<Action>& actions) {
    QuasiRun r;
    r.ids.push_back(std::move(start));
    for (const auto& a : actions) {
        r.ids.push_back(move(r.ids.back(), a));
        r.actions.push_back(a);
    }
    return r;
}

inline bool is_quasi_run(const QuasiRun& r) {
    if (r.ids.size() != r.actions.size() + 1 || r.actions.empty()) return false;
    if (r.ids.front().stack.size() != 1 || !r.ids.back().stack.empty()) return false;
    for (std::size_t i = 0; i < r.actions.size(); ++i) {
        if (!applicable(r.ids[i], r.actions[i]) || move(r.ids[i], r.actions[i]) != r.ids[i + 1]) return false;
        if (i + 1 < r.actions.size() && r.ids[i + 1].stack.empty()) return false;
    }
    return true;
}

// I/I': drop the bottom `depth` stack symbols.
inline Id quotient(const Id& id, std::size_t depth) {
    Id q = id;
    q.stack.resize(q.stack.size() - depth);
    return q;
}

struct Disassembly {
    Action first_action;
    Id first_from;
    Id first_to;
    std::vector<QuasiRun> parts;
    std::vector<std::size_t> split_positions; // p_1..p_d, indices into the original ids
};

inline Disassembly disassemble(const QuasiRun& r) {
    if (r.moves() <= 1) throw TooShort("disassembly needs a quasi-run with more than one move");
    Disassembly out{r.actions[0], r.ids[0], r.ids[1], {}, {}};
    std::size_t d = r.ids[1].stack.size();
    std::size_t prev = 1;
    for (std::size_t i = 1; i <= d; ++i) {
        std::size_t target = r.ids[prev].stack.size() - 1;
        std::size_t p = prev + 1;
        while (r.ids[p].stack.size() != target) ++p;
        QuasiRun part;
        for (std::size_t j = prev; j <= p; ++j) part.ids.push_back(quotient(r.ids[j], target));
        part.actions.assign(r.actions.begin() + static_cast<std::ptrdiff_t>(prev), r.actions.begin() + static_cast<std::ptrdiff_t>(p));
        out.parts.push_back(std::move(part));
        out.split_positions.push_back(p);
        prev = p;
    }
    return out;
}

inline QuasiRun reassemble(const Disassembly& d) {
    QuasiRun r;
    r.ids.push_back(d.first_from);
    r.actions.push_back(d.first_action);
    const auto& pushed = d.first_to.stack;
    for (std::size_t i = 0; i < d.parts.size(); ++i) {
        const auto& part = d.parts[i];
        std::vector<StackId> below(pushed.begin() + static_cast<std::ptrdiff_t>(i) + 1, pushed.end());
        for (std::size_t j = 0; j < part.ids.size(); ++j) {
            if (j == 0 && i > 0) continue;
            Id id = part.ids[j];
            id.stack.insert(id.stack.end(), below.begin(), below.end());
            r.ids.push_back(std::move(id));
        }
        r.actions.insert(r.actions.end(), part.actions.begin(), part.actions.end());
    }
    return r;
}

namespace detail {
inline void run_footprint_tail(const QuasiRun& r, std::vector<DyckSymbol>& out) {
    out.push_back(DyckSymbol::Close);
    if (r.moves() == 1) return;
    auto d = disassemble(r);
    out.insert(out.end(), d.parts.size(), DyckSymbol::Open);
    for (const auto& part : d.parts) run_footprint_tail(part, out);
}
} // namespace detail

// ā followed by α'(r), where α'(r) = a for one move and a ā^d α'(r1)…α'(rd) otherwise.
inline DyckWord run_footprint(const QuasiRun& r) {
    std::vector<DyckSymbol> out{DyckSymbol::Open};
    detail::run_footprint_tail(r, out);
    return *DyckWord::from_symbols(std::move(out));
}

// Same word, read directly off the push lengths: every move contributes a ā^|push|.
inline DyckWord footprint_of_moves(const std::vector<std::size_t>& push_lengths) {
    std::vector<DyckSymbol> out{DyckSymbol::Open};
    for (auto n : push_lengths) {
        out.push_back(DyckSymbol::Close);
        out.insert(out.end(), n, DyckSymbol::Open);
    }
    auto w = DyckWord::from_symbols(std::move(out));
    if (!w) throw Error("push lengths do not describe a quasi-run");
    return *w;
}

inline unsigned run_oscillation(const QuasiRun& r) { return rank(run_footprint(r)); }

inline std::size_t max_height(const QuasiRun& r) {
    std::size_t h = 0;
    for (const auto& id : r.ids) h = std::max(h, id.stack.size());
    return h;
}

// ---- bounded run search -----------------------------------------------------

struct SearchBounds {
    std::size_t max_moves = 64;
    std::size_t max_stack = 0; // 0 means 2|w| + 8
};

struct RunView {
    const std::vector<std::size_t>& action_indices; // into Pda::actions
    const InputWord& word;
    std::size_t max_height;
};

namespace detail {

inline constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;

// State-agnostic lower bounds on moves and input needed to empty a symbol.
struct SymbolBounds {
    std::vector<std::size_t> moves, reads;
};

inline SymbolBounds symbol_bounds(const Pda& p) {
    SymbolBounds b{std::vector<std::size_t>(p.stack_symbols.size(), kInf), std::vector<std::size_t>(p.stack_symbols.size(), kInf)};
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& a : p.actions) {
            std::size_t m = 1, r = a.read == kEpsilon ? 0 : 1;
            for (auto s : a.push) {
                m = std::min(kInf, m + b.moves[s]);
                r = std::min(kInf, r + b.reads[s]);
            }
            if (m < b.moves[a.pop]) { b.moves[a.pop] = m; changed = true; }
            if (r < b.reads[a.pop]) { b.reads[a.pop] = r; changed = true; }
        }
    }
    return b;
}

class RunSearch {
public:
    using Visitor = std::function<void(const RunView&)>;

    RunSearch(const Pda& p, std::size_t max_moves, std::size_t max_stack)
        : p_(p), bounds_(symbol_bounds(p)), max_moves_(max_moves), max_stack_(max_stack),
          by_state_(p.states.size()) {
        for (std::size_t i = 0; i < p.actions.size(); ++i) by_state_[p.actions[i].from].push_back(i);
    }

    // Runs on exactly `w`.
    bool fixed(const InputWord& w, const Visitor& v) {
        word_ = w;
        fixed_ = true;
        max_len_ = w.size();
        return start(v);
    }

    // Runs on every word of length ≤ max_len (words are built as input is read).
    bool all_words(std::size_t max_len, const Visitor& v) {
        word_.clear();
        fixed_ = false;
        max_len_ = max_len;
        return start(v);
    }

private:
    bool start(const Visitor& v) {
        visit_ = &v;
        bound_hit_ = false;
        stack_.assign(1, p_.start_stack);
        need_moves_ = bounds_.moves[p_.start_stack];
        need_reads_ = bounds_.reads[p_.start_stack];
        path_.clear();
        heights_.assign(1, 1);
        pos_ = 0;
        dfs(p_.start_state);
        return bound_hit_;
    }

    void dfs(StateId q) {
        if (stack_.empty()) {
            if (!fixed_ || pos_ == word_.size()) (*visit_)(RunView{path_, word_, heights_.back()});
            return;
        }
        std::size_t remaining_input = max_len_ - pos_;
        if (need_reads_ > remaining_input) return;
        if (path_.size() + need_moves_ > max_moves_) { bound_hit_ = true; return; }
        StackId top = stack_.back();
        for (auto ai : by_state_[q]) {
            const auto& a = p_.actions[ai];
            if (a.pop != top) continue;
            bool reads = a.read != kEpsilon;
            if (reads) {
                if (pos_ >= max_len_) continue;
                if (fixed_ && word_[pos_] != a.read) continue;
            }
            if (stack_.size() - 1 + a.push.size() > max_stack_) { bound_hit_ = true; continue; }
            // apply
            stack_.pop_back();
            std::size_t saved_moves = need_moves_, saved_reads = need_reads_;
            need_moves_ -= bounds_.moves[top];
            need_reads_ -= bounds_.reads[top];
            bool dead = false;
            for (auto it = a.push.rbegin(); it != a.push.rend(); ++it) {
                stack_.push_back(*it);
                if (bounds_.moves[*it] >= kInf) dead = true;
                need_moves_ = std::min(kInf, need_moves_ + bounds_.moves[*it]);
                need_reads_ = std::min(kInf, need_reads_ + bounds_.reads[*it]);
            }
            if (!dead) {
                if (reads) {
                    if (!fixed_) word_.push_back(a.read);
                    ++pos_;
                }
                path_.push_back(ai);
                heights_.push_back(std::max(heights_.back(), stack_.size()));
                dfs(a.to);
                heights_.pop_back();
                path_.pop_back();
                if (reads) {
                    --pos_;
                    if (!fixed_) word_.pop_back();
                }
            }
            stack_.resize(stack_.size() - a.push.size());
            stack_.push_back(top);
            need_moves_ = saved_moves;
            need_reads_ = saved_reads;
        }
    }

    const Pda& p_;
    SymbolBounds bounds_;
    std::size_t max_moves_, max_stack_;
    std::vector<std::vector<std::size_t>> by_state_;
    const Visitor* visit_ = nullptr;
    InputWord word_;
    bool fixed_ = true;
    std::size_t max_len_ = 0, pos_ = 0;
    std::vector<StackId> stack_; // top at back
    std::size_t need_moves_ = 0, need_reads_ = 0;
    std::vector<std::size_t> path_, heights_;
    bool bound_hit_ = false;
};

} // namespace detail

// Calls v for every run on w within the bounds; returns true if a bound cut the search.
inline bool for_each_run(const Pda& p, const InputWord& w, SearchBounds b, const std::function<void(const RunView&)>& v) {
    if (b.max_moves == 0) throw Error("max_moves must be at least 1");
    std::size_t max_stack = b.max_stack ? b.max_stack : 2 * w.size() + 8;
    return detail::RunSearch(p, b.max_moves, max_stack).fixed(w, v);
}

// Same, over all input words of length ≤ max_len at once.
inline bool for_each_run_up_to(const Pda& p, std::size_t max_len, SearchBounds b, const std::function<void(const RunView&)>& v) {
    if (b.max_moves == 0) throw Error("max_moves must be at least 1");
    std::size_t max_stack = b.max_stack ? b.max_stack : 2 * max_len + 8;
    return detail::RunSearch(p, b.max_moves, max_stack).all_words(max_len, v);
}

inline std::vector<std::size_t> push_lengths(const Pda& p, const std::vector<std::size_t>& action_indices) {
    std::vector<std::size_t> out;
    for (auto i : action_indices) out.push_back(p.actions[i].push.size());
    return out;
}

inline QuasiRun build_run(const Pda& p, const InputWord& w, const std::vector<std::size_t>& action_indices) {
    std::vector<Action> acts;
    for (auto i : action_indices) acts.push_back(p.actions[i]);
    return replay(initial_id(p, w), acts);
}

struct RunSet {
    std::vector<QuasiRun> runs;
    bool bound_hit = false;
};

// All runs on w with at most max_moves moves and stack depth at most max_stack (default 2|w| + 8).
inline RunSet enumerate_runs(const Pda& p, const InputWord& w, std::size_t max_moves, std::size_t max_stack = 0) {
    RunSet out;
    out.bound_hit = for_each_run(p, w, {max_moves, max_stack}, [&](const RunView& v) {
        out.runs.push_back(build_run(p, w, v.action_indices));
    });
    return out;
}

// ---- constructions ----------------------------------------------------------

namespace detail {
inline std::string fresh(const std::vector<std::string>& taken, std::string base) {
    while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += '\'';
    return base;
}
} // namespace detail

// One state q; stack alphabet V ∪ Σ ∪ {e}.
inline Pda cfg_to_pda(const Grammar& g) {
    Pda p;
    p.state("q");
    for (const auto& t : g.terminals) p.input(t);
    p.start_stack = p.symbol(g.start);
    for (const auto& v : g.variables) p.symbol(v);
    for (const auto& t : g.terminals) p.symbol(t);
    std::vector<std::string> taken(g.variables.begin(), g.variables.end());
    taken.insert(taken.end(), g.terminals.begin(), g.terminals.end());
    StackId e = p.symbol(detail::fresh(taken, "e"));
    for (const auto& r : g.rules) {
        Action a{0, kEpsilon, p.symbol(r.lhs), 0, {}};
        if (r.rhs.empty()) a.push = {e};
        for (const auto& s : r.rhs) a.push.push_back(p.symbol(s));
        p.actions.push_back(std::move(a));
    }
    for (const auto& t : g.terminals) p.actions.push_back({0, p.input(t), p.symbol(t), 0, {}});
    p.actions.push_back({0, kEpsilon, e, 0, {}});
    return p;
}

// Every action afterwards pops one symbol and pushes 0 or 2.
inline Pda split_actions(const Pda& in) {
    Pda p = in;
    p.actions.clear();
    std::optional<StackId> dummy;
    std::set<StateId> dummy_pop_states;
    for (std::size_t i = 0; i < in.actions.size(); ++i) {
        Action a = in.actions[i];
        if (a.push.empty() || a.push.size() == 2) { p.actions.push_back(a); continue; }
        if (a.push.size() == 1) {
            if (!dummy) dummy = p.symbol(detail::fresh(p.stack_symbols, "D"));
            a.push.insert(a.push.begin(), *dummy);
            p.actions.push_back(a);
            dummy_pop_states.insert(a.to);
            continue;
        }
        // (p,b,γ) ↪ (q, ξ1…ξn) becomes (p,ε,γ) ↪ (p1, ξ' ξn) and (p1,b,ξ') ↪ (q, ξ1…ξn−1), repeated.
        for (std::size_t j = 1; a.push.size() > 2; ++j) {
            std::string tag = "~" + std::to_string(i) + "." + std::to_string(j);
            StateId mid = p.state(detail::fresh(p.states, in.states[in.actions[i].from] + tag));
            StackId xi = p.symbol(detail::fresh(p.stack_symbols, in.stack_symbols[in.actions[i].pop] + tag));
            p.actions.push_back({a.from, kEpsilon, a.pop, mid, {xi, a.push.back()}});
            a.push.pop_back();
            a.from = mid;
            a.pop = xi;
        }
        p.actions.push_back(a);
    }
    for (auto q : dummy_pop_states) p.actions.push_back({q, kEpsilon, *dummy, q, {}});
    return p;
}

inline bool is_reduced(const Pda& p) {
    if (p.states.size() != 1) return false;
    return std::all_of(p.actions.begin(), p.actions.end(), [](const Action& a) { return a.push.empty() || a.push.size() == 2; });
}

// Folds states into triple symbols [p|γ|r]: "from p, γ is emptied ending in r".
inline Pda to_reduced(const Pda& in) {
    for (const auto& a : in.actions)
        if (!(a.push.empty() || a.push.size() == 2))
            throw NotReduced("to_reduced needs every action to pop or push exactly two symbols: " + in.action_str(a));
    Pda p;
    p.inputs = in.inputs;
    std::string qname = in.states.size() == 1 ? in.states[0] : "q";
    p.state(qname);
    std::size_t Q = in.states.size();
    auto triple = [&](StateId a, StackId g, StateId b) {
        return p.symbol("[" + in.states[a] + "|" + in.stack_symbols[g] + "|" + in.states[b] + "]");
    };
    std::optional<StackId> fresh_start;
    if (Q == 1) p.start_stack = triple(in.start_state, in.start_stack, in.start_state);
    else {
        fresh_start = p.symbol("[" + in.states[in.start_state] + "|" + in.stack_symbols[in.start_stack] + "|*]");
        p.start_stack = *fresh_start;
    }
    std::vector<Action> out;
    for (const auto& a : in.actions) {
        if (a.push.empty()) {
            out.push_back({0, a.read, triple(a.from, a.pop, a.to), 0, {}});
            continue;
        }
        for (StateId r = 0; r < Q; ++r)
            for (StateId s = 0; s < Q; ++s)
                out.push_back({0, a.read, triple(a.from, a.pop, r), 0, {triple(a.to, a.push[0], s), triple(s, a.push[1], r)}});
    }
    if (fresh_start) {
        std::vector<Action> copies;
        for (const auto& a : out) {
            for (StateId r = 0; r < Q; ++r) {
                auto src = Pda::find(p.stack_symbols, "[" + in.states[in.start_state] + "|" + in.stack_symbols[in.start_stack] + "|" + in.states[r] + "]");
                if (src && a.pop == *src) {
                    Action c = a;
                    c.pop = *fresh_start;
                    copies.push_back(std::move(c));
                }
            }
        }
        out.insert(out.end(), copies.begin(), copies.end());
    }
    p.actions = std::move(out);
    return p;
}

inline Pda reduce_pipeline(const Pda& p) { return to_reduced(split_actions(p)); }

// Reduced form is returned unchanged; anything else goes through the pipeline.
inline Pda ensure_reduced(const Pda& p) { return is_reduced(p) ? p : reduce_pipeline(p); }

// ---- text format --------------------------------------------------------------
//   @start q0
//   @stack G0
//   q0, a, G0 -> q1, G G      (ε is written _)

inline std::string format_pda(const Pda& p) {
    auto list = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) s += " " + x;
        return s;
    };
    std::string out;
    out += "@start " + p.states[p.start_state] + "\n";
    out += "@stack " + p.stack_symbols[p.start_stack] + "\n";
    out += "@states" + list(p.states) + "\n";
    if (!p.inputs.empty()) out += "@input" + list(p.inputs) + "\n";
    out += "@symbols" + list(p.stack_symbols) + "\n";
    for (const auto& a : p.actions) {
        out += p.states[a.from] + ", " + p.input_name(a.read) + ", " + p.stack_symbols[a.pop] + " -> " + p.states[a.to] + ",";
        if (a.push.empty()) out += " _";
        for (auto s : a.push) out += " " + p.stack_symbols[s];
        out += "\n";
    }
    return out;
}

namespace detail {
inline std::string trim_ws(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> words_of(std::string_view s) {
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}
} // namespace detail

inline Pda parse_pda(std::string_view text) {
    Pda p;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::string> start, stack;
    std::set<Action> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        auto body = detail::trim_ws(line);
        if (body.empty()) continue;
        if (body[0] == '@') {
            auto ws = detail::words_of(body);
            const auto& key = ws[0];
            std::vector<std::string> args(ws.begin() + 1, ws.end());
            if (key == "@start" || key == "@stack") {
                if (args.size() != 1) throw ParseError(key + " takes exactly one name", line_no);
                (key == "@start" ? start : stack) = args[0];
            } else if (key == "@states") for (auto& s : args) p.state(s);
            else if (key == "@input") for (auto& s : args) p.input(s);
            else if (key == "@symbols") for (auto& s : args) p.symbol(s);
            else throw ParseError("unknown header " + key, line_no);
            continue;
        }
        auto arrow = body.find("->");
        if (arrow == std::string::npos) throw ParseError("expected 'state, input, symbol -> state, push'", line_no);
        std::vector<std::string> lhs;
        {
            std::string part;
            std::istringstream ls(body.substr(0, arrow));
            while (std::getline(ls, part, ',')) lhs.push_back(detail::trim_ws(part));
        }
        if (lhs.size() != 3 || lhs[0].empty() || lhs[2].empty())
            throw ParseError("left side needs exactly three fields: state, input, symbol", line_no);
        auto rhs = body.substr(arrow + 2);
        auto comma = rhs.find(',');
        std::string to = detail::trim_ws(comma == std::string::npos ? std::string_view(rhs) : std::string_view(rhs).substr(0, comma));
        if (to.empty() || to.find(' ') != std::string::npos) throw ParseError("right side must start with a target state", line_no);
        auto push = comma == std::string::npos ? std::vector<std::string>{} : detail::words_of(rhs.substr(comma + 1));
        if (push.size() == 1 && push[0] == "_") push.clear();
        for (const auto& s : push)
            if (s == "_") throw ParseError("'_' must stand alone in the pushed word", line_no);
        if (lhs[0].find(' ') != std::string::npos || lhs[1].find(' ') != std::string::npos || lhs[2].find(' ') != std::string::npos)
            throw ParseError("names may not contain spaces", line_no);
        Action a{p.state(lhs[0]), p.input(lhs[1]), p.symbol(lhs[2]), p.state(to), {}};
        for (const auto& s : push) a.push.push_back(p.symbol(s));
        if (seen.insert(a).second) p.actions.push_back(std::move(a));
    }
    if (!start) {
        if (p.actions.empty() && p.states.empty()) throw ParseError("PDA has neither actions nor @start", line_no + 1);
        start = p.actions.empty() ? p.states[0] : p.states[p.actions[0].from];
    }
    if (!stack) {
        if (p.actions.empty() && p.stack_symbols.empty()) throw ParseError("PDA has neither actions nor @stack", line_no + 1);
        stack = p.actions.empty() ? p.stack_symbols[0] : p.stack_symbols[p.actions[0].pop];
    }
    p.start_state = p.state(*start);
    p.start_stack = p.symbol(*stack);
    return p;
}

} // namespace bosc

#endif
