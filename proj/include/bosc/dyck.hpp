#ifndef BOSC_DYCK_HPP
#define BOSC_DYCK_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bosc/error.hpp"

namespace bosc {

// Open is written ā (or '('), Close is written a (or ')').
enum class DyckSymbol : std::uint8_t { Open, Close };

inline bool is_dyck(std::span<const DyckSymbol> s) {
    std::ptrdiff_t depth = 0;
    for (auto c : s) {
        depth += c == DyckSymbol::Open ? 1 : -1;
        if (depth < 0) return false;
    }
    return depth == 0;
}

class DyckWord {
public:
    DyckWord() = default;

    static std::optional<DyckWord> from_symbols(std::vector<DyckSymbol> s) {
        if (!is_dyck(s)) return std::nullopt;
        DyckWord w;
        w.symbols_ = std::move(s);
        return w;
    }

    // Accepts '(' ')' and the letter forms 'ā' 'a'; whitespace is ignored.
    static DyckWord parse(std::string_view text) {
        std::vector<DyckSymbol> s;
        std::ptrdiff_t depth = 0;
        std::size_t pos = 0;
        for (std::size_t i = 0; i < text.size();) {
            ++pos;
            unsigned char c = static_cast<unsigned char>(text[i]);
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') { ++i; continue; }
            DyckSymbol sym;
            if (c == '(') { sym = DyckSymbol::Open; ++i; }
            else if (c == ')' || c == 'a') { sym = DyckSymbol::Close; ++i; }
            else if (text.substr(i, 2) == "\xC4\x81") { sym = DyckSymbol::Open; i += 2; }
            else throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "' in Dyck word", pos);
            depth += sym == DyckSymbol::Open ? 1 : -1;
            if (depth < 0) throw ParseError("unmatched closing symbol", pos);
            s.push_back(sym);
        }
        if (depth != 0) throw ParseError("unbalanced Dyck word: " + std::to_string(depth) + " open symbol(s) never closed", pos + 1);
        DyckWord w;
        w.symbols_ = std::move(s);
        return w;
    }

    std::string str() const {
        std::string out;
        out.reserve(symbols_.size());
        for (auto c : symbols_) out += c == DyckSymbol::Open ? '(' : ')';
        return out;
    }

    std::string letters() const {
        std::string out;
        for (auto c : symbols_) out += c == DyckSymbol::Open ? "\xC4\x81" : "a";
        return out;
    }

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    DyckSymbol operator[](std::size_t i) const { return symbols_[i]; }
    auto begin() const { return symbols_.begin(); }
    auto end() const { return symbols_.end(); }
    const std::vector<DyckSymbol>& symbols() const noexcept { return symbols_; }

    // (w), i.e. ā w a.
    DyckWord wrapped() const {
        DyckWord w;
        w.symbols_.reserve(size() + 2);
        w.symbols_.push_back(DyckSymbol::Open);
        w.symbols_.insert(w.symbols_.end(), symbols_.begin(), symbols_.end());
        w.symbols_.push_back(DyckSymbol::Close);
        return w;
    }

    DyckWord& operator+=(const DyckWord& o) {
        symbols_.insert(symbols_.end(), o.symbols_.begin(), o.symbols_.end());
        return *this;
    }
    friend DyckWord operator+(DyckWord a, const DyckWord& b) { return a += b; }

    friend bool operator==(const DyckWord&, const DyckWord&) = default;
    friend auto operator<=>(const DyckWord&, const DyckWord&) = default;

private:
    std::vector<DyckSymbol> symbols_;
};

struct MatchingPair {
    std::size_t open;  // 1-based
    std::size_t close; // 1-based
    friend bool operator==(const MatchingPair&, const MatchingPair&) = default;
    friend auto operator<=>(const MatchingPair&, const MatchingPair&) = default;
};
using MatchingPairs = std::vector<MatchingPair>;

// Sorted by opening position.
inline MatchingPairs matching_pairs(const DyckWord& w) {
    MatchingPairs out(w.size() / 2);
    std::vector<std::size_t> open, slot;
    std::size_t next = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == DyckSymbol::Open) {
            open.push_back(i + 1);
            slot.push_back(next++);
        } else {
            out[slot.back()] = {open.back(), i + 1};
            open.pop_back();
            slot.pop_back();
        }
    }
    return out;
}

inline std::string format_pairs(const MatchingPairs& ps) {
    std::string out;
    for (const auto& p : ps) {
        if (!out.empty()) out += ' ';
        out += std::to_string(p.open) + "-" + std::to_string(p.close);
    }
    return out;
}

// Position (0-based) of the partner of every symbol.
inline std::vector<std::size_t> partners(const DyckWord& w) {
    std::vector<std::size_t> m(w.size()), st;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == DyckSymbol::Open) st.push_back(i);
        else { m[i] = st.back(); m[st.back()] = i; st.pop_back(); }
    }
    return m;
}

namespace detail {

// Ordered forest inclusion. Left-greedy: each tree of the small forest goes to the
// node of the big forest with the leftmost closing position that can host it.
class Embedder {
public:
    Embedder(const DyckWord& small, const DyckWord& big)
        : a_(small), b_(big), pa_(partners(small)), pb_(partners(big)),
          memo_(small.size() * big.size(), -1) {}

    bool run() { return forest(0, a_.size(), 0, b_.size()); }

private:
    // Trees of a in [as, ae) into nodes of b fully inside [bs, be).
    bool forest(std::size_t as, std::size_t ae, std::size_t bs, std::size_t be) {
        std::size_t cur = bs;
        for (std::size_t u = as; u < ae; u = pa_[u] + 1) {
            bool placed = false;
            for (std::size_t c = cur; c < be; ++c) {
                if (b_[c] != DyckSymbol::Close || pb_[c] < cur) continue;
                if (node(u, pb_[c])) { cur = c + 1; placed = true; break; }
            }
            if (!placed) return false;
        }
        return true;
    }

    bool node(std::size_t u, std::size_t x) {
        auto& m = memo_[u * b_.size() + x];
        if (m < 0) m = forest(u + 1, pa_[u], x + 1, pb_[x]) ? 1 : 0;
        return m == 1;
    }

    const DyckWord& a_;
    const DyckWord& b_;
    std::vector<std::size_t> pa_, pb_;
    std::vector<signed char> memo_;
};

inline std::vector<DyckSymbol> delete_pair(const std::vector<DyckSymbol>& s, std::size_t i, std::size_t j) {
    std::vector<DyckSymbol> out;
    out.reserve(s.size() - 2);
    for (std::size_t k = 0; k < s.size(); ++k)
        if (k != i && k != j) out.push_back(s[k]);
    return out;
}

} // namespace detail

// a ⪯ b: a is obtained from b by deleting matching pairs.
inline bool embeds(const DyckWord& a, const DyckWord& b) {
    if (a.size() > b.size()) return false;
    return detail::Embedder(a, b).run();
}

// Every word reachable from b by deleting matching pairs, including b.
inline std::set<DyckWord> deletion_closure(const DyckWord& b, std::size_t max_len = 16) {
    if (b.size() > max_len) throw BoundExceeded("deletion closure limited to words of length " + std::to_string(max_len));
    std::set<DyckWord> seen{b};
    std::deque<DyckWord> todo{b};
    while (!todo.empty()) {
        DyckWord w = std::move(todo.front());
        todo.pop_front();
        auto m = partners(w);
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] != DyckSymbol::Open) continue;
            auto next = *DyckWord::from_symbols(detail::delete_pair(w.symbols(), i, m[i]));
            if (seen.insert(next).second) todo.push_back(std::move(next));
        }
    }
    return seen;
}

inline bool embeds_oracle(const DyckWord& a, const DyckWord& b, std::size_t max_len = 16) {
    if (a.size() > b.size()) return false;
    return deletion_closure(b, max_len).count(a) > 0;
}

inline constexpr unsigned kHarmonicCap = 20;

// h0 = ε, h(i+1) = (h(i))(h(i)).
inline DyckWord harmonic(unsigned i, unsigned cap = kHarmonicCap) {
    if (i > cap) throw BoundExceeded("harmonic index " + std::to_string(i) + " exceeds cap " + std::to_string(cap));
    DyckWord h;
    for (unsigned n = 0; n < i; ++n) {
        DyckWord half = h.wrapped();
        h = half + half;
    }
    return h;
}

inline DyckWord hat_harmonic(unsigned i, unsigned cap = kHarmonicCap) {
    return harmonic(i, cap).wrapped();
}

namespace detail {

// Rank of a forest from the ranks of its trees' inner forests.
struct RankAcc {
    int max = -1;
    unsigned count = 0;
    void add(int d) {
        if (d > max) { max = d; count = 1; }
        else if (d == max) ++count;
    }
    unsigned rank() const { return max < 0 ? 0u : static_cast<unsigned>(max) + (count >= 2 ? 1u : 0u); }
};

// Returns {rank, hat_rank}; iterative so deep nesting is safe.
inline std::pair<unsigned, int> ranks(std::span<const DyckSymbol> w) {
    std::vector<RankAcc> st(1);
    for (auto c : w) {
        if (c == DyckSymbol::Open) st.emplace_back();
        else {
            unsigned inner = st.back().rank();
            st.pop_back();
            st.back().add(static_cast<int>(inner));
        }
    }
    return {st.back().rank(), st.back().max};
}

} // namespace detail

// Largest q with h(q) ⪯ w.
inline unsigned rank(const DyckWord& w) { return detail::ranks(w.symbols()).first; }

// Largest q with ĥ(q) ⪯ w, or -1 for the empty word.
inline int hat_rank(const DyckWord& w) { return detail::ranks(w.symbols()).second; }

inline unsigned rank_oracle(const DyckWord& w, std::size_t max_len = 16) {
    auto closure = deletion_closure(w, max_len);
    unsigned q = 0;
    while (harmonic(q + 1).size() <= w.size() && closure.count(harmonic(q + 1))) ++q;
    return q;
}

// All Dyck words with exactly 2n symbols, in lexicographic order ('(' < ')').
inline std::vector<DyckWord> dyck_words_of_length(std::size_t len) {
    std::vector<DyckWord> out;
    if (len % 2) return out;
    std::vector<DyckSymbol> cur;
    auto rec = [&](auto&& self, std::size_t open, std::size_t close) -> void {
        if (cur.size() == len) { out.push_back(*DyckWord::from_symbols(cur)); return; }
        if (open < len / 2) {
            cur.push_back(DyckSymbol::Open);
            self(self, open + 1, close);
            cur.pop_back();
        }
        if (close < open) {
            cur.push_back(DyckSymbol::Close);
            self(self, open, close + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

inline std::vector<DyckWord> dyck_words_up_to(std::size_t max_len) {
    std::vector<DyckWord> out;
    for (std::size_t l = 0; l <= max_len; l += 2) {
        auto ws = dyck_words_of_length(l);
        out.insert(out.end(), ws.begin(), ws.end());
    }
    return out;
}

// Two-row arc rendering of the matching, one arc per pair.
inline std::string arc_diagram(const DyckWord& w) {
    auto m = partners(w);
    std::vector<std::string> rows;
    std::vector<std::size_t> level(w.size(), 0);
    std::size_t depth = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == DyckSymbol::Open) level[i] = depth++;
        else level[i] = --depth;
    }
    std::size_t maxd = 0;
    for (auto l : level) maxd = std::max(maxd, l + 1);
    std::vector<std::string> grid(maxd, std::string(w.size() * 2, ' '));
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] != DyckSymbol::Open) continue;
        std::size_t row = maxd - 1 - level[i];
        for (std::size_t c = i * 2; c <= m[i] * 2; ++c) grid[row][c] = '_';
        grid[row][i * 2] = '/';
        grid[row][m[i] * 2] = '\\';
    }
    std::string out;
    for (auto& r : grid) {
        while (!r.empty() && r.back() == ' ') r.pop_back();
        out += r + '\n';
    }
    std::string base;
    for (std::size_t i = 0; i < w.size(); ++i) base += w[i] == DyckSymbol::Open ? "( " : ") ";
    return out + base + '\n';
}

} // namespace bosc

#endif
