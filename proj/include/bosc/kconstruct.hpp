#ifndef BOSC_KCONSTRUCT_HPP
#define BOSC_KCONSTRUCT_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "bosc/error.hpp"
#include "bosc/pda.hpp"

namespace bosc {

struct AnnotatedSymbol {
    StackId base = 0;
    unsigned level = 0;
    bool hat = false;
    friend bool operator==(const AnnotatedSymbol&, const AnnotatedSymbol&) = default;
    friend auto operator<=>(const AnnotatedSymbol&, const AnnotatedSymbol&) = default;
};

struct Annotation {
    unsigned level;
    bool hat;
    friend bool operator==(const Annotation&, const Annotation&) = default;
};

inline Annotation annot(const AnnotatedSymbol& s) { return {s.level, s.hat}; }

inline std::string annotated_name(const std::string& base, unsigned level, bool hat) {
    return base + (hat ? "^^" : "^") + std::to_string(level);
}

// Splits "G^2" / "G^^2" back into its parts.
inline std::optional<std::tuple<std::string, unsigned, bool>> parse_annotated_name(const std::string& name) {
    auto caret = name.rfind('^');
    if (caret == std::string::npos || caret == 0 || caret + 1 == name.size()) return std::nullopt;
    auto digits = name.substr(caret + 1);
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) return std::nullopt;
    bool hat = caret >= 1 && name[caret - 1] == '^';
    std::size_t base_end = hat ? caret - 1 : caret;
    if (base_end == 0) return std::nullopt;
    return std::make_tuple(name.substr(0, base_end), static_cast<unsigned>(std::stoul(digits)), hat);
}

// A PDA whose stack symbols carry annotations; `source[i]` is the index of the
// action of the original PDA that action i was derived from.
struct AnnotatedPda {
    Pda pda;
    std::vector<AnnotatedSymbol> annotation; // indexed by StackId of pda
    std::vector<std::size_t> source;
    unsigned k = 0;
};

namespace detail {

class AnnotatedBuilder {
public:
    AnnotatedBuilder(const Pda& src, unsigned k) : src_(src) {
        out_.pda.states = src.states;
        out_.pda.inputs = src.inputs;
        out_.pda.start_state = src.start_state;
        out_.k = k;
        ids_.assign(src.stack_symbols.size() * (k + 1) * 2, 0);
        for (StackId g = 0; g < src.stack_symbols.size(); ++g)
            for (unsigned d = 0; d <= k; ++d)
                for (bool hat : {false, true}) {
                    ids_[index(g, d, hat)] = out_.pda.symbol(annotated_name(src.stack_symbols[g], d, hat));
                    out_.annotation.push_back({g, d, hat});
                }
        out_.pda.start_stack = sym(src.start_stack, k, false);
    }

    StackId sym(StackId g, unsigned d, bool hat) const { return ids_[index(g, d, hat)]; }

    void add(std::size_t source, const Action& a, StackId pop, std::vector<StackId> push) {
        acts_.push_back({Action{a.from, a.read, pop, a.to, std::move(push)}, source});
    }

    AnnotatedPda finish() {
        std::sort(acts_.begin(), acts_.end(), [](const auto& x, const auto& y) {
            return std::tie(x.first.pop, x.first.from, x.first.read, x.first.to, x.first.push, x.second) <
                   std::tie(y.first.pop, y.first.from, y.first.read, y.first.to, y.first.push, y.second);
        });
        acts_.erase(std::unique(acts_.begin(), acts_.end()), acts_.end());
        for (auto& [a, s] : acts_) {
            out_.pda.actions.push_back(a);
            out_.source.push_back(s);
        }
        return std::move(out_);
    }

private:
    std::size_t index(StackId g, unsigned d, bool hat) const {
        return (static_cast<std::size_t>(g) * (out_.k + 1) + d) * 2 + (hat ? 1 : 0);
    }
    const Pda& src_;
    AnnotatedPda out_;
    std::vector<StackId> ids_;
    std::vector<std::pair<Action, std::size_t>> acts_;
};

} // namespace detail

// P^(k) for a reduced PDA, case by case:
//   pops:   γ^(0), γ̂^(0)
//   pushes, for 1 ≤ d ≤ k and 0 ≤ ℓ < d:
//     (a) γ̂^(d) → ξ1^(d) ξ2^(ℓ)      (b) γ̂^(d) → ξ1^(ℓ) ξ̂2^(d)
//     (c) γ^(d) → ξ1^(d) ξ2^(ℓ)       (d) γ^(d) → ξ1^(ℓ) ξ2^(d)
//     (e) γ^(d) → ξ1^(d−1) ξ̂2^(d−1)
inline AnnotatedPda k_pda_reduced(const Pda& p, unsigned k) {
    if (!is_reduced(p)) throw NotReduced("k_pda_reduced needs a PDA in reduced form");
    detail::AnnotatedBuilder b(p, k);
    for (std::size_t i = 0; i < p.actions.size(); ++i) {
        const auto& a = p.actions[i];
        if (a.is_pop()) {
            b.add(i, a, b.sym(a.pop, 0, false), {});
            b.add(i, a, b.sym(a.pop, 0, true), {});
            continue;
        }
        StackId x1 = a.push[0], x2 = a.push[1];
        for (unsigned d = 1; d <= k; ++d) {
            for (unsigned l = 0; l < d; ++l) {
                b.add(i, a, b.sym(a.pop, d, true), {b.sym(x1, d, false), b.sym(x2, l, false)});
                b.add(i, a, b.sym(a.pop, d, true), {b.sym(x1, l, false), b.sym(x2, d, true)});
                b.add(i, a, b.sym(a.pop, d, false), {b.sym(x1, d, false), b.sym(x2, l, false)});
                b.add(i, a, b.sym(a.pop, d, false), {b.sym(x1, l, false), b.sym(x2, d, false)});
            }
            b.add(i, a, b.sym(a.pop, d, false), {b.sym(x1, d - 1, false), b.sym(x2, d - 1, true)});
        }
    }
    return b.finish();
}

// How case (b) for long pushes treats the last pushed position.
enum class HatRuleB {
    LastOutsideI, // n ∉ I
    HatNotLast,   // the hat position is not n
};

// P^(k) for an arbitrary PDA: pops, single pushes, and longer pushes in cases (a) to (c).
inline AnnotatedPda k_pda_general(const Pda& p, unsigned k, HatRuleB rule_b = HatRuleB::LastOutsideI) {
    detail::AnnotatedBuilder b(p, k);
    for (std::size_t i = 0; i < p.actions.size(); ++i) {
        const auto& a = p.actions[i];
        const auto& xi = a.push;
        std::size_t n = xi.size();
        if (n == 0) {
            b.add(i, a, b.sym(a.pop, 0, false), {});
            b.add(i, a, b.sym(a.pop, 0, true), {});
            continue;
        }
        if (n == 1) {
            for (unsigned d = 1; d <= k; ++d) {
                b.add(i, a, b.sym(a.pop, d, false), {b.sym(xi[0], d, false)});
                b.add(i, a, b.sym(a.pop, d, true), {b.sym(xi[0], d, true)});
            }
            continue;
        }
        for (unsigned d = 1; d <= k; ++d) {
            // (a) and (b): positions in I get level d−1, one of them (not min I) hatted;
            // the rest range over levels 0..d−2.
            for (bool nu_hat : {false, true}) {
                for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                    if (std::popcount(mask) < 2) continue;
                    if (nu_hat && rule_b == HatRuleB::LastOutsideI && (mask >> (n - 1) & 1u)) continue;
                    std::size_t lo = static_cast<std::size_t>(std::countr_zero(mask));
                    for (std::size_t h = lo + 1; h < n; ++h) {
                        if (!(mask >> h & 1u)) continue;
                        if (nu_hat && rule_b == HatRuleB::HatNotLast && h == n - 1) continue;
                        std::vector<std::size_t> free;
                        for (std::size_t j = 0; j < n; ++j)
                            if (!(mask >> j & 1u)) free.push_back(j);
                        if (!free.empty() && d < 2) continue;
                        std::vector<unsigned> lv(free.size(), 0);
                        for (;;) {
                            std::vector<StackId> push(n);
                            for (std::size_t j = 0; j < n; ++j)
                                if (mask >> j & 1u) push[j] = b.sym(xi[j], d - 1, j == h);
                            for (std::size_t f = 0; f < free.size(); ++f) push[free[f]] = b.sym(xi[free[f]], lv[f], false);
                            b.add(i, a, b.sym(a.pop, d, nu_hat), push);
                            std::size_t f = 0;
                            while (f < free.size() && ++lv[f] > d - 2) lv[f++] = 0;
                            if (f == free.size()) break;
                        }
                    }
                }
            }
            // (c): exactly one position at level d, hatted iff it is the last and ν is hatted.
            for (bool nu_hat : {false, true}) {
                for (std::size_t pos = 0; pos < n; ++pos) {
                    std::vector<unsigned> lv(n - 1, 0);
                    for (;;) {
                        std::vector<StackId> push(n);
                        for (std::size_t j = 0, f = 0; j < n; ++j)
                            push[j] = j == pos ? b.sym(xi[j], d, nu_hat && pos == n - 1) : b.sym(xi[j], lv[f++], false);
                        b.add(i, a, b.sym(a.pop, d, nu_hat), push);
                        std::size_t f = 0;
                        while (f < lv.size() && ++lv[f] > d - 1) lv[f++] = 0;
                        if (f == lv.size()) break;
                    }
                }
            }
        }
    }
    return b.finish();
}

// The closed-form action count of the general construction, evaluated term by term.
inline std::uint64_t expected_action_count_general(std::uint64_t m1, std::uint64_t m2, std::uint64_t m3, unsigned n, unsigned k) {
    auto binom = [](std::uint64_t a, std::uint64_t b) {
        std::uint64_t r = 1;
        for (std::uint64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    auto ipow = [](std::uint64_t x, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e--) r *= x;
        return r;
    };
    std::uint64_t total = 2 * m1 + 2 * static_cast<std::uint64_t>(k) * m2;
    if (m3 == 0) return total;
    if (n < 2) throw Error("the push length of a type-3 action is at least 2");
    std::uint64_t s1 = 0;
    for (unsigned d = 2; d <= k; ++d)
        for (unsigned l = 2; l <= n; ++l) s1 += binom(n, l) * (l - 1) * ipow(d - 1, n - l);
    std::uint64_t s2 = 0;
    for (unsigned d = 1; d <= k; ++d) s2 += ipow(d, n - 1);
    // (n − 2) stays in the bracket even when k = 0.
    std::int64_t bracket = static_cast<std::int64_t>(2 * s1 + 2 * n * s2) + static_cast<std::int64_t>(n) - 2;
    return total + m3 * static_cast<std::uint64_t>(bracket);
}

// Per-case closed forms for one push-n action (cases a, b, c).
struct GeneralCaseCounts {
    std::uint64_t a, b, c;
};

inline GeneralCaseCounts expected_case_counts_general(unsigned n, unsigned k) {
    auto binom = [](std::uint64_t x, std::uint64_t y) {
        std::uint64_t r = 1;
        for (std::uint64_t i = 1; i <= y; ++i) r = r * (x - y + i) / i;
        return r;
    };
    auto ipow = [](std::uint64_t x, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e--) r *= x;
        return r;
    };
    GeneralCaseCounts c{0, 0, 0};
    if (k == 0) return c;
    for (unsigned d = 2; d <= k; ++d) {
        for (unsigned l = 2; l <= n; ++l) c.a += binom(n, l) * (l - 1) * ipow(d - 1, n - l);
        for (unsigned l = 2; l + 1 <= n; ++l) c.b += binom(n, l) * (l - 1) * ipow(d - 1, n - l);
    }
    c.a += n - 1;
    c.b += n - 2;
    for (unsigned d = 1; d <= k; ++d) c.c += 2 * n * ipow(d, n - 1);
    return c;
}

// Union of two reduced PDAs: a fresh start symbol copies the start actions of both sides.
inline Pda union_pda(const Pda& p1, const Pda& p2) {
    if (!is_reduced(p1) || !is_reduced(p2)) throw NotReduced("union needs two PDAs in reduced form");
    Pda u;
    u.state("q");
    for (const auto& s : p1.inputs) u.input(s);
    for (const auto& s : p2.inputs) u.input(s);
    std::vector<std::string> taken;
    for (const auto& s : p1.stack_symbols) taken.push_back("1." + s);
    for (const auto& s : p2.stack_symbols) taken.push_back("2." + s);
    u.start_stack = u.symbol(detail::fresh(taken, "S_u"));
    std::vector<Action> copies;
    auto import = [&](const Pda& p, const std::string& tag) {
        std::vector<StackId> map;
        for (const auto& s : p.stack_symbols) map.push_back(u.symbol(tag + s));
        for (const auto& a : p.actions) {
            Action b{0, a.read == kEpsilon ? kEpsilon : u.input(p.inputs[a.read]), map[a.pop], 0, {}};
            for (auto s : a.push) b.push.push_back(map[s]);
            u.actions.push_back(b);
            if (a.pop == p.start_stack) {
                b.pop = u.start_stack;
                copies.push_back(b);
            }
        }
    };
    import(p1, "1.");
    import(p2, "2.");
    u.actions.insert(u.actions.end(), copies.begin(), copies.end());
    std::sort(u.actions.begin(), u.actions.end());
    u.actions.erase(std::unique(u.actions.begin(), u.actions.end()), u.actions.end());
    return u;
}

// ---- exact oscillation classes ------------------------------------------------
//
// For a quasi-run r write o = rank(α(r)) and H = hat_rank(α(r)); H ∈ {o − 1, o}.
// A pop has (o, H) = (0, 0). A push whose two sub-runs have (o1, ·) and (o2, H2) gives
//   o = o1 if o1 > H2,  o1 + 1 if o1 = H2,  o2 if o1 < H2;   H = max(o1, H2).
// The exact construction tracks three shapes per level: any H, H = o, and H = o − 1.

enum class OscShape : unsigned char { Any, Tight, Strict };

struct OscClass {
    unsigned level;
    OscShape shape;
    friend bool operator==(const OscClass&, const OscClass&) = default;
};

// (o, H) of a push from o1 and the (o2, H2) of the second sub-run.
inline std::pair<unsigned, unsigned> compose_osc(unsigned o1, unsigned o2, unsigned h2) {
    unsigned o = o1 > h2 ? o1 : (o1 == h2 ? o1 + 1 : o2);
    return {o, std::max(o1, h2)};
}

struct ExactPda {
    Pda pda;
    std::vector<std::pair<StackId, OscClass>> annotation; // base symbol and class, by StackId
    std::vector<std::size_t> source;
    unsigned k = 0;
};

inline std::string exact_name(const std::string& base, OscClass c) {
    const char* mark = c.shape == OscShape::Any ? "^" : c.shape == OscShape::Tight ? "^^" : "^!";
    return base + mark + std::to_string(c.level);
}

// A reduced PDA accepting exactly the words that have a run of oscillation k.
inline ExactPda k_pda_exact(const Pda& p, unsigned k) {
    if (!is_reduced(p)) throw NotReduced("k_pda_exact needs a PDA in reduced form");
    ExactPda out;
    out.k = k;
    out.pda.states = p.states;
    out.pda.inputs = p.inputs;
    std::size_t per = 3 * (k + 1);
    std::vector<StackId> ids(p.stack_symbols.size() * per);
    auto slot = [&](StackId g, OscClass c) { return g * per + c.level * 3 + static_cast<unsigned>(c.shape); };
    for (StackId g = 0; g < p.stack_symbols.size(); ++g)
        for (unsigned d = 0; d <= k; ++d)
            for (auto s : {OscShape::Any, OscShape::Tight, OscShape::Strict}) {
                if (s == OscShape::Strict && d == 0) continue;
                OscClass c{d, s};
                ids[slot(g, c)] = out.pda.symbol(exact_name(p.stack_symbols[g], c));
                out.annotation.push_back({g, c});
            }
    auto sym = [&](StackId g, OscClass c) { return ids[slot(g, c)]; };
    out.pda.start_stack = sym(p.start_stack, {k, OscShape::Any});
    std::vector<std::pair<Action, std::size_t>> acts;
    for (std::size_t i = 0; i < p.actions.size(); ++i) {
        const auto& a = p.actions[i];
        auto emit = [&](OscClass c, std::vector<StackId> push) { acts.push_back({Action{0, a.read, sym(a.pop, c), 0, std::move(push)}, i}); };
        if (a.is_pop()) {
            emit({0, OscShape::Any}, {});
            emit({0, OscShape::Tight}, {});
            continue;
        }
        for (unsigned o1 = 0; o1 <= k; ++o1)
            for (unsigned o2 = 0; o2 <= k; ++o2)
                for (bool tight2 : {true, false}) {
                    if (!tight2 && o2 == 0) continue;
                    unsigned h2 = tight2 ? o2 : o2 - 1;
                    auto [o, h] = compose_osc(o1, o2, h2);
                    if (o > k) continue;
                    std::vector<StackId> push{sym(a.push[0], {o1, OscShape::Any}),
                                              sym(a.push[1], {o2, tight2 ? OscShape::Tight : OscShape::Strict})};
                    emit({o, h == o ? OscShape::Tight : OscShape::Strict}, push);
                    emit({o, OscShape::Any}, push);
                }
    }
    std::sort(acts.begin(), acts.end(), [](const auto& x, const auto& y) {
        return std::tie(x.first.pop, x.first.read, x.first.push, x.second) < std::tie(y.first.pop, y.first.read, y.first.push, y.second);
    });
    acts.erase(std::unique(acts.begin(), acts.end()), acts.end());
    for (auto& [a, s] : acts) {
        out.pda.actions.push_back(a);
        out.source.push_back(s);
    }
    return out;
}

} // namespace bosc

#endif
