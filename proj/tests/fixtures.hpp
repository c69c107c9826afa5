#ifndef BOSC_TESTS_FIXTURES_HPP
#define BOSC_TESTS_FIXTURES_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bosc/bosc.hpp"

namespace fixtures {

using namespace bosc;

// All words of length ≤ n derivable from each variable, as a least fixpoint over
// the rules with concatenations truncated at n. Independent of the CNF pipeline.
inline std::set<Word> bounded_language(const Grammar& g, std::size_t n) {
    std::map<std::string, std::set<Word>> lang;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : g.rules) {
            std::set<Word> acc{Word{}};
            for (const auto& s : r.rhs) {
                std::set<Word> next;
                std::set<Word> single;
                const std::set<Word>* part;
                if (g.is_variable(s)) part = &lang[s];
                else {
                    single.insert(Word{s});
                    part = &single;
                }
                for (const auto& a : acc)
                    for (const auto& b : *part) {
                        if (a.size() + b.size() > n) continue;
                        Word c = a;
                        c.insert(c.end(), b.begin(), b.end());
                        next.insert(std::move(c));
                    }
                acc = std::move(next);
            }
            auto& target = lang[r.lhs];
            for (auto& w : acc) changed |= target.insert(w).second;
        }
    }
    return lang[g.start];
}

inline std::vector<Word> all_words(const std::set<std::string>& alphabet, std::size_t max_len) {
    std::vector<Word> out{Word{}};
    std::vector<Word> frontier{Word{}};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const auto& w : frontier)
            for (const auto& a : alphabet) {
                Word v = w;
                v.push_back(a);
                next.push_back(v);
            }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

// Oscillations achieved by the runs on each word, by exhaustive search.
struct OscTable {
    std::map<Word, std::set<unsigned>> by_word;
    bool bound_hit = false;
};

inline OscTable brute_oscillations(const Pda& p, std::size_t max_len, std::size_t max_moves) {
    OscTable t;
    t.bound_hit = for_each_run_up_to(p, max_len, {max_moves, 0}, [&](const RunView& v) {
        t.by_word[decode_word(p, v.word)].insert(rank(footprint_of_moves(push_lengths(p, v.action_indices))));
    });
    return t;
}

// a^n b^(n+1), n ≥ 1.
inline Pda anbn_plus1() {
    Pda p;
    p.add("q0", "a", "G0", "q1", {"G", "G"})
        .add("q1", "a", "G", "q1", {"G", "G"})
        .add("q1", "b", "G", "q2")
        .add("q2", "b", "G", "q2");
    return p;
}

inline Pda single_pop() {
    Pda p;
    p.add("q", "b", "G0", "q");
    return p;
}

// Reduced. Its only run, on "cdcd", has oscillation 1 and both of its sub-runs
// have oscillation 1 as well.
inline Pda twin_push() {
    Pda p;
    p.add("q", "", "X", "q", {"A", "B"})
        .add("q", "", "A", "q", {"C", "D"})
        .add("q", "", "B", "q", {"C", "D"})
        .add("q", "c", "C", "q")
        .add("q", "d", "D", "q");
    return p;
}

// {(a^n b^n)*}: Z marks block boundaries, A' the bottom of a block.
inline Pda anbn_star() {
    // p reads a block's a's, r its b's; A' marks the bottom of a block.
    Pda p;
    p.add("q", "a", "Z", "p", {"A'"})
        .add("p", "a", "A'", "p", {"A", "A'"})
        .add("p", "a", "A", "p", {"A", "A"})
        .add("p", "b", "A", "r")
        .add("p", "b", "A'", "q", {"Z"})
        .add("r", "b", "A", "r")
        .add("r", "b", "A'", "q", {"Z"})
        .add("q", "", "Z", "q");
    return p;
}

inline bool in_anbn_star(const Word& w) {
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t a = 0, b = 0;
        while (i < w.size() && w[i] == "a") ++a, ++i;
        while (i < w.size() && w[i] == "b") ++b, ++i;
        if (a == 0 || a != b) return false;
    }
    return true;
}

inline Grammar palindromes() { return parse_grammar("S -> 0 S 0 | 1 S 1 | _\n"); }
inline Grammar l1() { return parse_grammar("S -> A C\nA -> a A b | _\nC -> c C | _\n"); }
inline Grammar l2() { return parse_grammar("S -> A B\nA -> a A | _\nB -> b B c | _\n"); }
inline Grammar ab_star() { return parse_grammar("S -> a b S | _\n"); }
inline Grammar anbn() { return parse_grammar("S -> a S b | a b\n"); }

inline Graph small_graph() {
    return parse_graph("@source s\n@target t\ns -> u\nu -> v\nv -> t\ns -> v\n");
}

// Chomsky normal form corpus.
inline std::vector<std::pair<std::string, Grammar>> cnf_corpus() {
    std::vector<std::pair<std::string, Grammar>> out{
        {"anbn", parse_grammar("S -> A B | A C\nC -> S B\nA -> a\nB -> b\n")},
        {"dyck+", parse_grammar("S -> S S | L R | L X\nX -> S R\nL -> l\nR -> r\n")},
        {"catalan", parse_grammar("S -> S S | a\n")},
        {"palindromes", parse_grammar("S -> A X | B Y | A A | B B | a | b\nX -> S A\nY -> S B\nA -> a\nB -> b\n")},
        {"equal-ab", parse_grammar("S -> A B | B A | S S | A T | B U\nT -> S B\nU -> S A\nA -> a\nB -> b\n")},
        {"expr", parse_grammar("E -> E X | a\nX -> P E\nP -> p\n")},
        {"a+b+", parse_grammar("S -> A B\nA -> A A | a\nB -> B B | b\n")},
        {"abc+", parse_grammar("S -> A T\nT -> B C\nA -> a\nB -> b\nC -> C C | c\n")},
        {"two-brackets", parse_grammar("S -> S S | L R | L X | M N | M Y\nX -> S R\nY -> S N\nL -> l\nR -> r\nM -> m\nN -> n\n")},
        {"mixed", parse_grammar("S -> A S | S B | a\nA -> a\nB -> b\n")},
        {"left-list", parse_grammar("S -> S A | a\nA -> a\n")},
        {"cnf(anbn)", to_cnf(anbn())},
    };
    return out;
}

struct NamedPda {
    std::string name;
    Pda pda;
};

// PDAs in the shape they are naturally written (not necessarily reduced).
inline std::vector<NamedPda> pda_corpus() {
    return {
        {"anbn-plus1", anbn_plus1()},
        {"single-pop", single_pop()},
        {"twin-push", twin_push()},
        {"anbn-star", anbn_star()},
        {"dyck", cfg_to_pda(dyck_grammar())},
        {"palindromes", cfg_to_pda(palindromes())},
        {"L1", cfg_to_pda(l1())},
        {"L2", cfg_to_pda(l2())},
        {"ab-star", cfg_to_pda(ab_star())},
        {"path", path_to_pda(small_graph())},
        {"cnf-anbn", cfg_to_pda(cnf_corpus()[0].second)},
    };
}

inline std::vector<NamedPda> reduced_corpus() {
    auto in = pda_corpus();
    for (auto& p : in) p.pda = ensure_reduced(p.pda);
    return in;
}

} // namespace fixtures

#endif
