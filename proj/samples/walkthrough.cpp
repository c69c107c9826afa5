// A short tour of the library: Dyck ranks, tree measures, runs and decisions.

#include <iostream>

#include "bosc/bosc.hpp"

using namespace bosc;

int main() {
    // Dyck words and their rank.
    auto w = DyckWord::parse("((()()()))");
    std::cout << w.str() << " rank " << rank(w) << " hat-rank " << hat_rank(w) << '\n' << arc_diagram(w);
    for (unsigned i = 0; i <= 3; ++i) std::cout << "h_" << i << " = " << harmonic(i).str() << '\n';

    // Parse trees: dimension, footprint, oscillation.
    auto g = parse_grammar("S -> A B | A C\nC -> S B\nA -> a\nB -> b\n");
    for (const auto& t : parse_trees(g, {"a", "a", "b", "b"})) {
        auto m = metrics(t);
        std::cout << to_sexpr(t) << "\n  dimension " << m.dimension << ", oscillation " << m.oscillation
                  << ", footprint " << m.footprint.str() << '\n';
    }

    // A PDA for a^n b^(n+1) and the oscillation of its run on aabbb.
    auto p = parse_pda("q0, a, G0 -> q1, G G\nq1, a, G -> q1, G G\nq1, b, G -> q2, _\nq2, b, G -> q2, _\n");
    auto word = encode_word(p, {"a", "a", "b", "b", "b"});
    for (const auto& r : enumerate_runs(p, word, 10).runs)
        std::cout << "run footprint " << run_footprint(r).str() << ", oscillation " << run_oscillation(r)
                  << ", max height " << max_height(r) << '\n';

    // Decisions work on the reduced form.
    auto red = reduce_pipeline(p);
    for (unsigned k = 0; k <= 2; ++k)
        std::cout << "k=" << k << ": " << (k_emptiness(red, k) ? "some" : "no") << " run of oscillation k, aabbb "
                  << (k_membership(red, k, word) ? "is" : "is not") << " accepted by one\n";

    // The annotated automaton for k = 1 accepts only 1-oscillating words.
    auto K = k_pda_exact(red, 1);
    std::cout << "P^(1): " << K.pda.actions.size() << " actions, accepts aabbb: " << std::boolalpha
              << reduced_accepts(K.pda, encode_word(K.pda, {"a", "a", "b", "b", "b"})) << '\n';
}
