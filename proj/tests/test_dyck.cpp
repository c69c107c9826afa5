#include <gtest/gtest.h>

#include <random>

#include "bosc/dyck.hpp"

using namespace bosc;

namespace {

DyckWord W(const char* s) { return DyckWord::parse(s); }

const std::vector<DyckWord>& all12() {
    static const auto ws = dyck_words_up_to(12);
    return ws;
}

} // namespace

TEST(DyckWord, ParsesBothNotations) {
    EXPECT_EQ(W("\xC4\x81 a \xC4\x81 \xC4\x81 a a").str(), "()(())");
    EXPECT_EQ(W("( ) ( ( ) )"), W("()(())"));
    EXPECT_EQ(W("").size(), 0u);
    EXPECT_EQ(W("()(())").letters(), "\xC4\x81" "a" "\xC4\x81\xC4\x81" "aa");
}

TEST(DyckWord, RejectsMalformedWithPosition) {
    try {
        W("(()");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
    }
    try {
        W("())(");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 3u);
    }
    EXPECT_THROW(W("(x)"), ParseError);
    EXPECT_FALSE(DyckWord::from_symbols({DyckSymbol::Close, DyckSymbol::Open}));
}

TEST(DyckWord, CatalanCounts) {
    std::vector<std::size_t> catalan{1, 1, 2, 5, 14, 42, 132};
    for (std::size_t n = 0; n < catalan.size(); ++n) EXPECT_EQ(dyck_words_of_length(2 * n).size(), catalan[n]);
    EXPECT_EQ(all12().size(), 197u);
}

TEST(MatchingPairs, Examples) {
    EXPECT_EQ(format_pairs(matching_pairs(W("()(())"))), "1-2 3-6 4-5");
    EXPECT_EQ(format_pairs(matching_pairs(W("(()())"))), "1-6 2-3 4-5");
    EXPECT_TRUE(matching_pairs(W("")).empty());
}

TEST(MatchingPairs, ForwardUniqueNonCrossing) {
    for (const auto& w : all12()) {
        auto ps = matching_pairs(w);
        ASSERT_EQ(ps.size() * 2, w.size());
        std::vector<int> used(w.size() + 1, 0);
        for (const auto& p : ps) {
            EXPECT_LT(p.open, p.close);
            EXPECT_EQ(w[p.open - 1], DyckSymbol::Open);
            EXPECT_EQ(w[p.close - 1], DyckSymbol::Close);
            ++used[p.open];
            ++used[p.close];
        }
        for (std::size_t i = 1; i <= w.size(); ++i) EXPECT_EQ(used[i], 1);
        for (const auto& p : ps)
            for (const auto& q : ps) {
                bool crossing = p.open < q.open && q.open < p.close && p.close < q.close;
                EXPECT_FALSE(crossing);
            }
    }
}

TEST(Embeds, Examples) {
    EXPECT_TRUE(embeds(W(""), W("()")));
    EXPECT_TRUE(embeds(W("()()"), W("(()())")));
    EXPECT_FALSE(embeds(W("()()"), W("(())")));
    EXPECT_TRUE(embeds(W("(())"), W("((()))")));
    EXPECT_FALSE(embeds(W("(())"), W("()()()")));
}

TEST(Embeds, AgreesWithDeletionClosureExhaustively) {
    const auto& ws = all12();
    for (const auto& b : ws) {
        auto closure = deletion_closure(b);
        for (const auto& a : ws) ASSERT_EQ(embeds(a, b), closure.count(a) > 0) << a.str() << " in " << b.str();
    }
}

TEST(Embeds, PartialOrder) {
    const auto& ws = all12();
    for (const auto& a : ws) EXPECT_TRUE(embeds(a, a));
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, ws.size() - 1);
    for (int i = 0; i < 20000; ++i) {
        const auto& a = ws[pick(rng)];
        const auto& b = ws[pick(rng)];
        const auto& c = ws[pick(rng)];
        if (embeds(a, b) && embeds(b, a)) { EXPECT_EQ(a, b); }
        if (embeds(a, b) && embeds(b, c)) { EXPECT_TRUE(embeds(a, c)); }
        if (embeds(a, b)) {
            EXPECT_LE(a.size(), b.size());
            EXPECT_EQ((b.size() - a.size()) % 2, 0u);
        }
    }
}

TEST(Embeds, TransitivityOnChains) {
    // Every chain a ⪯ b ⪯ c with c up to length 10.
    auto ws = dyck_words_up_to(10);
    for (const auto& c : ws)
        for (const auto& b : deletion_closure(c))
            for (const auto& a : deletion_closure(b)) ASSERT_TRUE(embeds(a, c));
}

TEST(Harmonic, Shapes) {
    EXPECT_EQ(harmonic(0).str(), "");
    EXPECT_EQ(harmonic(1).str(), "()()");
    EXPECT_EQ(harmonic(2).str(), "(()())(()())");
    EXPECT_EQ(hat_harmonic(0).str(), "()");
    EXPECT_EQ(hat_harmonic(1).str(), "(()())");
    EXPECT_EQ(hat_harmonic(2).str(), "((()())(()()))");
    EXPECT_THROW(harmonic(21), BoundExceeded);
}

TEST(Rank, Examples) {
    EXPECT_EQ(rank(W("")), 0u);
    EXPECT_EQ(rank(W("()")), 0u);
    EXPECT_EQ(rank(W("()()")), 1u);
    EXPECT_EQ(rank(W("((()()()))")), 1u);
    EXPECT_EQ(hat_rank(W("")), -1);
    EXPECT_EQ(hat_rank(W("()")), 0);
    EXPECT_EQ(hat_rank(W("((()()()))")), 1);
    EXPECT_EQ(rank_oracle(W("")), 0u);
    EXPECT_EQ(rank_oracle(W("()()")), 1u);
    EXPECT_EQ(rank_oracle(W("(())")), 0u);
    EXPECT_EQ(deletion_closure(W("(())")), (std::set<DyckWord>{W(""), W("()"), W("(())")}));
}

TEST(Rank, HarmonicIdentity) {
    for (unsigned i = 0; i <= 6; ++i) {
        EXPECT_EQ(rank(harmonic(i)), i);
        EXPECT_EQ(hat_rank(hat_harmonic(i)), static_cast<int>(i));
        EXPECT_EQ(rank(hat_harmonic(i)), i);
    }
    EXPECT_EQ(rank(harmonic(20)), 20u);
    // Oracle: h_i ⪯ h_i and h_(i+1) does not, as far as the closure reaches.
    for (unsigned i = 0; i <= 2; ++i) EXPECT_EQ(rank_oracle(harmonic(i)), i);
}

TEST(Rank, AgreesWithOracleExhaustively) {
    for (const auto& w : all12()) {
        ASSERT_EQ(rank(w), rank_oracle(w)) << w.str();
        int hat_oracle = -1;
        auto closure = deletion_closure(w);
        for (unsigned k = 0; hat_harmonic(k).size() <= w.size(); ++k)
            if (closure.count(hat_harmonic(k))) hat_oracle = static_cast<int>(k);
        ASSERT_EQ(hat_rank(w), hat_oracle) << w.str();
    }
}

TEST(Rank, Monotone) {
    const auto& ws = all12();
    for (const auto& b : ws)
        for (const auto& a : deletion_closure(b)) EXPECT_LE(rank(a), rank(b));
}

TEST(Rank, HatSandwich) {
    for (const auto& w : all12()) {
        if (w.empty()) continue;
        EXPECT_LE(hat_rank(w), static_cast<int>(rank(w)));
        EXPECT_LE(static_cast<int>(rank(w)), hat_rank(w) + 1);
    }
}

TEST(Rank, DeepNestingIsIterative) {
    std::string s(200000, '(');
    s += std::string(200000, ')');
    EXPECT_EQ(rank(W(s.c_str())), 0u);
}

TEST(ArcDiagram, OneArcPerPair) {
    auto d = arc_diagram(W("(()())"));
    EXPECT_NE(d.find("( ( ) ( ) )"), std::string::npos);
    EXPECT_EQ(std::count(d.begin(), d.end(), '/'), 3);
}
