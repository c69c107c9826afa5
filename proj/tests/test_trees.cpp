#include <gtest/gtest.h>

#include "bosc/grammars.hpp"
#include "bosc/trees.hpp"
#include "fixtures.hpp"

using namespace bosc;

namespace {

DyckWord W(const char* s) { return DyckWord::parse(s); }

const char* kDyckTree = "(S (\xC4\x81) (S (\xCE\xB5)) (a) (S (\xC4\x81) (S (\xC4\x81) (S (\xCE\xB5)) (a) (S (\xCE\xB5))) (a) (S (\xCE\xB5))))";

QuasiTree leaf(const char* t) { return QuasiTree::leaf(Label::terminal(t)); }

// Every subtree of t in pre-order.
void subtrees(const QuasiTree& t, std::vector<const QuasiTree*>& out) {
    out.push_back(&t);
    for (const auto& c : t.children) subtrees(c, out);
}

std::vector<QuasiTree> corpus_trees() {
    std::vector<QuasiTree> out;
    for (const auto& [name, g] : fixtures::cnf_corpus()) {
        auto ts = enumerate_parse_trees(g, 25);
        out.insert(out.end(), ts.begin(), ts.end());
    }
    for (unsigned h = 0; h <= 8; ++h) out.push_back(perfect_binary(h));
    for (unsigned n = 0; n <= 5; ++n) out.push_back(p_tree(n));
    return out;
}

} // namespace

TEST(Dimension, Examples) {
    EXPECT_EQ(dimension(leaf("b")), 0u);
    EXPECT_EQ(dimension(parse_sexpr(kDyckTree)), 1u);
    EXPECT_EQ(dimension(perfect_binary(3)), 3u);
}

TEST(Footprint, Examples) {
    auto sb = QuasiTree::node(Label::variable("S"), {leaf("b")});
    EXPECT_EQ(footprint(sb), W("\xC4\x81 a \xC4\x81 a"));
    auto sbc = parse_sexpr("(S (B (b)) (C (c)))");
    EXPECT_EQ(footprint(sbc).letters(), "\xC4\x81" "a\xC4\x81\xC4\x81" "a\xC4\x81" "aa\xC4\x81" "a");
    EXPECT_EQ(footprint(p_tree(0)), W("()()"));
    EXPECT_EQ(oscillation(sb), 1u);
}

TEST(Flattening, Examples) {
    EXPECT_EQ(flattening(leaf("b")), W(""));
    EXPECT_EQ(flattening(parse_sexpr("(S (b))")), W("()"));
    EXPECT_EQ(flattening(parse_sexpr("(S (b) (c))")), W("()()"));
    EXPECT_EQ(dimension(parse_sexpr("(S (b) (c))")), rank(W("()()")));
}

TEST(Yield, Examples) {
    EXPECT_EQ(yield(leaf("b")), (Word{"b"}));
    EXPECT_EQ(yield(parse_sexpr(kDyckTree)), (Word{"\xC4\x81", "a", "\xC4\x81", "\xC4\x81", "a", "a"}));
    EXPECT_TRUE(yield(parse_sexpr("(S (\xCE\xB5))")).empty());
}

TEST(Families, PerfectBinary) {
    EXPECT_EQ(node_count(perfect_binary(0)), 1u);
    auto t1 = perfect_binary(1);
    EXPECT_EQ(t1.children.size(), 2u);
    EXPECT_EQ(dimension(t1), 1u);
    EXPECT_EQ(dimension(perfect_binary(2)), 2u);
    EXPECT_EQ(oscillation(perfect_binary(2)), 1u);
    EXPECT_EQ(oscillation(perfect_binary(4)), 2u);
    for (unsigned h = 0; h <= 8; ++h) {
        auto t = perfect_binary(h);
        EXPECT_EQ(node_count(t), (std::size_t{2} << h) - 1);
        EXPECT_EQ(height(t), h);
        EXPECT_EQ(dimension(t), h);
    }
}

TEST(Families, Tightness) {
    for (unsigned h = 1; h <= 4; ++h) {
        EXPECT_EQ(oscillation(perfect_binary(2 * h - 1)), h);
        EXPECT_EQ(oscillation(perfect_binary(2 * h)), h);
    }
    EXPECT_EQ(node_count(p_tree(0)), 2u);
    for (unsigned n = 0; n <= 5; ++n) {
        EXPECT_EQ(dimension(p_tree(n)), n);
        EXPECT_EQ(oscillation(p_tree(n)), n + 1);
    }
    EXPECT_EQ(oscillation(p_tree(3)), 4u);
}

TEST(Validate, Examples) {
    auto gd = dyck_grammar();
    EXPECT_TRUE(validate_quasi_tree(parse_sexpr(kDyckTree), gd));
    EXPECT_FALSE(validate_quasi_tree(parse_sexpr("(S (a) (S (\xCE\xB5)))"), gd));
    EXPECT_FALSE(validate_quasi_tree(parse_sexpr("(S (\xC4\x81) (\xCE\xB5) (a) (S (\xCE\xB5)))"), gd));
    EXPECT_THROW(check_quasi_tree(parse_sexpr("(S (a))"), gd), InvalidTree);
    // A quasi-tree may be rooted at any variable.
    auto g = parse_grammar("S -> A A\nA -> a\n");
    EXPECT_TRUE(validate_quasi_tree(parse_sexpr("(A (a))"), g));
    EXPECT_THROW(check_quasi_tree(parse_sexpr("(A (a))"), g, true), InvalidTree);
}

TEST(Sexpr, RoundTrip) {
    auto t = parse_sexpr(kDyckTree);
    EXPECT_EQ(parse_sexpr(to_sexpr(t)), t);
    auto q = QuasiTree::node(Label::variable("S"), {leaf("B"), leaf("two words"), leaf("_")});
    EXPECT_EQ(parse_sexpr(to_sexpr(q)), q);
    EXPECT_THROW(parse_sexpr("(S (a)"), ParseError);
    EXPECT_THROW(parse_sexpr("(S) x"), ParseError);
}

TEST(Properties, NodeFootprintsAreDyckAndEmbed) {
    for (const auto& t : corpus_trees()) {
        auto whole = footprint(t);
        ASSERT_EQ(whole.size(), 2 * node_count(t));
        std::vector<const QuasiTree*> subs;
        subtrees(t, subs);
        for (const auto* n : subs) {
            // Shifting the node footprint left by one symbol (ā in front) gives a Dyck word.
            std::vector<DyckSymbol> shifted{DyckSymbol::Open};
            auto nf = node_footprint(*n);
            shifted.insert(shifted.end(), nf.begin(), nf.end());
            ASSERT_TRUE(is_dyck(shifted));
            auto sub = footprint(*n);
            ASSERT_TRUE(embeds(sub, whole));
            ASSERT_LE(oscillation(*n), oscillation(t));
        }
    }
}

TEST(Properties, DimensionIsRankOfFlattening) {
    for (const auto& t : corpus_trees()) {
        auto m = metrics(t);
        ASSERT_EQ(m.flattening.size(), 2 * (node_count(t) - 1));
        ASSERT_EQ(m.dimension, rank(m.flattening));
        ASSERT_EQ(m.oscillation, rank(m.footprint));
    }
}

TEST(Properties, OscillationBoundsDimension) {
    std::size_t checked = 0;
    for (const auto& [name, g] : fixtures::cnf_corpus()) {
        ASSERT_TRUE(is_cnf(g)) << name;
        for (const auto& t : enumerate_parse_trees(g, 25)) {
            unsigned d = dimension(t), o = oscillation(t);
            ASSERT_LE(o, d + 1) << name << ' ' << to_sexpr(t);
            ASSERT_LE(d, 2 * o) << name << ' ' << to_sexpr(t);
            ++checked;
        }
    }
    EXPECT_GT(checked, 1000u);
}
