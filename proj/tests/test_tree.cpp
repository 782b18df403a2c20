#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <set>

#include "fmw/tree.hpp"
#include "tree_oracle.hpp"

using namespace fmw;

namespace {

nested_tree from_key(const char* nested) {
    // tiny parser for test inputs like "[[1,2],3]"
    tree_builder tb;
    const char* s = nested;
    std::vector<int> stack;
    auto parse_int = [&]() {
        int v = 0;
        while (*s >= '0' && *s <= '9') v = 10 * v + (*s++ - '0');
        return v;
    };
    int root = -1;
    while (*s) {
        if (*s == '[') {
            int v = tb.add_vertex();
            if (!stack.empty()) tb.add_child(stack.back(), v);
            if (stack.empty()) root = v;
            stack.push_back(v);
            ++s;
        } else if (*s == ']') {
            stack.pop_back();
            ++s;
        } else if (*s == ',') {
            ++s;
        } else {
            tb.add_leaf(stack.back(), parse_int());
        }
    }
    return tb.build(root).tree;
}

} // namespace

TEST_CASE("corolla basics") {
    auto t = nested_tree::corolla(2);
    CHECK(t.arity() == 2);
    CHECK(t.num_edges() == 0);
    CHECK(t.is_corolla());
    CHECK(t.key() == "[1,2]");
    CHECK_THROWS_AS(nested_tree::corolla(1), std::invalid_argument);
}

TEST_CASE("builder rejects malformed trees") {
    {
        tree_builder tb;
        int v = tb.add_vertex();
        tb.add_leaf(v, 1);
        CHECK_THROWS_AS(tb.build(v), std::invalid_argument);  // valence 1
    }
    {
        tree_builder tb;
        int v = tb.add_vertex();
        tb.add_leaf(v, 1);
        tb.add_leaf(v, 3);
        CHECK_THROWS_AS(tb.build(v), std::invalid_argument);  // labels not 1..k
    }
    {
        tree_builder tb;
        int v = tb.add_vertex();
        int w = tb.add_vertex();
        tb.add_leaf(v, 1);
        tb.add_child(v, w);
        tb.add_leaf(w, 2);
        tb.add_child(w, v);
        CHECK_THROWS_AS(tb.build(v), std::invalid_argument);  // cycle
    }
}

TEST_CASE("canonical form quotients planarity") {
    tree_builder tb1;
    int r1 = tb1.add_vertex();
    int c1 = tb1.add_vertex();
    tb1.add_child(r1, c1);
    tb1.add_leaf(r1, 3);
    tb1.add_leaf(c1, 2);
    tb1.add_leaf(c1, 1);
    auto a = tb1.build(r1).tree;

    tree_builder tb2;
    int r2 = tb2.add_vertex();
    tb2.add_leaf(r2, 3);
    int c2 = tb2.add_vertex();
    tb2.add_child(r2, c2);
    tb2.add_leaf(c2, 1);
    tb2.add_leaf(c2, 2);
    auto b = tb2.build(r2).tree;

    CHECK(a == b);
    CHECK(a.key() == "[[1,2],3]");
    CHECK_FALSE(a == from_key("[1,[2,3]]"));
}

TEST_CASE("graft examples") {
    auto c2 = nested_tree::corolla(2);
    auto g1 = graft(c2, 1, c2);
    CHECK(g1.tree.key() == "[[1,2],3]");
    CHECK(g1.tree.num_edges() == 1);
    CHECK(g1.graft_edge == 1);

    auto g2 = graft(c2, 2, c2);
    CHECK(g2.tree.key() == "[1,[2,3]]");

    auto g3 = graft(g1.tree, 3, c2);
    CHECK(g3.tree.arity() == 4);
    CHECK(g3.tree.num_edges() == 2);
    CHECK(g3.tree.key() == "[[1,2],[3,4]]");

    CHECK_THROWS_AS(graft(c2, 0, c2), std::invalid_argument);
    CHECK_THROWS_AS(graft(c2, 3, c2), std::invalid_argument);
}

TEST_CASE("graft is operadically associative (exhaustive, small)") {
    std::vector<nested_tree> small;
    for (int k = 2; k <= 3; ++k)
        for (const auto& t : enumerate_trees(k)) small.push_back(t);

    for (const auto& a : small)
        for (const auto& b : small)
            for (const auto& c : small) {
                int ka = a.arity(), kb = b.arity();
                // nested: (a o_i b) o_{i-1+j} c == a o_i (b o_j c)
                for (int i = 1; i <= ka; ++i)
                    for (int j = 1; j <= kb; ++j) {
                        auto lhs = graft(graft(a, i, b).tree, i - 1 + j, c).tree;
                        auto rhs = graft(a, i, graft(b, j, c).tree).tree;
                        CHECK(lhs == rhs);
                    }
                // disjoint: (a o_i b) o_{j+kb-1} c == (a o_j c) o_i b for i < j
                for (int i = 1; i <= ka; ++i)
                    for (int j = i + 1; j <= ka; ++j) {
                        auto lhs = graft(graft(a, i, b).tree, j + kb - 1, c).tree;
                        auto rhs = graft(graft(a, j, c).tree, i, b).tree;
                        CHECK(lhs == rhs);
                    }
            }
}

TEST_CASE("enumeration counts match the generating-function oracle") {
    CHECK(tree_count_oracle(2) == 1);
    CHECK(tree_count_oracle(3) == 4);
    CHECK(tree_count_oracle(4) == 26);
    for (int k = 2; k <= 6; ++k)
        CHECK((int64_t)enumerate_trees(k).size() == tree_count_oracle(k));
    CHECK_THROWS_AS(enumerate_trees(1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_trees(9), std::invalid_argument);
}

TEST_CASE("enumeration is deterministic with pairwise distinct keys") {
    auto a = enumerate_trees(4);
    auto b = enumerate_trees(4);
    REQUIRE(a.size() == b.size());
    std::set<std::string> keys;
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == b[i]);
        keys.insert(a[i].key());
    }
    CHECK(keys.size() == 26);
}

TEST_CASE("codimension-1 face count at arity 3") {
    int one_edge = 0;
    for (const auto& t : enumerate_trees(3))
        if (t.num_edges() == 1) ++one_edge;
    CHECK(one_edge == 3);
}

TEST_CASE("every tree has l(T) = vertices - 1") {
    for (int k = 2; k <= 5; ++k)
        for (const auto& t : enumerate_trees(k)) CHECK(t.num_edges() == t.num_vertices() - 1);
}

TEST_CASE("leaf relabelling") {
    auto t = from_key("[[1,2],3]");
    CHECK(permute_leaves(permutation::identity(3), t).tree == t);
    CHECK(permute_leaves(permutation::transposition(3, 0, 1), t).tree == t);
    auto moved = permute_leaves(permutation::transposition(3, 0, 2), t).tree;
    CHECK(moved.key() == "[1,[2,3]]");
    CHECK_FALSE(moved == t);
}

TEST_CASE("leaf relabelling is a group action") {
    for (const auto& t : enumerate_trees(4)) {
        std::vector<permutation> perms;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) perms.push_back(permutation::transposition(4, a, b));
        for (const auto& s : perms)
            for (const auto& u : perms) {
                auto two_step = permute_leaves(s, permute_leaves(u, t).tree).tree;
                auto one_step = permute_leaves(compose(s, u), t).tree;
                CHECK(two_step == one_step);
            }
    }
}

TEST_CASE("slot permutations track the children") {
    auto t = from_key("[[1,2],3]");
    // swapping 1 and 3 turns the root's children {[1,2], 3} into {[2,3], 1}
    auto rel = permute_leaves(permutation::transposition(3, 0, 2), t);
    CHECK(rel.slot_perm[0][0] == 1);  // the subtree moves to the second slot
    CHECK(rel.slot_perm[0][1] == 0);
}

TEST_CASE("one-edge trees") {
    auto t = one_edge_tree(4, {2, 4});
    CHECK(t.num_edges() == 1);
    CHECK(t.key() == "[1,[2,4],3]");
    CHECK_THROWS_AS(one_edge_tree(3, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(one_edge_tree(3, {2}), std::invalid_argument);
}

TEST_CASE("cut and splice are inverse") {
    for (int k = 3; k <= 5; ++k) {
        for (const auto& t : enumerate_trees(k)) {
            int ne = t.num_edges();
            if (ne == 0) continue;
            for (uint32_t mask = 0; mask < (1u << ne); ++mask) {
                std::set<int> cutset;
                for (int e = 1; e <= ne; ++e)
                    if (mask & (1u << (e - 1))) cutset.insert(e);
                auto cut = cut_edges(t, cutset);
                CHECK(cut.skeleton.num_edges() == (int)cutset.size());
                for (int s = 0; s < cut.skeleton.num_vertices(); ++s)
                    CHECK(cut.fragment[s].arity() == cut.skeleton.valence(s));
                auto back = splice(cut.skeleton, cut.fragment);
                CHECK(back.tree == t);
            }
        }
    }
}

TEST_CASE("cut edge bookkeeping") {
    auto t = from_key("[[1,2],[3,4]]");
    auto cut = cut_edges(t, {1});  // cut the edge above the [1,2] child
    CHECK(cut.skeleton.key() == "[[1,2],3,4]");
    CHECK(cut.skeleton_edge_map[1] == 1);
    // root piece keeps the other subtree intact
    CHECK(cut.fragment[0].key() == "[1,[2,3]]");
    CHECK(cut.fragment[1].key() == "[1,2]");
}
