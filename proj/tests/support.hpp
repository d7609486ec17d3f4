#pragma once

// Shared fixtures for the test suites: the small catalog graphs and seeded
// random generators.  Draws use rng() % n directly so sequences do not depend
// on the standard library's distribution implementations.

#include "kcoh/kgraph.hpp"

#include <memory>
#include <random>
#include <vector>

namespace ts {

using namespace kcoh;

using GraphPtr = std::shared_ptr<const KGraph>;

/// One vertex, two loops of colour 1.
inline GraphPtr b2() {
    Skeleton sk;
    sk.k = 1;
    sk.vertices = {"*"};
    sk.edges = {{"f1", 1, "*", "*"}, {"f2", 1, "*", "*"}};
    return KGraph::validate(sk, {});
}

/// One vertex, loops e (colour 1) and f (colour 2), single square e.f = f.e.
inline GraphPtr t2() {
    Skeleton sk;
    sk.k = 2;
    sk.vertices = {"*"};
    sk.edges = {{"e", 1, "*", "*"}, {"f", 2, "*", "*"}};
    SquareTable sq;
    sq.entries = {{"e", "f", "f", "e"}};
    return KGraph::validate(sk, sq);
}

/// One vertex, one loop per colour, k = 3; all squares commute on the nose.
inline GraphPtr cube3() {
    Skeleton sk;
    sk.k = 3;
    sk.vertices = {"*"};
    sk.edges = {{"x", 1, "*", "*"}, {"y", 2, "*", "*"}, {"z", 3, "*", "*"}};
    SquareTable sq;
    sq.entries = {{"x", "y", "y", "x"}, {"x", "z", "z", "x"}, {"y", "z", "z", "y"}};
    return KGraph::validate(sk, sq);
}

/// Two-vertex 2-graph whose squares cross between the vertices; its
/// square-relation map delta^1 is nonzero, unlike the one-vertex fixtures.
inline GraphPtr twist2() {
    Skeleton sk;
    sk.k = 2;
    sk.vertices = {"u", "v"};
    sk.edges = {{"a", 1, "u", "v"}, {"b", 1, "v", "u"},
                {"p", 2, "u", "v"}, {"q", 2, "v", "u"}};
    SquareTable sq;
    sq.entries = {{"a", "q", "p", "b"}, {"b", "p", "q", "a"}};
    return KGraph::validate(sk, sq);
}

/// Two-vertex 1-graph cycle: a goes u -> v, b goes v -> u (source -> range).
inline GraphPtr c2() {
    Skeleton sk;
    sk.k = 1;
    sk.vertices = {"u", "v"};
    sk.edges = {{"a", 1, "u", "v"}, {"b", 1, "v", "u"}};
    return KGraph::validate(sk, {});
}

/// One vertex, two edges per colour, k = 3.  Squares against colour 1 swap
/// the parallel pair a1 <-> a2; the swapped letter makes opposite faces of a
/// 3-cube land on different squares, so 2-cochains here can fail the cocycle
/// condition (unlike on cube3).
inline GraphPtr sw3() {
    Skeleton sk;
    sk.k = 3;
    sk.vertices = {"*"};
    sk.edges = {{"a1", 1, "*", "*"}, {"a2", 1, "*", "*"}, {"b1", 2, "*", "*"},
                {"b2", 2, "*", "*"}, {"c1", 3, "*", "*"}, {"c2", 3, "*", "*"}};
    auto swap = [](const std::string& a) { return a == "a1" ? "a2" : "a1"; };
    SquareTable sq;
    for (const char* a : {"a1", "a2"}) {
        for (const char* b : {"b1", "b2"}) sq.entries.push_back({a, b, b, swap(a)});
        for (const char* c : {"c1", "c2"}) sq.entries.push_back({a, c, c, swap(a)});
    }
    for (const char* b : {"b1", "b2"})
        for (const char* c : {"c1", "c2"}) sq.entries.push_back({b, c, c, b});
    return KGraph::validate(sk, sq);
}

/// One vertex, two loops per colour, k = 2; reordering a colour-1 loop past a
/// colour-2 loop swaps both letters (x <-> y and p <-> q).  The
/// square-relation matrix has invariant factors (1, 2), so rank-2 cohomology
/// picks up a Z/2 summand -- the smallest catalog graph with torsion.
inline GraphPtr flip2() {
    Skeleton sk;
    sk.k = 2;
    sk.vertices = {"*"};
    sk.edges = {{"x", 1, "*", "*"}, {"y", 1, "*", "*"}, {"p", 2, "*", "*"}, {"q", 2, "*", "*"}};
    SquareTable sq;
    sq.entries = {{"x", "p", "q", "y"}, {"x", "q", "p", "y"},
                  {"y", "p", "q", "x"}, {"y", "q", "p", "x"}};
    return KGraph::validate(sk, sq);
}

inline std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

/// Composable edge word of the requested length in arbitrary colour order,
/// together with its range vertex.  Requires a graph without sources.
inline std::pair<VertexId, std::vector<EdgeId>> random_edge_word(const KGraph& g,
                                                                 std::mt19937_64& rng,
                                                                 int len) {
    VertexId range = static_cast<VertexId>(pick(rng, g.vertex_count()));
    std::vector<EdgeId> w;
    VertexId at = range;
    for (int i = 0; i < len; ++i) {
        std::vector<EdgeId> cand;
        for (int c = 0; c < g.rank(); ++c)
            for (EdgeId e : g.edges_into(at, c)) cand.push_back(e);
        if (cand.empty()) break;
        EdgeId e = cand[pick(rng, cand.size())];
        w.push_back(e);
        at = g.edge_source(e);
    }
    return {range, w};
}

/// All morphisms with |d(lambda)| <= max_total, in enumeration order.
inline std::vector<Morphism> all_morphisms_upto(const GraphPtr& g, int max_total) {
    std::vector<Morphism> out;
    for (const Degree& n : KGraph::degrees_upto(g->rank(), max_total))
        for (const Morphism& m : g->paths(n)) out.push_back(m);
    return out;
}

/// Uniform draw from a precomputed pool, filtered so the result has the given
/// range vertex (for building composable chains).
inline const Morphism* random_with_range(const std::vector<Morphism>& pool, VertexId range,
                                         std::mt19937_64& rng) {
    std::vector<const Morphism*> cand;
    for (const Morphism& m : pool)
        if (m.range() == range) cand.push_back(&m);
    if (cand.empty()) return nullptr;
    return cand[pick(rng, cand.size())];
}

}  // namespace ts
