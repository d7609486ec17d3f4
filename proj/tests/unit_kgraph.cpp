#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

#include <map>
#include <set>

using namespace kcoh;

TEST_CASE("degree arithmetic") {
    Degree m{2, 0, 1}, n{1, 3, 1};
    CHECK(m.join(n) == Degree{2, 3, 1});
    CHECK(m.meet(n) == Degree{1, 0, 1});
    CHECK((m + n) == Degree{3, 3, 2});
    CHECK(m.total() == 3);
    CHECK(!(m <= n));
    CHECK(Degree({1, 0, 1}) <= m);
    CHECK(Degree({0, 1}).lex_less(Degree{1, 0}));
}

TEST_CASE("validate accepts the catalog presentations") {
    auto g = ts::b2();
    CHECK(g->rank() == 1);
    CHECK(g->vertex_count() == 1);
    CHECK(g->edge_count() == 2);
    CHECK(g->square_count() == 0);

    auto t = ts::t2();
    CHECK(t->rank() == 2);
    CHECK(t->square_count() == 1);

    auto c = ts::cube3();
    CHECK(c->square_count() == 3);
    CHECK(!c->has_sources());
}

TEST_CASE("validate rejects broken presentations") {
    Skeleton sk;
    sk.k = 2;
    sk.vertices = {"*"};
    sk.edges = {{"e", 1, "*", "*"}, {"f", 2, "*", "*"}};
    CHECK_THROWS_AS(KGraph::validate(sk, {}), IncompleteSquares);

    SquareTable twice;
    twice.entries = {{"e", "f", "f", "e"}, {"e", "f", "f", "e"}};
    CHECK_THROWS_AS(KGraph::validate(sk, twice), DuplicateSquare);

    Skeleton dup = sk;
    dup.edges.push_back({"e", 2, "*", "*"});
    CHECK_THROWS_AS(KGraph::validate(dup, {}), ValidationError);
}

TEST_CASE("cube consistency catches non-commuting colour swaps") {
    // colour-2 squares swap a<->b, colour-3 squares swap b<->c; the two
    // rewriting routes then disagree on the word a.g.h
    Skeleton sk;
    sk.k = 3;
    sk.vertices = {"*"};
    sk.edges = {{"a", 1, "*", "*"}, {"b", 1, "*", "*"}, {"c", 1, "*", "*"},
                {"g", 2, "*", "*"}, {"h", 3, "*", "*"}};
    SquareTable sq;
    sq.entries = {{"a", "g", "g", "b"}, {"b", "g", "g", "a"}, {"c", "g", "g", "c"},
                  {"a", "h", "h", "a"}, {"b", "h", "h", "c"}, {"c", "h", "h", "b"},
                  {"g", "h", "h", "g"}};
    CHECK_THROWS_AS(KGraph::validate(sk, sq), CubeInconsistency);
}

TEST_CASE("preferred form sorts words by colour through square moves") {
    auto t = ts::t2();
    EdgeId e = t->edge("e"), f = t->edge("f");
    Morphism sorted = t->make(0, {f, e});  // descending word gets flipped
    CHECK(sorted.word() == std::vector<EdgeId>{e, f});
    CHECK(sorted.str() == "e.f");
    CHECK(sorted.degree() == Degree{1, 1});

    // e.f and f.e present the same morphism
    CHECK(t->compose(t->edge_morphism(e), t->edge_morphism(f)) ==
          t->compose(t->edge_morphism(f), t->edge_morphism(e)));
}

TEST_CASE("composition demands matching endpoints") {
    auto c = ts::c2();
    Morphism a = c->edge_morphism(c->edge("a"));  // u -> v
    Morphism b = c->edge_morphism(c->edge("b"));  // v -> u
    CHECK(c->compose(a, b).str() == "a.b");
    CHECK_THROWS_AS(c->compose(a, a), NotComposable);
    CHECK_THROWS_AS(c->make(c->vertex("v"), {c->edge("b"), c->edge("b")}), NotComposable);

    auto g = ts::b2();
    CHECK_THROWS_AS(g->compose(g->identity(0), a), GraphMismatch);
}

TEST_CASE("segment slices along any degree split") {
    auto t = ts::t2();
    Morphism sq = t->make(0, {t->edge("e"), t->edge("f")});
    CHECK(t->segment(sq, Degree{0, 0}, Degree{1, 0}).str() == "e");
    CHECK(t->segment(sq, Degree{1, 0}, Degree{1, 1}).str() == "f");
    CHECK(t->segment(sq, Degree{0, 0}, Degree{0, 1}).str() == "f");
    CHECK(t->segment(sq, Degree{0, 1}, Degree{1, 1}).str() == "e");
    CHECK(t->segment(sq, Degree{0, 0}, Degree{0, 0}).is_identity());
    CHECK(t->segment(sq, Degree{1, 1}, Degree{1, 1}).is_identity());
    CHECK_THROWS_AS(t->segment(sq, Degree{1, 0}, Degree{0, 1}), DegreeOutOfRange);
    CHECK_THROWS_AS(t->segment(sq, Degree{0, 0}, Degree{2, 0}), DegreeOutOfRange);

    // segments compose back to the whole
    CHECK(t->compose(t->segment(sq, Degree{0, 0}, Degree{0, 1}),
                     t->segment(sq, Degree{0, 1}, Degree{1, 1})) == sq);
}

TEST_CASE("factorisation is unique at every degree split (oracle)") {
    for (const auto& g : {ts::t2(), ts::cube3(), ts::c2()}) {
        for (const Degree& n : KGraph::degrees_upto(g->rank(), 3)) {
            for (const Morphism& lam : g->paths(n)) {
                for (const Degree& m : KGraph::degrees_upto(g->rank(), n.total())) {
                    if (!(m <= n)) continue;
                    // brute force: count factorisations lam = mu.nu with d(mu) = m
                    int count = 0;
                    for (const Morphism& mu : g->paths_from(lam.range(), m))
                        for (const Morphism& nu : g->paths_from(mu.source(), n - m))
                            if (g->compose(mu, nu) == lam) ++count;
                    CHECK(count == 1);
                    CHECK(g->compose(g->segment(lam, Degree(g->rank()), m),
                                     g->segment(lam, m, n)) == lam);
                }
            }
        }
    }
}

TEST_CASE("path enumeration is deterministic and complete") {
    auto g = ts::b2();
    auto ps = g->paths(Degree{2});
    REQUIRE(ps.size() == 4);
    CHECK(ps[0].str() == "f1.f1");
    CHECK(ps[1].str() == "f1.f2");
    CHECK(ps[2].str() == "f2.f1");
    CHECK(ps[3].str() == "f2.f2");

    auto t = ts::t2();
    CHECK(t->paths(Degree{2, 1}).size() == 1);  // unique morphism per degree

    auto c = ts::c2();
    CHECK(c->paths_from(c->vertex("v"), Degree{2}).size() == 1);  // a.b only
    CHECK(c->paths_between(c->vertex("v"), c->vertex("u"), Degree{1}).size() == 1);
}

TEST_CASE("minimal common extensions") {
    auto t = ts::t2();
    Morphism e = t->edge_morphism(t->edge("e"));
    Morphism f = t->edge_morphism(t->edge("f"));
    auto m = t->mce(e, f);
    REQUIRE(m.size() == 1);
    CHECK(m[0].degree() == Degree{1, 1});

    auto g = ts::b2();
    Morphism f1 = g->edge_morphism(g->edge("f1"));
    Morphism f2 = g->edge_morphism(g->edge("f2"));
    CHECK(g->mce(f1, f2).empty());
    CHECK(g->mce(f1, f1) == std::vector<Morphism>{f1});
    // extensions of comparable morphisms
    auto m2 = g->mce(f1, g->identity(0));
    CHECK(m2 == std::vector<Morphism>{f1});
}

TEST_CASE("rearrange reaches an arbitrary colour order and keeps the morphism") {
    auto c = ts::cube3();
    Morphism lam = c->make(0, {c->edge("x"), c->edge("y"), c->edge("z")});
    std::vector<int> target{2, 0, 1};
    auto w = c->rearrange(lam, target);
    REQUIRE(w.size() == 3);
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(c->edge_colour(w[i]) == target[i]);
    CHECK(c->make(lam.range(), w) == lam);
    CHECK_THROWS_AS(c->rearrange(lam, std::vector<int>{0, 0, 1}), DegreeOutOfRange);
}

TEST_CASE("sources are detected") {
    CHECK(!ts::b2()->has_sources());
    CHECK(!ts::c2()->has_sources());
    Skeleton sk;
    sk.k = 1;
    sk.vertices = {"u", "v"};
    sk.edges = {{"a", 1, "u", "v"}};
    CHECK(KGraph::validate(sk, {})->has_sources());
}

TEST_CASE("seeded word generator produces valid composable words") {
    auto t = ts::t2();
    std::mt19937_64 rng(42);
    for (int i = 0; i < 50; ++i) {
        auto [range, w] = ts::random_edge_word(*t, rng, 6);
        Morphism m = t->make(range, w);  // throws if not composable
        CHECK(m.size() == 6);
    }
}
