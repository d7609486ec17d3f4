#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kcoh/cubical.hpp"
#include "kcoh/derived.hpp"
#include "kcoh/diagnostics.hpp"
#include "support.hpp"

#include <random>

using namespace kcoh;
using namespace ts;

namespace {

/// d(r-1) . d(r) vanishes for every rank where cubes exist.
void check_chain_complex(const GraphPtr& g) {
    for (int r = 2; r <= g->rank(); ++r) {
        auto hi = CubeList::build(g, r);
        auto lo = CubeList::build(g, r - 1);
        if (hi->size() == 0) continue;
        auto lower = CubeList::build(g, r - 2);
        IntMatrix d_hi = boundary_matrix(*hi, *lo);
        IntMatrix d_lo = boundary_matrix(*lo, *lower);
        CHECK(d_lo.mul(d_hi).is_zero());
    }
}

GraphPtr two_islands() {
    Skeleton sk;
    sk.k = 1;
    sk.vertices = {"v1", "v2"};
    sk.edges = {{"l1", 1, "v1", "v1"}, {"l2", 1, "v2", "v2"}};
    return KGraph::validate(sk, {});
}

GraphPtr one_arrow() {
    Skeleton sk;
    sk.k = 1;
    sk.vertices = {"u", "w"};
    sk.edges = {{"a", 1, "u", "w"}};
    return KGraph::validate(sk, {});
}

}  // namespace

TEST_CASE("product of two single-vertex 1-graphs") {
    ProductGraph pg = ProductGraph::build(b2(), b2());
    const GraphPtr& g = pg.graph();
    CHECK(g->rank() == 2);
    CHECK(g->vertex_count() == 1);
    CHECK(g->edge_count() == 4);
    CHECK(g->square_count() == 4);
    CHECK(g->paths(Degree{1, 1}).size() == 4);

    // mixed square: (f1,*).(*,f2) = (*,f2).(f1,*)
    EdgeId e1 = g->edge("(f1,*)");
    EdgeId e2 = g->edge("(*,f2)");
    auto [gp, fp] = g->flip_asc(e1, e2);
    CHECK(gp == e2);
    CHECK(fp == e1);
    check_chain_complex(g);
}

TEST_CASE("product projections are functors") {
    std::mt19937_64 rng(11);
    for (auto [a, b] : {std::pair{t2(), b2()}, std::pair{t2(), c2()}, std::pair{flip2(), c2()}}) {
        ProductGraph pg = ProductGraph::build(a, b);
        const GraphPtr& g = pg.graph();
        CHECK(g->rank() == a->rank() + b->rank());
        CHECK(g->vertex_count() == a->vertex_count() * b->vertex_count());
        CHECK(g->edge_count() ==
              a->edge_count() * b->vertex_count() + a->vertex_count() * b->edge_count());
        check_chain_complex(g);

        std::vector<Morphism> pool = all_morphisms_upto(g, 3);
        for (int trial = 0; trial < 60; ++trial) {
            const Morphism& mu = pool[pick(rng, pool.size())];
            const Morphism* nu = random_with_range(pool, mu.source(), rng);
            REQUIRE(nu != nullptr);
            Morphism comp = g->compose(mu, *nu);
            CHECK(pg.first(comp) == a->compose(pg.first(mu), pg.first(*nu)));
            CHECK(pg.second(comp) == b->compose(pg.second(mu), pg.second(*nu)));
        }
        CHECK(pg.first(g->identity(0)).is_identity());
        CHECK(pg.second(g->identity(0)).is_identity());
    }
    ProductGraph pg = ProductGraph::build(t2(), b2());
    CHECK_THROWS_AS(pg.first(t2()->identity(0)), GraphMismatch);
}

TEST_CASE("product of t2 and c2 has crossed endpoints") {
    GraphPtr a = t2();
    GraphPtr b = c2();
    ProductGraph pg = ProductGraph::build(a, b);
    const GraphPtr& g = pg.graph();
    // factor-1 copies of the t2 square at each c2 vertex, plus mixed squares
    CHECK(g->square_count() == 1 * 2 + 0 + 2 * 2);
    EdgeId e = g->edge("(e,u)");
    CHECK(g->edge_range(e) == g->vertex("(*,u)"));
    EdgeId m = g->edge("(*,a)");  // c2 edge a: u -> v (source -> range)
    CHECK(g->edge_source(m) == g->vertex("(*,u)"));
    CHECK(g->edge_range(m) == g->vertex("(*,v)"));
}

TEST_CASE("pullback of b2 along two unit columns") {
    PullbackGraph pg = PullbackGraph::build(b2(), {Degree{1}, Degree{1}});
    const GraphPtr& g = pg.graph();
    CHECK(g->rank() == 2);
    CHECK(g->vertex_count() == 1);
    CHECK(g->edge_count() == 4);
    CHECK(g->square_count() == 4);

    // the square through f1.f2 reads (f1,1).(f2,2) = (f1,2).(f2,1)
    auto [gp, fp] = g->flip_asc(g->edge("(f1,1)"), g->edge("(f2,2)"));
    CHECK(gp == g->edge("(f1,2)"));
    CHECK(fp == g->edge("(f2,1)"));

    GraphPtr base = pg.base();
    Morphism lifted = g->make(0, {g->edge("(f1,1)"), g->edge("(f2,2)")});
    CHECK(pg.base_of(lifted) == base->make(0, {base->edge("f1"), base->edge("f2")}));
    check_chain_complex(g);
}

TEST_CASE("pullback base projection is a functor") {
    std::mt19937_64 rng(12);
    PullbackGraph pg = PullbackGraph::build(t2(), {Degree{1, 1}});
    const GraphPtr& g = pg.graph();
    CHECK(g->rank() == 1);
    CHECK(g->edge_count() == 1);  // the unique degree-(1,1) path of t2

    GraphPtr fb = flip2();
    PullbackGraph pg2 = PullbackGraph::build(fb, {Degree{1, 0}, Degree{0, 2}});
    const GraphPtr& h = pg2.graph();
    CHECK(h->edge_count() == 2 + 4);  // colour 1: x,y; colour 2: degree-(0,2) words
    check_chain_complex(h);
    std::vector<Morphism> pool = all_morphisms_upto(h, 3);
    for (int trial = 0; trial < 60; ++trial) {
        const Morphism& mu = pool[pick(rng, pool.size())];
        const Morphism* nu = random_with_range(pool, mu.source(), rng);
        REQUIRE(nu != nullptr);
        CHECK(pg2.base_of(h->compose(mu, *nu)) ==
              fb->compose(pg2.base_of(mu), pg2.base_of(*nu)));
        // degree transforms by the column map
        Degree dd = pg2.base_of(mu).degree();
        Degree expect = Degree{mu.degree()[0], 2 * mu.degree()[1]};
        CHECK(dd == expect);
    }

    CHECK_THROWS_AS(PullbackGraph::build(t2(), {}), ValidationError);
    CHECK_THROWS_AS(PullbackGraph::build(t2(), {Degree{1}}), ValidationError);
}

TEST_CASE("skew product over a finite cyclic group") {
    GraphPtr base = b2();
    std::vector<GroupElem> vals = {GroupElem{1}, GroupElem{1}};
    SkewGraph sg = SkewGraph::build(base, Group::integers_mod(2), vals);
    const GraphPtr& g = sg.graph();
    CHECK(g->rank() == 1);
    CHECK(g->vertex_count() == 2);
    CHECK(g->edge_count() == 4);
    // source of (f1,0) sits over the shifted residue
    EdgeId e = g->edge("(f1,0)");
    CHECK(g->edge_range(e) == g->vertex("(*,0)"));
    CHECK(g->edge_source(e) == g->vertex("(*,1)"));
    CHECK(sg.vertex_label(g->vertex("(*,1)")) == Group::integers_mod(2).from_long(1));

    Morphism w = base->make(0, {base->edge("f1"), base->edge("f2")});
    CHECK(sg.value_of(w) == Group::integers_mod(2).zero());

    CHECK_THROWS_AS(SkewGraph::build(b2(), Group::integers(), vals), InfiniteResult);
    CHECK_THROWS_AS(SkewGraph::build(b2(), Group::rationals_mod1(), vals), InfiniteResult);
    CHECK_THROWS_AS(SkewGraph::build(b2(), Group::integers_mod(2), {GroupElem{1}}),
                    ValidationError);
}

TEST_CASE("skew product keeps squares functorial") {
    GraphPtr base = twist2();
    Group z4 = Group::integers_mod(4);
    // squares force val(a) - val(b) = val(p) - val(q)
    auto val = [&](long a, long b, long p, long q) {
        std::vector<GroupElem> v(4);
        v[static_cast<std::size_t>(base->edge("a"))] = z4.from_long(a);
        v[static_cast<std::size_t>(base->edge("b"))] = z4.from_long(b);
        v[static_cast<std::size_t>(base->edge("p"))] = z4.from_long(p);
        v[static_cast<std::size_t>(base->edge("q"))] = z4.from_long(q);
        return v;
    };
    CHECK_THROWS_AS(SkewGraph::build(base, z4, val(1, 0, 0, 0)), InvalidFunctor);

    SkewGraph sg = SkewGraph::build(base, z4, val(1, 0, 1, 0));
    const GraphPtr& g = sg.graph();
    CHECK(g->vertex_count() == 8);
    CHECK(g->edge_count() == 16);
    CHECK(g->square_count() == 8);
    check_chain_complex(g);

    // base projection is a functor and value_of tracks the residue shift
    std::mt19937_64 rng(13);
    std::vector<Morphism> pool = all_morphisms_upto(g, 3);
    Group z = sg.group();
    for (int trial = 0; trial < 60; ++trial) {
        const Morphism& mu = pool[pick(rng, pool.size())];
        const Morphism* nu = random_with_range(pool, mu.source(), rng);
        REQUIRE(nu != nullptr);
        Morphism comp = g->compose(mu, *nu);
        CHECK(sg.base_of(comp) == base->compose(sg.base_of(mu), sg.base_of(*nu)));
        GroupElem shift = z.sub(sg.vertex_label(mu.source()), sg.vertex_label(mu.range()));
        CHECK(shift == sg.value_of(sg.base_of(mu)));
    }
}

TEST_CASE("derived cocycles satisfy the cocycle identity") {
    Group z4 = Group::integers_mod(4);

    // base cocycle on t2 charging each reorder by 1
    GraphPtr base = t2();
    CubicalCochain phi(CubeList::build(base, 2), z4);
    phi.set(0, z4.from_long(1));
    Cat2Cocycle c = c_phi(phi);

    SUBCASE("pullback") {
        PullbackGraph pg = PullbackGraph::build(base, {Degree{1, 0}, Degree{0, 1}});
        Cat2Cocycle lifted = pullback_cocycle(pg, c);
        CHECK(lifted.kind() == "pullback");
        CHECK(cat2_eval_and_check(lifted).ok);
        const GraphPtr& g = pg.graph();
        std::mt19937_64 rng(21);
        std::vector<Morphism> pool = all_morphisms_upto(g, 3);
        for (int trial = 0; trial < 50; ++trial) {
            const Morphism& mu = pool[pick(rng, pool.size())];
            const Morphism* nu = random_with_range(pool, mu.source(), rng);
            REQUIRE(nu != nullptr);
            CHECK(lifted.eval(mu, *nu) == c.eval(pg.base_of(mu), pg.base_of(*nu)));
        }
    }

    SUBCASE("product with a zero factor") {
        GraphPtr cc = c2();
        ProductGraph pg = ProductGraph::build(base, cc);
        Cat2Cocycle mixed = product_cocycle(pg, c, zero_cocycle(cc, z4));
        CHECK(mixed.kind() == "product");
        CHECK(cat2_eval_and_check(mixed).ok);
        const GraphPtr& g = pg.graph();
        std::mt19937_64 rng(22);
        std::vector<Morphism> pool = all_morphisms_upto(g, 3);
        for (int trial = 0; trial < 50; ++trial) {
            const Morphism& mu = pool[pick(rng, pool.size())];
            const Morphism* nu = random_with_range(pool, mu.source(), rng);
            REQUIRE(nu != nullptr);
            CHECK(mixed.eval(mu, *nu) == c.eval(pg.first(mu), pg.first(*nu)));
        }
        CHECK_THROWS_AS(product_cocycle(pg, c, zero_cocycle(cc, Group::integers())),
                        UnsupportedCoefficients);
        CHECK_THROWS_AS(product_cocycle(pg, c, zero_cocycle(b2(), z4)), GraphMismatch);
    }

    SUBCASE("skew lift") {
        std::vector<GroupElem> vals = {GroupElem{1}, GroupElem{0}};  // e, f
        SkewGraph sg = SkewGraph::build(base, Group::integers_mod(2), vals);
        Cat2Cocycle lifted = skew_cocycle(sg, c);
        CHECK(lifted.kind() == "skew");
        CHECK(cat2_eval_and_check(lifted).ok);
        std::mt19937_64 rng(23);
        const GraphPtr& g = sg.graph();
        std::vector<Morphism> pool = all_morphisms_upto(g, 3);
        for (int trial = 0; trial < 50; ++trial) {
            const Morphism& mu = pool[pick(rng, pool.size())];
            const Morphism* nu = random_with_range(pool, mu.source(), rng);
            REQUIRE(nu != nullptr);
            CHECK(lifted.eval(mu, *nu) == c.eval(sg.base_of(mu), sg.base_of(*nu)));
        }
        CHECK_THROWS_AS(skew_cocycle(sg, zero_cocycle(b2(), z4)), GraphMismatch);
    }
}

TEST_CASE("canonical blocks and overrides") {
    GraphPtr g = t2();
    EdgeId e = g->edge("e"), f = g->edge("f");
    CHECK(g->block_at(0) == g->make(0, {e, f}));

    // override picks a different degree-(1,...,1) path
    Skeleton sk;
    sk.k = 2;
    sk.vertices = {"*"};
    sk.edges = {{"x", 1, "*", "*"}, {"y", 1, "*", "*"}, {"p", 2, "*", "*"}, {"q", 2, "*", "*"}};
    SquareTable sq;
    sq.entries = {{"x", "p", "q", "y"}, {"x", "q", "p", "y"},
                  {"y", "p", "q", "x"}, {"y", "q", "p", "x"}};
    GraphPtr plain = KGraph::validate(sk, sq);
    CHECK(plain->block_at(0) ==
          plain->make(0, {plain->edge("x"), plain->edge("p")}));
    GraphPtr steered = KGraph::validate(sk, sq, {{"*", {"y", "q"}}});
    CHECK(steered->block_at(0) ==
          steered->make(0, {steered->edge("y"), steered->edge("q")}));

    CHECK_THROWS_AS(KGraph::validate(sk, sq, {{"*", {"x"}}}), ValidationError);
    CHECK_THROWS_AS(KGraph::validate(sk, sq, {{"*", {"x", "x"}}}), ValidationError);
    CHECK_THROWS_AS(KGraph::validate(sk, sq, {{"*", {"nope", "p"}}}), ValidationError);
    CHECK_THROWS_AS(KGraph::validate(sk, sq, {{"ghost", {"x", "p"}}}), ValidationError);

    GraphPtr oa = one_arrow();
    CHECK_THROWS_AS(oa->block_at(oa->vertex("u")), HasSources);
}

TEST_CASE("bounded aperiodicity search") {
    SUBCASE("two loops at one vertex separate every pair") {
        PeriodicityReport rep = periodicity_diagnostics(b2(), Degree{2});
        CHECK(rep.verdict == PeriodicityVerdict::AperiodicUpToBound);
        CHECK(rep.pairs_checked == 21);  // 7 morphisms up to degree 2, all parallel
        CHECK(rep.str() == "VERIFIED-APERIODIC-UP-TO-BOUND");
    }
    SUBCASE("the commuting torus never separates parallel pairs") {
        GraphPtr g = t2();
        PeriodicityReport rep = periodicity_diagnostics(g, Degree{2, 2});
        CHECK(rep.verdict == PeriodicityVerdict::PeriodicWitness);
        REQUIRE(rep.witness.has_value());
        CHECK(rep.witness->first == g->identity(0));
        CHECK(rep.witness->second == g->make(0, {g->edge("f")}));
        CHECK(rep.pairs_checked == 1);
        CHECK(rep.str() == "PERIODIC-WITNESS((*), f)");
    }
    SUBCASE("no parallel pairs within the bound is inconclusive") {
        PeriodicityReport rep = periodicity_diagnostics(c2(), Degree{1});
        CHECK(rep.verdict == PeriodicityVerdict::Inconclusive);
        CHECK(rep.pairs_checked == 0);
        CHECK(rep.str() == "INCONCLUSIVE");
    }
    SUBCASE("swap squares separate pairs within one block") {
        PeriodicityReport rep = periodicity_diagnostics(flip2(), Degree{1, 1});
        CHECK(rep.verdict == PeriodicityVerdict::AperiodicUpToBound);
    }
    SUBCASE("error paths") {
        CHECK_THROWS_AS(periodicity_diagnostics(one_arrow(), Degree{1}), HasSources);
        CHECK_THROWS_AS(periodicity_diagnostics(t2(), Degree{2}), DegreeOutOfRange);
        CHECK_THROWS_AS(periodicity_diagnostics(t2(), Degree{-1, 0}), DegreeOutOfRange);
    }
}

TEST_CASE("bounded cofinality check") {
    SUBCASE("single vertex meets everything") {
        GraphPtr g = t2();
        CofinalityReport rep = cofinality_diagnostics(g, Degree{2, 2});
        CHECK(rep.cofinal);
        CHECK(rep.paths_checked == 9);
        CHECK(rep.str(*g) == "COFINAL-UP-TO-BOUND");
    }
    SUBCASE("a two-vertex cycle reaches both vertices") {
        CofinalityReport rep = cofinality_diagnostics(c2(), Degree{2});
        CHECK(rep.cofinal);
    }
    SUBCASE("crossing squares stay cofinal") {
        CHECK(cofinality_diagnostics(twist2(), Degree{1, 1}).cofinal);
    }
    SUBCASE("disjoint islands are not cofinal") {
        GraphPtr g = two_islands();
        CofinalityReport rep = cofinality_diagnostics(g, Degree{1});
        CHECK_FALSE(rep.cofinal);
        REQUIRE(rep.witness.has_value());
        CHECK(rep.witness->first == g->vertex("v2"));
        CHECK(rep.witness->second == g->identity(g->vertex("v1")));
        CHECK(rep.str(*g) == "NOT-COFINAL-WITNESS(v2, (v1))");
    }
    SUBCASE("error paths") {
        CHECK_THROWS_AS(cofinality_diagnostics(one_arrow(), Degree{1}), HasSources);
        CHECK_THROWS_AS(cofinality_diagnostics(t2(), Degree{2}), DegreeOutOfRange);
    }
}

TEST_CASE("derived graphs feed the cube complex") {
    // chain-complex identity across every derived construction in one place
    check_chain_complex(ProductGraph::build(b2(), b2()).graph());
    check_chain_complex(ProductGraph::build(t2(), t2()).graph());
    check_chain_complex(PullbackGraph::build(b2(), {Degree{1}, Degree{1}, Degree{2}}).graph());
    // flip2 squares force equal values on parallel edges
    std::vector<GroupElem> vals = {GroupElem{1}, GroupElem{1}, GroupElem{2}, GroupElem{2}};
    check_chain_complex(SkewGraph::build(flip2(), Group::integers_mod(3), vals).graph());
}
