#include "kcoh/bridge.hpp"

#include <algorithm>
#include <random>
#include <utility>

namespace kcoh {

namespace {

void check_word(const ColouredWord& w) {
    if (!w.g) throw GraphMismatch("coloured word carries no graph");
    const KGraph& g = *w.g;
    if (w.range >= static_cast<VertexId>(g.vertex_count()))
        throw ValidationError("coloured word: unknown range vertex");
    VertexId at = w.range;
    for (EdgeId e : w.word) {
        if (e >= static_cast<EdgeId>(g.edge_count()))
            throw ValidationError("coloured word: unknown edge");
        if (g.edge_range(e) != at)
            throw NotComposable("coloured word breaks at " + g.edge_name(e));
        at = g.edge_source(e);
    }
}

std::vector<int> descent_positions(const KGraph& g, const std::vector<EdgeId>& w) {
    std::vector<int> out;
    for (int p = 0; p + 1 < static_cast<int>(w.size()); ++p)
        if (g.edge_colour(w[p]) > g.edge_colour(w[p + 1])) out.push_back(p);
    return out;
}

}  // namespace

ShuffleResult shuffle(const CubicalCochain& phi, const ColouredWord& w,
                      ShuffleStrategy strategy, std::uint64_t seed) {
    if (phi.rank_r() != 2) throw DegreeOutOfRange("shuffle needs a rank-2 cochain");
    if (phi.cubes()->graph() != w.g)
        throw GraphMismatch("cochain and word live on different graphs");
    check_word(w);
    const KGraph& g = *w.g;
    const Group& grp = phi.group();

    std::mt19937_64 rng(seed);
    std::vector<EdgeId> cur = w.word;
    GroupElem total = grp.zero();
    int moves = 0;
    for (;;) {
        std::vector<int> ds = descent_positions(g, cur);
        if (ds.empty()) break;
        int p = (strategy == ShuffleStrategy::LeftmostDescent)
                    ? ds.front()
                    : ds[static_cast<std::size_t>(rng() % ds.size())];
        auto [f, gg] = g.flip_desc(cur[p], cur[p + 1]);
        // charge the square just crossed, in its preferred form
        total = grp.add(total, phi.value_at(g.make(g.edge_range(f), {f, gg})));
        cur[p] = f;
        cur[p + 1] = gg;
        ++moves;
    }
    return ShuffleResult{g.make(w.range, std::move(cur)), std::move(total), moves};
}

GroupElem shuffle_checked(const CubicalCochain& phi, const ColouredWord& w, std::uint64_t seed) {
    ShuffleResult a = shuffle(phi, w, ShuffleStrategy::LeftmostDescent, 0);
    ShuffleResult b = shuffle(phi, w, ShuffleStrategy::SeededDescent, seed);
    if (!(a.total == b.total) || !(a.preferred == b.preferred))
        throw NotACocycle("shuffle value depends on the move order; the cochain fails the cocycle test");
    return a.total;
}

GroupElem Cat2Cocycle::eval(const Morphism& mu, const Morphism& nu) const {
    if (mu.graph() != impl_->g || nu.graph() != impl_->g)
        throw GraphMismatch("cocycle evaluated on foreign morphisms");
    if (mu.source() != nu.range()) throw NotComposable("cocycle arguments do not compose");
    return impl_->eval(mu, nu);
}

namespace {

struct FromCubicalImpl final : Cat2Cocycle::Impl {
    CubicalCochain phi;
    explicit FromCubicalImpl(CubicalCochain p) : phi(std::move(p)) {
        grp = phi.group();
        g = phi.cubes()->graph();
    }
    GroupElem eval(const Morphism& mu, const Morphism& nu) const override {
        std::vector<EdgeId> w = mu.word();
        w.insert(w.end(), nu.word().begin(), nu.word().end());
        return shuffle(phi, ColouredWord{g, mu.range(), std::move(w)}).total;
    }
    std::string kind() const override { return "from-cubical"; }
};

struct CoboundaryImpl final : Cat2Cocycle::Impl {
    Cat1Evaluator b;
    explicit CoboundaryImpl(Cat1Evaluator bb) : b(std::move(bb)) {
        grp = b.group();
        g = b.graph();
    }
    GroupElem eval(const Morphism& mu, const Morphism& nu) const override {
        return grp.add(grp.sub(b.eval(mu), b.eval(g->compose(mu, nu))), b.eval(nu));
    }
    std::string kind() const override { return "cat-coboundary"; }
};

struct ZeroImpl final : Cat2Cocycle::Impl {
    ZeroImpl(std::shared_ptr<const KGraph> gg, Group gr) {
        g = std::move(gg);
        grp = gr;
    }
    GroupElem eval(const Morphism&, const Morphism&) const override { return grp.zero(); }
    std::string kind() const override { return "zero"; }
};

struct SumImpl final : Cat2Cocycle::Impl {
    Cat2Cocycle a, b;
    SumImpl(Cat2Cocycle x, Cat2Cocycle y) : a(std::move(x)), b(std::move(y)) {
        if (a.graph() != b.graph()) throw GraphMismatch("cocycle sum across graphs");
        if (!(a.group() == b.group()))
            throw UnsupportedCoefficients("cocycle sum across coefficient groups");
        g = a.graph();
        grp = a.group();
    }
    GroupElem eval(const Morphism& mu, const Morphism& nu) const override {
        return grp.add(a.eval(mu, nu), b.eval(mu, nu));
    }
    std::string kind() const override { return "sum"; }
};

struct NegImpl final : Cat2Cocycle::Impl {
    Cat2Cocycle a;
    explicit NegImpl(Cat2Cocycle x) : a(std::move(x)) {
        g = a.graph();
        grp = a.group();
    }
    GroupElem eval(const Morphism& mu, const Morphism& nu) const override {
        return grp.neg(a.eval(mu, nu));
    }
    std::string kind() const override { return "negate"; }
};

}  // namespace

Cat2Cocycle c_phi(const CubicalCochain& phi) {
    if (phi.rank_r() != 2) throw DegreeOutOfRange("c_phi needs a rank-2 cochain");
    CocycleVerdict v = is_cub_2cocycle(phi);
    if (!v.ok)
        throw NotACocycle("not a cubical 2-cocycle; offending 3-cube " + v.witness->str());
    return Cat2Cocycle(std::make_shared<FromCubicalImpl>(phi));
}

Cat2Cocycle cat_coboundary(const Cat1Evaluator& b) {
    return Cat2Cocycle(std::make_shared<CoboundaryImpl>(b));
}

Cat2Cocycle zero_cocycle(std::shared_ptr<const KGraph> g, Group grp) {
    return Cat2Cocycle(std::make_shared<ZeroImpl>(std::move(g), grp));
}

Cat2Cocycle cocycle_sum(const Cat2Cocycle& a, const Cat2Cocycle& b) {
    return Cat2Cocycle(std::make_shared<SumImpl>(a, b));
}

Cat2Cocycle cocycle_neg(const Cat2Cocycle& a) {
    return Cat2Cocycle(std::make_shared<NegImpl>(a));
}

TripleVerdict cat2_eval_and_check(const Cat2Cocycle& c, int exhaustive_len, int samples,
                                  int sample_len, std::uint64_t seed) {
    const auto& g = c.graph();
    const Group& grp = c.group();

    auto pool_upto = [&](int len) {
        std::vector<Morphism> pool;
        for (const Degree& d : KGraph::degrees_upto(g->rank(), len))
            for (const Morphism& m : g->paths(d)) pool.push_back(m);
        return pool;
    };
    auto bucket = [&](const std::vector<Morphism>& pool) {
        std::vector<std::vector<const Morphism*>> by_range(
            static_cast<std::size_t>(g->vertex_count()));
        for (const Morphism& m : pool) by_range[m.range()].push_back(&m);
        return by_range;
    };
    auto triple_fails = [&](const Morphism& l1, const Morphism& l2, const Morphism& l3) {
        GroupElem lhs = grp.add(c.eval(l1, l2), c.eval(g->compose(l1, l2), l3));
        GroupElem rhs = grp.add(c.eval(l2, l3), c.eval(l1, g->compose(l2, l3)));
        return !(lhs == rhs);
    };

    std::vector<Morphism> pool = pool_upto(exhaustive_len);
    auto by_range = bucket(pool);

    for (const Morphism& m : pool) {
        Morphism idr = g->identity(m.range()), ids = g->identity(m.source());
        if (!grp.is_zero(c.eval(idr, m)) || !grp.is_zero(c.eval(m, ids)))
            return {false, std::array<Morphism, 3>{idr, m, ids}};
    }
    for (const Morphism& l1 : pool)
        for (const Morphism* l2 : by_range[l1.source()])
            for (const Morphism* l3 : by_range[l2->source()])
                if (triple_fails(l1, *l2, *l3))
                    return {false, std::array<Morphism, 3>{l1, *l2, *l3}};

    std::mt19937_64 rng(seed);
    std::vector<Morphism> big = pool_upto(sample_len);
    auto big_by_range = bucket(big);
    for (int t = 0; t < samples; ++t) {
        const Morphism& l1 = big[rng() % big.size()];
        const auto& c2 = big_by_range[l1.source()];
        const Morphism& l2 = *c2[rng() % c2.size()];
        const auto& c3 = big_by_range[l2.source()];
        const Morphism& l3 = *c3[rng() % c3.size()];
        if (triple_fails(l1, l2, l3)) return {false, std::array<Morphism, 3>{l1, l2, l3}};
    }
    return {};
}

CubicalCochain restrict_to_squares(const Cat2Cocycle& c) {
    const auto& g = c.graph();
    auto q2 = CubeList::build(g, 2);
    CubicalCochain out(q2, c.group());
    for (int i = 0; i < q2->size(); ++i) {
        const Morphism& sq = q2->cube(i);
        EdgeId f = sq.word()[0], gg = sq.word()[1];
        auto [gp, fp] = g->flip_asc(f, gg);
        GroupElem desc = c.eval(g->edge_morphism(gp), g->edge_morphism(fp));
        GroupElem asc = c.eval(g->edge_morphism(f), g->edge_morphism(gg));
        out.set(i, c.group().sub(desc, asc));
    }
    return out;
}

ClassCertificate cub_class_equal(const CubicalCochain& phi1, const CubicalCochain& phi2) {
    if (phi1.cubes()->graph() != phi2.cubes()->graph())
        throw GraphMismatch("class comparison across graphs");
    if (!(phi1.group() == phi2.group()))
        throw UnsupportedCoefficients("class comparison across coefficient groups");
    if (phi1.rank_r() != 2) throw DegreeOutOfRange("class comparison needs rank-2 cochains");
    for (const CubicalCochain* p : {&phi1, &phi2})
        if (CocycleVerdict v = is_cub_2cocycle(*p); !v.ok)
            throw NotACocycle("class comparison needs 2-cocycles; offending 3-cube " +
                              v.witness->str());

    const auto& g = phi1.cubes()->graph();
    const Group& grp = phi1.group();
    const auto& q2 = phi1.cubes();
    auto q1 = CubeList::build(g, 1);
    CubicalCochain psi = phi1.sub(phi2);

    IntMatrix D = boundary_matrix(*q2, *q1).transpose();  // rows Q_2, cols Q_1
    const int rows = D.rows(), cols = D.cols();

    CubicalCochain f(q1, grp);
    switch (grp.kind()) {
        case Group::Kind::Integers: {
            std::vector<Int> b(static_cast<std::size_t>(rows));
            for (int i = 0; i < rows; ++i) b[static_cast<std::size_t>(i)] = numerator(psi.value(i).v);
            auto x = solve_integer(D, b);
            if (!x) return {};
            for (int j = 0; j < cols; ++j)
                f.set(j, grp.reduce(Rational((*x)[static_cast<std::size_t>(j)])));
            break;
        }
        case Group::Kind::IntegersMod: {
            // solve D f = psi (mod n) over the integers via [D | nI]
            IntMatrix A(rows, cols + rows);
            for (int i = 0; i < rows; ++i) {
                for (int j = 0; j < cols; ++j) A.at(i, j) = D.at(i, j);
                A.at(i, cols + i) = grp.modulus();
            }
            std::vector<Int> b(static_cast<std::size_t>(rows));
            for (int i = 0; i < rows; ++i) b[static_cast<std::size_t>(i)] = numerator(psi.value(i).v);
            auto x = solve_integer(A, b);
            if (!x) return {};
            for (int j = 0; j < cols; ++j)
                f.set(j, grp.reduce(Rational((*x)[static_cast<std::size_t>(j)])));
            break;
        }
        case Group::Kind::RationalsMod1: {
            // Clearing denominators alone can miss solutions whose denominator
            // exceeds those of psi (an invariant factor d contributes a fresh
            // 1/d).  Work in Smith coordinates over the rationals instead:
            // with U D V = S the system is solvable mod 1 iff the entries of
            // U psi beyond the rank are integers.
            SmithResult s = smith_normal_form(D);
            std::vector<Rational> cvec(static_cast<std::size_t>(rows), Rational(0));
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < rows; ++j)
                    cvec[static_cast<std::size_t>(i)] +=
                        Rational(s.U.at(i, j)) * psi.value(j).v;
            for (int i = s.rank; i < rows; ++i)
                if (denominator(cvec[static_cast<std::size_t>(i)]) != 1) return {};
            std::vector<Rational> y(static_cast<std::size_t>(cols), Rational(0));
            for (int i = 0; i < s.rank; ++i)
                y[static_cast<std::size_t>(i)] =
                    cvec[static_cast<std::size_t>(i)] / Rational(s.D.at(i, i));
            for (int j = 0; j < cols; ++j) {
                Rational fj(0);
                for (int i = 0; i < cols; ++i)
                    fj += Rational(s.V.at(j, i)) * y[static_cast<std::size_t>(i)];
                f.set(j, grp.reduce(fj));
            }
            break;
        }
    }

    if (!(cub_coboundary(f) == psi))
        throw Error("internal: class-equality certificate failed to verify");
    return ClassCertificate{true, std::move(f)};
}

ColouredWord preferred_word(const Morphism& lam) {
    return ColouredWord{lam.graph(), lam.range(), lam.word()};
}

}  // namespace kcoh
