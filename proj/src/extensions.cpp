#include "kcoh/extensions.hpp"

#include "kcoh/errors.hpp"

#include <random>
#include <utility>

namespace kcoh {

struct Extension::Impl {
    enum class K { Cocycle, Trivial, Sum, Neg };
    K k = K::Trivial;
    std::shared_ptr<const KGraph> g;
    Group grp = Group::integers();
    std::optional<Cat2Cocycle> c;                // Cocycle
    std::shared_ptr<const Impl> left, right;     // Neg: left; Sum: both
};

namespace {

using Impl = Extension::Impl;
using K = Impl::K;

void check_shape(const Impl& X, const ExtElem& x) {
    switch (X.k) {
        case K::Cocycle:
        case K::Trivial:
            if (!x.kids.empty() || x.lam.graph() != X.g)
                throw BaseMismatch("element does not belong to this extension");
            return;
        case K::Neg:
            if (x.kids.size() != 1)
                throw BaseMismatch("element does not belong to this extension");
            check_shape(*X.left, x.kids[0]);
            return;
        case K::Sum:
            if (x.kids.size() != 2)
                throw BaseMismatch("element does not belong to this extension");
            check_shape(*X.left, x.kids[0]);
            check_shape(*X.right, x.kids[1]);
            return;
    }
}

Morphism q_rec(const Impl& X, const ExtElem& x) {
    switch (X.k) {
        case K::Cocycle:
        case K::Trivial:
            return x.lam;
        case K::Neg:
            return q_rec(*X.left, x.kids[0]);
        case K::Sum:
            return q_rec(*X.left, x.kids[0]);
    }
    throw Error("unreachable");
}

ExtElem canonical_lift(const Impl& X, const Morphism& lam) {
    switch (X.k) {
        case K::Cocycle:
        case K::Trivial:
            return ExtElem{lam, X.grp.zero(), {}};
        case K::Neg:
            return ExtElem{{}, {}, {canonical_lift(*X.left, lam)}};
        case K::Sum:
            return ExtElem{{}, {}, {canonical_lift(*X.left, lam), canonical_lift(*X.right, lam)}};
    }
    throw Error("unreachable");
}

GroupElem a_of_rec(const Impl& X, const ExtElem& x, const ExtElem& y) {
    switch (X.k) {
        case K::Cocycle:
        case K::Trivial:
            return X.grp.sub(x.a, y.a);
        case K::Neg:
            return X.grp.neg(a_of_rec(*X.left, x.kids[0], y.kids[0]));
        case K::Sum:
            return X.grp.add(a_of_rec(*X.left, x.kids[0], y.kids[0]),
                             a_of_rec(*X.right, x.kids[1], y.kids[1]));
    }
    throw Error("unreachable");
}

ExtElem act_raw(const Impl& X, const GroupElem& b, const ExtElem& x) {
    switch (X.k) {
        case K::Cocycle:
        case K::Trivial:
            return ExtElem{x.lam, X.grp.add(x.a, b), {}};
        case K::Neg:
            return ExtElem{{}, {}, {act_raw(*X.left, X.grp.neg(b), x.kids[0])}};
        case K::Sum:
            return ExtElem{{}, {}, {act_raw(*X.left, b, x.kids[0]), x.kids[1]}};
    }
    throw Error("unreachable");
}

ExtElem compose_raw(const Impl& X, const ExtElem& x, const ExtElem& y) {
    switch (X.k) {
        case K::Cocycle: {
            GroupElem tw = X.c->eval(x.lam, y.lam);  // checks composability
            Morphism mn = X.g->compose(x.lam, y.lam);
            return ExtElem{mn, X.grp.add(tw, X.grp.add(x.a, y.a)), {}};
        }
        case K::Trivial: {
            Morphism mn = X.g->compose(x.lam, y.lam);
            return ExtElem{mn, X.grp.add(x.a, y.a), {}};
        }
        case K::Neg:
            return ExtElem{{}, {}, {compose_raw(*X.left, x.kids[0], y.kids[0])}};
        case K::Sum:
            return ExtElem{{}, {}, {compose_raw(*X.left, x.kids[0], y.kids[0]),
                                    compose_raw(*X.right, x.kids[1], y.kids[1])}};
    }
    throw Error("unreachable");
}

ExtElem canon(const Impl& X, const ExtElem& x) {
    switch (X.k) {
        case K::Cocycle:
        case K::Trivial:
            return ExtElem{x.lam, X.grp.reduce(x.a.v), {}};
        case K::Neg:
            return ExtElem{{}, {}, {canon(*X.left, x.kids[0])}};
        case K::Sum: {
            ExtElem xs = canon(*X.left, x.kids[0]);
            ExtElem ys = canon(*X.right, x.kids[1]);
            Morphism lam = q_rec(*X.right, ys);
            GroupElem off = a_of_rec(*X.right, ys, canonical_lift(*X.right, lam));
            return ExtElem{{}, {}, {canon(*X.left, act_raw(*X.left, off, xs)),
                                    canon(*X.right, act_raw(*X.right, X.grp.neg(off), ys))}};
        }
    }
    throw Error("unreachable");
}

}  // namespace

bool ExtElem::operator==(const ExtElem& o) const {
    if (kids.size() != o.kids.size()) return false;
    if (kids.empty()) return lam == o.lam && a == o.a;
    for (std::size_t i = 0; i < kids.size(); ++i)
        if (!(kids[i] == o.kids[i])) return false;
    return true;
}

std::string ExtElem::str(const Group& grp) const {
    if (kids.empty()) return "(" + lam.str() + ", " + grp.str(a) + ")";
    if (kids.size() == 1) return "neg" + kids[0].str(grp);
    return "[" + kids[0].str(grp) + ", " + kids[1].str(grp) + "]";
}

Extension::Extension(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Extension Extension::from_cocycle(const Cat2Cocycle& c) {
    auto im = std::make_shared<Impl>();
    im->k = K::Cocycle;
    im->g = c.graph();
    im->grp = c.group();
    im->c = c;
    return Extension(im);
}

Extension Extension::trivial(std::shared_ptr<const KGraph> g, const Group& grp) {
    auto im = std::make_shared<Impl>();
    im->k = K::Trivial;
    im->g = std::move(g);
    im->grp = grp;
    return Extension(im);
}

Extension Extension::sum(const Extension& x, const Extension& y) {
    if (x.graph() != y.graph() || !(x.group() == y.group()))
        throw BaseMismatch("extension sum needs one base graph and group");
    auto im = std::make_shared<Impl>();
    im->k = K::Sum;
    im->g = x.graph();
    im->grp = x.group();
    im->left = x.impl();
    im->right = y.impl();
    return Extension(im);
}

Extension Extension::negate(const Extension& x) {
    auto im = std::make_shared<Impl>();
    im->k = K::Neg;
    im->g = x.graph();
    im->grp = x.group();
    im->left = x.impl();
    return Extension(im);
}

const std::shared_ptr<const KGraph>& Extension::graph() const { return impl_->g; }
const Group& Extension::group() const { return impl_->grp; }

std::string Extension::kind() const {
    switch (impl_->k) {
        case K::Cocycle: return "cocycle";
        case K::Trivial: return "trivial";
        case K::Sum: return "sum";
        case K::Neg: return "negate";
    }
    throw Error("unreachable");
}

ExtElem Extension::iota(VertexId v, const GroupElem& a) const {
    return element(impl_->g->identity(v), a);
}

ExtElem Extension::element(const Morphism& lam, const GroupElem& a) const {
    if (lam.graph() != impl_->g) throw GraphMismatch("morphism is not from the base graph");
    return canon(*impl_, act_raw(*impl_, a, canonical_lift(*impl_, lam)));
}

ExtElem Extension::compose(const ExtElem& x, const ExtElem& y) const {
    check_shape(*impl_, x);
    check_shape(*impl_, y);
    return canon(*impl_, compose_raw(*impl_, x, y));
}

Morphism Extension::q(const ExtElem& x) const {
    check_shape(*impl_, x);
    return q_rec(*impl_, x);
}

GroupElem Extension::a_of(const ExtElem& x, const ExtElem& y) const {
    check_shape(*impl_, x);
    check_shape(*impl_, y);
    if (!(q_rec(*impl_, x) == q_rec(*impl_, y)))
        throw BaseMismatch("a_of needs elements over the same base morphism");
    return impl_->grp.reduce(a_of_rec(*impl_, x, y).v);
}

ExtElem Extension::act(const GroupElem& b, const ExtElem& x) const {
    check_shape(*impl_, x);
    return canon(*impl_, act_raw(*impl_, b, x));
}

ExtElem Extension::canonicalise(const ExtElem& x) const {
    check_shape(*impl_, x);
    return canon(*impl_, x);
}

GroupElem Extension::group_part(const ExtElem& x) const {
    check_shape(*impl_, x);
    return impl_->grp.reduce(
        a_of_rec(*impl_, x, canonical_lift(*impl_, q_rec(*impl_, x))).v);
}

// ---------------------------------------------------------------------------

struct Section::Data {
    enum class K { Canonical, EdgeLifts, Perturbed } k = K::Canonical;
    Extension X;
    std::vector<GroupElem> offsets;       // EdgeLifts, by EdgeId
    std::shared_ptr<const Data> base;     // Perturbed
    std::optional<Cat1Evaluator> pert;    // Perturbed

    explicit Data(Extension x) : X(std::move(x)) {}
};

Section Section::canonical(const Extension& X) {
    return Section(std::make_shared<Data>(X));
}

Section Section::from_edge_lifts(const Extension& X, std::vector<GroupElem> edge_offsets) {
    if (edge_offsets.size() != static_cast<std::size_t>(X.graph()->edge_count()))
        throw ValidationError("edge-lift section needs one offset per skeleton edge");
    auto d = std::make_shared<Data>(X);
    d->k = Data::K::EdgeLifts;
    for (GroupElem& v : edge_offsets) v = X.group().reduce(v.v);
    d->offsets = std::move(edge_offsets);
    return Section(d);
}

Section Section::perturbed(const Section& s, const Cat1Evaluator& b) {
    const Extension& X = s.extension();
    if (b.graph() != X.graph()) throw GraphMismatch("perturbation lives on a different graph");
    if (!(b.group() == X.group()))
        throw UnsupportedCoefficients("perturbation group does not match the extension");
    auto d = std::make_shared<Data>(X);
    d->k = Data::K::Perturbed;
    d->base = s.d_;
    d->pert = b;
    return Section(d);
}

const Extension& Section::extension() const { return d_->X; }

ExtElem Section::at(const Morphism& lam) const {
    const Data& d = *d_;
    switch (d.k) {
        case Data::K::Canonical:
            return d.X.element(lam, d.X.group().zero());
        case Data::K::EdgeLifts: {
            const KGraph& g = *d.X.graph();
            if (lam.graph() != d.X.graph())
                throw GraphMismatch("morphism is not from the base graph");
            ExtElem acc = d.X.iota(lam.range(), d.X.group().zero());
            for (EdgeId e : lam.word())
                acc = d.X.compose(acc, d.X.element(g.edge_morphism(e), d.offsets[e]));
            return acc;
        }
        case Data::K::Perturbed:
            return d.X.act(d.pert->eval(lam), Section(d.base).at(lam));
    }
    throw Error("unreachable");
}

// ---------------------------------------------------------------------------

namespace {

struct FromSectionImpl final : Cat2Cocycle::Impl {
    Extension X;
    Section s;
    FromSectionImpl(Extension x, Section sec) : X(std::move(x)), s(std::move(sec)) {
        g = X.graph();
        grp = X.group();
    }
    GroupElem eval(const Morphism& mu, const Morphism& nu) const override {
        Morphism mn = g->compose(mu, nu);
        return X.a_of(X.compose(s.at(mu), s.at(nu)), s.at(mn));
    }
    std::string kind() const override { return "from-section"; }
};

}  // namespace

Cat2Cocycle section_cocycle(const Extension& X, const Section& s) {
    if (s.extension().impl() != X.impl())
        throw BaseMismatch("section belongs to a different extension");
    return Cat2Cocycle(std::make_shared<FromSectionImpl>(X, s));
}

CubicalCochain square_defect(const Extension& X, const Section& s) {
    if (s.extension().impl() != X.impl())
        throw BaseMismatch("section belongs to a different extension");
    const std::shared_ptr<const KGraph>& g = X.graph();
    auto q2 = CubeList::build(g, 2);
    CubicalCochain out(q2, X.group());
    for (int i = 0; i < q2->size(); ++i) {
        const Morphism& lam = q2->cube(i);
        EdgeId f = lam.word()[0], gg = lam.word()[1];
        auto [gp, fp] = g->flip_asc(f, gg);
        ExtElem fg = X.compose(s.at(g->edge_morphism(f)), s.at(g->edge_morphism(gg)));
        ExtElem gf = X.compose(s.at(g->edge_morphism(gp)), s.at(g->edge_morphism(fp)));
        out.set(i, X.a_of(fg, gf));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string ExtLawReport::str() const {
    auto line = [](const char* n, bool b) {
        return std::string(n) + ": " + (b ? "pass" : "FAIL") + "\n";
    };
    std::string out;
    out += line("unit-law", unit_law);
    out += line("inverse-law", inverse_law);
    out += line("commutativity", commutativity);
    out += line("canonical-section", canonical_section);
    out += line("a-of-additivity", a_of_additivity);
    out += line("square-transfer", square_transfer);
    if (failure) out += "first failure: " + *failure + "\n";
    return out;
}

ExtLawReport ext_law_suite(const std::vector<Cat2Cocycle>& samples, int pairs,
                           std::uint64_t seed) {
    if (samples.empty()) throw Error("ext_law_suite needs at least one cocycle sample");
    const std::shared_ptr<const KGraph> g = samples[0].graph();
    const Group grp = samples[0].group();
    for (const Cat2Cocycle& c : samples)
        if (c.graph() != g || !(c.group() == grp))
            throw BaseMismatch("cocycle samples must share one graph and group");

    std::mt19937_64 rng(seed);
    std::vector<Morphism> pool;
    for (const Degree& n : KGraph::degrees_upto(g->rank(), 3))
        for (const Morphism& m : g->paths(n)) pool.push_back(m);
    auto pick_m = [&]() -> const Morphism& { return pool[rng() % pool.size()]; };
    auto pick_from = [&](VertexId range) -> const Morphism* {
        std::vector<const Morphism*> cand;
        for (const Morphism& m : pool)
            if (m.range() == range) cand.push_back(&m);
        if (cand.empty()) return nullptr;
        return cand[rng() % cand.size()];
    };

    std::vector<Extension> exts;
    exts.reserve(samples.size());
    for (const Cat2Cocycle& c : samples) exts.push_back(Extension::from_cocycle(c));
    Extension triv = Extension::trivial(g, grp);

    ExtLawReport rep;
    auto fail = [&](bool& flag, const std::string& what) {
        flag = false;
        if (!rep.failure) rep.failure = what;
    };

    for (int t = 0; t < pairs; ++t) {
        const Extension& X = exts[static_cast<std::size_t>(t) % exts.size()];
        const Extension& Y = exts[static_cast<std::size_t>(t + 1) % exts.size()];
        const Morphism& mu = pick_m();
        const Morphism* nu = pick_from(mu.source());
        if (!nu) continue;
        GroupElem a1 = grp.sample(rng), a2 = grp.sample(rng);

        // unit law: collapsing [x, (lambda, a)] to act(a, x) is multiplicative
        {
            Extension Z = Extension::sum(X, triv);
            ExtElem z1 = Z.element(mu, a1), z2 = Z.element(*nu, a2);
            auto collapse = [&](const ExtElem& z) {
                return X.act(z.kids[1].a, z.kids[0]);
            };
            if (!(collapse(Z.compose(z1, z2)) == X.compose(collapse(z1), collapse(z2))))
                fail(rep.unit_law, "unit law at " + mu.str() + ", " + nu->str());
        }

        // inverse law: [x, neg y] -> (q(x), a_of(x, y)) lands in the trivial
        // extension multiplicatively
        {
            Extension Z = Extension::sum(X, Extension::negate(X));
            ExtElem z1 = Z.element(mu, a1), z2 = Z.element(*nu, a2);
            auto drop = [&](const ExtElem& z) {
                return ExtElem{q_rec(*X.impl(), z.kids[0]),
                               X.a_of(z.kids[0], z.kids[1].kids[0]), {}};
            };
            ExtElem lhs = drop(Z.compose(z1, z2));
            ExtElem rhs = triv.compose(drop(z1), drop(z2));
            if (!(lhs == rhs))
                fail(rep.inverse_law, "inverse law at " + mu.str() + ", " + nu->str());
        }

        // commutativity: swapping the coordinates of a sum is multiplicative
        {
            Extension Zxy = Extension::sum(X, Y);
            Extension Zyx = Extension::sum(Y, X);
            ExtElem z1 = Zxy.element(mu, a1), z2 = Zxy.element(*nu, a2);
            auto swap = [&](const ExtElem& z) {
                return Zyx.canonicalise(ExtElem{{}, {}, {z.kids[1], z.kids[0]}});
            };
            if (!(swap(Zxy.compose(z1, z2)) == Zyx.compose(swap(z1), swap(z2))))
                fail(rep.commutativity, "commutativity at " + mu.str() + ", " + nu->str());
        }

        // canonical section reproduces the twisting cocycle
        {
            Cat2Cocycle cs = section_cocycle(X, Section::canonical(X));
            if (!(cs.eval(mu, *nu) == samples[static_cast<std::size_t>(t) % exts.size()]
                                          .eval(mu, *nu)))
                fail(rep.canonical_section, "canonical section at " + mu.str() + ", " + nu->str());
        }

        // a_of splits over sum coordinates, for shifted representatives too
        {
            Extension Z = Extension::sum(X, Y);
            ExtElem x1 = X.element(mu, a1), x2 = X.element(mu, a2);
            ExtElem y1 = Y.element(mu, grp.sample(rng)), y2 = Y.element(mu, grp.sample(rng));
            GroupElem b1 = grp.sample(rng), b2 = grp.sample(rng);
            ExtElem z1{{}, {}, {X.act(b1, x1), Y.act(grp.neg(b1), y1)}};
            ExtElem z2{{}, {}, {X.act(b2, x2), Y.act(grp.neg(b2), y2)}};
            GroupElem want = grp.add(X.a_of(x1, x2), Y.a_of(y1, y2));
            if (!(Z.a_of(z1, z2) == want) ||
                !(Z.a_of(Z.canonicalise(z1), Z.canonicalise(z2)) == want))
                fail(rep.a_of_additivity, "a_of additivity at " + mu.str());
        }
    }

    // edge-lift sections: defects are cubical cocycles with c_phi = -c_sigma
    for (std::size_t i = 0; i < exts.size(); ++i) {
        const Extension& X = exts[i];
        std::vector<GroupElem> offs;
        for (int e = 0; e < X.graph()->edge_count(); ++e) offs.push_back(grp.sample(rng));
        Section s = Section::from_edge_lifts(X, offs);
        CubicalCochain phi = square_defect(X, s);
        if (!is_cub_2cocycle(phi).ok) {
            fail(rep.square_transfer, "square defect is not a cubical cocycle");
            continue;
        }
        Cat2Cocycle cphi = c_phi(phi);
        Cat2Cocycle csig = section_cocycle(X, s);
        for (int t = 0; t < pairs; ++t) {
            const Morphism& mu = pick_m();
            const Morphism* nu = pick_from(mu.source());
            if (!nu) continue;
            if (!(cphi.eval(mu, *nu) == grp.neg(csig.eval(mu, *nu)))) {
                fail(rep.square_transfer,
                     "defect transfer at " + mu.str() + ", " + nu->str());
                break;
            }
        }
    }

    return rep;
}

}  // namespace kcoh
