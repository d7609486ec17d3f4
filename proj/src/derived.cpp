#include "kcoh/derived.hpp"

#include <map>
#include <string>
#include <utility>

namespace kcoh {

namespace {

std::string pr(const std::string& x, const std::string& y) { return "(" + x + "," + y + ")"; }

// visit every commuting square of h as its ascending entry (f, g, g', f')
template <typename Fn>
void for_squares(const KGraph& h, Fn&& fn) {
    for (EdgeId f = 0; f < static_cast<EdgeId>(h.edge_count()); ++f)
        for (int cj = h.edge_colour(f) + 1; cj < h.rank(); ++cj)
            for (EdgeId g : h.edges_into(h.edge_source(f), cj)) {
                auto [gp, fp] = h.flip_asc(f, g);
                fn(f, g, gp, fp);
            }
}

long residue(const GroupElem& e) { return numerator(e.v).convert_to<long>(); }

}  // namespace

ProductGraph ProductGraph::build(std::shared_ptr<const KGraph> a, std::shared_ptr<const KGraph> b) {
    ProductGraph out;
    out.a_ = std::move(a);
    out.b_ = std::move(b);
    const KGraph& A = *out.a_;
    const KGraph& B = *out.b_;

    Skeleton sk;
    sk.k = A.rank() + B.rank();
    std::map<std::string, std::pair<VertexId, VertexId>> vmap;
    for (VertexId va = 0; va < static_cast<VertexId>(A.vertex_count()); ++va)
        for (VertexId vb = 0; vb < static_cast<VertexId>(B.vertex_count()); ++vb) {
            std::string n = pr(A.vertex_name(va), B.vertex_name(vb));
            sk.vertices.push_back(n);
            vmap[n] = {va, vb};
        }

    auto vname = [&](VertexId va, VertexId vb) {
        return pr(A.vertex_name(va), B.vertex_name(vb));
    };
    std::map<std::string, std::pair<int, EdgeId>> emap;
    for (EdgeId e = 0; e < static_cast<EdgeId>(A.edge_count()); ++e)
        for (VertexId w = 0; w < static_cast<VertexId>(B.vertex_count()); ++w) {
            std::string n = pr(A.edge_name(e), B.vertex_name(w));
            sk.edges.push_back({n, A.edge_colour(e) + 1, vname(A.edge_source(e), w),
                                vname(A.edge_range(e), w)});
            emap[n] = {1, e};
        }
    for (VertexId v = 0; v < static_cast<VertexId>(A.vertex_count()); ++v)
        for (EdgeId f = 0; f < static_cast<EdgeId>(B.edge_count()); ++f) {
            std::string n = pr(A.vertex_name(v), B.edge_name(f));
            sk.edges.push_back({n, A.rank() + B.edge_colour(f) + 1,
                                vname(v, B.edge_source(f)), vname(v, B.edge_range(f))});
            emap[n] = {2, f};
        }

    SquareTable sq;
    for_squares(A, [&](EdgeId f, EdgeId g, EdgeId gp, EdgeId fp) {
        for (VertexId w = 0; w < static_cast<VertexId>(B.vertex_count()); ++w)
            sq.entries.push_back({pr(A.edge_name(f), B.vertex_name(w)),
                                  pr(A.edge_name(g), B.vertex_name(w)),
                                  pr(A.edge_name(gp), B.vertex_name(w)),
                                  pr(A.edge_name(fp), B.vertex_name(w))});
    });
    for_squares(B, [&](EdgeId f, EdgeId g, EdgeId gp, EdgeId fp) {
        for (VertexId v = 0; v < static_cast<VertexId>(A.vertex_count()); ++v)
            sq.entries.push_back({pr(A.vertex_name(v), B.edge_name(f)),
                                  pr(A.vertex_name(v), B.edge_name(g)),
                                  pr(A.vertex_name(v), B.edge_name(gp)),
                                  pr(A.vertex_name(v), B.edge_name(fp))});
    });
    // mixed: slide a first-factor edge past a second-factor edge
    for (EdgeId e = 0; e < static_cast<EdgeId>(A.edge_count()); ++e)
        for (EdgeId f = 0; f < static_cast<EdgeId>(B.edge_count()); ++f)
            sq.entries.push_back({pr(A.edge_name(e), B.vertex_name(B.edge_range(f))),
                                  pr(A.vertex_name(A.edge_source(e)), B.edge_name(f)),
                                  pr(A.vertex_name(A.edge_range(e)), B.edge_name(f)),
                                  pr(A.edge_name(e), B.vertex_name(B.edge_source(f)))});

    out.g_ = KGraph::validate(sk, sq);
    out.vpart_.resize(static_cast<std::size_t>(out.g_->vertex_count()));
    for (const auto& [n, p] : vmap) out.vpart_[out.g_->vertex(n)] = p;
    out.epart_.resize(static_cast<std::size_t>(out.g_->edge_count()));
    for (const auto& [n, p] : emap) out.epart_[out.g_->edge(n)] = p;
    return out;
}

Morphism ProductGraph::first(const Morphism& m) const {
    if (m.graph() != g_) throw GraphMismatch("morphism is not from this product graph");
    std::vector<EdgeId> w;
    for (EdgeId e : m.word())
        if (epart_[e].first == 1) w.push_back(epart_[e].second);
    return a_->make(vpart_[m.range()].first, std::move(w));
}

Morphism ProductGraph::second(const Morphism& m) const {
    if (m.graph() != g_) throw GraphMismatch("morphism is not from this product graph");
    std::vector<EdgeId> w;
    for (EdgeId e : m.word())
        if (epart_[e].first == 2) w.push_back(epart_[e].second);
    return b_->make(vpart_[m.range()].second, std::move(w));
}

PullbackGraph PullbackGraph::build(std::shared_ptr<const KGraph> base, std::vector<Degree> columns) {
    PullbackGraph out;
    out.base_ = std::move(base);
    out.columns_ = std::move(columns);
    const KGraph& B = *out.base_;
    const int l = static_cast<int>(out.columns_.size());
    if (l < 1) throw ValidationError("pullback needs at least one column");
    for (const Degree& c : out.columns_) {
        if (c.rank() != B.rank()) throw ValidationError("pullback column of wrong rank");
        if (!c.nonneg()) throw ValidationError("pullback column must be nonnegative");
    }

    Skeleton sk;
    sk.k = l;
    for (VertexId v = 0; v < static_cast<VertexId>(B.vertex_count()); ++v)
        sk.vertices.push_back(B.vertex_name(v));

    std::map<std::string, Morphism> emap;
    for (int j = 1; j <= l; ++j)
        for (const Morphism& mu : B.paths(out.columns_[static_cast<std::size_t>(j - 1)])) {
            std::string n = pr(mu.str(), std::to_string(j));
            sk.edges.push_back({n, j, B.vertex_name(mu.source()), B.vertex_name(mu.range())});
            emap.emplace(n, mu);
        }

    SquareTable sq;
    for (int i = 1; i <= l; ++i)
        for (int j = i + 1; j <= l; ++j) {
            const Degree& ci = out.columns_[static_cast<std::size_t>(i - 1)];
            const Degree& cj = out.columns_[static_cast<std::size_t>(j - 1)];
            Degree d = ci + cj;
            for (const Morphism& lam : B.paths(d)) {
                Morphism f = B.segment(lam, Degree(B.rank()), ci);
                Morphism g = B.segment(lam, ci, d);
                Morphism gp = B.segment(lam, Degree(B.rank()), cj);
                Morphism fp = B.segment(lam, cj, d);
                sq.entries.push_back({pr(f.str(), std::to_string(i)), pr(g.str(), std::to_string(j)),
                                      pr(gp.str(), std::to_string(j)), pr(fp.str(), std::to_string(i))});
            }
        }

    out.g_ = KGraph::validate(sk, sq);
    out.ebase_.resize(static_cast<std::size_t>(out.g_->edge_count()));
    for (const auto& [n, mu] : emap) out.ebase_[out.g_->edge(n)] = mu;
    return out;
}

Morphism PullbackGraph::base_of(const Morphism& m) const {
    if (m.graph() != g_) throw GraphMismatch("morphism is not from this pullback graph");
    Morphism acc = base_->identity(base_->vertex(g_->vertex_name(m.range())));
    for (EdgeId e : m.word()) acc = base_->compose(acc, ebase_[e]);
    return acc;
}

SkewGraph SkewGraph::build(std::shared_ptr<const KGraph> base, const Group& grp,
                           const std::vector<GroupElem>& edge_vals) {
    if (grp.kind() != Group::Kind::IntegersMod)
        throw InfiniteResult("skew product needs a finite coefficient group");
    SkewGraph out;
    out.base_ = std::move(base);
    out.grp_ = grp;
    const KGraph& B = *out.base_;
    if (edge_vals.size() != static_cast<std::size_t>(B.edge_count()))
        throw ValidationError("skew product needs one value per base edge");
    out.base_vals_.reserve(edge_vals.size());
    for (const GroupElem& v : edge_vals) out.base_vals_.push_back(grp.reduce(v.v));

    for_squares(B, [&](EdgeId f, EdgeId g, EdgeId gp, EdgeId fp) {
        GroupElem left = grp.add(out.base_vals_[f], out.base_vals_[g]);
        GroupElem right = grp.add(out.base_vals_[gp], out.base_vals_[fp]);
        if (!(left == right))
            throw InvalidFunctor("edge values break on square " + B.edge_name(f) + "." +
                                 B.edge_name(g));
    });

    const long n = grp.modulus();
    auto vname = [&](VertexId v, long a) { return pr(B.vertex_name(v), std::to_string(a)); };
    auto ename = [&](EdgeId e, long a) { return pr(B.edge_name(e), std::to_string(a)); };
    auto shift = [&](long a, EdgeId e) { return (a + residue(out.base_vals_[e])) % n; };

    Skeleton sk;
    sk.k = B.rank();
    std::map<std::string, std::pair<VertexId, long>> vmap;
    for (VertexId v = 0; v < static_cast<VertexId>(B.vertex_count()); ++v)
        for (long a = 0; a < n; ++a) {
            sk.vertices.push_back(vname(v, a));
            vmap[vname(v, a)] = {v, a};
        }
    std::map<std::string, std::pair<EdgeId, long>> emap;
    for (EdgeId e = 0; e < static_cast<EdgeId>(B.edge_count()); ++e)
        for (long a = 0; a < n; ++a) {
            sk.edges.push_back({ename(e, a), B.edge_colour(e) + 1,
                                vname(B.edge_source(e), shift(a, e)), vname(B.edge_range(e), a)});
            emap[ename(e, a)] = {e, a};
        }

    SquareTable sq;
    for_squares(B, [&](EdgeId f, EdgeId g, EdgeId gp, EdgeId fp) {
        for (long a = 0; a < n; ++a)
            sq.entries.push_back({ename(f, a), ename(g, shift(a, f)),  //
                                  ename(gp, a), ename(fp, shift(a, gp))});
    });

    out.g_ = KGraph::validate(sk, sq);
    out.vpart_.resize(static_cast<std::size_t>(out.g_->vertex_count()));
    for (const auto& [nm, p] : vmap) out.vpart_[out.g_->vertex(nm)] = p;
    out.epart_.resize(static_cast<std::size_t>(out.g_->edge_count()));
    for (const auto& [nm, p] : emap) out.epart_[out.g_->edge(nm)] = p;
    return out;
}

Morphism SkewGraph::base_of(const Morphism& m) const {
    if (m.graph() != g_) throw GraphMismatch("morphism is not from this skew graph");
    std::vector<EdgeId> w;
    for (EdgeId e : m.word()) w.push_back(epart_[e].first);
    return base_->make(vpart_[m.range()].first, std::move(w));
}

GroupElem SkewGraph::vertex_label(VertexId v) const {
    return grp_.from_long(vpart_[v].second);
}

GroupElem SkewGraph::value_of(const Morphism& base_m) const {
    if (base_m.graph() != base_) throw GraphMismatch("value_of expects a base morphism");
    GroupElem s = grp_.zero();
    for (EdgeId e : base_m.word()) s = grp_.add(s, base_vals_[e]);
    return s;
}

namespace {

struct PullbackCocycleImpl final : Cat2Cocycle::Impl {
    PullbackGraph pg;
    Cat2Cocycle base;
    PullbackCocycleImpl(PullbackGraph p, Cat2Cocycle c) : pg(std::move(p)), base(std::move(c)) {
        if (base.graph() != pg.base())
            throw GraphMismatch("cocycle does not live on the pullback base");
        g = pg.graph();
        grp = base.group();
    }
    GroupElem eval(const Morphism& mu, const Morphism& nu) const override {
        return base.eval(pg.base_of(mu), pg.base_of(nu));
    }
    std::string kind() const override { return "pullback"; }
};

struct ProductCocycleImpl final : Cat2Cocycle::Impl {
    ProductGraph pg;
    Cat2Cocycle c1, c2;
    ProductCocycleImpl(ProductGraph p, Cat2Cocycle a, Cat2Cocycle b)
        : pg(std::move(p)), c1(std::move(a)), c2(std::move(b)) {
        if (c1.graph() != pg.base1() || c2.graph() != pg.base2())
            throw GraphMismatch("cocycles do not live on the product factors");
        if (!(c1.group() == c2.group()))
            throw UnsupportedCoefficients("product cocycle needs one coefficient group");
        g = pg.graph();
        grp = c1.group();
    }
    GroupElem eval(const Morphism& mu, const Morphism& nu) const override {
        GroupElem v1 = c1.eval(pg.first(mu), pg.first(nu));
        GroupElem v2 = c2.eval(pg.second(mu), pg.second(nu));
        return grp.add(v1, v2);
    }
    std::string kind() const override { return "product"; }
};

struct SkewCocycleImpl final : Cat2Cocycle::Impl {
    SkewGraph sg;
    Cat2Cocycle base;
    SkewCocycleImpl(SkewGraph s, Cat2Cocycle c) : sg(std::move(s)), base(std::move(c)) {
        if (base.graph() != sg.base())
            throw GraphMismatch("cocycle does not live on the skew base");
        g = sg.graph();
        grp = base.group();
    }
    GroupElem eval(const Morphism& mu, const Morphism& nu) const override {
        return base.eval(sg.base_of(mu), sg.base_of(nu));
    }
    std::string kind() const override { return "skew"; }
};

}  // namespace

Cat2Cocycle pullback_cocycle(const PullbackGraph& pg, const Cat2Cocycle& base) {
    return Cat2Cocycle(std::make_shared<PullbackCocycleImpl>(pg, base));
}

Cat2Cocycle product_cocycle(const ProductGraph& pg, const Cat2Cocycle& c1, const Cat2Cocycle& c2) {
    return Cat2Cocycle(std::make_shared<ProductCocycleImpl>(pg, c1, c2));
}

Cat2Cocycle skew_cocycle(const SkewGraph& sg, const Cat2Cocycle& base) {
    return Cat2Cocycle(std::make_shared<SkewCocycleImpl>(sg, base));
}

}  // namespace kcoh
