#include "kcoh/groupoid.hpp"

#include "kcoh/errors.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <utility>

namespace kcoh {

namespace {

void check_graph(const std::shared_ptr<const KGraph>& a, const std::shared_ptr<const KGraph>& b,
                 const char* what) {
    if (a != b) throw GraphMismatch(what);
}

}  // namespace

// --------------------------------------------------------------- EventualPath

EventualPath::EventualPath(Morphism prefix) : pref_(std::move(prefix)) {
    if (!pref_.graph()) throw Error("eventual path needs a morphism with a graph");
    if (pref_.graph()->has_sources())
        throw HasSources("eventual paths need a graph without sources");
}

EventualPath EventualPath::at_vertex(std::shared_ptr<const KGraph> g, VertexId v) {
    if (!g) throw Error("eventual path needs a graph");
    return EventualPath(g->identity(v));
}

Morphism EventualPath::expanded(const Degree& n) const {
    const auto& g = pref_.graph();
    Morphism p = pref_;
    while (!(n <= p.degree())) p = g->compose(p, g->block_at(p.source()));
    return p;
}

Morphism EventualPath::segment(const Degree& m, const Degree& n) const {
    const auto& g = pref_.graph();
    if (m.rank() != g->rank() || n.rank() != g->rank() || !m.nonneg() || !(m <= n))
        throw DegreeOutOfRange("path segment needs 0 <= m <= n of matching rank");
    return g->segment(expanded(n), m, n);
}

Morphism EventualPath::prefix_to(const Degree& n) const {
    return segment(Degree(pref_.graph()->rank()), n);
}

EventualPath EventualPath::shift(const Degree& t) const {
    const auto& g = pref_.graph();
    if (t.rank() != g->rank() || !t.nonneg())
        throw DegreeOutOfRange("path shift needs a nonnegative degree of matching rank");
    Morphism p = expanded(t);
    return EventualPath(g->segment(p, t, p.degree()));
}

// --------------------------------------------------------------- GroupoidElem

GroupoidElem::GroupoidElem(Morphism p, Morphism q, EventualPath tail)
    : p_(std::move(p)), q_(std::move(q)), tail_(std::move(tail)) {
    check_graph(p_.graph(), tail_.graph(), "groupoid arrow parts belong to different graphs");
    check_graph(q_.graph(), tail_.graph(), "groupoid arrow parts belong to different graphs");
    if (p_.source() != tail_.range() || q_.source() != tail_.range())
        throw ValidationError("groupoid arrow needs p and q with source at the tail's range");
}

EventualPath GroupoidElem::range_path() const {
    return EventualPath(p_.graph()->compose(p_, tail_.prefix()));
}

EventualPath GroupoidElem::source_path() const {
    return EventualPath(q_.graph()->compose(q_, tail_.prefix()));
}

GroupoidElem GroupoidElem::extended(const Degree& t) const {
    const auto& g = p_.graph();
    Morphism w = tail_.prefix_to(t);
    return {g->compose(p_, w), g->compose(q_, w), tail_.shift(t)};
}

// ------------------------------------------------------------ ComposableTuple

ComposableTuple::ComposableTuple(std::vector<Morphism> ps, EventualPath tail)
    : ps_(std::move(ps)), tail_(std::move(tail)) {
    if (ps_.empty()) throw Error("composable tuple needs at least one path");
    for (const Morphism& p : ps_) {
        check_graph(p.graph(), tail_.graph(), "tuple paths belong to different graphs");
        if (p.source() != tail_.range())
            throw ValidationError("tuple paths must have the tail's range as source");
    }
}

GroupoidElem ComposableTuple::elem(int i) const {
    if (i < 1 || i > length()) throw Error("tuple element index out of range");
    return {ps_[static_cast<std::size_t>(i) - 1], ps_[static_cast<std::size_t>(i)], tail_};
}

GroupoidElem ComposableTuple::product(int i, int j) const {
    if (i < 0 || j < i || j > length()) throw Error("tuple product range out of bounds");
    return {ps_[static_cast<std::size_t>(i)], ps_[static_cast<std::size_t>(j)], tail_};
}

ComposableTuple ComposableTuple::extended(const Degree& t) const {
    const auto& g = tail_.graph();
    Morphism w = tail_.prefix_to(t);
    std::vector<Morphism> out;
    out.reserve(ps_.size());
    for (const Morphism& p : ps_) out.push_back(g->compose(p, w));
    return {std::move(out), tail_.shift(t)};
}

// ------------------------------------------------------------------ cylinders

bool in_cylinder(const Morphism& mu, const Morphism& nu, const GroupoidElem& g) {
    check_graph(mu.graph(), g.tail().graph(), "cylinder pair over a different graph");
    check_graph(nu.graph(), g.tail().graph(), "cylinder pair over a different graph");
    if (mu.source() != nu.source())
        throw ValidationError("a cylinder needs paths with a common source");
    if (mu.degree() - nu.degree() != g.d_tilde()) return false;
    EventualPath rp = g.range_path();
    EventualPath sp = g.source_path();
    if (rp.prefix_to(mu.degree()) != mu) return false;
    if (sp.prefix_to(nu.degree()) != nu) return false;
    // the two continuations agree from the presentation's own alignment on;
    // comparing up to that point settles membership
    Degree big = mu.degree().join(g.p().degree());
    return rp.segment(mu.degree(), big) == sp.segment(nu.degree(), big - g.d_tilde());
}

std::vector<std::pair<Morphism, Morphism>> cylinder_meet(const Morphism& mu, const Morphism& nu,
                                                         const Morphism& sg, const Morphism& tau) {
    const auto& g = mu.graph();
    check_graph(nu.graph(), g, "cylinder pair over a different graph");
    check_graph(sg.graph(), g, "cylinder pair over a different graph");
    check_graph(tau.graph(), g, "cylinder pair over a different graph");
    if (mu.source() != nu.source() || sg.source() != tau.source())
        throw ValidationError("a cylinder needs paths with a common source");
    std::vector<std::pair<Morphism, Morphism>> out;
    if (mu.degree() - nu.degree() != sg.degree() - tau.degree()) return out;
    for (const Morphism& me : g->mce(mu, sg)) {
        Morphism alpha = g->segment(me, mu.degree(), me.degree());
        Morphism beta = g->segment(me, sg.degree(), me.degree());
        Morphism nua = g->compose(nu, alpha);
        // both factorisations of the range side must continue the source side
        // by the same suffix
        if (nua == g->compose(tau, beta)) out.push_back({me, std::move(nua)});
    }
    return out;
}

// ----------------------------------------------------------------- PartitionP

namespace {

using Member = std::pair<Morphism, Morphism>;

std::vector<Degree> degrees_with_total(int k, int total) {
    std::vector<Degree> out;
    for (const Degree& d : KGraph::degrees_upto(k, total))
        if (d.total() == total) out.push_back(d);
    return out;
}

bool suffix_of(const std::shared_ptr<const KGraph>& g, const Morphism& nu, const Morphism& mu) {
    if (!(nu.degree() <= mu.degree())) return false;
    return g->segment(mu, mu.degree() - nu.degree(), mu.degree()) == nu;
}

/// Pieces of Z(w) minus Z(m): split w at the join degree of the first
/// coordinates and drop the pieces refining both coordinates of m.  Only
/// sound when the two cylinders' degree offsets agree; otherwise they are
/// already disjoint.
std::vector<Member> minus_one(const std::shared_ptr<const KGraph>& g, const Member& w,
                              const Member& m) {
    if (w.first.degree() - w.second.degree() != m.first.degree() - m.second.degree()) return {w};
    Degree n = w.first.degree().join(m.first.degree()) - w.first.degree();
    std::vector<Member> out;
    for (const Morphism& alpha : g->paths_from(w.first.source(), n)) {
        Morphism a = g->compose(w.first, alpha);
        Morphism b = g->compose(w.second, alpha);
        // the piece sits inside Z(m) exactly when both coordinates continue m
        // by one shared suffix; any other piece is disjoint from Z(m)
        bool inside = false;
        if (g->is_initial_segment(m.first, a)) {
            Morphism beta = g->segment(a, m.first.degree(), a.degree());
            inside = b == g->compose(m.second, beta);
        }
        if (!inside) out.push_back({std::move(a), std::move(b)});
    }
    return out;
}

}  // namespace

PartitionP::PartitionP(std::shared_ptr<const KGraph> g) : g_(std::move(g)) {
    if (!g_) throw Error("partition needs a graph");
    if (g_->has_sources())
        throw HasSources("the cylinder partition needs a graph without sources");
}

void PartitionP::refill_locked() const {
    const int k = g_->rank();
    while (queue_.empty()) {
        const int total = next_total_++;
        for (int t = 0; t <= total; ++t)
            for (const Degree& dm : degrees_with_total(k, t))
                for (const Degree& dn : degrees_with_total(k, total - t))
                    for (const Morphism& mu : g_->paths(dm))
                        for (const Morphism& nu : g_->paths(dn)) {
                            if (nu.source() != mu.source()) continue;
                            if (suffix_of(g_, nu, mu)) continue;
                            queue_.push_back({mu, nu});
                        }
    }
}

void PartitionP::process_one_locked() const {
    if (queue_.empty()) refill_locked();
    Member u = std::move(queue_.front());
    queue_.pop_front();
    std::vector<Member> pieces = {std::move(u)};
    for (const Member& m : members_) {
        std::vector<Member> next;
        for (const Member& w : pieces)
            for (Member& piece : minus_one(g_, w, m)) next.push_back(std::move(piece));
        pieces = std::move(next);
        if (pieces.empty()) break;
    }
    for (Member& w : pieces) members_.push_back(std::move(w));
}

std::pair<Morphism, Morphism> PartitionP::locate(const GroupoidElem& g) const {
    check_graph(g.tail().graph(), g_, "arrow over a different graph");
    const Degree dt = g.d_tilde();
    if (dt.nonneg()) {
        const Morphism& p = g.p();
        if (g_->segment(p, dt, p.degree()) == g.q()) {
            Morphism lam = g_->segment(p, Degree(g_->rank()), dt);
            VertexId end = lam.source();
            return {std::move(lam), g_->identity(end)};
        }
    }
    // Scan the disjointified remainder in enumeration order, extending it as
    // needed.  The member containing g is generated no later than the stage
    // enumerating the presentation pair itself, whose bucket is bounded by
    // the presentation's total degree.
    const int bound = g.p().degree().total() + g.q().degree().total();
    std::size_t idx = 0;
    for (;;) {
        std::optional<Member> mem;
        {
            std::shared_lock lk(mtx_);
            if (idx < members_.size()) mem = members_[idx];
        }
        if (!mem) {
            std::unique_lock lk(mtx_);
            if (idx >= members_.size()) {
                if (next_total_ > bound + 1 && queue_.empty())
                    throw Error("cylinder partition scan exceeded its cover bound");
                process_one_locked();
            }
            continue;
        }
        if (in_cylinder(mem->first, mem->second, g)) return *mem;
        ++idx;
    }
}

std::vector<std::pair<Morphism, Morphism>> PartitionP::remainder_snapshot() const {
    std::shared_lock lk(mtx_);
    return members_;
}

// -------------------------------------------------------------------- sigma_c

ConnectingTriple choose_abc(const PartitionP& P, const GroupoidElem& g, const GroupoidElem& h) {
    check_graph(g.tail().graph(), P.graph(), "arrow over a different graph");
    check_graph(h.tail().graph(), P.graph(), "arrow over a different graph");
    if (g.q() != h.p() || g.tail() != h.tail())
        throw NotComposable("needs a composable pair presented over one tail");
    auto mg = P.locate(g);
    auto mh = P.locate(h);
    auto mgh = P.locate(GroupoidElem(g.p(), h.q(), g.tail()));
    Degree big = mg.first.degree().join(mgh.first.degree()).join(mh.first.degree() + g.d_tilde());
    EventualPath rg = g.range_path();
    EventualPath rh = h.range_path();
    return {rg.segment(mg.first.degree(), big), rh.segment(mh.first.degree(), big - g.d_tilde()),
            rg.segment(mgh.first.degree(), big), big};
}

GroupElem sigma_formula(const Cat2Cocycle& c, const std::pair<Morphism, Morphism>& g_pair,
                        const std::pair<Morphism, Morphism>& h_pair,
                        const std::pair<Morphism, Morphism>& gh_pair, const ConnectingTriple& t) {
    const Group& A = c.group();
    GroupElem vg = A.sub(c.eval(g_pair.first, t.alpha), c.eval(g_pair.second, t.alpha));
    GroupElem vh = A.sub(c.eval(h_pair.first, t.beta), c.eval(h_pair.second, t.beta));
    GroupElem vgh = A.sub(c.eval(gh_pair.first, t.gamma), c.eval(gh_pair.second, t.gamma));
    return A.sub(A.add(vg, vh), vgh);
}

GroupElem sigma_eval(const Cat2Cocycle& c, const PartitionP& P, const ComposableTuple& pair) {
    check_graph(c.graph(), P.graph(), "cocycle over a different graph");
    if (pair.length() != 2) throw Error("sigma evaluation needs a composable pair");
    GroupoidElem g = pair.elem(1);
    GroupoidElem h = pair.elem(2);
    ConnectingTriple t = choose_abc(P, g, h);
    return sigma_formula(c, P.locate(g), P.locate(h), P.locate(pair.product(0, 2)), t);
}

// --------------------------------------------------------------------- suites

namespace {

/// Draws composable tuples: a block tail anchored at a random vertex, shifted
/// by a small degree, then paths into its range.
struct TupleSampler {
    std::shared_ptr<const KGraph> g;
    std::vector<std::vector<Morphism>> by_source;
    std::vector<Degree> shifts;

    explicit TupleSampler(std::shared_ptr<const KGraph> gr) : g(std::move(gr)) {
        by_source.resize(static_cast<std::size_t>(g->vertex_count()));
        for (const Degree& d : KGraph::degrees_upto(g->rank(), 2))
            for (const Morphism& m : g->paths(d))
                by_source[static_cast<std::size_t>(m.source())].push_back(m);
        shifts = KGraph::degrees_upto(g->rank(), 2);
    }

    ComposableTuple sample(std::mt19937_64& rng, int n) const {
        for (int tries = 0; tries < 64; ++tries) {
            auto u = static_cast<VertexId>(rng() % static_cast<std::uint64_t>(g->vertex_count()));
            EventualPath z =
                EventualPath::at_vertex(g, u).shift(shifts[rng() % shifts.size()]);
            const auto& pool = by_source[static_cast<std::size_t>(z.range())];
            if (pool.empty()) continue;
            std::vector<Morphism> ps;
            for (int i = 0; i <= n; ++i) ps.push_back(pool[rng() % pool.size()]);
            return {std::move(ps), std::move(z)};
        }
        throw Error("no composable tuples available");
    }
};

}  // namespace

std::string SigmaReport::str() const {
    std::string out;
    out += std::string("cocycle-identity: ") + (cocycle_identity ? "pass" : "FAIL") + "\n";
    out += std::string("coboundary-transfer: ") + (coboundary_transfer ? "pass" : "FAIL") + "\n";
    if (failure) out += "first failure: " + *failure + "\n";
    return out;
}

SigmaReport sigma_identity_suite(const Cat2Cocycle& c, const PartitionP& P, int samples,
                                 std::uint64_t seed) {
    check_graph(c.graph(), P.graph(), "cocycle over a different graph");
    SigmaReport rep;
    const Group& A = c.group();
    std::mt19937_64 rng(seed);
    TupleSampler sampler(P.graph());

    auto q1 = CubeList::build(P.graph(), 1);
    CubicalCochain btab(q1, A);
    for (int i = 0; i < q1->size(); ++i) btab.set(i, A.sample(rng));
    Cat1Evaluator b = Cat1Evaluator::edge_table(btab);
    Cat2Cocycle cb = cat_coboundary(b);
    auto a_of = [&](const GroupoidElem& e) {
        auto mn = P.locate(e);
        return A.sub(b.eval(mn.first), b.eval(mn.second));
    };
    auto fail = [&](bool& flag, const char* what) {
        flag = false;
        if (!rep.failure) rep.failure = what;
    };

    for (int t = 0; t < samples; ++t) {
        ComposableTuple tup = sampler.sample(rng, 3);
        if (t % 8 == 0) {
            // a degenerate leg exercises the unit normalisation
            std::vector<Morphism> ps = tup.ps();
            ps[1] = ps[0];
            tup = ComposableTuple(std::move(ps), tup.tail());
        }
        auto pair_of = [&](int i, int j, int l) {
            return ComposableTuple({tup.ps()[static_cast<std::size_t>(i)],
                                    tup.ps()[static_cast<std::size_t>(j)],
                                    tup.ps()[static_cast<std::size_t>(l)]},
                                   tup.tail());
        };
        GroupElem s12 = sigma_eval(c, P, pair_of(0, 1, 2));
        GroupElem s12_3 = sigma_eval(c, P, pair_of(0, 2, 3));
        GroupElem s23 = sigma_eval(c, P, pair_of(1, 2, 3));
        GroupElem s1_23 = sigma_eval(c, P, pair_of(0, 1, 3));
        if (A.add(s12, s12_3) != A.add(s23, s1_23))
            fail(rep.cocycle_identity, "groupoid cocycle identity failed on a sampled triple");

        GroupElem lhs = sigma_eval(cb, P, pair_of(0, 1, 2));
        GroupElem rhs = A.sub(A.add(a_of(tup.elem(1)), a_of(tup.elem(2))),
                              a_of(tup.product(0, 2)));
        if (lhs != rhs)
            fail(rep.coboundary_transfer, "coboundary did not map to a groupoid coboundary");
        ++rep.triples_checked;
    }
    return rep;
}

std::string RefineReport::str() const {
    std::string out = std::string("refinement-comparison: ") + (matched ? "pass" : "FAIL") + " (" +
                      std::to_string(pairs_checked) + " pairs)\n";
    if (failure) out += "first failure: " + *failure + "\n";
    return out;
}

RefineReport refine_compare(const Cat2Cocycle& c, const PartitionP& P, int samples,
                            std::uint64_t seed) {
    check_graph(c.graph(), P.graph(), "cocycle over a different graph");
    RefineReport rep;
    const Group& A = c.group();
    const auto& g = P.graph();
    const Degree e1 = Degree::unit(g->rank(), 0);
    std::mt19937_64 rng(seed);
    TupleSampler sampler(g);

    auto locate_split = [&](const GroupoidElem& e) {
        auto mn = P.locate(e);
        Morphism tau = e.range_path().segment(mn.first.degree(), mn.first.degree() + e1);
        return std::pair<Member, Morphism>{
            {g->compose(mn.first, tau), g->compose(mn.second, tau)}, tau};
    };
    auto b_of = [&](const GroupoidElem& e) {
        auto mn = P.locate(e);
        Morphism tau = e.range_path().segment(mn.first.degree(), mn.first.degree() + e1);
        return A.sub(c.eval(mn.first, tau), c.eval(mn.second, tau));
    };
    auto sigma_split = [&](const GroupoidElem& ge, const GroupoidElem& he,
                           const GroupoidElem& ghe) {
        auto lg = locate_split(ge).first;
        auto lh = locate_split(he).first;
        auto lgh = locate_split(ghe).first;
        Degree big =
            lg.first.degree().join(lgh.first.degree()).join(lh.first.degree() + ge.d_tilde());
        EventualPath rg = ge.range_path();
        EventualPath rh = he.range_path();
        ConnectingTriple t{rg.segment(lg.first.degree(), big),
                           rh.segment(lh.first.degree(), big - ge.d_tilde()),
                           rg.segment(lgh.first.degree(), big), big};
        return sigma_formula(c, lg, lh, lgh, t);
    };

    for (int t = 0; t < samples; ++t) {
        ComposableTuple tup = sampler.sample(rng, 2);
        GroupoidElem ge = tup.elem(1);
        GroupoidElem he = tup.elem(2);
        GroupoidElem ghe = tup.product(0, 2);
        GroupElem sp = sigma_eval(c, P, tup);
        GroupElem sq = sigma_split(ge, he, ghe);
        GroupElem rhs = A.sub(A.add(b_of(ge), b_of(he)), b_of(ghe));
        ++rep.pairs_checked;
        if (A.sub(sp, sq) != rhs) {
            rep.matched = false;
            rep.failure = "partition refinement shifted sigma by something other than the "
                          "expected coboundary";
            break;
        }
    }
    return rep;
}

GroupElem functor_1cocycle(const Cat1Evaluator& f, const GroupoidElem& g) {
    check_graph(f.graph(), g.tail().graph(), "evaluator over a different graph");
    return f.group().sub(f.eval(g.p()), f.eval(g.q()));
}

}  // namespace kcoh
