#pragma once

#include "kcoh/bridge.hpp"

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

namespace kcoh {

/// An infinite path presented as a finite prefix continued forever by the
/// graph's canonical degree-(1,..,1) blocks.  Segment queries x(m,n) expand
/// the prefix on demand and are consistent across calls.  Equality is
/// presentation equality (same prefix), which is how shared-tail
/// composability is tracked; it is finer than equality of the paths denoted.
class EventualPath {
public:
    explicit EventualPath(Morphism prefix);
    static EventualPath at_vertex(std::shared_ptr<const KGraph> g, VertexId v);

    const std::shared_ptr<const KGraph>& graph() const { return pref_.graph(); }
    const Morphism& prefix() const { return pref_; }
    VertexId range() const { return pref_.range(); }

    /// x(m, n) for 0 <= m <= n.
    Morphism segment(const Degree& m, const Degree& n) const;
    /// x(0, n).
    Morphism prefix_to(const Degree& n) const;
    /// sigma^t x: drops the first t, again in prefix-plus-blocks form.
    EventualPath shift(const Degree& t) const;

    bool operator==(const EventualPath& o) const {
        return pref_.graph() == o.pref_.graph() && pref_ == o.pref_;
    }
    bool operator!=(const EventualPath& o) const { return !(*this == o); }

private:
    Morphism expanded(const Degree& n) const;  // prefix grown to cover n
    Morphism pref_;
};

/// A path-groupoid arrow (p.z, d(p)-d(q), q.z) presented over a shared block
/// tail z with s(p) = s(q) = r(z).
class GroupoidElem {
public:
    GroupoidElem(Morphism p, Morphism q, EventualPath tail);

    const Morphism& p() const { return p_; }
    const Morphism& q() const { return q_; }
    const EventualPath& tail() const { return tail_; }
    Degree d_tilde() const { return p_.degree() - q_.degree(); }
    bool is_unit() const { return p_ == q_; }

    EventualPath range_path() const;   // p . z
    EventualPath source_path() const;  // q . z

    /// The same arrow with the first t of the tail folded into p and q.
    GroupoidElem extended(const Degree& t) const;

private:
    Morphism p_, q_;
    EventualPath tail_;
};

/// g_1, .., g_n presented over one tail: g_i = (p_{i-1} z, ., p_i z).  The
/// shared tail makes the tuple composable by construction.
class ComposableTuple {
public:
    ComposableTuple(std::vector<Morphism> ps, EventualPath tail);

    int length() const { return static_cast<int>(ps_.size()) - 1; }
    const std::vector<Morphism>& ps() const { return ps_; }
    const EventualPath& tail() const { return tail_; }

    GroupoidElem elem(int i) const;            // g_i, 1 <= i <= length
    GroupoidElem product(int i, int j) const;  // g_{i+1} .. g_j, 0 <= i <= j <= length
    ComposableTuple extended(const Degree& t) const;

private:
    std::vector<Morphism> ps_;
    EventualPath tail_;
};

/// Membership of a presented arrow in the basic cylinder Z(mu, nu).
bool in_cylinder(const Morphism& mu, const Morphism& nu, const GroupoidElem& g);

/// The common-refinement pairs (mu.a, nu.a) with mu.a in MCE(mu, sg) and
/// nu.a in MCE(nu, tau).  The cylinders of the returned pairs are pairwise
/// disjoint with union Z(mu, nu) intersect Z(sg, tau).
std::vector<std::pair<Morphism, Morphism>> cylinder_meet(const Morphism& mu, const Morphism& nu,
                                                         const Morphism& sg, const Morphism& tau);

/// The canonical cylinder partition of the path groupoid: every (lambda,
/// s(lambda)) together with a lazily disjointified enumeration of the
/// remaining pairs (nu not a suffix of mu), ordered by total degree, then
/// degree pair, then path enumeration.  Enumeration state grows
/// monotonically: stage extension is single-writer, and concurrent locate
/// calls always observe a consistent prefix of the member list.
class PartitionP {
public:
    explicit PartitionP(std::shared_ptr<const KGraph> g);
    PartitionP(const PartitionP&) = delete;
    PartitionP& operator=(const PartitionP&) = delete;

    const std::shared_ptr<const KGraph>& graph() const { return g_; }

    /// The unique member (mu_g, nu_g) whose cylinder contains g.
    std::pair<Morphism, Morphism> locate(const GroupoidElem& g) const;

    /// Snapshot of the disjointified non-suffix members generated so far.
    std::vector<std::pair<Morphism, Morphism>> remainder_snapshot() const;

private:
    void scan_guard(std::size_t idx, const GroupoidElem& g) const;
    void refill_locked() const;       // queue the next total-degree bucket
    void process_one_locked() const;  // disjointify one queued pair

    std::shared_ptr<const KGraph> g_;
    mutable std::shared_mutex mtx_;
    mutable std::vector<std::pair<Morphism, Morphism>> members_;
    mutable std::deque<std::pair<Morphism, Morphism>> queue_;
    mutable int next_total_ = 1;
};

/// Connecting paths for a composable pair: mu_g.alpha = mu_gh.gamma,
/// nu_h.beta = nu_gh.gamma and nu_g.alpha = mu_h.beta, with all three arrows
/// presented over y = sigma^N(r(g)).
struct ConnectingTriple {
    Morphism alpha, beta, gamma;
    Degree big_n;
};

ConnectingTriple choose_abc(const PartitionP& P, const GroupoidElem& g, const GroupoidElem& h);

/// (c(mu_g,a) - c(nu_g,a)) + (c(mu_h,b) - c(nu_h,b)) - (c(mu_gh,g) - c(nu_gh,g)).
GroupElem sigma_formula(const Cat2Cocycle& c, const std::pair<Morphism, Morphism>& g_pair,
                        const std::pair<Morphism, Morphism>& h_pair,
                        const std::pair<Morphism, Morphism>& gh_pair, const ConnectingTriple& t);

/// sigma_c(g, h) for a length-2 tuple.  Independent of the connecting-triple
/// choice and of the tail presentation; 0 when either argument is a unit.
GroupElem sigma_eval(const Cat2Cocycle& c, const PartitionP& P, const ComposableTuple& pair);

struct SigmaReport {
    bool cocycle_identity = true;    // sigma(g1,g2) + sigma(g1g2,g3) = sigma(g2,g3) + sigma(g1,g2g3)
    bool coboundary_transfer = true; // categorical coboundaries map to groupoid coboundaries
    int triples_checked = 0;
    std::optional<std::string> failure;
    bool ok() const { return cocycle_identity && coboundary_transfer; }
    std::string str() const;
};

/// Seeded composable triples; verifies the groupoid 2-cocycle identity for
/// sigma_c and, for a sampled edge table b, that sigma over the categorical
/// coboundary of b equals the groupoid coboundary of a(g) = b(mu_g) - b(nu_g).
SigmaReport sigma_identity_suite(const Cat2Cocycle& c, const PartitionP& P, int samples = 500,
                                 std::uint64_t seed = 1);

struct RefineReport {
    bool matched = true;
    int pairs_checked = 0;
    std::optional<std::string> failure;
    bool ok() const { return matched; }
    std::string str() const;
};

/// Splits every member (mu, nu) along the first-colour edges tau into
/// (mu.tau, nu.tau) and verifies that the two partitions' cocycles differ by
/// the groupoid coboundary of b(g) = c(mu_g, tau_g) - c(nu_g, tau_g).
RefineReport refine_compare(const Cat2Cocycle& c, const PartitionP& P, int samples = 200,
                            std::uint64_t seed = 1);

/// The groupoid 1-cocycle induced by a multiplicative evaluator: f(p) - f(q).
/// Presentation independent and additive over composable pairs.
GroupElem functor_1cocycle(const Cat1Evaluator& f, const GroupoidElem& g);

}  // namespace kcoh
