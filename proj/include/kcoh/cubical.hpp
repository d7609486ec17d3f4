#pragma once

#include "kcoh/group.hpp"
#include "kcoh/kgraph.hpp"
#include "kcoh/matrix.hpp"

#include <map>
#include <memory>
#include <optional>

namespace kcoh {

/// Q_r: the morphisms lambda with d(lambda) <= (1,...,1) and |lambda| = r, in
/// a fixed deterministic order (degree lexicographic, then path enumeration
/// order).  Chain and cochain indices refer to this order.
class CubeList {
public:
    static std::shared_ptr<const CubeList> build(std::shared_ptr<const KGraph> g, int r);

    const std::shared_ptr<const KGraph>& graph() const { return g_; }
    int r() const { return r_; }
    int size() const { return static_cast<int>(cubes_.size()); }
    const std::vector<Morphism>& cubes() const { return cubes_; }
    const Morphism& cube(int i) const { return cubes_[static_cast<std::size_t>(i)]; }
    int index_of(const Morphism& m) const;  // -1 when m is not an r-cube

private:
    std::shared_ptr<const KGraph> g_;
    int r_ = 0;
    std::vector<Morphism> cubes_;
    std::map<Morphism, int> index_;
};

/// Face maps of an r-cube.  j counts the colours present in d(lambda) in
/// ascending order, 1-based; ell = 0 removes the j-th colour at the source
/// end, ell = 1 at the range end:
///   F_j^0 = lambda(0, d - e_{i_j}),   F_j^1 = lambda(e_{i_j}, d).
Morphism face(const Morphism& lam, int j, int ell);

/// Matrix of the boundary C_r -> C_{r-1}, one column per r-cube:
///   d(lambda) = sum_{j,ell} (-1)^{j+ell} F_j^ell(lambda).
IntMatrix boundary_matrix(const CubeList& Qr, const CubeList& Qrm1);

/// H_r over the integers, from Smith forms of the two adjacent boundaries.
FinAbGroup homology(const std::shared_ptr<const KGraph>& g, int r);

/// Cochain-level H^r; coefficients must be Z or Z/n.
FinAbGroup cohomology(const std::shared_ptr<const KGraph>& g, int r, const Group& coeff);

/// Map Q_r -> A, stored by cube index.
class CubicalCochain {
public:
    CubicalCochain(std::shared_ptr<const CubeList> cubes, Group grp);

    const std::shared_ptr<const CubeList>& cubes() const { return cubes_; }
    const Group& group() const { return grp_; }
    int rank_r() const { return cubes_->r(); }
    const GroupElem& value(int i) const { return val_[static_cast<std::size_t>(i)]; }
    void set(int i, GroupElem v) { val_[static_cast<std::size_t>(i)] = std::move(v); }
    const GroupElem& value_at(const Morphism& m) const;

    CubicalCochain add(const CubicalCochain& o) const;
    CubicalCochain sub(const CubicalCochain& o) const;
    CubicalCochain negate() const;
    bool is_zero() const;
    bool operator==(const CubicalCochain& o) const;

private:
    void check_compatible(const CubicalCochain& o) const;
    std::shared_ptr<const CubeList> cubes_;
    Group grp_;
    std::vector<GroupElem> val_;
};

/// delta^r f, one rank up.
CubicalCochain cub_coboundary(const CubicalCochain& f);

struct CocycleVerdict {
    bool ok = true;
    std::optional<Morphism> witness;  // offending 3-cube
};

/// Checks, for every 3-cube, that
///   phi(F_3^0) + phi(F_2^1) + phi(F_1^0) = phi(F_1^1) + phi(F_2^0) + phi(F_3^1).
CocycleVerdict is_cub_2cocycle(const CubicalCochain& phi);

/// b(lambda) = sum of an edge table over the letters of the preferred word of
/// lambda.  Normalised (identities evaluate to 0); multiplicative exactly when
/// the table is a cubical 1-cocycle.
class Cat1Evaluator {
public:
    static Cat1Evaluator edge_table(const CubicalCochain& f);  // rank-1 cochain
    static Cat1Evaluator zero(std::shared_ptr<const KGraph> g, Group grp);

    const std::shared_ptr<const KGraph>& graph() const { return g_; }
    const Group& group() const { return grp_; }
    GroupElem eval(const Morphism& lam) const;
    GroupElem edge_value(EdgeId e) const { return vals_[e]; }

private:
    Cat1Evaluator(std::shared_ptr<const KGraph> g, Group grp) : g_(std::move(g)), grp_(grp) {}
    std::shared_ptr<const KGraph> g_;
    Group grp_;
    std::vector<GroupElem> vals_;  // by EdgeId
};

/// The unique functor extending a 1-cocycle along preferred words.
Cat1Evaluator extend_1cocycle(const CubicalCochain& f);

}  // namespace kcoh
