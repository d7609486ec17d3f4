#pragma once

#include "kcoh/bridge.hpp"

#include <memory>
#include <vector>

namespace kcoh {

/// Cartesian product graph: rank k1 + k2, vertices "(v,w)", edges pair a base
/// edge with a vertex of the other factor.  Squares combine both factors'
/// squares with mixed squares that slide an edge of one factor past an edge
/// of the other.
class ProductGraph {
public:
    static ProductGraph build(std::shared_ptr<const KGraph> a, std::shared_ptr<const KGraph> b);

    const std::shared_ptr<const KGraph>& graph() const { return g_; }
    const std::shared_ptr<const KGraph>& base1() const { return a_; }
    const std::shared_ptr<const KGraph>& base2() const { return b_; }

    Morphism first(const Morphism& m) const;   // image in the first factor
    Morphism second(const Morphism& m) const;  // image in the second factor

private:
    std::shared_ptr<const KGraph> g_, a_, b_;
    std::vector<std::pair<int, EdgeId>> epart_;             // derived edge -> (factor, base edge)
    std::vector<std::pair<VertexId, VertexId>> vpart_;      // derived vertex -> base pair
};

/// Pullback along a monoid morphism N^l -> N^k given by its columns: an edge
/// of colour j is a base morphism of degree columns[j-1], named "(mu,j)".
/// Vertices keep their base names.
class PullbackGraph {
public:
    static PullbackGraph build(std::shared_ptr<const KGraph> base, std::vector<Degree> columns);

    const std::shared_ptr<const KGraph>& graph() const { return g_; }
    const std::shared_ptr<const KGraph>& base() const { return base_; }
    const std::vector<Degree>& columns() const { return columns_; }

    Morphism base_of(const Morphism& m) const;  // push a derived morphism down

private:
    std::shared_ptr<const KGraph> g_, base_;
    std::vector<Degree> columns_;
    std::vector<Morphism> ebase_;  // derived edge -> base morphism
};

/// Skew product over a finite coefficient group: vertices "(v,a)", edges
/// "(e,a)" with source (s(e), a + val(e)).  Edge values must be functorial on
/// squares (val f + val g = val g' + val f'), else InvalidFunctor; infinite
/// groups raise InfiniteResult.
class SkewGraph {
public:
    static SkewGraph build(std::shared_ptr<const KGraph> base, const Group& grp,
                           const std::vector<GroupElem>& edge_vals);

    const std::shared_ptr<const KGraph>& graph() const { return g_; }
    const std::shared_ptr<const KGraph>& base() const { return base_; }
    const Group& group() const { return grp_; }

    Morphism base_of(const Morphism& m) const;
    GroupElem vertex_label(VertexId v) const;  // the coefficient component
    GroupElem value_of(const Morphism& base_m) const;  // edge-value functor on the base

private:
    SkewGraph() : grp_(Group::integers()) {}
    std::shared_ptr<const KGraph> g_, base_;
    Group grp_;
    std::vector<GroupElem> base_vals_;            // by base edge
    std::vector<std::pair<EdgeId, long>> epart_;  // derived edge -> (base edge, residue)
    std::vector<std::pair<VertexId, long>> vpart_;
};

/// Pullback of a cocycle: value on a pair is the base cocycle on the
/// componentwise-pushed pair.  Well defined because base_of preserves
/// composition.
Cat2Cocycle pullback_cocycle(const PullbackGraph& pg, const Cat2Cocycle& base);

/// Product cocycle (c1 x c2): sum of the factors' values on the projections.
Cat2Cocycle product_cocycle(const ProductGraph& pg, const Cat2Cocycle& c1, const Cat2Cocycle& c2);

/// Skew lift: value on a pair is the base cocycle on the base components.
Cat2Cocycle skew_cocycle(const SkewGraph& sg, const Cat2Cocycle& base);

}  // namespace kcoh
