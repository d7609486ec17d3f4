#pragma once

#include "kcoh/kgraph.hpp"

#include <optional>
#include <string>
#include <utility>

namespace kcoh {

enum class PeriodicityVerdict { AperiodicUpToBound, PeriodicWitness, Inconclusive };

struct PeriodicityReport {
    PeriodicityVerdict verdict = PeriodicityVerdict::Inconclusive;
    std::optional<std::pair<Morphism, Morphism>> witness;  // first unseparated pair
    int pairs_checked = 0;
    std::string str() const;
};

/// Bounded aperiodicity search.  Candidate pairs are distinct morphisms
/// alpha != beta with equal range and source and d <= bound; a pair is
/// separated by any tau with d(tau) <= bound and MCE(alpha tau, beta tau)
/// empty.  A pair no tau separates is reported as a periodicity witness (a
/// claim about the searched bound, not beyond it).  With no candidate pairs
/// at all the search is inconclusive.  Requires a graph without sources.
PeriodicityReport periodicity_diagnostics(const std::shared_ptr<const KGraph>& g,
                                          const Degree& bound);

struct CofinalityReport {
    bool cofinal = true;
    std::optional<std::pair<VertexId, Morphism>> witness;  // (target vertex, path prefix)
    int paths_checked = 0;
    std::string str(const KGraph& g) const;
};

/// Bounded cofinality check: every vertex v against every eventually-block
/// path x = mu . rho . rho . ... with d(mu) <= bound.  Verified when some
/// visited vertex of x (explored through one full cycle of canonical blocks)
/// admits a morphism into v; otherwise the (v, x) pair is reported.  Requires
/// a graph without sources.
CofinalityReport cofinality_diagnostics(const std::shared_ptr<const KGraph>& g,
                                        const Degree& bound);

}  // namespace kcoh
