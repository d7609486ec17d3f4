#include "kcoh/diagnostics.hpp"

#include "kcoh/errors.hpp"

#include <deque>
#include <set>

namespace kcoh {

namespace {

// All degrees 0 <= m <= bound, componentwise, in lexicographic order.
std::vector<Degree> degrees_below(const Degree& bound) {
    std::vector<Degree> out;
    Degree m(bound.rank());
    while (true) {
        out.push_back(m);
        int i = bound.rank() - 1;
        for (; i >= 0; --i) {
            if (m[i] < bound[i]) {
                ++m[i];
                break;
            }
            m[i] = 0;
        }
        if (i < 0) break;
    }
    return out;
}

void check_bound(const KGraph& g, const Degree& bound) {
    if (bound.rank() != g.rank() || !bound.nonneg())
        throw DegreeOutOfRange("search bound must be a nonnegative degree of rank " +
                               std::to_string(g.rank()));
}

}  // namespace

std::string PeriodicityReport::str() const {
    switch (verdict) {
        case PeriodicityVerdict::AperiodicUpToBound:
            return "VERIFIED-APERIODIC-UP-TO-BOUND";
        case PeriodicityVerdict::PeriodicWitness:
            return "PERIODIC-WITNESS(" + witness->first.str() + ", " + witness->second.str() +
                   ")";
        default:
            return "INCONCLUSIVE";
    }
}

PeriodicityReport periodicity_diagnostics(const std::shared_ptr<const KGraph>& g,
                                          const Degree& bound) {
    if (!g) throw Error("periodicity_diagnostics: null graph");
    check_bound(*g, bound);
    if (g->has_sources())
        throw HasSources("periodicity diagnostics requires a graph without sources");

    std::vector<Morphism> pool;
    const std::vector<Degree> degs = degrees_below(bound);
    for (const Degree& n : degs)
        for (Morphism& m : g->paths(n)) pool.push_back(std::move(m));

    PeriodicityReport rep;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = i + 1; j < pool.size(); ++j) {
            const Morphism& al = pool[i];
            const Morphism& be = pool[j];
            if (al.range() != be.range() || al.source() != be.source()) continue;
            ++rep.pairs_checked;
            bool separated = false;
            for (const Degree& n : degs) {
                for (const Morphism& tau : g->paths_from(al.source(), n)) {
                    if (g->mce(g->compose(al, tau), g->compose(be, tau)).empty()) {
                        separated = true;
                        break;
                    }
                }
                if (separated) break;
            }
            if (!separated) {
                rep.verdict = PeriodicityVerdict::PeriodicWitness;
                rep.witness = {al, be};
                return rep;
            }
        }
    }
    rep.verdict = rep.pairs_checked > 0 ? PeriodicityVerdict::AperiodicUpToBound
                                        : PeriodicityVerdict::Inconclusive;
    return rep;
}

std::string CofinalityReport::str(const KGraph& g) const {
    if (cofinal) return "COFINAL-UP-TO-BOUND";
    return "NOT-COFINAL-WITNESS(" + g.vertex_name(witness->first) + ", " +
           witness->second.str() + ")";
}

CofinalityReport cofinality_diagnostics(const std::shared_ptr<const KGraph>& g,
                                        const Degree& bound) {
    if (!g) throw Error("cofinality_diagnostics: null graph");
    check_bound(*g, bound);
    if (g->has_sources())
        throw HasSources("cofinality diagnostics requires a graph without sources");

    // reach[v][w] == 1 when some morphism has range v and source w.
    const int nv = g->vertex_count();
    std::vector<std::vector<char>> reach(static_cast<std::size_t>(nv),
                                         std::vector<char>(static_cast<std::size_t>(nv), 0));
    for (VertexId v = 0; v < static_cast<VertexId>(nv); ++v) {
        std::deque<VertexId> queue{v};
        reach[v][v] = 1;
        while (!queue.empty()) {
            VertexId w = queue.front();
            queue.pop_front();
            for (int c = 0; c < g->rank(); ++c)
                for (EdgeId e : g->edges_into(w, c)) {
                    VertexId s = g->edge_source(e);
                    if (!reach[v][s]) {
                        reach[v][s] = 1;
                        queue.push_back(s);
                    }
                }
        }
    }

    CofinalityReport rep;
    for (const Degree& n : degrees_below(bound)) {
        for (const Morphism& mu : g->paths(n)) {
            ++rep.paths_checked;
            // Extend mu by canonical blocks through one full cycle of block
            // start vertices, then record every vertex the composite visits.
            Morphism p = mu;
            std::set<VertexId> starts;
            VertexId u = p.source();
            while (starts.insert(u).second) {
                p = g->compose(p, g->block_at(u));
                u = p.source();
            }
            p = g->compose(p, g->block_at(u));
            std::set<VertexId> visited;
            for (const Degree& m : degrees_below(p.degree()))
                visited.insert(g->vertex_at(p, m));
            for (VertexId v = 0; v < static_cast<VertexId>(nv); ++v) {
                bool met = false;
                for (VertexId w : visited)
                    if (reach[v][w]) {
                        met = true;
                        break;
                    }
                if (!met) {
                    rep.cofinal = false;
                    rep.witness = {v, mu};
                    return rep;
                }
            }
        }
    }
    return rep;
}

}  // namespace kcoh
