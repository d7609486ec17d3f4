#pragma once

#include "kcoh/degree.hpp"
#include "kcoh/errors.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kcoh {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Presentation data: a k-coloured directed graph.  Edges point from source
/// to range; a path of edges is written range-to-source, left to right.
struct SkeletonEdge {
    std::string id;
    int colour = 1;  // 1..k in documents
    std::string source, range;
};

struct Skeleton {
    int k = 1;
    std::vector<std::string> vertices;
    std::vector<SkeletonEdge> edges;
};

/// One commuting square f.g = g'.f' with colour(f) = colour(f') < colour(g) =
/// colour(g').  Both sides are read range-to-source.
struct SquareEntry {
    std::string f, g, gp, fp;
};

struct SquareTable {
    std::vector<SquareEntry> entries;
};

/// Optional per-vertex override of the canonical degree-(1,..,1) block used
/// by eventual-path machinery: vertex id -> composable edge word of degree
/// (1,..,1) with that range.
using BlockTable = std::map<std::string, std::vector<std::string>>;

class KGraph;

/// Morphism of a validated graph, kept in preferred (colour-sorted) form.
/// Words read range-to-source; the empty word is the identity at `range`.
class Morphism {
public:
    Morphism() = default;

    const std::shared_ptr<const KGraph>& graph() const { return g_; }
    VertexId range() const { return range_; }
    VertexId source() const { return source_; }
    const Degree& degree() const { return deg_; }
    const std::vector<EdgeId>& word() const { return word_; }
    int size() const { return static_cast<int>(word_.size()); }
    bool is_identity() const { return word_.empty(); }

    bool operator==(const Morphism& o) const {
        return range_ == o.range_ && word_ == o.word_;
    }
    bool operator!=(const Morphism& o) const { return !(*this == o); }
    bool operator<(const Morphism& o) const {  // deterministic container order
        if (word_ != o.word_) return word_ < o.word_;
        return range_ < o.range_;
    }

    std::string str() const;

private:
    friend class KGraph;
    std::shared_ptr<const KGraph> g_;
    VertexId range_ = 0, source_ = 0;
    Degree deg_;
    std::vector<EdgeId> word_;  // invariant: nondecreasing colour
};

/// A validated presentation: the skeleton together with a complete, unique and
/// cube-consistent square table.  Construction is only possible through
/// validate(), so holders of a KGraph may rely on those properties.
class KGraph : public std::enable_shared_from_this<KGraph> {
public:
    static std::shared_ptr<const KGraph> validate(const Skeleton& sk, const SquareTable& sq,
                                                  const BlockTable& blocks = {});

    int rank() const { return k_; }
    int vertex_count() const { return static_cast<int>(vnames_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int square_count() const { return static_cast<int>(asc_.size()); }

    const std::string& vertex_name(VertexId v) const { return vnames_[v]; }
    VertexId vertex(const std::string& name) const;
    const std::string& edge_name(EdgeId e) const { return edges_[e].id; }
    EdgeId edge(const std::string& name) const;
    int edge_colour(EdgeId e) const { return edges_[e].colour; }  // 0-based
    VertexId edge_source(EdgeId e) const { return edges_[e].source; }
    VertexId edge_range(EdgeId e) const { return edges_[e].range; }
    const std::vector<EdgeId>& edges_of_colour(int c) const { return by_colour_[c]; }
    const std::vector<EdgeId>& edges_into(VertexId v, int c) const;  // range v, colour c

    // Square lookups.  flip_asc maps the ascending word [f,g] to [g',f'];
    // flip_desc inverts it.  Both preserve the composite morphism.
    std::pair<EdgeId, EdgeId> flip_asc(EdgeId f, EdgeId g) const;
    std::pair<EdgeId, EdgeId> flip_desc(EdgeId a, EdgeId b) const;

    Morphism identity(VertexId v) const;
    Morphism edge_morphism(EdgeId e) const;
    /// Preferred form of an arbitrary composable edge word (range-to-source).
    Morphism make(VertexId range, std::vector<EdgeId> word) const;

    Morphism compose(const Morphism& mu, const Morphism& nu) const;
    /// Sub-morphism lambda(m, n): the part between degrees m and n.
    Morphism segment(const Morphism& lam, const Degree& m, const Degree& n) const;
    VertexId vertex_at(const Morphism& lam, const Degree& m) const;
    bool is_initial_segment(const Morphism& mu, const Morphism& lam) const;

    /// All morphisms of degree n; optional range / source filters.  Ordering
    /// is lexicographic on the internal edge indices, hence deterministic.
    std::vector<Morphism> paths(const Degree& n) const;
    std::vector<Morphism> paths_from(VertexId range_v, const Degree& n) const;
    std::vector<Morphism> paths_between(VertexId range_v, VertexId source_v, const Degree& n) const;

    /// Minimal common extensions: mu Lambda  intersect  nu Lambda  in degree
    /// d(mu) v d(nu).
    std::vector<Morphism> mce(const Morphism& mu, const Morphism& nu) const;

    /// True when some vertex has no incoming edge of some colour.
    bool has_sources() const;

    /// The canonical degree-(1,..,1) block with range u: the presentation's
    /// override if one was given, else the first path in enumeration order.
    /// Throws HasSources when no such path exists.
    Morphism block_at(VertexId u) const;

    /// Degrees n >= 0 with |n| <= total, lexicographically ordered.
    static std::vector<Degree> degrees_upto(int k, int total);

    // Rewrites a preferred word into an arbitrary target colour order by
    // adjacent square moves.  `target` must be a permutation of the word's
    // colour multiset.  Exposed for the shuffle machinery.
    std::vector<EdgeId> rearrange(const Morphism& lam, const std::vector<int>& target) const;

private:
    KGraph() = default;
    void check_same(const Morphism& m) const;
    std::vector<EdgeId> sort_word(std::vector<EdgeId> w) const;

    struct Edge {
        std::string id;
        int colour;  // 0-based
        VertexId source, range;
    };

    static std::uint64_t key(EdgeId a, EdgeId b) {
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

    int k_ = 1;
    std::vector<std::string> vnames_;
    std::unordered_map<std::string, VertexId> vindex_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, EdgeId> eindex_;
    std::vector<std::vector<EdgeId>> by_colour_;
    std::vector<std::vector<EdgeId>> into_;  // [v * k + c] edges with range v, colour c
    std::unordered_map<std::uint64_t, std::pair<EdgeId, EdgeId>> asc_;   // (f,g) -> (g',f')
    std::unordered_map<std::uint64_t, std::pair<EdgeId, EdgeId>> desc_;  // (g',f') -> (f,g)
    std::vector<std::vector<EdgeId>> blocks_;  // per-vertex override, empty = none
};

}  // namespace kcoh
