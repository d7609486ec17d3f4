#include "kcoh/kgraph.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>

namespace kcoh {

std::string Morphism::str() const {
    if (word_.empty()) return "(" + g_->vertex_name(range_) + ")";
    std::string s;
    for (std::size_t i = 0; i < word_.size(); ++i) {
        if (i) s += ".";
        s += g_->edge_name(word_[i]);
    }
    return s;
}

VertexId KGraph::vertex(const std::string& name) const {
    auto it = vindex_.find(name);
    if (it == vindex_.end()) throw ValidationError("unknown vertex: " + name);
    return it->second;
}

EdgeId KGraph::edge(const std::string& name) const {
    auto it = eindex_.find(name);
    if (it == eindex_.end()) throw ValidationError("unknown edge: " + name);
    return it->second;
}

const std::vector<EdgeId>& KGraph::edges_into(VertexId v, int c) const {
    return into_[static_cast<std::size_t>(v) * k_ + c];
}

std::pair<EdgeId, EdgeId> KGraph::flip_asc(EdgeId f, EdgeId g) const {
    auto it = asc_.find(key(f, g));
    if (it == asc_.end())
        throw IncompleteSquares("no square for word " + edges_[f].id + "." + edges_[g].id);
    return it->second;
}

std::pair<EdgeId, EdgeId> KGraph::flip_desc(EdgeId a, EdgeId b) const {
    auto it = desc_.find(key(a, b));
    if (it == desc_.end())
        throw IncompleteSquares("no square for word " + edges_[a].id + "." + edges_[b].id);
    return it->second;
}

std::shared_ptr<const KGraph> KGraph::validate(const Skeleton& sk, const SquareTable& sq,
                                               const BlockTable& blocks) {
    auto g = std::shared_ptr<KGraph>(new KGraph());
    if (sk.k < 1) throw ValidationError("rank must be >= 1");
    g->k_ = sk.k;
    if (sk.vertices.empty()) throw ValidationError("at least one vertex required");

    g->vnames_ = sk.vertices;
    std::sort(g->vnames_.begin(), g->vnames_.end());
    for (std::size_t i = 0; i < g->vnames_.size(); ++i) {
        if (i && g->vnames_[i] == g->vnames_[i - 1])
            throw ValidationError("duplicate vertex id: " + g->vnames_[i]);
        g->vindex_[g->vnames_[i]] = static_cast<VertexId>(i);
    }

    std::vector<SkeletonEdge> es = sk.edges;
    std::sort(es.begin(), es.end(), [](const SkeletonEdge& a, const SkeletonEdge& b) {
        if (a.colour != b.colour) return a.colour < b.colour;
        return a.id < b.id;
    });
    g->by_colour_.resize(static_cast<std::size_t>(g->k_));
    for (const SkeletonEdge& e : es) {
        if (e.colour < 1 || e.colour > g->k_)
            throw ValidationError("edge " + e.id + ": colour out of range");
        if (g->eindex_.count(e.id)) throw ValidationError("duplicate edge id: " + e.id);
        if (g->vindex_.count(e.id))
            throw ValidationError("id used for both a vertex and an edge: " + e.id);
        Edge ie;
        ie.id = e.id;
        ie.colour = e.colour - 1;
        auto sv = g->vindex_.find(e.source);
        auto rv = g->vindex_.find(e.range);
        if (sv == g->vindex_.end()) throw ValidationError("edge " + e.id + ": unknown source " + e.source);
        if (rv == g->vindex_.end()) throw ValidationError("edge " + e.id + ": unknown range " + e.range);
        ie.source = sv->second;
        ie.range = rv->second;
        EdgeId idx = static_cast<EdgeId>(g->edges_.size());
        g->eindex_[e.id] = idx;
        g->by_colour_[static_cast<std::size_t>(ie.colour)].push_back(idx);
        g->edges_.push_back(ie);
    }
    g->into_.assign(g->vnames_.size() * static_cast<std::size_t>(g->k_), {});
    for (EdgeId e = 0; e < g->edges_.size(); ++e)
        g->into_[static_cast<std::size_t>(g->edges_[e].range) * g->k_ + g->edges_[e].colour]
            .push_back(e);

    // square table: well-formedness, then both lookup directions
    for (const SquareEntry& s : sq.entries) {
        EdgeId f = g->edge(s.f), gg = g->edge(s.g), gp = g->edge(s.gp), fp = g->edge(s.fp);
        const Edge &ef = g->edges_[f], &eg = g->edges_[gg], &egp = g->edges_[gp], &efp = g->edges_[fp];
        std::string w = s.f + "." + s.g + " = " + s.gp + "." + s.fp;
        if (ef.colour != efp.colour || eg.colour != egp.colour || ef.colour >= eg.colour)
            throw ValidationError("square " + w + ": colour pattern invalid");
        if (ef.source != eg.range || egp.source != efp.range || ef.range != egp.range ||
            eg.source != efp.source)
            throw ValidationError("square " + w + ": endpoints do not match");
        if (!g->asc_.emplace(key(f, gg), std::make_pair(gp, fp)).second)
            throw DuplicateSquare("duplicate square for word " + s.f + "." + s.g);
        if (!g->desc_.emplace(key(gp, fp), std::make_pair(f, gg)).second)
            throw DuplicateSquare("duplicate square for word " + s.gp + "." + s.fp);
    }

    // completeness: every bi-coloured composable pair factorises both ways
    for (EdgeId a = 0; a < g->edges_.size(); ++a)
        for (int c = 0; c < g->k_; ++c) {
            if (c == g->edges_[a].colour) continue;
            for (EdgeId b : g->edges_into(g->edges_[a].source, c)) {
                bool asc = g->edges_[a].colour < c;
                const auto& m = asc ? g->asc_ : g->desc_;
                if (!m.count(key(a, b)))
                    throw IncompleteSquares("no square for word " + g->edges_[a].id + "." +
                                            g->edges_[b].id);
            }
        }

    // cube consistency: both rewriting routes from ascending to descending
    // colour order agree on every tri-coloured composable word
    for (EdgeId f = 0; f < g->edges_.size(); ++f) {
        int ci = g->edges_[f].colour;
        for (int cj = ci + 1; cj < g->k_; ++cj)
            for (EdgeId gg : g->edges_into(g->edges_[f].source, cj))
                for (int cl = cj + 1; cl < g->k_; ++cl)
                    for (EdgeId h : g->edges_into(g->edges_[gg].source, cl)) {
                        auto [h1, g1] = g->flip_asc(gg, h);
                        auto [h2, f1] = g->flip_asc(f, h1);
                        auto [g2, f2] = g->flip_asc(f1, g1);
                        auto [g3, f3] = g->flip_asc(f, gg);
                        auto [h3, f4] = g->flip_asc(f3, h);
                        auto [h4, g4] = g->flip_asc(g3, h3);
                        if (h2 != h4 || g2 != g4 || f2 != f4)
                            throw CubeInconsistency(
                                "rewriting routes disagree on word " + g->edges_[f].id + "." +
                                g->edges_[gg].id + "." + g->edges_[h].id);
                    }
    }

    // optional per-vertex blocks: must be degree-(1,..,1) words at the vertex
    g->blocks_.assign(g->vnames_.size(), {});
    for (const auto& [vname, wnames] : blocks) {
        auto vit = g->vindex_.find(vname);
        if (vit == g->vindex_.end()) throw ValidationError("block at unknown vertex " + vname);
        std::vector<EdgeId> w;
        for (const std::string& en : wnames) w.push_back(g->edge(en));
        Morphism m = g->make(vit->second, std::move(w));  // checks composability
        if (m.degree() != Degree::ones(g->k_))
            throw ValidationError("block at " + vname + " must have one edge of each colour");
        g->blocks_[vit->second] = m.word();
    }
    return g;
}

Morphism KGraph::block_at(VertexId u) const {
    if (u >= vnames_.size()) throw ValidationError("unknown vertex");
    if (!blocks_[u].empty()) return make(u, blocks_[u]);
    std::vector<Morphism> ps = paths_from(u, Degree::ones(k_));
    if (ps.empty()) throw HasSources("no degree-(1,..,1) path at vertex " + vnames_[u]);
    return ps.front();
}

void KGraph::check_same(const Morphism& m) const {
    if (m.g_.get() != this) throw GraphMismatch("morphism belongs to a different graph");
}

Morphism KGraph::identity(VertexId v) const {
    if (v >= vnames_.size()) throw ValidationError("vertex id out of range");
    Morphism m;
    m.g_ = shared_from_this();
    m.range_ = m.source_ = v;
    m.deg_ = Degree(k_);
    return m;
}

Morphism KGraph::edge_morphism(EdgeId e) const {
    return make(edges_[e].range, {e});
}

std::vector<EdgeId> KGraph::sort_word(std::vector<EdgeId> w) const {
    for (std::size_t i = 1; i < w.size(); ++i)
        for (std::size_t j = i; j > 0 && edges_[w[j - 1]].colour > edges_[w[j]].colour; --j) {
            auto [x, y] = flip_desc(w[j - 1], w[j]);
            w[j - 1] = x;
            w[j] = y;
        }
    return w;
}

Morphism KGraph::make(VertexId range, std::vector<EdgeId> word) const {
    if (word.empty()) return identity(range);
    if (edges_[word[0]].range != range)
        throw NotComposable("word does not start at the requested range vertex");
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
        if (edges_[word[i]].source != edges_[word[i + 1]].range)
            throw NotComposable("word breaks between " + edges_[word[i]].id + " and " +
                                edges_[word[i + 1]].id);
    Morphism m;
    m.g_ = shared_from_this();
    m.range_ = range;
    m.word_ = sort_word(std::move(word));
    m.source_ = edges_[m.word_.back()].source;
    m.deg_ = Degree(k_);
    for (EdgeId e : m.word_) ++m.deg_[edges_[e].colour];
    return m;
}

Morphism KGraph::compose(const Morphism& mu, const Morphism& nu) const {
    check_same(mu);
    check_same(nu);
    if (mu.source() != nu.range())
        throw NotComposable("cannot compose " + mu.str() + " with " + nu.str());
    if (nu.is_identity()) return mu;
    std::vector<EdgeId> w = mu.word_;
    w.insert(w.end(), nu.word_.begin(), nu.word_.end());
    return make(mu.range(), std::move(w));
}

std::vector<EdgeId> KGraph::rearrange(const Morphism& lam, const std::vector<int>& target) const {
    check_same(lam);
    std::vector<int> have(static_cast<std::size_t>(k_), 0), want(static_cast<std::size_t>(k_), 0);
    for (EdgeId e : lam.word_) ++have[static_cast<std::size_t>(edges_[e].colour)];
    for (int c : target) ++want[static_cast<std::size_t>(c)];
    if (have != want) throw DegreeOutOfRange("target colour word does not match the degree");

    std::vector<EdgeId> w = lam.word_;
    for (std::size_t p = 0; p < w.size(); ++p) {
        if (edges_[w[p]].colour == target[p]) continue;
        std::size_t q = p + 1;
        while (edges_[w[q]].colour != target[p]) ++q;
        for (std::size_t t = q; t > p; --t) {
            EdgeId a = w[t - 1], b = w[t];
            auto [x, y] = edges_[a].colour < edges_[b].colour ? flip_asc(a, b) : flip_desc(a, b);
            w[t - 1] = x;
            w[t] = y;
        }
    }
    return w;
}

Morphism KGraph::segment(const Morphism& lam, const Degree& m, const Degree& n) const {
    check_same(lam);
    Degree zero(k_);
    if (!(zero <= m) || !(m <= n) || !(n <= lam.degree()))
        throw DegreeOutOfRange("segment bounds must satisfy 0 <= m <= n <= d");
    std::vector<int> target;
    target.reserve(lam.word_.size());
    auto push_block = [&](const Degree& d) {
        for (int c = 0; c < k_; ++c)
            for (int i = 0; i < d[c]; ++i) target.push_back(c);
    };
    push_block(m);
    push_block(n - m);
    push_block(lam.degree() - n);
    std::vector<EdgeId> w = rearrange(lam, target);

    std::size_t lo = static_cast<std::size_t>(m.total());
    std::size_t hi = static_cast<std::size_t>(n.total());
    VertexId at = lo == 0 ? lam.range() : edges_[w[lo - 1]].source;
    std::vector<EdgeId> mid(w.begin() + static_cast<std::ptrdiff_t>(lo),
                            w.begin() + static_cast<std::ptrdiff_t>(hi));
    // the middle block is already colour-sorted, so make() will not re-flip it
    return make(at, std::move(mid));
}

VertexId KGraph::vertex_at(const Morphism& lam, const Degree& m) const {
    return segment(lam, m, m).range();
}

bool KGraph::is_initial_segment(const Morphism& mu, const Morphism& lam) const {
    check_same(mu);
    check_same(lam);
    if (mu.range() != lam.range() || !(mu.degree() <= lam.degree())) return false;
    return segment(lam, Degree(k_), mu.degree()) == mu;
}

std::vector<Morphism> KGraph::paths_from(VertexId v, const Degree& n) const {
    if (n.rank() != k_) throw DegreeOutOfRange("degree rank mismatch");
    if (!n.nonneg()) throw DegreeOutOfRange("degree must be nonnegative");
    std::vector<Morphism> out;
    std::vector<EdgeId> cur;
    std::function<void(VertexId, int, int)> rec = [&](VertexId at, int c, int rem) {
        if (c == k_) {
            Morphism m;
            m.g_ = shared_from_this();
            m.range_ = v;
            m.source_ = at;
            m.deg_ = n;
            m.word_ = cur;
            out.push_back(std::move(m));
            return;
        }
        if (rem == 0) {
            rec(at, c + 1, c + 1 < k_ ? n[c + 1] : 0);
            return;
        }
        for (EdgeId e : edges_into(at, c)) {
            cur.push_back(e);
            rec(edges_[e].source, c, rem - 1);
            cur.pop_back();
        }
    };
    rec(v, 0, n[0]);
    return out;
}

std::vector<Morphism> KGraph::paths(const Degree& n) const {
    std::vector<Morphism> out;
    for (VertexId v = 0; v < vnames_.size(); ++v) {
        auto part = paths_from(v, n);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<Morphism> KGraph::paths_between(VertexId v, VertexId w, const Degree& n) const {
    std::vector<Morphism> out;
    for (Morphism& m : paths_from(v, n))
        if (m.source() == w) out.push_back(std::move(m));
    return out;
}

std::vector<Morphism> KGraph::mce(const Morphism& mu, const Morphism& nu) const {
    check_same(mu);
    check_same(nu);
    if (mu.range() != nu.range()) return {};
    Degree big = mu.degree().join(nu.degree());
    std::vector<Morphism> out;
    for (const Morphism& tau : paths_from(mu.source(), big - mu.degree())) {
        Morphism lam = compose(mu, tau);
        if (is_initial_segment(nu, lam)) out.push_back(std::move(lam));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool KGraph::has_sources() const {
    for (VertexId v = 0; v < vnames_.size(); ++v)
        for (int c = 0; c < k_; ++c)
            if (edges_into(v, c).empty()) return true;
    return false;
}

std::vector<Degree> KGraph::degrees_upto(int k, int total) {
    std::vector<Degree> out;
    Degree cur(k);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == k) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            cur[pos] = v;
            rec(pos + 1, rem - v);
        }
        cur[pos] = 0;
    };
    rec(0, total);
    return out;
}

}  // namespace kcoh
