#include "kcoh/io.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace kcoh {

namespace {

using nlohmann::json;

const json& need(const json& o, const char* key, const char* what) {
    auto it = o.find(key);
    if (it == o.end())
        throw ParseError(std::string(what) + ": missing field \"" + key + "\"");
    return *it;
}

int need_int(const json& o, const char* key, const char* what) {
    const json& v = need(o, key, what);
    if (!v.is_number_integer())
        throw ParseError(std::string(what) + ": \"" + key + "\" must be an integer");
    return v.get<int>();
}

std::string need_str(const json& o, const char* key, const char* what) {
    const json& v = need(o, key, what);
    if (!v.is_string())
        throw ParseError(std::string(what) + ": \"" + key + "\" must be a string");
    return v.get<std::string>();
}

void only_keys(const json& o, std::initializer_list<const char*> keys, const char* what) {
    for (const auto& [k, v] : o.items()) {
        (void)v;
        bool known = false;
        for (const char* a : keys)
            if (k == a) { known = true; break; }
        if (!known) throw ParseError(std::string(what) + ": unknown field \"" + k + "\"");
    }
}

std::vector<std::string> string_list(const json& v, const char* what) {
    if (!v.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<std::string> out;
    for (const json& x : v) {
        if (!x.is_string()) throw ParseError(std::string(what) + " must hold strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

GraphDocument parse_graph(const json& root) {
    only_keys(root, {"blocks", "edges", "k", "squares", "vertices"}, "graph document");
    GraphDocument doc;
    doc.skeleton.k = need_int(root, "k", "graph document");
    if (doc.skeleton.k < 1) throw ParseError("graph document: k must be at least 1");
    doc.skeleton.vertices = string_list(need(root, "vertices", "graph document"), "\"vertices\"");

    const json& edges = need(root, "edges", "graph document");
    if (!edges.is_array()) throw ParseError("graph document: \"edges\" must be an array");
    for (const json& e : edges) {
        if (!e.is_object()) throw ParseError("graph document: each edge must be an object");
        only_keys(e, {"colour", "id", "range", "source"}, "edge");
        SkeletonEdge se;
        se.id = need_str(e, "id", "edge");
        se.colour = need_int(e, "colour", "edge");
        se.source = need_str(e, "source", "edge");
        se.range = need_str(e, "range", "edge");
        if (se.colour < 1 || se.colour > doc.skeleton.k)
            throw ParseError("edge \"" + se.id + "\": colour " + std::to_string(se.colour) +
                             " outside 1.." + std::to_string(doc.skeleton.k));
        doc.skeleton.edges.push_back(std::move(se));
    }

    const json& squares = need(root, "squares", "graph document");
    if (!squares.is_array()) throw ParseError("graph document: \"squares\" must be an array");
    for (const json& s : squares) {
        std::vector<std::string> q = string_list(s, "each square");
        if (q.size() != 4)
            throw ParseError("graph document: a square needs exactly four edge ids");
        doc.squares.entries.push_back({q[0], q[1], q[2], q[3]});
    }

    if (root.contains("blocks")) {
        const json& blocks = root["blocks"];
        if (!blocks.is_object()) throw ParseError("graph document: \"blocks\" must be an object");
        for (const auto& [v, w] : blocks.items())
            doc.blocks[v] = string_list(w, "each block");
    }
    return doc;
}

GroupElem parse_value(const Group& grp, const std::string& id, const json& v) {
    if (v.is_number_integer()) return grp.from_long(v.get<long>());
    if (v.is_string()) {
        if (auto e = grp.parse(v.get<std::string>())) return *e;
        throw ParseError("value for \"" + id + "\" is not a valid " + grp.name() + " element");
    }
    throw ParseError("value for \"" + id + "\" must be an integer or a fraction string");
}

CocycleDocument parse_cocycle(const json& root) {
    only_keys(root, {"coeff", "kind", "values"}, "cocycle document");
    CocycleDocument doc;
    doc.kind = need_str(root, "kind", "cocycle document");
    if (doc.kind != "cubical2" && doc.kind != "cat-coboundary" && doc.kind != "functor1")
        throw ParseError("cocycle document: unknown kind \"" + doc.kind + "\"");
    std::string coeff = need_str(root, "coeff", "cocycle document");
    auto grp = Group::parse_name(coeff);
    if (!grp) throw ParseError("cocycle document: unknown coefficient group \"" + coeff + "\"");
    doc.group = *grp;
    const json& values = need(root, "values", "cocycle document");
    if (!values.is_object()) throw ParseError("cocycle document: \"values\" must be an object");
    for (const auto& [id, v] : values.items()) doc.values.emplace(id, parse_value(doc.group, id, v));
    return doc;
}

json value_json(const Group& grp, const GroupElem& e) {
    if (denominator(e.v) == 1) return json(numerator(e.v).convert_to<long long>());
    return json(grp.str(e));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::shared_ptr<const KGraph> GraphDocument::build() const {
    return KGraph::validate(skeleton, squares, blocks);
}

std::string square_id(const KGraph& g, const Morphism& square) {
    const auto& w = square.word();
    if (w.size() != 2) throw ValidationError("square ids describe two-edge cubes");
    return g.edge_name(w[0]) + "," + g.edge_name(w[1]);
}

Document parse_document(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        auto cut = msg.find("] ");
        throw ParseError(cut == std::string::npos ? msg : msg.substr(cut + 2));
    }
    if (!root.is_object()) throw ParseError("document must be a JSON object");
    if (root.contains("k")) return parse_graph(root);
    if (root.contains("kind")) return parse_cocycle(root);
    throw ParseError("unrecognised document: expected \"k\" (graph) or \"kind\" (cocycle)");
}

Document load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot read");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_document(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string emit_document(const GraphDocument& doc) {
    json j;
    j["k"] = doc.skeleton.k;
    j["vertices"] = doc.skeleton.vertices;
    json edges = json::array();
    for (const SkeletonEdge& e : doc.skeleton.edges)
        edges.push_back(
            {{"colour", e.colour}, {"id", e.id}, {"range", e.range}, {"source", e.source}});
    j["edges"] = std::move(edges);
    json squares = json::array();
    for (const SquareEntry& s : doc.squares.entries)
        squares.push_back({s.f, s.g, s.gp, s.fp});
    j["squares"] = std::move(squares);
    if (!doc.blocks.empty()) {
        json blocks = json::object();
        for (const auto& [v, w] : doc.blocks) blocks[v] = w;
        j["blocks"] = std::move(blocks);
    }
    return dump(j);
}

std::string emit_document(const CocycleDocument& doc) {
    json j;
    j["kind"] = doc.kind;
    j["coeff"] = doc.group.name();
    json values = json::object();
    for (const auto& [id, e] : doc.values) values[id] = value_json(doc.group, e);
    j["values"] = std::move(values);
    return dump(j);
}

CubicalCochain cubical2_cochain(const CocycleDocument& doc,
                                const std::shared_ptr<const KGraph>& g) {
    if (doc.kind != "cubical2")
        throw ValidationError("a \"" + doc.kind + "\" document does not describe squares");
    auto q2 = CubeList::build(g, 2);
    CubicalCochain f(q2, doc.group);
    std::set<std::string> seen;
    for (int i = 0; i < q2->size(); ++i) {
        std::string id = square_id(*g, q2->cube(i));
        auto it = doc.values.find(id);
        if (it == doc.values.end())
            throw ValidationError("cocycle document: missing value for square \"" + id + "\"");
        f.set(i, it->second);
        seen.insert(std::move(id));
    }
    for (const auto& [id, v] : doc.values) {
        (void)v;
        if (!seen.count(id))
            throw ValidationError("cocycle document: no square \"" + id + "\" in the graph");
    }
    return f;
}

CubicalCochain edge_cochain(const CocycleDocument& doc, const std::shared_ptr<const KGraph>& g) {
    if (doc.kind != "cat-coboundary" && doc.kind != "functor1")
        throw ValidationError("a \"" + doc.kind + "\" document does not describe edge values");
    auto q1 = CubeList::build(g, 1);
    CubicalCochain f(q1, doc.group);
    std::set<std::string> seen;
    for (int i = 0; i < q1->size(); ++i) {
        std::string id = g->edge_name(q1->cube(i).word()[0]);
        auto it = doc.values.find(id);
        if (it == doc.values.end())
            throw ValidationError("cocycle document: missing value for edge \"" + id + "\"");
        f.set(i, it->second);
        seen.insert(std::move(id));
    }
    for (const auto& [id, v] : doc.values) {
        (void)v;
        if (!seen.count(id))
            throw ValidationError("cocycle document: no edge \"" + id + "\" in the graph");
    }
    return f;
}

Cat2Cocycle document_cocycle(const CocycleDocument& doc,
                             const std::shared_ptr<const KGraph>& g) {
    if (doc.kind == "cubical2") return c_phi(cubical2_cochain(doc, g));
    if (doc.kind == "cat-coboundary")
        return cat_coboundary(Cat1Evaluator::edge_table(edge_cochain(doc, g)));
    throw ValidationError("a \"" + doc.kind + "\" document does not denote a 2-cocycle");
}

}  // namespace kcoh
