// Python surface: thin wrappers over the document layer and the main
// operations.  Values cross the boundary as strings in the document syntax
// ("3", "1/4"); edge words are lists of edge names read range-to-source.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kcoh/cubical.hpp"
#include "kcoh/groupoid.hpp"
#include "kcoh/io.hpp"

namespace py = pybind11;
using namespace kcoh;

namespace {

using GraphPtr = std::shared_ptr<const KGraph>;

struct PyGraph {
    GraphPtr g;
};

struct PyCocycle {
    CocycleDocument doc;
};

GraphPtr need(const PyGraph& pg) {
    if (!pg.g) throw ValidationError("graph handle is empty");
    return pg.g;
}

PyGraph to_graph(Document d) {
    auto* gd = std::get_if<GraphDocument>(&d);
    if (!gd) throw ValidationError("document is a cocycle, not a graph");
    return {gd->build()};
}

PyCocycle to_cocycle(Document d) {
    auto* cd = std::get_if<CocycleDocument>(&d);
    if (!cd) throw ValidationError("document is a graph, not a cocycle");
    return {std::move(*cd)};
}

Morphism from_word(const GraphPtr& g, const std::vector<std::string>& names) {
    if (names.empty()) throw ValidationError("edge word must be non-empty");
    std::vector<EdgeId> ids;
    ids.reserve(names.size());
    for (const std::string& n : names) ids.push_back(g->edge(n));
    VertexId range = g->edge_range(ids.front());
    return g->make(range, std::move(ids));
}

std::vector<std::string> to_names(const GraphPtr& g, const Morphism& m) {
    std::vector<std::string> out;
    for (EdgeId e : m.word()) out.push_back(g->edge_name(e));
    return out;
}

}  // namespace

PYBIND11_MODULE(_kcoh, m) {
    m.doc() = "Cohomology toolkit for higher-rank graph presentations";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const ValidationError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<PyGraph>(m, "Graph", "validated graph presentation")
        .def_property_readonly("rank", [](const PyGraph& pg) { return need(pg)->rank(); })
        .def_property_readonly("vertices",
                               [](const PyGraph& pg) {
                                   GraphPtr g = need(pg);
                                   std::vector<std::string> out;
                                   for (VertexId v = 0; v < g->vertex_count(); ++v)
                                       out.push_back(g->vertex_name(v));
                                   return out;
                               })
        .def_property_readonly(
            "edges",
            [](const PyGraph& pg) {
                GraphPtr g = need(pg);
                std::vector<std::tuple<std::string, int, std::string, std::string>> out;
                for (EdgeId e = 0; e < g->edge_count(); ++e)
                    out.emplace_back(g->edge_name(e), g->edge_colour(e) + 1,
                                     g->vertex_name(g->edge_source(e)),
                                     g->vertex_name(g->edge_range(e)));
                return out;
            },
            "list of (name, colour, source, range) with colours 1-based as in documents")
        .def_property_readonly("square_count",
                               [](const PyGraph& pg) { return need(pg)->square_count(); })
        .def_property_readonly("has_sources",
                               [](const PyGraph& pg) { return need(pg)->has_sources(); })
        .def("__repr__", [](const PyGraph& pg) {
            GraphPtr g = need(pg);
            return "<Graph rank=" + std::to_string(g->rank()) +
                   " vertices=" + std::to_string(g->vertex_count()) +
                   " edges=" + std::to_string(g->edge_count()) + ">";
        });

    py::class_<PyCocycle>(m, "Cocycle", "cocycle document: kind, coefficients, value table")
        .def_property_readonly("kind", [](const PyCocycle& c) { return c.doc.kind; })
        .def_property_readonly("coefficients",
                               [](const PyCocycle& c) { return c.doc.group.name(); })
        .def_property_readonly("values",
                               [](const PyCocycle& c) {
                                   std::map<std::string, std::string> out;
                                   for (const auto& [k, v] : c.doc.values)
                                       out[k] = c.doc.group.str(v);
                                   return out;
                               })
        .def("__repr__", [](const PyCocycle& c) {
            return "<Cocycle kind=" + c.doc.kind + " over " + c.doc.group.name() + ">";
        });

    m.def(
        "load_graph", [](const std::string& path) { return to_graph(load_document(path)); },
        py::arg("path"));
    m.def(
        "graph_from_json", [](const std::string& text) { return to_graph(parse_document(text)); },
        py::arg("text"));
    m.def(
        "load_cocycle", [](const std::string& path) { return to_cocycle(load_document(path)); },
        py::arg("path"));
    m.def(
        "cocycle_from_json",
        [](const std::string& text) { return to_cocycle(parse_document(text)); }, py::arg("text"));

    m.def(
        "homology", [](const PyGraph& pg, int r) { return homology(need(pg), r).str(); },
        py::arg("graph"), py::arg("r"), "H_r with integer coefficients, e.g. 'Z + Z/2'");
    m.def(
        "cohomology",
        [](const PyGraph& pg, int r, const std::string& coeff) {
            auto grp = Group::parse_name(coeff);
            if (!grp) throw ValidationError("unknown coefficient group \"" + coeff + "\"");
            return cohomology(need(pg), r, *grp).str();
        },
        py::arg("graph"), py::arg("r"), py::arg("coeff") = "Z");

    m.def(
        "is_two_cocycle",
        [](const PyGraph& pg, const PyCocycle& c) {
            return is_cub_2cocycle(cubical2_cochain(c.doc, need(pg))).ok;
        },
        py::arg("graph"), py::arg("phi"), "cocycle condition over every 3-cube");
    m.def(
        "class_equal",
        [](const PyGraph& pg, const PyCocycle& a, const PyCocycle& b) {
            GraphPtr g = need(pg);
            return cub_class_equal(cubical2_cochain(a.doc, g), cubical2_cochain(b.doc, g)).equal;
        },
        py::arg("graph"), py::arg("phi1"), py::arg("phi2"),
        "whether the two square tables differ by a coboundary");

    m.def(
        "pair_value",
        [](const PyGraph& pg, const PyCocycle& c, const std::vector<std::string>& w1,
           const std::vector<std::string>& w2) {
            GraphPtr g = need(pg);
            Cat2Cocycle cc = document_cocycle(c.doc, g);
            return cc.group().str(cc.eval(from_word(g, w1), from_word(g, w2)));
        },
        py::arg("graph"), py::arg("phi"), py::arg("word1"), py::arg("word2"),
        "value of the pair cocycle on two composable edge words");

    m.def(
        "shuffle_word",
        [](const PyGraph& pg, const PyCocycle& c, const std::vector<std::string>& word) {
            GraphPtr g = need(pg);
            CubicalCochain phi = cubical2_cochain(c.doc, g);
            if (word.empty()) throw ValidationError("edge word must be non-empty");
            ColouredWord w;
            w.g = g;
            std::vector<EdgeId> ids;
            for (const std::string& n : word) ids.push_back(g->edge(n));
            w.range = g->edge_range(ids.front());
            w.word = std::move(ids);
            ShuffleResult r = shuffle(phi, w);
            py::dict out;
            out["word"] = to_names(g, r.preferred);
            out["value"] = phi.group().str(r.total);
            out["moves"] = r.moves;
            return out;
        },
        py::arg("graph"), py::arg("phi"), py::arg("word"),
        "sort a coloured word into preferred form, accumulating phi over the "
        "squares crossed");

    m.def(
        "sigma_pair",
        [](const PyGraph& pg, const PyCocycle& c, const std::vector<std::string>& p0,
           const std::vector<std::string>& p1, const std::vector<std::string>& p2,
           const std::string& vertex) {
            GraphPtr g = need(pg);
            Cat2Cocycle cc = document_cocycle(c.doc, g);
            VertexId v;
            if (!vertex.empty())
                v = g->vertex(vertex);
            else if (!p0.empty())
                v = from_word(g, p0).source();
            else if (!p1.empty())
                v = from_word(g, p1).source();
            else if (!p2.empty())
                v = from_word(g, p2).source();
            else
                throw ValidationError("all paths empty; pass vertex= to fix the tail");
            auto mor = [&](const std::vector<std::string>& w) {
                return w.empty() ? g->identity(v) : from_word(g, w);
            };
            ComposableTuple pair({mor(p0), mor(p1), mor(p2)},
                                 EventualPath::at_vertex(g, v));
            PartitionP P(g);
            return cc.group().str(sigma_eval(cc, P, pair));
        },
        py::arg("graph"), py::arg("phi"), py::arg("path0"), py::arg("path1"), py::arg("path2"),
        py::arg("vertex") = "",
        "groupoid cocycle value on the pair of shift arrows (path0 over path1, "
        "path1 over path2), all three paths sharing the source at `vertex` "
        "(inferred from the first non-empty path when omitted)");
}
