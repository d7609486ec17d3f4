#pragma once

#include "kcoh/bridge.hpp"
#include "kcoh/group.hpp"
#include "kcoh/kgraph.hpp"

#include <map>
#include <memory>
#include <string>
#include <variant>

namespace kcoh {

/// In-memory form of a .kg document: a skeleton presentation plus optional
/// block overrides, ready to validate.
struct GraphDocument {
    Skeleton skeleton;
    SquareTable squares;
    BlockTable blocks;

    std::shared_ptr<const KGraph> build() const;
};

/// In-memory form of a .cc document.  Values are keyed by square id for kind
/// "cubical2" and by edge id for kinds "cat-coboundary" and "functor1".
struct CocycleDocument {
    std::string kind;
    Group group = Group::integers();
    std::map<std::string, GroupElem> values;
};

using Document = std::variant<GraphDocument, CocycleDocument>;

/// A square's document key: its two generating edges in ascending colour
/// order, comma-joined ("e,f").
std::string square_id(const KGraph& g, const Morphism& square);

/// Reads a document from JSON text.  The document type is recognised by its
/// fields ("k" for graphs, "kind" for cocycles); unknown fields are rejected.
Document parse_document(const std::string& text);

/// parse_document on a file's contents; errors mention the path.
Document load_document(const std::string& path);

/// Canonical serialisation: sorted keys, two-space indent, one trailing
/// newline, circle values as reduced fractions.  Emitting what was parsed
/// canonicalises any equivalent spelling of the same document; emitting a
/// canonical document reproduces it byte for byte.
std::string emit_document(const GraphDocument& doc);
std::string emit_document(const CocycleDocument& doc);

/// The rank-2 cochain a "cubical2" document describes over g.  The value
/// table must cover the squares of g exactly.
CubicalCochain cubical2_cochain(const CocycleDocument& doc,
                                const std::shared_ptr<const KGraph>& g);

/// The edge-indexed cochain behind a "cat-coboundary" or "functor1"
/// document; the table must cover the edges of g exactly.
CubicalCochain edge_cochain(const CocycleDocument& doc, const std::shared_ptr<const KGraph>& g);

/// The categorical 2-cocycle a document denotes over g: the shuffle cocycle
/// of the square table for "cubical2", the coboundary of the edge values for
/// "cat-coboundary".
Cat2Cocycle document_cocycle(const CocycleDocument& doc, const std::shared_ptr<const KGraph>& g);

}  // namespace kcoh
