#pragma once

#include "kcoh/bridge.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kcoh {

/// Element of a central extension.  The tree mirrors the extension's shape: a
/// leaf holds (lambda, a), a negation node wraps one child, a sum node holds
/// a representative (x, y) of the class [x, y].  Extension operations return
/// canonical trees (sum second coordinate has group part zero); hand-shifted
/// representatives of the same class are accepted as inputs and compare equal
/// after Extension::canonicalise.
struct ExtElem {
    Morphism lam;               // leaf payload
    GroupElem a;                // leaf payload
    std::vector<ExtElem> kids;  // empty: leaf; one: negation; two: sum pair

    bool operator==(const ExtElem& o) const;
    bool operator!=(const ExtElem& o) const { return !(*this == o); }
    std::string str(const Group& grp) const;
};

/// Central extension of a k-graph by an abelian group, presented as one of
/// four variants: twisted by a categorical 2-cocycle, trivial, a sum of two
/// extensions over the same base, or a negation.  Elements are never
/// materialised as a set; every operation acts elementwise on ExtElem trees.
///
/// The defining property: whenever q(x) = q(y) there is a unique a_of(x, y)
/// with x = act(a_of(x, y), y), and act commutes with composition on either
/// side (centrality).
class Extension {
public:
    struct Impl;

    static Extension from_cocycle(const Cat2Cocycle& c);
    static Extension trivial(std::shared_ptr<const KGraph> g, const Group& grp);
    static Extension sum(const Extension& x, const Extension& y);  // BaseMismatch on mixed bases
    static Extension negate(const Extension& x);

    const std::shared_ptr<const KGraph>& graph() const;
    const Group& group() const;
    std::string kind() const;  // "cocycle", "trivial", "sum", "negate"

    /// identity-fibre inclusion: the element over id_v with offset a
    ExtElem iota(VertexId v, const GroupElem& a) const;
    /// the unique element with canonical lift q-image lam and group part a
    ExtElem element(const Morphism& lam, const GroupElem& a) const;
    ExtElem compose(const ExtElem& x, const ExtElem& y) const;
    Morphism q(const ExtElem& x) const;
    /// offset between parallel elements; BaseMismatch unless q(x) = q(y)
    GroupElem a_of(const ExtElem& x, const ExtElem& y) const;
    ExtElem act(const GroupElem& b, const ExtElem& x) const;
    /// canonical representative of the class of a (possibly shifted) tree
    ExtElem canonicalise(const ExtElem& x) const;
    /// a_of against the canonical lift of q(x)
    GroupElem group_part(const ExtElem& x) const;

    explicit Extension(std::shared_ptr<const Impl> impl);
    const std::shared_ptr<const Impl>& impl() const { return impl_; }

private:
    std::shared_ptr<const Impl> impl_;
};

/// Normalised section: sigma picks one element over each morphism with
/// q(sigma(lambda)) = lambda and sigma(v) = iota(v, 0).
class Section {
public:
    /// lambda -> element(lambda, 0)
    static Section canonical(const Extension& X);
    /// lift each skeleton edge with the given offset, extend along the
    /// preferred word of lambda
    static Section from_edge_lifts(const Extension& X, std::vector<GroupElem> edge_offsets);
    /// sigma'(lambda) = act(b(lambda), sigma(lambda)); b vanishes on
    /// identities because it is an edge sum
    static Section perturbed(const Section& s, const Cat1Evaluator& b);

    const Extension& extension() const;
    ExtElem at(const Morphism& lam) const;

private:
    struct Data;
    explicit Section(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

/// c_sigma(mu, nu) = a_of(sigma(mu) sigma(nu), sigma(mu nu)); always a
/// categorical 2-cocycle.
Cat2Cocycle section_cocycle(const Extension& X, const Section& s);

/// The cubical 2-cochain measuring how far a section is from respecting each
/// commuting square fg = g'f': value a_of(sigma(f) sigma(g), sigma(g') sigma(f')).
/// For edge-lift sections this is a cubical 2-cocycle phi with c_phi = -c_sigma.
CubicalCochain square_defect(const Extension& X, const Section& s);

struct ExtLawReport {
    bool unit_law = true;          // sum with the trivial extension collapses
    bool inverse_law = true;       // sum with the negation collapses to trivial
    bool commutativity = true;     // swapping sum factors is multiplicative
    bool canonical_section = true; // section_cocycle(Xc, canonical) reproduces c
    bool a_of_additivity = true;   // a_of on sums splits coordinatewise
    bool square_transfer = true;   // edge-lift defects are cocycles with c_phi = -c_sigma
    std::optional<std::string> failure;  // first failing identity, for reports

    bool ok() const {
        return unit_law && inverse_law && commutativity && canonical_section &&
               a_of_additivity && square_transfer;
    }
    std::string str() const;
};

/// Exercises the group laws of extension classes and the section/cocycle
/// correspondence on seeded element samples.  All samples must share one
/// graph and group; derived extensions are built from the given cocycles.
ExtLawReport ext_law_suite(const std::vector<Cat2Cocycle>& samples, int pairs = 100,
                           std::uint64_t seed = 1);

}  // namespace kcoh
