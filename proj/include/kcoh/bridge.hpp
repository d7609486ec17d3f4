#pragma once

#include "kcoh/cubical.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace kcoh {

/// Composable edge word in arbitrary colour order, read range-to-source.
struct ColouredWord {
    std::shared_ptr<const KGraph> g;
    VertexId range = 0;
    std::vector<EdgeId> word;
};

/// The stored colour-sorted word of a morphism, exposed for word-level
/// algorithms.
ColouredWord preferred_word(const Morphism& lam);

/// Which descent gets flipped at each step of a shuffle.  Both strategies
/// reach the colour-sorted word; the accumulated value agrees between them
/// precisely when the driving 2-cochain is a cocycle.
enum class ShuffleStrategy { LeftmostDescent, SeededDescent };

struct ShuffleResult {
    Morphism preferred;
    GroupElem total;  // sum of phi over the squares crossed
    int moves = 0;
};

ShuffleResult shuffle(const CubicalCochain& phi, const ColouredWord& w,
                      ShuffleStrategy strategy = ShuffleStrategy::LeftmostDescent,
                      std::uint64_t seed = 0);

/// Runs both strategies and insists they agree; disagreement certifies that
/// phi fails the cocycle condition.
GroupElem shuffle_checked(const CubicalCochain& phi, const ColouredWord& w, std::uint64_t seed);

/// Normalised categorical 2-cochain, evaluated lazily on composable pairs.
class Cat2Cocycle {
public:
    struct Impl {
        virtual ~Impl() = default;
        virtual GroupElem eval(const Morphism& mu, const Morphism& nu) const = 0;
        virtual std::string kind() const = 0;
        Group grp = Group::integers();
        std::shared_ptr<const KGraph> g;
    };

    explicit Cat2Cocycle(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    const Group& group() const { return impl_->grp; }
    const std::shared_ptr<const KGraph>& graph() const { return impl_->g; }
    std::string kind() const { return impl_->kind(); }

    GroupElem eval(const Morphism& mu, const Morphism& nu) const;

private:
    std::shared_ptr<const Impl> impl_;
};

/// The shuffle 2-cocycle of a cubical 2-cocycle phi:
///   c_phi(mu, nu) = S_phi(concatenation of the preferred words).
Cat2Cocycle c_phi(const CubicalCochain& phi);

/// delta^1 b as a categorical 2-cocycle: (mu,nu) -> b(mu) - b(mu nu) + b(nu).
Cat2Cocycle cat_coboundary(const Cat1Evaluator& b);

Cat2Cocycle zero_cocycle(std::shared_ptr<const KGraph> g, Group grp);
Cat2Cocycle cocycle_sum(const Cat2Cocycle& a, const Cat2Cocycle& b);
Cat2Cocycle cocycle_neg(const Cat2Cocycle& a);

struct TripleVerdict {
    bool ok = true;
    std::optional<std::array<Morphism, 3>> witness;
};

/// Cocycle identity c(l1,l2) + c(l1 l2, l3) = c(l2,l3) + c(l1, l2 l3) over
/// all composable triples with |l_i| <= exhaustive_len, then `samples` seeded
/// triples with |l_i| <= sample_len.  Also spot-checks normalisation on
/// identities.
TripleVerdict cat2_eval_and_check(const Cat2Cocycle& c, int exhaustive_len = 2,
                                  int samples = 500, int sample_len = 4,
                                  std::uint64_t seed = 1);

/// Reverse restriction to squares: for the square with factorisations
/// f.g = g'.f' (colour(f) < colour(g)),
///   phi_c(square) = c(g', f') - c(f, g).
CubicalCochain restrict_to_squares(const Cat2Cocycle& c);

struct ClassCertificate {
    bool equal = false;
    std::optional<CubicalCochain> primitive;  // f with delta^1 f = phi1 - phi2
};

/// Decides whether two cubical 2-cocycles differ by a coboundary, solving the
/// linear system over the coefficient group (Smith form based; exact for Z,
/// Z/n and Q/Z).
ClassCertificate cub_class_equal(const CubicalCochain& phi1, const CubicalCochain& phi2);

}  // namespace kcoh
