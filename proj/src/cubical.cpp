#include "kcoh/cubical.hpp"

#include <algorithm>
#include <numeric>

namespace kcoh {

std::shared_ptr<const CubeList> CubeList::build(std::shared_ptr<const KGraph> g, int r) {
    if (r < 0) throw DegreeOutOfRange("cube rank must be >= 0");
    auto q = std::make_shared<CubeList>();
    q->g_ = g;
    q->r_ = r;
    if (r <= g->rank()) {
        for (const Degree& n : KGraph::degrees_upto(g->rank(), r)) {
            if (n.total() != r || !(n <= Degree::ones(g->rank()))) continue;
            for (Morphism& m : g->paths(n)) q->cubes_.push_back(std::move(m));
        }
    }
    for (std::size_t i = 0; i < q->cubes_.size(); ++i)
        q->index_[q->cubes_[i]] = static_cast<int>(i);
    return q;
}

int CubeList::index_of(const Morphism& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
}

Morphism face(const Morphism& lam, int j, int ell) {
    const auto& g = lam.graph();
    const Degree& d = lam.degree();
    if (!(d <= Degree::ones(g->rank())))
        throw DegreeOutOfRange("face: morphism is not a cube");
    int seen = 0, colour = -1;
    for (int c = 0; c < g->rank(); ++c)
        if (d[c] == 1 && ++seen == j) {
            colour = c;
            break;
        }
    if (colour < 0) throw DegreeOutOfRange("face: index exceeds the cube rank");
    Degree e = Degree::unit(g->rank(), colour);
    return ell == 0 ? g->segment(lam, Degree(g->rank()), d - e) : g->segment(lam, e, d);
}

IntMatrix boundary_matrix(const CubeList& Qr, const CubeList& Qrm1) {
    if (Qr.graph() != Qrm1.graph() || Qrm1.r() != Qr.r() - 1)
        throw GraphMismatch("boundary_matrix: cube lists do not match");
    IntMatrix M(Qrm1.size(), Qr.size());
    for (int col = 0; col < Qr.size(); ++col) {
        const Morphism& lam = Qr.cube(col);
        for (int j = 1; j <= Qr.r(); ++j)
            for (int ell = 0; ell <= 1; ++ell) {
                int row = Qrm1.index_of(face(lam, j, ell));
                int sign = (j + ell) % 2 == 0 ? 1 : -1;
                M.at(row, col) += sign;
            }
    }
    return M;
}

FinAbGroup homology(const std::shared_ptr<const KGraph>& g, int r) {
    if (r < 0) return {};
    auto Qr = CubeList::build(g, r);
    if (Qr->size() == 0) return {};
    auto Qup = CubeList::build(g, r + 1);
    IntMatrix A = r == 0 ? IntMatrix(0, Qr->size())
                         : boundary_matrix(*Qr, *CubeList::build(g, r - 1));
    IntMatrix B = boundary_matrix(*Qup, *Qr);
    int rank_a = smith_normal_form(A).rank;
    SmithResult sb = smith_normal_form(B);
    FinAbGroup h;
    h.free_rank = Qr->size() - rank_a - sb.rank;
    for (const Int& d : sb.invariants)
        if (d > 1) h.torsion.push_back(d);
    return h;
}

FinAbGroup cohomology(const std::shared_ptr<const KGraph>& g, int r, const Group& coeff) {
    if (coeff.kind() == Group::Kind::RationalsMod1)
        throw UnsupportedCoefficients("cohomology groups are computed over Z and Z/n only");
    if (r < 0) return {};
    auto Qr = CubeList::build(g, r);
    const int n_r = Qr->size();
    if (n_r == 0) return {};
    // delta^r = transpose of boundary one rank up; delta^{r-1} likewise
    IntMatrix E = boundary_matrix(*CubeList::build(g, r + 1), *Qr).transpose();
    IntMatrix D = r == 0 ? IntMatrix(n_r, 0)
                         : boundary_matrix(*Qr, *CubeList::build(g, r - 1)).transpose();

    if (coeff.kind() == Group::Kind::Integers)
        return quotient_group(kernel_basis(E), D);

    // Z/n: kernel of E mod n as a sublattice of Z^{n_r}, relations im(D) + n Z^{n_r}
    const Int n = coeff.modulus();
    SmithResult se = smith_normal_form(E);
    IntMatrix K(n_r, n_r);
    for (int j = 0; j < n_r; ++j) {
        Int t = 1;
        if (j < se.rank) t = n / gcd(se.D.at(j, j), n);
        for (int i = 0; i < n_r; ++i) K.at(i, j) = se.V.at(i, j) * t;
    }
    IntMatrix R(n_r, D.cols() + n_r);
    for (int i = 0; i < n_r; ++i) {
        for (int j = 0; j < D.cols(); ++j) R.at(i, j) = D.at(i, j);
        R.at(i, D.cols() + i) = n;
    }
    return quotient_group(K, R);
}

CubicalCochain::CubicalCochain(std::shared_ptr<const CubeList> cubes, Group grp)
    : cubes_(std::move(cubes)), grp_(grp), val_(static_cast<std::size_t>(cubes_->size())) {}

const GroupElem& CubicalCochain::value_at(const Morphism& m) const {
    int i = cubes_->index_of(m);
    if (i < 0) throw DegreeOutOfRange("cochain evaluated off its cube list");
    return val_[static_cast<std::size_t>(i)];
}

void CubicalCochain::check_compatible(const CubicalCochain& o) const {
    if (cubes_->graph() != o.cubes_->graph() || cubes_->r() != o.cubes_->r())
        throw GraphMismatch("cochains live on different cube lists");
    if (!(grp_ == o.grp_)) throw UnsupportedCoefficients("cochain coefficient groups differ");
}

CubicalCochain CubicalCochain::add(const CubicalCochain& o) const {
    check_compatible(o);
    CubicalCochain r = *this;
    for (std::size_t i = 0; i < val_.size(); ++i) r.val_[i] = grp_.add(val_[i], o.val_[i]);
    return r;
}

CubicalCochain CubicalCochain::sub(const CubicalCochain& o) const {
    check_compatible(o);
    CubicalCochain r = *this;
    for (std::size_t i = 0; i < val_.size(); ++i) r.val_[i] = grp_.sub(val_[i], o.val_[i]);
    return r;
}

CubicalCochain CubicalCochain::negate() const {
    CubicalCochain r = *this;
    for (std::size_t i = 0; i < val_.size(); ++i) r.val_[i] = grp_.neg(val_[i]);
    return r;
}

bool CubicalCochain::is_zero() const {
    return std::all_of(val_.begin(), val_.end(),
                       [this](const GroupElem& v) { return grp_.is_zero(v); });
}

bool CubicalCochain::operator==(const CubicalCochain& o) const {
    return cubes_->graph() == o.cubes_->graph() && cubes_->r() == o.cubes_->r() &&
           grp_ == o.grp_ && val_ == o.val_;
}

CubicalCochain cub_coboundary(const CubicalCochain& f) {
    const auto& g = f.cubes()->graph();
    auto Qup = CubeList::build(g, f.rank_r() + 1);
    CubicalCochain out(Qup, f.group());
    for (int i = 0; i < Qup->size(); ++i) {
        const Morphism& lam = Qup->cube(i);
        GroupElem acc = f.group().zero();
        for (int j = 1; j <= f.rank_r() + 1; ++j)
            for (int ell = 0; ell <= 1; ++ell) {
                const GroupElem& v = f.value_at(face(lam, j, ell));
                acc = (j + ell) % 2 == 0 ? f.group().add(acc, v) : f.group().sub(acc, v);
            }
        out.set(i, acc);
    }
    return out;
}

CocycleVerdict is_cub_2cocycle(const CubicalCochain& phi) {
    if (phi.rank_r() != 2) throw DegreeOutOfRange("is_cub_2cocycle wants a rank-2 cochain");
    const auto& g = phi.cubes()->graph();
    const Group& grp = phi.group();
    auto Q3 = CubeList::build(g, 3);
    for (const Morphism& lam : Q3->cubes()) {
        GroupElem lhs = grp.add(grp.add(phi.value_at(face(lam, 3, 0)), phi.value_at(face(lam, 2, 1))),
                                phi.value_at(face(lam, 1, 0)));
        GroupElem rhs = grp.add(grp.add(phi.value_at(face(lam, 1, 1)), phi.value_at(face(lam, 2, 0))),
                                phi.value_at(face(lam, 3, 1)));
        if (!(lhs == rhs)) return {false, lam};
    }
    return {};
}

Cat1Evaluator Cat1Evaluator::edge_table(const CubicalCochain& f) {
    if (f.rank_r() != 1) throw DegreeOutOfRange("edge table wants a rank-1 cochain");
    Cat1Evaluator ev(f.cubes()->graph(), f.group());
    ev.vals_.resize(static_cast<std::size_t>(ev.g_->edge_count()));
    for (EdgeId e = 0; e < ev.vals_.size(); ++e)
        ev.vals_[e] = f.value_at(ev.g_->edge_morphism(e));
    return ev;
}

Cat1Evaluator Cat1Evaluator::zero(std::shared_ptr<const KGraph> g, Group grp) {
    Cat1Evaluator ev(std::move(g), grp);
    ev.vals_.assign(static_cast<std::size_t>(ev.g_->edge_count()), grp.zero());
    return ev;
}

GroupElem Cat1Evaluator::eval(const Morphism& lam) const {
    if (lam.graph() != g_) throw GraphMismatch("evaluator applied across graphs");
    GroupElem acc = grp_.zero();
    for (EdgeId e : lam.word()) acc = grp_.add(acc, vals_[e]);
    return acc;
}

Cat1Evaluator extend_1cocycle(const CubicalCochain& f) {
    if (f.rank_r() != 1) throw DegreeOutOfRange("extend_1cocycle wants a rank-1 cochain");
    if (!cub_coboundary(f).is_zero())
        throw NotACocycle("edge table does not satisfy the square relations");
    return Cat1Evaluator::edge_table(f);
}

}  // namespace kcoh
