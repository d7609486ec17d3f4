#include "kcoh/matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace kcoh {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix: shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::string IntMatrix::str() const {
    std::string s;
    for (int i = 0; i < rows_; ++i) {
        s += "[ ";
        for (int j = 0; j < cols_; ++j) s += at(i, j).str() + " ";
        s += "]\n";
    }
    return s;
}

namespace {

Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

}  // namespace

SmithResult smith_normal_form(const IntMatrix& M) {
    SmithResult res;
    res.D = M;
    res.U = IntMatrix::identity(M.rows());
    res.V = IntMatrix::identity(M.cols());
    IntMatrix& D = res.D;
    IntMatrix& U = res.U;
    IntMatrix& V = res.V;
    const int m = M.rows(), n = M.cols();

    auto swap_rows = [&](int i, int j) {
        for (int c = 0; c < n; ++c) std::swap(D.at(i, c), D.at(j, c));
        for (int c = 0; c < m; ++c) std::swap(U.at(i, c), U.at(j, c));
    };
    auto swap_cols = [&](int i, int j) {
        for (int r = 0; r < m; ++r) std::swap(D.at(r, i), D.at(r, j));
        for (int r = 0; r < n; ++r) std::swap(V.at(r, i), V.at(r, j));
    };
    auto addmul_row = [&](int dst, int src, const Int& q) {  // row_dst += q * row_src
        for (int c = 0; c < n; ++c) D.at(dst, c) += q * D.at(src, c);
        for (int c = 0; c < m; ++c) U.at(dst, c) += q * U.at(src, c);
    };
    auto addmul_col = [&](int dst, int src, const Int& q) {
        for (int r = 0; r < m; ++r) D.at(r, dst) += q * D.at(r, src);
        for (int r = 0; r < n; ++r) V.at(r, dst) += q * V.at(r, src);
    };
    auto negate_row = [&](int i) {
        for (int c = 0; c < n; ++c) D.at(i, c) = -D.at(i, c);
        for (int c = 0; c < m; ++c) U.at(i, c) = -U.at(i, c);
    };

    int t = 0;
    while (t < m && t < n) {
        // smallest nonzero entry of the active block becomes the pivot
        int pi = -1, pj = -1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j)
                if (D.at(i, j) != 0 &&
                    (pi < 0 || iabs(D.at(i, j)) < iabs(D.at(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;  // active block is zero
        if (pi != t) swap_rows(pi, t);
        if (pj != t) swap_cols(pj, t);

        for (;;) {
            if (D.at(t, t) < 0) negate_row(t);
            bool changed = false;
            for (int i = t + 1; i < m; ++i) {
                if (D.at(i, t) == 0) continue;
                Int q = D.at(i, t) / D.at(t, t);
                if (q != 0) addmul_row(i, t, -q);
                if (D.at(i, t) != 0) {  // nonzero remainder: it becomes the smaller pivot
                    swap_rows(i, t);
                    changed = true;
                    break;
                }
            }
            if (changed) continue;
            for (int j = t + 1; j < n; ++j) {
                if (D.at(t, j) == 0) continue;
                Int q = D.at(t, j) / D.at(t, t);
                if (q != 0) addmul_col(j, t, -q);
                if (D.at(t, j) != 0) {
                    swap_cols(j, t);
                    changed = true;
                    break;
                }
            }
            if (changed) continue;
            // pivot must divide the rest of the block for the invariant chain
            bool fixed = false;
            for (int i = t + 1; i < m && !fixed; ++i)
                for (int j = t + 1; j < n && !fixed; ++j)
                    if (D.at(i, j) % D.at(t, t) != 0) {
                        addmul_row(t, i, 1);
                        fixed = true;
                    }
            if (!fixed) break;
        }
        ++t;
    }

    for (int i = 0; i < std::min(m, n); ++i)
        if (D.at(i, i) != 0) res.invariants.push_back(D.at(i, i));
    res.rank = static_cast<int>(res.invariants.size());
    return res;
}

Int det_bareiss(IntMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: square matrix required");
    const int n = m.rows();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (int t = 0; t < n - 1; ++t) {
        if (m.at(t, t) == 0) {
            int p = -1;
            for (int i = t + 1; i < n; ++i)
                if (m.at(i, t) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            for (int c = 0; c < n; ++c) std::swap(m.at(t, c), m.at(p, c));
            sign = -sign;
        }
        for (int i = t + 1; i < n; ++i)
            for (int j = t + 1; j < n; ++j) {
                Int num = m.at(i, j) * m.at(t, t) - m.at(i, t) * m.at(t, j);
                m.at(i, j) = num / prev;  // division is exact (Bareiss)
            }
        prev = m.at(t, t);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

IntMatrix kernel_basis(const IntMatrix& A) {
    SmithResult s = smith_normal_form(A);
    const int n = A.cols();
    IntMatrix K(n, n - s.rank);
    for (int j = s.rank; j < n; ++j)
        for (int i = 0; i < n; ++i) K.at(i, j - s.rank) = s.V.at(i, j);
    return K;
}

std::optional<std::vector<Int>> solve_integer(const IntMatrix& A, const std::vector<Int>& b) {
    if (static_cast<int>(b.size()) != A.rows())
        throw std::invalid_argument("solve_integer: size mismatch");
    SmithResult s = smith_normal_form(A);
    const int m = A.rows(), n = A.cols();
    std::vector<Int> c(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) c[i] += s.U.at(i, j) * b[j];
    std::vector<Int> y(n);
    for (int i = 0; i < m; ++i) {
        if (i < s.rank) {
            if (c[i] % s.D.at(i, i) != 0) return std::nullopt;
            if (i < n) y[i] = c[i] / s.D.at(i, i);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Int> x(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (s.V.at(i, j) != 0 && y[j] != 0) x[i] += s.V.at(i, j) * y[j];
    return x;
}

FinAbGroup quotient_group(const IntMatrix& K, const IntMatrix& R) {
    const int r = K.cols(), s = R.cols();
    // rewrite each relation in the coordinates of the K-basis
    IntMatrix W(r, s);
    for (int j = 0; j < s; ++j) {
        std::vector<Int> b(static_cast<std::size_t>(K.rows()));
        for (int i = 0; i < K.rows(); ++i) b[static_cast<std::size_t>(i)] = R.at(i, j);
        auto w = solve_integer(K, b);
        if (!w) throw std::logic_error("quotient_group: relation outside the lattice");
        for (int i = 0; i < r; ++i) W.at(i, j) = (*w)[static_cast<std::size_t>(i)];
    }
    SmithResult sw = smith_normal_form(W);
    FinAbGroup g;
    g.free_rank = r - sw.rank;
    for (const Int& d : sw.invariants)
        if (d > 1) g.torsion.push_back(d);
    return g;
}

std::string FinAbGroup::str() const {
    if (free_rank == 0 && torsion.empty()) return "0";
    std::string s;
    if (free_rank == 1) s = "Z";
    else if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
    for (const Int& d : torsion) {
        if (!s.empty()) s += " + ";
        s += "Z/" + d.str();
    }
    return s;
}

}  // namespace kcoh
