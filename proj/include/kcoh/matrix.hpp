#pragma once

#include "kcoh/group.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kcoh {

/// Dense integer matrix with arbitrary-precision entries.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Int& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    bool is_zero() const;
    IntMatrix mul(const IntMatrix& o) const;
    IntMatrix transpose() const;
    bool operator==(const IntMatrix&) const = default;

    std::string str() const;

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... >= 1.
struct SmithResult {
    IntMatrix U, D, V;
    int rank = 0;
    std::vector<Int> invariants;  // nonzero diagonal entries, divisibility chain
};

SmithResult smith_normal_form(const IntMatrix& M);

/// Finitely generated abelian group: Z^free + Z/d_1 + ... with d_1 | d_2 | ...,
/// every d_i > 1.
struct FinAbGroup {
    int free_rank = 0;
    std::vector<Int> torsion;
    bool operator==(const FinAbGroup&) const = default;
    std::string str() const;  // "Z^2 + Z/2 + Z/6", "Z", "0"
};

/// Determinant by fraction-free elimination; used to certify unimodularity.
Int det_bareiss(IntMatrix m);

/// Columns form a basis of ker(A) as a sublattice of Z^cols.
IntMatrix kernel_basis(const IntMatrix& A);

/// One integer solution of A x = b, if any.
std::optional<std::vector<Int>> solve_integer(const IntMatrix& A, const std::vector<Int>& b);

/// Structure of L / R where the columns of K are a lattice basis of L and the
/// columns of R generate a sublattice of L.  Requires im(R) contained in L.
FinAbGroup quotient_group(const IntMatrix& K, const IntMatrix& R);

}  // namespace kcoh
