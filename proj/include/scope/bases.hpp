// bases.hpp — HS-orthonormal operator bases (matrix units, generalized
// Gell-Mann plus normalized identity) and the coefficient matrix of a
// bipartite operator over a product basis, with reconstruction.

#pragma once

#include "scope/linalg.hpp"

#include <string>
#include <vector>

namespace scope {

struct OperatorBasis {
    int dim = 0;
    std::vector<Matrix> elements;  // dim*dim elements, <F_a,F_b>_HS = delta_ab
    bool hermitian = false;
    std::string name;
};

struct CoefficientMatrix {
    Matrix entries;  // na^2 x nb^2
    std::string basis_a;
    std::string basis_b;
};

// Matrix units E_ij (single 1 at (i,j)), ordered by (i,j) row-major.
OperatorBasis matrix_unit_basis(int n);

// Hermitian basis: element 0 is I/sqrt(n), then unit-normalized generalized
// Gell-Mann matrices — symmetric pairs (i<j), antisymmetric pairs (i<j),
// diagonal family — each in lexicographic order. For n=2 this is
// {I, sigma_x, sigma_y, sigma_z}/sqrt(2).
OperatorBasis gell_mann_basis(int n);

// entries(a,alpha) = <F_a (x) F_alpha, rho>_HS = tr((F_a (x) F_alpha)^dag rho).
// The daggered inner product keeps rho = sum entries(a,alpha) F_a (x) F_alpha
// an identity for non-Hermitian bases too.
CoefficientMatrix coefficient_matrix(const BipartiteState& s, const OperatorBasis& ba,
                                     const OperatorBasis& bb);

// sum_{a,alpha} entries(a,alpha) * (F_a (x) F_alpha)
Matrix reconstruct(const CoefficientMatrix& c, const OperatorBasis& ba, const OperatorBasis& bb);

}  // namespace scope
