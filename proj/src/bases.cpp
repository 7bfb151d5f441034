#include "scope/bases.hpp"

#include <cmath>

namespace scope {

namespace {

Matrix unit(int n, int i, int j) {
    Matrix m = Matrix::Zero(n, n);
    m(i, j) = 1.0;
    return m;
}

}  // namespace

OperatorBasis matrix_unit_basis(int n) {
    if (n < 2) throw std::invalid_argument("matrix_unit_basis: n must be >= 2");
    OperatorBasis b{n, {}, false, "matrix_unit"};
    b.elements.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b.elements.push_back(unit(n, i, j));
    return b;
}

OperatorBasis gell_mann_basis(int n) {
    if (n < 2) throw std::invalid_argument("gell_mann_basis: n must be >= 2");
    OperatorBasis b{n, {}, true, "gell_mann"};
    b.elements.reserve(static_cast<std::size_t>(n) * n);

    b.elements.push_back(Matrix::Identity(n, n) / std::sqrt(double(n)));

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            b.elements.push_back(inv_sqrt2 * (unit(n, i, j) + unit(n, j, i)));

    const Complex minus_i(0.0, -1.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            b.elements.push_back(minus_i * inv_sqrt2 * (unit(n, i, j) - unit(n, j, i)));

    // d_k = diag(1,...,1,-k,0,...,0) / sqrt(k(k+1)), k ones
    for (int k = 1; k < n; ++k) {
        Matrix d = Matrix::Zero(n, n);
        for (int m = 0; m < k; ++m) d(m, m) = 1.0;
        d(k, k) = -double(k);
        b.elements.push_back(d / std::sqrt(double(k) * (k + 1)));
    }
    return b;
}

CoefficientMatrix coefficient_matrix(const BipartiteState& s, const OperatorBasis& ba,
                                     const OperatorBasis& bb) {
    if (ba.dim != s.na() || bb.dim != s.nb())
        throw std::invalid_argument("coefficient_matrix: basis dimensions do not match state");
    const int da = ba.dim * ba.dim;
    const int db = bb.dim * bb.dim;
    Matrix entries(da, db);
    for (int a = 0; a < da; ++a)
        for (int al = 0; al < db; ++al)
            entries(a, al) = hs_inner(kron(ba.elements[a], bb.elements[al]), s.rho());
    return {std::move(entries), ba.name, bb.name};
}

Matrix reconstruct(const CoefficientMatrix& c, const OperatorBasis& ba, const OperatorBasis& bb) {
    const int da = ba.dim * ba.dim;
    const int db = bb.dim * bb.dim;
    if (c.entries.rows() != da || c.entries.cols() != db)
        throw std::invalid_argument("reconstruct: coefficient shape does not match bases");
    Matrix out = Matrix::Zero(Eigen::Index(ba.dim) * bb.dim, Eigen::Index(ba.dim) * bb.dim);
    for (int a = 0; a < da; ++a)
        for (int al = 0; al < db; ++al)
            out += c.entries(a, al) * kron(ba.elements[a], bb.elements[al]);
    return out;
}

}  // namespace scope
