#include "scope/schmidt.hpp"

#include "scope/bases.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace scope {

Matrix realign(const Matrix& rho, int na, int nb) {
    const Eigen::Index n = Eigen::Index(na) * nb;
    if (rho.rows() != n || rho.cols() != n)
        throw std::invalid_argument("realign: matrix size does not match na*nb");
    Matrix r(Eigen::Index(na) * na, Eigen::Index(nb) * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l)
                    r(i * na + j, k * nb + l) = rho(i * nb + k, j * nb + l);
    return r;
}

Matrix realign(const BipartiteState& s) { return realign(s.rho(), s.na(), s.nb()); }

Matrix unrealign(const Matrix& r, int na, int nb) {
    if (r.rows() != Eigen::Index(na) * na || r.cols() != Eigen::Index(nb) * nb)
        throw std::invalid_argument("unrealign: matrix size does not match na^2 x nb^2");
    Matrix rho(Eigen::Index(na) * nb, Eigen::Index(na) * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l)
                    rho(i * nb + k, j * nb + l) = r(i * na + j, k * nb + l);
    return rho;
}

SchmidtSpectrum spectrum_from_values(const RealVector& sv, int d, double rank_tol) {
    SchmidtSpectrum sp;
    sp.rank_tol = rank_tol;
    sp.coeffs = RealVector::Zero(d);
    const int copy = std::min<int>(d, int(sv.size()));
    for (int i = 0; i < copy; ++i) sp.coeffs(i) = std::max(0.0, sv(i));
    std::sort(sp.coeffs.data(), sp.coeffs.data() + d, std::greater<double>());
    const double top = sp.coeffs.size() > 0 ? sp.coeffs(0) : 0.0;
    sp.rank = 0;
    if (top > 0.0)
        for (int i = 0; i < d; ++i)
            if (sp.coeffs(i) > rank_tol * top) ++sp.rank;
    return sp;
}

SchmidtSpectrum schmidt_spectrum(const BipartiteState& s, double rank_tol) {
    const int d = std::min(s.na() * s.na(), s.nb() * s.nb());
    return spectrum_from_values(singular_values(realign(s)), d, rank_tol);
}

SchmidtDecomposition schmidt_decomposition(const BipartiteState& s, double rank_tol) {
    const int na = s.na();
    const int nb = s.nb();
    Eigen::JacobiSVD<Matrix> svd(realign(s), Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw NumericError("schmidt_decomposition: SVD did not converge");

    const int d = std::min(na * na, nb * nb);
    SchmidtDecomposition out;
    out.spectrum = spectrum_from_values(svd.singularValues(), d, rank_tol);
    out.ops_a.reserve(d);
    out.ops_b.reserve(d);
    for (int a = 0; a < d; ++a) {
        out.ops_a.push_back(unvec(svd.matrixU().col(a), na, na));
        out.ops_b.push_back(unvec(svd.matrixV().col(a).conjugate(), nb, nb));
    }
    return out;
}

SchmidtDecomposition schmidt_observables(const BipartiteState& s, double rank_tol) {
    const double herm = (s.rho() - s.rho().adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-9)
        throw std::invalid_argument("schmidt_observables: state is not Hermitian within tolerance");

    const OperatorBasis ga = gell_mann_basis(s.na());
    const OperatorBasis gb = gell_mann_basis(s.nb());
    const int da = s.na() * s.na();
    const int db = s.nb() * s.nb();

    // Hermitian bases + Hermitian state give a real coefficient matrix.
    RealMatrix t(da, db);
    for (int a = 0; a < da; ++a)
        for (int b = 0; b < db; ++b)
            t(a, b) = hs_inner(kron(ga.elements[a], gb.elements[b]), s.rho()).real();

    Eigen::JacobiSVD<RealMatrix> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw NumericError("schmidt_observables: SVD did not converge");

    const int d = std::min(da, db);
    SchmidtDecomposition out;
    out.spectrum = spectrum_from_values(svd.singularValues(), d, rank_tol);
    out.ops_a.reserve(d);
    out.ops_b.reserve(d);
    for (int c = 0; c < d; ++c) {
        Matrix ea = Matrix::Zero(s.na(), s.na());
        for (int a = 0; a < da; ++a) ea += svd.matrixU()(a, c) * ga.elements[a];
        Matrix eb = Matrix::Zero(s.nb(), s.nb());
        for (int b = 0; b < db; ++b) eb += svd.matrixV()(b, c) * gb.elements[b];
        out.ops_a.push_back(std::move(ea));
        out.ops_b.push_back(std::move(eb));
    }
    return out;
}

double ccn(const Matrix& x, int na, int nb) { return trace_norm(realign(x, na, nb)); }

double ccn(const BipartiteState& s) { return ccn(s.rho(), s.na(), s.nb()); }

SymmetricPolynomials symmetric_polynomials(const SchmidtSpectrum& sp) {
    const int d = int(sp.coeffs.size());
    // Incremental recursion e_l += mu * e_{l-1}, descending l; better
    // conditioned than determinant expansion for near-zero coefficients.
    RealVector e = RealVector::Zero(d + 1);
    e(0) = 1.0;
    for (int a = 0; a < d; ++a) {
        const double mu = sp.coeffs(a);
        for (int l = std::min(a + 1, d); l >= 1; --l) e(l) += mu * e(l - 1);
    }
    return {e.tail(d)};
}

bool schmidt_equivalent(const BipartiteState& s1, const BipartiteState& s2, double tol) {
    if (s1.na() != s2.na() || s1.nb() != s2.nb())
        throw std::invalid_argument("schmidt_equivalent: dimension mismatch");
    const SchmidtSpectrum a = schmidt_spectrum(s1);
    const SchmidtSpectrum b = schmidt_spectrum(s2);
    return (a.coeffs - b.coeffs).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace scope
