#include "scope/states.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>

namespace scope {

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
}

Matrix random_gaussian_matrix(int rows, int cols, Rng& rng) {
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
    return g;
}

Matrix random_density(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random_density: n must be >= 2");
    Rng rng(seed);
    const Matrix g = random_gaussian_matrix(n, n, rng);
    Matrix w = g * g.adjoint();
    w /= w.trace().real();
    // symmetrize away the last-ulp asymmetry of the product
    return 0.5 * (w + Matrix(w.adjoint()));
}

Matrix random_unitary(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_unitary: n must be >= 1");
    Rng rng(seed);
    const Matrix g = random_gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    // fix column phases so R has a positive real diagonal
    for (int j = 0; j < n; ++j) {
        const Complex r = (q.col(j).adjoint() * g.col(j))(0);
        const double m = std::abs(r);
        if (m > 0.0) q.col(j) *= r / m;
    }
    return q;
}

BipartiteState max_entangled(int n) {
    if (n < 2) throw std::invalid_argument("max_entangled: n must be >= 2");
    Vector psi = Vector::Zero(Eigen::Index(n) * n);
    for (int a = 0; a < n; ++a) psi(a * n + a) = 1.0 / std::sqrt(double(n));
    return validate_density(psi * psi.adjoint(), n, n);
}

BipartiteState product_state(const Matrix& ra, const Matrix& rb) {
    if (ra.rows() != ra.cols() || rb.rows() != rb.cols())
        throw std::invalid_argument("product_state: factors must be square");
    return validate_density(kron(ra, rb), int(ra.rows()), int(rb.rows()));
}

BipartiteState werner(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("werner: p must be in [0,1]");
    Vector psi_minus = Vector::Zero(4);
    psi_minus(1) = 1.0 / std::sqrt(2.0);
    psi_minus(2) = -1.0 / std::sqrt(2.0);
    const Matrix rho = p * (psi_minus * psi_minus.adjoint()) + (1.0 - p) * 0.25 * Matrix::Identity(4, 4);
    return validate_density(rho, 2, 2);
}

BipartiteState isotropic(double f, int n) {
    if (f < 0.0 || f > 1.0) throw std::invalid_argument("isotropic: f must be in [0,1]");
    if (n < 2) throw std::invalid_argument("isotropic: n must be >= 2");
    const Matrix me = max_entangled(n).rho();
    const Eigen::Index d = Eigen::Index(n) * n;
    const Matrix rho = f * me + (1.0 - f) / double(d - 1) * (Matrix::Identity(d, d) - me);
    return validate_density(rho, n, n);
}

BipartiteState random_pure(int na, int nb, std::uint64_t seed) {
    if (na < 2 || nb < 2) throw std::invalid_argument("random_pure: dims must be >= 2");
    Rng rng(seed);
    Vector psi(Eigen::Index(na) * nb);
    for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = rng.complex_gaussian();
    psi /= psi.norm();
    return validate_density(psi * psi.adjoint(), na, nb);
}

BipartiteState random_separable(int na, int nb, int terms, std::uint64_t seed) {
    if (na < 2 || nb < 2) throw std::invalid_argument("random_separable: dims must be >= 2");
    if (terms < 1) throw std::invalid_argument("random_separable: terms must be >= 1");
    Rng rng(seed);

    std::vector<double> weights(terms);
    double total = 0.0;
    for (double& w : weights) {
        w = rng.uniform();
        total += w;
    }

    const Eigen::Index d = Eigen::Index(na) * nb;
    Matrix rho = Matrix::Zero(d, d);
    for (int t = 0; t < terms; ++t) {
        const Matrix ga = random_gaussian_matrix(na, na, rng);
        const Matrix gb = random_gaussian_matrix(nb, nb, rng);
        Matrix ra = ga * ga.adjoint();
        Matrix rb = gb * gb.adjoint();
        ra /= ra.trace().real();
        rb /= rb.trace().real();
        rho += (weights[t] / total) * kron(ra, rb);
    }
    rho = 0.5 * (rho + Matrix(rho.adjoint()));
    return validate_density(rho, na, nb);
}

BipartiteState random_separable(int na, int nb, std::uint64_t seed) {
    return random_separable(na, nb, 10, seed);
}

}  // namespace scope
