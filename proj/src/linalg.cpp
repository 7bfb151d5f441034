#include "scope/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <sstream>

namespace scope {

namespace {

bool all_finite(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
                return false;
    return true;
}

std::string format_violations(const std::vector<DensityViolation>& v) {
    std::ostringstream os;
    os << "density validation failed:";
    for (const auto& x : v) os << " " << x.invariant << " (magnitude " << x.magnitude << ")";
    return os.str();
}

}  // namespace

DensityValidationError::DensityValidationError(std::vector<DensityViolation> violations)
    : std::runtime_error(format_violations(violations)), violations_(std::move(violations)) {}

BipartiteState BipartiteState::trusted(Matrix rho, int na, int nb) {
    if (na < 2 || nb < 2) throw std::invalid_argument("BipartiteState: local dimensions must be >= 2");
    if (rho.rows() != rho.cols() || rho.rows() != Eigen::Index(na) * nb)
        throw std::invalid_argument("BipartiteState: matrix size does not match na*nb");
    return BipartiteState(std::move(rho), na, nb);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const long long rows = static_cast<long long>(a.rows()) * b.rows();
    const long long cols = static_cast<long long>(a.cols()) * b.cols();
    if (rows > (1 << 24) || cols > (1 << 24))
        throw std::invalid_argument("kron: result dimensions overflow supported size");
    Matrix out(rows, cols);
    out = Eigen::kroneckerProduct(a, b);
    return out;
}

Complex hs_inner(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("hs_inner: shape mismatch");
    return (a.adjoint() * b).trace();
}

double hs_norm(const Matrix& a) { return a.norm(); }

RealVector singular_values(const Matrix& a) {
    Eigen::JacobiSVD<Matrix> svd(a);
    if (svd.info() != Eigen::Success)
        throw NumericError("singular_values: SVD did not converge for " + std::to_string(a.rows()) +
                           "x" + std::to_string(a.cols()) + " matrix");
    return svd.singularValues();
}

double trace_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    return singular_values(a).sum();
}

Matrix partial_trace(const Matrix& rho, int na, int nb, Subsystem keep) {
    if (na < 1 || nb < 1) throw std::invalid_argument("partial_trace: dims must be positive");
    const Eigen::Index n = Eigen::Index(na) * nb;
    if (rho.rows() != n || rho.cols() != n)
        throw std::invalid_argument("partial_trace: matrix size does not match na*nb");
    if (keep == Subsystem::A) {
        Matrix out = Matrix::Zero(na, na);
        for (int i = 0; i < na; ++i)
            for (int k = 0; k < na; ++k) {
                Complex sum = 0.0;
                for (int j = 0; j < nb; ++j) sum += rho(i * nb + j, k * nb + j);
                out(i, k) = sum;
            }
        return out;
    }
    Matrix out = Matrix::Zero(nb, nb);
    for (int j = 0; j < nb; ++j)
        for (int l = 0; l < nb; ++l) {
            Complex sum = 0.0;
            for (int i = 0; i < na; ++i) sum += rho(i * nb + j, i * nb + l);
            out(j, l) = sum;
        }
    return out;
}

Matrix partial_trace(const BipartiteState& s, Subsystem keep) {
    return partial_trace(s.rho(), s.na(), s.nb(), keep);
}

Vector vec(const Matrix& a) {
    Vector v(a.size());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
    return v;
}

Matrix unvec(const Vector& v, int rows, int cols) {
    if (v.size() != Eigen::Index(rows) * cols)
        throw std::invalid_argument("unvec: length mismatch");
    Matrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = v(Eigen::Index(i) * cols + j);
    return a;
}

double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

BipartiteState validate_density(const Matrix& m, int na, int nb, const Tolerances& tols) {
    if (na < 2 || nb < 2) throw std::invalid_argument("validate_density: local dimensions must be >= 2");
    const Eigen::Index n = Eigen::Index(na) * nb;
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument("validate_density: matrix size does not match na*nb");
    if (!all_finite(m)) throw std::invalid_argument("validate_density: matrix has non-finite entries");

    std::vector<DensityViolation> violations;

    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tols.hermiticity) violations.push_back({"NotHermitian", herm});

    const double trace_dev = std::abs(m.trace() - Complex(1.0));
    if (trace_dev > tols.trace) violations.push_back({"TraceNotOne", trace_dev});

    Matrix herm_part = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm_part);
    if (es.info() != Eigen::Success)
        throw NumericError("validate_density: eigensolver did not converge");
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -tols.positivity) violations.push_back({"NotPositive", -min_eig});

    if (!violations.empty()) throw DensityValidationError(std::move(violations));
    return BipartiteState(m, na, nb);
}

}  // namespace scope
