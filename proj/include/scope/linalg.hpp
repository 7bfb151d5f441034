// linalg.hpp — dense complex-matrix primitives: Kronecker products, the
// Hilbert-Schmidt inner product, SVD-based norms, partial traces, row-major
// vectorization and density-operator validation.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace scope {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// --------------------------- errors ----------------------------------------

// SVD / eigensolver did not converge, or a downstream quantity is not finite.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DensityViolation {
    std::string invariant;  // "NotHermitian" | "TraceNotOne" | "NotPositive"
    double magnitude;
};

// Carries every violated density invariant with its measured magnitude.
class DensityValidationError : public std::runtime_error {
public:
    explicit DensityValidationError(std::vector<DensityViolation> violations);
    const std::vector<DensityViolation>& violations() const { return violations_; }

private:
    std::vector<DensityViolation> violations_;
};

// --------------------------- tolerances ------------------------------------

struct Tolerances {
    double hermiticity = 1e-9;
    double trace = 1e-9;
    double positivity = 1e-9;
};

// --------------------------- bipartite state -------------------------------

// Validated density operator on H_A (x) H_B with recorded local dimensions.
// Composite index convention, fixed project-wide: the basis vector
// |i>_A (x) |j>_B maps to row index i*nb + j.
class BipartiteState {
public:
    const Matrix& rho() const { return rho_; }
    int na() const { return na_; }
    int nb() const { return nb_; }
    int dim() const { return na_ * nb_; }

    // Wraps a matrix without running the density checks (caller's risk).
    static BipartiteState trusted(Matrix rho, int na, int nb);

private:
    BipartiteState(Matrix rho, int na, int nb)
        : rho_(std::move(rho)), na_(na), nb_(nb) {}
    friend BipartiteState validate_density(const Matrix&, int, int, const Tolerances&);

    Matrix rho_;
    int na_;
    int nb_;
};

enum class Subsystem { A, B };

// --------------------------- operations ------------------------------------

// kron(a,b)[(i*b.rows+k),(j*b.cols+l)] = a(i,j)*b(k,l)
Matrix kron(const Matrix& a, const Matrix& b);

// <a,b>_HS = tr(a^dag b)
Complex hs_inner(const Matrix& a, const Matrix& b);
double hs_norm(const Matrix& a);

// Non-increasing singular values, length min(rows, cols).
RealVector singular_values(const Matrix& a);

// Nuclear norm: sum of singular values.
double trace_norm(const Matrix& a);

Matrix partial_trace(const Matrix& rho, int na, int nb, Subsystem keep);
Matrix partial_trace(const BipartiteState& s, Subsystem keep);

// Row-major vectorization: vec(a)[i*cols + j] = a(i,j); unvec inverts it.
Vector vec(const Matrix& a);
Matrix unvec(const Vector& v, int rows, int cols);

double purity(const Matrix& rho);  // tr(rho^2) for Hermitian rho

// Checks hermiticity, unit trace and positivity against the tolerances and
// returns a validated state; throws DensityValidationError listing every
// violated invariant otherwise.
BipartiteState validate_density(const Matrix& m, int na, int nb,
                                const Tolerances& tols = {});

}  // namespace scope
