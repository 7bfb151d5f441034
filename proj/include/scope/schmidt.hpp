// schmidt.hpp — realignment, mixed-state Schmidt spectra and decompositions,
// the computable cross norm, elementary symmetric polynomials of the Schmidt
// coefficients, and Schmidt equivalence.

#pragma once

#include "scope/linalg.hpp"

#include <vector>

namespace scope {

inline constexpr double kDefaultRankTol = 1e-9;

// Realigned matrix R of size na^2 x nb^2:
//   R[(i*na + j), (k*nb + l)] = rho[(i*nb + k), (j*nb + l)]
// For any product A (x) B this gives the rank-one matrix vec(A) vec(B)^T.
Matrix realign(const Matrix& rho, int na, int nb);
Matrix realign(const BipartiteState& s);

// Inverse index permutation of realign.
Matrix unrealign(const Matrix& r, int na, int nb);

// Ordered Schmidt coefficients of a bipartite operator. Exactly
// d = min(na^2, nb^2) entries, non-increasing; rank counts coefficients
// above rank_tol * coeffs[0].
struct SchmidtSpectrum {
    RealVector coeffs;
    int rank = 0;
    double rank_tol = kDefaultRankTol;

    double sum() const { return coeffs.sum(); }
    double sum_squares() const { return coeffs.squaredNorm(); }
    // Rank sensitivity: boundary coefficients around the rank cutoff.
    double smallest_retained() const { return rank > 0 ? coeffs(rank - 1) : 0.0; }
    double largest_discarded() const {
        return rank < coeffs.size() ? coeffs(rank) : 0.0;
    }
};

// Builds a spectrum from raw singular values: pads/truncates to exactly d
// entries and computes the rank.
SchmidtSpectrum spectrum_from_values(const RealVector& sv, int d,
                                     double rank_tol = kDefaultRankTol);

SchmidtSpectrum schmidt_spectrum(const BipartiteState& s, double rank_tol = kDefaultRankTol);

// rho = sum_a mu_a * ops_a[a] (x) ops_b[a] with HS-orthonormal ops_a, ops_b.
struct SchmidtDecomposition {
    SchmidtSpectrum spectrum;
    std::vector<Matrix> ops_a;
    std::vector<Matrix> ops_b;
};

SchmidtDecomposition schmidt_decomposition(const BipartiteState& s,
                                           double rank_tol = kDefaultRankTol);

// Schmidt decomposition with Hermitian (observable) operator pairs, built
// from the real coefficient matrix over Hermitian local bases. Each
// coefficient is then itself measurable: mu_a = tr((E_a^A (x) E_a^B) rho).
SchmidtDecomposition schmidt_observables(const BipartiteState& s,
                                         double rank_tol = kDefaultRankTol);

// Computable cross norm: sum of the Schmidt coefficients, evaluated as the
// trace norm of the realigned matrix. Defined for any operator on the
// bipartite space, not only densities.
double ccn(const Matrix& x, int na, int nb);
double ccn(const BipartiteState& s);

// values[l-1] = M^[l], the elementary symmetric polynomial of degree l in
// the Schmidt coefficients (the coefficients of the characteristic
// polynomial of |rho~|).
struct SymmetricPolynomials {
    RealVector values;
};

SymmetricPolynomials symmetric_polynomials(const SchmidtSpectrum& sp);

// True iff both states have componentwise equal (sorted) Schmidt spectra.
bool schmidt_equivalent(const BipartiteState& s1, const BipartiteState& s2,
                        double tol = 1e-9);

}  // namespace scope
