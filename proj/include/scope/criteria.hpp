// criteria.hpp — separability criteria built on the Schmidt coefficients:
// the realignment criterion, symmetric-polynomial bounds, and the
// transformed-operator family (theta instances, the Zhang criterion, local
// filters) with its cross-norm bound.

#pragma once

#include "scope/linalg.hpp"
#include "scope/schmidt.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace scope {

// Strict-inequality band: lhs must exceed bound by more than this before a
// verdict flips to detected. Ties resolve to Inconclusive — the criteria are
// necessary conditions and a false "entangled" is the costly error.
inline constexpr double kDecisionTol = 1e-9;

struct CriterionReport {
    std::string criterion_id;
    double lhs = 0.0;
    double bound = 0.0;
    double margin = 0.0;  // lhs - bound
    bool detected = false;
    std::string verdict;  // "EntanglementDetected" | "NotEB" | "Inconclusive"
    std::map<std::string, double> params;
};

// Transform hypotheses are inconsistent with the supplied eps values.
class NegativeRadicandError : public NumericError {
public:
    using NumericError::NumericError;
};

class FilterNotContractiveError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// --------------------------- superoperators --------------------------------

// Linear or antilinear map on L(C^in_dim) -> L(C^out_dim), represented by a
// kernel acting on row-major vectorized operators. An antilinear map acts as
// X |-> kernel(conj(X)), the conjugation taken entrywise in the
// computational basis.
struct SuperOperatorSpec {
    int in_dim = 0;
    int out_dim = 0;
    Matrix kernel;  // out_dim^2 x in_dim^2
    bool antilinear = false;

    Matrix apply(const Matrix& x) const;
};

SuperOperatorSpec identity_superop(int n, Complex scale = 1.0, bool antilinear = false);

// X |-> scale * L X L^dag
SuperOperatorSpec conjugation_superop(const Matrix& l, Complex scale = 1.0,
                                      bool antilinear = false);

// n pairs of jointly linear-or-antilinear superoperators with the bounds
// eps_a, eps_b that make the transform inequality valid on separable states.
// eps values are caller-supplied and trusted; estimate_eps below gives an
// empirical sanity check.
struct TransformSpec {
    std::vector<std::pair<SuperOperatorSpec, SuperOperatorSpec>> pairs;
    double eps_a = 1.0;
    double eps_b = 1.0;

    int n() const { return int(pairs.size()); }
    bool antilinear() const { return pairs.front().first.antilinear; }

    // Validates joint (anti)linearity, consistent dimensions, eps >= 0.
    static TransformSpec make(std::vector<std::pair<SuperOperatorSpec, SuperOperatorSpec>> pairs,
                              double eps_a, double eps_b);
};

// n=1 identity pair, eps = 1: reproduces the realignment criterion.
TransformSpec identity_transform_spec(int na, int nb);

// Pairs (e^{i theta} I, e^{-i theta} I) and (-I, -I), eps = 1.
TransformSpec theta_transform_spec(int na, int nb, double theta);

// Pairs (L_A . L_A^dag, L_B . L_B^dag) and (i, -i) multiples, eps = 1; valid
// when the filters are contractive.
TransformSpec filter_transform_spec(const Matrix& la, const Matrix& lb);

// --------------------------- checks ----------------------------------------

// Realignment criterion: separable => ccn(rho) <= 1.
CriterionReport rc_check(const BipartiteState& s, double decision_tol = kDecisionTol);

// Symmetric-polynomial bound of degree l: separable =>
//   M^[l] <= C(R,l) (1/R)^l   (use_rank, 0 for l > R)
//   M^[l] <= C(d,l) (1/d)^l   (rank-free)
// The report records the rank and both bounds. In the l > R branch the
// verdict additionally requires lhs > rank_tol * d, since a misjudged rank
// would make the zero bound unsound in floating point.
CriterionReport sympoly_check(const BipartiteState& s, int l, bool use_rank,
                              double rank_tol = kDefaultRankTol,
                              double decision_tol = kDecisionTol);

// Applies the pair_index-th product superoperator of ts to a bipartite
// operator x (local dims na, nb). Equivalent to expanding x over matrix-unit
// product bases and mapping each factor; implemented as a kernel action on
// the realigned matrix.
Matrix apply_product_superop(const TransformSpec& ts, int pair_index, const Matrix& x,
                             int na, int nb);

// The transformed operator
//   (1/n) sum_k (E_k^A (x) E_k^B)(rho)
// + (1/n) sum_{k != l} (E_k^A (x) E_l^B)(rho_A (x) rho_B).
// Generally not a density operator.
Matrix e_transform(const BipartiteState& s, const TransformSpec& ts);

// Transform criterion: separable =>
//   ccn(e_transform(rho)) <= sqrt(r_A * r_B),
//   r_X = eps_X + (1/n) sum_{k<l} 2 Re < E_k^X(rho_X), E_l^X(rho_X) >_HS.
// Throws NegativeRadicandError when a radicand is below -1e-12 (violated
// hypotheses); tiny negatives are clamped to zero.
CriterionReport transform_check(const BipartiteState& s, const TransformSpec& ts,
                                double decision_tol = kDecisionTol);

// theta family, theta in [0, pi]: separable =>
//   ccn(rho - cos(theta) rho_A (x) rho_B)
//     <= sqrt((1 - cos(theta) tr rho_A^2)(1 - cos(theta) tr rho_B^2)).
CriterionReport theta_check(const BipartiteState& s, double theta,
                            double decision_tol = kDecisionTol);

// Zhang criterion: the theta = 0 member of the family,
//   ccn(rho - rho_A (x) rho_B) <= sqrt((1 - tr rho_A^2)(1 - tr rho_B^2)).
// Strictly stronger than the realignment criterion.
CriterionReport zhang_check(const BipartiteState& s, double decision_tol = kDecisionTol);

// Local-filter criterion: separable =>
//   ccn((L_A (x) L_B) rho (L_A (x) L_B)^dag) <= 1
// for contractive L_A, L_B. With normalize, each filter is rescaled by its
// largest singular value; otherwise operator norms must already be <= 1.
CriterionReport filter_check(const BipartiteState& s, const Matrix& la, const Matrix& lb,
                             bool normalize, double decision_tol = kDecisionTol);

// --------------------------- eps estimation --------------------------------

// Empirical lower bound on the eps required for one side of a transform:
// samples random pure states (the extreme points, where the convex
// functional ||E(sigma)||_HS^2 is maximized) and returns
// (1/n) sum_k max_sigma ||E_k(sigma)||_HS^2. NOT a certificate — a valid
// eps must dominate the supremum, which sampling can only approach from
// below.
struct EpsEstimate {
    double eps = 0.0;
    int samples = 0;
};

EpsEstimate estimate_eps(const std::vector<SuperOperatorSpec>& side_ops, int samples,
                         std::uint64_t seed);

}  // namespace scope
