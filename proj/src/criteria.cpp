#include "scope/criteria.hpp"

#include "scope/states.hpp"

#include <cmath>
#include <numbers>

namespace scope {

namespace {

constexpr const char* kDetected = "EntanglementDetected";
constexpr const char* kInconclusive = "Inconclusive";

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

CriterionReport make_report(std::string id, double lhs, double bound, bool detected,
                            std::map<std::string, double> params) {
    CriterionReport rep;
    rep.criterion_id = std::move(id);
    rep.lhs = lhs;
    rep.bound = bound;
    rep.margin = lhs - bound;
    rep.detected = detected;
    rep.verdict = detected ? kDetected : kInconclusive;
    rep.params = std::move(params);
    return rep;
}

}  // namespace

// --------------------------- superoperators --------------------------------

Matrix SuperOperatorSpec::apply(const Matrix& x) const {
    if (x.rows() != in_dim || x.cols() != in_dim)
        throw std::invalid_argument("SuperOperatorSpec::apply: operand dimension mismatch");
    const Matrix& operand = antilinear ? Matrix(x.conjugate()) : x;
    return unvec(kernel * vec(operand), out_dim, out_dim);
}

SuperOperatorSpec identity_superop(int n, Complex scale, bool antilinear) {
    if (n < 1) throw std::invalid_argument("identity_superop: n must be >= 1");
    return {n, n, scale * Matrix::Identity(Eigen::Index(n) * n, Eigen::Index(n) * n), antilinear};
}

SuperOperatorSpec conjugation_superop(const Matrix& l, Complex scale, bool antilinear) {
    if (l.rows() != l.cols()) throw std::invalid_argument("conjugation_superop: L must be square");
    const int n = int(l.rows());
    // row-major vec: vec(L X L^dag) = (L (x) conj(L)) vec(X)
    return {n, n, scale * kron(l, l.conjugate()), antilinear};
}

TransformSpec TransformSpec::make(
    std::vector<std::pair<SuperOperatorSpec, SuperOperatorSpec>> pairs, double eps_a,
    double eps_b) {
    if (pairs.empty()) throw std::invalid_argument("TransformSpec: at least one pair required");
    if (eps_a < 0.0 || eps_b < 0.0)
        throw std::invalid_argument("TransformSpec: eps values must be non-negative");
    const bool anti = pairs.front().first.antilinear;
    for (const auto& [ea, eb] : pairs) {
        if (ea.antilinear != anti || eb.antilinear != anti)
            throw std::invalid_argument("TransformSpec: superoperators must be jointly linear or antilinear");
        if (ea.in_dim != pairs.front().first.in_dim || ea.out_dim != pairs.front().first.out_dim ||
            eb.in_dim != pairs.front().second.in_dim || eb.out_dim != pairs.front().second.out_dim)
            throw std::invalid_argument("TransformSpec: inconsistent superoperator dimensions");
        if (ea.kernel.rows() != Eigen::Index(ea.out_dim) * ea.out_dim ||
            ea.kernel.cols() != Eigen::Index(ea.in_dim) * ea.in_dim ||
            eb.kernel.rows() != Eigen::Index(eb.out_dim) * eb.out_dim ||
            eb.kernel.cols() != Eigen::Index(eb.in_dim) * eb.in_dim)
            throw std::invalid_argument("TransformSpec: kernel shape does not match declared dims");
    }
    TransformSpec ts;
    ts.pairs = std::move(pairs);
    ts.eps_a = eps_a;
    ts.eps_b = eps_b;
    return ts;
}

TransformSpec identity_transform_spec(int na, int nb) {
    std::vector<std::pair<SuperOperatorSpec, SuperOperatorSpec>> pairs;
    pairs.emplace_back(identity_superop(na), identity_superop(nb));
    return TransformSpec::make(std::move(pairs), 1.0, 1.0);
}

TransformSpec theta_transform_spec(int na, int nb, double theta) {
    if (theta < 0.0 || theta > std::numbers::pi)
        throw std::invalid_argument("theta_transform_spec: theta must be in [0, pi]");
    const Complex phase(std::cos(theta), std::sin(theta));
    std::vector<std::pair<SuperOperatorSpec, SuperOperatorSpec>> pairs;
    pairs.emplace_back(identity_superop(na, phase), identity_superop(nb, std::conj(phase)));
    pairs.emplace_back(identity_superop(na, -1.0), identity_superop(nb, -1.0));
    return TransformSpec::make(std::move(pairs), 1.0, 1.0);
}

TransformSpec filter_transform_spec(const Matrix& la, const Matrix& lb) {
    const Complex i(0.0, 1.0);
    std::vector<std::pair<SuperOperatorSpec, SuperOperatorSpec>> pairs;
    pairs.emplace_back(conjugation_superop(la), conjugation_superop(lb));
    pairs.emplace_back(conjugation_superop(la, i), conjugation_superop(lb, -i));
    return TransformSpec::make(std::move(pairs), 1.0, 1.0);
}

// --------------------------- realignment criterion -------------------------

CriterionReport rc_check(const BipartiteState& s, double decision_tol) {
    const double lhs = ccn(s);
    return make_report("rc", lhs, 1.0, lhs > 1.0 + decision_tol, {});
}

// --------------------------- symmetric polynomials -------------------------

CriterionReport sympoly_check(const BipartiteState& s, int l, bool use_rank, double rank_tol,
                              double decision_tol) {
    const int d = std::min(s.na() * s.na(), s.nb() * s.nb());
    if (l < 1 || l > d) throw std::invalid_argument("sympoly_check: l out of range 1..d");

    const SchmidtSpectrum sp = schmidt_spectrum(s, rank_tol);
    const SymmetricPolynomials m = symmetric_polynomials(sp);
    const double lhs = m.values(l - 1);
    const int r = sp.rank;

    const double bound_rank =
        (l <= r) ? binom(r, l) * std::pow(1.0 / double(r), l) : 0.0;
    const double bound_naive = binom(d, l) * std::pow(1.0 / double(d), l);
    const double bound = use_rank ? bound_rank : bound_naive;

    bool detected = lhs > bound + decision_tol;
    if (use_rank && l > r) detected = detected && lhs > rank_tol * double(d);

    return make_report("sympoly", lhs, bound, detected,
                       {{"l", double(l)},
                        {"use_rank", use_rank ? 1.0 : 0.0},
                        {"rank", double(r)},
                        {"bound_rank", bound_rank},
                        {"bound_naive", bound_naive},
                        {"smallest_retained", sp.smallest_retained()},
                        {"largest_discarded", sp.largest_discarded()}});
}

// --------------------------- transformed operators -------------------------

Matrix apply_product_superop(const TransformSpec& ts, int pair_index, const Matrix& x, int na,
                             int nb) {
    if (pair_index < 0 || pair_index >= ts.n())
        throw std::invalid_argument("apply_product_superop: pair index out of range");
    const auto& [ea, eb] = ts.pairs[pair_index];
    if (ea.in_dim != na || eb.in_dim != nb)
        throw std::invalid_argument("apply_product_superop: operand dims do not match superoperators");
    // Expanding x over matrix-unit product bases and mapping each factor is
    // the same as acting with the kernels on the realigned matrix:
    // realign(y) = kernel_A * realign(x) * kernel_B^T.
    const Matrix& operand = ts.antilinear() ? Matrix(x.conjugate()) : x;
    const Matrix r = ea.kernel * realign(operand, na, nb) * eb.kernel.transpose();
    return unrealign(r, ea.out_dim, eb.out_dim);
}

Matrix e_transform(const BipartiteState& s, const TransformSpec& ts) {
    const int na = s.na();
    const int nb = s.nb();
    if (ts.pairs.front().first.in_dim != na || ts.pairs.front().second.in_dim != nb)
        throw std::invalid_argument("e_transform: state dims do not match transform");

    const Matrix rho_a = partial_trace(s, Subsystem::A);
    const Matrix rho_b = partial_trace(s, Subsystem::B);
    const int n = ts.n();
    const int oa = ts.pairs.front().first.out_dim;
    const int ob = ts.pairs.front().second.out_dim;

    Matrix diag_part = Matrix::Zero(Eigen::Index(oa) * ob, Eigen::Index(oa) * ob);
    std::vector<Matrix> a_parts, b_parts;
    a_parts.reserve(n);
    b_parts.reserve(n);
    for (int k = 0; k < n; ++k) {
        diag_part += apply_product_superop(ts, k, s.rho(), na, nb);
        a_parts.push_back(ts.pairs[k].first.apply(rho_a));
        b_parts.push_back(ts.pairs[k].second.apply(rho_b));
    }

    // sum_{k != l} a_k (x) b_l = (sum a_k) (x) (sum b_l) - sum_k a_k (x) b_k
    Matrix a_sum = Matrix::Zero(oa, oa);
    Matrix b_sum = Matrix::Zero(ob, ob);
    for (int k = 0; k < n; ++k) {
        a_sum += a_parts[k];
        b_sum += b_parts[k];
    }
    Matrix cross = kron(a_sum, b_sum);
    for (int k = 0; k < n; ++k) cross -= kron(a_parts[k], b_parts[k]);

    return (diag_part + cross) / double(n);
}

namespace {

// eps_X + (1/n) sum_{k<l} 2 Re <E_k(rho_X), E_l(rho_X)>
double transform_radicand(const std::vector<Matrix>& parts, double eps, int n) {
    double cross = 0.0;
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) cross += 2.0 * hs_inner(parts[k], parts[l]).real();
    return eps + cross / double(n);
}

}  // namespace

CriterionReport transform_check(const BipartiteState& s, const TransformSpec& ts,
                                double decision_tol) {
    const int n = ts.n();
    const Matrix rho_a = partial_trace(s, Subsystem::A);
    const Matrix rho_b = partial_trace(s, Subsystem::B);

    std::vector<Matrix> a_parts, b_parts;
    a_parts.reserve(n);
    b_parts.reserve(n);
    for (int k = 0; k < n; ++k) {
        a_parts.push_back(ts.pairs[k].first.apply(rho_a));
        b_parts.push_back(ts.pairs[k].second.apply(rho_b));
    }

    double rad_a = transform_radicand(a_parts, ts.eps_a, n);
    double rad_b = transform_radicand(b_parts, ts.eps_b, n);
    for (double* rad : {&rad_a, &rad_b}) {
        if (*rad < -1e-12)
            throw NegativeRadicandError(
                "transform_check: negative radicand — hypotheses inconsistent with supplied eps");
        if (*rad < 0.0) *rad = 0.0;
    }
    const double bound = std::sqrt(rad_a * rad_b);

    const Matrix transformed = e_transform(s, ts);
    const int oa = ts.pairs.front().first.out_dim;
    const int ob = ts.pairs.front().second.out_dim;
    const double lhs = ccn(transformed, oa, ob);

    return make_report("transform", lhs, bound, lhs > bound + decision_tol,
                       {{"n", double(n)},
                        {"eps_a", ts.eps_a},
                        {"eps_b", ts.eps_b},
                        {"antilinear", ts.antilinear() ? 1.0 : 0.0}});
}

CriterionReport theta_check(const BipartiteState& s, double theta, double decision_tol) {
    if (theta < 0.0 || theta > std::numbers::pi)
        throw std::invalid_argument("theta_check: theta must be in [0, pi]");
    const double c = std::cos(theta);
    const Matrix rho_a = partial_trace(s, Subsystem::A);
    const Matrix rho_b = partial_trace(s, Subsystem::B);

    const double lhs = ccn(Matrix(s.rho() - c * kron(rho_a, rho_b)), s.na(), s.nb());
    const double bound = std::sqrt((1.0 - c * purity(rho_a)) * (1.0 - c * purity(rho_b)));

    CriterionReport rep = make_report("theta", lhs, bound, lhs > bound + decision_tol,
                                      {{"theta", theta}});
    return rep;
}

CriterionReport zhang_check(const BipartiteState& s, double decision_tol) {
    CriterionReport rep = theta_check(s, 0.0, decision_tol);
    rep.criterion_id = "zhang";
    return rep;
}

CriterionReport filter_check(const BipartiteState& s, const Matrix& la, const Matrix& lb,
                             bool normalize, double decision_tol) {
    if (la.rows() != s.na() || la.cols() != s.na() || lb.rows() != s.nb() || lb.cols() != s.nb())
        throw std::invalid_argument("filter_check: filter dims do not match state");

    const double norm_a = singular_values(la).maxCoeff();
    const double norm_b = singular_values(lb).maxCoeff();
    Matrix fa = la;
    Matrix fb = lb;
    if (normalize) {
        if (norm_a == 0.0 || norm_b == 0.0)
            throw std::invalid_argument("filter_check: cannot normalize a zero filter");
        fa /= norm_a;
        fb /= norm_b;
    } else if (norm_a > 1.0 + 1e-12 || norm_b > 1.0 + 1e-12) {
        throw FilterNotContractiveError("filter_check: filter operator norm exceeds 1");
    }

    const Matrix f = kron(fa, fb);
    const double lhs = ccn(Matrix(f * s.rho() * f.adjoint()), s.na(), s.nb());

    return make_report("filter", lhs, 1.0, lhs > 1.0 + decision_tol,
                       {{"norm_a", norm_a}, {"norm_b", norm_b}});
}

// --------------------------- eps estimation --------------------------------

EpsEstimate estimate_eps(const std::vector<SuperOperatorSpec>& side_ops, int samples,
                         std::uint64_t seed) {
    if (side_ops.empty()) throw std::invalid_argument("estimate_eps: no superoperators");
    if (samples < 1) throw std::invalid_argument("estimate_eps: samples must be >= 1");
    const int n = int(side_ops.size());
    const int dim = side_ops.front().in_dim;
    for (const auto& op : side_ops)
        if (op.in_dim != dim) throw std::invalid_argument("estimate_eps: mixed input dims");

    Rng rng(seed);
    double total = 0.0;
    for (const auto& op : side_ops) {
        double best = 0.0;
        for (int t = 0; t < samples; ++t) {
            Vector v(dim);
            for (int i = 0; i < dim; ++i) v(i) = rng.complex_gaussian();
            v /= v.norm();
            const Matrix sigma = v * v.adjoint();
            const double val = op.apply(sigma).squaredNorm();
            if (val > best) best = val;
        }
        total += best;
    }
    return {total / double(n), samples};
}

}  // namespace scope
