#include "scope/channels.hpp"

#include "scope/schmidt.hpp"
#include "scope/states.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>

namespace scope {

QuantumChannel QuantumChannel::from_kraus(std::vector<Matrix> kraus, double tol) {
    if (kraus.empty()) throw std::invalid_argument("QuantumChannel: empty Kraus list");
    const Eigen::Index out = kraus.front().rows();
    const Eigen::Index in = kraus.front().cols();
    for (const Matrix& k : kraus)
        if (k.rows() != out || k.cols() != in)
            throw std::invalid_argument("QuantumChannel: inconsistent Kraus shapes");

    Matrix sum = Matrix::Zero(in, in);
    for (const Matrix& k : kraus) sum += k.adjoint() * k;
    const double deviation = (sum - Matrix::Identity(in, in)).cwiseAbs().maxCoeff();
    if (deviation > tol)
        throw KrausValidationError(
            "QuantumChannel: Kraus completeness violated (deviation " + std::to_string(deviation) + ")",
            deviation);
    return QuantumChannel(std::move(kraus), int(in), int(out));
}

Matrix apply_channel(const QuantumChannel& ch, const Matrix& sigma) {
    if (sigma.rows() != ch.in_dim() || sigma.cols() != ch.in_dim())
        throw std::invalid_argument("apply_channel: operand dimension mismatch");
    Matrix out = Matrix::Zero(ch.out_dim(), ch.out_dim());
    for (const Matrix& k : ch.kraus()) out += k * sigma * k.adjoint();
    return out;
}

BipartiteState choi_state(const QuantumChannel& ch, const Tolerances& tols) {
    const int na = ch.out_dim();
    const int nb = ch.in_dim();
    const Eigen::Index d = Eigen::Index(na) * nb;
    const double scale = 1.0 / std::sqrt(double(nb));

    Matrix rho = Matrix::Zero(d, d);
    for (const Matrix& k : ch.kraus()) {
        // w = (K (x) I)|psi>, w[i*nb + a] = K(i,a)/sqrt(nb)
        Vector w(d);
        for (int i = 0; i < na; ++i)
            for (int a = 0; a < nb; ++a) w(i * nb + a) = k(i, a) * scale;
        rho += w * w.adjoint();
    }
    return validate_density(rho, na, nb, tols);
}

ChannelCoeffMatrix channel_coeff_matrix(const QuantumChannel& ch, const OperatorBasis& ba,
                                        const OperatorBasis& bb) {
    if (ba.dim != ch.out_dim() || bb.dim != ch.in_dim())
        throw std::invalid_argument("channel_coeff_matrix: basis dims do not match channel");
    const int da = ba.dim * ba.dim;
    const int db = bb.dim * bb.dim;
    Matrix entries(da, db);
    for (int al = 0; al < db; ++al) {
        const Matrix mapped = apply_channel(ch, bb.elements[al].adjoint());
        for (int a = 0; a < da; ++a) entries(a, al) = hs_inner(ba.elements[a], mapped);
    }
    return {std::move(entries), ba.name, bb.name};
}

CriterionReport eb_check(const QuantumChannel& ch, int l, bool use_rank, double rank_tol,
                         double decision_tol) {
    const int na = ch.out_dim();
    const int nb = ch.in_dim();
    const int d = std::min(na * na, nb * nb);
    if (l < 1 || l > d) throw std::invalid_argument("eb_check: l out of range 1..d");

    const ChannelCoeffMatrix e = channel_coeff_matrix(ch, matrix_unit_basis(na), matrix_unit_basis(nb));
    const SchmidtSpectrum sp = spectrum_from_values(singular_values(e.entries), d, rank_tol);
    const SymmetricPolynomials m = symmetric_polynomials(sp);
    const double lhs = m.values(l - 1);
    const int r = sp.rank;

    auto binom = [](int n, int k) {
        double v = 1.0;
        for (int i = 1; i <= k; ++i) v = v * double(n - k + i) / double(i);
        return k >= 0 && k <= n ? v : 0.0;
    };
    const double bound_rank = (l <= r) ? binom(r, l) * std::pow(double(nb) / r, l) : 0.0;
    const double bound_naive = binom(d, l) * std::pow(double(nb) / d, l);
    const double bound = use_rank ? bound_rank : bound_naive;

    bool detected = lhs > bound + decision_tol;
    // same rank-misjudgment guard as the state-side check, scaled by N_B^l
    if (use_rank && l > r) detected = detected && lhs > rank_tol * d * std::pow(double(nb), l);

    CriterionReport rep;
    rep.criterion_id = "eb";
    rep.lhs = lhs;
    rep.bound = bound;
    rep.margin = lhs - bound;
    rep.detected = detected;
    rep.verdict = detected ? "NotEB" : "Inconclusive";
    rep.params = {{"l", double(l)},
                  {"use_rank", use_rank ? 1.0 : 0.0},
                  {"rank", double(r)},
                  {"in_dim", double(nb)},
                  {"bound_rank", bound_rank},
                  {"bound_naive", bound_naive}};
    return rep;
}

QuantumChannel depolarizing_channel(int n, double p) {
    if (n < 2) throw std::invalid_argument("depolarizing_channel: n must be >= 2");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing_channel: p must be in [0,1]");

    // Weyl operators U_{ab} = X^a Z^b; averaging over all n^2 of them fully
    // depolarizes, so K_0 = sqrt(1 - p + p/n^2) I plus sqrt(p)/n U_{ab}
    // for (a,b) != (0,0) realizes (1-p) sigma + p tr(sigma) I/n.
    std::vector<Matrix> kraus;
    kraus.reserve(static_cast<std::size_t>(n) * n);
    kraus.push_back(std::sqrt(1.0 - p + p / double(n) / double(n)) * Matrix::Identity(n, n));
    const double w = std::sqrt(p) / double(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == 0 && b == 0) continue;
            Matrix u = Matrix::Zero(n, n);
            for (int j = 0; j < n; ++j) {
                const double angle = 2.0 * std::numbers::pi * b * j / n;
                u((j + a) % n, j) = Complex(std::cos(angle), std::sin(angle));
            }
            kraus.push_back(w * u);
        }
    return QuantumChannel::from_kraus(std::move(kraus), 1e-9);
}

QuantumChannel identity_channel(int n) {
    if (n < 2) throw std::invalid_argument("identity_channel: n must be >= 2");
    return QuantumChannel::from_kraus({Matrix::Identity(n, n)}, 1e-9);
}

QuantumChannel random_channel(int out_dim, int in_dim, int kraus_count, std::uint64_t seed) {
    if (out_dim < 2 || in_dim < 2)
        throw std::invalid_argument("random_channel: dims must be >= 2");
    if (kraus_count < 1 || kraus_count * out_dim < in_dim)
        throw std::invalid_argument("random_channel: kraus_count*out_dim must cover in_dim");

    Rng rng(seed);
    const int rows = kraus_count * out_dim;
    const Matrix g = random_gaussian_matrix(rows, in_dim, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(rows, in_dim);
    for (int j = 0; j < in_dim; ++j) {
        const Complex r = (q.col(j).adjoint() * g.col(j))(0);
        const double m = std::abs(r);
        if (m > 0.0) q.col(j) *= r / m;
    }

    std::vector<Matrix> kraus;
    kraus.reserve(kraus_count);
    for (int i = 0; i < kraus_count; ++i)
        kraus.push_back(q.block(Eigen::Index(i) * out_dim, 0, out_dim, in_dim));
    return QuantumChannel::from_kraus(std::move(kraus), 1e-9);
}

}  // namespace scope
