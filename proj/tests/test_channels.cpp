#include "scope/channels.hpp"

#include "scope/schmidt.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace scope;
using namespace scope::test;

TEST_CASE("apply_channel basics") {
    const Matrix sigma = random_density(2, 5);
    CHECK(max_abs_diff(apply_channel(identity_channel(2), sigma), sigma) == 0.0);

    const Matrix depolarized = apply_channel(depolarizing_channel(2, 1.0), sigma);
    CHECK(max_abs_diff(depolarized, Matrix(0.5 * identity(2))) < 1e-12);

    const QuantumChannel ch = random_channel(2, 2, 3, 6);
    const Matrix out = apply_channel(ch, sigma);
    CHECK(std::abs(out.trace() - sigma.trace()) < 1e-10);

    CHECK_THROWS_AS(apply_channel(ch, identity(3)), std::invalid_argument);
}

TEST_CASE("choi_state of named channels") {
    CHECK(max_abs_diff(choi_state(identity_channel(2)).rho(), max_entangled(2).rho()) < 1e-12);

    // identity-channel choi spectrum is {1/n} repeated n^2 times
    for (int n : {2, 3}) {
        const SchmidtSpectrum sp = schmidt_spectrum(choi_state(identity_channel(n)));
        REQUIRE(sp.coeffs.size() == n * n);
        for (int i = 0; i < n * n; ++i)
            CHECK(sp.coeffs(i) == doctest::Approx(1.0 / n).epsilon(1e-12));
    }

    // (E (x) I) applied to the 4x4 projector entry by entry
    CHECK(max_abs_diff(choi_state(depolarizing_channel(2, 1.0)).rho(),
                       Matrix(0.25 * identity(4))) < 1e-12);

    for (std::uint64_t seed : {7, 8, 9}) {
        const QuantumChannel ch = random_channel(2, 3, 2, seed);
        const BipartiteState choi = choi_state(ch);
        CHECK(choi.na() == 2);
        CHECK(choi.nb() == 3);
        CHECK(max_abs_diff(partial_trace(choi, Subsystem::B), Matrix(identity(3) / 3.0)) < 1e-10);
    }
}

TEST_CASE("channel coefficient matrix of the identity channel is the swap") {
    const ChannelCoeffMatrix e =
        channel_coeff_matrix(identity_channel(2), matrix_unit_basis(2), matrix_unit_basis(2));
    // E~[(i,j),(k,l)] = tr(E_ji E_lk) = d_il d_jk
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    const double expected = (i == l && j == k) ? 1.0 : 0.0;
                    CHECK(std::abs(e.entries(i * 2 + j, k * 2 + l) - Complex(expected)) < 1e-14);
                }
    const RealVector sv = singular_values(e.entries);
    for (int i = 0; i < 4; ++i) CHECK(sv(i) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fully depolarizing coefficient matrix is rank one") {
    const ChannelCoeffMatrix e =
        channel_coeff_matrix(depolarizing_channel(2, 1.0), matrix_unit_basis(2), matrix_unit_basis(2));
    // E~ = (1/2) vec(I) vec(I)^T
    const Vector u = vec(identity(2));
    CHECK(max_abs_diff(e.entries, Matrix(0.5 * u * u.transpose())) < 1e-12);
    const RealVector sv = singular_values(e.entries);
    CHECK(sv(0) == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 1; i < 4; ++i) CHECK(sv(i) < 1e-12);
}

TEST_CASE("channel-state duality: E~/N_B singular values equal the Choi spectrum") {
    for (std::uint64_t seed = 20; seed < 30; ++seed) {
        const int n = seed % 2 == 0 ? 2 : 3;
        const QuantumChannel ch = random_channel(n, n, 1 + int(seed % 4), seed);
        const ChannelCoeffMatrix e =
            channel_coeff_matrix(ch, matrix_unit_basis(n), matrix_unit_basis(n));
        const RealVector sv = singular_values(Matrix(e.entries / double(n)));
        const SchmidtSpectrum sp = schmidt_spectrum(choi_state(ch));
        REQUIRE(sv.size() == sp.coeffs.size());
        for (int i = 0; i < sv.size(); ++i) CHECK(std::abs(sv(i) - sp.coeffs(i)) < 1e-9);
    }
}

TEST_CASE("entrywise choi reconstruction needs the transpose on the B factor") {
    const QuantumChannel ch = random_channel(2, 2, 3, 31);
    const OperatorBasis b = matrix_unit_basis(2);
    const ChannelCoeffMatrix e = channel_coeff_matrix(ch, b, b);
    Matrix plain = Matrix::Zero(4, 4);
    Matrix transposed = Matrix::Zero(4, 4);
    for (int a = 0; a < 4; ++a)
        for (int al = 0; al < 4; ++al) {
            plain += 0.5 * e.entries(a, al) * kron(b.elements[a], b.elements[al]);
            transposed +=
                0.5 * e.entries(a, al) * kron(b.elements[a], Matrix(b.elements[al].transpose()));
        }
    const Matrix choi = choi_state(ch).rho();
    CHECK(max_abs_diff(transposed, choi) < 1e-12);
    CHECK(max_abs_diff(plain, choi) > 1e-3);  // the conventions genuinely differ
}

TEST_CASE("eb_check goldens") {
    SUBCASE("identity qubit channel fails the determinant bound") {
        const CriterionReport rep = eb_check(identity_channel(2), 4, false);
        CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(rep.bound == doctest::Approx(1.0 / 16).epsilon(1e-12));
        CHECK(rep.detected);
        CHECK(rep.verdict == "NotEB");
    }
    SUBCASE("fully depolarizing qubit channel is inconclusive at l=1") {
        const CriterionReport rep = eb_check(depolarizing_channel(2, 1.0), 1, true);
        CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(rep.bound == doctest::Approx(2.0).epsilon(1e-12));  // C(1,1) * (2/1)^1
        CHECK_FALSE(rep.detected);
        CHECK(rep.verdict == "Inconclusive");
        CHECK(rep.params.at("rank") == 1.0);
    }
    SUBCASE("l out of range") {
        CHECK_THROWS_AS(eb_check(identity_channel(2), 0, false), std::invalid_argument);
        CHECK_THROWS_AS(eb_check(identity_channel(2), 5, false), std::invalid_argument);
    }
}

TEST_CASE("eb_check verdicts equal sympoly_check verdicts on the choi state") {
    for (std::uint64_t seed = 40; seed < 52; ++seed) {
        const int n = seed % 2 == 0 ? 2 : 3;
        const QuantumChannel ch = random_channel(n, n, 1 + int(seed % 3), seed);
        const BipartiteState choi = choi_state(ch);
        const int d = n * n;
        for (int l = 1; l <= d; ++l) {
            CHECK(eb_check(ch, l, false).detected == sympoly_check(choi, l, false).detected);
            CHECK(eb_check(ch, l, true).detected == sympoly_check(choi, l, true).detected);
        }
    }
}

TEST_CASE("depolarizing and identity constructors") {
    const Matrix sigma = random_density(3, 60);
    CHECK(max_abs_diff(apply_channel(depolarizing_channel(3, 0.0), sigma),
                       apply_channel(identity_channel(3), sigma)) < 1e-12);

    for (double p : {0.2, 0.5, 0.9}) {
        const QuantumChannel ch = depolarizing_channel(3, p);
        Matrix sum = Matrix::Zero(3, 3);
        for (const Matrix& k : ch.kraus()) sum += k.adjoint() * k;
        CHECK(max_abs_diff(sum, identity(3)) < 1e-10);
        // action matches the closed form
        const Matrix got = apply_channel(ch, sigma);
        const Matrix expected = (1.0 - p) * sigma + p * sigma.trace() * identity(3) / 3.0;
        CHECK(max_abs_diff(got, expected) < 1e-12);
    }

    CHECK_THROWS_AS(depolarizing_channel(2, 1.5), std::invalid_argument);
}

TEST_CASE("kraus validation rejects incomplete sets") {
    std::vector<Matrix> bad{0.5 * identity(2)};
    CHECK_THROWS_AS(QuantumChannel::from_kraus(std::move(bad)), KrausValidationError);
    try {
        QuantumChannel::from_kraus({0.5 * identity(2)});
    } catch (const KrausValidationError& e) {
        CHECK(e.deviation() == doctest::Approx(0.75).epsilon(1e-12));
    }
}

TEST_CASE("depolarizing eb threshold matches the choi-state rc threshold") {
    // cross-module consistency: the least p where eb_check(l=1) stops firing
    // must match the rc threshold on the matching isotropic family
    auto eb_detects = [](double p) { return eb_check(depolarizing_channel(2, p), 1, false).detected; };
    double lo = 0.0, hi = 1.0;  // detects at p=0 (identity), not at p=1
    REQUIRE(eb_detects(0.0));
    REQUIRE_FALSE(eb_detects(1.0));
    for (int it = 0; it < 30; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (eb_detects(mid)) lo = mid;
        else hi = mid;
    }
    const double p_eb = 0.5 * (lo + hi);

    auto rc_detects = [](double p) {
        const double f = 1.0 - p * 3.0 / 4.0;
        return rc_check(isotropic(f, 2)).detected;
    };
    double lo2 = 0.0, hi2 = 1.0;
    for (int it = 0; it < 30; ++it) {
        const double mid = 0.5 * (lo2 + hi2);
        if (rc_detects(mid)) lo2 = mid;
        else hi2 = mid;
    }
    CHECK(p_eb == doctest::Approx(0.5 * (lo2 + hi2)).epsilon(1e-3));
    // the measured boundary for this family sits at p = 2/3
    CHECK(p_eb == doctest::Approx(2.0 / 3).epsilon(1e-3));
}

TEST_CASE("random_channel requires a wide enough isometry") {
    CHECK_THROWS_AS(random_channel(2, 5, 1, 1), std::invalid_argument);
}
