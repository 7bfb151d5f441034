// states.hpp — deterministic, seeded generators for test states: maximally
// entangled, product, Werner, isotropic, random densities and pure states,
// random separable mixtures.

#pragma once

#include "scope/linalg.hpp"

#include <cstdint>
#include <random>

namespace scope {

// Seeded generator built on MT19937-64 (fully specified by the C++ standard)
// with an explicit Box-Muller transform; std::* distributions are avoided
// because their output sequences are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // uniform double in [0,1), 53-bit resolution
    double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

    double gaussian();

    // re and im independent standard normals
    Complex complex_gaussian() {
        const double re = gaussian();
        return {re, gaussian()};
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

Matrix random_gaussian_matrix(int rows, int cols, Rng& rng);

// G G^dag / tr(G G^dag) with i.i.d. standard complex Gaussian G.
Matrix random_density(int n, std::uint64_t seed);

// Haar-distributed unitary (QR of a Gaussian matrix with phase fix).
Matrix random_unitary(int n, std::uint64_t seed);

// |psi><psi| with |psi> = (1/sqrt(n)) sum_a |a>|a>.
BipartiteState max_entangled(int n);

// kron(ra, rb), validated.
BipartiteState product_state(const Matrix& ra, const Matrix& rb);

// p |Psi^-><Psi^-| + (1-p) I/4 on 2 (x) 2.
BipartiteState werner(double p);

// f * ME(n) + (1-f) * (I - ME(n)) / (n^2 - 1).
BipartiteState isotropic(double f, int n);

// Projector onto a normalized Gaussian vector.
BipartiteState random_pure(int na, int nb, std::uint64_t seed);

// Convex mixture of `terms` random product states; weights are normalized
// i.i.d. uniforms. Samples a proper subset of the separable set — every
// output is separable by construction.
BipartiteState random_separable(int na, int nb, int terms, std::uint64_t seed);
BipartiteState random_separable(int na, int nb, std::uint64_t seed);  // terms = 10

}  // namespace scope
