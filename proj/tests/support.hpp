// support.hpp — shared helpers for the test suites.

#pragma once

#include "scope/linalg.hpp"
#include "scope/states.hpp"

#include <cmath>
#include <vector>

namespace scope::test {

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline Matrix identity(int n) { return Matrix::Identity(n, n); }

inline Vector basis_ket(int n, int i) {
    Vector v = Vector::Zero(n);
    v(i) = 1.0;
    return v;
}

// |Phi+><Phi+| on 2 (x) 2
inline BipartiteState bell_state() { return max_entangled(2); }

inline Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline Matrix pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

inline Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

// Elementary symmetric polynomials by explicit subset enumeration — the
// independent oracle for the recursion-based implementation.
inline std::vector<double> esym_bruteforce(const std::vector<double>& mu) {
    const int d = int(mu.size());
    std::vector<double> e(d + 1, 0.0);
    for (unsigned long long mask = 0; mask < (1ULL << d); ++mask) {
        double prod = 1.0;
        int bits = 0;
        for (int i = 0; i < d; ++i)
            if (mask >> i & 1) {
                prod *= mu[i];
                ++bits;
            }
        e[bits] += prod;
    }
    return {e.begin() + 1, e.end()};
}

// Local-unitary twirl (U (x) V) rho (U (x) V)^dag
inline Matrix local_rotate(const Matrix& rho, const Matrix& u, const Matrix& v) {
    const Matrix w = kron(u, v);
    return w * rho * w.adjoint();
}

}  // namespace scope::test
