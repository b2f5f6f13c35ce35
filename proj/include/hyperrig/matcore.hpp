#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "hyperrig/tolerance.hpp"

namespace hyperrig {

using Cplx = std::complex<double>;

/// Dense complex matrix, the substrate for every operator in the library.
/// Degenerate shapes (0 x n) are legal and behave as empty sums.
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Largest singular value. op_norm of an empty matrix is 0.
double op_norm(const CMatrix& m);

bool all_finite(const CMatrix& m);

/// ||M - M^*||, the measured deviation from being Hermitian.
double asymmetry(const CMatrix& m);

struct HermEig {
    RVector eigenvalues; ///< descending
    CMatrix vectors;     ///< unitary, M = V diag(eigenvalues) V^*
};

/// Hermitian eigendecomposition. Rejects inputs whose asymmetry exceeds
/// tol relative to max(1, ||M||).
HermEig herm_eig(const CMatrix& m, const Tolerance& tol = {});

/// Positive square root of a Hermitian PSD matrix. Eigenvalues in [-tol, 0)
/// are clamped to 0; anything below -tol is rejected.
CMatrix psd_sqrt(const CMatrix& m, const Tolerance& tol = {});

/// Smallest eigenvalue of a Hermitian matrix (input checked like herm_eig).
double min_eigenvalue(const CMatrix& m, const Tolerance& tol = {});

/// Kronecker product, first factor major: (a x b)[(i,k),(j,l)] = a(i,j) b(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Deterministic sampling. Draws are derived directly from mt19937_64 output
/// bits so that streams are reproducible independent of the standard
/// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t bits() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi);

    double gaussian();

    Cplx gaussian_cplx() { return {gaussian(), gaussian()}; }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

CMatrix random_matrix(int rows, int cols, Rng& rng);
CMatrix random_hermitian(int n, Rng& rng);
CMatrix random_psd(int n, Rng& rng);
CMatrix random_unitary(int n, Rng& rng);

/// Random isometry with orthonormal columns (cols <= rows).
CMatrix random_isometry(int rows, int cols, Rng& rng);

} // namespace hyperrig
