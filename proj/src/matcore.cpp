#include "hyperrig/matcore.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <sstream>

#include "hyperrig/errors.hpp"

namespace hyperrig {

double op_norm(const CMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
    // Jacobi is the more accurate choice at small sizes; divide-and-conquer
    // keeps the large matrices in the certificate affordable.
    if (std::max(m.rows(), m.cols()) < 48) {
        Eigen::JacobiSVD<CMatrix> svd(m);
        return svd.singularValues()(0);
    }
    Eigen::BDCSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

bool all_finite(const CMatrix& m) {
    return m.allFinite();
}

double asymmetry(const CMatrix& m) {
    if (m.rows() != m.cols()) throw ValidationError("asymmetry: matrix is not square");
    return op_norm(m - m.adjoint());
}

namespace {

CMatrix checked_hermitian_part(const CMatrix& m, const Tolerance& tol, const char* who) {
    if (m.rows() != m.cols()) {
        std::ostringstream os;
        os << who << ": matrix is not square (" << m.rows() << "x" << m.cols() << ")";
        throw ValidationError(os.str());
    }
    const double nrm = op_norm(m);
    const double asym = op_norm(m - m.adjoint());
    if (asym > tol.scaled(nrm)) {
        std::ostringstream os;
        os << who << ": input is not Hermitian, ||M - M^*|| = " << asym;
        throw ValidationError(os.str());
    }
    return 0.5 * (m + m.adjoint());
}

} // namespace

HermEig herm_eig(const CMatrix& m, const Tolerance& tol) {
    if (m.rows() == 0 && m.cols() == 0) return {RVector(0), CMatrix(0, 0)};
    const CMatrix h = checked_hermitian_part(m, tol, "herm_eig");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success) throw InternalError("herm_eig: eigensolver failed to converge");
    const int n = static_cast<int>(h.rows());
    HermEig out;
    out.eigenvalues = RVector(n);
    out.vectors = CMatrix(n, n);
    for (int i = 0; i < n; ++i) { // ascending -> descending
        out.eigenvalues(i) = es.eigenvalues()(n - 1 - i);
        out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
    }
    return out;
}

CMatrix psd_sqrt(const CMatrix& m, const Tolerance& tol) {
    if (m.rows() == 0 && m.cols() == 0) return m;
    HermEig eig = herm_eig(m, tol);
    const double scale = eig.eigenvalues.size() > 0 ? std::abs(eig.eigenvalues(0)) : 0.0;
    RVector roots(eig.eigenvalues.size());
    for (int i = 0; i < eig.eigenvalues.size(); ++i) {
        double lam = eig.eigenvalues(i);
        if (lam < -tol.scaled(scale)) {
            std::ostringstream os;
            os << "psd_sqrt: input is not positive semidefinite, min eigenvalue = " << lam;
            throw ValidationError(os.str());
        }
        roots(i) = std::sqrt(std::max(lam, 0.0));
    }
    CMatrix r = eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
    return 0.5 * (r + r.adjoint());
}

double min_eigenvalue(const CMatrix& m, const Tolerance& tol) {
    if (m.rows() == 0 && m.cols() == 0) return 0.0;
    const CMatrix h = checked_hermitian_part(m, tol, "min_eigenvalue");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw InternalError("min_eigenvalue: eigensolver failed");
    return es.eigenvalues()(0);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

int Rng::uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    return lo + static_cast<int>(bits() % span);
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

CMatrix random_matrix(int rows, int cols, Rng& rng) {
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.gaussian_cplx();
    return m;
}

CMatrix random_hermitian(int n, Rng& rng) {
    CMatrix m = random_matrix(n, n, rng);
    return 0.5 * (m + m.adjoint());
}

CMatrix random_psd(int n, Rng& rng) {
    CMatrix g = random_matrix(n, n, rng);
    return g.adjoint() * g;
}

CMatrix random_unitary(int n, Rng& rng) {
    return random_isometry(n, n, rng);
}

CMatrix random_isometry(int rows, int cols, Rng& rng) {
    if (cols > rows) throw ValidationError("random_isometry: cols must not exceed rows");
    if (cols == 0) return CMatrix(rows, 0);
    const CMatrix g = random_matrix(rows, cols, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
    // Fix the phase of each column so the draw is a deterministic function
    // of the generator stream alone.
    for (int j = 0; j < cols; ++j) {
        Cplx d = qr.matrixQR()(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

} // namespace hyperrig
