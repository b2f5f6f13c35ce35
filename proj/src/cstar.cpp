#include "hyperrig/cstar.hpp"

#include <numeric>
#include <sstream>

#include "hyperrig/errors.hpp"

namespace hyperrig {

MultiMatrixAlgebra::MultiMatrixAlgebra(std::vector<int> block_sizes)
    : sizes_(std::move(block_sizes)) {
    if (sizes_.empty()) throw ValidationError("algebra must have at least one block");
    for (int n : sizes_)
        if (n < 1) throw ValidationError("algebra block sizes must be positive");
}

int MultiMatrixAlgebra::dim() const {
    int d = 0;
    for (int n : sizes_) d += n * n;
    return d;
}

int MultiMatrixAlgebra::rep_dim() const {
    return std::accumulate(sizes_.begin(), sizes_.end(), 0);
}

AlgebraElement::AlgebraElement(MultiMatrixAlgebra algebra, std::vector<CMatrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != algebra_.block_count())
        throw ValidationError("algebra element: wrong number of blocks");
    for (int j = 0; j < algebra_.block_count(); ++j) {
        const int n = algebra_.block_size(j);
        if (blocks_[static_cast<std::size_t>(j)].rows() != n ||
            blocks_[static_cast<std::size_t>(j)].cols() != n) {
            std::ostringstream os;
            os << "algebra element: block " << j + 1 << " must be " << n << "x" << n;
            throw ValidationError(os.str());
        }
        if (!all_finite(blocks_[static_cast<std::size_t>(j)]))
            throw ValidationError("algebra element: non-finite entries");
    }
}

AlgebraElement AlgebraElement::zero(const MultiMatrixAlgebra& a) {
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(a.block_count()));
    for (int j = 0; j < a.block_count(); ++j)
        blocks.push_back(CMatrix::Zero(a.block_size(j), a.block_size(j)));
    return {a, std::move(blocks)};
}

AlgebraElement AlgebraElement::identity(const MultiMatrixAlgebra& a) {
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(a.block_count()));
    for (int j = 0; j < a.block_count(); ++j)
        blocks.push_back(CMatrix::Identity(a.block_size(j), a.block_size(j)));
    return {a, std::move(blocks)};
}

AlgebraElement AlgebraElement::matrix_unit(const MultiMatrixAlgebra& a, int block, int row, int col) {
    AlgebraElement e = zero(a);
    e.block(block)(row, col) = 1.0;
    return e;
}

AlgebraElement AlgebraElement::adjoint() const {
    std::vector<CMatrix> blocks;
    blocks.reserve(blocks_.size());
    for (const CMatrix& b : blocks_) blocks.push_back(b.adjoint());
    return {algebra_, std::move(blocks)};
}

double AlgebraElement::norm() const {
    double n = 0.0;
    for (const CMatrix& b : blocks_) n = std::max(n, op_norm(b));
    return n;
}

bool AlgebraElement::is_hermitian(const Tolerance& tol) const {
    for (const CMatrix& b : blocks_)
        if (op_norm(b - b.adjoint()) > tol.scaled(op_norm(b))) return false;
    return true;
}

namespace {

void require_same_algebra(const AlgebraElement& a, const AlgebraElement& b) {
    if (!(a.algebra() == b.algebra()))
        throw ValidationError("algebra elements belong to different algebras");
}

} // namespace

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
    require_same_algebra(*this, rhs);
    for (int j = 0; j < algebra_.block_count(); ++j) block(j) += rhs.block(j);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
    require_same_algebra(*this, rhs);
    for (int j = 0; j < algebra_.block_count(); ++j) block(j) -= rhs.block(j);
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(Cplx scalar) {
    for (int j = 0; j < algebra_.block_count(); ++j) block(j) *= scalar;
    return *this;
}

AlgebraElement operator+(AlgebraElement lhs, const AlgebraElement& rhs) { return lhs += rhs; }
AlgebraElement operator-(AlgebraElement lhs, const AlgebraElement& rhs) { return lhs -= rhs; }

AlgebraElement operator*(const AlgebraElement& lhs, const AlgebraElement& rhs) {
    require_same_algebra(lhs, rhs);
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(lhs.algebra().block_count()));
    for (int j = 0; j < lhs.algebra().block_count(); ++j)
        blocks.push_back(lhs.block(j) * rhs.block(j));
    return {lhs.algebra(), std::move(blocks)};
}

AlgebraElement operator*(Cplx scalar, AlgebraElement rhs) { return rhs *= scalar; }

bool is_positive(const AlgebraElement& a, const Tolerance& tol) {
    for (int j = 0; j < a.algebra().block_count(); ++j) {
        const double scale = op_norm(a.block(j));
        if (min_eigenvalue(a.block(j), tol) < -tol.scaled(scale)) return false;
    }
    return true;
}

Ideal::Ideal(MultiMatrixAlgebra algebra, std::vector<int> members)
    : algebra_(std::move(algebra)),
      member_(static_cast<std::size_t>(algebra_.block_count()), false) {
    for (int j : members) {
        if (j < 0 || j >= algebra_.block_count())
            throw ValidationError("ideal: block index out of range");
        member_[static_cast<std::size_t>(j)] = true;
    }
}

Ideal Ideal::full(const MultiMatrixAlgebra& a) {
    std::vector<int> all(static_cast<std::size_t>(a.block_count()));
    std::iota(all.begin(), all.end(), 0);
    return {a, std::move(all)};
}

Ideal Ideal::empty(const MultiMatrixAlgebra& a) { return {a, {}}; }

std::vector<int> Ideal::members() const {
    std::vector<int> out;
    for (int j = 0; j < algebra_.block_count(); ++j)
        if (member_[static_cast<std::size_t>(j)]) out.push_back(j);
    return out;
}

int Ideal::member_count() const {
    return static_cast<int>(members().size());
}

Ideal Ideal::complement() const {
    std::vector<int> out;
    for (int j = 0; j < algebra_.block_count(); ++j)
        if (!member_[static_cast<std::size_t>(j)]) out.push_back(j);
    return {algebra_, std::move(out)};
}

AlgebraElement unit_of_ideal(const Ideal& ideal) {
    AlgebraElement u = AlgebraElement::zero(ideal.algebra());
    for (int j : ideal.members())
        u.block(j) = CMatrix::Identity(ideal.algebra().block_size(j), ideal.algebra().block_size(j));
    return u;
}

Ideal support_ideal(const AlgebraElement& a, const Tolerance& tol) {
    std::vector<int> members;
    for (int j = 0; j < a.algebra().block_count(); ++j)
        if (op_norm(a.block(j)) > tol.scaled(1.0)) members.push_back(j);
    return {a.algebra(), std::move(members)};
}

AlgebraElement random_element(const MultiMatrixAlgebra& a, Rng& rng) {
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(a.block_count()));
    for (int j = 0; j < a.block_count(); ++j)
        blocks.push_back(random_matrix(a.block_size(j), a.block_size(j), rng));
    return {a, std::move(blocks)};
}

std::vector<UnitIndex> unit_indices(const MultiMatrixAlgebra& a) {
    std::vector<UnitIndex> out;
    out.reserve(static_cast<std::size_t>(a.dim()));
    for (int j = 0; j < a.block_count(); ++j)
        for (int r = 0; r < a.block_size(j); ++r)
            for (int c = 0; c < a.block_size(j); ++c) out.push_back({j, r, c});
    return out;
}

} // namespace hyperrig
