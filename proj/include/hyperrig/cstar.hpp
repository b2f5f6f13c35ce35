#pragma once

#include <vector>

#include "hyperrig/matcore.hpp"

namespace hyperrig {

/// A finite-dimensional C*-algebra presented as a direct sum of full matrix
/// blocks M_{n_1} + ... + M_{n_B}.
class MultiMatrixAlgebra {
public:
    explicit MultiMatrixAlgebra(std::vector<int> block_sizes);

    int block_count() const { return static_cast<int>(sizes_.size()); }
    int block_size(int j) const { return sizes_.at(static_cast<std::size_t>(j)); }
    const std::vector<int>& block_sizes() const { return sizes_; }

    /// Linear dimension, sum of n_j^2.
    int dim() const;
    /// Dimension of the canonical representation space, sum of n_j.
    int rep_dim() const;

    bool operator==(const MultiMatrixAlgebra& other) const = default;

private:
    std::vector<int> sizes_;
};

/// Block-diagonal element of a MultiMatrixAlgebra.
class AlgebraElement {
public:
    AlgebraElement(MultiMatrixAlgebra algebra, std::vector<CMatrix> blocks);

    static AlgebraElement zero(const MultiMatrixAlgebra& a);
    static AlgebraElement identity(const MultiMatrixAlgebra& a);
    static AlgebraElement matrix_unit(const MultiMatrixAlgebra& a, int block, int row, int col);

    const MultiMatrixAlgebra& algebra() const { return algebra_; }
    const CMatrix& block(int j) const { return blocks_.at(static_cast<std::size_t>(j)); }
    CMatrix& block(int j) { return blocks_.at(static_cast<std::size_t>(j)); }

    AlgebraElement adjoint() const;

    /// C*-norm of a direct sum: max over blocks of the operator norm.
    double norm() const;

    bool is_hermitian(const Tolerance& tol = {}) const;

    AlgebraElement& operator+=(const AlgebraElement& rhs);
    AlgebraElement& operator-=(const AlgebraElement& rhs);
    AlgebraElement& operator*=(Cplx scalar);

private:
    MultiMatrixAlgebra algebra_;
    std::vector<CMatrix> blocks_;
};

AlgebraElement operator+(AlgebraElement lhs, const AlgebraElement& rhs);
AlgebraElement operator-(AlgebraElement lhs, const AlgebraElement& rhs);
AlgebraElement operator*(const AlgebraElement& lhs, const AlgebraElement& rhs);
AlgebraElement operator*(Cplx scalar, AlgebraElement rhs);

/// True iff the element is Hermitian and every block eigenvalue is >= -tol.
bool is_positive(const AlgebraElement& a, const Tolerance& tol = {});

/// Two-sided closed ideal of a multi-matrix algebra: a subset of its blocks.
class Ideal {
public:
    Ideal(MultiMatrixAlgebra algebra, std::vector<int> members);

    static Ideal full(const MultiMatrixAlgebra& a);
    static Ideal empty(const MultiMatrixAlgebra& a);

    const MultiMatrixAlgebra& algebra() const { return algebra_; }
    bool contains(int j) const { return member_.at(static_cast<std::size_t>(j)); }
    std::vector<int> members() const;
    int member_count() const;
    Ideal complement() const;

    bool operator==(const Ideal& other) const = default;

private:
    MultiMatrixAlgebra algebra_;
    std::vector<bool> member_;
};

/// Identity on member blocks, zero elsewhere; the unit attained by the
/// ideal's approximate unit in finite dimensions.
AlgebraElement unit_of_ideal(const Ideal& ideal);

/// Smallest ideal containing the element: the set of blocks where it is
/// nonzero beyond tolerance.
Ideal support_ideal(const AlgebraElement& a, const Tolerance& tol = {});

AlgebraElement random_element(const MultiMatrixAlgebra& a, Rng& rng);

struct UnitIndex {
    int block;
    int row;
    int col;
};

/// Deterministic enumeration of all matrix units: block ascending, then row,
/// then column.
std::vector<UnitIndex> unit_indices(const MultiMatrixAlgebra& a);

} // namespace hyperrig
