#pragma once

#include <vector>

#include "hyperrig/cstar.hpp"

namespace hyperrig {

/// Finitely generated right Hilbert module over a multi-matrix algebra in
/// standard form: block i is Mat(m_i x n_i), the right action is blockwise
/// right multiplication, and <x,y>_i = x_i^* y_i (linear in the second slot).
class HilbertModule {
public:
    HilbertModule(MultiMatrixAlgebra algebra, std::vector<int> multiplicities);

    const MultiMatrixAlgebra& algebra() const { return algebra_; }
    int block_count() const { return algebra_.block_count(); }
    int multiplicity(int i) const { return mult_.at(static_cast<std::size_t>(i)); }
    const std::vector<int>& multiplicities() const { return mult_; }

    int block_rows(int i) const { return multiplicity(i); }
    int block_cols(int i) const { return algebra_.block_size(i); }

    /// Complex dimension, sum of m_i * n_i.
    int dim() const;

    bool operator==(const HilbertModule& other) const = default;

private:
    MultiMatrixAlgebra algebra_;
    std::vector<int> mult_;
};

class ModuleElement {
public:
    ModuleElement(HilbertModule module, std::vector<CMatrix> blocks);

    static ModuleElement zero(const HilbertModule& m);
    static ModuleElement basis_element(const HilbertModule& m, int block, int row, int col);

    const HilbertModule& module() const { return module_; }
    const CMatrix& block(int i) const { return blocks_.at(static_cast<std::size_t>(i)); }
    CMatrix& block(int i) { return blocks_.at(static_cast<std::size_t>(i)); }

    ModuleElement& operator+=(const ModuleElement& rhs);
    ModuleElement& operator-=(const ModuleElement& rhs);
    ModuleElement& operator*=(Cplx scalar);

private:
    HilbertModule module_;
    std::vector<CMatrix> blocks_;
};

ModuleElement operator+(ModuleElement lhs, const ModuleElement& rhs);
ModuleElement operator-(ModuleElement lhs, const ModuleElement& rhs);
ModuleElement operator*(Cplx scalar, ModuleElement rhs);
/// Right action x . a, blockwise x_i a_i.
ModuleElement operator*(const ModuleElement& x, const AlgebraElement& a);

/// Adjointable operator on a standard-form module: blockwise left
/// multiplication by an m_i x m_i matrix. Over a multi-matrix algebra every
/// adjointable operator is a finite sum of rank-one operators, so this type
/// is both K(X) and L(X).
class ModuleOperator {
public:
    ModuleOperator(HilbertModule module, std::vector<CMatrix> blocks);

    static ModuleOperator zero(const HilbertModule& m);
    static ModuleOperator identity(const HilbertModule& m);

    const HilbertModule& module() const { return module_; }
    const CMatrix& block(int i) const { return blocks_.at(static_cast<std::size_t>(i)); }
    CMatrix& block(int i) { return blocks_.at(static_cast<std::size_t>(i)); }

    ModuleElement apply(const ModuleElement& x) const;
    ModuleOperator adjoint() const;
    double norm() const;

    ModuleOperator& operator+=(const ModuleOperator& rhs);
    ModuleOperator& operator-=(const ModuleOperator& rhs);
    ModuleOperator& operator*=(Cplx scalar);

private:
    HilbertModule module_;
    std::vector<CMatrix> blocks_;
};

ModuleOperator operator+(ModuleOperator lhs, const ModuleOperator& rhs);
ModuleOperator operator-(ModuleOperator lhs, const ModuleOperator& rhs);
ModuleOperator operator*(const ModuleOperator& lhs, const ModuleOperator& rhs);
ModuleOperator operator*(Cplx scalar, ModuleOperator rhs);

bool is_positive(const ModuleOperator& t, const Tolerance& tol = {});

/// A-valued inner product, conjugate linear in the first variable.
AlgebraElement inner_product(const ModuleElement& x, const ModuleElement& y);

/// theta_{x,y} : z -> x <y, z>, blockwise x_i y_i^*.
ModuleOperator rank_one(const ModuleElement& x, const ModuleElement& y);

/// ||x|| = ||<x,x>||^(1/2).
double module_norm(const ModuleElement& x);

struct ModuleBasisIndex {
    int block;
    int row;
    int col;
};

/// Deterministic enumeration of the standard basis: block ascending, then
/// row-major within each block.
std::vector<ModuleBasisIndex> module_basis(const HilbertModule& m);

ModuleElement random_element(const HilbertModule& m, Rng& rng);

/// Tight frame: sum of rank_one(v, v) over the vectors is the identity
/// operator, so x = sum_k x_k <x_k, x> for every x.
struct Frame {
    HilbertModule module;
    std::vector<ModuleElement> vectors;
};

/// Canonical tight-frame normalization x_k = T^{-1/2} g_k with
/// T = sum_k theta_{g_k, g_k}. Fails on any nonzero block where the
/// generators do not generate, naming that block.
Frame normalized_frame(const std::vector<ModuleElement>& generators, const Tolerance& tol = {});

/// Partial frame sum e_n = sum_{k <= n} theta_{x_k, x_k}; positive,
/// norm at most 1, and equal to the identity at n = frame length.
ModuleOperator approximate_unit(const Frame& frame, int n);

} // namespace hyperrig
