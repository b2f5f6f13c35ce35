#include "hyperrig/hilbmod.hpp"

#include <cmath>
#include <sstream>

#include "hyperrig/errors.hpp"

namespace hyperrig {

HilbertModule::HilbertModule(MultiMatrixAlgebra algebra, std::vector<int> multiplicities)
    : algebra_(std::move(algebra)), mult_(std::move(multiplicities)) {
    if (static_cast<int>(mult_.size()) != algebra_.block_count())
        throw ValidationError("module: multiplicity count must match the algebra block count");
    for (int m : mult_)
        if (m < 0) throw ValidationError("module: multiplicities must be nonnegative");
}

int HilbertModule::dim() const {
    int d = 0;
    for (int i = 0; i < block_count(); ++i) d += block_rows(i) * block_cols(i);
    return d;
}

namespace {

void require_same_module(const HilbertModule& a, const HilbertModule& b, const char* who) {
    if (!(a == b)) {
        std::ostringstream os;
        os << who << ": operands live over different modules";
        throw ValidationError(os.str());
    }
}

} // namespace

ModuleElement::ModuleElement(HilbertModule module, std::vector<CMatrix> blocks)
    : module_(std::move(module)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != module_.block_count())
        throw ValidationError("module element: wrong number of blocks");
    for (int i = 0; i < module_.block_count(); ++i) {
        const CMatrix& b = blocks_[static_cast<std::size_t>(i)];
        if (b.rows() != module_.block_rows(i) || b.cols() != module_.block_cols(i)) {
            std::ostringstream os;
            os << "module element: block " << i + 1 << " must be " << module_.block_rows(i)
               << "x" << module_.block_cols(i);
            throw ValidationError(os.str());
        }
        if (!all_finite(b)) throw ValidationError("module element: non-finite entries");
    }
}

ModuleElement ModuleElement::zero(const HilbertModule& m) {
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(m.block_count()));
    for (int i = 0; i < m.block_count(); ++i)
        blocks.push_back(CMatrix::Zero(m.block_rows(i), m.block_cols(i)));
    return {m, std::move(blocks)};
}

ModuleElement ModuleElement::basis_element(const HilbertModule& m, int block, int row, int col) {
    ModuleElement e = zero(m);
    e.block(block)(row, col) = 1.0;
    return e;
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& rhs) {
    require_same_module(module_, rhs.module_, "element sum");
    for (int i = 0; i < module_.block_count(); ++i) block(i) += rhs.block(i);
    return *this;
}

ModuleElement& ModuleElement::operator-=(const ModuleElement& rhs) {
    require_same_module(module_, rhs.module_, "element difference");
    for (int i = 0; i < module_.block_count(); ++i) block(i) -= rhs.block(i);
    return *this;
}

ModuleElement& ModuleElement::operator*=(Cplx scalar) {
    for (int i = 0; i < module_.block_count(); ++i) block(i) *= scalar;
    return *this;
}

ModuleElement operator+(ModuleElement lhs, const ModuleElement& rhs) { return lhs += rhs; }
ModuleElement operator-(ModuleElement lhs, const ModuleElement& rhs) { return lhs -= rhs; }
ModuleElement operator*(Cplx scalar, ModuleElement rhs) { return rhs *= scalar; }

ModuleElement operator*(const ModuleElement& x, const AlgebraElement& a) {
    if (!(x.module().algebra() == a.algebra()))
        throw ValidationError("right action: element and module algebras differ");
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(x.module().block_count()));
    for (int i = 0; i < x.module().block_count(); ++i) blocks.push_back(x.block(i) * a.block(i));
    return {x.module(), std::move(blocks)};
}

ModuleOperator::ModuleOperator(HilbertModule module, std::vector<CMatrix> blocks)
    : module_(std::move(module)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != module_.block_count())
        throw ValidationError("module operator: wrong number of blocks");
    for (int i = 0; i < module_.block_count(); ++i) {
        const CMatrix& b = blocks_[static_cast<std::size_t>(i)];
        if (b.rows() != module_.block_rows(i) || b.cols() != module_.block_rows(i)) {
            std::ostringstream os;
            os << "module operator: block " << i + 1 << " must be " << module_.block_rows(i)
               << "x" << module_.block_rows(i);
            throw ValidationError(os.str());
        }
        if (!all_finite(b)) throw ValidationError("module operator: non-finite entries");
    }
}

ModuleOperator ModuleOperator::zero(const HilbertModule& m) {
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(m.block_count()));
    for (int i = 0; i < m.block_count(); ++i)
        blocks.push_back(CMatrix::Zero(m.block_rows(i), m.block_rows(i)));
    return {m, std::move(blocks)};
}

ModuleOperator ModuleOperator::identity(const HilbertModule& m) {
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(m.block_count()));
    for (int i = 0; i < m.block_count(); ++i)
        blocks.push_back(CMatrix::Identity(m.block_rows(i), m.block_rows(i)));
    return {m, std::move(blocks)};
}

ModuleElement ModuleOperator::apply(const ModuleElement& x) const {
    require_same_module(module_, x.module(), "operator application");
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(module_.block_count()));
    for (int i = 0; i < module_.block_count(); ++i) blocks.push_back(block(i) * x.block(i));
    return {module_, std::move(blocks)};
}

ModuleOperator ModuleOperator::adjoint() const {
    std::vector<CMatrix> blocks;
    blocks.reserve(blocks_.size());
    for (const CMatrix& b : blocks_) blocks.push_back(b.adjoint());
    return {module_, std::move(blocks)};
}

double ModuleOperator::norm() const {
    double n = 0.0;
    for (const CMatrix& b : blocks_) n = std::max(n, op_norm(b));
    return n;
}

ModuleOperator& ModuleOperator::operator+=(const ModuleOperator& rhs) {
    require_same_module(module_, rhs.module_, "operator sum");
    for (int i = 0; i < module_.block_count(); ++i) block(i) += rhs.block(i);
    return *this;
}

ModuleOperator& ModuleOperator::operator-=(const ModuleOperator& rhs) {
    require_same_module(module_, rhs.module_, "operator difference");
    for (int i = 0; i < module_.block_count(); ++i) block(i) -= rhs.block(i);
    return *this;
}

ModuleOperator& ModuleOperator::operator*=(Cplx scalar) {
    for (int i = 0; i < module_.block_count(); ++i) block(i) *= scalar;
    return *this;
}

ModuleOperator operator+(ModuleOperator lhs, const ModuleOperator& rhs) { return lhs += rhs; }
ModuleOperator operator-(ModuleOperator lhs, const ModuleOperator& rhs) { return lhs -= rhs; }

ModuleOperator operator*(const ModuleOperator& lhs, const ModuleOperator& rhs) {
    require_same_module(lhs.module(), rhs.module(), "operator product");
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(lhs.module().block_count()));
    for (int i = 0; i < lhs.module().block_count(); ++i)
        blocks.push_back(lhs.block(i) * rhs.block(i));
    return {lhs.module(), std::move(blocks)};
}

ModuleOperator operator*(Cplx scalar, ModuleOperator rhs) { return rhs *= scalar; }

bool is_positive(const ModuleOperator& t, const Tolerance& tol) {
    for (int i = 0; i < t.module().block_count(); ++i) {
        if (t.module().block_rows(i) == 0) continue;
        const double scale = op_norm(t.block(i));
        if (min_eigenvalue(t.block(i), tol) < -tol.scaled(scale)) return false;
    }
    return true;
}

AlgebraElement inner_product(const ModuleElement& x, const ModuleElement& y) {
    require_same_module(x.module(), y.module(), "inner product");
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(x.module().block_count()));
    for (int i = 0; i < x.module().block_count(); ++i)
        blocks.push_back(x.block(i).adjoint() * y.block(i));
    return {x.module().algebra(), std::move(blocks)};
}

ModuleOperator rank_one(const ModuleElement& x, const ModuleElement& y) {
    require_same_module(x.module(), y.module(), "rank one operator");
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(x.module().block_count()));
    for (int i = 0; i < x.module().block_count(); ++i)
        blocks.push_back(x.block(i) * y.block(i).adjoint());
    return {x.module(), std::move(blocks)};
}

double module_norm(const ModuleElement& x) {
    return std::sqrt(inner_product(x, x).norm());
}

std::vector<ModuleBasisIndex> module_basis(const HilbertModule& m) {
    std::vector<ModuleBasisIndex> out;
    out.reserve(static_cast<std::size_t>(m.dim()));
    for (int i = 0; i < m.block_count(); ++i)
        for (int r = 0; r < m.block_rows(i); ++r)
            for (int c = 0; c < m.block_cols(i); ++c) out.push_back({i, r, c});
    return out;
}

ModuleElement random_element(const HilbertModule& m, Rng& rng) {
    std::vector<CMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(m.block_count()));
    for (int i = 0; i < m.block_count(); ++i)
        blocks.push_back(random_matrix(m.block_rows(i), m.block_cols(i), rng));
    return {m, std::move(blocks)};
}

Frame normalized_frame(const std::vector<ModuleElement>& generators, const Tolerance& tol) {
    if (generators.empty()) throw ValidationError("frame: at least one generator required");
    const HilbertModule& m = generators.front().module();
    for (const ModuleElement& g : generators)
        require_same_module(m, g.module(), "frame generators");

    ModuleOperator t = ModuleOperator::zero(m);
    for (const ModuleElement& g : generators) t += rank_one(g, g);

    // Invert T^(1/2) blockwise; a singular block means the generators do not
    // span that block's worth of the module.
    ModuleOperator inv_sqrt = ModuleOperator::zero(m);
    for (int i = 0; i < m.block_count(); ++i) {
        if (m.block_rows(i) == 0) continue;
        HermEig eig = herm_eig(t.block(i), tol);
        const double scale = std::abs(eig.eigenvalues(0));
        const double lam_min = eig.eigenvalues(eig.eigenvalues.size() - 1);
        if (lam_min <= tol.scaled(scale)) {
            std::ostringstream os;
            os << "generators do not generate: frame operator singular on module block "
               << i + 1 << " (min eigenvalue " << lam_min << ")";
            throw ValidationError(os.str());
        }
        RVector inv_roots(eig.eigenvalues.size());
        for (int k = 0; k < eig.eigenvalues.size(); ++k)
            inv_roots(k) = 1.0 / std::sqrt(eig.eigenvalues(k));
        inv_sqrt.block(i) = eig.vectors * inv_roots.asDiagonal() * eig.vectors.adjoint();
    }

    Frame f{m, {}};
    f.vectors.reserve(generators.size());
    for (const ModuleElement& g : generators) f.vectors.push_back(inv_sqrt.apply(g));

    ModuleOperator check = ModuleOperator::zero(m);
    for (const ModuleElement& v : f.vectors) check += rank_one(v, v);
    if ((check - ModuleOperator::identity(m)).norm() > tol.scaled(1.0) * 100)
        throw InternalError("frame normalization failed to reproduce the identity");
    return f;
}

ModuleOperator approximate_unit(const Frame& frame, int n) {
    if (n < 1 || n > static_cast<int>(frame.vectors.size()))
        throw ValidationError("approximate unit: index out of range");
    ModuleOperator e = ModuleOperator::zero(frame.module);
    for (int k = 0; k < n; ++k) e += rank_one(frame.vectors[static_cast<std::size_t>(k)],
                                              frame.vectors[static_cast<std::size_t>(k)]);
    return e;
}

} // namespace hyperrig
