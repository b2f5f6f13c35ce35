#include "hyperrig/correspondence.hpp"

#include <cmath>
#include <sstream>

#include "hyperrig/errors.hpp"

namespace hyperrig {

namespace {

int flat_unit_index(const MultiMatrixAlgebra& a, int block, int row, int col) {
    int base = 0;
    for (int j = 0; j < block; ++j) base += a.block_size(j) * a.block_size(j);
    return base + row * a.block_size(block) + col;
}

} // namespace

Correspondence Correspondence::from_multiplicities(const MultiMatrixAlgebra& algebra,
                                                   const std::vector<int>& module_multiplicities,
                                                   const Eigen::MatrixXi& copies) {
    const int b = algebra.block_count();
    if (copies.rows() != b || copies.cols() != b)
        throw ValidationError("left action multiplicities must form a BxB matrix");
    std::map<std::pair<int, int>, CMatrix> intertwiners;
    HilbertModule module(algebra, module_multiplicities);
    for (int i = 0; i < b; ++i) {
        int offset = 0;
        for (int j = 0; j < b; ++j) {
            const int c = copies(i, j);
            if (c < 0) throw ValidationError("left action multiplicities must be nonnegative");
            if (c == 0) continue;
            const int width = c * algebra.block_size(j);
            if (offset + width > module.block_rows(i)) {
                std::ostringstream os;
                os << "left action does not fit: module block " << i + 1 << " has multiplicity "
                   << module.block_rows(i) << " but the requested copies need at least "
                   << offset + width;
                throw ValidationError(os.str());
            }
            CMatrix w = CMatrix::Zero(module.block_rows(i), width);
            w.block(offset, 0, width, width) = CMatrix::Identity(width, width);
            intertwiners.emplace(std::make_pair(i, j), std::move(w));
            offset += width;
        }
    }
    return from_intertwiners(algebra, module, intertwiners);
}

Correspondence Correspondence::from_intertwiners(
    const MultiMatrixAlgebra& algebra, const HilbertModule& module,
    const std::map<std::pair<int, int>, CMatrix>& intertwiners) {
    if (!(module.algebra() == algebra))
        throw ValidationError("correspondence: module is not over the given algebra");
    const int b = algebra.block_count();
    for (const auto& [slot, w] : intertwiners) {
        const auto [i, j] = slot;
        if (i < 0 || i >= b || j < 0 || j >= b)
            throw ValidationError("correspondence: intertwiner slot out of range");
        const int nj = algebra.block_size(j);
        if (w.rows() != module.block_rows(i))
            throw ValidationError("correspondence: intertwiner row count must equal the module multiplicity");
        if (w.cols() == 0 || w.cols() % nj != 0)
            throw ValidationError("correspondence: intertwiner width must be a positive multiple of the algebra block size");
        if (w.cols() > w.rows())
            throw ValidationError("correspondence: intertwiner is wider than the module block");
        if (!all_finite(w)) throw ValidationError("correspondence: non-finite intertwiner entries");
    }

    std::vector<ModuleOperator> images;
    images.reserve(static_cast<std::size_t>(algebra.dim()));
    for (const UnitIndex& u : unit_indices(algebra)) {
        ModuleOperator img = ModuleOperator::zero(module);
        for (int i = 0; i < b; ++i) {
            auto it = intertwiners.find({i, u.block});
            if (it == intertwiners.end()) continue;
            const CMatrix& w = it->second;
            const int nj = algebra.block_size(u.block);
            const int c = static_cast<int>(w.cols()) / nj;
            CMatrix e = CMatrix::Zero(nj, nj);
            e(u.row, u.col) = 1.0;
            img.block(i) = w * kron(CMatrix::Identity(c, c), e) * w.adjoint();
        }
        images.push_back(std::move(img));
    }
    return Correspondence(algebra, module, std::move(images));
}

Correspondence Correspondence::from_unit_images(const MultiMatrixAlgebra& algebra,
                                                const HilbertModule& module,
                                                std::vector<ModuleOperator> images) {
    if (!(module.algebra() == algebra))
        throw ValidationError("correspondence: module is not over the given algebra");
    if (static_cast<int>(images.size()) != algebra.dim())
        throw ValidationError("correspondence: one image per matrix unit required");
    for (const ModuleOperator& t : images)
        if (!(t.module() == module))
            throw ValidationError("correspondence: image lives over the wrong module");
    return Correspondence(algebra, module, std::move(images));
}

ModuleOperator Correspondence::left_action(const AlgebraElement& a) const {
    if (!(a.algebra() == algebra_))
        throw ValidationError("left action: element belongs to a different algebra");
    ModuleOperator out = ModuleOperator::zero(module_);
    int flat = 0;
    for (int j = 0; j < algebra_.block_count(); ++j) {
        const int n = algebra_.block_size(j);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c, ++flat) {
                const Cplx coeff = a.block(j)(r, c);
                if (coeff == Cplx(0.0, 0.0)) continue;
                const ModuleOperator& img = images_[static_cast<std::size_t>(flat)];
                for (int i = 0; i < module_.block_count(); ++i) out.block(i) += coeff * img.block(i);
            }
    }
    return out;
}

ModuleElement Correspondence::act(const AlgebraElement& a, const ModuleElement& x) const {
    return left_action(a).apply(x);
}

void Correspondence::validate(const Tolerance& tol) const {
    const std::vector<UnitIndex> units = unit_indices(algebra_);
    const int count = static_cast<int>(units.size());

    double worst = 0.0;
    std::string worst_what;

    auto record = [&](double residual, const std::string& what) {
        if (residual > worst) {
            worst = residual;
            worst_what = what;
        }
    };

    for (int s = 0; s < count; ++s) {
        const UnitIndex& u = units[static_cast<std::size_t>(s)];
        const int adj = flat_unit_index(algebra_, u.block, u.col, u.row);
        const double res =
            (unit_image(s).adjoint() - unit_image(adj)).norm();
        std::ostringstream os;
        os << "adjoint of unit (" << u.block + 1 << ";" << u.row + 1 << "," << u.col + 1 << ")";
        record(res, os.str());
    }

    for (int s = 0; s < count; ++s) {
        for (int t = 0; t < count; ++t) {
            const UnitIndex& u = units[static_cast<std::size_t>(s)];
            const UnitIndex& v = units[static_cast<std::size_t>(t)];
            ModuleOperator product = unit_image(s) * unit_image(t);
            if (u.block == v.block && u.col == v.row) {
                const int target = flat_unit_index(algebra_, u.block, u.row, v.col);
                product -= unit_image(target);
            }
            const double res = product.norm();
            if (res > worst) {
                std::ostringstream os;
                os << "product of units (" << u.block + 1 << ";" << u.row + 1 << "," << u.col + 1
                   << ") and (" << v.block + 1 << ";" << v.row + 1 << "," << v.col + 1 << ")";
                record(res, os.str());
            }
        }
    }

    if (worst > tol.scaled(1.0)) {
        std::ostringstream os;
        os << "left action is not a *-homomorphism: " << worst_what
           << " violates its identity by " << worst;
        throw ValidationError(os.str());
    }
}

Eigen::MatrixXi Correspondence::multiplicity_matrix(const Tolerance& tol) const {
    const int b = algebra_.block_count();
    Eigen::MatrixXi copies(b, b);
    for (int j = 0; j < b; ++j) {
        const int diag = flat_unit_index(algebra_, j, 0, 0);
        const ModuleOperator& img = images_[static_cast<std::size_t>(diag)];
        for (int i = 0; i < b; ++i) {
            const double tr = img.block(i).trace().real();
            const double rounded = std::round(tr);
            if (std::abs(tr - rounded) > 1e-6 || std::abs(img.block(i).trace().imag()) > 1e-6)
                throw InternalError("multiplicity recovery: trace of a diagonal unit image is not integral");
            copies(i, j) = static_cast<int>(rounded);
        }
    }
    (void)tol;
    return copies;
}

Ideal left_action_kernel(const Correspondence& c, const Tolerance& tol,
                         std::vector<std::string>* warnings) {
    const MultiMatrixAlgebra& a = c.algebra();
    std::vector<int> members;
    int flat = 0;
    for (int j = 0; j < a.block_count(); ++j) {
        const int n = a.block_size(j);
        double worst = 0.0;
        for (int r = 0; r < n; ++r)
            for (int col = 0; col < n; ++col, ++flat)
                worst = std::max(worst, c.unit_image(flat).norm());
        if (worst <= tol.scaled(1.0)) {
            members.push_back(j);
        } else if (warnings && worst < 10.0 * tol.scaled(1.0)) {
            std::ostringstream os;
            os << "algebra block " << j + 1 << " acts with borderline norm " << worst
               << " (between tol and 10*tol); treated as outside the kernel";
            warnings->push_back(os.str());
        }
    }
    return {a, std::move(members)};
}

Ideal katsura_ideal(const Correspondence& c, const Tolerance& tol) {
    return left_action_kernel(c, tol).complement();
}

HyperrigidityVerdict is_hyperrigid(const Correspondence& c, const Tolerance& tol) {
    std::vector<std::string> warnings;
    Ideal kernel = left_action_kernel(c, tol, &warnings);
    Ideal katsura = kernel.complement();

    const ModuleOperator u_action = c.left_action(unit_of_ideal(katsura));
    std::optional<ModuleBasisIndex> witness_index;
    std::optional<ModuleElement> witness;
    for (const ModuleBasisIndex& idx : module_basis(c.module())) {
        ModuleElement b = ModuleElement::basis_element(c.module(), idx.block, idx.row, idx.col);
        const double moved = module_norm(u_action.apply(b) - b);
        if (moved > tol.scaled(1.0)) {
            witness_index = idx;
            witness = std::move(b);
            break;
        }
    }

    return {!witness.has_value(), std::move(katsura), std::move(kernel),
            witness_index, std::move(witness), std::move(warnings)};
}

Correspondence tensor_power(const Correspondence& c, int k) {
    if (k < 0) throw ValidationError("tensor power: exponent must be nonnegative");
    const MultiMatrixAlgebra& a = c.algebra();
    const int b = a.block_count();

    const Eigen::MatrixXi copies = c.multiplicity_matrix();
    Eigen::VectorXi base_mult(b);
    for (int i = 0; i < b; ++i) base_mult(i) = c.module().multiplicity(i);

    // Power 0 is the identity correspondence of the algebra over itself.
    Eigen::MatrixXi acting = Eigen::MatrixXi::Identity(b, b);
    Eigen::VectorXi mult(b);
    for (int i = 0; i < b; ++i) mult(i) = a.block_size(i);

    for (int step = 0; step < k; ++step) {
        // X tensor Y has module multiplicities D_Y * m_X and left action
        // multiplicities D_Y * C_X, where D_Y is the acting matrix of the
        // right factor built so far.
        mult = acting * base_mult;
        acting = acting * copies;
    }

    std::vector<int> mult_vec(static_cast<std::size_t>(b));
    for (int i = 0; i < b; ++i) mult_vec[static_cast<std::size_t>(i)] = mult(i);
    return Correspondence::from_multiplicities(a, mult_vec, acting);
}

} // namespace hyperrig
