#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperrig/hilbmod.hpp"

namespace hyperrig {

/// A C*-correspondence over a multi-matrix algebra: a standard-form module
/// together with a left action, stored as the images of all matrix units of
/// the algebra under the action homomorphism.
///
/// Up to unitary equivalence a left action is a multiplicity matrix C with
/// C(i,j) = number of copies of algebra block j inside the operators of
/// module block i, plus one intertwiner per nonzero slot. from_multiplicities
/// builds the canonical layout (copies packed in ascending j, zero padding
/// last); from_intertwiners accepts explicit isometries instead.
class Correspondence {
public:
    static Correspondence from_multiplicities(const MultiMatrixAlgebra& algebra,
                                              const std::vector<int>& module_multiplicities,
                                              const Eigen::MatrixXi& copies);

    /// intertwiners maps (module block i, algebra block j) to an isometry
    /// with m_i rows and a positive multiple of n_j columns. Slots absent
    /// from the map act with multiplicity zero.
    static Correspondence from_intertwiners(const MultiMatrixAlgebra& algebra,
                                            const HilbertModule& module,
                                            const std::map<std::pair<int, int>, CMatrix>& intertwiners);

    /// Raw constructor from the images of all matrix units in unit_indices
    /// order; shapes are checked here, homomorphism identities by validate().
    static Correspondence from_unit_images(const MultiMatrixAlgebra& algebra,
                                           const HilbertModule& module,
                                           std::vector<ModuleOperator> images);

    const MultiMatrixAlgebra& algebra() const { return algebra_; }
    const HilbertModule& module() const { return module_; }

    const ModuleOperator& unit_image(int flat_unit) const {
        return images_.at(static_cast<std::size_t>(flat_unit));
    }

    ModuleOperator left_action(const AlgebraElement& a) const;
    ModuleElement act(const AlgebraElement& a, const ModuleElement& x) const;

    /// Checks that the stored images define a *-homomorphism: adjoints and
    /// products of matrix units map correctly. Rejections name the worst
    /// violating unit pair and the measured residual.
    void validate(const Tolerance& tol = {}) const;

    /// Recovers the multiplicity matrix from traces of the diagonal unit
    /// images; requires a validated correspondence.
    Eigen::MatrixXi multiplicity_matrix(const Tolerance& tol = {}) const;

private:
    Correspondence(MultiMatrixAlgebra algebra, HilbertModule module,
                   std::vector<ModuleOperator> images)
        : algebra_(std::move(algebra)), module_(std::move(module)), images_(std::move(images)) {}

    MultiMatrixAlgebra algebra_;
    HilbertModule module_;
    std::vector<ModuleOperator> images_; ///< one per unit_indices(algebra) entry
};

struct HyperrigidityVerdict {
    bool hyperrigid;
    Ideal katsura;
    Ideal kernel;
    std::optional<ModuleBasisIndex> witness_index;
    std::optional<ModuleElement> witness;
    std::vector<std::string> warnings;
};

/// Blocks of the algebra annihilated by the left action. A block counts as
/// kernel only if all of its matrix units map below tol; norms in
/// (tol, 10 tol) produce a warning when a sink is supplied.
Ideal left_action_kernel(const Correspondence& c, const Tolerance& tol = {},
                         std::vector<std::string>* warnings = nullptr);

/// Largest ideal acting by compacts and orthogonal to the kernel. In finite
/// dimensions every operator is compact, so this is the kernel's complement.
Ideal katsura_ideal(const Correspondence& c, const Tolerance& tol = {});

/// Decides whether the Katsura ideal acts non-degenerately: its unit must act
/// as the identity on every nonzero module block. On failure the verdict
/// carries the first standard basis vector moved by more than tol.
HyperrigidityVerdict is_hyperrigid(const Correspondence& c, const Tolerance& tol = {});

/// k-fold internal tensor power. Power 0 is the algebra as the identity
/// correspondence over itself; multiplicity matrices compose under tensoring.
Correspondence tensor_power(const Correspondence& c, int k);

} // namespace hyperrig
