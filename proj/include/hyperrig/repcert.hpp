#pragma once

#include <string>
#include <vector>

#include "hyperrig/correspondence.hpp"

namespace hyperrig {

/// Truncated Fock representation of a correspondence.
///
/// The space is the direct sum of levels H_0 .. H_N, where H_0 carries the
/// canonical faithful representation of the algebra and H_{k+1} is the
/// interior tensor product of the module with H_k, realized concretely by
/// diagonalizing the Gram matrix of simple tensors and keeping the
/// non-null part. pi0 acts diagonally through the induced representations;
/// pi1(x) maps level k into level k+1 and annihilates the top level. The
/// homomorphism identity pi0(a) pi1(x) = pi1(a.x) holds everywhere; the
/// inner-product identity holds below the top level, with its defect
/// confined to level N by construction.
class ToeplitzRep {
public:
    const Correspondence& correspondence() const { return corr_; }
    int depth() const { return depth_; }
    int dim() const { return dim_; }
    int level_dim(int k) const { return level_dims_.at(static_cast<std::size_t>(k)); }
    int level_offset(int k) const { return level_offsets_.at(static_cast<std::size_t>(k)); }

    CMatrix pi0(const AlgebraElement& a) const;
    CMatrix pi1(const ModuleElement& x) const;

    /// Orthogonal projection onto level k.
    CMatrix level_projection(int k) const;
    /// Orthogonal projection onto levels 0..k.
    CMatrix projection_through(int k) const;

    /// Representation of the algebra on a single level.
    CMatrix level_rep(int k, const AlgebraElement& a) const;
    /// Creation map of one module basis vector from level k into level k+1.
    const CMatrix& creation(int k, int basis) const;

private:
    friend ToeplitzRep fock_representation(const Correspondence& c, int depth);

    Correspondence corr_;
    int depth_ = 0;
    int dim_ = 0;
    std::vector<int> level_dims_;
    std::vector<int> level_offsets_;
    /// per level, per algebra matrix unit: the induced representation matrix
    std::vector<std::vector<CMatrix>> level_units_;
    /// per level k = 1..N, per module basis index: map level k-1 -> level k
    std::vector<std::vector<CMatrix>> creation_;

    ToeplitzRep(Correspondence c, int depth) : corr_(std::move(c)), depth_(depth) {}
};

ToeplitzRep fock_representation(const Correspondence& c, int depth);

/// The shift-twisted pair built over a truncated Fock representation.
///
/// P is the image of the ideal's unit, Q its complement. The V-side
/// representation twists the Q-part by a truncated unilateral shift on C^M;
/// the U-side uses a truncated bilateral shift on C^(2M+1), indices -M..M,
/// and compresses back to the window 0..M-1. The two sides agree on the
/// generators of the operator space and differ on products exactly where
/// Q pi1(X) is nonzero.
class DilatedPair {
public:
    const ToeplitzRep& rep() const { return rep_; }
    const Ideal& ideal() const { return ideal_; }
    int shift_dim() const { return shift_dim_; }

    const CMatrix& p() const { return p_; }
    const CMatrix& q() const { return q_; }

    /// Truncated unilateral shift on C^M.
    CMatrix unilateral() const;
    /// Truncated bilateral shift on C^(2M+1), free at both ends.
    CMatrix bilateral() const;

    CMatrix tau0_v(const AlgebraElement& a) const;
    CMatrix tau0_u(const AlgebraElement& a) const;
    CMatrix tau1_v(const ModuleElement& x) const;
    CMatrix tau1_u(const ModuleElement& x) const;

    /// Corner compression from the bilateral space onto the window 0..M-1,
    /// applied on the shift leg only.
    CMatrix compress(const CMatrix& t) const;

private:
    friend DilatedPair shift_dilation(const ToeplitzRep& rep, const Ideal& ideal, int shift_dim,
                                      const Tolerance& tol);

    DilatedPair(ToeplitzRep rep, Ideal ideal, int shift_dim, CMatrix p, CMatrix q)
        : rep_(std::move(rep)), ideal_(std::move(ideal)), shift_dim_(shift_dim),
          p_(std::move(p)), q_(std::move(q)) {}

    ToeplitzRep rep_;
    Ideal ideal_;
    int shift_dim_;
    CMatrix p_;
    CMatrix q_;
};

/// Builds the dilated pair and verifies its defining identities: P commutes
/// with pi0, the homomorphism identity for (tau0, tau1_V) holds everywhere,
/// and the inner-product identity holds away from the Fock and shift
/// boundaries. shift_dim must be at least 2.
DilatedPair shift_dilation(const ToeplitzRep& rep, const Ideal& ideal, int shift_dim,
                           const Tolerance& tol = {});

struct CertificateReport {
    bool verdict;               ///< defect <= tol
    double defect;              ///< max over module basis pairs
    double agreement_on_s;      ///< max deviation of the two maps on generators
    double analytic_defect;     ///< max over pairs of ||Q pi1(x) pi1(y)^* Q||
    double max_analytic_gap;    ///< largest |defect - analytic| over all pairs
    double covariance_residual; ///< diagnostic only, never a gate
    int depth;
    int shift_dim;
    double tol;
    Eigen::MatrixXd table;      ///< per-pair defects, module basis order
    std::vector<std::string> warnings;
};

/// Numerical hyperrigidity certificate: evaluates the compressed bilateral
/// map against the unilateral map on the operator-space generators and on
/// all products of module basis pairs. Aborts if the two maps fail to agree
/// on the generators; reports, never absorbs, any gap between the measured
/// per-pair defect and its expected value ||Q pi1(x) pi1(y)^* Q||.
CertificateReport certify(const Correspondence& c, int depth = 2, int shift_dim = 4,
                          const Tolerance& tol = {});

/// Test support: the same two map evaluations done the long way, with full
/// products formed on the bilateral space before compression.
double literal_product_defect(const DilatedPair& dil, const ModuleElement& x,
                              const ModuleElement& y);
double literal_generator_agreement(const DilatedPair& dil);

/// Unital completely positive map in Stinespring form: the compression
/// a -> W^* rho(a) W of the unital *-homomorphism
/// rho(a) = U (I_c (x) a) U^* by an isometry W.
class UcpMap {
public:
    UcpMap(int domain_dim, int multiplicity, CMatrix basis_change, CMatrix isometry,
           const Tolerance& tol = {});

    int domain_dim() const { return domain_dim_; }
    int range_dim() const { return static_cast<int>(isometry_.cols()); }
    int dilation_dim() const { return domain_dim_ * multiplicity_; }

    CMatrix rho(const CMatrix& a) const;
    CMatrix apply(const CMatrix& a) const;

    static UcpMap random_map(int domain_dim, int multiplicity, int range_dim, Rng& rng);

private:
    int domain_dim_;
    int multiplicity_;
    CMatrix basis_change_;
    CMatrix isometry_;
};

/// phi(a b^*) - phi(a) phi(b)^*; positive semidefinite when a = b.
CMatrix schwarz_defect(const UcpMap& phi, const CMatrix& a, const CMatrix& b);

struct BlockPositivity {
    bool block_form_psd; ///< [[I, S^*], [S, M]] is PSD
    bool schur_psd;      ///< S S^* <= M

    bool agree() const { return block_form_psd == schur_psd; }
};

/// Both routes to the positivity of the bordered block matrix with
/// S = [a_row; b_row]: assemble it and test, and test the equivalent
/// Schur-complement condition directly.
BlockPositivity block_positivity(const CMatrix& a_row, const CMatrix& b_row, const CMatrix& m,
                                 const Tolerance& tol = {});

/// Checks the row-matrix bound: given ||phi(A A^*) - phi(A) phi(A)^*|| <= eps,
/// verifies ||phi(A B^*) - phi(A) phi(B)^*||^2 <= 2 eps ||B B^*|| for the
/// supplied rows, within a small fixed slack.
bool epsilon_bound_check(const UcpMap& phi, const std::vector<CMatrix>& a_elems,
                         const std::vector<CMatrix>& b_elems, double eps,
                         const Tolerance& tol = {});

} // namespace hyperrig
