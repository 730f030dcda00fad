#pragma once

#include <vector>

#include <Eigen/Dense>

#include "thetapath/errors.hpp"
#include "thetapath/gaussian_rational.hpp"
#include "thetapath/poly.hpp"

namespace Eigen {

// Storage-only scalar support: ExactMatrix uses Eigen containers for shape and
// block access; all exact arithmetic is written out explicitly.
template <>
struct NumTraits<thetapath::GaussianRational> : GenericNumTraits<thetapath::GaussianRational> {
    using Real = thetapath::GaussianRational;
    using NonInteger = thetapath::GaussianRational;
    using Literal = thetapath::GaussianRational;
    using Nested = thetapath::GaussianRational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 50,
        MulCost = 100
    };
};

}  // namespace Eigen

namespace thetapath {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using ExactMatrix = Eigen::Matrix<GaussianRational, Eigen::Dynamic, Eigen::Dynamic>;
using ExactVector = Eigen::Matrix<GaussianRational, Eigen::Dynamic, 1>;

inline constexpr double kDefaultUnitarityTol = 1e-10;
/// Relative threshold below which a QR pivot / Gram-Schmidt residual counts as
/// rank deficiency.
inline constexpr double kRankTol = 1e-12;
/// Distance to -1 at which an eigenvalue is considered on the branch cut.
inline constexpr double kBranchCutTol = 1e-12;

/// max_ij |(M†M - 1)_ij|
double unitarity_defect(const ComplexMatrix& m);

/// Square complex matrix with ‖U†U − 1‖_max ≤ tol, checked on construction.
class UnitaryMatrix {
public:
    /// Throws ValidationError if the matrix is not square or not unitary.
    explicit UnitaryMatrix(ComplexMatrix m, double tol = kDefaultUnitarityTol);

    static UnitaryMatrix identity(Eigen::Index n) { return UnitaryMatrix(ComplexMatrix::Identity(n, n)); }

    const ComplexMatrix& matrix() const noexcept { return m_; }
    operator const ComplexMatrix&() const noexcept { return m_; }  // NOLINT(implicit)
    Eigen::Index size() const noexcept { return m_.rows(); }
    double tol() const noexcept { return tol_; }
    UnitaryMatrix adjoint() const { return UnitaryMatrix(m_.adjoint(), tol_); }

    friend bool operator==(const UnitaryMatrix& a, const UnitaryMatrix& b) { return a.m_ == b.m_; }

private:
    ComplexMatrix m_;
    double tol_;
};

/// (1 − θ)·A + θ·B
struct MatrixPencil {
    ComplexMatrix a;
    ComplexMatrix b;

    MatrixPencil(ComplexMatrix a_, ComplexMatrix b_);
    ComplexMatrix at(double theta) const { return (1.0 - theta) * a + theta * b; }
};

struct QrResult {
    UnitaryMatrix u;
    ComplexMatrix r;
};

/// Householder QR with the diagonal phase fix: R has a strictly positive real
/// diagonal, which makes the factorization unique. Throws DegeneracyError
/// (naming the column) when min |R_kk| ≤ 1e-12 · max |R_kk|.
QrResult standard_qr(const ComplexMatrix& m);

template <class Derived>
QrResult standard_qr(const Eigen::MatrixBase<Derived>& m) {
    return standard_qr(ComplexMatrix(m));
}

ExactMatrix to_exact(const ComplexMatrix& m);
ComplexMatrix to_complex(const ExactMatrix& m);

/// Orthogonal, unnormalized columns z_1..z_N of the pencil (1−θ)A + θB whose
/// entries are polynomials in θ, with their squared norms ⟨z_k, z_k⟩.
struct PolyMatrix {
    std::vector<PolyVector<GaussianRational>> columns;
    std::vector<ExactPoly> norm_sq;

    std::size_t size() const noexcept { return columns.size(); }
    /// Numeric values of the z_k at θ, column k of the result is z_k(θ).
    ComplexMatrix evaluate(double theta) const;
};

/// Exact unnormalized Gram–Schmidt of the pencil columns m_k(θ):
///
///     z_1 = m_1
///     z_k = (∏_{j<k} ‖z_j‖²) · (m_k − Σ_{j<k} ⟨z_j, m_k⟩ z_j / ‖z_j‖²)
///
/// expanded without division, so each z_k is a polynomial vector of degree at
/// most 3^{k−1}. Throws DegeneracyError naming k when ‖z_k‖² vanishes
/// identically.
PolyMatrix modified_qr_pencil(const ExactMatrix& a, const ExactMatrix& b);

/// Degree bookkeeping for one column of a PolyMatrix.
struct ColumnDegrees {
    int column = 0;           ///< k, 1-based
    int expanded = 0;         ///< max entry degree of z_k as produced by the recursion
    int reduced = 0;          ///< after dividing out the gcd of all entries of z_k
    int v_numerator = 0;      ///< v_k = z_k / ∏_{j<k}‖z_j‖² in lowest terms
    int v_denominator = 0;
    int bound = 0;            ///< 3^{k−1}
};

std::vector<ColumnDegrees> degree_profile(const PolyMatrix& pm);

struct ModifiedQrValue {
    UnitaryMatrix u;
    std::vector<double> norm_sq;  ///< ‖z_k(θ)‖² of the unnormalized columns
};

/// Pointwise evaluation of the unnormalized recursion at θ followed by
/// column normalization. Throws DegeneracyError when a Gram–Schmidt residual
/// ‖v_k‖ falls below 1e-12 · ‖m_k‖.
ModifiedQrValue modified_qr_numeric(const MatrixPencil& pencil, double theta);

/// Principal-branch power W^s of a unitary (normal) matrix via its Schur form.
/// Throws BranchCutError when an eigenvalue is within 1e-12 of −1.
ComplexMatrix unitary_power(const ComplexMatrix& w, double s);

/// U1 · exp(iHθ) with H = −i log(U1† U2).
UnitaryMatrix geodesic_path(const UnitaryMatrix& u1, const UnitaryMatrix& u2, double theta);
/// U1^{1−θ} · U2^{θ}
UnitaryMatrix power_path(const UnitaryMatrix& u1, const UnitaryMatrix& u2, double theta);
/// Unitary factor of the QR decomposition of (1−θ)U1 + θU2.
UnitaryMatrix pencil_qr_path(const UnitaryMatrix& u1, const UnitaryMatrix& u2, double theta);
/// U1 · Q(θ) where Q(θ)R(θ) = (1−θ)·1 + θ·U1†U2.
UnitaryMatrix multiplicative_path(const UnitaryMatrix& u1, const UnitaryMatrix& u2, double theta);

/// Basis of the right nullspace over Q[i], from the reduced row echelon form.
/// One vector per free column, in column order, with that free variable set
/// to 1 and the other free variables set to 0.
std::vector<ExactVector> exact_nullspace(ExactMatrix m);

}  // namespace thetapath
