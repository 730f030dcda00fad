#include "thetapath/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace thetapath {

double unitarity_defect(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return INFINITY;
    const ComplexMatrix d = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
    return d.cwiseAbs().maxCoeff();
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tol) : m_(std::move(m)), tol_(tol) {
    if (m_.rows() < 1 || m_.rows() != m_.cols())
        throw ValidationError("unitary matrix must be square and non-empty");
    const double defect = unitarity_defect(m_);
    if (!(defect <= tol_)) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "matrix is not unitary: defect %.3g > tol %.3g", defect, tol_);
        throw ValidationError(msg);
    }
}

MatrixPencil::MatrixPencil(ComplexMatrix a_, ComplexMatrix b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw UsageError("pencil matrices differ in shape");
}

QrResult standard_qr(const ComplexMatrix& m) {
    if (m.rows() < 1 || m.rows() != m.cols()) throw UsageError("standard_qr expects a square matrix");
    const Eigen::Index n = m.rows();
    Eigen::HouseholderQR<ComplexMatrix> qr(m);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();

    double largest = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) largest = std::max(largest, std::abs(r(k, k)));
    for (Eigen::Index k = 0; k < n; ++k) {
        const double mag = std::abs(r(k, k));
        if (largest == 0.0 || mag <= kRankTol * largest)
            throw DegeneracyError("rank-deficient matrix at column " + std::to_string(k), static_cast<int>(k));
        const Complex phase = r(k, k) / mag;
        if (phase != Complex(1.0, 0.0)) {
            q.col(k) *= phase;
            r.row(k) *= std::conj(phase);
        }
        r(k, k) = mag;
    }
    return {UnitaryMatrix(std::move(q)), std::move(r)};
}

ExactMatrix to_exact(const ComplexMatrix& m) {
    ExactMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = GaussianRational::from_complex(m(i, j));
    return out;
}

ComplexMatrix to_complex(const ExactMatrix& m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex();
    return out;
}

ComplexMatrix PolyMatrix::evaluate(double theta) const {
    const auto n = static_cast<Eigen::Index>(columns.empty() ? 0 : columns.front().size());
    ComplexMatrix out(n, static_cast<Eigen::Index>(columns.size()));
    const GaussianRational t = GaussianRational::from_double(theta);
    for (std::size_t k = 0; k < columns.size(); ++k)
        for (Eigen::Index i = 0; i < n; ++i)
            out(i, static_cast<Eigen::Index>(k)) = columns[k][static_cast<std::size_t>(i)](t).to_complex();
    return out;
}

PolyMatrix modified_qr_pencil(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows() != a.cols() || a.rows() < 1) throw UsageError("modified_qr_pencil expects square matrices");
    if (b.rows() != a.rows() || b.cols() != a.cols()) throw UsageError("pencil matrices differ in shape");
    const auto n = static_cast<std::size_t>(a.rows());

    // m_k(θ) = a_k + θ (b_k − a_k)
    std::vector<PolyVector<GaussianRational>> m(n, PolyVector<GaussianRational>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            const auto& aik = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
            const auto& bik = b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
            m[k][i] = ExactPoly::linear(aik, bik - aik);
        }

    PolyMatrix pm;
    pm.columns.reserve(n);
    pm.norm_sq.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        // products of all previous norms, and of all but the j-th one
        ExactPoly all(GaussianRational(1));
        for (std::size_t j = 0; j < k; ++j) all = all * pm.norm_sq[j];

        PolyVector<GaussianRational> z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = all * m[k][i];
        for (std::size_t j = 0; j < k; ++j) {
            ExactPoly others(GaussianRational(1));
            for (std::size_t l = 0; l < k; ++l)
                if (l != j) others = others * pm.norm_sq[l];
            const ExactPoly coef = others * inner(pm.columns[j], m[k]);
            if (coef.is_zero()) continue;
            for (std::size_t i = 0; i < n; ++i) z[i] -= coef * pm.columns[j][i];
        }
        ExactPoly nsq = inner(z, z);
        if (nsq.is_zero())
            throw DegeneracyError("pencil is rank deficient: column " + std::to_string(k + 1) + " vanishes",
                                  static_cast<int>(k + 1));
        pm.columns.push_back(std::move(z));
        pm.norm_sq.push_back(std::move(nsq));
    }
    return pm;
}

std::vector<ColumnDegrees> degree_profile(const PolyMatrix& pm) {
    std::vector<ColumnDegrees> out;
    ExactPoly prior(GaussianRational(1));
    int bound = 1;
    for (std::size_t k = 0; k < pm.size(); ++k) {
        const auto& z = pm.columns[k];
        ExactPoly content;
        for (const auto& p : z) content = poly_gcd(content, p);
        const ExactPoly common = poly_gcd(content, prior);

        ColumnDegrees d;
        d.column = static_cast<int>(k + 1);
        d.expanded = max_degree(z);
        d.reduced = d.expanded - content.degree();
        d.v_numerator = d.expanded - common.degree();
        d.v_denominator = prior.degree() - common.degree();
        d.bound = bound;
        out.push_back(d);

        prior = prior * pm.norm_sq[k];
        bound *= 3;
    }
    return out;
}

ModifiedQrValue modified_qr_numeric(const MatrixPencil& pencil, double theta) {
    const ComplexMatrix m = pencil.at(theta);
    if (m.rows() != m.cols() || m.rows() < 1) throw UsageError("modified_qr_numeric expects a square pencil");
    const Eigen::Index n = m.rows();

    ComplexMatrix z(n, n);
    std::vector<double> nsq;
    nsq.reserve(static_cast<std::size_t>(n));
    double prior = 1.0;  // ∏_{j<k} ‖z_j‖²
    for (Eigen::Index k = 0; k < n; ++k) {
        ComplexVector col = prior * m.col(k);
        for (Eigen::Index j = 0; j < k; ++j) {
            double others = 1.0;
            for (Eigen::Index l = 0; l < k; ++l)
                if (l != j) others *= nsq[static_cast<std::size_t>(l)];
            col -= (others * z.col(j).dot(m.col(k))) * z.col(j);
        }
        const double residual = col.norm() / prior;  // ‖v_k‖
        if (!(residual >= kRankTol * m.col(k).norm()) || residual == 0.0)
            throw DegeneracyError("pencil is rank deficient at column " + std::to_string(k + 1),
                                  static_cast<int>(k + 1));
        z.col(k) = col;
        nsq.push_back(col.squaredNorm());
        prior *= nsq.back();
    }
    ComplexMatrix u(n, n);
    for (Eigen::Index k = 0; k < n; ++k) u.col(k) = z.col(k) / std::sqrt(nsq[static_cast<std::size_t>(k)]);
    return {UnitaryMatrix(std::move(u)), std::move(nsq)};
}

ComplexMatrix unitary_power(const ComplexMatrix& w, double s) {
    Eigen::ComplexSchur<ComplexMatrix> schur(w);
    const ComplexMatrix& q = schur.matrixU();
    const ComplexMatrix& t = schur.matrixT();
    ComplexVector phases(t.rows());
    for (Eigen::Index k = 0; k < t.rows(); ++k) {
        const Complex lambda = t(k, k);
        if (std::abs(lambda + 1.0) < kBranchCutTol)
            throw BranchCutError("eigenvalue at -1: principal logarithm is ill-conditioned", static_cast<int>(k));
        phases(k) = std::polar(1.0, s * std::arg(lambda));
    }
    return q * phases.asDiagonal() * q.adjoint();
}

namespace {

void check_pair(const UnitaryMatrix& u1, const UnitaryMatrix& u2) {
    if (u1.size() != u2.size()) throw UsageError("path endpoints differ in size");
}

}  // namespace

UnitaryMatrix geodesic_path(const UnitaryMatrix& u1, const UnitaryMatrix& u2, double theta) {
    check_pair(u1, u2);
    const ComplexMatrix step = unitary_power(u1.matrix().adjoint() * u2.matrix(), theta);
    if (theta == 0.0) return u1;
    return UnitaryMatrix(u1.matrix() * step);
}

UnitaryMatrix power_path(const UnitaryMatrix& u1, const UnitaryMatrix& u2, double theta) {
    check_pair(u1, u2);
    const ComplexMatrix left = unitary_power(u1, 1.0 - theta);
    const ComplexMatrix right = unitary_power(u2, theta);
    if (theta == 0.0) return u1;
    if (theta == 1.0) return u2;
    return UnitaryMatrix(left * right);
}

UnitaryMatrix pencil_qr_path(const UnitaryMatrix& u1, const UnitaryMatrix& u2, double theta) {
    check_pair(u1, u2);
    return standard_qr((1.0 - theta) * u1.matrix() + theta * u2.matrix()).u;
}

UnitaryMatrix multiplicative_path(const UnitaryMatrix& u1, const UnitaryMatrix& u2, double theta) {
    check_pair(u1, u2);
    const Eigen::Index n = u1.size();
    const ComplexMatrix w = u1.matrix().adjoint() * u2.matrix();
    const QrResult qr = standard_qr((1.0 - theta) * ComplexMatrix::Identity(n, n) + theta * w);
    return UnitaryMatrix(u1.matrix() * qr.u.matrix());
}

std::vector<ExactVector> exact_nullspace(ExactMatrix m) {
    const Eigen::Index rows = m.rows();
    const Eigen::Index cols = m.cols();
    std::vector<Eigen::Index> pivot_cols;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index p = r;
        while (p < rows && m(p, c).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r) m.row(p).swap(m.row(r));
        const GaussianRational inv = GaussianRational(1) / m(r, c);
        for (Eigen::Index j = c; j < cols; ++j) m(r, j) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const GaussianRational f = m(i, c);
            for (Eigen::Index j = c; j < cols; ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        pivot_cols.push_back(c);
        ++r;
    }

    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (auto c : pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<ExactVector> basis;
    for (Eigen::Index f = 0; f < cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        ExactVector v = ExactVector::Constant(cols, GaussianRational(0));
        v(f) = GaussianRational(1);
        for (std::size_t k = 0; k < pivot_cols.size(); ++k) v(pivot_cols[k]) = -m(static_cast<Eigen::Index>(k), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace thetapath
