#include "rlsd/regularizers.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <sstream>
#include <utility>

namespace rlsd {

namespace {

void require_finite(const Vector& v, const char* what) {
    if (!v.allFinite()) throw InvalidInputError(std::string(what) + ": non-finite entries");
}

void require_positive(double tau, const char* what) {
    if (!(tau > 0) || !std::isfinite(tau))
        throw InvalidInputError(std::string(what) + ": step must be positive and finite");
}

}  // namespace

const char* to_string(RegKind kind) {
    switch (kind) {
        case RegKind::L1: return "l1";
        case RegKind::Nuclear: return "nuclear";
        case RegKind::Zero: return "zero";
        case RegKind::SquaredL2: return "squared_l2";
    }
    return "?";
}

Vector prox_l1(const Vector& v, double tau) {
    require_positive(tau, "prox_l1");
    require_finite(v, "prox_l1");
    return v.unaryExpr([tau](double x) {
        double m = std::abs(x) - tau;
        return m > 0 ? (x > 0 ? m : -m) : 0.0;
    });
}

Matrix prox_nuclear(const Matrix& v, double tau) {
    require_positive(tau, "prox_nuclear");
    if (!v.allFinite()) throw InvalidInputError("prox_nuclear: non-finite entries");
    Eigen::BDCSVD<Matrix> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "prox_nuclear: SVD failed on " << v.rows() << "x" << v.cols()
            << " matrix, |V|_F=" << v.norm();
        throw NumericalError(msg.str());
    }
    Vector s = svd.singularValues();
    for (Index i = 0; i < s.size(); ++i) s[i] = std::max(s[i] - tau, 0.0);
    return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

Vector project_box(const Vector& v, const Vector& lo, const Vector& hi) {
    if (lo.size() != v.size() || hi.size() != v.size())
        throw InvalidInputError("project_box: dimension mismatch");
    if ((lo.array() > hi.array()).any())
        throw InvalidInputError("project_box: lo > hi");
    return v.cwiseMax(lo).cwiseMin(hi);
}

Regularizer::Regularizer(RegKind kind, double beta, std::optional<Box> box, Index rows, Index cols)
    : kind_(kind), beta_(beta), box_(std::move(box)), rows_(rows), cols_(cols) {
    if (!(beta_ >= 0) || !std::isfinite(beta_))
        throw InvalidInputError("regularizer: beta must be finite and >= 0");
    if (box_) {
        if (box_->lo.size() != box_->hi.size())
            throw InvalidInputError("regularizer: box lo/hi sizes differ");
        if ((box_->lo.array() > box_->hi.array()).any())
            throw InvalidInputError("regularizer: box lo > hi");
    }
}

Regularizer Regularizer::l1(double beta) {
    if (!(beta > 0)) throw InvalidInputError("l1 regularizer: beta must be > 0 (coercivity)");
    return Regularizer(RegKind::L1, beta, {}, 0, 0);
}

Regularizer Regularizer::nuclear(double beta, Index rows, Index cols) {
    if (!(beta > 0)) throw InvalidInputError("nuclear regularizer: beta must be > 0 (coercivity)");
    if (rows < 1 || cols < 1) throw InvalidInputError("nuclear regularizer: matrix shape required");
    return Regularizer(RegKind::Nuclear, beta, {}, rows, cols);
}

Regularizer Regularizer::zero(Box box) {
    if (!box.lo.allFinite() || !box.hi.allFinite())
        throw InvalidInputError("zero regularizer: bounded box required (coercivity)");
    return Regularizer(RegKind::Zero, 0.0, std::move(box), 0, 0);
}

Regularizer Regularizer::squared_l2(double beta, std::optional<Box> box) {
    if (!(beta > 0)) throw InvalidInputError("squared_l2 regularizer: beta must be > 0 (coercivity)");
    return Regularizer(RegKind::SquaredL2, beta, std::move(box), 0, 0);
}

Regularizer Regularizer::make(RegKind kind, double beta, std::optional<Box> box,
                              Index rows, Index cols) {
    switch (kind) {
        case RegKind::L1:
            if (box) throw UnsupportedCombinationError("l1 with box has no exact prox");
            return l1(beta);
        case RegKind::Nuclear:
            if (box) throw UnsupportedCombinationError("nuclear with box has no exact prox");
            return nuclear(beta, rows, cols);
        case RegKind::Zero:
            if (!box) throw InvalidInputError("zero regularizer requires a box");
            return zero(std::move(*box));
        case RegKind::SquaredL2:
            return squared_l2(beta, std::move(box));
    }
    throw InvalidInputError("unknown regularizer kind");
}

double Regularizer::value(const Vector& x) const {
    check_dim(x.size());
    switch (kind_) {
        case RegKind::L1: return beta_ * x.lpNorm<1>();
        case RegKind::Nuclear: {
            Eigen::BDCSVD<Matrix> svd(as_matrix(x, rows_, cols_));
            return beta_ * svd.singularValues().sum();
        }
        case RegKind::Zero: return 0.0;
        case RegKind::SquaredL2: return 0.5 * beta_ * x.squaredNorm();
    }
    return 0.0;
}

double Regularizer::box_violation(const Vector& x) const {
    if (!box_) return 0.0;
    double v = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
        v = std::max(v, box_->lo[i] - x[i]);
        v = std::max(v, x[i] - box_->hi[i]);
    }
    return v;
}

bool Regularizer::feasible(const Vector& x, double tol) const {
    return box_violation(x) <= tol;
}

Vector Regularizer::prox(const Vector& v, double tau) const {
    check_dim(v.size());
    require_positive(tau, "prox");
    switch (kind_) {
        case RegKind::L1: return prox_l1(v, tau * beta_);
        case RegKind::Nuclear: {
            Matrix z = prox_nuclear(as_matrix(v, rows_, cols_), tau * beta_);
            return as_vector(z);
        }
        case RegKind::Zero: return project_box(v, box_->lo, box_->hi);
        case RegKind::SquaredL2: {
            Vector z = v / (1.0 + tau * beta_);
            if (box_) z = project_box(z, box_->lo, box_->hi);
            return z;
        }
    }
    throw InvalidInputError("prox: unknown regularizer kind");
}

void Regularizer::check_dim(Index n) const {
    if (box_ && box_->lo.size() != n)
        throw InvalidInputError("regularizer: box dimension mismatch");
    if (kind_ == RegKind::Nuclear && rows_ * cols_ != n)
        throw InvalidInputError("nuclear regularizer: vector length != rows*cols");
}

StronglyConvexSmooth::StronglyConvexSmooth(Matrix Q, Vector q, double sigma, double lipschitz)
    : Q_(std::move(Q)), q_(std::move(q)), sigma_(sigma), lipschitz_(lipschitz) {
    if (Q_.rows() != Q_.cols()) throw InvalidInputError("f3: Q must be square");
    if (q_.size() != Q_.rows()) throw InvalidInputError("f3: q dimension mismatch");
    if (!Q_.allFinite() || !q_.allFinite()) throw InvalidInputError("f3: non-finite entries");
    double scale = 1.0 + Q_.cwiseAbs().maxCoeff();
    if ((Q_ - Q_.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw InvalidInputError("f3: Q must be symmetric");
    if (!(sigma_ > 0) || !(lipschitz_ > 0) || sigma_ > lipschitz_)
        throw InvalidInputError("f3: need 0 < sigma <= L");

    Eigen::SelfAdjointEigenSolver<Matrix> eig(Q_, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw NumericalError("f3: eigenvalue computation failed");
    const double tol = 1e-10 * scale;
    if (eig.eigenvalues().minCoeff() < sigma_ - tol)
        throw InvalidInputError("f3: Q has an eigenvalue below sigma");
    if (eig.eigenvalues().maxCoeff() > lipschitz_ + tol)
        throw InvalidInputError("f3: Q has an eigenvalue above L");

    Eigen::LDLT<Matrix> ldlt(Q_);
    if (ldlt.info() != Eigen::Success) throw NumericalError("f3: Q factorization failed");
    lower_bound_ = -0.5 * q_.dot(ldlt.solve(q_));
}

StronglyConvexSmooth StronglyConvexSmooth::from_quadratic(Matrix Q, Vector q) {
    if (Q.rows() != Q.cols()) throw InvalidInputError("f3: Q must be square");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(Q, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw NumericalError("f3: eigenvalue computation failed");
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0)) throw InvalidInputError("f3: Q must be positive definite");
    return StronglyConvexSmooth(std::move(Q), std::move(q), lo, hi);
}

double StronglyConvexSmooth::value(const Vector& x) const {
    return 0.5 * x.dot(Q_ * x) + q_.dot(x);
}

Vector StronglyConvexSmooth::gradient(const Vector& x) const {
    return Q_ * x + q_;
}

}  // namespace rlsd
