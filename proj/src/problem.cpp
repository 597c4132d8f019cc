#include "rlsd/problem.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace rlsd {

RlsdProblem::RlsdProblem(BlockMap map1, Regularizer reg1, BlockMap map2, Regularizer reg2,
                         Vector b, std::optional<StronglyConvexSmooth> f3)
    : map1_(std::move(map1)),
      map2_(std::move(map2)),
      reg1_(std::move(reg1)),
      reg2_(std::move(reg2)),
      b_(std::move(b)),
      f3_(std::move(f3)) {
    if (b_.size() < 1) throw InvalidInputError("problem: b is empty");
    if (!b_.allFinite()) throw InvalidInputError("problem: b has non-finite entries");
    if (map1_.output_dim() != b_.size() || map2_.output_dim() != b_.size())
        throw InvalidInputError("problem: block map output dimension != dim(b)");
    if (map1_.kind() == MapKind::Empty && map2_.kind() == MapKind::Empty)
        throw InvalidInputError("problem: at most one block may be empty");
    reg1_.check_dim(map1_.input_dim());
    reg2_.check_dim(map2_.input_dim());
    if (f3_ && f3_->dim() != b_.size())
        throw InvalidInputError("problem: f3 dimension != dim(b)");
}

double RlsdProblem::f3_value(const Vector& x3) const {
    return f3_ ? f3_->value(x3) : 0.5 * x3.squaredNorm();
}

Vector RlsdProblem::f3_gradient(const Vector& x3) const {
    return f3_ ? f3_->gradient(x3) : x3;
}

double RlsdProblem::f3_sigma() const { return f3_ ? f3_->sigma() : 1.0; }
double RlsdProblem::f3_lipschitz() const { return f3_ ? f3_->lipschitz() : 1.0; }
double RlsdProblem::f3_lower_bound() const { return f3_ ? f3_->lower_bound() : 0.0; }

bool RlsdProblem::assumptions_hold() const {
    return map1_.full_column_rank() && map2_.full_column_rank();
}

void RlsdProblem::check_dims(const Vector& x1, const Vector& x2, const Vector& x3) const {
    if (x1.size() != dim1() || x2.size() != dim2() || x3.size() != dim3())
        throw InvalidInputError("problem: iterate dimension mismatch");
}

Vector RlsdProblem::residual(const Vector& x1, const Vector& x2, const Vector& x3) const {
    check_dims(x1, x2, x3);
    return map1_.apply(x1) + map2_.apply(x2) + x3 - b_;
}

double RlsdProblem::constraint_violation(const Vector& x1, const Vector& x2,
                                         const Vector& x3) const {
    return residual(x1, x2, x3).norm();
}

double RlsdProblem::objective(const Vector& x1, const Vector& x2, const Vector& x3) const {
    check_dims(x1, x2, x3);
    const double v1 = reg1_.box_violation(x1);
    const double v2 = reg2_.box_violation(x2);
    if (std::max(v1, v2) > 1e-9)
        throw InfeasiblePointError("objective: point violates its constraint set");
    return reg1_.value(x1) + reg2_.value(x2) + f3_value(x3);
}

double RlsdProblem::augmented_lagrangian(const Vector& x1, const Vector& x2, const Vector& x3,
                                         const Vector& lambda, double gamma) const {
    if (!(gamma > 0)) throw InvalidInputError("augmented_lagrangian: gamma must be > 0");
    if (lambda.size() != dim3()) throw InvalidInputError("augmented_lagrangian: lambda dimension");
    const Vector r = residual(x1, x2, x3);
    return objective(x1, x2, x3) - lambda.dot(r) + 0.5 * gamma * r.squaredNorm();
}

KktResidual RlsdProblem::kkt_residual(const Vector& x1, const Vector& x2, const Vector& x3,
                                      const Vector& lambda) const {
    check_dims(x1, x2, x3);
    if (lambda.size() != dim3()) throw InvalidInputError("kkt_residual: lambda dimension");
    KktResidual r;
    if (map1_.kind() != MapKind::Empty)
        r.stationarity1 = (x1 - reg1_.prox(x1 + map1_.apply_transpose(lambda), 1.0)).norm();
    if (map2_.kind() != MapKind::Empty)
        r.stationarity2 = (x2 - reg2_.prox(x2 + map2_.apply_transpose(lambda), 1.0)).norm();
    r.dual3 = (f3_gradient(x3) - lambda).norm();
    r.primal = constraint_violation(x1, x2, x3);
    r.max = std::max({r.stationarity1, r.stationarity2, r.dual3, r.primal});
    return r;
}

}  // namespace rlsd
