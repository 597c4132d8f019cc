#pragma once

#include <optional>

#include "rlsd/block_map.hpp"
#include "rlsd/regularizers.hpp"
#include "rlsd/types.hpp"

namespace rlsd {

// Residuals of the optimality system. stationarity1/2 are prox fixed-point
// gaps |x_i - prox_{f_i}(x_i + A_i' lambda)| with unit step, which vanish
// exactly at points satisfying the block variational inequalities.
struct KktResidual {
    double stationarity1 = 0.0;
    double stationarity2 = 0.0;
    double dual3 = 0.0;   // |grad f3(x3) - lambda|
    double primal = 0.0;  // |A1 x1 + A2 x2 + x3 - b|
    double max = 0.0;
};

// min f1(x1) + f2(x2) + f3(x3)  s.t.  A1 x1 + A2 x2 + x3 = b,  x_i in X_i.
// f3 is 1/2|x3|^2 unless a strongly convex quadratic is supplied.
// Immutable after construction; all evaluations are pure.
class RlsdProblem {
public:
    RlsdProblem(BlockMap map1, Regularizer reg1, BlockMap map2, Regularizer reg2,
                Vector b, std::optional<StronglyConvexSmooth> f3 = {});

    const BlockMap& map1() const { return map1_; }
    const BlockMap& map2() const { return map2_; }
    const Regularizer& reg1() const { return reg1_; }
    const Regularizer& reg2() const { return reg2_; }
    const Vector& b() const { return b_; }

    bool canonical() const { return !f3_.has_value(); }
    const std::optional<StronglyConvexSmooth>& f3_quadratic() const { return f3_; }

    Index dim1() const { return map1_.input_dim(); }
    Index dim2() const { return map2_.input_dim(); }
    Index dim3() const { return b_.size(); }

    double f3_value(const Vector& x3) const;
    Vector f3_gradient(const Vector& x3) const;
    double f3_sigma() const;
    double f3_lipschitz() const;
    double f3_lower_bound() const;

    // Both maps satisfy the full-column-rank assumption.
    bool assumptions_hold() const;

    Vector residual(const Vector& x1, const Vector& x2, const Vector& x3) const;
    double constraint_violation(const Vector& x1, const Vector& x2, const Vector& x3) const;

    // f1 + f2 + f3; throws InfeasiblePointError if a block violates its
    // constraint set by more than 1e-9.
    double objective(const Vector& x1, const Vector& x2, const Vector& x3) const;

    double augmented_lagrangian(const Vector& x1, const Vector& x2, const Vector& x3,
                                const Vector& lambda, double gamma) const;

    KktResidual kkt_residual(const Vector& x1, const Vector& x2, const Vector& x3,
                             const Vector& lambda) const;

private:
    void check_dims(const Vector& x1, const Vector& x2, const Vector& x3) const;

    BlockMap map1_, map2_;
    Regularizer reg1_, reg2_;
    Vector b_;
    std::optional<StronglyConvexSmooth> f3_;
};

}  // namespace rlsd
