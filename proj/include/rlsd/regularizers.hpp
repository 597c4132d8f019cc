#pragma once

#include <optional>

#include "rlsd/errors.hpp"
#include "rlsd/types.hpp"

namespace rlsd {

enum class RegKind { L1, Nuclear, Zero, SquaredL2 };

const char* to_string(RegKind kind);

// Per-coordinate bounds lo <= x <= hi.
struct Box {
    Vector lo;
    Vector hi;
};

// Soft threshold, the exact minimizer of tau*|z|_1 + 1/2|z - v|^2.
Vector prox_l1(const Vector& v, double tau);

// Singular-value soft threshold, the exact minimizer of tau*|Z|_* + 1/2|Z - V|_F^2.
Matrix prox_nuclear(const Matrix& v, double tau);

// Coordinatewise clamp of v into [lo, hi].
Vector project_box(const Vector& v, const Vector& lo, const Vector& hi);

// A regularizer f plus constraint set from the closed catalog
//
//   L1         f(x) = beta |x|_1                  (no box)
//   Nuclear    f(X) = beta |X|_*                  (no box; X is rows x cols)
//   Zero       f(x) = 0                           (bounded box required)
//   SquaredL2  f(x) = beta/2 |x|^2                (box optional)
//
// Every instance has an exact prox and a coercive f + indicator, so the
// construction rules double as the coercivity check.
class Regularizer {
public:
    static Regularizer l1(double beta);
    static Regularizer nuclear(double beta, Index rows, Index cols);
    static Regularizer zero(Box box);
    static Regularizer squared_l2(double beta, std::optional<Box> box = {});

    // Generic factory used by deserialization; rejects combinations the
    // catalog has no exact prox for (e.g. L1 or Nuclear with a box).
    static Regularizer make(RegKind kind, double beta, std::optional<Box> box,
                            Index rows = 0, Index cols = 0);

    RegKind kind() const { return kind_; }
    double beta() const { return beta_; }
    const std::optional<Box>& box() const { return box_; }
    Index rows() const { return rows_; }
    Index cols() const { return cols_; }

    // f_i^*: a true lower bound of f on the constraint set.
    double lower_bound() const { return lower_bound_; }

    // f(x); the constraint-set indicator is not included.
    double value(const Vector& x) const;

    // Largest per-coordinate box violation (0 when unconstrained).
    double box_violation(const Vector& x) const;
    bool feasible(const Vector& x, double tol = 1e-9) const;

    // argmin over the constraint set of tau*f(z) + 1/2|z - v|^2, exactly.
    Vector prox(const Vector& v, double tau) const;

    // Throws InvalidInputError unless n matches this regularizer's dimension
    // constraints (box size, rows*cols for Nuclear).
    void check_dim(Index n) const;

private:
    Regularizer(RegKind kind, double beta, std::optional<Box> box, Index rows, Index cols);

    RegKind kind_;
    double beta_;
    std::optional<Box> box_;
    Index rows_ = 0, cols_ = 0;  // matrix shape, Nuclear only
    double lower_bound_ = 0.0;
};

// f3(x) = 1/2 x'Qx + q'x with sigma*I <= Q <= L*I, sigma > 0.
class StronglyConvexSmooth {
public:
    StronglyConvexSmooth(Matrix Q, Vector q, double sigma, double lipschitz);

    // Derives sigma and L from the extreme eigenvalues of Q.
    static StronglyConvexSmooth from_quadratic(Matrix Q, Vector q);

    double value(const Vector& x) const;
    Vector gradient(const Vector& x) const;

    double sigma() const { return sigma_; }
    double lipschitz() const { return lipschitz_; }
    // f3^* = -1/2 q'Q^{-1}q, the analytic minimum.
    double lower_bound() const { return lower_bound_; }
    const Matrix& quadratic() const { return Q_; }
    const Vector& linear() const { return q_; }
    Index dim() const { return Q_.rows(); }

private:
    Matrix Q_;
    Vector q_;
    double sigma_;
    double lipschitz_;
    double lower_bound_;
};

}  // namespace rlsd
