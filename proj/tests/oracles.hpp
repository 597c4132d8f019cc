#pragma once

// Independent oracles used by the tests only. They share no code with the
// library paths they check: scalar minimizers use golden-section search and
// matrix/vector minimizers use subgradient descent with an exact stationarity
// certificate evaluated from the subdifferential at the returned point.

#include <functional>

#include "rlsd/block_map.hpp"
#include "rlsd/types.hpp"

namespace rlsd::oracles {

// Golden-section minimizer of a convex function on [lo, hi].
double golden_section_min(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-12);

// Minimizer of tau*|z| + 1/2 (z - v)^2 by golden-section search.
double prox_abs_scalar(double v, double tau);

template <typename Result>
struct Certified {
    Result value;
    double stationarity;  // dist(0, subdifferential) at value
};

// Minimizer of tau*|Z|_* + 1/2 |Z - V|_F^2 by subgradient descent with
// geometrically decaying steps, small singular values snapped to zero, and
// the distance from 0 to the subdifferential evaluated exactly at the result.
Certified<Matrix> prox_nuclear_subgradient(const Matrix& v, double tau);

// Minimizer of beta*|x|_1 + gamma/2 |A x + o|^2 (A given dense) by the same
// subgradient-descent scheme, coordinates snapped to zero.
Certified<Vector> l1_quadratic_subgradient(const Matrix& a, const Vector& o, double beta,
                                           double gamma);

// Minimizer of beta*|Z|_* + gamma/2 |A vec(Z) + o|^2 with A a dense
// materialization of a block map; used against the inner-loop block update.
Certified<Matrix> nuclear_quadratic_subgradient(const Matrix& a, const Vector& o, double beta,
                                                double gamma, Index rows, Index cols);

}  // namespace rlsd::oracles
