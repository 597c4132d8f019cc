#pragma once

#include <memory>
#include <vector>

#include "rlsd/problem.hpp"

namespace rlsd {

struct CertificateReport;  // diagnostics

struct SolverConfig {
    double gamma = 1.0;         // penalty parameter / dual step size
    int max_iter = 10000;
    double tol_kkt = 1e-8;
    double inner_tol = 1e-10;   // prox-gap target of the inner loop
    int inner_max_iter = 2000;
    bool record_trace = false;
    bool record_iterates = false;  // keep full iterates alongside the scalar trace

    void validate() const;
};

enum class SolveStatus { Converged, MaxIterations, NumericalFailure };

const char* to_string(SolveStatus status);

// Scalars logged once per sweep. d_x1 = |A1(x1^k - x1^{k-1})|,
// d_x2 = |A2(x2^k - x2^{k-1})|, d_x3 = |x3^k - x3^{k-1}|, d_lambda likewise.
struct TraceRecord {
    int k = 0;
    double objective = 0.0;
    double lagrangian = 0.0;
    double primal_residual = 0.0;
    double kkt_max = 0.0;
    double d_x1 = 0.0;
    double d_x2 = 0.0;
    double d_x3 = 0.0;
    double d_lambda = 0.0;
};

struct IterateSnapshot {
    Vector x1, x2, x3, lambda;
};

struct Trace {
    bool canonical_path = true;
    std::vector<TraceRecord> records;
    std::vector<IterateSnapshot> iterates;  // parallel to records when recorded

    bool has_iterates() const { return !iterates.empty(); }
};

struct IterateState {
    int k = 0;
    Vector x1, x2, x3, lambda;
    Vector residual;  // cached A1 x1 + A2 x2 + x3 - b
};

struct SolveResult {
    IterateState state;
    SolveStatus status = SolveStatus::MaxIterations;
    int iterations = 0;
    double objective = 0.0;
    KktResidual final_kkt;
    Trace trace;
    std::string failure_message;  // set on NumericalFailure
    std::shared_ptr<const CertificateReport> certificate;  // attached by diagnostics
};

// x3 = (lambda - gamma * s) / (gamma + 1) with s = A1 x1 + A2 x2 - b.
Vector update_x3_closed_form(const Vector& lambda, const Vector& s, double gamma);

// Solves (Q + gamma I) x3 = lambda - gamma * s - q.
Vector update_x3_general(const StronglyConvexSmooth& f3, const Vector& lambda, const Vector& s,
                         double gamma);

// argmin over the block's constraint set of f(x) + gamma/2 |A x + others|^2.
// Exact when A^T A = c I; otherwise an accelerated proximal-gradient loop is
// run from warm_start until the unit-step prox gap falls below inner_tol.
// Throws NumericalError with the achieved gap if inner_max_iter is exhausted.
Vector update_block(const BlockMap& map, const Regularizer& reg, const Vector& others,
                    double gamma, double inner_tol, int inner_max_iter,
                    const Vector& warm_start);

// x2 = x3 = lambda = 0; x1 = projection of 0 onto the block-1 constraint set
// (equal to 0 whenever the set contains it).
IterateState initial_state(const RlsdProblem& p);

// One Gauss-Seidel sweep x1 -> x2 -> x3 followed by the dual update
// lambda^{k+1} = lambda^k - gamma * r^{k+1}.
void step(const RlsdProblem& p, const SolverConfig& cfg, IterateState& state);

SolveResult solve(const RlsdProblem& p, const SolverConfig& cfg);

}  // namespace rlsd
