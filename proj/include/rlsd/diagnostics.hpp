#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rlsd/gamma_range.hpp"
#include "rlsd/solver.hpp"

namespace rlsd {

// Penalty regime a trace is certified under. High/Mid/Low apply to the
// canonical f3 = 1/2|x3|^2 path; ExtendedHigh/ExtendedRange to strongly
// convex smooth f3. Uncertified still carries an empirical report.
enum class Regime { High, Mid, Low, ExtendedHigh, ExtendedRange, Uncertified };

const char* to_string(Regime regime);

struct CertificateCheck {
    std::string name;
    std::string anchor;  // statement of the monitored quantity/inequality
    bool pass = true;
    double worst_violation = 0.0;  // largest raw violation seen (before slack)
    int at_iteration = -1;         // trace index of the worst violation
};

// High-accuracy optimal point used by the distance-based potentials.
struct ReferenceSolution {
    Vector x1, x2, x3, lambda;
    std::string provenance;
    double kkt_max = 0.0;
};

struct CertifyOptions {
    double eta1 = 3.0;
    double eta2 = 4.0;
    // Low-regime potential weight; defaults to 3 on the canonical path and
    // 2*eta2/(eta2-2) + 1 on the general path.
    std::optional<double> epsilon;
    double slack_scale = 1e-9;  // slack = slack_scale * (1 + magnitude)
};

struct CertificateReport {
    Regime regime = Regime::Uncertified;
    std::vector<CertificateCheck> checks;
    std::optional<std::string> reference_used;

    bool all_pass() const;
    std::vector<std::string> failed_names() const;
};

// M = min{gamma/2, (gamma+sigma)/2 - L^2/gamma}; the canonical path takes
// sigma = L = 1. May be <= 0, in which case no descent certificate exists.
double decrease_margin(double gamma, double sigma, double lipschitz);

// Sufficient-descent certificate: per-sweep Lagrangian decrease of at least
// M * (|A1 dx1|^2 + |A2 dx2|^2 + |dx3|^2), uniform lower bound on L_gamma,
// and square-summability of the step norms.
std::vector<CertificateCheck> check_high_gamma(const Trace& trace, const RlsdProblem& p,
                                               double gamma, double slack_scale = 1e-9);

// Phi^k = |lambda-lambda*|^2/(2 gamma) + gamma/2 |A2(x2-x2*)|^2 + gamma/2 |x3-x3*|^2.
double lyapunov_mid(const RlsdProblem& p, const IterateSnapshot& state,
                    const ReferenceSolution& ref, double gamma);

// Phi^k + (gamma*epsilon/2) |x3^k - x3^{k-1}|^2.
double lyapunov_low(const RlsdProblem& p, const IterateSnapshot& state,
                    const IterateSnapshot& prev, const ReferenceSolution& ref, double gamma,
                    double epsilon);

// Worst relative deviation max_{k>=1} |x3^k - lambda^k| / (1 + |lambda^k|).
// Throws NotApplicableError on a general-path trace.
double check_identity_x3_lambda(const Trace& trace, int* worst_iteration = nullptr);

// Long solve at the reference penalty (gamma = 2 when admissible) down to
// kkt <= 1e-12; throws NumericalError if 1e-11 is not reached.
ReferenceSolution compute_reference(const RlsdProblem& p);

// Selects the regime from gamma (and the problem's f3), runs every
// applicable check, and reports Uncertified when gamma lies outside all
// certified ranges or a full-column-rank assumption fails. Mid/Low and
// ExtendedRange regimes require a reference solution.
CertificateReport certify(const Trace& trace, const RlsdProblem& p, const SolverConfig& cfg,
                          const std::optional<ReferenceSolution>& ref = {},
                          const CertifyOptions& opts = {});

}  // namespace rlsd
