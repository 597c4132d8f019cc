#include "rlsd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rlsd {

const char* to_string(Regime regime) {
    switch (regime) {
        case Regime::High: return "High";
        case Regime::Mid: return "Mid";
        case Regime::Low: return "Low";
        case Regime::ExtendedHigh: return "ExtendedHigh";
        case Regime::ExtendedRange: return "ExtendedRange";
        case Regime::Uncertified: return "Uncertified";
    }
    return "?";
}

bool CertificateReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CertificateCheck& c) { return c.pass; });
}

std::vector<std::string> CertificateReport::failed_names() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (!c.pass) out.push_back(c.name);
    return out;
}

double decrease_margin(double gamma, double sigma, double lipschitz) {
    if (!(gamma > 0) || !(sigma > 0) || !(lipschitz > 0))
        throw InvalidInputError("decrease_margin: gamma, sigma, L must be > 0");
    return std::min(0.5 * gamma, 0.5 * (gamma + sigma) - lipschitz * lipschitz / gamma);
}

namespace {

void require_records(const Trace& trace) {
    if (trace.records.empty()) throw InvalidInputError("trace has no records");
}

void require_iterates(const Trace& trace) {
    require_records(trace);
    if (trace.iterates.size() != trace.records.size())
        throw InvalidInputError("trace lacks recorded iterates");
}

// Monotonicity of a scalar sequence from index k0, with per-transition slack
// scale*(1 + |value|). Worst raw violation and its index are reported even
// when they stay within slack.
CertificateCheck monotone_check(const std::string& name, const std::string& anchor,
                                const std::vector<double>& values, size_t k0,
                                double slack_scale) {
    CertificateCheck check;
    check.name = name;
    check.anchor = anchor;
    for (size_t k = k0; k + 1 < values.size(); ++k) {
        const double rise = values[k + 1] - values[k];
        if (rise > check.worst_violation) {
            check.worst_violation = rise;
            check.at_iteration = static_cast<int>(k + 1);
        }
        if (rise > slack_scale * (1.0 + std::abs(values[k]))) check.pass = false;
    }
    return check;
}

}  // namespace

std::vector<CertificateCheck> check_high_gamma(const Trace& trace, const RlsdProblem& p,
                                               double gamma, double slack_scale) {
    require_records(trace);
    const auto& recs = trace.records;
    const size_t k0 = trace.canonical_path ? 0 : 1;  // gradient/dual identities start at k=1
    const double margin = decrease_margin(gamma, p.f3_sigma(), p.f3_lipschitz());
    const double slack = slack_scale * (1.0 + std::abs(recs.front().lagrangian));
    const double lower = p.reg1().lower_bound() + p.reg2().lower_bound() +
                         (trace.canonical_path ? 0.0 : p.f3_lower_bound());

    std::vector<CertificateCheck> checks;

    CertificateCheck descent;
    descent.name = "lagrangian_descent";
    descent.anchor =
        "L_gamma(w^k) - L_gamma(w^{k+1}) >= M*(|A1 dx1|^2 + |A2 dx2|^2 + |dx3|^2), "
        "M = min{gamma/2, (gamma+sigma)/2 - L^2/gamma}";
    double steps_sq_sum = 0.0;
    for (size_t k = k0; k + 1 < recs.size(); ++k) {
        const TraceRecord& next = recs[k + 1];
        const double steps_sq =
            next.d_x1 * next.d_x1 + next.d_x2 * next.d_x2 + next.d_x3 * next.d_x3;
        steps_sq_sum += steps_sq;
        const double viol = margin * steps_sq - (recs[k].lagrangian - next.lagrangian);
        if (viol > descent.worst_violation) {
            descent.worst_violation = viol;
            descent.at_iteration = static_cast<int>(k + 1);
        }
        if (viol > slack) descent.pass = false;
    }
    checks.push_back(std::move(descent));

    CertificateCheck bound;
    bound.name = "lagrangian_lower_bound";
    bound.anchor = trace.canonical_path ? "L_gamma(w^k) >= f1* + f2*"
                                        : "L_gamma(w^k) >= f1* + f2* + f3*";
    const double bound_slack = slack_scale * (1.0 + std::abs(lower));
    for (size_t k = 0; k < recs.size(); ++k) {
        const double viol = lower - recs[k].lagrangian;
        if (viol > bound.worst_violation) {
            bound.worst_violation = viol;
            bound.at_iteration = static_cast<int>(k);
        }
        if (viol > bound_slack) bound.pass = false;
    }
    checks.push_back(std::move(bound));

    CertificateCheck summable;
    summable.name = "steps_square_summable";
    summable.anchor = "sum_k |A1 dx1|^2 + |A2 dx2|^2 + |dx3|^2 <= (L_gamma(w^k0) - L*)/M";
    if (margin > 0) {
        const double budget = (recs[k0].lagrangian - lower) / margin;
        const double total_slack =
            static_cast<double>(recs.size() - k0) * slack / std::max(margin, 1e-300);
        summable.worst_violation = std::max(0.0, steps_sq_sum - budget);
        summable.pass = steps_sq_sum - budget <= total_slack;
    } else {
        summable.pass = false;
        summable.worst_violation = std::numeric_limits<double>::infinity();
    }
    checks.push_back(std::move(summable));

    return checks;
}

double lyapunov_mid(const RlsdProblem& p, const IterateSnapshot& state,
                    const ReferenceSolution& ref, double gamma) {
    if (!(gamma > 0)) throw InvalidInputError("lyapunov_mid: gamma must be > 0");
    const double dl = (state.lambda - ref.lambda).squaredNorm();
    const double d2 = p.map2().apply(state.x2 - ref.x2).squaredNorm();
    const double d3 = (state.x3 - ref.x3).squaredNorm();
    return dl / (2.0 * gamma) + 0.5 * gamma * d2 + 0.5 * gamma * d3;
}

double lyapunov_low(const RlsdProblem& p, const IterateSnapshot& state,
                    const IterateSnapshot& prev, const ReferenceSolution& ref, double gamma,
                    double epsilon) {
    return lyapunov_mid(p, state, ref, gamma) +
           0.5 * gamma * epsilon * (state.x3 - prev.x3).squaredNorm();
}

double check_identity_x3_lambda(const Trace& trace, int* worst_iteration) {
    if (!trace.canonical_path)
        throw NotApplicableError("x3 = lambda identity applies to the canonical path only");
    require_iterates(trace);
    double worst = 0.0;
    int worst_k = -1;
    for (size_t k = 1; k < trace.iterates.size(); ++k) {
        const auto& it = trace.iterates[k];
        const double dev = (it.x3 - it.lambda).norm() / (1.0 + it.lambda.norm());
        if (dev > worst) {
            worst = dev;
            worst_k = static_cast<int>(k);
        }
    }
    if (worst_iteration) *worst_iteration = worst_k;
    return worst;
}

ReferenceSolution compute_reference(const RlsdProblem& p) {
    SolverConfig cfg;
    cfg.gamma = 2.0;
    if (!p.canonical()) {
        // Stay inside the always-admissible high range for the general path.
        const double s = p.f3_sigma(), l = p.f3_lipschitz();
        const double lo = 0.5 * (std::sqrt(s * s + 8.0 * l * l) - s);
        cfg.gamma = std::max(2.0, 1.5 * lo);
    }
    cfg.tol_kkt = 1e-12;
    cfg.max_iter = 200000;
    cfg.inner_tol = 1e-13;
    cfg.inner_max_iter = 20000;
    SolveResult res = solve(p, cfg);
    if (res.final_kkt.max > 1e-11) {
        std::ostringstream msg;
        msg << "reference solve stalled at kkt " << res.final_kkt.max << " after "
            << res.iterations << " iterations";
        throw NumericalError(msg.str());
    }
    ReferenceSolution ref;
    ref.x1 = res.state.x1;
    ref.x2 = res.state.x2;
    ref.x3 = res.state.x3;
    ref.lambda = res.state.lambda;
    ref.kkt_max = res.final_kkt.max;
    std::ostringstream prov;
    prov << "gamma=" << cfg.gamma << " solve to kkt<=1e-12 (" << res.iterations
         << " iterations, kkt=" << res.final_kkt.max << ")";
    ref.provenance = prov.str();
    return ref;
}

namespace {

CertificateCheck identity_as_check(const Trace& trace) {
    CertificateCheck check;
    check.name = "x3_equals_lambda";
    check.anchor = "x3^k = lambda^k for all k >= 1";
    int worst_k = -1;
    check.worst_violation = check_identity_x3_lambda(trace, &worst_k);
    check.at_iteration = worst_k;
    check.pass = check.worst_violation <= 1e-10;
    return check;
}

CertificateCheck dual_lipschitz_check(const Trace& trace, double lipschitz, double slack) {
    CertificateCheck check;
    check.name = "dual_step_lipschitz";
    check.anchor = "|lambda^{k+1} - lambda^k| <= L |x3^{k+1} - x3^k| for k >= 1";
    const auto& recs = trace.records;
    for (size_t k = 2; k < recs.size(); ++k) {  // transition k-1 -> k with k-1 >= 1
        const double viol = recs[k].d_lambda - lipschitz * recs[k].d_x3;
        if (viol > check.worst_violation) {
            check.worst_violation = viol;
            check.at_iteration = static_cast<int>(k);
        }
        if (viol > slack) check.pass = false;
    }
    return check;
}

CertificateCheck gradient_identity_check(const Trace& trace, const RlsdProblem& p,
                                         double slack) {
    require_iterates(trace);
    CertificateCheck check;
    check.name = "dual_matches_f3_gradient";
    check.anchor = "grad f3(x3^k) = lambda^k for all k >= 1";
    for (size_t k = 1; k < trace.iterates.size(); ++k) {
        const auto& it = trace.iterates[k];
        const double dev = (p.f3_gradient(it.x3) - it.lambda).norm();
        if (dev > check.worst_violation) {
            check.worst_violation = dev;
            check.at_iteration = static_cast<int>(k);
        }
        if (dev > slack) check.pass = false;
    }
    return check;
}

CertificateCheck empirical_check(const Trace& trace, const SolverConfig& cfg) {
    CertificateCheck check;
    check.name = "empirical_convergence";
    check.anchor = "final KKT residual <= tol_kkt";
    const TraceRecord& last = trace.records.back();
    check.worst_violation = std::max(0.0, last.kkt_max - cfg.tol_kkt);
    check.at_iteration = last.k;
    check.pass = last.kkt_max <= cfg.tol_kkt;
    return check;
}

CertificateCheck mid_potential_check(const Trace& trace, const RlsdProblem& p,
                                     const ReferenceSolution& ref, double gamma, size_t k0,
                                     double slack_scale) {
    require_iterates(trace);
    std::vector<double> phi(trace.iterates.size());
    for (size_t k = 0; k < trace.iterates.size(); ++k)
        phi[k] = lyapunov_mid(p, trace.iterates[k], ref, gamma);
    return monotone_check("mid_potential_nonincreasing",
                          "Phi^k = |lambda^k - lambda*|^2/(2 gamma) + gamma/2 |A2(x2^k - x2*)|^2"
                          " + gamma/2 |x3^k - x3*|^2 is non-increasing",
                          phi, k0, slack_scale);
}

CertificateCheck low_potential_check(const Trace& trace, const RlsdProblem& p,
                                     const ReferenceSolution& ref, double gamma, double epsilon,
                                     double slack_scale) {
    require_iterates(trace);
    if (trace.iterates.size() < 2) {
        CertificateCheck trivial;
        trivial.name = "low_potential_nonincreasing";
        trivial.anchor = "Phi^k + (gamma*eps/2)|x3^k - x3^{k-1}|^2 is non-increasing from k=1";
        return trivial;
    }
    std::vector<double> phi(trace.iterates.size() - 1);
    for (size_t k = 1; k < trace.iterates.size(); ++k)
        phi[k - 1] =
            lyapunov_low(p, trace.iterates[k], trace.iterates[k - 1], ref, gamma, epsilon);
    CertificateCheck check = monotone_check(
        "low_potential_nonincreasing",
        "Phi^k + (gamma*eps/2)|x3^k - x3^{k-1}|^2 is non-increasing from k=1", phi, 0,
        slack_scale);
    if (check.at_iteration >= 0) check.at_iteration += 1;  // phi[j] holds iteration j+1
    return check;
}

}  // namespace

CertificateReport certify(const Trace& trace, const RlsdProblem& p, const SolverConfig& cfg,
                          const std::optional<ReferenceSolution>& ref,
                          const CertifyOptions& opts) {
    require_records(trace);
    if (trace.canonical_path != p.canonical())
        throw InvalidInputError("certify: trace/problem f3 kind mismatch");
    const double gamma = cfg.gamma;
    if (!(gamma > 0)) throw InvalidInputError("certify: gamma must be > 0");

    CertificateReport report;
    if (ref) {
        if (ref->kkt_max > 1e-11)
            throw InvalidInputError("certify: reference solution kkt_max exceeds 1e-11");
        report.reference_used = ref->provenance;
    }

    auto need_ref = [&]() -> const ReferenceSolution& {
        if (!ref)
            throw MissingReferenceError(
                "this regime needs a reference solution; pass --compute-reference");
        return *ref;
    };

    if (!p.assumptions_hold()) {
        // Full column rank fails (entry-mask block): empirical report only.
        report.regime = Regime::Uncertified;
        if (trace.canonical_path && trace.has_iterates())
            report.checks.push_back(identity_as_check(trace));
        report.checks.push_back(empirical_check(trace, cfg));
        return report;
    }

    if (trace.canonical_path) {
        const double mid_lo = std::sqrt(2.0) - 1.0;
        if (gamma > 1.0) {
            report.regime = Regime::High;
            for (auto& c : check_high_gamma(trace, p, gamma, opts.slack_scale))
                report.checks.push_back(std::move(c));
        } else if (gamma > mid_lo) {
            report.regime = Regime::Mid;
            report.checks.push_back(
                mid_potential_check(trace, p, need_ref(), gamma, 0, opts.slack_scale));
            if (gamma <= 0.5)  // overlap region: both certificates must hold
                report.checks.push_back(low_potential_check(trace, p, need_ref(), gamma,
                                                            opts.epsilon.value_or(3.0),
                                                            opts.slack_scale));
        } else {
            report.regime = Regime::Low;
            report.checks.push_back(low_potential_check(trace, p, need_ref(), gamma,
                                                        opts.epsilon.value_or(3.0),
                                                        opts.slack_scale));
        }
        report.checks.push_back(identity_as_check(trace));
        report.checks.push_back(empirical_check(trace, cfg));
        return report;
    }

    // General path: regime from the admissible-range components.
    GammaRangeParams params{p.f3_sigma(), p.f3_lipschitz(), opts.eta1, opts.eta2};
    const auto parts = gamma_range_components(params);
    const bool in_low = parts[0].contains(gamma);
    const bool in_mid = !parts[1].empty() && parts[1].contains(gamma);
    const bool in_high = parts[2].contains(gamma);
    const double eps = opts.epsilon.value_or(2.0 * opts.eta2 / (opts.eta2 - 2.0) + 1.0);

    if (in_high) {
        report.regime = Regime::ExtendedHigh;
        for (auto& c : check_high_gamma(trace, p, gamma, opts.slack_scale))
            report.checks.push_back(std::move(c));
        if (in_mid && ref)
            report.checks.push_back(
                mid_potential_check(trace, p, *ref, gamma, 1, opts.slack_scale));
    } else if (in_mid || in_low) {
        report.regime = Regime::ExtendedRange;
        if (in_mid)
            report.checks.push_back(
                mid_potential_check(trace, p, need_ref(), gamma, 1, opts.slack_scale));
        if (in_low)
            report.checks.push_back(
                low_potential_check(trace, p, need_ref(), gamma, eps, opts.slack_scale));
    } else {
        report.regime = Regime::Uncertified;
    }

    report.checks.push_back(dual_lipschitz_check(trace, p.f3_lipschitz(), opts.slack_scale));
    if (trace.has_iterates())
        report.checks.push_back(gradient_identity_check(trace, p, opts.slack_scale));
    report.checks.push_back(empirical_check(trace, cfg));
    return report;
}

}  // namespace rlsd
