#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "rlsd/diagnostics.hpp"
#include "test_problems.hpp"

using namespace rlsd;

namespace {

SolveResult traced_solve(const RlsdProblem& p, double gamma, double tol = 1e-8) {
    SolverConfig cfg;
    cfg.gamma = gamma;
    cfg.tol_kkt = tol;
    cfg.max_iter = 50000;
    cfg.record_trace = cfg.record_iterates = true;
    SolveResult res = solve(p, cfg);
    REQUIRE(res.status == SolveStatus::Converged);
    return res;
}

SolverConfig cfg_for(double gamma) {
    SolverConfig cfg;
    cfg.gamma = gamma;
    return cfg;
}

const CertificateCheck& find_check(const CertificateReport& report, const std::string& name) {
    for (const auto& c : report.checks)
        if (c.name == name) return c;
    REQUIRE_MESSAGE(false, "check not found: " << name);
    static CertificateCheck dummy;
    return dummy;
}

bool has_check(const CertificateReport& report, const std::string& name) {
    return std::any_of(report.checks.begin(), report.checks.end(),
                       [&](const CertificateCheck& c) { return c.name == name; });
}

}  // namespace

TEST_CASE("decrease margin") {
    CHECK(decrease_margin(2.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(decrease_margin(1.1, 1.0, 1.0) ==
          doctest::Approx(1.05 - 1.0 / 1.1).epsilon(1e-12));  // 0.140909...
    CHECK(decrease_margin(1.0, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(decrease_margin(0.0, 1.0, 1.0), InvalidInputError);
}

TEST_CASE("high-gamma checks pass on a benchmark trace and on a constant trace") {
    GeneratedProblem gp = gen_spcp(testing::spcp_spec(10, 10, 21));
    SolveResult res = traced_solve(gp.problem, 2.0);
    auto checks = check_high_gamma(res.trace, gp.problem, 2.0);
    for (const auto& c : checks) CHECK(c.pass);

    // constant trace at the solution: all margins are zero
    Trace constant;
    constant.canonical_path = true;
    TraceRecord rec = res.trace.records.back();
    rec.d_x1 = rec.d_x2 = rec.d_x3 = rec.d_lambda = 0.0;
    for (int k = 0; k < 5; ++k) {
        rec.k = k;
        constant.records.push_back(rec);
    }
    for (const auto& c : check_high_gamma(constant, gp.problem, 2.0)) {
        CHECK(c.pass);
        CHECK(c.worst_violation <= 1e-12);
    }
}

TEST_CASE("high-gamma descent flags a corrupted Lagrangian at its index") {
    GeneratedProblem gp = gen_spcp(testing::spcp_spec(10, 10, 22));
    SolveResult res = traced_solve(gp.problem, 2.0);
    REQUIRE(res.trace.records.size() > 8);

    Trace corrupted = res.trace;
    corrupted.records[5].lagrangian += 0.5;  // increased entry
    auto checks = check_high_gamma(corrupted, gp.problem, 2.0);
    const auto& descent = checks[0];
    CHECK(descent.name == "lagrangian_descent");
    CHECK_FALSE(descent.pass);
    CHECK(descent.at_iteration == 5);

    Trace below = res.trace;
    below.records[6].lagrangian = -1.0;  // under the uniform lower bound f1* + f2* = 0
    auto bound_checks = check_high_gamma(below, gp.problem, 2.0);
    CHECK_FALSE(bound_checks[1].pass);
    CHECK(bound_checks[1].at_iteration == 6);
}

TEST_CASE("lyapunov values") {
    GeneratedProblem gp = gen_spcp(testing::spcp_spec(6, 6, 23));
    ReferenceSolution ref = compute_reference(gp.problem);
    CHECK(ref.kkt_max <= 1e-11);
    CHECK(!ref.provenance.empty());

    IterateSnapshot at_ref{ref.x1, ref.x2, ref.x3, ref.lambda};
    CHECK(lyapunov_mid(gp.problem, at_ref, ref, 0.8) == 0.0);

    const double delta = 0.3;
    IterateSnapshot moved = at_ref;
    moved.lambda[0] += delta;
    CHECK(lyapunov_mid(gp.problem, moved, ref, 0.8) ==
          doctest::Approx(delta * delta / (2.0 * 0.8)).epsilon(1e-12));

    IterateSnapshot prev = at_ref;
    prev.x3[0] -= 1.0;  // |x3 - x3_prev| = 1
    CHECK(lyapunov_low(gp.problem, at_ref, prev, ref, 0.4, 3.0) ==
          doctest::Approx(0.6).epsilon(1e-12));
    CHECK(lyapunov_low(gp.problem, at_ref, at_ref, ref, 0.4, 3.0) == 0.0);
}

TEST_CASE("x3 = lambda identity check") {
    GeneratedProblem gp = gen_spcp(testing::spcp_spec(8, 8, 24));
    SolveResult res = traced_solve(gp.problem, 0.8);
    CHECK(check_identity_x3_lambda(res.trace) <= 1e-10);

    Trace perturbed = res.trace;
    REQUIRE(perturbed.iterates.size() > 6);
    perturbed.iterates[5].lambda[0] += 1e-3;
    int worst_k = -1;
    const double dev = check_identity_x3_lambda(perturbed, &worst_k);
    CHECK(worst_k == 5);
    CHECK(dev == doctest::Approx(1e-3 / (1.0 + perturbed.iterates[5].lambda.norm()))
                     .epsilon(1e-6));

    RlsdProblem general = testing::general_f3_instance(6, 6, 25);
    SolveResult gres = traced_solve(general, 2.0);
    CHECK_THROWS_AS(check_identity_x3_lambda(gres.trace), NotApplicableError);
}

TEST_CASE("certify: canonical regimes") {
    GeneratedProblem gp = gen_spcp(testing::spcp_spec(10, 10, 26));
    ReferenceSolution ref = compute_reference(gp.problem);

    SolveResult high = traced_solve(gp.problem, 2.0);
    CertificateReport high_report = certify(high.trace, gp.problem, cfg_for(2.0));
    CHECK(high_report.regime == Regime::High);
    CHECK(high_report.all_pass());
    CHECK(has_check(high_report, "lagrangian_descent"));
    CHECK(has_check(high_report, "x3_equals_lambda"));
    high.certificate = std::make_shared<CertificateReport>(high_report);
    CHECK(high.certificate->all_pass());

    SolveResult mid = traced_solve(gp.problem, 0.8);
    CHECK_THROWS_AS(certify(mid.trace, gp.problem, cfg_for(0.8)), MissingReferenceError);
    CertificateReport mid_report = certify(mid.trace, gp.problem, cfg_for(0.8), ref);
    CHECK(mid_report.regime == Regime::Mid);
    CHECK(mid_report.all_pass());
    CHECK(has_check(mid_report, "mid_potential_nonincreasing"));
    CHECK_FALSE(has_check(mid_report, "low_potential_nonincreasing"));

    SolveResult overlap = traced_solve(gp.problem, 0.45);
    CertificateReport overlap_report = certify(overlap.trace, gp.problem, cfg_for(0.45), ref);
    CHECK(overlap_report.regime == Regime::Mid);
    CHECK(has_check(overlap_report, "mid_potential_nonincreasing"));
    CHECK(has_check(overlap_report, "low_potential_nonincreasing"));
    CHECK(overlap_report.all_pass());

    SolveResult low = traced_solve(gp.problem, 0.3);
    CertificateReport low_report = certify(low.trace, gp.problem, cfg_for(0.3), ref);
    CHECK(low_report.regime == Regime::Low);
    CHECK(low_report.all_pass());
}

TEST_CASE("certify: potential checks flag corrupted iterates at their index") {
    GeneratedProblem gp = gen_spcp(testing::spcp_spec(10, 10, 27));
    ReferenceSolution ref = compute_reference(gp.problem);
    SolveResult res = traced_solve(gp.problem, 0.45);
    const int target = static_cast<int>(res.trace.iterates.size()) - 3;
    REQUIRE(target > 2);

    Trace corrupted = res.trace;
    corrupted.iterates[static_cast<size_t>(target)].x3[0] += 1.0;
    CertificateReport report = certify(corrupted, gp.problem, cfg_for(0.45), ref);
    const auto& mid_check = find_check(report, "mid_potential_nonincreasing");
    CHECK_FALSE(mid_check.pass);
    CHECK(mid_check.at_iteration == target);
    const auto& low_check = find_check(report, "low_potential_nonincreasing");
    CHECK_FALSE(low_check.pass);
    CHECK(low_check.at_iteration == target);
}

TEST_CASE("certify: general-path regimes") {
    RlsdProblem general = testing::general_f3_instance(8, 8, 28);

    SolveResult high = traced_solve(general, 2.0);
    CertificateReport high_report = certify(high.trace, general, cfg_for(2.0));
    CHECK(high_report.regime == Regime::ExtendedHigh);
    CHECK(high_report.all_pass());
    CHECK(has_check(high_report, "dual_step_lipschitz"));
    CHECK(has_check(high_report, "dual_matches_f3_gradient"));

    ReferenceSolution ref = compute_reference(general);
    SolveResult low = traced_solve(general, 0.3);
    CHECK_THROWS_AS(certify(low.trace, general, cfg_for(0.3)), MissingReferenceError);
    CertificateReport low_report = certify(low.trace, general, cfg_for(0.3), ref);
    CHECK(low_report.regime == Regime::ExtendedRange);
    CHECK(low_report.all_pass());
    CHECK(has_check(low_report, "low_potential_nonincreasing"));

    // gamma = 0.6 sits outside (0,0.5) u (0.7321,inf) for sigma = L = 1
    SolveResult mid = traced_solve(general, 0.6);
    CertificateReport mid_report = certify(mid.trace, general, cfg_for(0.6), ref);
    CHECK(mid_report.regime == Regime::Uncertified);
    CHECK(find_check(mid_report, "empirical_convergence").pass);
}

TEST_CASE("certify: entry-mask problems report Uncertified") {
    BenchSpec spec;
    spec.family = BenchFamily::CompressivePcp;
    spec.m = 8;
    spec.n = 8;
    spec.rank = 1;
    spec.sparsity = 0.05;
    spec.noise = 1e-3;
    spec.density = 0.6;
    spec.seed = 29;
    GeneratedProblem gp = gen_cpcp(spec);
    SolveResult res = traced_solve(gp.problem, 2.0);
    CertificateReport report = certify(res.trace, gp.problem, cfg_for(2.0));
    CHECK(report.regime == Regime::Uncertified);
    CHECK(find_check(report, "empirical_convergence").pass);
}
