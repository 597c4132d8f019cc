#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rlsd/diagnostics.hpp"
#include "rlsd/io.hpp"

namespace {

using namespace rlsd;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitMaxIterations = 2;
constexpr int kExitNumericalFailure = 3;
constexpr int kExitCheckFailed = 4;
constexpr int kExitUncertified = 5;

struct SolveArgs {
    std::string problem;
    double gamma = 1.0;
    double tol = 1e-8;
    int max_iter = 10000;
    double inner_tol = 1e-10;
    int inner_max_iter = 2000;
    std::string trace;
    std::string summary;
};

int run_solve(const SolveArgs& args) {
    RlsdProblem problem = io::read_problem(args.problem);
    SolverConfig cfg;
    cfg.gamma = args.gamma;
    cfg.tol_kkt = args.tol;
    cfg.max_iter = args.max_iter;
    cfg.inner_tol = args.inner_tol;
    cfg.inner_max_iter = args.inner_max_iter;
    cfg.record_trace = cfg.record_iterates = !args.trace.empty();

    SolveResult result = solve(problem, cfg);

    if (!args.trace.empty()) {
        io::write_trace_csv(args.trace, result.trace);
        io::write_iterates_csv(io::default_iterates_path(args.trace), result.trace);
    }
    if (!args.summary.empty()) {
        io::write_summary_json(args.summary, result, cfg.gamma);
    } else {
        std::cout << "status=" << to_string(result.status) << " iterations=" << result.iterations
                  << " objective=" << result.objective << " kkt_max=" << result.final_kkt.max
                  << '\n';
    }

    switch (result.status) {
        case SolveStatus::Converged: return kExitOk;
        case SolveStatus::MaxIterations:
            std::cerr << "solve: max iterations reached, kkt_max=" << result.final_kkt.max << '\n';
            return kExitMaxIterations;
        case SolveStatus::NumericalFailure:
            std::cerr << "solve: " << result.failure_message << '\n';
            return kExitNumericalFailure;
    }
    return kExitInputError;
}

struct CertifyArgs {
    std::string problem;
    std::string trace;
    double gamma = 1.0;
    double tol = 1e-8;
    std::string out = "certificate.json";
    std::string reference;
    bool compute_reference = false;
    double eta1 = 3.0;
    double eta2 = 4.0;
    double epsilon = 0.0;  // 0 = default per regime
};

int run_certify(const CertifyArgs& args) {
    RlsdProblem problem = io::read_problem(args.problem);
    Trace trace =
        io::read_trace(args.trace, io::default_iterates_path(args.trace), problem.canonical());

    std::optional<ReferenceSolution> ref;
    if (!args.reference.empty()) {
        ref = io::read_reference_json(args.reference);
    } else if (args.compute_reference) {
        fs::path problem_path(args.problem);
        fs::path cache = (fs::is_directory(problem_path) ? problem_path
                                                         : problem_path.parent_path()) /
                         "reference.json";
        if (fs::exists(cache)) {
            ref = io::read_reference_json(cache);
        } else {
            ref = compute_reference(problem);
            io::write_reference_json(cache, *ref);
        }
    }

    SolverConfig cfg;
    cfg.gamma = args.gamma;
    cfg.tol_kkt = args.tol;
    CertifyOptions opts;
    opts.eta1 = args.eta1;
    opts.eta2 = args.eta2;
    if (args.epsilon > 0) opts.epsilon = args.epsilon;

    CertificateReport report = certify(trace, problem, cfg, ref, opts);
    io::write_certificate_json(args.out, report);

    std::cout << "regime=" << to_string(report.regime)
              << " checks_passed=" << (report.all_pass() ? "yes" : "no") << '\n';
    if (report.regime == Regime::Uncertified) return kExitUncertified;
    if (!report.all_pass()) {
        std::cerr << "certify: failed checks:";
        for (const std::string& name : report.failed_names()) std::cerr << ' ' << name;
        std::cerr << '\n';
        return kExitCheckFailed;
    }
    return kExitOk;
}

struct GammaRangeArgs {
    double sigma = 1.0;
    double lips = 1.0;
    double eta1 = 3.0;
    double eta2 = 4.0;
    std::string out = "gamma_range.json";
};

int run_gamma_range(const GammaRangeArgs& args) {
    GammaRangeParams params{args.sigma, args.lips, args.eta1, args.eta2};
    IntervalUnion range = admissible_gamma_range(params);
    std::cout << range.display() << '\n';
    std::ofstream out(args.out);
    if (!out) throw InvalidInputError("cannot open for writing: " + args.out);
    out << io::gamma_range_to_json(params, range).dump(2) << '\n';
    return kExitOk;
}

struct BenchArgs {
    std::string family;
    BenchSpec spec;
    double beta1 = 0.0;
    double beta2 = 0.0;
    bool raw = false;
    std::string out = "bench_out";
};

int run_bench(const BenchArgs& args) {
    BenchSpec spec = args.spec;
    spec.family = bench_family_from_string(args.family);
    if (args.beta1 > 0) spec.beta1 = args.beta1;
    if (args.beta2 > 0) spec.beta2 = args.beta2;
    spec.orthonormalize = !args.raw;
    GeneratedProblem generated = generate(spec);
    io::write_bench_bundle(args.out, generated);
    std::cout << "wrote " << args.out << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RLSD: 3-block ADMM solver, convergence certificates, gamma-range calculator"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve_cmd = app.add_subcommand("solve", "run the 3-block ADMM on a problem bundle");
    solve_cmd->add_option("--problem", solve_args.problem, "problem bundle dir or manifest path")
        ->required();
    solve_cmd->add_option("--gamma", solve_args.gamma, "penalty parameter")->required();
    solve_cmd->add_option("--tol", solve_args.tol, "KKT stopping tolerance");
    solve_cmd->add_option("--max-iter", solve_args.max_iter, "sweep limit");
    solve_cmd->add_option("--inner-tol", solve_args.inner_tol, "inner prox-gap tolerance");
    solve_cmd->add_option("--inner-max-iter", solve_args.inner_max_iter, "inner iteration limit");
    solve_cmd->add_option("--trace", solve_args.trace, "trace CSV path (iterates CSV written alongside)");
    solve_cmd->add_option("--summary", solve_args.summary, "summary JSON path");

    CertifyArgs certify_args;
    CLI::App* certify_cmd = app.add_subcommand("certify", "verify convergence certificates on a trace");
    certify_cmd->add_option("--problem", certify_args.problem, "problem bundle dir or manifest path")
        ->required();
    certify_cmd->add_option("--trace", certify_args.trace, "trace CSV path")->required();
    certify_cmd->add_option("--gamma", certify_args.gamma, "penalty the trace was produced with")
        ->required();
    certify_cmd->add_option("--tol", certify_args.tol, "KKT tolerance for the empirical check");
    certify_cmd->add_option("--out", certify_args.out, "certificate JSON path");
    certify_cmd->add_option("--reference", certify_args.reference, "reference solution JSON path");
    certify_cmd->add_flag("--compute-reference", certify_args.compute_reference,
                          "compute (and cache beside the problem) a reference solution");
    certify_cmd->add_option("--eta1", certify_args.eta1, "range parameter eta1 (> 2)");
    certify_cmd->add_option("--eta2", certify_args.eta2, "range parameter eta2 (> 2)");
    certify_cmd->add_option("--epsilon", certify_args.epsilon,
                            "low-regime potential weight (default per regime)");

    GammaRangeArgs gamma_args;
    CLI::App* gamma_cmd =
        app.add_subcommand("gamma-range", "admissible penalty range for strongly convex f3");
    gamma_cmd->add_option("sigma", gamma_args.sigma, "strong convexity modulus")->required();
    gamma_cmd->add_option("L", gamma_args.lips, "gradient Lipschitz constant")->required();
    gamma_cmd->add_option("eta1", gamma_args.eta1, "free parameter > 2")->required();
    gamma_cmd->add_option("eta2", gamma_args.eta2, "free parameter > 2")->required();
    gamma_cmd->add_option("--out", gamma_args.out, "range JSON path");

    BenchArgs bench_args;
    CLI::App* bench_cmd = app.add_subcommand("bench", "generate a synthetic problem bundle");
    bench_cmd->add_option("family", bench_args.family, "spcp | background | cpcp | lasso")
        ->required();
    bench_cmd->add_option("--m", bench_args.spec.m, "rows");
    bench_cmd->add_option("--n", bench_args.spec.n, "columns");
    bench_cmd->add_option("--p", bench_args.spec.p, "lasso: columns of A");
    bench_cmd->add_option("--rank", bench_args.spec.rank, "low-rank truth rank");
    bench_cmd->add_option("--sparsity", bench_args.spec.sparsity, "sparse fraction");
    bench_cmd->add_option("--noise", bench_args.spec.noise, "noise level");
    bench_cmd->add_option("--beta1", bench_args.beta1, "first regularizer weight");
    bench_cmd->add_option("--beta2", bench_args.beta2, "second regularizer weight");
    bench_cmd->add_option("--density", bench_args.spec.density, "cpcp mask density in (0,1]");
    bench_cmd->add_option("--box-lo", bench_args.spec.box_lo, "background lower pixel bound");
    bench_cmd->add_option("--box-hi", bench_args.spec.box_hi, "background upper pixel bound");
    bench_cmd->add_flag("--raw", bench_args.raw, "lasso: skip column orthonormalization");
    bench_cmd->add_option("--seed", bench_args.spec.seed, "instance seed");
    bench_cmd->add_option("--out", bench_args.out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) return run_solve(solve_args);
        if (certify_cmd->parsed()) return run_certify(certify_args);
        if (gamma_cmd->parsed()) return run_gamma_range(gamma_args);
        if (bench_cmd->parsed()) return run_bench(bench_args);
    } catch (const MissingReferenceError& err) {
        std::cerr << "certify: " << err.what() << '\n';
        return kExitInputError;
    } catch (const NumericalError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitNumericalFailure;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}
