#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "rlsd/io.hpp"
#include "test_problems.hpp"

using namespace rlsd;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() /
               ("rlsd_test_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void check_same_problem(const RlsdProblem& a, const RlsdProblem& b) {
    CHECK((a.b() - b.b()).norm() == 0.0);
    CHECK(a.map1().kind() == b.map1().kind());
    CHECK(a.map2().kind() == b.map2().kind());
    CHECK(a.map1().input_dim() == b.map1().input_dim());
    CHECK(a.map2().input_dim() == b.map2().input_dim());
    CHECK(a.reg1().kind() == b.reg1().kind());
    CHECK(a.reg2().kind() == b.reg2().kind());
    CHECK(a.reg1().beta() == b.reg1().beta());
    CHECK(a.reg2().beta() == b.reg2().beta());
    CHECK(a.canonical() == b.canonical());

    Rng rng(123);
    if (a.dim1() > 0) {
        Vector x(a.dim1());
        for (Index i = 0; i < x.size(); ++i) x[i] = rng.uniform(-1.0, 1.0);
        CHECK((a.map1().apply(x) - b.map1().apply(x)).norm() == 0.0);
    }
    if (a.dim2() > 0) {
        Vector x(a.dim2());
        for (Index i = 0; i < x.size(); ++i) x[i] = rng.uniform(-1.0, 1.0);
        CHECK((a.map2().apply(x) - b.map2().apply(x)).norm() == 0.0);
    }
    Vector x3(a.dim3());
    for (Index i = 0; i < x3.size(); ++i) x3[i] = rng.uniform(-1.0, 1.0);
    CHECK(a.f3_value(x3) == b.f3_value(x3));
}

}  // namespace

TEST_CASE("matrix CSV round trip is lossless") {
    TempDir tmp("matrix");
    Rng rng(81);
    Matrix m(5, 3);
    for (Index i = 0; i < 5; ++i)
        for (Index j = 0; j < 3; ++j) m(i, j) = rng.normal() * std::pow(10.0, rng.uniform(-8, 8));
    m(0, 0) = 0.1;  // not exactly representable
    io::write_matrix_csv(tmp.path / "m.csv", m);
    Matrix back = io::read_matrix_csv(tmp.path / "m.csv");
    REQUIRE(back.rows() == 5);
    REQUIRE(back.cols() == 3);
    for (Index i = 0; i < 5; ++i)
        for (Index j = 0; j < 3; ++j) CHECK(back(i, j) == m(i, j));
}

TEST_CASE("problem bundle round trip, every block-map and f3 kind") {
    TempDir tmp("bundle");
    std::vector<RlsdProblem> problems;
    problems.push_back(gen_spcp(testing::spcp_spec(6, 5, 1)).problem);
    problems.push_back(gen_background(testing::background_spec(6, 4, 2)).problem);
    problems.push_back([] {
        BenchSpec spec;
        spec.family = BenchFamily::CompressivePcp;
        spec.m = 5;
        spec.n = 5;
        spec.rank = 1;
        spec.density = 0.5;
        spec.seed = 3;
        return gen_cpcp(spec).problem;
    }());
    problems.push_back(gen_lasso(testing::lasso_spec(10, 4, 4)).problem);
    problems.push_back(testing::general_f3_instance(4, 4, 5));

    int idx = 0;
    for (const RlsdProblem& p : problems) {
        fs::path dir = tmp.path / ("p" + std::to_string(idx++));
        io::write_problem_bundle(dir, p);
        RlsdProblem back = io::read_problem(dir);
        check_same_problem(p, back);
        RlsdProblem via_manifest = io::read_problem(dir / "problem.json");
        check_same_problem(p, via_manifest);
    }
}

TEST_CASE("manifest grammar: scalar box bounds broadcast") {
    TempDir tmp("manifest");
    io::write_matrix_csv(tmp.path / "b.csv", Matrix::Ones(6, 1));
    std::ofstream out(tmp.path / "problem.json");
    out << R"({
      "b": "b.csv",
      "block1": {"map": {"kind": "identity", "dim": 6},
                 "regularizer": {"kind": "zero", "beta": 0, "box": {"lo": 0, "hi": 255}}},
      "block2": {"map": {"kind": "identity", "dim": 6},
                 "regularizer": {"kind": "l1", "beta": 0.5, "box": null}},
      "f3": {"kind": "canonical"}
    })";
    out.close();
    RlsdProblem p = io::read_problem(tmp.path);
    REQUIRE(p.reg1().box().has_value());
    CHECK(p.reg1().box()->lo.size() == 6);
    CHECK(p.reg1().box()->hi[3] == 255.0);
}

TEST_CASE("trace round trip with iterates") {
    TempDir tmp("trace");
    GeneratedProblem gp = gen_spcp(testing::spcp_spec(6, 6, 6));
    SolverConfig cfg;
    cfg.gamma = 2.0;
    cfg.record_trace = cfg.record_iterates = true;
    SolveResult res = solve(gp.problem, cfg);
    REQUIRE(res.status == SolveStatus::Converged);

    fs::path trace_path = tmp.path / "trace.csv";
    io::write_trace_csv(trace_path, res.trace);
    io::write_iterates_csv(io::default_iterates_path(trace_path), res.trace);
    Trace back = io::read_trace(trace_path, io::default_iterates_path(trace_path), true);

    REQUIRE(back.records.size() == res.trace.records.size());
    REQUIRE(back.iterates.size() == res.trace.iterates.size());
    for (size_t k = 0; k < back.records.size(); ++k) {
        CHECK(back.records[k].k == res.trace.records[k].k);
        CHECK(back.records[k].lagrangian == res.trace.records[k].lagrangian);
        CHECK(back.records[k].d_lambda == res.trace.records[k].d_lambda);
        CHECK((back.iterates[k].x1 - res.trace.iterates[k].x1).norm() == 0.0);
        CHECK((back.iterates[k].lambda - res.trace.iterates[k].lambda).norm() == 0.0);
    }

    // scalar-only read when the sidecar is absent
    fs::path lone = tmp.path / "lone.csv";
    io::write_trace_csv(lone, res.trace);
    Trace scalars = io::read_trace(lone, io::default_iterates_path(lone), true);
    CHECK(scalars.records.size() == res.trace.records.size());
    CHECK_FALSE(scalars.has_iterates());
}

TEST_CASE("reference solution round trip and validation") {
    TempDir tmp("ref");
    GeneratedProblem gp = gen_spcp(testing::spcp_spec(6, 6, 7));
    ReferenceSolution ref = compute_reference(gp.problem);
    io::write_reference_json(tmp.path / "reference.json", ref);
    ReferenceSolution back = io::read_reference_json(tmp.path / "reference.json");
    CHECK((back.x1 - ref.x1).norm() == 0.0);
    CHECK((back.lambda - ref.lambda).norm() == 0.0);
    CHECK(back.kkt_max == ref.kkt_max);
    CHECK(back.provenance == ref.provenance);

    ReferenceSolution bad = ref;
    bad.kkt_max = 1e-3;
    io::write_reference_json(tmp.path / "bad.json", bad);
    CHECK_THROWS_AS(io::read_reference_json(tmp.path / "bad.json"), InvalidInputError);
}

TEST_CASE("certificate JSON shape") {
    GeneratedProblem gp = gen_spcp(testing::spcp_spec(6, 6, 8));
    SolverConfig cfg;
    cfg.gamma = 2.0;
    cfg.record_trace = cfg.record_iterates = true;
    SolveResult res = solve(gp.problem, cfg);
    CertificateReport report = certify(res.trace, gp.problem, cfg);
    io::json j = io::certificate_to_json(report);
    CHECK(j.at("regime") == "High");
    REQUIRE(j.at("checks").is_array());
    for (const auto& c : j.at("checks")) {
        CHECK(c.contains("name"));
        CHECK(c.contains("paper_anchor"));
        CHECK(c.contains("pass"));
        CHECK(c.contains("worst_violation"));
        CHECK(c.contains("at_iteration"));
    }
    CHECK(j.at("reference").is_null());
}

TEST_CASE("gamma range JSON") {
    GammaRangeParams params{1.0, 1.0, 3.0, 4.0};
    io::json j = io::gamma_range_to_json(params, admissible_gamma_range(params));
    CHECK(j.at("display") == "(0,0.5)∪(0.7321,+inf)");
    REQUIRE(j.at("range").size() == 2);
    CHECK(j.at("range")[0].at("hi") == 0.5);
    CHECK(j.at("range")[1].at("hi") == "inf");
    CHECK(j.at("params").at("eta2") == 4.0);
}

TEST_CASE("bench bundle writes a truth sidecar") {
    TempDir tmp("truth");
    GeneratedProblem gp = gen_lasso(testing::lasso_spec(8, 3, 9));
    io::write_bench_bundle(tmp.path, gp);
    CHECK(fs::exists(tmp.path / "problem.json"));
    std::ifstream in(tmp.path / "truth.json");
    io::json truth = io::json::parse(in);
    CHECK(truth.at("family") == "lasso");
    CHECK(truth.at("truth").contains("x0"));
}
