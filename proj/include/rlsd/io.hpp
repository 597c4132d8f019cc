#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "rlsd/bench.hpp"
#include "rlsd/diagnostics.hpp"
#include "rlsd/gamma_range.hpp"
#include "rlsd/problem.hpp"
#include "rlsd/solver.hpp"

namespace rlsd::io {

namespace fs = std::filesystem;
using nlohmann::json;

// Numeric CSV: one matrix row per line, comma separated, no header,
// 17 significant digits (lossless double round trip).
void write_matrix_csv(const fs::path& path, const Matrix& m);
Matrix read_matrix_csv(const fs::path& path);

// Problem bundle: <dir>/problem.json referencing CSV files in the same
// directory. Matrix-valued data is flattened column-major internally.
void write_problem_bundle(const fs::path& dir, const RlsdProblem& p);

// Accepts either a manifest path or a directory containing problem.json.
RlsdProblem read_problem(const fs::path& manifest_or_dir);

// Scalar trace: header k,objective,lagrangian,primal_residual,kkt_max,
// d_x1,d_x2,d_x3,d_lambda, one row per sweep.
void write_trace_csv(const fs::path& path, const Trace& trace);

// Full iterates sidecar used by the certificate checks that need them.
void write_iterates_csv(const fs::path& path, const Trace& trace);
fs::path default_iterates_path(const fs::path& trace_path);

// Loads the scalar trace and, when iterates_csv names an existing file, the
// iterate snapshots as well.
Trace read_trace(const fs::path& trace_csv, const fs::path& iterates_csv, bool canonical_path);

void write_summary_json(const fs::path& path, const SolveResult& result, double gamma);

void write_reference_json(const fs::path& path, const ReferenceSolution& ref);
ReferenceSolution read_reference_json(const fs::path& path);

json certificate_to_json(const CertificateReport& report);
void write_certificate_json(const fs::path& path, const CertificateReport& report);

json gamma_range_to_json(const GammaRangeParams& params, const IntervalUnion& range);

// Problem bundle plus truth.json sidecar.
void write_bench_bundle(const fs::path& dir, const GeneratedProblem& generated);

}  // namespace rlsd::io
