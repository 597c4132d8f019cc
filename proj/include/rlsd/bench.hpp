#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "rlsd/problem.hpp"

namespace rlsd {

enum class BenchFamily { Spcp, Background, CompressivePcp, Lasso };

const char* to_string(BenchFamily family);
BenchFamily bench_family_from_string(const std::string& name);

// Deterministic synthetic instance description; the seed fully determines
// the generated problem.
struct BenchSpec {
    BenchFamily family = BenchFamily::Spcp;
    Index m = 30;              // data rows (Lasso: rows of A)
    Index n = 30;              // data columns (Lasso: rows of A; see p)
    Index p = 10;              // Lasso only: columns of A, p <= n
    Index rank = 2;            // low-rank truth
    double sparsity = 0.05;    // fraction of nonzero sparse entries
    double noise = 1e-3;       // Gaussian noise level
    std::optional<double> beta1;  // default 0.25
    std::optional<double> beta2;  // default 0.25 / sqrt(max(m, n))
    double density = 0.5;      // CompressivePcp mask density in (0, 1]
    double box_lo = 0.0;       // Background pixel bounds
    double box_hi = 255.0;
    bool orthonormalize = true;  // Lasso: orthonormalize the columns of A
    std::uint64_t seed = 0;

    void validate() const;
    double effective_beta1() const;
    double effective_beta2() const;
};

struct GeneratedProblem {
    RlsdProblem problem;
    BenchSpec spec;
    // Ground-truth components, each stored as a matrix (vectors as n x 1):
    // Spcp/CompressivePcp: L0, S0; Background: u0, S0; Lasso: x0.
    std::map<std::string, Matrix> truth;
};

GeneratedProblem gen_spcp(const BenchSpec& spec);
GeneratedProblem gen_background(const BenchSpec& spec);
GeneratedProblem gen_cpcp(const BenchSpec& spec);
GeneratedProblem gen_lasso(const BenchSpec& spec);
GeneratedProblem generate(const BenchSpec& spec);

}  // namespace rlsd
