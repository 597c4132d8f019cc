#include "rlsd/bench.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "rlsd/rng.hpp"

namespace rlsd {

const char* to_string(BenchFamily family) {
    switch (family) {
        case BenchFamily::Spcp: return "spcp";
        case BenchFamily::Background: return "background";
        case BenchFamily::CompressivePcp: return "cpcp";
        case BenchFamily::Lasso: return "lasso";
    }
    return "?";
}

BenchFamily bench_family_from_string(const std::string& name) {
    if (name == "spcp") return BenchFamily::Spcp;
    if (name == "background") return BenchFamily::Background;
    if (name == "cpcp") return BenchFamily::CompressivePcp;
    if (name == "lasso") return BenchFamily::Lasso;
    throw InvalidInputError("unknown benchmark family: " + name);
}

void BenchSpec::validate() const {
    if (m < 1 || n < 1) throw InvalidInputError("bench: dims must be >= 1");
    if (sparsity < 0 || sparsity > 1) throw InvalidInputError("bench: sparsity must be in [0,1]");
    if (noise < 0) throw InvalidInputError("bench: noise must be >= 0");
    if (beta1 && !(*beta1 > 0)) throw InvalidInputError("bench: beta1 must be > 0");
    if (beta2 && !(*beta2 > 0)) throw InvalidInputError("bench: beta2 must be > 0");
    switch (family) {
        case BenchFamily::Spcp:
        case BenchFamily::CompressivePcp:
            if (rank < 0 || rank > std::min(m, n))
                throw InvalidInputError("bench: rank must be in [0, min(m, n)]");
            if (family == BenchFamily::CompressivePcp && !(density > 0 && density <= 1))
                throw InvalidInputError("bench: mask density must be in (0, 1]");
            break;
        case BenchFamily::Background:
            if (!(box_lo <= box_hi) || !std::isfinite(box_lo) || !std::isfinite(box_hi))
                throw InvalidInputError("bench: need finite box_lo <= box_hi");
            break;
        case BenchFamily::Lasso:
            if (p < 1 || p > n) throw InvalidInputError("bench: lasso needs 1 <= p <= n");
            break;
    }
}

double BenchSpec::effective_beta1() const { return beta1.value_or(0.25); }

double BenchSpec::effective_beta2() const {
    return beta2.value_or(0.25 / std::sqrt(static_cast<double>(std::max(m, n))));
}

namespace {

// Draw order is part of the format: factors, sparse support, sparse values,
// noise. Spcp and CompressivePcp share it so equal seeds give equal data.
struct LowRankPlusSparse {
    Matrix l0, s0, data;
};

LowRankPlusSparse draw_low_rank_plus_sparse(const BenchSpec& spec, Rng& rng) {
    LowRankPlusSparse out;
    Matrix p = rng.gaussian_matrix(spec.m, spec.rank);
    Matrix q = rng.gaussian_matrix(spec.n, spec.rank);
    out.l0 = p * q.transpose();

    out.s0 = Matrix::Zero(spec.m, spec.n);
    const Index nnz = static_cast<Index>(std::llround(spec.sparsity * spec.m * spec.n));
    for (Index idx : rng.sample_indices(spec.m * spec.n, nnz))
        out.s0(idx % spec.m, idx / spec.m) = rng.uniform(-5.0, 5.0);

    out.data = out.l0 + out.s0;
    if (spec.noise > 0) out.data += spec.noise * rng.gaussian_matrix(spec.m, spec.n);
    return out;
}

}  // namespace

GeneratedProblem gen_spcp(const BenchSpec& spec) {
    if (spec.family != BenchFamily::Spcp) throw InvalidInputError("gen_spcp: wrong family");
    spec.validate();
    Rng rng(spec.seed);
    LowRankPlusSparse inst = draw_low_rank_plus_sparse(spec, rng);

    RlsdProblem problem(BlockMap::identity(spec.m * spec.n),
                        Regularizer::nuclear(spec.effective_beta1(), spec.m, spec.n),
                        BlockMap::identity(spec.m * spec.n),
                        Regularizer::l1(spec.effective_beta2()), as_vector(inst.data));
    return {std::move(problem), spec, {{"L0", inst.l0}, {"S0", inst.s0}}};
}

GeneratedProblem gen_background(const BenchSpec& spec) {
    if (spec.family != BenchFamily::Background)
        throw InvalidInputError("gen_background: wrong family");
    spec.validate();
    Rng rng(spec.seed);

    Vector u0(spec.m);
    for (Index i = 0; i < spec.m; ++i) u0[i] = rng.uniform(spec.box_lo, spec.box_hi);

    Matrix s0 = Matrix::Zero(spec.m, spec.n);
    const Index nnz = static_cast<Index>(std::llround(spec.sparsity * spec.m * spec.n));
    for (Index idx : rng.sample_indices(spec.m * spec.n, nnz))
        s0(idx % spec.m, idx / spec.m) = rng.uniform(-50.0, 50.0);

    Matrix data = u0.replicate(1, spec.n) + s0;
    if (spec.noise > 0) data += spec.noise * rng.gaussian_matrix(spec.m, spec.n);

    Box box{Vector::Constant(spec.m, spec.box_lo), Vector::Constant(spec.m, spec.box_hi)};
    RlsdProblem problem(BlockMap::rank_one_column(spec.m, spec.n),
                        Regularizer::zero(std::move(box)),
                        BlockMap::identity(spec.m * spec.n),
                        Regularizer::l1(spec.effective_beta2()), as_vector(data));
    return {std::move(problem), spec, {{"u0", Matrix(u0)}, {"S0", s0}}};
}

GeneratedProblem gen_cpcp(const BenchSpec& spec) {
    if (spec.family != BenchFamily::CompressivePcp) throw InvalidInputError("gen_cpcp: wrong family");
    spec.validate();
    Rng rng(spec.seed);
    LowRankPlusSparse inst = draw_low_rank_plus_sparse(spec, rng);

    const Index total = spec.m * spec.n;
    const Index count = std::max<Index>(1, static_cast<Index>(std::llround(spec.density * total)));
    std::vector<std::pair<Index, Index>> entries;
    entries.reserve(static_cast<size_t>(count));
    for (Index idx : rng.sample_indices(total, count))
        entries.emplace_back(idx % spec.m, idx / spec.m);

    BlockMap mask1 = BlockMap::entry_mask(spec.m, spec.n, entries);
    BlockMap mask2 = BlockMap::entry_mask(spec.m, spec.n, entries);
    Vector b = mask1.apply(as_vector(inst.data));  // observations only on the mask

    RlsdProblem problem(std::move(mask1),
                        Regularizer::nuclear(spec.effective_beta1(), spec.m, spec.n),
                        std::move(mask2), Regularizer::l1(spec.effective_beta2()),
                        std::move(b));
    return {std::move(problem), spec, {{"L0", inst.l0}, {"S0", inst.s0}}};
}

GeneratedProblem gen_lasso(const BenchSpec& spec) {
    if (spec.family != BenchFamily::Lasso) throw InvalidInputError("gen_lasso: wrong family");
    spec.validate();
    Rng rng(spec.seed);

    Matrix a = rng.gaussian_matrix(spec.n, spec.p);
    if (spec.orthonormalize) {
        Eigen::HouseholderQR<Matrix> qr(a);
        a = qr.householderQ() * Matrix::Identity(spec.n, spec.p);
    }

    Vector x0 = Vector::Zero(spec.p);
    const Index nnz = std::max<Index>(1, static_cast<Index>(std::llround(spec.sparsity * spec.p)));
    for (Index idx : rng.sample_indices(spec.p, nnz)) {
        const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        x0[idx] = sign * rng.uniform(1.0, 3.0);
    }

    Vector b = a * x0;
    if (spec.noise > 0)
        for (Index i = 0; i < spec.n; ++i) b[i] += spec.noise * rng.normal();

    RlsdProblem problem(BlockMap::dense(std::move(a)),
                        Regularizer::l1(spec.effective_beta1()), BlockMap::empty(spec.n),
                        Regularizer::zero(Box{Vector(0), Vector(0)}), std::move(b));
    return {std::move(problem), spec, {{"x0", Matrix(x0)}}};
}

GeneratedProblem generate(const BenchSpec& spec) {
    switch (spec.family) {
        case BenchFamily::Spcp: return gen_spcp(spec);
        case BenchFamily::Background: return gen_background(spec);
        case BenchFamily::CompressivePcp: return gen_cpcp(spec);
        case BenchFamily::Lasso: return gen_lasso(spec);
    }
    throw InvalidInputError("unknown benchmark family");
}

}  // namespace rlsd
