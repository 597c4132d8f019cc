#include "rlsd/solver.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <utility>

namespace rlsd {

void SolverConfig::validate() const {
    if (!(gamma > 0) || !std::isfinite(gamma))
        throw InvalidInputError("solver config: gamma must be positive and finite");
    if (max_iter < 1) throw InvalidInputError("solver config: max_iter must be >= 1");
    if (!(tol_kkt > 0)) throw InvalidInputError("solver config: tol_kkt must be > 0");
    if (!(inner_tol > 0)) throw InvalidInputError("solver config: inner_tol must be > 0");
    if (inner_max_iter < 1) throw InvalidInputError("solver config: inner_max_iter must be >= 1");
}

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::MaxIterations: return "max_iterations";
        case SolveStatus::NumericalFailure: return "numerical_failure";
    }
    return "?";
}

Vector update_x3_closed_form(const Vector& lambda, const Vector& s, double gamma) {
    if (!(gamma > 0)) throw InvalidInputError("update_x3: gamma must be > 0");
    if (lambda.size() != s.size()) throw InvalidInputError("update_x3: dimension mismatch");
    return (lambda - gamma * s) / (gamma + 1.0);
}

namespace {

Vector solve_x3_general(const Eigen::LDLT<Matrix>& shifted, const Vector& q,
                        const Vector& lambda, const Vector& s, double gamma) {
    Vector rhs = lambda - gamma * s - q;
    Vector x3 = shifted.solve(rhs);
    if (!x3.allFinite()) throw NumericalError("update_x3: linear solve produced non-finite values");
    return x3;
}

}  // namespace

Vector update_x3_general(const StronglyConvexSmooth& f3, const Vector& lambda, const Vector& s,
                         double gamma) {
    if (!(gamma > 0)) throw InvalidInputError("update_x3: gamma must be > 0");
    if (lambda.size() != f3.dim() || s.size() != f3.dim())
        throw InvalidInputError("update_x3: dimension mismatch");
    Matrix shifted = f3.quadratic();
    shifted.diagonal().array() += gamma;
    Eigen::LDLT<Matrix> ldlt(shifted);
    if (ldlt.info() != Eigen::Success) throw NumericalError("update_x3: factorization failed");
    return solve_x3_general(ldlt, f3.linear(), lambda, s, gamma);
}

Vector update_block(const BlockMap& map, const Regularizer& reg, const Vector& others,
                    double gamma, double inner_tol, int inner_max_iter,
                    const Vector& warm_start) {
    if (map.kind() == MapKind::Empty) return Vector(0);
    if (others.size() != map.output_dim())
        throw InvalidInputError("update_block: dimension mismatch");

    if (auto c = map.orthogonal_scale()) {
        // gamma/2 |Ax + o|^2 = gamma*c/2 |x + A'o / c|^2 + const when A'A = cI,
        // so the update is a single exact prox.
        Vector target = -map.apply_transpose(others) / *c;
        return reg.prox(target, 1.0 / (gamma * *c));
    }

    // Accelerated proximal gradient on f(x) + gamma/2 |Ax + o|^2 with gradient
    // restart, warm-started, run to a unit-step prox gap of inner_tol.
    if (warm_start.size() != map.input_dim())
        throw InvalidInputError("update_block: warm start dimension mismatch");
    const double lips = gamma * map.op_norm_sq();
    Vector x = warm_start;
    Vector y = x;
    double t = 1.0;
    double gap = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= inner_max_iter; ++j) {
        Vector grad_x = gamma * map.apply_transpose(map.apply(x) + others);
        gap = (x - reg.prox(x - grad_x, 1.0)).norm();
        if (gap <= inner_tol) return x;
        if (j == inner_max_iter) break;

        Vector grad_y = gamma * map.apply_transpose(map.apply(y) + others);
        Vector x_next = reg.prox(y - grad_y / lips, 1.0 / lips);
        double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        if ((y - x_next).dot(x_next - x) > 0) {
            t_next = 1.0;
            y = x_next;
        } else {
            y = x_next + ((t - 1.0) / t_next) * (x_next - x);
        }
        x = x_next;
        t = t_next;
    }
    std::ostringstream msg;
    msg << "inner loop: prox gap " << gap << " after " << inner_max_iter
        << " iterations (target " << inner_tol << ")";
    throw NumericalError(msg.str());
}

IterateState initial_state(const RlsdProblem& p) {
    IterateState st;
    st.k = 0;
    st.x1 = Vector::Zero(p.dim1());
    st.x2 = Vector::Zero(p.dim2());
    if (const auto& box = p.reg1().box(); box && p.dim1() > 0)
        st.x1 = project_box(st.x1, box->lo, box->hi);
    if (const auto& box = p.reg2().box(); box && p.dim2() > 0)
        st.x2 = project_box(st.x2, box->lo, box->hi);
    st.x3 = Vector::Zero(p.dim3());
    st.lambda = Vector::Zero(p.dim3());
    st.residual = p.map1().apply(st.x1) + p.map2().apply(st.x2) + st.x3 - p.b();
    return st;
}

namespace {

// Per-solve cache: the x3 subproblem matrix is fixed, so its factorization is
// reused across sweeps. LDLT of the same matrix is deterministic, so cached
// and fresh solves agree bit for bit.
struct SweepWorkspace {
    std::optional<Eigen::LDLT<Matrix>> f3_solver;

    const Eigen::LDLT<Matrix>& solver_for(const StronglyConvexSmooth& f3, double gamma) {
        if (!f3_solver) {
            Matrix shifted = f3.quadratic();
            shifted.diagonal().array() += gamma;
            f3_solver.emplace(shifted);
            if (f3_solver->info() != Eigen::Success)
                throw NumericalError("update_x3: factorization failed");
        }
        return *f3_solver;
    }
};

void step_impl(const RlsdProblem& p, const SolverConfig& cfg, IterateState& state,
               SweepWorkspace& ws) {
    const double gamma = cfg.gamma;
    const Vector shift = state.x3 - p.b() - state.lambda / gamma;

    const Vector others1 = p.map2().apply(state.x2) + shift;
    Vector x1 = update_block(p.map1(), p.reg1(), others1, gamma, cfg.inner_tol,
                             cfg.inner_max_iter, state.x1);

    const Vector others2 = p.map1().apply(x1) + shift;
    Vector x2 = update_block(p.map2(), p.reg2(), others2, gamma, cfg.inner_tol,
                             cfg.inner_max_iter, state.x2);

    const Vector s = p.map1().apply(x1) + p.map2().apply(x2) - p.b();
    Vector x3 = p.canonical()
                    ? update_x3_closed_form(state.lambda, s, gamma)
                    : solve_x3_general(ws.solver_for(*p.f3_quadratic(), gamma),
                                       p.f3_quadratic()->linear(), state.lambda, s, gamma);

    Vector residual = s + x3;
    Vector lambda = state.lambda - gamma * residual;

    state.x1 = std::move(x1);
    state.x2 = std::move(x2);
    state.x3 = std::move(x3);
    state.lambda = std::move(lambda);
    state.residual = std::move(residual);
    state.k += 1;
}

}  // namespace

void step(const RlsdProblem& p, const SolverConfig& cfg, IterateState& state) {
    cfg.validate();
    SweepWorkspace ws;
    step_impl(p, cfg, state, ws);
}

SolveResult solve(const RlsdProblem& p, const SolverConfig& cfg) {
    cfg.validate();
    SolveResult out;
    out.trace.canonical_path = p.canonical();

    IterateState st = initial_state(p);
    SweepWorkspace ws;

    Vector a1x1 = p.map1().apply(st.x1);
    Vector a2x2 = p.map2().apply(st.x2);

    auto push_record = [&](const KktResidual& kkt, double d1, double d2, double d3, double dl) {
        TraceRecord rec;
        rec.k = st.k;
        rec.objective = p.objective(st.x1, st.x2, st.x3);
        rec.lagrangian = p.augmented_lagrangian(st.x1, st.x2, st.x3, st.lambda, cfg.gamma);
        rec.primal_residual = st.residual.norm();
        rec.kkt_max = kkt.max;
        rec.d_x1 = d1;
        rec.d_x2 = d2;
        rec.d_x3 = d3;
        rec.d_lambda = dl;
        out.trace.records.push_back(rec);
        if (cfg.record_iterates)
            out.trace.iterates.push_back({st.x1, st.x2, st.x3, st.lambda});
    };

    KktResidual kkt = p.kkt_residual(st.x1, st.x2, st.x3, st.lambda);
    if (cfg.record_trace) push_record(kkt, 0.0, 0.0, 0.0, 0.0);

    out.status = SolveStatus::MaxIterations;
    for (int k = 1; k <= cfg.max_iter; ++k) {
        const Vector x3_prev = st.x3;
        const Vector lambda_prev = st.lambda;
        try {
            step_impl(p, cfg, st, ws);
        } catch (const NumericalError& err) {
            out.status = SolveStatus::NumericalFailure;
            out.failure_message = err.what();
            break;
        }
        kkt = p.kkt_residual(st.x1, st.x2, st.x3, st.lambda);
        if (cfg.record_trace) {
            Vector a1x1_new = p.map1().apply(st.x1);
            Vector a2x2_new = p.map2().apply(st.x2);
            push_record(kkt, (a1x1_new - a1x1).norm(), (a2x2_new - a2x2).norm(),
                        (st.x3 - x3_prev).norm(), (st.lambda - lambda_prev).norm());
            a1x1 = std::move(a1x1_new);
            a2x2 = std::move(a2x2_new);
        }
        if (kkt.max <= cfg.tol_kkt) {
            out.status = SolveStatus::Converged;
            break;
        }
    }

    out.state = std::move(st);
    out.iterations = out.state.k;
    out.final_kkt = kkt;
    out.objective = p.objective(out.state.x1, out.state.x2, out.state.x3);
    return out;
}

}  // namespace rlsd
