#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "steinkit/analysis.hpp"
#include "steinkit/equation.hpp"
#include "steinkit/matrix.hpp"

namespace steinkit {

struct SolveOptions {
    double tol = 1e-10;          ///< relative-residual stop
    std::size_t max_iter = 10000;
    unsigned l = 1;              ///< Smith(l) block length, in f-steps
    unsigned r = 2;              ///< r-Smith base
    std::optional<CMatrix> x0;   ///< starting iterate, default C
    bool enforce_precheck = false;
};

struct IterationTrace {
    CMatrix iterate;
    std::vector<double> residuals;
    std::size_t steps = 0;
    std::optional<double> empirical_rate;
    std::optional<double> predicted_rate;
    bool converged = false;
};

struct NoConvergence : Error {
    IterationTrace trace;
    NoConvergence(std::string msg, IterationTrace t)
        : Error(std::move(msg)), trace(std::move(t)) {}
};

struct DivergenceDetected : Error {
    IterationTrace trace;
    DivergenceDetected(std::string msg, IterationTrace t)
        : Error(std::move(msg)), trace(std::move(t)) {}
};

namespace detail {

// Mean of -ln(r_{k+1}/r_k) over the last (at most) 10 recorded steps.
inline std::optional<double> empirical_rate(const std::vector<double>& res) {
    if (res.size() < 2) return std::nullopt;
    const std::size_t window = std::min<std::size_t>(10, res.size() - 1);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = res.size() - window - 1; k + 1 < res.size(); ++k) {
        if (res[k] <= 0.0 || res[k + 1] <= 0.0) continue;
        sum += -std::log(res[k + 1] / res[k]);
        ++count;
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

/// Asymptotic per-step rate of the f-Smith map. For the conjugate kind the
/// convergence literature quotes the rate of the two-step (auxiliary) map, so one
/// f-step contracts by the square root of the rho product.
inline std::optional<double> per_step_rate(const EquationSpec& spec,
                                           const ConvergencePrecheck& pre) {
    if (!pre.converges) return std::nullopt;
    double rate = pre.predicted_rate.value();
    if (spec.kind == Kind::conjugate) rate *= 0.5;
    return rate;
}

// Shared fixed-point driver: X <- step(X) with residual tracking against the
// original spec.
template <typename Step>
IterationTrace iterate_fixed_point(const EquationSpec& spec, const CMatrix& x0,
                                   const SolveOptions& opts, std::optional<double> predicted,
                                   Step step) {
    IterationTrace trace;
    trace.predicted_rate = predicted;
    CMatrix x = x0;
    double first_res = -1.0;
    for (std::size_t k = 0; k < opts.max_iter; ++k) {
        x = step(x);
        const double res = residual(spec, x);
        trace.residuals.push_back(res);
        if (first_res < 0.0) first_res = res;
        if (res <= opts.tol) {
            trace.converged = true;
            break;
        }
        if (first_res > 0.0 && res > 1e6 * first_res) {
            trace.iterate = std::move(x);
            trace.steps = trace.residuals.size();
            trace.empirical_rate = empirical_rate(trace.residuals);
            throw DivergenceDetected("iteration diverged (residual grew by 1e6)",
                                     std::move(trace));
        }
    }
    trace.iterate = std::move(x);
    trace.steps = trace.residuals.size();
    trace.empirical_rate = empirical_rate(trace.residuals);
    if (!trace.converged)
        throw NoConvergence("iteration reached max_iter without convergence", std::move(trace));
    return trace;
}

} // namespace detail

/// Plain Smith iteration X_{k+1} = A f(X_k) B + C from X_0 = C (or opts.x0).
inline IterationTrace smith(const EquationSpec& spec, const SolveOptions& opts = {}) {
    if (spec.kind == Kind::general_n)
        throw InvalidSpec("smith: generalN has no Smith iteration; use the lifted solver");
    const ConvergencePrecheck pre = convergence_precheck(spec);
    if (opts.enforce_precheck && !pre.converges)
        throw PrecheckFailed("smith: rho product is not below 1");

    const CMatrix x0 = opts.x0.value_or(spec.C);
    if (x0.rows() != spec.m() || x0.cols() != spec.n())
        throw DimensionError("smith: X0 has wrong shape");
    return detail::iterate_fixed_point(spec, x0, opts, detail::per_step_rate(spec, pre),
                                       [&](const CMatrix& x) { return equation_rhs(spec, x); });
}

/// Smith(l): l f-steps compressed into one update. Even l runs the standard
/// Smith(l/2) recursion of the auxiliary equation; odd l composes one f-step
/// with (l-1)/2 auxiliary steps. Coefficient powers are formed once up front.
inline IterationTrace smith_l(const EquationSpec& spec, const SolveOptions& opts = {}) {
    if (spec.kind == Kind::general_n)
        throw InvalidSpec("smith_l: generalN has no Smith iteration");
    if (opts.l < 1) throw InvalidSpec("smith_l: l must be >= 1");
    const ConvergencePrecheck pre = convergence_precheck(spec);
    if (opts.enforce_precheck && !pre.converges)
        throw PrecheckFailed("smith_l: rho product is not below 1");

    std::optional<double> predicted = detail::per_step_rate(spec, pre);
    if (predicted) *predicted *= static_cast<double>(opts.l);

    const CMatrix x0 = opts.x0.value_or(spec.C);
    if (x0.rows() != spec.m() || x0.cols() != spec.n())
        throw DimensionError("smith_l: X0 has wrong shape");

    // partial sum sum_{i<j} A^i C B^i plus the power pair (A^j, B^j)
    auto compress = [](const CMatrix& a, const CMatrix& b, const CMatrix& c, unsigned j) {
        CMatrix acc = CMatrix::zero(c.rows(), c.cols());
        CMatrix term = c;
        for (unsigned i = 0; i < j; ++i) {
            acc = acc + term;
            if (i + 1 < j) term = a * term * b;
        }
        return std::make_pair(acc, std::make_pair(matrix_power(a, j), matrix_power(b, j)));
    };

    if (spec.kind == Kind::standard) {
        auto [cl, pw] = compress(spec.A(), spec.B(), spec.C, opts.l);
        const CMatrix al = pw.first, bl = pw.second;
        return detail::iterate_fixed_point(
            spec, x0, opts, predicted, [&](const CMatrix& x) { return al * x * bl + cl; });
    }

    const EquationSpec aux = auxiliary_stein(spec);
    const unsigned j = opts.l / 2;
    auto [cj, pw] = compress(aux.A(), aux.B(), aux.C, j);
    const CMatrix aj = pw.first, bj = pw.second;

    if (opts.l % 2 == 0) {
        return detail::iterate_fixed_point(
            spec, x0, opts, predicted, [&](const CMatrix& x) { return aj * x * bj + cj; });
    }
    const CMatrix ap = aj * spec.A();
    const CMatrix bp = spec.B() * bj;
    const CMatrix cp = aj * spec.C * bj + cj;
    return detail::iterate_fixed_point(spec, x0, opts, predicted, [&](const CMatrix& x) {
        return ap * apply_f(x, spec.f) * bp + cp;
    });
}

/// r-Smith squared acceleration on the (auxiliary) standard equation:
///   X_{k+1} = sum_{i<r} A_k^i X_k B_k^i,  A_{k+1} = A_k^r,  B_{k+1} = B_k^r,
/// from X_0 = C (auxiliary C for f-variants), so X_k is the partial sum of
/// the first r^k series terms. Requires the rho condition up front; the
/// squared coefficients leave no recovery path otherwise.
inline IterationTrace r_smith(const EquationSpec& spec, const SolveOptions& opts = {}) {
    if (spec.kind == Kind::general_n)
        throw InvalidSpec("r_smith: generalN has no Smith iteration");
    if (opts.r < 2) throw InvalidSpec("r_smith: r must be >= 2");

    const bool standard = spec.kind == Kind::standard;
    const EquationSpec eq = standard ? spec : auxiliary_stein(spec);
    if (spectral_radius(eq.A()) * spectral_radius(eq.B()) >= 1.0)
        throw PrecheckFailed("r_smith: rho(A)rho(B) of the standard form is not below 1");

    IterationTrace trace;
    trace.predicted_rate = std::nullopt; // super-exponential; no per-step constant
    CMatrix x = eq.C;
    CMatrix ak = eq.A();
    CMatrix bk = eq.B();
    for (std::size_t k = 0; k < opts.max_iter; ++k) {
        CMatrix sum = x;
        CMatrix term = x;
        for (unsigned i = 1; i < opts.r; ++i) {
            term = ak * term * bk;
            sum = sum + term;
        }
        x = std::move(sum);
        const double res = residual(spec, x);
        trace.residuals.push_back(res);
        if (res <= opts.tol) {
            trace.converged = true;
            break;
        }
        ak = matrix_power(ak, opts.r);
        bk = matrix_power(bk, opts.r);
    }
    trace.iterate = std::move(x);
    trace.steps = trace.residuals.size();
    trace.empirical_rate = detail::empirical_rate(trace.residuals);
    if (!trace.converged)
        throw NoConvergence("r_smith reached max_iter without convergence", std::move(trace));
    return trace;
}

} // namespace steinkit
