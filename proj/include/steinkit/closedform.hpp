#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "steinkit/analysis.hpp"
#include "steinkit/equation.hpp"
#include "steinkit/matrix.hpp"
#include "steinkit/realrep.hpp"
#include "steinkit/spectral.hpp"

namespace steinkit {

enum class ParameterField { real_params, complex_params };

/// Affine solution family: particular + span of basis matrices over real or
/// complex parameters. Basis matrices are orthonormal under the (real or
/// complex) Frobenius inner product.
struct GeneralSolution {
    CMatrix particular;
    std::vector<CMatrix> basis;
    ParameterField field = ParameterField::complex_params;

    std::size_t parameter_count() const { return basis.size(); }
};

enum class SolveRoute { automatic, charpoly, lifted };

/// Closed-form solution of the standard Stein equation X = A X B + C via the
/// reversed characteristic polynomial:
///   X* = (sum_{k=1}^m sum_{s=1}^k alpha_k A^{k-s} C B^{m-s}) h_A(B)^{-1}.
/// Throws SingularDenominator when h_A(B) is numerically singular, i.e. the
/// equation does not have a unique solution.
inline CMatrix solve_stein_closed(const CMatrix& a, const CMatrix& b, const CMatrix& c) {
    const std::size_t m = c.rows(), n = c.cols();
    if (!a.square() || a.rows() != m || !b.square() || b.rows() != n)
        throw DimensionError("solve_stein_closed: need A m x m, B n x n, C m x n");

    const CharPoly p = char_poly_reversed(a);

    std::vector<CMatrix> apow, bpow;
    apow.reserve(m);
    bpow.reserve(m);
    apow.push_back(CMatrix::identity(m));
    bpow.push_back(CMatrix::identity(n));
    for (std::size_t i = 1; i < m; ++i) {
        apow.push_back(apow.back() * a);
        bpow.push_back(bpow.back() * b);
    }

    CMatrix num(m, n);
    for (std::size_t k = 1; k <= m; ++k) {
        if (p.alpha[k] == cplx(0.0, 0.0)) continue;
        for (std::size_t s = 1; s <= k; ++s)
            num = num + p.alpha[k] * (apow[k - s] * c * bpow[m - s]);
    }

    const CMatrix h = poly_eval_matrix(p, b);
    Svd hd = svd(h);
    const double smax = hd.s.empty() ? 0.0 : hd.s[0];
    if (smax == 0.0 || hd.s.back() < 1e-12 * smax)
        throw SingularDenominator("solve_stein_closed: h_A(B) is numerically singular");
    return num * pseudo_inverse(h);
}

/// General solution through the lifted linear system (complete for every
/// kind, including generalN).
inline GeneralSolution general_solution(const EquationSpec& spec, double tol = 1e-10) {
    LiftedSystem sys = lift_to_linear_system(spec);
    GeneralLinearSolution lin = solve_linear_general(sys.M, sys.r, tol > 0.0 ? tol : 1e-10);

    GeneralSolution out;
    out.particular = solution_from_vector(spec, lin.particular);
    out.field = sys.real_lift ? ParameterField::real_params : ParameterField::complex_params;
    out.basis.reserve(lin.nullspace_basis.size());
    for (const CVector& v : lin.nullspace_basis)
        out.basis.push_back(solution_from_vector(spec, v));
    return out;
}

/// The unique solution. route == charpoly uses the characteristic-polynomial
/// closed form (on the auxiliary standard equation for f-variants); lifted
/// solves the vec/phi-level system; automatic prefers the closed form and
/// falls back when its denominator is singular (uniqueness of the auxiliary
/// equation can fail while the original is still unique).
inline CMatrix solve_unique(const EquationSpec& spec, SolveRoute route = SolveRoute::automatic) {
    bool unique;
    if (spec.kind == Kind::general_n) {
        LiftedSystem sys = lift_to_linear_system(spec);
        unique = rank(sys.M) == sys.dim;
    } else {
        unique = check_uniqueness(spec).exact.value();
    }
    if (!unique) {
        if (!check_solvability(spec)) throw NotSolvable("solve_unique: equation is not solvable");
        throw NotUnique("solve_unique: solution is not unique");
    }

    if (route != SolveRoute::lifted && spec.kind != Kind::general_n) {
        try {
            if (spec.kind == Kind::standard)
                return solve_stein_closed(spec.A(), spec.B(), spec.C);
            const EquationSpec aux = auxiliary_stein(spec);
            return solve_stein_closed(aux.A(), aux.B(), aux.C);
        } catch (const SingularDenominator&) {
            if (route == SolveRoute::charpoly) throw;
            // fall through to the lifted route
        }
    } else if (route == SolveRoute::charpoly) {
        throw InvalidSpec("solve_unique: no characteristic-polynomial form for generalN");
    }

    return general_solution(spec).particular;
}

namespace detail {

// Orthonormal column-space basis of the candidate directions, as matrices.
// Real-parameter kinds filter in R^{2mn}, complex kinds in C^{mn}.
inline std::vector<CMatrix> rank_filter(const std::vector<CMatrix>& candidates,
                                        const EquationSpec& spec) {
    std::vector<CMatrix> out;
    if (candidates.empty()) return out;
    const std::size_t m = spec.m(), n = spec.n();
    const bool real_field = spec.real_lift();
    const std::size_t dim = real_field ? 2 * m * n : m * n;

    CMatrix stack(dim, candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (real_field) {
            RVector v = phi_vec(candidates[c]);
            for (std::size_t i = 0; i < dim; ++i) stack(i, c) = cplx(v[i], 0.0);
        } else {
            CVector v = vec(candidates[c]);
            for (std::size_t i = 0; i < dim; ++i) stack(i, c) = v[i];
        }
    }

    Svd d = svd(stack);
    const double smax = d.s.empty() ? 0.0 : d.s[0];
    const double thresh =
        static_cast<double>(std::max(dim, candidates.size())) * detail::kMachEps * smax;
    for (std::size_t k = 0; k < d.s.size(); ++k) {
        if (d.s[k] <= thresh || d.s[k] == 0.0) continue;
        CVector col(dim);
        for (std::size_t i = 0; i < dim; ++i) col[i] = d.u(i, k);
        out.push_back(solution_from_vector(spec, col));
    }
    return out;
}

} // namespace detail

/// Transfers the general solution of the auxiliary standard equation back to
/// the original f-variant equation:
///   X = 1/2 (W + A f(W) B + C),
/// homogeneous directions V -> 1/2 (V + A f(V) B). For conjugate-linear f
/// each complex parameter splits into two real ones (V and iV) before the
/// dependent directions are discarded by rank filtering.
inline GeneralSolution lift_general_solution(const GeneralSolution& w_general,
                                             const EquationSpec& spec) {
    if (spec.kind == Kind::standard || spec.f == FKind::identity)
        throw InvalidSpec("lift_general_solution: original equation must be an f-variant");

    auto homog = [&](const CMatrix& v) {
        CMatrix acc = v;
        for (std::size_t t = 0; t < spec.terms(); ++t)
            acc = acc + spec.A_list[t] * apply_f(v, spec.f) * spec.B_list[t];
        return 0.5 * acc;
    };

    GeneralSolution out;
    out.particular = homog(w_general.particular) + 0.5 * spec.C;
    out.field = spec.real_lift() ? ParameterField::real_params : ParameterField::complex_params;

    std::vector<CMatrix> candidates;
    for (const CMatrix& v : w_general.basis) {
        candidates.push_back(homog(v));
        if (spec.real_lift() && w_general.field == ParameterField::complex_params)
            candidates.push_back(homog(cplx(0.0, 1.0) * v));
    }
    out.basis = detail::rank_filter(candidates, spec);
    return out;
}

} // namespace steinkit
