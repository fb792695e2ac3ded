#pragma once

#include <utility>
#include <vector>

#include "steinkit/analysis.hpp"
#include "steinkit/closedform.hpp"
#include "steinkit/equation.hpp"

namespace steinkit {

/// N-term equation X = sum_{i=0}^{N} A_i f(X) B_i + C; an EquationSpec with
/// kind generalN and f in {transpose, conjugate, hermitian}.
inline EquationSpec make_general_n(FKind f, std::vector<CMatrix> As, std::vector<CMatrix> Bs,
                                   CMatrix C) {
    if (f == FKind::identity)
        throw InvalidSpec("make_general_n: f must be transpose, conjugate or hermitian");
    return EquationSpec::general_n(f, std::move(As), std::move(Bs), std::move(C));
}

/// The (N+1)^2-term standard-form equation whose solvability is equivalent
/// to the N-term original:
///   W = sum_i A_i (sum_k f(A_k f(W) B_k)) B_i + sum_i A_i f(C) B_i + C.
inline EquationSpec build_auxiliary_general(const EquationSpec& spec) {
    if (spec.kind != Kind::general_n)
        throw InvalidSpec("build_auxiliary_general: spec must be generalN");
    return auxiliary_stein(spec);
}

/// General solution of the N-term equation via the lifted linear system.
/// No characteristic-polynomial closed form exists for N >= 1.
inline GeneralSolution solve_general_n(const EquationSpec& spec, double tol = 1e-10) {
    if (spec.kind != Kind::general_n)
        throw InvalidSpec("solve_general_n: spec must be generalN");
    return general_solution(spec, tol);
}

} // namespace steinkit
