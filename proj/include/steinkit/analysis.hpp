#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "steinkit/equation.hpp"
#include "steinkit/matrix.hpp"
#include "steinkit/realrep.hpp"
#include "steinkit/spectral.hpp"

namespace steinkit {

/// Threshold on |eta*gamma - 1| below which a spectral uniqueness test
/// reports non-uniqueness.
constexpr double kUniqueEps = 1e-10;

struct LiftedSystem {
    CMatrix M;       ///< square system matrix, vec- or phi-level
    CVector r;       ///< right-hand side
    CMatrix S;       ///< multiplier with M = I - S
    bool real_lift;  ///< true when the system lives over R^{2mn}
    std::size_t dim; ///< mn or 2mn
};

struct UniquenessVerdict {
    std::optional<bool> exact;
    bool sufficient = false;
};

struct ConvergencePrecheck {
    bool converges = false;
    std::optional<double> predicted_rate; ///< -ln(rho product); +inf when the product is 0
    double rho_product = 0.0;
};

struct AnalysisReport {
    bool solvable = false;
    std::optional<bool> unique_exact;
    bool unique_sufficient = false;
    std::optional<std::size_t> dof_real;
    double rho_product = 0.0;
    std::optional<double> predicted_rate;
    std::size_t lifted_dim = 0;
};

namespace detail {

/// E = sum_i B_i^T kron A_i, the vec-level multiplier before any f handling.
inline CMatrix vec_multiplier(const EquationSpec& spec) {
    CMatrix e = kron(steinkit::transpose(spec.B_list[0]), spec.A_list[0]);
    for (std::size_t t = 1; t < spec.terms(); ++t)
        e = e + kron(steinkit::transpose(spec.B_list[t]), spec.A_list[t]);
    return e;
}

/// diag(P(m,n), P(m,n)) acting on phi vectors.
inline CMatrix phi_commutation(std::size_t m, std::size_t n) {
    const CMatrix p = commutation_matrix(m, n);
    CMatrix pp(2 * m * n, 2 * m * n);
    for (std::size_t i = 0; i < m * n; ++i)
        for (std::size_t j = 0; j < m * n; ++j) {
            pp(i, j) = p(i, j);
            pp(i + m * n, j + m * n) = p(i, j);
        }
    return pp;
}

inline CVector rvector_to_cvector(const RVector& v) {
    CVector out(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) out[i] = cplx(v[i], 0.0);
    return out;
}

inline RVector cvector_real_part(const CVector& v) {
    RVector out(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) out[i] = v[i].real();
    return out;
}

} // namespace detail

/// Builds the square linear system M x = r whose solutions biject with the
/// matrix-equation solutions: x = vec(X) over C for f in {identity, transpose},
/// x = phi(X) over R for f in {conjugate, hermitian}.
inline LiftedSystem lift_to_linear_system(const EquationSpec& spec) {
    const std::size_t m = spec.m(), n = spec.n();
    const CMatrix e = detail::vec_multiplier(spec);

    LiftedSystem sys;
    sys.real_lift = spec.real_lift();
    if (!sys.real_lift) {
        sys.dim = m * n;
        sys.S = (spec.f == FKind::transpose) ? e * commutation_matrix(m, n) : e;
        sys.r = vec(spec.C);
    } else {
        sys.dim = 2 * m * n;
        const CMatrix es = sigma(e).mat;
        sys.S = (spec.f == FKind::hermitian) ? es * detail::phi_commutation(m, n) : es;
        sys.r = detail::rvector_to_cvector(phi_vec(spec.C));
    }
    sys.M = CMatrix::identity(sys.dim) - sys.S;
    return sys;
}

/// Maps a lifted coordinate vector back to the matrix it represents.
inline CMatrix solution_from_vector(const EquationSpec& spec, const CVector& x) {
    if (spec.real_lift()) return phi_vec_inverse(detail::cvector_real_part(x), spec.m(), spec.n());
    return unvec(x, spec.m(), spec.n());
}

/// Rank test: solvable iff rank([M, r]) == rank(M), at a shared threshold.
inline bool check_solvability(const EquationSpec& spec, double tol = 0.0) {
    LiftedSystem sys = lift_to_linear_system(spec);
    CMatrix aug(sys.dim, sys.dim + 1);
    for (std::size_t i = 0; i < sys.dim; ++i) {
        for (std::size_t j = 0; j < sys.dim; ++j) aug(i, j) = sys.M(i, j);
        aug(i, sys.dim) = sys.r[i];
    }
    Svd daug = svd(aug);
    const double smax = daug.s.empty() ? 0.0 : daug.s[0];
    const double thresh = tol > 0.0
                              ? tol
                              : static_cast<double>(sys.dim + 1) * detail::kMachEps * smax;
    std::size_t rank_aug = 0;
    for (double s : daug.s)
        if (s > thresh) ++rank_aug;
    const std::size_t rank_m = rank(sys.M, thresh);
    return rank_m == rank_aug;
}

/// The same-dimension auxiliary standard equation W = A W B + C
/// (single f-application composed with itself). For general_n input the
/// result is the (N+1)^2-term standard-form equation.
inline EquationSpec auxiliary_stein(const EquationSpec& spec) {
    if (spec.kind == Kind::standard || spec.f == FKind::identity)
        throw InvalidSpec("auxiliary_stein: equation is already in standard form");

    const std::size_t terms = spec.terms();
    std::vector<CMatrix> As, Bs;
    As.reserve(terms * terms);
    Bs.reserve(terms * terms);
    CMatrix aux_c = spec.C;
    for (std::size_t i = 0; i < terms; ++i)
        aux_c = aux_c + spec.A_list[i] * apply_f(spec.C, spec.f) * spec.B_list[i];

    for (std::size_t i = 0; i < terms; ++i) {
        for (std::size_t k = 0; k < terms; ++k) {
            const CMatrix& ai = spec.A_list[i];
            const CMatrix& bi = spec.B_list[i];
            const CMatrix& ak = spec.A_list[k];
            const CMatrix& bk = spec.B_list[k];
            switch (spec.f) {
                case FKind::transpose:
                    As.push_back(ai * steinkit::transpose(bk));
                    Bs.push_back(steinkit::transpose(ak) * bi);
                    break;
                case FKind::conjugate:
                    As.push_back(ai * steinkit::conjugate(ak));
                    Bs.push_back(steinkit::conjugate(bk) * bi);
                    break;
                case FKind::hermitian:
                    As.push_back(ai * adjoint(bk));
                    Bs.push_back(adjoint(ak) * bi);
                    break;
                case FKind::identity:
                    break;
            }
        }
    }

    if (spec.kind != Kind::general_n)
        return EquationSpec::standard(std::move(As.front()), std::move(Bs.front()),
                                      std::move(aux_c));
    return EquationSpec::general_n(FKind::identity, std::move(As), std::move(Bs),
                                   std::move(aux_c));
}

/// Spectral uniqueness tests. exact is the if-and-only-if condition; for the
/// transpose kind sufficient is the auxiliary-equation condition, which can
/// be false while exact is true.
inline UniquenessVerdict check_uniqueness(const EquationSpec& spec) {
    if (spec.kind == Kind::general_n)
        throw InvalidSpec("check_uniqueness: use the lifted-system test for generalN");

    UniquenessVerdict v;
    switch (spec.kind) {
        case Kind::standard: {
            Spectrum ea = eigenvalues(spec.A());
            Spectrum eb = eigenvalues(spec.B());
            bool ok = true;
            for (cplx e : ea.values)
                for (cplx g : eb.values)
                    if (std::abs(e * g - 1.0) <= kUniqueEps) ok = false;
            v.exact = ok;
            v.sufficient = ok;
            break;
        }
        case Kind::transpose: {
            const std::size_t m = spec.m(), n = spec.n();
            const CMatrix ups =
                kron(steinkit::transpose(spec.B()), spec.A()) * commutation_matrix(m, n);
            bool ok = true;
            for (cplx l : eigenvalues(ups).values)
                if (std::abs(l - 1.0) <= kUniqueEps) ok = false;
            v.exact = ok;

            Spectrum eab = eigenvalues(spec.A() * steinkit::transpose(spec.B()));
            bool suff = true;
            for (cplx e : eab.values)
                for (cplx g : eab.values)
                    if (std::abs(e * g - 1.0) <= kUniqueEps) suff = false;
            v.sufficient = suff;
            break;
        }
        case Kind::conjugate: {
            Spectrum ea = eigenvalues(spec.A() * steinkit::conjugate(spec.A()));
            Spectrum eb = eigenvalues(steinkit::conjugate(spec.B()) * spec.B());
            bool ok = true;
            for (cplx e : ea.values)
                for (cplx g : eb.values)
                    if (std::abs(e * g - 1.0) <= kUniqueEps) ok = false;
            v.exact = ok;
            v.sufficient = ok;
            break;
        }
        case Kind::hermitian: {
            Spectrum eab = eigenvalues(spec.A() * adjoint(spec.B()));
            bool ok = true;
            for (cplx e : eab.values)
                for (cplx g : eab.values)
                    if (std::abs(std::conj(e) * g - 1.0) <= kUniqueEps) ok = false;
            v.exact = ok;
            v.sufficient = ok;
            break;
        }
        case Kind::general_n:
            break;
    }
    return v;
}

/// Count of free real parameters in the general solution.
inline std::size_t degrees_of_freedom(const EquationSpec& spec, double tol = 0.0) {
    if (!check_solvability(spec, tol))
        throw NotSolvable("degrees_of_freedom: equation is not solvable");

    const std::size_t mn = spec.m() * spec.n();
    if (spec.kind == Kind::conjugate) {
        // dim S = mn - rank(I - (Bbar B)^T kron A Abar)
        const CMatrix t = CMatrix::identity(mn) -
                          kron(steinkit::transpose(steinkit::conjugate(spec.B()) * spec.B()),
                               spec.A() * steinkit::conjugate(spec.A()));
        return mn - rank(t, tol);
    }
    if (spec.kind == Kind::hermitian) {
        // dim T = mn - rank(I - (A^H B)^T kron A B^H)
        const CMatrix t = CMatrix::identity(mn) -
                          kron(steinkit::transpose(adjoint(spec.A()) * spec.B()),
                               spec.A() * adjoint(spec.B()));
        return mn - rank(t, tol);
    }
    // nullity of the lifted system; complex parameters count twice
    LiftedSystem sys = lift_to_linear_system(spec);
    const std::size_t nullity = sys.dim - rank(sys.M, tol);
    return sys.real_lift ? nullity : 2 * nullity;
}

/// Kind-specific spectral-radius products governing Smith convergence.
inline ConvergencePrecheck convergence_precheck(const EquationSpec& spec) {
    if (spec.kind == Kind::general_n)
        throw InvalidSpec("convergence_precheck: Smith iterations cover single-term kinds only");

    ConvergencePrecheck out;
    switch (spec.kind) {
        case Kind::standard:
            out.rho_product = spectral_radius(spec.A()) * spectral_radius(spec.B());
            break;
        case Kind::transpose:
            out.rho_product = spectral_radius(steinkit::transpose(spec.B()) * spec.A());
            break;
        case Kind::conjugate:
            out.rho_product = spectral_radius(spec.A() * steinkit::conjugate(spec.A())) *
                              spectral_radius(steinkit::conjugate(spec.B()) * spec.B());
            break;
        case Kind::hermitian:
            out.rho_product = spectral_radius(adjoint(spec.B()) * spec.A());
            break;
        case Kind::general_n:
            break;
    }
    out.converges = out.rho_product < 1.0;
    if (out.converges)
        out.predicted_rate = out.rho_product == 0.0
                                 ? std::numeric_limits<double>::infinity()
                                 : -std::log(out.rho_product);
    return out;
}

/// Full classification of an equation.
inline AnalysisReport analyze(const EquationSpec& spec, double tol = 0.0) {
    AnalysisReport rep;
    LiftedSystem sys = lift_to_linear_system(spec);
    rep.lifted_dim = sys.dim;
    rep.solvable = check_solvability(spec, tol);

    if (spec.kind != Kind::general_n) {
        UniquenessVerdict v = check_uniqueness(spec);
        rep.unique_exact = v.exact;
        rep.unique_sufficient = v.sufficient;
        ConvergencePrecheck pre = convergence_precheck(spec);
        rep.rho_product = pre.rho_product;
        rep.predicted_rate = pre.predicted_rate;
    } else {
        const bool exact = rank(sys.M, tol) == sys.dim;
        rep.unique_exact = exact;
        if (spec.f == FKind::identity) {
            rep.unique_sufficient = exact;
        } else {
            LiftedSystem aux = lift_to_linear_system(auxiliary_stein(spec));
            rep.unique_sufficient = rank(aux.M, tol) == aux.dim;
        }
        rep.rho_product = spectral_radius(sys.S);
    }

    // a nonsingular lifted system is solvable regardless of rank-threshold noise
    if (rep.unique_exact.value_or(false)) {
        rep.solvable = true;
        rep.dof_real = 0;
    } else if (rep.solvable) {
        rep.dof_real = degrees_of_freedom(spec, tol);
    }
    return rep;
}

} // namespace steinkit
