#pragma once

// Shared test fixtures and oracles: worked numerical examples, random
// equation generators, and brute-force references kept independent of the
// implementation paths they check.

#include <complex>
#include <random>
#include <vector>

#include "steinkit/steinkit.hpp"

namespace sktest {

using steinkit::CMatrix;
using steinkit::cplx;
using steinkit::EquationSpec;
using steinkit::Kind;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline cplx crand(std::mt19937_64& gen) {
    std::normal_distribution<double> d(0.0, 1.0);
    return {d(gen), d(gen)};
}

inline CMatrix random_matrix(std::size_t m, std::size_t n, std::mt19937_64& gen) {
    CMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = crand(gen);
    return a;
}

inline CMatrix random_real_matrix(std::size_t m, std::size_t n, std::mt19937_64& gen) {
    std::normal_distribution<double> d(0.0, 1.0);
    CMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = d(gen);
    return a;
}

/// Random spec of the given kind with the kind-specific rho product scaled to
/// exactly `rho_target` (coefficients from the unit complex Gaussian).
inline EquationSpec random_spec(Kind kind, std::size_t m, std::size_t n, double rho_target,
                                std::mt19937_64& gen) {
    using steinkit::adjoint;
    using steinkit::conjugate;
    using steinkit::spectral_radius;
    using steinkit::transpose;

    const CMatrix c = random_matrix(m, n, gen);
    switch (kind) {
        case Kind::standard: {
            CMatrix a = random_matrix(m, m, gen), b = random_matrix(n, n, gen);
            const double p = spectral_radius(a) * spectral_radius(b);
            const double s = std::sqrt(rho_target / p);
            return EquationSpec::standard(s * a, s * b, c);
        }
        case Kind::transpose: {
            CMatrix a = random_matrix(m, n, gen), b = random_matrix(m, n, gen);
            const double p = spectral_radius(transpose(b) * a);
            return EquationSpec::transpose((rho_target / p) * a, b, c);
        }
        case Kind::conjugate: {
            CMatrix a = random_matrix(m, m, gen), b = random_matrix(n, n, gen);
            const double p =
                spectral_radius(a * conjugate(a)) * spectral_radius(conjugate(b) * b);
            const double s = std::pow(rho_target / p, 0.25);
            return EquationSpec::conjugate(s * a, s * b, c);
        }
        case Kind::hermitian: {
            CMatrix a = random_matrix(m, n, gen), b = random_matrix(m, n, gen);
            const double p = spectral_radius(adjoint(b) * a);
            return EquationSpec::hermitian((rho_target / p) * a, b, c);
        }
        default:
            throw steinkit::InvalidSpec("random_spec: single-term kinds only");
    }
}

// --------------------------------------------------------------------------
// worked examples

/// A = [[2, 0], [1, alpha]], B = I2 (transpose family; also the hermitian
/// uniqueness study uses the same coefficients).
inline std::pair<CMatrix, CMatrix> example1_coefficients(cplx alpha) {
    CMatrix a{{2.0, 0.0}, {1.0, alpha}};
    return {a, CMatrix::identity(2)};
}

inline EquationSpec example1_spec(cplx alpha, const CMatrix& c) {
    auto [a, b] = example1_coefficients(alpha);
    return EquationSpec::transpose(a, b, c);
}

/// X = A conj(X) B + C with A = diag(2, i), B = 1, C = (c1, c2)^T.
inline EquationSpec example2_spec(cplx c1, cplx c2) {
    CMatrix a{{2.0, 0.0}, {0.0, cplx(0.0, 1.0)}};
    CMatrix b{{1.0}};
    CMatrix c{{c1}, {c2}};
    return EquationSpec::conjugate(a, b, c);
}

/// Hermitian 3x3 system with the known unique solution.
inline EquationSpec example4_spec() {
    const cplx i(0.0, 1.0);
    CMatrix a{{1.0, 1.0 + i, 1.0}, {-2.0, i, -i}, {1.0 - i, 0.0, -1.0}};
    CMatrix b{{i, 1.0, -1.0}, {0.0, i, 2.0 + i}, {1.0 + i, 3.0, -i}};
    CMatrix c{{-5.0 + i, -4.0 - i, -5.0 - 12.0 * i},
              {2.0 - i, -4.0 - 2.0 * i, 6.0 + 8.0 * i},
              {1.0 + 3.0 * i, 15.0 - 5.0 * i, -4.0 - 5.0 * i}};
    return EquationSpec::hermitian(a, b, c);
}

inline CMatrix example4_solution() {
    const cplx i(0.0, 1.0);
    return CMatrix{{1.0 + 3.0 * i, -2.0, 0.0}, {1.0, 2.0 - i, 1.0}, {-2.0, 2.0, 2.0 + i}};
}

// --------------------------------------------------------------------------
// oracles

/// Truncated Neumann series sum_{i<terms} A^i C B^i.
inline CMatrix neumann_sum(const CMatrix& a, const CMatrix& b, const CMatrix& c,
                           std::size_t terms) {
    CMatrix acc = CMatrix::zero(c.rows(), c.cols());
    CMatrix term = c;
    for (std::size_t i = 0; i < terms; ++i) {
        acc = acc + term;
        term = a * term * b;
    }
    return acc;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    return steinkit::max_abs(a - b);
}

/// Multiset match within tol: every expected value consumes one distinct
/// actual value.
inline bool multiset_match(std::vector<cplx> actual, const std::vector<cplx>& expected,
                           double tol) {
    if (actual.size() != expected.size()) return false;
    for (cplx e : expected) {
        bool found = false;
        for (std::size_t i = 0; i < actual.size(); ++i) {
            if (std::abs(actual[i] - e) <= tol) {
                actual.erase(actual.begin() + static_cast<std::ptrdiff_t>(i));
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return actual.empty();
}

/// Distance from X to the affine family particular + span(basis), measured in
/// the lifted coordinates (real or complex field per the solution).
inline double distance_to_family(const steinkit::GeneralSolution& sol, const CMatrix& x,
                                 const EquationSpec& spec) {
    using namespace steinkit;
    const bool real_field = sol.field == ParameterField::real_params;
    const std::size_t dim =
        real_field ? 2 * spec.m() * spec.n() : spec.m() * spec.n();

    auto coords = [&](const CMatrix& mat) {
        CVector v(dim);
        if (real_field) {
            RVector rv = phi_vec(mat);
            for (std::size_t i = 0; i < dim; ++i) v[i] = cplx(rv[i], 0.0);
        } else {
            v = vec(mat);
        }
        return v;
    };

    CVector d = coords(x - sol.particular);
    // subtract projections onto the (orthonormal) basis
    for (const CMatrix& bmat : sol.basis) {
        CVector bv = coords(bmat);
        cplx proj(0.0, 0.0);
        for (std::size_t i = 0; i < dim; ++i) proj += std::conj(bv[i]) * d[i];
        if (real_field) proj = cplx(proj.real(), 0.0);
        for (std::size_t i = 0; i < dim; ++i) d[i] -= proj * bv[i];
    }
    return steinkit::norm2(d);
}

} // namespace sktest
