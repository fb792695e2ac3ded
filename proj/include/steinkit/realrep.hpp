#pragma once

#include <cmath>
#include <cstddef>

#include "steinkit/matrix.hpp"

namespace steinkit {

/// Real representation A_sigma = [[A1, A2], [A2, -A1]] of A = A1 + i A2,
/// stored as a CMatrix with zero imaginary parts.
struct SigmaRep {
    CMatrix mat;
    std::size_t m = 0, n = 0;
};

/// Companion block form A_phi = [[A1, -A2], [A2, A1]].
struct PhiRep {
    CMatrix mat;
    std::size_t m = 0, n = 0;
};

inline SigmaRep sigma(const CMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    CMatrix s(2 * m, 2 * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = a(i, j).real(), im = a(i, j).imag();
            s(i, j) = re;
            s(i, j + n) = im;
            s(i + m, j) = im;
            s(i + m, j + n) = -re;
        }
    return {std::move(s), m, n};
}

inline PhiRep phi_rep(const CMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    CMatrix p(2 * m, 2 * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = a(i, j).real(), im = a(i, j).imag();
            p(i, j) = re;
            p(i, j + n) = -im;
            p(i + m, j) = im;
            p(i + m, j + n) = re;
        }
    return {std::move(p), m, n};
}

/// Unitary Z_n = (sqrt(2)/2) [[i I, I], [I, i I]]; A_phi = Z_m diag(A, Abar) Z_n^H.
inline CMatrix z_matrix(std::size_t n) {
    const double h = std::sqrt(2.0) / 2.0;
    CMatrix z(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        z(i, i) = cplx(0.0, h);
        z(i, i + n) = h;
        z(i + n, i) = h;
        z(i + n, i + n) = cplx(0.0, h);
    }
    return z;
}

/// phi(X) = [vec(X1); vec(X2)] in R^{2mn}.
inline RVector phi_vec(const CMatrix& x) {
    const std::size_t m = x.rows(), n = x.cols();
    RVector v(2 * m * n);
    std::size_t k = 0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) v[k++] = x(i, j).real();
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) v[k++] = x(i, j).imag();
    return v;
}

inline CMatrix phi_vec_inverse(const RVector& c, std::size_t m, std::size_t n) {
    if (c.dim() != 2 * m * n) throw DimensionError("phi_vec_inverse: length must be 2mn");
    CMatrix x(m, n);
    std::size_t k = 0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) x(i, j) = cplx(c[k++], 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) x(i, j) += cplx(0.0, c[k++]);
    return x;
}

/// Q_s = [[0, I_s], [-I_s, 0]]; Q_s^{-1} = Q_s^T.
inline CMatrix q_matrix(std::size_t s) {
    CMatrix q(2 * s, 2 * s);
    for (std::size_t i = 0; i < s; ++i) {
        q(i, i + s) = 1.0;
        q(i + s, i) = -1.0;
    }
    return q;
}

/// Recovers a complex m x n solution from a real solution Y of the
/// sigma-representation equation: X = 1/4 [I, iI] (Y + Q_m Y Q_n) [I; iI].
/// The symmetrization is a no-op on exact sigma-images.
inline CMatrix reconstruct_from_sigma(const CMatrix& y, std::size_t m, std::size_t n) {
    if (y.rows() != 2 * m || y.cols() != 2 * n)
        throw DimensionError("reconstruct_from_sigma: Y must be 2m x 2n");
    for (std::size_t i = 0; i < y.rows(); ++i)
        for (std::size_t j = 0; j < y.cols(); ++j)
            if (std::abs(y(i, j).imag()) > 1e-12)
                throw NonRealInput("reconstruct_from_sigma: Y must be real");

    const CMatrix sym = 0.5 * (y + q_matrix(m) * y * q_matrix(n));
    // X1 = top-left block, X2 = top-right block of the symmetrized Y
    CMatrix x(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            x(i, j) = cplx(sym(i, j).real(), sym(i, j + n).real());
    return x;
}

} // namespace steinkit
