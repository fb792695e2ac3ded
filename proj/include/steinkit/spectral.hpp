#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "steinkit/matrix.hpp"

namespace steinkit {

/// Eigenvalue multiset of a square complex matrix.
struct Spectrum {
    std::vector<cplx> values;
};

/// Coefficients alpha_0..alpha_m of det(sI - A) = s^m + sum_{i<m} alpha_i s^i,
/// stored with alpha[m] = 1. The reversed polynomial h_A(s) = det(I - sA)
/// is then sum_i alpha_{m-i} s^i.
struct CharPoly {
    std::vector<cplx> alpha;
    std::size_t order() const { return alpha.size() - 1; }
};

/// General solution of a (possibly singular) linear system A x = b:
/// a particular solution plus an orthonormal kernel basis.
struct GeneralLinearSolution {
    CVector particular;
    std::vector<CVector> nullspace_basis;
    double tol_used = 0.0;
};

namespace detail {

constexpr double kMachEps = std::numeric_limits<double>::epsilon();

// Householder reduction to upper Hessenberg form, in place.
inline void hessenberg(CMatrix& h) {
    const std::size_t n = h.rows();
    if (n < 3) return;
    std::vector<cplx> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double colnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) colnorm += std::norm(h(i, k));
        colnorm = std::sqrt(colnorm);
        if (colnorm <= 0.0) continue;
        cplx x0 = h(k + 1, k);
        cplx phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : cplx(1.0, 0.0);
        cplx alpha = -phase * colnorm;
        // v = x - alpha e1, normalized
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = h(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 <= 0.0) continue;
        // H = I - 2 v v^H / |v|^2 ; apply from both sides
        for (std::size_t j = k; j < n; ++j) { // rows k+1..n-1, H*A
            cplx dot(0.0, 0.0);
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
            dot *= 2.0 / vnorm2;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= dot * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) { // cols k+1..n-1, A*H
            cplx dot(0.0, 0.0);
            for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
            dot *= 2.0 / vnorm2;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[j]);
        }
    }
}

// Complex Givens rotation: returns (c, s) with c real such that
// [c, s; -conj(s), c]^H applied to (f, g) zeroes the second component.
inline void givens(cplx f, cplx g, double& c, cplx& s) {
    const double af = std::abs(f), ag = std::abs(g);
    if (ag == 0.0) {
        c = 1.0;
        s = cplx(0.0, 0.0);
        return;
    }
    if (af == 0.0) {
        c = 0.0;
        s = std::conj(g) / ag;
        return;
    }
    const double r = std::hypot(af, ag);
    c = af / r;
    s = (f / af) * (std::conj(g) / r);
}

// Eigenvalues of a 2x2 complex matrix [[a,b],[c,d]].
inline std::pair<cplx, cplx> eig2x2(cplx a, cplx b, cplx c, cplx d) {
    const cplx tr = a + d;
    const cplx diff = (a - d) * 0.5;
    const cplx disc = std::sqrt(diff * diff + b * c);
    return {tr * 0.5 + disc, tr * 0.5 - disc};
}

// Wilkinson shift: eigenvalue of the trailing 2x2 block closest to h(n-1,n-1).
inline cplx wilkinson_shift(const CMatrix& h, std::size_t lo, std::size_t hi) {
    if (hi == lo) return h(hi, hi);
    auto [l1, l2] = eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    const cplx d = h(hi, hi);
    return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

} // namespace detail

/// Eigenvalues via Hessenberg reduction followed by implicitly shifted QR
/// with Wilkinson shifts. Deflation threshold 1e-14*(|h_kk|+|h_k+1,k+1|).
inline Spectrum eigenvalues(const CMatrix& a) {
    if (!a.square()) throw NonSquareError("eigenvalues: matrix must be square");
    const std::size_t n = a.rows();
    CMatrix h = a;
    detail::hessenberg(h);

    Spectrum spec;
    spec.values.reserve(n);

    auto negligible = [&](std::size_t k) {
        const double thresh = 1e-14 * (std::abs(h(k, k)) + std::abs(h(k + 1, k + 1)));
        return std::abs(h(k + 1, k)) <= std::max(thresh, 1e-300);
    };

    std::size_t hi = n - 1;
    std::size_t sweeps = 0;
    const std::size_t max_sweeps = 100 * n;
    std::size_t since_deflation = 0;

    while (true) {
        // deflate fully converged trailing eigenvalues
        while (true) {
            if (hi == 0) {
                spec.values.push_back(h(0, 0));
                return spec;
            }
            if (negligible(hi - 1)) {
                spec.values.push_back(h(hi, hi));
                --hi;
                since_deflation = 0;
                continue;
            }
            if (hi >= 1 && (hi == 1 || negligible(hi - 2))) {
                auto [l1, l2] = detail::eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi),
                                               h(hi, hi - 1), h(hi, hi));
                spec.values.push_back(l1);
                spec.values.push_back(l2);
                if (hi == 1) return spec;
                hi -= 2;
                since_deflation = 0;
                continue;
            }
            break;
        }

        if (++sweeps > max_sweeps)
            throw ConvergenceError("eigenvalues: QR did not converge");

        // active block [lo..hi]
        std::size_t lo = hi;
        while (lo > 0 && !negligible(lo - 1)) --lo;

        cplx mu = detail::wilkinson_shift(h, lo, hi);
        if (++since_deflation % 16 == 0) {
            // exceptional shift to break rare limit cycles
            mu = h(hi, hi) + cplx(std::abs(h(hi, hi - 1)), 0.0) * 0.75;
        }

        // implicit single-shift QR step with bulge chasing
        cplx x = h(lo, lo) - mu;
        cplx y = h(lo + 1, lo);
        for (std::size_t k = lo; k < hi; ++k) {
            double c;
            cplx s;
            detail::givens(x, y, c, s);
            // rows k, k+1
            const std::size_t jstart = (k > lo) ? k - 1 : lo;
            for (std::size_t j = jstart; j <= hi; ++j) {
                const cplx t1 = h(k, j), t2 = h(k + 1, j);
                h(k, j) = c * t1 + s * t2;
                h(k + 1, j) = -std::conj(s) * t1 + c * t2;
            }
            // columns k, k+1
            const std::size_t iend = std::min(hi, k + 2);
            for (std::size_t i = lo; i <= iend; ++i) {
                const cplx t1 = h(i, k), t2 = h(i, k + 1);
                h(i, k) = c * t1 + std::conj(s) * t2;
                h(i, k + 1) = -s * t1 + c * t2;
            }
            if (k + 1 < hi) {
                x = h(k + 1, k);
                y = h(k + 2, k);
            }
        }
    }
}

inline double spectral_radius(const CMatrix& a) {
    Spectrum s = eigenvalues(a);
    double r = 0.0;
    for (cplx l : s.values) r = std::max(r, std::abs(l));
    return r;
}

/// Thin SVD A = U diag(s) V^H computed by one-sided Jacobi: U is m x n with
/// zero columns where s_j == 0, V is n x n unitary, s sorted descending.
struct Svd {
    CMatrix u;
    std::vector<double> s;
    CMatrix v;
};

inline Svd svd(const CMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    CMatrix w = a;
    CMatrix v = CMatrix::identity(n);

    const double off_tol = 1e-15;
    // columns this far below the matrix scale are numerical zeros; rotating
    // them against each other only churns roundoff (and subnormal phases
    // would break unitarity of the updates)
    const double fnorm = norm_fro(a);
    const double dead2 = (1e-19 * fnorm) * (1e-19 * fnorm);
    for (int sweep = 0; sweep < 64; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0;
                cplx g(0.0, 0.0);
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += std::norm(w(i, p));
                    beta += std::norm(w(i, q));
                    g += std::conj(w(i, p)) * w(i, q);
                }
                const double ag = std::abs(g);
                if (ag <= off_tol * std::sqrt(alpha * beta) || ag < 1e-298) continue;
                if (alpha < dead2 && beta < dead2) continue;
                rotated = true;
                const cplx phase = g / ag;
                const double tau = (beta - alpha) / (2.0 * ag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                // unitary update of columns p, q of W and V
                const cplx sp = s * std::conj(phase); // applied with e^{-i phi} folded in
                for (std::size_t i = 0; i < m; ++i) {
                    const cplx wp = w(i, p), wq = w(i, q);
                    w(i, p) = c * wp - sp * wq;
                    w(i, q) = s * wp + c * std::conj(phase) * wq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - sp * vq;
                    v(i, q) = s * vp + c * std::conj(phase) * vq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) norm2 += std::norm(w(i, j));
        sv[j] = std::sqrt(norm2);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return sv[i] > sv[j];
    });

    Svd out;
    out.u = CMatrix(m, n);
    out.v = CMatrix(n, n);
    out.s.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.s[j] = sv[src];
        if (sv[src] > 1e-300)
            for (std::size_t i = 0; i < m; ++i) out.u(i, j) = w(i, src) / sv[src];
        for (std::size_t i = 0; i < n; ++i) out.v(i, j) = v(i, src);
    }
    return out;
}

/// Numerical rank: singular values above tol; tol == 0 selects
/// max(m,n) * eps * sigma_max.
inline std::size_t rank(const CMatrix& a, double tol = 0.0) {
    Svd d = svd(a);
    if (d.s.empty() || d.s[0] == 0.0) return 0;
    const double thresh =
        tol > 0.0 ? tol
                  : static_cast<double>(std::max(a.rows(), a.cols())) * detail::kMachEps * d.s[0];
    std::size_t r = 0;
    for (double s : d.s)
        if (s > thresh) ++r;
    return r;
}

/// Moore-Penrose pseudoinverse via SVD.
inline CMatrix pseudo_inverse(const CMatrix& a, double tol = 0.0) {
    Svd d = svd(a);
    const double smax = d.s.empty() ? 0.0 : d.s[0];
    const double thresh =
        tol > 0.0 ? tol
                  : static_cast<double>(std::max(a.rows(), a.cols())) * detail::kMachEps * smax;
    const std::size_t m = a.rows(), n = a.cols();
    CMatrix pinv(n, m);
    for (std::size_t k = 0; k < d.s.size(); ++k) {
        if (d.s[k] <= thresh || d.s[k] == 0.0) continue;
        const double inv = 1.0 / d.s[k];
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = d.v(i, k) * inv;
            for (std::size_t j = 0; j < m; ++j) pinv(i, j) += vik * std::conj(d.u(j, k));
        }
    }
    return pinv;
}

/// Orthonormal basis of the kernel of A (columns of V below the rank cut).
inline std::vector<CVector> nullspace(const CMatrix& a, double tol = 0.0) {
    Svd d = svd(a);
    const double smax = d.s.empty() ? 0.0 : d.s[0];
    const double thresh =
        tol > 0.0 ? tol
                  : static_cast<double>(std::max(a.rows(), a.cols())) * detail::kMachEps * smax;
    std::vector<CVector> basis;
    const std::size_t n = a.cols();
    for (std::size_t k = 0; k < n; ++k) {
        if (d.s[k] > thresh && d.s[k] != 0.0) continue;
        CVector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = d.v(i, k);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// General solution of A x = b with the Moore-Penrose inverse as
/// the generalized inverse: x = A^+ b + kernel combinations. Throws
/// NotSolvable when the consistency test ||A A^+ b - b|| <= tol (1 + ||b||)
/// fails.
inline GeneralLinearSolution solve_linear_general(const CMatrix& a, const CVector& b,
                                                  double tol = 1e-10) {
    if (a.rows() != b.dim())
        throw DimensionError("solve_linear_general: rhs dimension mismatch");
    Svd d = svd(a);
    const double smax = d.s.empty() ? 0.0 : d.s[0];
    const double rank_thresh =
        static_cast<double>(std::max(a.rows(), a.cols())) * detail::kMachEps * smax;

    const std::size_t m = a.rows(), n = a.cols();
    CVector x(n);
    for (std::size_t k = 0; k < d.s.size(); ++k) {
        if (d.s[k] <= rank_thresh || d.s[k] == 0.0) continue;
        cplx coef(0.0, 0.0);
        for (std::size_t i = 0; i < m; ++i) coef += std::conj(d.u(i, k)) * b[i];
        coef /= d.s[k];
        for (std::size_t i = 0; i < n; ++i) x[i] += coef * d.v(i, k);
    }

    CVector res = a * x;
    double err = 0.0;
    for (std::size_t i = 0; i < m; ++i) err += std::norm(res[i] - b[i]);
    err = std::sqrt(err);
    if (err > tol * (1.0 + norm2(b)))
        throw NotSolvable("solve_linear_general: system is inconsistent");

    GeneralLinearSolution sol;
    sol.particular = std::move(x);
    sol.tol_used = tol;
    for (std::size_t k = 0; k < n; ++k) {
        if (d.s[k] > rank_thresh && d.s[k] != 0.0) continue;
        CVector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = d.v(i, k);
        sol.nullspace_basis.push_back(std::move(v));
    }
    return sol;
}

/// Characteristic polynomial coefficients by the Faddeev-LeVerrier recursion.
/// Guarded to order <= 64; the recursion is exact in exact arithmetic but
/// loses accuracy for large orders.
inline CharPoly char_poly_reversed(const CMatrix& a) {
    if (!a.square()) throw NonSquareError("char_poly_reversed: matrix must be square");
    const std::size_t m = a.rows();
    if (m > 64) throw OrderTooLarge("char_poly_reversed: order above 64");

    CharPoly p;
    p.alpha.assign(m + 1, cplx(0.0, 0.0));
    p.alpha[m] = 1.0;

    CMatrix mk = CMatrix::zero(m, m); // M_0 = 0
    for (std::size_t k = 1; k <= m; ++k) {
        // M_k = A M_{k-1} + c_{m-k+1} I
        mk = a * mk;
        const cplx ck = p.alpha[m - k + 1];
        for (std::size_t i = 0; i < m; ++i) mk(i, i) += ck;
        const CMatrix am = a * mk;
        p.alpha[m - k] = -trace(am) / static_cast<double>(k);
    }
    return p;
}

/// Evaluates the reversed polynomial h_A(M) = sum_i alpha_{m-i} M^i by Horner.
inline CMatrix poly_eval_matrix(const CharPoly& p, const CMatrix& m) {
    if (!m.square()) throw NonSquareError("poly_eval_matrix: matrix must be square");
    const std::size_t deg = p.order();
    const std::size_t n = m.rows();
    CMatrix acc(n, n);
    for (std::size_t i = 0; i < n; ++i) acc(i, i) = p.alpha[0];
    for (std::size_t k = 1; k <= deg; ++k) {
        acc = m * acc;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += p.alpha[k];
    }
    return acc;
}

/// Determinant via LU with partial pivoting.
inline cplx det(const CMatrix& a) {
    if (!a.square()) throw NonSquareError("det: matrix must be square");
    const std::size_t n = a.rows();
    CMatrix lu = a;
    cplx d(1.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > best) {
                best = std::abs(lu(i, k));
                piv = i;
            }
        if (best == 0.0) return cplx(0.0, 0.0);
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(piv, j), lu(k, j));
            d = -d;
        }
        d *= lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = lu(i, k) / lu(k, k);
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
    return d;
}

} // namespace steinkit
