#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "steinkit/matrix.hpp"

namespace steinkit {

enum class Kind { standard, transpose, conjugate, hermitian, general_n };

/// One equation X = sum_i A_i f(X) B_i + C.
///
/// Dimension rules:
///   f linear in X with square coefficients (standard, conjugate,
///   general_n with f in {identity, conjugate}): A_i m x m, B_i n x n.
///   transpose / hermitian (and general_n with those f): A_i, B_i, C all m x n.
class EquationSpec {
  public:
    Kind kind;
    FKind f;
    std::vector<CMatrix> A_list;
    std::vector<CMatrix> B_list;
    CMatrix C;

    static EquationSpec standard(CMatrix A, CMatrix B, CMatrix C) {
        return make(Kind::standard, FKind::identity, {std::move(A)}, {std::move(B)},
                    std::move(C));
    }
    static EquationSpec transpose(CMatrix A, CMatrix B, CMatrix C) {
        return make(Kind::transpose, FKind::transpose, {std::move(A)}, {std::move(B)},
                    std::move(C));
    }
    static EquationSpec conjugate(CMatrix A, CMatrix B, CMatrix C) {
        return make(Kind::conjugate, FKind::conjugate, {std::move(A)}, {std::move(B)},
                    std::move(C));
    }
    static EquationSpec hermitian(CMatrix A, CMatrix B, CMatrix C) {
        return make(Kind::hermitian, FKind::hermitian, {std::move(A)}, {std::move(B)},
                    std::move(C));
    }
    static EquationSpec general_n(FKind f, std::vector<CMatrix> As, std::vector<CMatrix> Bs,
                                  CMatrix C) {
        return make(Kind::general_n, f, std::move(As), std::move(Bs), std::move(C));
    }

    std::size_t m() const { return C.rows(); }
    std::size_t n() const { return C.cols(); }
    std::size_t terms() const { return A_list.size(); }

    const CMatrix& A() const { return A_list.front(); }
    const CMatrix& B() const { return B_list.front(); }

    /// True when the coefficients multiply f(X) of shape n x m (i.e. f is
    /// transpose or hermitian), so A_i and B_i are m x n like C.
    bool flipped_shape() const { return f == FKind::transpose || f == FKind::hermitian; }

    /// True when f is conjugate-linear, so the lifted system lives over R^{2mn}.
    bool real_lift() const { return f == FKind::conjugate || f == FKind::hermitian; }

  private:
    static EquationSpec make(Kind kind, FKind f, std::vector<CMatrix> As,
                             std::vector<CMatrix> Bs, CMatrix C) {
        EquationSpec s;
        s.kind = kind;
        s.f = f;
        s.A_list = std::move(As);
        s.B_list = std::move(Bs);
        s.C = std::move(C);
        s.validate();
        return s;
    }

    void validate() const {
        if (A_list.empty() || A_list.size() != B_list.size())
            throw DimensionError("EquationSpec: A and B lists must be nonempty and equal length");
        if (kind != Kind::general_n && A_list.size() != 1)
            throw DimensionError("EquationSpec: single-term kinds take one A and one B");
        const std::size_t mm = C.rows(), nn = C.cols();
        for (std::size_t t = 0; t < A_list.size(); ++t) {
            const CMatrix& a = A_list[t];
            const CMatrix& b = B_list[t];
            if (flipped_shape()) {
                if (a.rows() != mm || a.cols() != nn || b.rows() != mm || b.cols() != nn)
                    throw DimensionError("EquationSpec: transpose/hermitian coefficients must be m x n");
            } else {
                if (a.rows() != mm || a.cols() != mm || b.rows() != nn || b.cols() != nn)
                    throw DimensionError("EquationSpec: A_i must be m x m and B_i n x n");
            }
        }
    }
};

inline const char* kind_name(Kind k) {
    switch (k) {
        case Kind::standard: return "standard";
        case Kind::transpose: return "transpose";
        case Kind::conjugate: return "conjugate";
        case Kind::hermitian: return "hermitian";
        case Kind::general_n: return "generalN";
    }
    return "?";
}

inline const char* f_name(FKind f) {
    switch (f) {
        case FKind::identity: return "identity";
        case FKind::transpose: return "transpose";
        case FKind::conjugate: return "conjugate";
        case FKind::hermitian: return "hermitian";
    }
    return "?";
}

/// Right-hand side sum_i A_i f(X) B_i + C.
inline CMatrix equation_rhs(const EquationSpec& spec, const CMatrix& x) {
    const CMatrix fx = apply_f(x, spec.f);
    CMatrix acc = spec.C;
    for (std::size_t t = 0; t < spec.terms(); ++t)
        acc = acc + spec.A_list[t] * fx * spec.B_list[t];
    return acc;
}

/// Relative residual ||X - sum A_i f(X) B_i - C||_F / (1 + ||C||_F).
inline double residual(const EquationSpec& spec, const CMatrix& x) {
    if (x.rows() != spec.m() || x.cols() != spec.n())
        throw DimensionError("residual: X has wrong shape");
    return norm_fro(x - equation_rhs(spec, x)) / (1.0 + norm_fro(spec.C));
}

} // namespace steinkit
