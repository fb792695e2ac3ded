#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "steinkit/errors.hpp"

namespace steinkit {

using cplx = std::complex<double>;

inline bool is_finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Dense complex matrix, row-major storage. Values are treated as immutable
/// once handed to a solver; all operations return fresh matrices.
class CMatrix {
  public:
    CMatrix() = default;

    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {
        if (rows == 0 || cols == 0)
            throw DimensionError("CMatrix: dimensions must be positive");
    }

    CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (rows == 0 || cols == 0)
            throw DimensionError("CMatrix: dimensions must be positive");
        if (data_.size() != rows * cols)
            throw DimensionError("CMatrix: entry count does not match rows*cols");
        for (const cplx& z : data_)
            if (!is_finite(z))
                throw NonFiniteEntry("CMatrix: non-finite entry rejected");
    }

    CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        if (rows_ == 0 || cols_ == 0)
            throw DimensionError("CMatrix: dimensions must be positive");
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw DimensionError("CMatrix: ragged initializer");
            for (cplx z : r) {
                if (!is_finite(z))
                    throw NonFiniteEntry("CMatrix: non-finite entry rejected");
                data_.push_back(z);
            }
        }
    }

    static CMatrix zero(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }

    static CMatrix identity(std::size_t n) {
        CMatrix I(n, n);
        for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
        return I;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    cplx operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cplx>& data() const { return data_; }

    bool same_shape(const CMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    bool operator==(const CMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Complex column vector.
class CVector {
  public:
    CVector() = default;

    explicit CVector(std::size_t dim) : data_(dim, cplx(0.0, 0.0)) {
        if (dim == 0) throw DimensionError("CVector: dimension must be positive");
    }

    explicit CVector(std::vector<cplx> entries) : data_(std::move(entries)) {
        if (data_.empty()) throw DimensionError("CVector: dimension must be positive");
        for (const cplx& z : data_)
            if (!is_finite(z))
                throw NonFiniteEntry("CVector: non-finite entry rejected");
    }

    std::size_t dim() const { return data_.size(); }
    cplx& operator[](std::size_t i) { return data_[i]; }
    cplx operator[](std::size_t i) const { return data_[i]; }
    const std::vector<cplx>& data() const { return data_; }

    bool operator==(const CVector& other) const { return data_ == other.data_; }

  private:
    std::vector<cplx> data_;
};

/// Real column vector (carrier for the phi vectorization).
class RVector {
  public:
    RVector() = default;

    explicit RVector(std::size_t dim) : data_(dim, 0.0) {
        if (dim == 0) throw DimensionError("RVector: dimension must be positive");
    }

    explicit RVector(std::vector<double> entries) : data_(std::move(entries)) {
        if (data_.empty()) throw DimensionError("RVector: dimension must be positive");
        for (double x : data_)
            if (!std::isfinite(x))
                throw NonFiniteEntry("RVector: non-finite entry rejected");
    }

    std::size_t dim() const { return data_.size(); }
    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }
    const std::vector<double>& data() const { return data_; }

  private:
    std::vector<double> data_;
};

// ---------------------------------------------------------------------------
// arithmetic

inline CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    if (!a.same_shape(b)) throw DimensionError("operator+: shape mismatch");
    CMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

inline CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    if (!a.same_shape(b)) throw DimensionError("operator-: shape mismatch");
    CMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

inline CMatrix operator*(cplx s, const CMatrix& a) {
    CMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

inline CMatrix operator*(const CMatrix& a, cplx s) { return s * a; }

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimension mismatch");
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

inline CVector operator*(const CMatrix& a, const CVector& x) {
    if (a.cols() != x.dim()) throw DimensionError("matvec: dimension mismatch");
    CVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

inline CMatrix transpose(const CMatrix& a) {
    CMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

inline CMatrix conjugate(const CMatrix& a) {
    CMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = std::conj(a(i, j));
    return c;
}

inline CMatrix adjoint(const CMatrix& a) {
    CMatrix h(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) h(j, i) = std::conj(a(i, j));
    return h;
}

inline cplx trace(const CMatrix& a) {
    if (!a.square()) throw NonSquareError("trace: matrix must be square");
    cplx t(0.0, 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

inline double norm_fro(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

inline double norm2(const CVector& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) s += std::norm(x[i]);
    return std::sqrt(s);
}

inline double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

/// M^p by binary powering; p == 0 gives the identity.
inline CMatrix matrix_power(const CMatrix& m, unsigned long long p) {
    if (!m.square()) throw NonSquareError("matrix_power: matrix must be square");
    CMatrix result = CMatrix::identity(m.rows());
    CMatrix base = m;
    while (p > 0) {
        if (p & 1ULL) result = result * base;
        base = base * base;
        p >>= 1ULL;
    }
    return result;
}

// ---------------------------------------------------------------------------
// vectorization machinery

/// Column-stacking: vec(X) lists X column by column.
inline CVector vec(const CMatrix& x) {
    CVector v(x.rows() * x.cols());
    std::size_t k = 0;
    for (std::size_t j = 0; j < x.cols(); ++j)
        for (std::size_t i = 0; i < x.rows(); ++i) v[k++] = x(i, j);
    return v;
}

inline CMatrix unvec(const CVector& v, std::size_t m, std::size_t n) {
    if (v.dim() != m * n) throw DimensionError("unvec: length must equal m*n");
    CMatrix x(m, n);
    std::size_t k = 0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) x(i, j) = v[k++];
    return x;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return k;
}

/// Permutation P(m,n) with vec(X^T) = P(m,n) vec(X) for every m x n matrix X.
/// Entries are exact 0/1.
inline CMatrix commutation_matrix(std::size_t m, std::size_t n) {
    CMatrix p(m * n, m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) p(i * n + j, j * m + i) = 1.0;
    return p;
}

enum class FKind { identity, transpose, conjugate, hermitian };

inline CMatrix apply_f(const CMatrix& x, FKind kind) {
    switch (kind) {
        case FKind::identity: return x;
        case FKind::transpose: return transpose(x);
        case FKind::conjugate: return conjugate(x);
        case FKind::hermitian: return adjoint(x);
    }
    throw Error("apply_f: unknown kind");
}

} // namespace steinkit
