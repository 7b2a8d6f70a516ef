#pragma once

#include <vector>

#include "padlab/poly.hpp"
#include "padlab/rational.hpp"

namespace padlab {

template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(long rows, long cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), d_(static_cast<size_t>(rows * cols), fill) {}

    static Matrix identity(long n) {
        Matrix m(n, n);
        for (long i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    T& operator()(long i, long j) { return d_[static_cast<size_t>(i * cols_ + j)]; }
    const T& operator()(long i, long j) const { return d_[static_cast<size_t>(i * cols_ + j)]; }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_, a.cols_);
        for (size_t i = 0; i < a.d_.size(); ++i) r.d_[i] = a.d_[i] + b.d_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_, a.cols_);
        for (size_t i = 0; i < a.d_.size(); ++i) r.d_[i] = a.d_[i] - b.d_[i];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw error("Matrix: shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (long i = 0; i < a.rows_; ++i)
            for (long k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (coeffwise_zero(aik)) continue;
                for (long j = 0; j < b.cols_; ++j) r(i, j) = r(i, j) + aik * b(k, j);
            }
        return r;
    }
    friend Matrix operator*(const Matrix& a, const T& s) {
        Matrix r = a;
        for (auto& x : r.d_) x = x * s;
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    T trace() const {
        T t(0);
        for (long i = 0; i < rows_; ++i) t = t + (*this)(i, i);
        return t;
    }

    Matrix pow(unsigned long e) const {
        Matrix r = identity(rows_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
    }

private:
    static bool coeffwise_zero(const T& x) {
        if constexpr (requires { coeff_is_zero(x); })
            return coeff_is_zero(x);
        else
            return false;
    }
    long rows_, cols_;
    std::vector<T> d_;
};

using QMatrix = Matrix<Rational>;

/// Characteristic polynomial det(X*I - A), monic, by Faddeev-LeVerrier.
inline Poly<Rational> char_poly(const QMatrix& a) {
    const long n = a.rows();
    if (n != a.cols()) throw error("char_poly: square matrix required");
    std::vector<Rational> c(static_cast<size_t>(n + 1));
    c[static_cast<size_t>(n)] = 1;
    QMatrix m = QMatrix::identity(n);
    for (long k = 1; k <= n; ++k) {
        m = a * m;
        const Rational ck = -m.trace() / k;
        c[static_cast<size_t>(n - k)] = ck;
        for (long i = 0; i < n; ++i) m(i, i) += ck;
    }
    return Poly<Rational>(std::move(c));
}

/// Reduced row echelon form in place; returns the rank.
inline long rref(QMatrix& m) {
    long rank = 0;
    for (long col = 0; col < m.cols() && rank < m.rows(); ++col) {
        long piv = -1;
        for (long r = rank; r < m.rows(); ++r)
            if (m(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (long j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(rank, j));
        const Rational inv = 1 / m(rank, col);
        for (long j = 0; j < m.cols(); ++j) m(rank, j) *= inv;
        for (long r = 0; r < m.rows(); ++r) {
            if (r == rank || m(r, col) == 0) continue;
            const Rational f = m(r, col);
            for (long j = 0; j < m.cols(); ++j) m(r, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

inline long kernel_dimension(QMatrix m) { return m.cols() - rref(m); }

inline QMatrix inverse(const QMatrix& a) {
    const long n = a.rows();
    QMatrix aug(n, 2 * n);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    if (rref(aug) != n) throw error("inverse: singular matrix");
    QMatrix r(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
    return r;
}

inline Rational det(const QMatrix& a) {
    // constant term of char poly carries (-1)^n det
    const auto cp = char_poly(a);
    Rational d = cp[0];
    return (a.rows() % 2) ? -d : d;
}

}  // namespace padlab
