#pragma once

#include "thetalab/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace thetalab {

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<CyclotomicNumber> {
    static bool is_zero(const CyclotomicNumber& s) { return s.is_zero(); }
    static double magnitude(const CyclotomicNumber& s) { return std::abs(s.to_complex()); }
    static std::complex<double> to_c(const CyclotomicNumber& s) { return s.to_complex(); }
};

template <>
struct ScalarOps<std::complex<double>> {
    static bool is_zero(const std::complex<double>& s) { return s == 0.0; }
    static double magnitude(const std::complex<double>& s) { return std::abs(s); }
    static std::complex<double> to_c(const std::complex<double>& s) { return s; }
};

// Dense row-major square or rectangular matrix.
template <class S>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, const S& fill = S(0)) : r_(r), c_(c), a_(r * c, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }
    static Matrix diagonal(const std::vector<S>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    S& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    const std::vector<S>& data() const { return a_; }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.c_ != y.r_) throw std::invalid_argument("matrix shape mismatch");
        Matrix z(x.r_, y.c_);
        for (std::size_t i = 0; i < x.r_; ++i)
            for (std::size_t k = 0; k < x.c_; ++k) {
                const S& xik = x(i, k);
                if (ScalarOps<S>::is_zero(xik)) continue;
                for (std::size_t j = 0; j < y.c_; ++j)
                    if (!ScalarOps<S>::is_zero(y(k, j))) z(i, j) += xik * y(k, j);
            }
        return z;
    }
    friend std::vector<S> operator*(const Matrix& x, const std::vector<S>& v) {
        if (x.c_ != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
        std::vector<S> out(x.r_, S(0));
        for (std::size_t i = 0; i < x.r_; ++i)
            for (std::size_t j = 0; j < x.c_; ++j)
                if (!ScalarOps<S>::is_zero(x(i, j))) out[i] += x(i, j) * v[j];
        return out;
    }
    Matrix scaled(const S& s) const {
        Matrix m = *this;
        for (auto& x : m.a_) x = x * s;
        return m;
    }
    Matrix transpose() const {
        Matrix m(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    // Gauss-Jordan; pivots on the first nonzero entry (exact) or the largest (numeric).
    Matrix inverse() const {
        if (r_ != c_) throw std::invalid_argument("inverse of non-square matrix");
        const std::size_t n = r_;
        Matrix a = *this, b = identity(n);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = n;
            double best = 0;
            for (std::size_t i = col; i < n; ++i) {
                if (ScalarOps<S>::is_zero(a(i, col))) continue;
                double mag = ScalarOps<S>::magnitude(a(i, col));
                if (piv == n || (numeric && mag > best)) {
                    piv = i;
                    best = mag;
                    if (!numeric) break;
                }
            }
            if (piv == n) throw std::domain_error("singular matrix");
            if (piv != col)
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(a(piv, j), a(col, j));
                    std::swap(b(piv, j), b(col, j));
                }
            S inv = S(1) / a(col, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(col, j) = a(col, j) * inv;
                b(col, j) = b(col, j) * inv;
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (i == col || ScalarOps<S>::is_zero(a(i, col))) continue;
                S f = a(i, col);
                for (std::size_t j = 0; j < n; ++j) {
                    if (!ScalarOps<S>::is_zero(a(col, j))) a(i, j) -= f * a(col, j);
                    if (!ScalarOps<S>::is_zero(b(col, j))) b(i, j) -= f * b(col, j);
                }
            }
        }
        return b;
    }

    Matrix pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Matrix base = *this, r = identity(r_);
        while (e) {
            if (e & 1) r = r * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return r;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
    }

private:
    static constexpr bool numeric = std::is_same_v<S, std::complex<double>>;
    std::size_t r_ = 0, c_ = 0;
    std::vector<S> a_;
};

using CMatrix = Matrix<CyclotomicNumber>;
using NMatrix = Matrix<std::complex<double>>;

NMatrix to_numeric(const CMatrix& m);

}  // namespace thetalab
