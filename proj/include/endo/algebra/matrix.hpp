#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "endo/error.hpp"

namespace endo {

/// Small dense row-major matrix over a ring T.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t r, size_t c, const T& fill = T(0)) : r_(r), c_(c), a_(r * c, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        r_ = rows.size();
        c_ = r_ ? rows.begin()->size() : 0;
        for (const auto& row : rows) {
            require(row.size() == c_, ErrorKind::InvalidInput, "ragged matrix literal");
            for (const auto& x : row) a_.push_back(x);
        }
    }

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    T& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const T& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    friend Matrix operator*(const Matrix& A, const Matrix& B) {
        require(A.c_ == B.r_, ErrorKind::InvalidInput, "matrix shape mismatch in product");
        Matrix C(A.r_, B.c_);
        for (size_t i = 0; i < A.r_; ++i)
            for (size_t k = 0; k < A.c_; ++k) {
                const T& x = A(i, k);
                if (x == T(0)) continue;
                for (size_t j = 0; j < B.c_; ++j) C(i, j) = C(i, j) + x * B(k, j);
            }
        return C;
    }
    friend Matrix operator+(const Matrix& A, const Matrix& B) {
        require(A.r_ == B.r_ && A.c_ == B.c_, ErrorKind::InvalidInput, "matrix shape mismatch in sum");
        Matrix C = A;
        for (size_t i = 0; i < C.a_.size(); ++i) C.a_[i] = C.a_[i] + B.a_[i];
        return C;
    }
    friend Matrix operator-(const Matrix& A, const Matrix& B) {
        require(A.r_ == B.r_ && A.c_ == B.c_, ErrorKind::InvalidInput, "matrix shape mismatch in difference");
        Matrix C = A;
        for (size_t i = 0; i < C.a_.size(); ++i) C.a_[i] = C.a_[i] - B.a_[i];
        return C;
    }
    friend Matrix operator*(const T& s, const Matrix& A) {
        Matrix C = A;
        for (auto& x : C.a_) x = s * x;
        return C;
    }
    friend bool operator==(const Matrix& A, const Matrix& B) {
        if (A.r_ != B.r_ || A.c_ != B.c_) return false;
        for (size_t i = 0; i < A.a_.size(); ++i)
            if (!(A.a_[i] == B.a_[i])) return false;
        return true;
    }
    friend bool operator!=(const Matrix& A, const Matrix& B) { return !(A == B); }

    std::vector<T> apply(const std::vector<T>& v) const {
        require(v.size() == c_, ErrorKind::InvalidInput, "vector length mismatch");
        std::vector<T> out(r_, T(0));
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) out[i] = out[i] + (*this)(i, j) * v[j];
        return out;
    }

    T trace() const {
        T t(0);
        for (size_t i = 0; i < std::min(r_, c_); ++i) t = t + (*this)(i, i);
        return t;
    }

    Matrix transpose() const {
        Matrix m(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

}  // namespace endo
