// Copyright 2026 The chiralsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "chiralsim/error.hpp"

namespace chiralsim {

using cplx = std::complex<double>;

/// Small dense complex matrix, row-major. Deliberately minimal: just what the
/// operator algebra, the Hamiltonian builder, and the density matrices need.
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const cplx* data() const { return data_.data(); }
    cplx* data() { return data_.data(); }
    const cplx* row(std::size_t r) const { return data_.data() + r * cols_; }

    CMatrix adjoint() const {
        CMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    cplx trace() const {
        require(rows_ == cols_, "trace: matrix not square");
        cplx t = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    CMatrix& operator+=(const CMatrix& o) {
        require(rows_ == o.rows_ && cols_ == o.cols_, "matrix add: shape mismatch");
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] += o.data_[i];
        }
        return *this;
    }

    CMatrix& operator-=(const CMatrix& o) {
        require(rows_ == o.rows_ && cols_ == o.cols_, "matrix sub: shape mismatch");
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] -= o.data_[i];
        }
        return *this;
    }

    CMatrix& operator*=(cplx s) {
        for (auto& v : data_) {
            v *= s;
        }
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
    friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
        require(a.cols_ == b.rows_, "matrix mul: shape mismatch");
        CMatrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx ark = a(r, k);
                if (ark == cplx(0.0, 0.0)) {
                    continue;
                }
                for (std::size_t c = 0; c < b.cols_; ++c) {
                    out(r, c) += ark * b(k, c);
                }
            }
        }
        return out;
    }

    /// max_ij |a_ij - b_ij|
    double max_abs_diff(const CMatrix& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, "max_abs_diff: shape mismatch");
        double m = 0.0;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            m = std::max(m, std::abs(data_[i] - o.data_[i]));
        }
        return m;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) {
            m = std::max(m, std::abs(v));
        }
        return m;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

}  // namespace chiralsim
