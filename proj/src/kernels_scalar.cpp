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

// Scalar reference kernels. These are the ground truth the SIMD variants are
// equivalence-tested against; keep them obvious.

#include "kernels_backends.hpp"

namespace chiralsim::kernels {

namespace {

double norm_squared_scalar(const cplx* v, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
    }
    return acc;
}

cplx dot_conj_scalar(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

cplx dot_mul_scalar(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

void scale_scalar(cplx* v, std::size_t n, cplx s) {
    for (std::size_t i = 0; i < n; ++i) {
        v[i] *= s;
    }
}

void apply_u2_scalar(cplx* x, cplx* y, std::size_t n, const cplx* u) {
    for (std::size_t i = 0; i < n; ++i) {
        const cplx a = x[i];
        const cplx b = y[i];
        x[i] = u[0] * a + u[1] * b;
        y[i] = u[2] * a + u[3] * b;
    }
}

void apply_u3_scalar(cplx* a, cplx* b, cplx* c, std::size_t n, const cplx* u) {
    for (std::size_t i = 0; i < n; ++i) {
        const cplx x = a[i];
        const cplx y = b[i];
        const cplx z = c[i];
        a[i] = u[0] * x + u[1] * y + u[2] * z;
        b[i] = u[3] * x + u[4] * y + u[5] * z;
        c[i] = u[6] * x + u[7] * y + u[8] * z;
    }
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops table{norm_squared_scalar, dot_conj_scalar, dot_mul_scalar,
                           scale_scalar,        apply_u2_scalar, apply_u3_scalar};
    return table;
}

}  // namespace chiralsim::kernels
