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

// AVX2+FMA kernel variants. std::complex<double> is interleaved (re, im), so
// one 256-bit vector carries two amplitudes. Functions carry target
// attributes instead of per-file flags; they are reached only after the
// dispatcher has checked CPUID, so the TU stays safe to build generically.

#include "kernels_backends.hpp"

#if defined(__x86_64__) && defined(__GNUC__)

#include <immintrin.h>

namespace chiralsim::kernels {

namespace {

#define CHIRALSIM_AVX2 __attribute__((target("avx2,fma")))

// [re0,im0,re1,im1] -> [im0,re0,im1,re1]
CHIRALSIM_AVX2 inline __m256d swap_halves(__m256d v) { return _mm256_permute_pd(v, 0x5); }

// v * (cr + i*ci) for both packed complexes; cr/ci pre-broadcast.
CHIRALSIM_AVX2 inline __m256d cmul(__m256d v, __m256d cr, __m256d ci) {
    return _mm256_fmaddsub_pd(v, cr, _mm256_mul_pd(swap_halves(v), ci));
}

CHIRALSIM_AVX2 inline double sum4(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// v[0] - v[1] + v[2] - v[3]
CHIRALSIM_AVX2 inline double sum4_alternating(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_sub_sd(s, _mm_unpackhi_pd(s, s)));
}

CHIRALSIM_AVX2 double norm_squared_avx2(const cplx* v, std::size_t n) {
    const double* p = reinterpret_cast<const double*>(v);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d x = _mm256_loadu_pd(p + 2 * i);
        acc = _mm256_fmadd_pd(x, x, acc);
    }
    double out = sum4(acc);
    if (i < n) {
        out += v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
    }
    return out;
}

CHIRALSIM_AVX2 cplx dot_conj_avx2(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d acc_same = _mm256_setzero_pd();  // a .* b lanewise
    __m256d acc_swap = _mm256_setzero_pd();  // a .* swap(b) lanewise
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        acc_same = _mm256_fmadd_pd(va, vb, acc_same);
        acc_swap = _mm256_fmadd_pd(va, swap_halves(vb), acc_swap);
    }
    // conj(a)*b: re = ar*br + ai*bi, im = ar*bi - ai*br
    double re = sum4(acc_same);
    double im = sum4_alternating(acc_swap);
    if (i < n) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

CHIRALSIM_AVX2 cplx dot_mul_avx2(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d acc_same = _mm256_setzero_pd();
    __m256d acc_swap = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        acc_same = _mm256_fmadd_pd(va, vb, acc_same);
        acc_swap = _mm256_fmadd_pd(va, swap_halves(vb), acc_swap);
    }
    // a*b: re = ar*br - ai*bi, im = ar*bi + ai*br
    double re = sum4_alternating(acc_same);
    double im = sum4(acc_swap);
    if (i < n) {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

CHIRALSIM_AVX2 void scale_avx2(cplx* v, std::size_t n, cplx s) {
    double* p = reinterpret_cast<double*>(v);
    const __m256d sr = _mm256_set1_pd(s.real());
    const __m256d si = _mm256_set1_pd(s.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d x = _mm256_loadu_pd(p + 2 * i);
        _mm256_storeu_pd(p + 2 * i, cmul(x, sr, si));
    }
    if (i < n) {
        v[i] *= s;
    }
}

CHIRALSIM_AVX2 void apply_u2_avx2(cplx* x, cplx* y, std::size_t n, const cplx* u) {
    double* px = reinterpret_cast<double*>(x);
    double* py = reinterpret_cast<double*>(y);
    const __m256d u0r = _mm256_set1_pd(u[0].real()), u0i = _mm256_set1_pd(u[0].imag());
    const __m256d u1r = _mm256_set1_pd(u[1].real()), u1i = _mm256_set1_pd(u[1].imag());
    const __m256d u2r = _mm256_set1_pd(u[2].real()), u2i = _mm256_set1_pd(u[2].imag());
    const __m256d u3r = _mm256_set1_pd(u[3].real()), u3i = _mm256_set1_pd(u[3].imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d a = _mm256_loadu_pd(px + 2 * i);
        __m256d b = _mm256_loadu_pd(py + 2 * i);
        __m256d na = _mm256_add_pd(cmul(a, u0r, u0i), cmul(b, u1r, u1i));
        __m256d nb = _mm256_add_pd(cmul(a, u2r, u2i), cmul(b, u3r, u3i));
        _mm256_storeu_pd(px + 2 * i, na);
        _mm256_storeu_pd(py + 2 * i, nb);
    }
    if (i < n) {
        const cplx a = x[i];
        const cplx b = y[i];
        x[i] = u[0] * a + u[1] * b;
        y[i] = u[2] * a + u[3] * b;
    }
}

CHIRALSIM_AVX2 void apply_u3_avx2(cplx* a, cplx* b, cplx* c, std::size_t n, const cplx* u) {
    double* pa = reinterpret_cast<double*>(a);
    double* pb = reinterpret_cast<double*>(b);
    double* pc = reinterpret_cast<double*>(c);
    __m256d ur[9];
    __m256d ui[9];
    for (int k = 0; k < 9; ++k) {
        ur[k] = _mm256_set1_pd(u[k].real());
        ui[k] = _mm256_set1_pd(u[k].imag());
    }
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d x = _mm256_loadu_pd(pa + 2 * i);
        __m256d y = _mm256_loadu_pd(pb + 2 * i);
        __m256d z = _mm256_loadu_pd(pc + 2 * i);
        __m256d nx =
            _mm256_add_pd(_mm256_add_pd(cmul(x, ur[0], ui[0]), cmul(y, ur[1], ui[1])),
                          cmul(z, ur[2], ui[2]));
        __m256d ny =
            _mm256_add_pd(_mm256_add_pd(cmul(x, ur[3], ui[3]), cmul(y, ur[4], ui[4])),
                          cmul(z, ur[5], ui[5]));
        __m256d nz =
            _mm256_add_pd(_mm256_add_pd(cmul(x, ur[6], ui[6]), cmul(y, ur[7], ui[7])),
                          cmul(z, ur[8], ui[8]));
        _mm256_storeu_pd(pa + 2 * i, nx);
        _mm256_storeu_pd(pb + 2 * i, ny);
        _mm256_storeu_pd(pc + 2 * i, nz);
    }
    if (i < n) {
        const cplx x = a[i];
        const cplx y = b[i];
        const cplx z = c[i];
        a[i] = u[0] * x + u[1] * y + u[2] * z;
        b[i] = u[3] * x + u[4] * y + u[5] * z;
        c[i] = u[6] * x + u[7] * y + u[8] * z;
    }
}

#undef CHIRALSIM_AVX2

}  // namespace

const Ops* avx2_ops_or_null() {
    static const Ops table{norm_squared_avx2, dot_conj_avx2, dot_mul_avx2,
                           scale_avx2,        apply_u2_avx2, apply_u3_avx2};
    return &table;
}

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"); }

}  // namespace chiralsim::kernels

#else

namespace chiralsim::kernels {

const Ops* avx2_ops_or_null() { return nullptr; }
bool cpu_has_avx2() { return false; }

}  // namespace chiralsim::kernels

#endif
