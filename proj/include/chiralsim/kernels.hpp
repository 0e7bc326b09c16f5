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

namespace chiralsim::kernels {

using cplx = std::complex<double>;

/// The arithmetic inner loops of the state-vector engine. Every kernel has a
/// scalar reference implementation and an AVX2 variant; the active backend is
/// picked once at startup from CPUID and can be overridden with the
/// CHIRALSIM_KERNELS environment variable (`scalar`, `avx2`, or `auto`) or
/// programmatically via force_backend(). Backends agree within ~1e-15 per
/// element (reduction order differs); the equivalence suite pins this down.
struct Ops {
    /// sum_i |v[i]|^2
    double (*norm_squared)(const cplx* v, std::size_t n);
    /// sum_i conj(a[i]) * b[i]
    cplx (*dot_conj)(const cplx* a, const cplx* b, std::size_t n);
    /// sum_i a[i] * b[i] (no conjugation; row-times-vector currency)
    cplx (*dot_mul)(const cplx* a, const cplx* b, std::size_t n);
    /// v[i] *= s
    void (*scale)(cplx* v, std::size_t n, cplx s);
    /// In-place 2x2 update of paired runs:
    ///   (x[i], y[i]) <- (u[0] x[i] + u[1] y[i], u[2] x[i] + u[3] y[i])
    void (*apply_u2)(cplx* x, cplx* y, std::size_t n, const cplx* u);
    /// In-place 3x3 update of triple runs, u row-major 3x3.
    void (*apply_u3)(cplx* a, cplx* b, cplx* c, std::size_t n, const cplx* u);
};

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);
bool backend_available(Backend b);

/// Active kernel table (dispatch resolved on first call).
const Ops& ops();
Backend active_backend();

/// Kernel table for a specific backend; throws if unavailable on this CPU.
const Ops& ops(Backend b);

/// Override the active backend (tests; throws if unavailable).
void force_backend(Backend b);

/// Dense d x d row-major times d-vector using the active dot_mul kernel.
inline void matvec(const cplx* m, const cplx* v, cplx* out, std::size_t d) {
    const Ops& k = ops();
    for (std::size_t r = 0; r < d; ++r) {
        out[r] = k.dot_mul(m + r * d, v, d);
    }
}

}  // namespace chiralsim::kernels
