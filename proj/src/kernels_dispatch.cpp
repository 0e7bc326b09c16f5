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

#include <cstdlib>
#include <string>

#include "chiralsim/error.hpp"
#include "kernels_backends.hpp"

namespace chiralsim::kernels {

namespace {

Backend pick_initial_backend() {
    bool avx2_ok = cpu_has_avx2() && avx2_ops_or_null() != nullptr;
    const char* env = std::getenv("CHIRALSIM_KERNELS");
    if (env != nullptr) {
        const std::string want(env);
        if (want == "scalar") {
            return Backend::scalar;
        }
        if (want == "avx2") {
            require(avx2_ok, "CHIRALSIM_KERNELS=avx2 requested but AVX2 is unavailable");
            return Backend::avx2;
        }
        require(want == "auto", "CHIRALSIM_KERNELS must be scalar, avx2, or auto");
    }
    return avx2_ok ? Backend::avx2 : Backend::scalar;
}

Backend& active() {
    static Backend b = pick_initial_backend();
    return b;
}

}  // namespace

const char* backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool backend_available(Backend b) {
    if (b == Backend::scalar) {
        return true;
    }
    return cpu_has_avx2() && avx2_ops_or_null() != nullptr;
}

const Ops& ops(Backend b) {
    if (b == Backend::avx2) {
        require(backend_available(Backend::avx2), "AVX2 kernels unavailable on this CPU");
        return *avx2_ops_or_null();
    }
    return scalar_ops();
}

const Ops& ops() { return ops(active()); }

Backend active_backend() { return active(); }

void force_backend(Backend b) {
    require(backend_available(b), std::string("kernel backend unavailable: ") + backend_name(b));
    active() = b;
}

}  // namespace chiralsim::kernels
