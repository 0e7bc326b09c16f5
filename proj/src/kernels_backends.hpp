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

#include "chiralsim/kernels.hpp"

namespace chiralsim::kernels {

const Ops& scalar_ops();

/// nullptr when the build target has no AVX2 code path.
const Ops* avx2_ops_or_null();

/// Runtime CPU check, independent of whether the code path was built.
bool cpu_has_avx2();

}  // namespace chiralsim::kernels
