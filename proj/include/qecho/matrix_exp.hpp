// Copyright 2026 The qecho Authors
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

#include "qecho/cmatrix.hpp"

namespace qecho {

/// Matrix exponential of a square complex matrix by scaling-and-squaring
/// with a degree-13 diagonal Pade approximant.  Accurate to roughly 1e-12
/// relative for the generator norms that occur here.  Throws on non-finite
/// input entries.
CMat matrix_exp(const CMat& a);

}  // namespace qecho
