// Copyright 2026 The uqsd Authors
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

namespace uqsd::tol {

inline constexpr double kUnitarity = 1e-10;
inline constexpr double kHermiticity = 1e-12;
inline constexpr double kPsd = 1e-10;
inline constexpr double kNormalization = 1e-12;
inline constexpr double kCompleteness = 1e-10;
// Ramsey amplitudes and the theta quantization rule.
inline constexpr double kParams = 1e-12;
inline constexpr double kUnambiguity = 1e-12;
inline constexpr double kProbabilitySum = 1e-10;
inline constexpr double kProbabilityRange = 1e-12;
// Below this an outcome is treated as impossible and its collapsed state is undefined.
inline constexpr double kZeroProbability = 1e-14;
inline constexpr double kAnalyticColumns = 1e-10;

}  // namespace uqsd::tol
