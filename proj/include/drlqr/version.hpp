// Copyright 2026 The drlqr Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DRLQR_VERSION_HPP_
#define DRLQR_VERSION_HPP_

namespace drlqr {

inline constexpr const char* kVersion = "0.1.0";

// Recorded in every CSV header so artifacts document their own provenance.
inline constexpr const char* kRngName = "splitmix64+box-muller";

}  // namespace drlqr

#endif  // DRLQR_VERSION_HPP_
