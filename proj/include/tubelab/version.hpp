// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace tubelab {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace tubelab
