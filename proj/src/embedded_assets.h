/*
 * Copyright 2026 The fmselect Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FMSELECT_SRC_EMBEDDED_ASSETS_H_
#define FMSELECT_SRC_EMBEDDED_ASSETS_H_

#include <string_view>

namespace fmselect::internal {

// Generated at configure time from data/.
extern const std::string_view kSklearnModel;
extern const std::string_view kSklearnFallbacks;
extern const std::string_view kBaselines;

}  // namespace fmselect::internal

#endif  // FMSELECT_SRC_EMBEDDED_ASSETS_H_
