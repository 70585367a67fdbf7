// Copyright 2026 The PoseKit Authors.
//
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

#include "posekit/error.hpp"

namespace posekit {

ParseError::ParseError(std::size_t line, const std::string& detail,
                       const std::string& source)
    : Error(ErrorKind::kInvalidInput,
            source.empty()
                ? "line " + std::to_string(line) + ": " + detail
                : source + ":" + std::to_string(line) + ": " + detail),
      line_(line),
      detail_(detail) {}

void throw_invalid(const std::string& what) {
  throw Error(ErrorKind::kInvalidInput, what);
}

void throw_degenerate(const std::string& what) {
  throw Error(ErrorKind::kDegenerate, what);
}

}  // namespace posekit
