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

#ifndef POSEKIT_ERROR_HPP_
#define POSEKIT_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace posekit {

// Broad failure classes. The CLI maps these onto its exit codes.
enum class ErrorKind {
  kInvalidInput,  // malformed data, violated preconditions
  kUnresolved,    // a referenced object id or file could not be resolved
  kDegenerate,    // numerically degenerate configuration
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Input error that can be pinned to a 1-based line of a text source.
class ParseError : public Error {
 public:
  // Message reads "source:line: detail", or "line N: detail" without source.
  ParseError(std::size_t line, const std::string& detail,
             const std::string& source = {});

  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

[[noreturn]] void throw_invalid(const std::string& what);
[[noreturn]] void throw_degenerate(const std::string& what);

}  // namespace posekit

#endif  // POSEKIT_ERROR_HPP_
