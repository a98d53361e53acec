// Copyright 2026 The Authors.
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

#ifndef FEEDERLAB_ERROR_HPP_
#define FEEDERLAB_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace feederlab {

// Raised when an argument violates a module precondition. Carries the module
// and parameter names so callers (the CLI in particular) can report them.
class DomainError : public std::invalid_argument {
 public:
  DomainError(std::string module, std::string parameter,
              const std::string& message)
      : std::invalid_argument(module + ": " + parameter + ": " + message),
        module_(std::move(module)),
        parameter_(std::move(parameter)) {}

  const std::string& module() const noexcept { return module_; }
  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string module_;
  std::string parameter_;
};

// Input data problems: unreadable files, malformed or out-of-range rows.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace feederlab

#endif  // FEEDERLAB_ERROR_HPP_
