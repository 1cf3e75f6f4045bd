// Copyright 2026 The entcool Authors
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

#include <stdexcept>
#include <string>

namespace entcool {

// Bad parameters are reported with std::invalid_argument. The types below
// cover the remaining failure classes that callers (mostly the CLI) need to
// tell apart.

/// A configuration that cannot be executed, e.g. a two-qubit gate set on a
/// single qubit.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem failure while reading or writing experiment artifacts.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input artifact that a stage depends on does not exist.
class NotFoundError : public std::runtime_error {
 public:
  explicit NotFoundError(const std::string& path)
      : std::runtime_error("required file not found: " + path), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// An internal numerical invariant was violated (e.g. norm drift).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace entcool
