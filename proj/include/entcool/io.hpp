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

#include <filesystem>
#include <string>
#include <string_view>

namespace entcool::io {

/// Shortest-roundtrip-safe decimal form with 17 significant digits,
/// independent of the global locale.
std::string format_double(double v);

/// Parses the full token as a double; throws std::invalid_argument otherwise.
double parse_double(std::string_view token);

/// Writes `contents` to a sibling temporary file and renames it over `path`,
/// so readers never observe a partially written file. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Throws NotFoundError if the file is missing and IoError on read failure.
std::string read_file(const std::filesystem::path& path);

/// Lower-case hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// Creates `dir` (and parents) and verifies a file can be created in it.
/// Throws IoError otherwise.
void ensure_writable_directory(const std::filesystem::path& dir);

}  // namespace entcool::io
