// Copyright 2026 saft authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SAFT_IO_UTIL_HPP
#define SAFT_IO_UTIL_HPP

#include <cstdint>
#include <string>

namespace saft {

// Reads a whole file; throws std::runtime_error naming the path on failure.
std::string read_file(const std::string& path);

// Writes via a temporary file in the same directory plus rename, so the
// destination is either untouched or complete.
void write_file_atomic(const std::string& path, const std::string& bytes);

// Little-endian scalar append/parse helpers for binary formats.
void append_u32le(std::string& out, uint32_t v);
void append_u64le(std::string& out, uint64_t v);
void append_f32le(std::string& out, float v);
void append_f64le(std::string& out, double v);
uint32_t read_u32le(const std::string& buf, size_t pos);
uint64_t read_u64le(const std::string& buf, size_t pos);
float read_f32le(const std::string& buf, size_t pos);
double read_f64le(const std::string& buf, size_t pos);

}  // namespace saft

#endif  // SAFT_IO_UTIL_HPP
