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

#include "saft/io_util.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace saft {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) throw std::runtime_error("error reading file: " + path);
  return bytes;
}

void write_file_atomic(const std::string& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  const fs::path dest(path);
  fs::path tmp = dest;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot create file: " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::remove(tmp.string().c_str());
      throw std::runtime_error("error writing file: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, dest, ec);
  if (ec) {
    std::remove(tmp.string().c_str());
    throw std::runtime_error("cannot replace file: " + path + " (" +
                             ec.message() + ")");
  }
}

void append_u32le(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
}

void append_u64le(std::string& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
}

void append_f32le(std::string& out, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  append_u32le(out, bits);
}

void append_f64le(std::string& out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  append_u64le(out, bits);
}

uint32_t read_u32le(const std::string& buf, size_t pos) {
  if (pos + 4 > buf.size()) throw std::runtime_error("truncated u32 field");
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<uint32_t>(static_cast<unsigned char>(buf[pos + i]))
         << (8 * i);
  }
  return v;
}

uint64_t read_u64le(const std::string& buf, size_t pos) {
  if (pos + 8 > buf.size()) throw std::runtime_error("truncated u64 field");
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<uint64_t>(static_cast<unsigned char>(buf[pos + i]))
         << (8 * i);
  }
  return v;
}

float read_f32le(const std::string& buf, size_t pos) {
  const uint32_t bits = read_u32le(buf, pos);
  float v;
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

double read_f64le(const std::string& buf, size_t pos) {
  const uint64_t bits = read_u64le(buf, pos);
  double v;
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

}  // namespace saft
