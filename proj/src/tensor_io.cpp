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

#include "saft/tensor_io.hpp"

#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "saft/io_util.hpp"

namespace saft {

namespace {
constexpr char kMagic[] = "AFT1";
constexpr size_t kHeaderSize = 4 + 3 * 4;
}  // namespace

std::string sidecar_path(const std::string& tensor_path) {
  return tensor_path + ".meta";
}

std::string encode_feature_tensor(const FeatureTensor& t) {
  if (t.channels < 1 || t.frames < 1 || t.bins < 1) {
    throw std::invalid_argument("feature tensor has an empty dimension");
  }
  const size_t count =
      static_cast<size_t>(t.channels) * t.frames * t.bins;
  if (t.values.size() != count) {
    throw std::invalid_argument("feature tensor value count mismatch");
  }
  std::string out;
  out.reserve(kHeaderSize + count * 4);
  out += kMagic;
  append_u32le(out, static_cast<uint32_t>(t.channels));
  append_u32le(out, static_cast<uint32_t>(t.frames));
  append_u32le(out, static_cast<uint32_t>(t.bins));
  for (double v : t.values) append_f32le(out, static_cast<float>(v));
  return out;
}

std::string encode_sidecar(const FeatureTensor& t) {
  std::ostringstream out;
  out << "kind=" << to_string(t.kind) << "\n";
  for (const auto& [key, value] : t.meta) {
    if (key == "kind") continue;
    out << key << "=" << value << "\n";
  }
  return out.str();
}

void write_feature_tensor(const std::string& path, const FeatureTensor& t) {
  write_file_atomic(path, encode_feature_tensor(t));
  write_file_atomic(sidecar_path(path), encode_sidecar(t));
}

FeatureTensor read_feature_tensor(const std::string& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() < kHeaderSize || bytes.compare(0, 4, kMagic) != 0) {
    throw std::runtime_error(path + ": not a feature tensor file");
  }
  FeatureTensor t;
  t.channels = static_cast<int>(read_u32le(bytes, 4));
  t.frames = static_cast<int>(read_u32le(bytes, 8));
  t.bins = static_cast<int>(read_u32le(bytes, 12));
  if (t.channels < 1 || t.frames < 1 || t.bins < 1) {
    throw std::runtime_error(path + ": empty tensor dimension");
  }
  const size_t count =
      static_cast<size_t>(t.channels) * t.frames * t.bins;
  if (bytes.size() != kHeaderSize + count * 4) {
    throw std::runtime_error(path + ": size does not match header");
  }
  t.values.resize(count);
  for (size_t i = 0; i < count; ++i) {
    t.values[i] =
        static_cast<double>(read_f32le(bytes, kHeaderSize + i * 4));
  }

  const std::string meta_path = sidecar_path(path);
  if (std::filesystem::exists(meta_path)) {
    std::istringstream meta(read_file(meta_path));
    std::string line;
    while (std::getline(meta, line)) {
      if (line.empty() || line[0] == '#') continue;
      const size_t eq = line.find('=');
      if (eq == std::string::npos) {
        throw std::runtime_error(meta_path + ": malformed line: " + line);
      }
      const std::string key = line.substr(0, eq);
      const std::string value = line.substr(eq + 1);
      if (key == "kind") {
        t.kind = feature_kind_from_string(value);
      } else {
        t.meta[key] = value;
      }
    }
  }
  return t;
}

}  // namespace saft
