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

#include "saft/wav.hpp"

#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>

#include "saft/io_util.hpp"

namespace saft {

namespace {

constexpr uint16_t kFormatPcm = 0x0001;
constexpr uint16_t kFormatFloat = 0x0003;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint16_t read_u16le(const std::string& buf, size_t pos) {
  if (pos + 2 > buf.size()) throw std::runtime_error("truncated u16 field");
  return static_cast<uint16_t>(static_cast<unsigned char>(buf[pos]) |
                               (static_cast<unsigned char>(buf[pos + 1]) << 8));
}

struct FmtInfo {
  uint16_t format = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t bits = 0;
};

FmtInfo parse_fmt(const std::string& bytes, size_t pos, uint32_t size,
                  const std::string& name) {
  if (size < 16) throw std::runtime_error(name + ": fmt chunk too small");
  FmtInfo fmt;
  fmt.format = read_u16le(bytes, pos);
  fmt.channels = read_u16le(bytes, pos + 2);
  fmt.sample_rate = read_u32le(bytes, pos + 4);
  fmt.bits = read_u16le(bytes, pos + 14);
  if (fmt.format == kFormatExtensible) {
    if (size < 40) {
      throw std::runtime_error(name + ": extensible fmt chunk too small");
    }
    // First two bytes of the SubFormat GUID carry the wrapped format tag.
    fmt.format = read_u16le(bytes, pos + 24);
  }
  return fmt;
}

double decode_sample(const char* p, uint16_t format, uint16_t bits) {
  if (format == kFormatFloat) {
    float v;
    std::memcpy(&v, p, sizeof(v));
    return static_cast<double>(v);
  }
  if (bits == 16) {
    int16_t v;
    std::memcpy(&v, p, sizeof(v));
    return static_cast<double>(v) / 32768.0;
  }
  // 24-bit little-endian two's complement.
  int32_t v = static_cast<unsigned char>(p[0]) |
              (static_cast<unsigned char>(p[1]) << 8) |
              (static_cast<unsigned char>(p[2]) << 16);
  if (v & 0x800000) v |= ~0xFFFFFF;
  return static_cast<double>(v) / 8388608.0;
}

}  // namespace

MultichannelClip decode_wav(const std::string& bytes, const std::string& name) {
  if (bytes.size() < 12 || bytes.compare(0, 4, "RIFF") != 0 ||
      bytes.compare(8, 4, "WAVE") != 0) {
    throw std::runtime_error(name + ": not a RIFF/WAVE file");
  }

  FmtInfo fmt;
  bool have_fmt = false;
  size_t data_pos = 0;
  uint32_t data_size = 0;
  bool have_data = false;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string id = bytes.substr(pos, 4);
    const uint32_t size = read_u32le(bytes, pos + 4);
    const size_t body = pos + 8;
    if (body + size > bytes.size()) {
      throw std::runtime_error(name + ": truncated chunk " + id);
    }
    if (id == "fmt ") {
      fmt = parse_fmt(bytes, body, size, name);
      have_fmt = true;
    } else if (id == "data") {
      data_pos = body;
      data_size = size;
      have_data = true;
    }
    pos = body + size + (size & 1);  // chunks are word aligned
  }

  if (!have_fmt) throw std::runtime_error(name + ": missing fmt chunk");
  if (!have_data) throw std::runtime_error(name + ": missing data chunk");
  if (fmt.channels == 0) throw std::runtime_error(name + ": zero channels");
  if (fmt.sample_rate == 0) {
    throw std::runtime_error(name + ": zero sample rate");
  }
  const bool ok = (fmt.format == kFormatPcm && (fmt.bits == 16 || fmt.bits == 24)) ||
                  (fmt.format == kFormatFloat && fmt.bits == 32);
  if (!ok) {
    throw std::runtime_error(name + ": unsupported sample format (format tag " +
                             std::to_string(fmt.format) + ", " +
                             std::to_string(fmt.bits) + " bit)");
  }

  const size_t bytes_per_sample = fmt.bits / 8;
  const size_t stride = bytes_per_sample * fmt.channels;
  if (stride == 0 || data_size % stride != 0) {
    throw std::runtime_error(name + ": data size not a whole number of frames");
  }
  const size_t n_samples = data_size / stride;

  MultichannelClip clip;
  clip.sample_rate = static_cast<double>(fmt.sample_rate);
  clip.samples.assign(fmt.channels, std::vector<double>(n_samples));
  clip.channel_mic_ids.resize(fmt.channels);
  std::iota(clip.channel_mic_ids.begin(), clip.channel_mic_ids.end(), 0);

  for (size_t i = 0; i < n_samples; ++i) {
    const char* frame = bytes.data() + data_pos + i * stride;
    for (uint16_t c = 0; c < fmt.channels; ++c) {
      clip.samples[c][i] =
          decode_sample(frame + c * bytes_per_sample, fmt.format, fmt.bits);
    }
  }
  return clip;
}

MultichannelClip read_wav(const std::string& path) {
  return decode_wav(read_file(path), path);
}

std::string encode_wav_float32(const MultichannelClip& clip) {
  clip.validate();
  const uint32_t channels = static_cast<uint32_t>(clip.channels());
  const uint32_t rate =
      static_cast<uint32_t>(std::llround(clip.sample_rate));
  const uint64_t n = clip.length();
  const uint64_t data_size = n * channels * 4;
  if (data_size > 0xFFFFFFFFull - 36) {
    throw std::runtime_error("WAV too large for RIFF size field");
  }

  std::string out;
  out.reserve(static_cast<size_t>(44 + data_size));
  out += "RIFF";
  append_u32le(out, static_cast<uint32_t>(36 + data_size));
  out += "WAVE";
  out += "fmt ";
  append_u32le(out, 16);
  append_u32le(out, kFormatFloat | (channels << 16));
  append_u32le(out, rate);
  append_u32le(out, rate * channels * 4);  // byte rate
  append_u32le(out, (channels * 4) | (32u << 16));  // block align, bits
  out += "data";
  append_u32le(out, static_cast<uint32_t>(data_size));
  for (uint64_t i = 0; i < n; ++i) {
    for (uint32_t c = 0; c < channels; ++c) {
      append_f32le(out, static_cast<float>(clip.samples[c][i]));
    }
  }
  return out;
}

void write_wav_float32(const std::string& path, const MultichannelClip& clip) {
  write_file_atomic(path, encode_wav_float32(clip));
}

}  // namespace saft
