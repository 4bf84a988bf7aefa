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

#ifndef SAFT_WAV_HPP
#define SAFT_WAV_HPP

#include <string>

#include "saft/types.hpp"

namespace saft {

// Reads a RIFF/WAVE file. Accepts PCM 16/24 bit, IEEE float32, and the
// WAVE_FORMAT_EXTENSIBLE wrapper around either. Integer samples are scaled
// to [-1, 1) by the type's full scale. channel_mic_ids is filled with the
// identity mapping 0..C-1.
MultichannelClip read_wav(const std::string& path);
MultichannelClip decode_wav(const std::string& bytes, const std::string& name);

// Writes IEEE float32 WAVE. The sample rate is rounded to the nearest Hz.
void write_wav_float32(const std::string& path, const MultichannelClip& clip);
std::string encode_wav_float32(const MultichannelClip& clip);

}  // namespace saft

#endif  // SAFT_WAV_HPP
