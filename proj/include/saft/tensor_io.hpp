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

#ifndef SAFT_TENSOR_IO_HPP
#define SAFT_TENSOR_IO_HPP

#include <string>

#include "saft/types.hpp"

namespace saft {

// Feature tensor container: magic "AFT1", then u32 little-endian channels,
// frames, bins, then channels*frames*bins float32 values in C order.
// Alongside <path> a text sidecar <path>.meta holds one key=value pair per
// line: the tensor's meta map plus "kind". Values are stored as float32, so
// a round trip quantizes doubles to floats.
std::string encode_feature_tensor(const FeatureTensor& t);
std::string encode_sidecar(const FeatureTensor& t);

void write_feature_tensor(const std::string& path, const FeatureTensor& t);

// Reads <path> and, when present, <path>.meta. Without a sidecar the kind
// defaults to stacked and meta stays empty.
FeatureTensor read_feature_tensor(const std::string& path);

std::string sidecar_path(const std::string& tensor_path);

}  // namespace saft

#endif  // SAFT_TENSOR_IO_HPP
