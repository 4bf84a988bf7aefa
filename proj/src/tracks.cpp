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

#include "saft/tracks.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "saft/io_util.hpp"

namespace saft {

namespace {

bool in_unit(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit_comment(std::ostringstream& out, const std::string& comment) {
  if (comment.empty()) return;
  std::istringstream lines(comment);
  std::string line;
  while (std::getline(lines, line)) out << "# " << line << "\n";
}

struct CsvRow {
  long frame = 0;
  double second = 0.0;
  double third = 0.0;
};

std::vector<CsvRow> parse_csv(const std::string& text, const std::string& name,
                              const std::string& header) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string where = name + ":" + std::to_string(line_no);
    if (!saw_header) {
      if (line != header) {
        throw std::runtime_error(where + ": expected header '" + header + "'");
      }
      saw_header = true;
      continue;
    }
    CsvRow row;
    char trailing;
    if (std::sscanf(line.c_str(), "%ld,%lf,%lf%c", &row.frame, &row.second,
                    &row.third, &trailing) != 3) {
      throw std::runtime_error(where + ": malformed row: " + line);
    }
    if (row.frame != static_cast<long>(rows.size())) {
      throw std::runtime_error(where + ": frames must be consecutive from 0");
    }
    rows.push_back(row);
  }
  if (!saw_header) {
    throw std::runtime_error(name + ": missing header '" + header + "'");
  }
  return rows;
}

}  // namespace

void FrameTrack::validate() const {
  if (confidence.size() != x_norm.size()) {
    throw std::invalid_argument("track: confidence/x_norm size mismatch");
  }
  for (size_t i = 0; i < confidence.size(); ++i) {
    if (!in_unit(confidence[i])) {
      throw std::invalid_argument("track: confidence outside [0, 1] at frame " +
                                  std::to_string(i));
    }
    if (!in_unit(x_norm[i])) {
      throw std::invalid_argument("track: x_norm outside [0, 1] at frame " +
                                  std::to_string(i));
    }
  }
}

void GroundTruth::validate() const {
  if (active.size() != x_norm.size()) {
    throw std::invalid_argument("labels: active/x_norm size mismatch");
  }
  if (!labeled.empty() && labeled.size() != active.size()) {
    throw std::invalid_argument("labels: labeled mask size mismatch");
  }
  for (size_t i = 0; i < active.size(); ++i) {
    if (active[i] > 1) {
      throw std::invalid_argument("labels: active flag must be 0 or 1");
    }
    if (!labeled.empty() && labeled[i] > 1) {
      throw std::invalid_argument("labels: labeled flag must be 0 or 1");
    }
    if (active[i] && !in_unit(x_norm[i])) {
      throw std::invalid_argument("labels: x_norm outside [0, 1] at frame " +
                                  std::to_string(i));
    }
  }
}

std::string encode_track_csv(const FrameTrack& track,
                             const std::string& comment) {
  track.validate();
  std::ostringstream out;
  emit_comment(out, comment);
  out << "frame,confidence,x_norm\n";
  for (size_t i = 0; i < track.frames(); ++i) {
    out << i << "," << fmt_num(track.confidence[i]) << ","
        << fmt_num(track.x_norm[i]) << "\n";
  }
  return out.str();
}

void write_track_csv(const std::string& path, const FrameTrack& track,
                     const std::string& comment) {
  write_file_atomic(path, encode_track_csv(track, comment));
}

FrameTrack parse_track_csv(const std::string& text, const std::string& name) {
  const auto rows = parse_csv(text, name, "frame,confidence,x_norm");
  FrameTrack track;
  track.confidence.reserve(rows.size());
  track.x_norm.reserve(rows.size());
  for (const auto& row : rows) {
    track.confidence.push_back(row.second);
    track.x_norm.push_back(row.third);
  }
  track.validate();
  return track;
}

FrameTrack read_track_csv(const std::string& path) {
  return parse_track_csv(read_file(path), path);
}

std::string encode_labels_csv(const GroundTruth& truth,
                              const std::string& comment) {
  truth.validate();
  std::ostringstream out;
  emit_comment(out, comment);
  out << "frame,active,x_norm\n";
  for (size_t i = 0; i < truth.frames(); ++i) {
    out << i << "," << int(truth.active[i]) << ","
        << fmt_num(truth.active[i] ? truth.x_norm[i] : 0.0) << "\n";
  }
  return out.str();
}

void write_labels_csv(const std::string& path, const GroundTruth& truth,
                      const std::string& comment) {
  write_file_atomic(path, encode_labels_csv(truth, comment));
}

GroundTruth parse_labels_csv(const std::string& text, const std::string& name) {
  const auto rows = parse_csv(text, name, "frame,active,x_norm");
  GroundTruth truth;
  truth.active.reserve(rows.size());
  truth.x_norm.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.second != 0.0 && row.second != 1.0) {
      throw std::runtime_error(name + ": active flag must be 0 or 1");
    }
    truth.active.push_back(static_cast<uint8_t>(row.second));
    truth.x_norm.push_back(row.third);
  }
  truth.validate();
  return truth;
}

GroundTruth read_labels_csv(const std::string& path) {
  return parse_labels_csv(read_file(path), path);
}

}  // namespace saft
