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

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "saft/beamformer.hpp"
#include "saft/dsp.hpp"
#include "saft/gcc_phat.hpp"
#include "saft/geometry.hpp"
#include "saft/io_util.hpp"
#include "saft/localizer.hpp"
#include "saft/metrics.hpp"
#include "saft/salsa.hpp"
#include "saft/simulator.hpp"
#include "saft/tensor_io.hpp"
#include "saft/tracks.hpp"
#include "saft/types.hpp"
#include "saft/wav.hpp"

namespace {

using namespace saft;

// ---------------------------------------------------------------------------
// Environment overrides. Only the speed of sound and the worker count may be
// set from the environment; everything else is flags.

double env_sound_speed() {
  if (const char* v = std::getenv("SAFT_SOUND_SPEED")) {
    char* end = nullptr;
    const double c = std::strtod(v, &end);
    if (end == v || *end != '\0' || !(c > 0.0)) {
      throw std::runtime_error(
          "SAFT_SOUND_SPEED must be a positive number, got '" +
          std::string(v) + "'");
    }
    return c;
  }
  return kSpeedOfSound;
}

int env_threads() {
  if (const char* v = std::getenv("SAFT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || n < 1 || n > 256) {
      throw std::runtime_error("SAFT_THREADS must be an integer in [1, 256]");
    }
    return static_cast<int>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// ---------------------------------------------------------------------------
// Provenance. Every artifact gets a sidecar carrying the exact command line,
// so any output can be regenerated bit-for-bit by re-running it.

std::string shell_quote(const std::string& arg) {
  const bool plain =
      !arg.empty() &&
      arg.find_first_not_of(
          "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz"
          "0123456789_./,=+:@%^-") == std::string::npos;
  if (plain) return arg;
  std::string out = "'";
  for (char c : arg) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += "'";
  return out;
}

std::string g_cmdline;

void capture_cmdline(int argc, char** argv) {
  std::string out = "saft";
  for (int i = 1; i < argc; ++i) {
    out += " ";
    out += shell_quote(argv[i]);
  }
  g_cmdline = out;
}

void write_provenance(const std::string& artifact_path,
                      const std::string& subcommand,
                      const std::vector<std::pair<std::string, std::string>>&
                          extra = {}) {
  std::ostringstream out;
  out << "tool=saft\n";
  out << "subcommand=" << subcommand << "\n";
  out << "cmdline=" << g_cmdline << "\n";
  for (const auto& [key, value] : extra) out << key << "=" << value << "\n";
  write_file_atomic(artifact_path + ".meta", out.str());
}

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Shared option bundles.

struct GeomOpts {
  std::string geometry_path;  // empty = built-in 16-mic array
  int mics = 0;               // 0 = all

  ArrayGeometry load() const {
    ArrayGeometry geom = geometry_path.empty() ? ArrayGeometry::ava16()
                                               : load_geometry(geometry_path);
    geom.validate();
    return geom;
  }

  int effective_mics(const ArrayGeometry& geom) const {
    return mics == 0 ? geom.size() : mics;
  }
};

void add_geometry_flags(CLI::App* app, GeomOpts* opts) {
  app->add_option("--geometry", opts->geometry_path,
                  "Geometry file (default: built-in ava16 array)");
  app->add_option("--mics", opts->mics,
                  "Microphone subset size (default: all mics)");
}

MultichannelClip load_subset_clip(const std::string& path,
                                  const ArrayGeometry& geom, int mics) {
  MultichannelClip clip = read_wav(path);
  if (clip.channels() != geom.size()) {
    throw std::runtime_error(
        path + ": expected " + std::to_string(geom.size()) +
        " channels matching the geometry, got " +
        std::to_string(clip.channels()));
  }
  clip.channel_mic_ids.clear();
  for (const auto& mic : geom.mics) clip.channel_mic_ids.push_back(mic.id);
  return select_channels(clip, geom, mics);
}

// ---------------------------------------------------------------------------
// geometry: print or export the array description.

struct GeometryArgs {
  GeomOpts geom;
  std::string out;
};

int cmd_geometry(const GeometryArgs& args) {
  const auto geom = args.geom.load();
  if (!args.out.empty()) {
    write_geometry(args.out, geom);
    write_provenance(args.out, "geometry");
  }
  if (args.geom.mics != 0) {
    const auto subset = select_subset(geom, args.geom.mics);
    std::ostringstream ids;
    for (size_t i = 0; i < subset.mic_ids.size(); ++i) {
      if (i) ids << " ";
      ids << subset.mic_ids[i];
    }
    std::printf("subset m=%d aperture_m=%.3f mics=%s\n", args.geom.mics,
                subset.aperture_m, ids.str().c_str());
  } else {
    std::fputs(format_geometry(geom).c_str(), stdout);
    std::printf("# %d mics, aperture %.3f m\n", geom.size(),
                geom.max_pairwise_distance());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// weights: precompute and validate the super-directive weight cache.

struct WeightsArgs {
  GeomOpts geom;
  std::string out;
  std::string check;
  int dirs = 15;
  int fft_size = 512;
  double sample_rate = 48000.0;
  double loading = 1e-2;
};

int cmd_weights(const WeightsArgs& args) {
  const auto geom = args.geom.load();
  const int m = args.geom.effective_mics(geom);
  const auto mics = mics_for_subset(geom, select_subset(geom, m));
  const auto bank = LookDirectionBank::preset(args.dirs);
  const double c = env_sound_speed();

  if (!args.check.empty()) {
    const auto w = read_weights(args.check);
    validate_weights(w, mics, bank, args.fft_size, args.sample_rate,
                     args.loading, c);
    std::printf("ok %s dirs=%d bins=%d mics=%d\n", args.check.c_str(), w.dirs,
                w.freq_bins, w.mics);
    return 0;
  }

  const auto w = sdb_weights(mics, bank, args.fft_size, args.sample_rate,
                             args.loading, c);
  write_weights(args.out, w);
  write_provenance(args.out, "weights",
                   {{"fingerprint", std::to_string(w.fingerprint)}});
  std::printf("wrote %s dirs=%d bins=%d mics=%d\n", args.out.c_str(), w.dirs,
              w.freq_bins, w.mics);
  return 0;
}

// ---------------------------------------------------------------------------
// simulate: render scene WAVs plus frame labels.

struct SimulateArgs {
  GeomOpts geom;
  std::string out;
  std::string labels;
  std::string spec_path;
  double duration_s = 2.0;
  std::vector<double> azimuths;
  std::vector<double> starts;
  std::vector<double> ends;
  std::vector<std::string> kinds;
  std::optional<double> snr_db;
  std::vector<double> snr_grid;
  uint64_t seed = 0;
  double sample_rate = 48000.0;
};

SceneSpec scene_from_flags(const SimulateArgs& args) {
  if (!args.spec_path.empty()) {
    return SceneSpec::from_json(read_file(args.spec_path), args.spec_path);
  }
  SceneSpec spec;
  spec.duration_s = args.duration_s;
  spec.seed = args.seed;
  if (args.azimuths.empty()) {
    throw std::runtime_error("simulate: provide --az or --spec");
  }
  if (!args.starts.empty() && args.starts.size() != args.azimuths.size()) {
    throw std::runtime_error("simulate: --start count must match --az");
  }
  if (!args.ends.empty() && args.ends.size() != args.azimuths.size()) {
    throw std::runtime_error("simulate: --end count must match --az");
  }
  if (args.kinds.size() > 1 && args.kinds.size() != args.azimuths.size()) {
    throw std::runtime_error("simulate: --kind count must match --az");
  }
  for (size_t i = 0; i < args.azimuths.size(); ++i) {
    SceneSegment seg;
    seg.azimuth_deg = args.azimuths[i];
    seg.start_s = args.starts.empty() ? 8.0 / kLabelFps : args.starts[i];
    seg.end_s = args.ends.empty() ? 52.0 / kLabelFps : args.ends[i];
    if (args.ends.empty() && seg.end_s > args.duration_s) {
      seg.end_s = args.duration_s;
    }
    const std::string kind_name =
        args.kinds.empty()
            ? "white-burst"
            : args.kinds[args.kinds.size() == 1 ? 0 : i];
    seg.kind = source_kind_from_string(kind_name);
    spec.segments.push_back(seg);
  }
  return spec;
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  if (dot == std::string::npos ||
      (slash != std::string::npos && dot < slash)) {
    return path + suffix;
  }
  return path.substr(0, dot) + suffix + path.substr(dot);
}

std::string labels_path_for(const std::string& wav_path,
                            const std::string& labels_flag) {
  if (!labels_flag.empty()) return labels_flag;
  const auto dot = wav_path.rfind('.');
  const auto slash = wav_path.rfind('/');
  const std::string stem =
      (dot == std::string::npos || (slash != std::string::npos && dot < slash))
          ? wav_path
          : wav_path.substr(0, dot);
  return stem + ".labels.csv";
}

void render_one(const SceneSpec& spec, const ArrayGeometry& geom,
                const CameraModel& cam, double sample_rate,
                const std::string& wav_path, const std::string& labels_flag) {
  const double c = env_sound_speed();
  const auto scene = render_scene(spec, geom, cam, sample_rate, c);
  write_wav_float32(wav_path, scene.clip);
  const auto labels_path = labels_path_for(wav_path, labels_flag);
  write_labels_csv(labels_path, scene.truth, "labels for " + wav_path);
  const auto spec_json_path = wav_path + ".scene.json";
  write_file_atomic(spec_json_path, spec.to_json());
  std::vector<std::pair<std::string, std::string>> extra = {
      {"seed", std::to_string(spec.seed)},
      {"duration_s", fmt_num(spec.duration_s)},
      {"sample_rate", fmt_num(sample_rate)},
      {"sound_speed", fmt_num(c)},
      {"labels", labels_path},
      {"scene_json", spec_json_path}};
  if (spec.snr_db.has_value()) extra.push_back({"snr_db", fmt_num(*spec.snr_db)});
  write_provenance(wav_path, "simulate", extra);
  std::printf("wrote %s and %s (%zu frames)\n", wav_path.c_str(),
              labels_path.c_str(), scene.truth.frames());
}

int cmd_simulate(const SimulateArgs& args) {
  const auto geom = args.geom.load();
  const CameraModel cam{};
  SceneSpec spec = scene_from_flags(args);
  if (!args.snr_grid.empty() && args.snr_db.has_value()) {
    throw std::runtime_error("simulate: --snr and --snr-grid are exclusive");
  }
  if (args.snr_grid.empty()) {
    spec.snr_db = args.snr_db;
    spec.validate(cam);
    render_one(spec, geom, cam, args.sample_rate, args.out, args.labels);
  } else {
    for (double snr : args.snr_grid) {
      SceneSpec s = spec;
      s.snr_db = snr;
      s.validate(cam);
      const auto path =
          with_suffix(args.out, "_snr" + fmt_short(snr));
      render_one(s, geom, cam, args.sample_rate, path, "");
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// extract: WAV -> feature tensor.

struct ExtractArgs {
  GeomOpts geom;
  std::string in;
  std::string out;
  std::string feat = "gcc";
  std::string mode = "all";
  std::string weights_path;
  int lags = 0;  // 0 = derived from the subset aperture
  int bins = 64;
  int mels = 64;
  int dirs = 15;
  int fft_size = 512;
  int hop = 100;
  double loading = 1e-2;
};

int cmd_extract(const ExtractArgs& args) {
  const auto geom = args.geom.load();
  const int m = args.geom.effective_mics(geom);
  const auto clip = load_subset_clip(args.in, geom, m);
  const auto subset = select_subset(geom, m);
  const double c = env_sound_speed();
  const CameraModel cam{};

  const auto spect = stft(clip, args.fft_size, args.hop);

  std::string feat = args.feat;
  PairingMode pairing = args.mode == "ref" ? PairingMode::reference(0)
                                           : PairingMode::all_pairs();
  if (args.mode != "ref" && args.mode != "all") {
    throw std::runtime_error("extract: --mode must be 'all' or 'ref'");
  }
  if (feat == "gcc-ref") {
    feat = "gcc";
    pairing = PairingMode::reference(0);
  }

  int lags = args.lags;
  if (lags == 0) {
    lags = 2 * max_lag_samples(subset.aperture_m, cam.fov_deg,
                               clip.sample_rate, c) +
           1;
  }

  FeatureTensor out;
  if (feat == "gcc") {
    const auto fb = mel_filterbank(args.mels, args.fft_size, clip.sample_rate);
    out = gcc_phat_features(spect, pairing, lags, fb);
    out.meta["n_lag_bins"] = std::to_string(lags);
    out.meta["pairing"] =
        pairing.kind == PairingMode::Kind::kAllPairs ? "all" : "ref";
  } else if (feat == "salsa-lite" || feat == "salsa-ipd") {
    out = salsa_features(spect, 0, salsa_variant_from_string(feat), args.bins,
                         c);
    out.meta["n_bins"] = std::to_string(args.bins);
  } else if (feat == "bf") {
    const auto mics = mics_for_subset(geom, subset);
    const auto bank = LookDirectionBank::preset(args.dirs);
    BeamformerWeights w;
    if (!args.weights_path.empty()) {
      w = read_weights(args.weights_path);
      validate_weights(w, mics, bank, args.fft_size, clip.sample_rate,
                       args.loading, c);
    } else {
      w = sdb_weights(mics, bank, args.fft_size, clip.sample_rate,
                      args.loading, c);
    }
    const auto fb = mel_filterbank(args.mels, args.fft_size, clip.sample_rate);
    out = beamformer_features(spect, w, fb);
    out.meta["dirs"] = std::to_string(args.dirs);
    out.meta["loading"] = fmt_num(args.loading);
  } else if (feat == "logmel") {
    const auto fb = mel_filterbank(args.mels, args.fft_size, clip.sample_rate);
    out = log_mel_spectrogram(spect, 0, fb);
  } else {
    throw std::runtime_error(
        "extract: unknown --feat '" + feat +
        "' (expected gcc, gcc-ref, salsa-lite, salsa-ipd, bf, logmel)");
  }

  out.meta["feat"] = args.feat;
  out.meta["mics"] = std::to_string(m);
  out.meta["aperture_m"] = fmt_num(subset.aperture_m);
  out.meta["geometry"] = geom.name;
  out.meta["sample_rate"] = fmt_num(clip.sample_rate);
  out.meta["fft_size"] = std::to_string(args.fft_size);
  out.meta["hop"] = std::to_string(args.hop);
  out.meta["sound_speed"] = fmt_num(c);
  out.meta["source"] = args.in;
  out.meta["cmdline"] = g_cmdline;
  write_feature_tensor(args.out, out);
  std::printf("wrote %s [%d x %d x %d] kind=%s\n", args.out.c_str(),
              out.channels, out.frames, out.bins, to_string(out.kind));
  return 0;
}

// ---------------------------------------------------------------------------
// localize: WAV -> prediction track CSV.

struct LocalizeArgs {
  GeomOpts geom;
  std::string in;
  std::string out;
  std::string backend = "srp";
  std::string pairing = "all";
  double grid_step = 0.5;
  int fft_size = 512;
  int hop = 100;
};

LocalizerParams localizer_params(const std::string& backend,
                                 const std::string& pairing, double grid_step,
                                 int fft_size, int hop) {
  LocalizerParams params;
  params.fft_size = fft_size;
  params.hop = hop;
  params.grid_step_deg = grid_step;
  params.c = env_sound_speed();
  params.backend = localizer_backend_from_string(backend);
  if (pairing == "ref") {
    params.pairing = PairingMode::reference(0);
  } else if (pairing != "all") {
    throw std::runtime_error("localize: --pairing must be 'all' or 'ref'");
  }
  return params;
}

int cmd_localize(const LocalizeArgs& args) {
  const auto geom = args.geom.load();
  const int m = args.geom.effective_mics(geom);
  const auto clip = load_subset_clip(args.in, geom, m);
  const CameraModel cam{};
  const auto params = localizer_params(args.backend, args.pairing,
                                       args.grid_step, args.fft_size,
                                       args.hop);
  const auto track = localize(clip, geom, cam, params);
  write_track_csv(args.out, track,
                  "predictions for " + args.in + " backend=" + args.backend +
                      " mics=" + std::to_string(m));
  write_provenance(args.out, "localize",
                   {{"backend", args.backend},
                    {"mics", std::to_string(m)},
                    {"source", args.in}});
  std::printf("wrote %s (%zu frames)\n", args.out.c_str(), track.frames());
  return 0;
}

// ---------------------------------------------------------------------------
// eval: prediction CSV vs label CSV -> metrics.

struct EvalArgs {
  std::string pred;
  std::string labels;
  std::string report;
  std::string pr_csv;
  double tol_deg = 2.0;
  double fov_deg = 55.0;
  int image_width = 2448;
  int n_thresholds = 101;
  double binarize_at = 0.5;
};

int cmd_eval(const EvalArgs& args) {
  const auto pred = read_track_csv(args.pred);
  const auto truth = read_labels_csv(args.labels);
  EvalConfig cfg;
  cfg.tolerance_deg = args.tol_deg;
  cfg.camera.fov_deg = args.fov_deg;
  cfg.camera.image_width = args.image_width;
  cfg.n_thresholds = args.n_thresholds;
  cfg.binarize_at = args.binarize_at;
  const auto result = summarize(pred, truth, cfg);
  std::printf("AP=%.4f F1@%sdeg=%.4f aD=%.2fpx DetErr=%.4f\n", result.ap,
              fmt_short(args.tol_deg).c_str(), result.f1, result.ad_px,
              result.det_err);
  if (!args.report.empty()) {
    write_eval_report(args.report, result, cfg);
    write_provenance(args.report, "eval",
                     {{"pred", args.pred}, {"labels", args.labels}});
  }
  if (!args.pr_csv.empty()) {
    write_pr_csv(args.pr_csv, result.curve);
    write_provenance(args.pr_csv, "eval",
                     {{"pred", args.pred}, {"labels", args.labels}});
  }
  return 0;
}

// ---------------------------------------------------------------------------
// bench: feature x mic-count x SNR x seed sweep with one metrics row each.

struct BenchArgs {
  GeomOpts geom;
  std::string out;
  std::vector<std::string> feats = {"gcc", "gcc-ref", "salsa-lite", "bf"};
  std::vector<int> mic_counts = {4, 7, 12};
  std::vector<std::string> snrs = {"clean", "20", "0"};
  int seeds = 3;
  uint64_t seed_base = 1;
  double duration_s = 2.0;
  double sample_rate = 48000.0;
  std::string kind = "white-burst";
  int jobs = 0;
};

struct BenchTask {
  std::string feat;
  int mics = 0;
  double aperture_m = 0.0;
  std::string snr;  // "clean" or a number
  uint64_t seed = 0;
  double az_deg = 0.0;
};

LocalizerParams bench_params(const std::string& feat) {
  LocalizerParams params;
  params.c = env_sound_speed();
  if (feat == "gcc") {
    params.backend = LocalizerParams::Backend::kSrpPhat;
  } else if (feat == "gcc-ref") {
    params.backend = LocalizerParams::Backend::kSrpPhat;
    params.pairing = PairingMode::reference(0);
  } else if (feat == "salsa-lite") {
    params.backend = LocalizerParams::Backend::kSalsaFit;
    params.salsa_variant = SalsaVariant::kLite;
  } else if (feat == "salsa-ipd") {
    params.backend = LocalizerParams::Backend::kSalsaFit;
    params.salsa_variant = SalsaVariant::kIpd;
  } else if (feat == "bf") {
    params.backend = LocalizerParams::Backend::kBeamPower;
  } else {
    throw std::runtime_error("bench: unknown feature '" + feat + "'");
  }
  return params;
}

int cmd_bench(const BenchArgs& args) {
  const auto geom = args.geom.load();
  const CameraModel cam{};
  const double c = env_sound_speed();
  const auto kind = source_kind_from_string(args.kind);

  // Azimuths cycle -25..25 in 5 degree steps as seeds advance, so every
  // (feature, M, SNR) cell sees the same scene set.
  std::vector<BenchTask> tasks;
  for (const auto& feat : args.feats) {
    for (int m : args.mic_counts) {
      const auto subset = select_subset(geom, m);
      for (const auto& snr : args.snrs) {
        for (int si = 0; si < args.seeds; ++si) {
          BenchTask task;
          task.feat = feat;
          task.mics = m;
          task.aperture_m = subset.aperture_m;
          task.snr = snr;
          task.seed = args.seed_base + static_cast<uint64_t>(si);
          task.az_deg = -25.0 + 5.0 * static_cast<double>(si % 11);
          tasks.push_back(task);
        }
      }
    }
  }

  std::vector<std::string> rows(tasks.size());
  std::atomic<size_t> next{0};
  std::mutex error_mutex;
  std::string first_error;

  const auto worker = [&]() {
    for (size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      const auto& task = tasks[i];
      try {
        SceneSpec spec;
        spec.duration_s = args.duration_s;
        spec.seed = task.seed;
        if (task.snr != "clean") {
          spec.snr_db = std::stod(task.snr);
        }
        spec.segments.push_back(
            {8.0 / kLabelFps, 52.0 / kLabelFps, task.az_deg, kind});
        if (spec.segments[0].end_s > spec.duration_s) {
          spec.segments[0].end_s = spec.duration_s;
        }
        spec.validate(cam);
        const auto scene =
            render_scene(spec, geom, cam, args.sample_rate, c);
        const auto sub = select_channels(scene.clip, geom, task.mics);
        const auto params = bench_params(task.feat);
        const auto track = localize(sub, geom, cam, params);
        EvalConfig cfg;
        const auto r = summarize(track, scene.truth, cfg);
        std::ostringstream row;
        row << task.feat << "," << task.mics << ","
            << static_cast<int>(std::lround(task.aperture_m * 1000.0)) << ","
            << task.snr << "," << task.seed << "," << fmt_short(task.az_deg)
            << "," << fmt_num(r.ap) << "," << fmt_num(r.f1) << ","
            << fmt_num(r.ad_px) << "," << fmt_num(r.det_err);
        rows[i] = row.str();
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error.empty()) {
          first_error = "bench task " + task.feat + " M=" +
                        std::to_string(task.mics) + " snr=" + task.snr +
                        " seed=" + std::to_string(task.seed) + ": " + e.what();
        }
        next.store(tasks.size());
      }
    }
  };

  int jobs = args.jobs > 0 ? args.jobs : env_threads();
  jobs = std::min<int>(jobs, static_cast<int>(tasks.size()));
  if (jobs < 1) jobs = 1;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(jobs));
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (!first_error.empty()) throw std::runtime_error(first_error);

  std::ostringstream csv;
  csv << "feature,mics,aperture_mm,snr,seed,az_deg,ap,f1,ad_px,det_err\n";
  for (const auto& row : rows) csv << row << "\n";
  write_file_atomic(args.out, csv.str());
  write_provenance(args.out, "bench",
                   {{"rows", std::to_string(rows.size())},
                    {"sound_speed", fmt_num(c)}});
  std::printf("wrote %s (%zu rows)\n", args.out.c_str(), rows.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  capture_cmdline(argc, argv);
  CLI::App app{
      "saft: spatial audio feature extraction, simulation, localization "
      "and evaluation"};
  app.require_subcommand(1);

  GeometryArgs geometry_args;
  auto* geometry_cmd =
      app.add_subcommand("geometry", "Print or export an array geometry");
  add_geometry_flags(geometry_cmd, &geometry_args.geom);
  geometry_cmd->add_option("--out", geometry_args.out,
                           "Write the geometry to this file");

  WeightsArgs weights_args;
  auto* weights_cmd = app.add_subcommand(
      "weights", "Precompute the super-directive beamformer weight cache");
  add_geometry_flags(weights_cmd, &weights_args.geom);
  weights_cmd->add_option("--out", weights_args.out, "Output weights file");
  weights_cmd->add_option("--check", weights_args.check,
                          "Validate an existing weights file instead");
  weights_cmd->add_option("--dirs", weights_args.dirs,
                          "Look direction preset: 3, 7 or 15");
  weights_cmd->add_option("--fft", weights_args.fft_size, "FFT size");
  weights_cmd->add_option("--rate", weights_args.sample_rate, "Sample rate");
  weights_cmd->add_option("--loading", weights_args.loading,
                          "Diagonal loading");

  SimulateArgs sim_args;
  auto* sim_cmd =
      app.add_subcommand("simulate", "Render a synthetic scene WAV + labels");
  add_geometry_flags(sim_cmd, &sim_args.geom);
  sim_cmd->add_option("--out", sim_args.out, "Output WAV path")->required();
  sim_cmd->add_option("--labels", sim_args.labels,
                      "Labels CSV path (default: <out>.labels.csv)");
  sim_cmd->add_option("--spec", sim_args.spec_path,
                      "Scene spec JSON (overrides the flags below)");
  sim_cmd->add_option("--duration", sim_args.duration_s, "Seconds");
  sim_cmd->add_option("--az", sim_args.azimuths,
                      "Segment azimuth in degrees (repeatable)");
  sim_cmd->add_option("--start", sim_args.starts,
                      "Segment start in seconds (repeatable)");
  sim_cmd->add_option("--end", sim_args.ends,
                      "Segment end in seconds (repeatable)");
  sim_cmd->add_option("--kind", sim_args.kinds,
                      "Source kind: white-burst, speech-noise, chirp");
  double snr_value = 0.0;
  auto* snr_opt = sim_cmd->add_option("--snr", snr_value,
                                      "Add pink noise at this joint SNR (dB)");
  sim_cmd->add_option("--snr-grid", sim_args.snr_grid,
                      "Render one scene per SNR value (comma separated)")
      ->delimiter(',');
  sim_cmd->add_option("--seed", sim_args.seed, "Scene seed");
  sim_cmd->add_option("--rate", sim_args.sample_rate, "Sample rate");

  ExtractArgs extract_args;
  auto* extract_cmd =
      app.add_subcommand("extract", "Extract a feature tensor from a WAV");
  add_geometry_flags(extract_cmd, &extract_args.geom);
  extract_cmd->add_option("--in", extract_args.in, "Input WAV")->required();
  extract_cmd->add_option("--out", extract_args.out, "Output tensor file")
      ->required();
  extract_cmd->add_option(
      "--feat", extract_args.feat,
      "Feature: gcc, gcc-ref, salsa-lite, salsa-ipd, bf, logmel");
  extract_cmd->add_option("--mode", extract_args.mode,
                          "Pairing for gcc: all or ref");
  extract_cmd->add_option("--lags", extract_args.lags,
                          "Correlation lag bins (odd; default from aperture)");
  extract_cmd->add_option("--bins", extract_args.bins,
                          "Spectral bins for salsa features");
  extract_cmd->add_option("--mels", extract_args.mels, "Mel band count");
  extract_cmd->add_option("--dirs", extract_args.dirs,
                          "Beamformer look preset: 3, 7 or 15");
  extract_cmd->add_option("--weights", extract_args.weights_path,
                          "Beamformer weight cache file");
  extract_cmd->add_option("--loading", extract_args.loading,
                          "Beamformer diagonal loading");
  extract_cmd->add_option("--fft", extract_args.fft_size, "FFT size");
  extract_cmd->add_option("--hop", extract_args.hop, "STFT hop");

  LocalizeArgs localize_args;
  auto* localize_cmd =
      app.add_subcommand("localize", "Run the classical localizer on a WAV");
  add_geometry_flags(localize_cmd, &localize_args.geom);
  localize_cmd->add_option("--in", localize_args.in, "Input WAV")->required();
  localize_cmd->add_option("--out", localize_args.out, "Output CSV")
      ->required();
  localize_cmd->add_option("--backend", localize_args.backend,
                           "srp, bf or salsa");
  localize_cmd->add_option("--pairing", localize_args.pairing,
                           "Correlation pairing: all or ref");
  localize_cmd->add_option("--grid-step", localize_args.grid_step,
                           "Azimuth grid step in degrees");
  localize_cmd->add_option("--fft", localize_args.fft_size, "FFT size");
  localize_cmd->add_option("--hop", localize_args.hop, "STFT hop");

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand(
      "eval", "Score a prediction track against frame labels");
  eval_cmd->add_option("--pred", eval_args.pred, "Prediction CSV")->required();
  eval_cmd->add_option("--labels", eval_args.labels, "Labels CSV")->required();
  eval_cmd->add_option("--report", eval_args.report,
                       "Write the metrics as key=value text");
  eval_cmd->add_option("--pr", eval_args.pr_csv,
                       "Write the precision-recall curve CSV");
  eval_cmd->add_option("--tol-deg", eval_args.tol_deg, "Match tolerance");
  eval_cmd->add_option("--fov", eval_args.fov_deg, "Camera field of view");
  eval_cmd->add_option("--width", eval_args.image_width, "Image width (px)");
  eval_cmd->add_option("--thresholds", eval_args.n_thresholds,
                       "Threshold count for the sweep");
  eval_cmd->add_option("--binarize", eval_args.binarize_at,
                       "Activity threshold for aD and DetErr");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand(
      "bench", "Sweep feature x mic count x SNR x seed end to end");
  bench_cmd->add_option("--geometry", bench_args.geom.geometry_path,
                        "Geometry file (default: built-in ava16 array)");
  bench_cmd->add_option("--out", bench_args.out, "Output CSV")->required();
  bench_cmd->add_option("--feats", bench_args.feats,
                        "Features: gcc, gcc-ref, salsa-lite, salsa-ipd, bf")
      ->delimiter(',');
  bench_cmd->add_option("--mics", bench_args.mic_counts,
                        "Mic counts (comma separated)")
      ->delimiter(',');
  bench_cmd->add_option("--snrs", bench_args.snrs,
                        "SNR values in dB, or 'clean' (comma separated)")
      ->delimiter(',');
  bench_cmd->add_option("--seeds", bench_args.seeds, "Seeds per cell");
  bench_cmd->add_option("--seed-base", bench_args.seed_base, "First seed");
  bench_cmd->add_option("--duration", bench_args.duration_s,
                        "Scene length in seconds");
  bench_cmd->add_option("--rate", bench_args.sample_rate, "Sample rate");
  bench_cmd->add_option("--kind", bench_args.kind, "Source kind");
  bench_cmd->add_option("--jobs", bench_args.jobs,
                        "Worker threads (default: SAFT_THREADS or cores)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (geometry_cmd->parsed()) return cmd_geometry(geometry_args);
    if (weights_cmd->parsed()) {
      if (weights_args.out.empty() && weights_args.check.empty()) {
        throw std::runtime_error("weights: provide --out or --check");
      }
      return cmd_weights(weights_args);
    }
    if (sim_cmd->parsed()) {
      if (snr_opt->count() > 0) sim_args.snr_db = snr_value;
      return cmd_simulate(sim_args);
    }
    if (extract_cmd->parsed()) return cmd_extract(extract_args);
    if (localize_cmd->parsed()) return cmd_localize(localize_args);
    if (eval_cmd->parsed()) return cmd_eval(eval_args);
    if (bench_cmd->parsed()) return cmd_bench(bench_args);
  } catch (const std::exception& e) {
    std::cerr << "saft: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
