// Copyright 2026 The spoofprint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spoofprint/features.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>
#include <string>

#include "spoofprint/errors.h"

namespace spoofprint {

std::string FeatureKindName(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kLogMel: return "log_mel";
    case FeatureKind::kLearnedResidual: return "learned_residual";
  }
  return "unknown";
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank::MelFilterbank(std::size_t n_mels, std::size_t n_fft, int sample_rate) {
  if (n_mels == 0) throw InvalidArgument("n_mels must be positive");
  if (n_fft < 2) throw InvalidArgument("n_fft must be at least 2");
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  const std::size_t n_bins = n_fft / 2 + 1;
  const double mel_max = HzToMel(sample_rate / 2.0);
  std::vector<double> edges(n_mels + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = MelToHz(mel_max * static_cast<double>(i) / (n_mels + 1));
  }
  weights_ = Matrix(n_mels, n_bins);
  center_hz_.resize(n_mels);
  first_bin_.assign(n_mels, n_bins);
  last_bin_.assign(n_mels, 0);
  const double bin_hz = static_cast<double>(sample_rate) / n_fft;
  for (std::size_t m = 0; m < n_mels; ++m) {
    const double lo = edges[m], center = edges[m + 1], hi = edges[m + 2];
    center_hz_[m] = center;
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double f = k * bin_hz;
      double w = 0.0;
      if (f > lo && f <= center) {
        w = (f - lo) / (center - lo);
      } else if (f > center && f < hi) {
        w = (hi - f) / (hi - center);
      }
      if (w > 0.0) {
        weights_(m, k) = w;
        first_bin_[m] = std::min(first_bin_[m], k);
        last_bin_[m] = std::max(last_bin_[m], k);
      }
    }
  }
}

void MelFilterbank::Apply(std::span<const double> power, std::span<double> out) const {
  for (std::size_t m = 0; m < num_mels(); ++m) {
    double acc = 0.0;
    const auto w = weights_.row(m);
    for (std::size_t k = first_bin_[m]; k <= last_bin_[m] && k < num_bins(); ++k) {
      acc += w[k] * power[k];
    }
    out[m] = acc;
  }
}

FeatureMatrix LogMelEnergies(const Waveform& wave, const LogMelOptions& opts,
                             Execution exec) {
  if (opts.n_fft < opts.frame_length) {
    throw InvalidArgument("n_fft (" + std::to_string(opts.n_fft) +
                          ") must be >= frame_length (" +
                          std::to_string(opts.frame_length) + ")");
  }
  FrameGrid grid{opts.frame_length, opts.hop_length, WindowType::kHann};
  grid.Validate();
  const MelFilterbank bank(opts.n_mels, opts.n_fft, wave.sample_rate);
  const FftPlan plan(opts.n_fft);
  const auto window = MakeWindow(grid.window, grid.frame_length);
  const std::size_t n_frames = grid.NumFrames(wave.size());

  FeatureMatrix out;
  out.kind = FeatureKind::kLogMel;
  out.frame_grid = grid;
  out.sample_rate = wave.sample_rate;
  out.data = Matrix(opts.n_mels, n_frames);

  auto compute_frame = [&](long t, std::vector<double>& frame,
                           std::vector<std::complex<double>>& spec,
                           std::vector<double>& power, std::vector<double>& mel) {
    const double* src = wave.samples.data() + static_cast<std::size_t>(t) * grid.hop_length;
    for (std::size_t j = 0; j < grid.frame_length; ++j) frame[j] = src[j] * window[j];
    plan.PowerSpectrum(frame, power, spec);
    bank.Apply(power, mel);
    for (std::size_t m = 0; m < opts.n_mels; ++m) {
      out.data(m, static_cast<std::size_t>(t)) = std::log(std::max(mel[m], opts.energy_floor));
    }
  };

  const auto n = static_cast<long>(n_frames);
  auto run = [&](bool parallel) {
#pragma omp parallel if (parallel)
    {
      std::vector<double> frame(grid.frame_length), power(opts.n_fft / 2 + 1),
          mel(opts.n_mels);
      std::vector<std::complex<double>> spec(opts.n_fft);
#pragma omp for schedule(static)
      for (long t = 0; t < n; ++t) compute_frame(t, frame, spec, power, mel);
    }
  };
  run(exec == Execution::kParallel);
  return out;
}

std::vector<double> PulseTrain::Periods() const {
  std::vector<double> periods;
  for (std::size_t i = 1; i < peak_indices.size(); ++i) {
    periods.push_back(peak_indices[i] - peak_indices[i - 1]);
  }
  return periods;
}

PulseTrain DetectPulses(const ResidualSignal& residual, const PulseDetectorOptions& opts) {
  return DetectPulses(residual.samples, residual.sample_rate, opts);
}

PulseTrain DetectPulses(std::span<const double> residual, int sample_rate,
                        const PulseDetectorOptions& opts) {
  if (!(opts.f0_min > 0.0 && opts.f0_max > opts.f0_min)) {
    throw InvalidArgument("need 0 < f0_min < f0_max");
  }
  const std::size_t n = residual.size();
  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(residual[i]);

  std::vector<std::size_t> candidates;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (mag[i] > 0.0 && mag[i] > mag[i - 1] && mag[i] >= mag[i + 1]) candidates.push_back(i);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });

  // Greedy non-maximum suppression, strongest first.
  const double min_distance = sample_rate / opts.f0_max;
  std::set<std::size_t> accepted;
  for (std::size_t c : candidates) {
    auto next = accepted.lower_bound(c);
    if (next != accepted.end() && static_cast<double>(*next - c) < min_distance) continue;
    if (next != accepted.begin()) {
      auto prev = std::prev(next);
      if (static_cast<double>(c - *prev) < min_distance) continue;
    }
    accepted.insert(c);
  }

  // Dominant peak per block of the longest admissible period.
  const auto block = static_cast<std::size_t>(std::ceil(sample_rate / opts.f0_min));
  const std::size_t n_blocks = n / block + 1;
  std::vector<double> block_peak(n_blocks, 0.0);
  for (std::size_t p : accepted) block_peak[p / block] = std::max(block_peak[p / block], mag[p]);

  PulseTrain out;
  out.sample_rate = sample_rate;
  std::vector<double> neighborhood;
  for (std::size_t p : accepted) {
    const std::size_t b = p / block;
    const std::size_t lo = b >= opts.median_radius ? b - opts.median_radius : 0;
    const std::size_t hi = std::min(n_blocks - 1, b + opts.median_radius);
    neighborhood.clear();
    for (std::size_t j = lo; j <= hi; ++j) {
      if (block_peak[j] > 0.0) neighborhood.push_back(block_peak[j]);
    }
    const auto mid = neighborhood.begin() + neighborhood.size() / 2;
    std::nth_element(neighborhood.begin(), mid, neighborhood.end());
    double median = *mid;
    if (neighborhood.size() % 2 == 0) {
      median = 0.5 * (median + *std::max_element(neighborhood.begin(), mid));
    }
    if (mag[p] < opts.relative_threshold * median) continue;

    // Parabolic refinement on |r|.
    double position = static_cast<double>(p);
    double amplitude = mag[p];
    const double left = mag[p - 1], right = mag[p + 1];
    const double curvature = left - 2.0 * mag[p] + right;
    if (curvature < 0.0) {
      const double delta = 0.5 * (left - right) / curvature;
      position += delta;
      amplitude = mag[p] - 0.25 * (left - right) * delta;
    }
    out.peak_indices.push_back(position);
    out.peak_amplitudes.push_back(amplitude);
  }
  if (out.peak_indices.size() < 3) {
    throw DataError("pulse detection found " + std::to_string(out.peak_indices.size()) +
                    " pulses; jitter and shimmer need at least 3");
  }
  return out;
}

double RelativePerturbationPercent(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw InvalidArgument("perturbation needs at least 2 values");
  double diff = 0.0, total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) diff += std::abs(values[i] - values[i + 1]);
  for (double v : values) total += v;
  if (total == 0.0) throw InvalidArgument("perturbation of an all-zero sequence");
  return 100.0 * (static_cast<double>(n) / (n - 1)) * diff / total;
}

double LocalJitter(const PulseTrain& pulses) {
  return RelativePerturbationPercent(pulses.Periods());
}

double LocalShimmer(const PulseTrain& pulses) {
  return RelativePerturbationPercent(pulses.peak_amplitudes);
}

std::vector<double> BicoherenceMap::Magnitudes() const {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = std::abs(values[i]);
  return out;
}

BicoherenceMap Bicoherence(std::span<const double> x, const BicoherenceOptions& opts,
                           Execution exec) {
  if (opts.segment_length < 2 || opts.n_fft < opts.segment_length) {
    throw InvalidArgument("need 2 <= segment_length <= n_fft");
  }
  if (!(opts.overlap >= 0.0 && opts.overlap < 1.0)) {
    throw InvalidArgument("overlap must be in [0, 1)");
  }
  const std::size_t seg = opts.segment_length;
  const std::size_t hop = std::max<std::size_t>(
      1, seg - static_cast<std::size_t>(std::lround(opts.overlap * seg)));
  const std::size_t n_windows = x.size() < seg ? 0 : (x.size() - seg) / hop + 1;
  if (n_windows < 8) {
    throw InvalidArgument("bicoherence needs at least 8 segments, got " +
                          std::to_string(n_windows));
  }
  const std::size_t dim = opts.n_fft / 2 + 1;
  const FftPlan plan(opts.n_fft);
  const auto window = MakeWindow(WindowType::kHann, seg);
  const bool parallel = exec == Execution::kParallel;

  // spectra[w * dim + k]
  std::vector<std::complex<double>> spectra(n_windows * dim);
  const auto nw = static_cast<long>(n_windows);
#pragma omp parallel if (parallel)
  {
    std::vector<double> frame(seg);
    std::vector<std::complex<double>> spec(opts.n_fft);
#pragma omp for schedule(static)
    for (long w = 0; w < nw; ++w) {
      const double* src = x.data() + static_cast<std::size_t>(w) * hop;
      double mean = 0.0;
      for (std::size_t j = 0; j < seg; ++j) mean += src[j];
      mean /= static_cast<double>(seg);
      for (std::size_t j = 0; j < seg; ++j) frame[j] = (src[j] - mean) * window[j];
      plan.Forward(frame, spec);
      std::copy(spec.begin(), spec.begin() + dim,
                spectra.begin() + static_cast<std::size_t>(w) * dim);
    }
  }

  BicoherenceMap out;
  out.n_fft = opts.n_fft;
  out.num_windows = n_windows;
  out.values.assign(dim * dim, 0.0);
  const auto rows = static_cast<long>(dim);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long r = 0; r < rows; ++r) {
    const auto k1 = static_cast<std::size_t>(r);
    for (std::size_t k2 = 0; k1 + k2 < dim; ++k2) {
      std::complex<double> num = 0.0;
      double d12 = 0.0, d3 = 0.0;
      for (std::size_t w = 0; w < n_windows; ++w) {
        const auto* s = spectra.data() + w * dim;
        const std::complex<double> pair = s[k1] * s[k2];
        num += pair * std::conj(s[k1 + k2]);
        d12 += std::norm(pair);
        d3 += std::norm(s[k1 + k2]);
      }
      const double denom = std::sqrt(d12 * d3);
      if (denom > 0.0) out.values[k1 * dim + k2] = num / denom;
    }
  }
  return out;
}

Waveform RemoveSilence(const Waveform& wave, const VadOptions& opts) {
  if (wave.empty()) throw InvalidArgument("cannot run VAD on an empty waveform");
  const auto frame = static_cast<std::size_t>(std::lround(opts.frame_ms * wave.sample_rate / 1000.0));
  const auto hop = static_cast<std::size_t>(std::lround(opts.hop_ms * wave.sample_rate / 1000.0));
  FrameGrid grid{frame, hop, WindowType::kRectangular};
  grid.Validate();
  const std::size_t n = wave.size();
  std::size_t n_frames = grid.NumFrames(n);
  const bool short_signal = n_frames == 0;
  if (short_signal) n_frames = 1;

  std::vector<double> energy(n_frames, 0.0);
  for (std::size_t i = 0; i < n_frames; ++i) {
    const std::size_t begin = i * hop;
    const std::size_t end = short_signal ? n : begin + frame;
    double acc = 0.0;
    for (std::size_t j = begin; j < end; ++j) acc += wave.samples[j] * wave.samples[j];
    energy[i] = acc;
  }
  const double peak = *std::max_element(energy.begin(), energy.end());
  const double threshold = peak * std::pow(10.0, opts.threshold_db / 10.0);

  std::vector<bool> keep(n_frames, false);
  std::size_t hang = 0;
  for (std::size_t i = 0; i < n_frames; ++i) {
    if (energy[i] > threshold) {
      keep[i] = true;
      hang = opts.hangover;
    } else if (hang > 0) {
      keep[i] = true;
      --hang;
    }
  }

  Waveform out;
  out.sample_rate = wave.sample_rate;
  for (std::size_t i = 0; i < n_frames; ++i) {
    if (!keep[i]) continue;
    const std::size_t begin = i * hop;
    const std::size_t end = i + 1 == n_frames ? n : begin + hop;
    out.samples.insert(out.samples.end(), wave.samples.begin() + begin,
                       wave.samples.begin() + end);
  }
  return out;
}

std::vector<std::size_t> Histogram(std::span<const double> values, std::size_t bins,
                                   double lo, double hi) {
  if (bins < 1) throw InvalidArgument("histogram needs at least one bin");
  if (!(lo < hi)) throw InvalidArgument("histogram range needs lo < hi");
  std::vector<std::size_t> counts(bins, 0);
  for (double v : values) {
    if (std::isnan(v)) throw InvalidArgument("histogram input contains NaN");
    const double pos = (v - lo) / (hi - lo) * static_cast<double>(bins);
    std::size_t idx = 0;
    if (pos >= static_cast<double>(bins)) {
      idx = bins - 1;
    } else if (pos > 0.0) {
      idx = static_cast<std::size_t>(pos);
    }
    ++counts[idx];
  }
  return counts;
}

}  // namespace spoofprint
