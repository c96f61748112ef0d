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

#ifndef SPOOFPRINT_FEATURES_H_
#define SPOOFPRINT_FEATURES_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spoofprint/dsp.h"
#include "spoofprint/execution.h"
#include "spoofprint/lp.h"
#include "spoofprint/wav.h"

namespace spoofprint {

enum class FeatureKind : std::uint8_t { kLogMel = 1, kLearnedResidual = 2 };

std::string FeatureKindName(FeatureKind kind);

// Feature-major matrix: data(f, t) is feature f of frame t.
struct FeatureMatrix {
  Matrix data;
  FeatureKind kind = FeatureKind::kLogMel;
  FrameGrid frame_grid;
  int sample_rate = 16000;

  std::size_t num_features() const { return data.rows(); }
  std::size_t num_frames() const { return data.cols(); }
};

// HTK mel scale.
double HzToMel(double hz);
double MelToHz(double mel);

// Triangular filters on the HTK mel scale spanning [0, sample_rate/2], with
// n_mels + 2 equally spaced mel points as edges and centers.
class MelFilterbank {
 public:
  MelFilterbank(std::size_t n_mels, std::size_t n_fft, int sample_rate);

  std::size_t num_mels() const { return weights_.rows(); }
  std::size_t num_bins() const { return weights_.cols(); }
  const Matrix& weights() const { return weights_; }
  const std::vector<double>& center_hz() const { return center_hz_; }

  void Apply(std::span<const double> power, std::span<double> out) const;

 private:
  Matrix weights_;
  std::vector<double> center_hz_;
  // Non-zero bin range per filter, for a sparse apply.
  std::vector<std::size_t> first_bin_, last_bin_;
};

struct LogMelOptions {
  std::size_t n_mels = 80;
  std::size_t n_fft = 512;
  std::size_t frame_length = 400;
  std::size_t hop_length = 160;
  double energy_floor = 1e-10;
};

// Hann-windowed power spectrum -> mel filterbank -> ln(max(e, floor)).
// No pre-emphasis.
FeatureMatrix LogMelEnergies(const Waveform& wave, const LogMelOptions& opts = {},
                             Execution exec = Execution::kParallel);

// Excitation pulses located on an LP residual. Positions are fractional
// (parabolic refinement of the integer peak).
struct PulseTrain {
  std::vector<double> peak_indices;
  std::vector<double> peak_amplitudes;
  int sample_rate = 16000;

  std::vector<double> Periods() const;
};

struct PulseDetectorOptions {
  double f0_min = 60.0;
  double f0_max = 400.0;
  double relative_threshold = 0.3;
  // Neighborhood, in longest-period blocks on each side, of the rolling median.
  std::size_t median_radius = 4;
};

// Local maxima of |residual| at least sample_rate/f0_max apart (strongest
// first), kept when they reach relative_threshold times the rolling median of
// the dominant peak per longest-period block. Throws DataError when fewer than
// three pulses survive.
PulseTrain DetectPulses(const ResidualSignal& residual,
                        const PulseDetectorOptions& opts = {});
PulseTrain DetectPulses(std::span<const double> residual, int sample_rate,
                        const PulseDetectorOptions& opts = {});

// 100 * N/(N-1) * sum_{i<N} |x_i - x_{i+1}| / sum_i x_i over a sequence of N
// periods or amplitudes. Requires N >= 2.
double RelativePerturbationPercent(std::span<const double> values);

// Local jitter over the pulse periods, local shimmer over the pulse
// amplitudes, both in percent.
double LocalJitter(const PulseTrain& pulses);
double LocalShimmer(const PulseTrain& pulses);

struct BicoherenceOptions {
  std::size_t segment_length = 256;
  std::size_t n_fft = 256;
  double overlap = 0.5;
};

// Normalized bispectrum on the grid k1, k2 in [0, n_fft/2]. Cells with
// k1 + k2 > n_fft/2 and zero-denominator cells hold 0.
struct BicoherenceMap {
  std::vector<std::complex<double>> values;
  std::size_t n_fft = 0;
  std::size_t num_windows = 0;

  std::size_t dim() const { return n_fft / 2 + 1; }
  std::complex<double> at(std::size_t k1, std::size_t k2) const {
    return values[k1 * dim() + k2];
  }
  std::vector<double> Magnitudes() const;
};

// Segments are mean-removed and Hann-windowed. Throws InvalidArgument when
// fewer than 8 segments fit.
BicoherenceMap Bicoherence(std::span<const double> x,
                           const BicoherenceOptions& opts = {},
                           Execution exec = Execution::kParallel);

struct VadOptions {
  double frame_ms = 25.0;
  double hop_ms = 10.0;
  double threshold_db = -40.0;  // relative to the loudest frame
  std::size_t hangover = 5;     // frames kept after each active run
};

// Energy VAD. Frame i owns samples [i*hop, (i+1)*hop) (the last frame owns
// through the end of the signal); the output concatenates the owned segments
// of active and hangover frames. All-silent input gives an empty waveform.
Waveform RemoveSilence(const Waveform& wave, const VadOptions& opts = {});

// Equal-width histogram over [lo, hi]; out-of-range values land in the edge
// bins.
std::vector<std::size_t> Histogram(std::span<const double> values,
                                   std::size_t bins, double lo, double hi);

}  // namespace spoofprint

#endif  // SPOOFPRINT_FEATURES_H_
