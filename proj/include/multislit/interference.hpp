#pragma once

// Output-channel intensity of the n-path interferometer as a function of the
// common phase θ, and fringe-visibility extraction from periodic patterns.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "multislit/quanton.hpp"

namespace multislit {

inline constexpr std::size_t kDefaultPhaseSamples = 4096;
inline constexpr std::size_t kMinScanSamples = 256;
inline constexpr double kIntensitySlack = 1e-12;

enum class ScanAxis { phase, screen };

struct FringeSample {
  double abscissa;
  double intensity;
};

/// Uniformly sampled period of a fringe pattern together with its refined
/// extrema and Michelson visibility (I_max - I_min) / (I_max + I_min).
struct FringeScan {
  ScanAxis axis = ScanAxis::phase;
  std::vector<FringeSample> samples;
  double i_max = 0.0;
  double i_min = 0.0;
  double argmax = 0.0;
  double argmin = 0.0;
  double visibility = 0.0;
};

struct BetaSweepRow {
  double beta;
  double one_path_knowledge;
  double visibility;
  double coherence;
};

struct BetaSweepTable {
  std::size_t n = 0;
  std::vector<BetaSweepRow> rows;
};

double michelson_visibility(double i_max, double i_min);

/// Channel intensity in units of the common channel overlap |α|²:
/// I(θ) = Σ_jk c_j c_k* e^{i(θ_j-θ_k)} O_jk with θ_k advanced by kθ
/// (k one-based) and the π flag applied.
double channel_intensity(const PathConfiguration& paths, const DetectorOverlapMatrix& overlaps, double theta);

/// Three-path closed form 1 + (2(1-β)/3) cos θ - (2β/3) cos 2θ.
double intensity_n3(double beta, double theta);

/// Four-path closed form 1 + ((2-β)/2) cos θ + ((1-β)/2) cos 2θ - (β/2) cos 3θ.
double intensity_n4(double beta, double theta);

/// General-n closed form for the one-path-knowledge configuration with the
/// π phase on the last path (n ≥ 3). The coherent block carries a 2/n
/// weight so that the result agrees with channel_intensity.
double closed_form_intensity(std::size_t n, double beta, double theta);

/// Equal-amplitude paths with the π phase on the last path (or none).
PathConfiguration one_path_paths(std::size_t n, bool with_pi = true);

/// Samples `pattern` at `samples` uniform points on [0, period) and refines
/// the extrema around the best grid points with Brent's method.
FringeScan scan_periodic(const std::function<double(double)>& pattern, std::size_t samples, double period,
                         ScanAxis axis = ScanAxis::phase);

FringeScan scan_phase(const PathConfiguration& paths, const DetectorOverlapMatrix& overlaps,
                      std::size_t samples = kDefaultPhaseSamples);

/// One-path-knowledge configuration with the π phase on path n.
FringeScan scan_phase(std::size_t n, double beta, std::size_t samples = kDefaultPhaseSamples);

/// Visibility and coherence for every β of a strictly increasing grid in [0, 1].
BetaSweepTable sweep_beta(std::size_t n, std::span<const double> grid, std::size_t samples = kDefaultPhaseSamples,
                          bool with_pi = true);

std::vector<double> uniform_grid(double first, double last, std::size_t points);

}  // namespace multislit
