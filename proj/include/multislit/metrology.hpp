#pragma once

// Coherence measurement protocols and the time dependence of visibility and
// coherence under decoherence of a single path.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "multislit/interference.hpp"
#include "multislit/quanton.hpp"

namespace multislit {

enum class ProtocolMethod { peak_ratio, pairwise };

std::string_view to_string(ProtocolMethod method);

struct ProtocolResult {
  ProtocolMethod method;
  double value;
  // Peak ratio: {I_parallel_max, I_perp_max}. Pairwise: one visibility per
  // unordered pair (j < k), row-major, damping included.
  std::vector<double> inputs;
};

/// (I∥max - I⊥max) / ((n-1) I⊥max). Throws DomainError for a non-positive
/// reference intensity or a result outside [0, 1].
ProtocolResult peak_ratio_coherence(double i_parallel_max, double i_perp_max, std::size_t n);

/// Runs the peak-ratio protocol on a simulated interferometer: the
/// configuration under test is read at its primary maximum (θ = 0) and
/// compared with the same amplitudes behind fully distinguishing detectors.
/// Throws ProtocolNotApplicable for constrained phases (a π path, nonzero
/// phase offsets, complex or negative amplitudes) or complex/negative
/// overlaps, where the primary maximum is no longer at θ = 0 and the ratio
/// stops measuring coherence.
ProtocolResult peak_ratio_protocol(const PathConfiguration& paths, const DetectorOverlapMatrix& overlaps);

/// Two-path visibility 2ab / (a² + b²) of amplitudes with magnitudes a, b.
double pair_visibility(double a, double b);

/// Average of the n(n-1)/2 pair visibilities, where the pairs (j, n) are
/// damped by damping[j] = f_jn(t), j = 0..n-2.
ProtocolResult pairwise_visibility_coherence(std::span<const cplx> amplitudes, std::span<const double> damping);

/// (n-2)/n + 2/(n(n-1)) Σ_{j=1}^{n-1} exp(-(n-j)² t/τ_d).
double coherence_decay(std::size_t n, double t_over_tau);

struct TimeRow {
  double t_over_tau;
  double visibility;
  double coherence;
};

/// Visibility of the envelope-free maximally coherent pattern over one
/// fringe period, and the decayed coherence, for each t/τ_d of an increasing
/// non-negative grid.
std::vector<TimeRow> visibility_vs_time(std::size_t n, std::span<const double> t_over_tau,
                                        std::size_t samples = kDefaultPhaseSamples);

}  // namespace multislit
