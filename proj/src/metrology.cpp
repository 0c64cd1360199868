#include "multislit/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "multislit/bath.hpp"
#include "multislit/constants.hpp"
#include "multislit/errors.hpp"

namespace multislit {

namespace {

constexpr double kRangeSlack = 1e-10;

double clamp_unit(double value, const char* what) {
  if (value < -kRangeSlack || value > 1.0 + kRangeSlack || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " outside [0, 1]: " + std::to_string(value));
  }
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace

std::string_view to_string(ProtocolMethod method) {
  switch (method) {
    case ProtocolMethod::peak_ratio:
      return "peak-ratio";
    case ProtocolMethod::pairwise:
      return "pairwise";
  }
  return "unknown";
}

ProtocolResult peak_ratio_coherence(double i_parallel_max, double i_perp_max, std::size_t n) {
  require_path_count(n);
  if (!(i_perp_max > 0.0)) {
    throw DomainError("reference intensity I_perp_max must be positive");
  }
  const double value = (i_parallel_max - i_perp_max) / (static_cast<double>(n - 1) * i_perp_max);
  return {ProtocolMethod::peak_ratio, clamp_unit(value, "peak-ratio coherence"), {i_parallel_max, i_perp_max}};
}

ProtocolResult peak_ratio_protocol(const PathConfiguration& paths, const DetectorOverlapMatrix& overlaps) {
  if (paths.pi_index()) {
    throw ProtocolNotApplicable("peak-ratio protocol fails when one path carries a pi phase; "
                                "use the pairwise-visibility protocol");
  }
  if (std::any_of(paths.phases().begin(), paths.phases().end(), [](double p) { return p != 0.0; })) {
    throw ProtocolNotApplicable("peak-ratio protocol requires unconstrained (zero) phase offsets");
  }
  if (std::any_of(paths.amplitudes().begin(), paths.amplitudes().end(),
                  [](const cplx& c) { return c.imag() != 0.0 || c.real() < 0.0; })) {
    throw ProtocolNotApplicable("peak-ratio protocol requires real non-negative amplitudes");
  }
  for (std::size_t j = 0; j < overlaps.size(); ++j) {
    for (std::size_t k = 0; k < overlaps.size(); ++k) {
      const cplx o = overlaps(j, k);
      if (o.imag() != 0.0 || o.real() < 0.0) {
        throw ProtocolNotApplicable("peak-ratio protocol requires real non-negative detector overlaps");
      }
    }
  }
  // Real non-negative overlaps and amplitudes put the primary maximum at θ = 0.
  const double parallel = channel_intensity(paths, overlaps, 0.0);
  const double perp = channel_intensity(paths, DetectorOverlapMatrix::distinguishable(paths.size()), 0.0);
  return peak_ratio_coherence(parallel, perp, paths.size());
}

double pair_visibility(double a, double b) {
  const double denom = a * a + b * b;
  return denom > 0.0 ? 2.0 * a * b / denom : 0.0;
}

ProtocolResult pairwise_visibility_coherence(std::span<const cplx> amplitudes, std::span<const double> damping) {
  const std::size_t n = amplitudes.size();
  require_path_count(n);
  if (damping.size() != n - 1) {
    throw DimensionMismatch("pairwise protocol needs " + std::to_string(n - 1) + " damping factors, got " +
                            std::to_string(damping.size()));
  }
  double norm = 0.0;
  for (const auto& c : amplitudes) {
    norm += std::norm(c);
  }
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw NotNormalized("pairwise protocol amplitudes are not normalized");
  }
  for (const double f : damping) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw DomainError("damping factors must lie in [0, 1]");
    }
  }

  ProtocolResult result{ProtocolMethod::pairwise, 0.0, {}};
  result.inputs.reserve(n * (n - 1) / 2);
  double sum = 0.0;
  const std::size_t last = n - 1;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      double v = pair_visibility(std::abs(amplitudes[j]), std::abs(amplitudes[k]));
      if (k == last) {
        v *= damping[j];
      }
      result.inputs.push_back(v);
      sum += v;
    }
  }
  const auto nd = static_cast<double>(n);
  result.value = clamp_unit(2.0 / (nd * (nd - 1.0)) * sum, "pairwise coherence");
  return result;
}

double coherence_decay(std::size_t n, double t_over_tau) {
  require_path_count(n);
  if (!(t_over_tau >= 0.0)) {
    throw DomainError("t/tau_d must be non-negative");
  }
  const auto nd = static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    const auto gap = static_cast<double>(n - j);
    sum += std::exp(-gap * gap * t_over_tau);
  }
  return (nd - 2.0) / nd + 2.0 / (nd * (nd - 1.0)) * sum;
}

std::vector<TimeRow> visibility_vs_time(std::size_t n, std::span<const double> t_over_tau, std::size_t samples) {
  require_path_count(n);
  for (std::size_t i = 0; i < t_over_tau.size(); ++i) {
    if (!(t_over_tau[i] >= 0.0) || (i > 0 && !(t_over_tau[i] > t_over_tau[i - 1]))) {
      throw DomainError("time grid must be non-negative and strictly increasing");
    }
  }
  std::vector<TimeRow> rows;
  rows.reserve(t_over_tau.size());
  for (const double s : t_over_tau) {
    const auto scan =
        scan_periodic([&](double phi) { return maxcoherent_bracket(n, s, phi); }, samples, 2.0 * constants::pi);
    rows.push_back({s, scan.visibility, coherence_decay(n, s)});
  }
  return rows;
}

}  // namespace multislit
