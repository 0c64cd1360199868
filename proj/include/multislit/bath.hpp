#pragma once

// Environment-induced decoherence of the n-slit pattern: a particle coupled
// to a high-temperature bath of harmonic oscillators, evaluated through the
// closed-form screen probability density in the weak-coupling regime.
//
// Slit k (one-based) is centred at kℓ. Screen coordinates and the slit axis
// share an origin.

#include <cstddef>
#include <vector>

#include "multislit/quanton.hpp"

namespace multislit {

/// Langevin friction γ (1/s), bath temperature T (K) and particle mass m (kg).
class BathParameters {
public:
  BathParameters(double gamma, double temperature, double mass);

  double gamma() const noexcept { return gamma_; }
  double temperature() const noexcept { return temperature_; }
  double mass() const noexcept { return mass_; }
  /// D = 2 m γ k_B T.
  double diffusion() const noexcept { return diffusion_; }

private:
  double gamma_;
  double temperature_;
  double mass_;
  double diffusion_;
};

/// What the screen evaluators need from the environment. Unlike
/// BathParameters this admits γ = D = 0, the decoherence-free limit.
struct Environment {
  double mass = 0.0;
  double gamma = 0.0;
  double diffusion = 0.0;

  static Environment from(const BathParameters& bath);
  static Environment decoherence_free(double mass);
  void validate() const;
};

/// Slit count n, separation ℓ, width ε, de Broglie wavelength λ and
/// slit-to-screen distance L, all lengths in metres.
struct SlitGeometry {
  std::size_t n = 0;
  double ell = 0.0;
  double eps = 0.0;
  double lambda = 0.0;
  double distance = 0.0;

  void validate() const;

  /// Fringe period λL/ℓ on the screen.
  double fringe_period() const noexcept { return lambda * distance / ell; }
  /// ε ℓ / (λL); the far-field evaluators require this below kMaxFraunhoferRatio.
  double fraunhofer_ratio() const noexcept { return eps * ell / (lambda * distance); }
  /// Throws FraunhoferError when the far-field condition fails.
  void require_fraunhofer() const;
  /// Fringe phase 2πℓx/(λL) at screen position x.
  double fringe_phase(double x) const noexcept;
};

inline constexpr double kMaxFraunhoferRatio = 0.1;

double diffusion_coefficient(const BathParameters& bath);

/// τ_d^{(jk)} = 12ℏ² / (D (j-k)² ℓ²). Only the index difference matters.
double decoherence_time(double diffusion, double ell, std::size_t j, std::size_t k);

/// exp(-D (j-k)² ℓ² t / 12ℏ²); 1 on the diagonal.
double pair_decoherence_factor(double diffusion, double ell, double t, std::size_t j, std::size_t k);

/// Pairwise damping factors f_jk and decoherence times τ_d^{(jk)} of an
/// n-slit arrangement at one instant. Indices are zero-based.
class DecoherenceSchedule {
public:
  /// Factors at time t for diffusion D and slit separation ℓ.
  static DecoherenceSchedule at_time(std::size_t n, double diffusion, double ell, double t);
  /// Factors exp(-(j-k)² t/τ_d) in units of the nearest-neighbour time τ_d.
  static DecoherenceSchedule at_scaled_time(std::size_t n, double t_over_tau);

  std::size_t size() const noexcept { return n_; }
  double factor(std::size_t j, std::size_t k) const { return factors_.at(j * n_ + k); }
  /// Infinite on the diagonal and when D = 0.
  double time(std::size_t j, std::size_t k) const { return times_.at(j * n_ + k); }
  /// The n(n-1)/2 distinct pair times τ_d^{(jk)}, j < k, row-major.
  std::vector<double> pair_times() const;

private:
  std::size_t n_ = 0;
  std::vector<double> factors_;
  std::vector<double> times_;
};

/// Spreading width
///   α = ε² + ℏ²(1-e^{-2γt})²/(ε²m²γ²) + D[4γt + 4e^{-2γt} - e^{-4γt} - 3]/(8m²γ³).
/// Below γt = 1e-3 the bracket is evaluated from its Taylor series.
double spreading_width(double eps, const Environment& env, double t);
double spreading_width(const BathParameters& bath, const SlitGeometry& geom, double t);

inline constexpr double kSpreadingSeriesSwitch = 1e-3;

/// Time of flight L m λ / h of a particle with de Broglie wavelength λ.
double flight_time(const SlitGeometry& geom, double mass);

/// Diffusion coefficient that makes t equal `t_over_tau` nearest-neighbour
/// decoherence times: D = 12ℏ² (t/τ_d) / (ℓ² t).
double diffusion_for_scaled_time(double t_over_tau, double ell, double t);

/// Screen probability density with per-slit Gaussian envelopes and the
/// pair-midpoint phase term, no far-field simplification (1/m).
double screen_density_exact(const SlitGeometry& geom, const PathConfiguration& paths,
                            const DetectorOverlapMatrix& overlaps, const Environment& env, double t, double x);

/// Far-field density: a common envelope exp(-2ε²x²/(λL/π)²)/√(πα/2) times
/// 1 + Σ_{j≠k} |c_j||c_k||O_jk| f_jk cos(2πℓ(k-j)x/λL + θ_k - θ_j).
double screen_density_fraunhofer(const SlitGeometry& geom, const PathConfiguration& paths,
                                 const DetectorOverlapMatrix& overlaps, const Environment& env, double t, double x);

/// Far-field density with identical detectors and the environment acting on
/// the last path only. The last path must carry the π flag; it enters as the
/// sign of the damped cross terms, and the constant phase offsets of `paths`
/// supply the residual θ_k.
double screen_density_selective(const SlitGeometry& geom, const PathConfiguration& paths, const Environment& env,
                                double t, double x);

/// screen_density_selective for c_k = 1/√n and zero residual phases.
double screen_density_maxcoherent(const SlitGeometry& geom, const Environment& env, double t, double x);

/// Periodic bracket of the maximally coherent pattern as a function of the
/// fringe phase φ and scaled time t/τ_d.
double maxcoherent_bracket(std::size_t n, double t_over_tau, double phi);

/// Common far-field envelope exp(-2ε²x²/(λL/π)²)/√(πα/2).
double fraunhofer_envelope(const SlitGeometry& geom, const Environment& env, double t, double x);

}  // namespace multislit
