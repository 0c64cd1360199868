#include "multislit/bath.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "multislit/constants.hpp"
#include "multislit/errors.hpp"

namespace multislit {

namespace {

using constants::hbar;
using constants::pi;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " + std::to_string(value));
  }
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("time must be non-negative, got " + std::to_string(t));
  }
}

double index_gap_squared(std::size_t j, std::size_t k) {
  const double d = static_cast<double>(j) - static_cast<double>(k);
  return d * d;
}

// (4g + 4e^{-2g} - e^{-4g} - 3) / g³ as a Taylor series; the coefficients are
// [4(-2)^k - (-4)^k] / k! for k ≥ 3.
double spreading_bracket_over_cube(double g) {
  constexpr std::size_t kTerms = 14;
  static const std::array<double, kTerms> coeff = [] {
    std::array<double, kTerms> a{};
    double factorial = 6.0;
    for (std::size_t i = 0; i < kTerms; ++i) {
      const int k = static_cast<int>(i) + 3;
      if (i > 0) {
        factorial *= k;
      }
      a[i] = (4.0 * std::pow(-2.0, k) - std::pow(-4.0, k)) / factorial;
    }
    return a;
  }();
  double sum = 0.0;
  for (std::size_t i = kTerms; i-- > 0;) {
    sum = sum * g + coeff[i];
  }
  return sum;
}

void require_matching(const SlitGeometry& geom, std::size_t paths) {
  if (geom.n != paths) {
    throw DimensionMismatch("geometry has " + std::to_string(geom.n) + " slits but " + std::to_string(paths) +
                            " paths were given");
  }
}

double envelope_scale(const SlitGeometry& geom) {
  const double w = geom.lambda * geom.distance / pi;
  return w * w;
}

double prefactor(const SlitGeometry& geom, const Environment& env, double t) {
  return 1.0 / std::sqrt(pi * spreading_width(geom.eps, env, t) / 2.0);
}

}  // namespace

// ---------------------------------------------------------------------------

BathParameters::BathParameters(double gamma, double temperature, double mass)
    : gamma_(gamma), temperature_(temperature), mass_(mass) {
  require_positive(gamma, "bath.gamma");
  require_positive(temperature, "bath.temperature");
  require_positive(mass, "bath.mass");
  diffusion_ = 2.0 * mass_ * gamma_ * constants::boltzmann * temperature_;
}

Environment Environment::from(const BathParameters& bath) {
  return {bath.mass(), bath.gamma(), bath.diffusion()};
}

Environment Environment::decoherence_free(double mass) {
  Environment env{mass, 0.0, 0.0};
  env.validate();
  return env;
}

void Environment::validate() const {
  require_positive(mass, "bath.mass");
  if (!(gamma >= 0.0) || !(diffusion >= 0.0)) {
    throw DomainError("friction and diffusion must be non-negative");
  }
}

void SlitGeometry::validate() const {
  if (n < 2) {
    throw DomainError("geometry.n must be at least 2");
  }
  require_positive(ell, "geometry.ell");
  require_positive(eps, "geometry.eps");
  require_positive(lambda, "geometry.lambda");
  require_positive(distance, "geometry.L");
}

void SlitGeometry::require_fraunhofer() const {
  validate();
  const double ratio = fraunhofer_ratio();
  if (!(ratio < kMaxFraunhoferRatio)) {
    throw FraunhoferError("far-field condition violated: eps*ell/(lambda*L) = " + std::to_string(ratio) +
                          " (limit " + std::to_string(kMaxFraunhoferRatio) + ")");
  }
}

double SlitGeometry::fringe_phase(double x) const noexcept {
  return 2.0 * pi * ell * x / (lambda * distance);
}

// ---------------------------------------------------------------------------

double diffusion_coefficient(const BathParameters& bath) {
  return bath.diffusion();
}

double decoherence_time(double diffusion, double ell, std::size_t j, std::size_t k) {
  if (j == k) {
    throw DomainError("decoherence time is undefined for a path paired with itself");
  }
  require_positive(diffusion, "diffusion");
  require_positive(ell, "geometry.ell");
  return 12.0 * hbar * hbar / (diffusion * index_gap_squared(j, k) * ell * ell);
}

double pair_decoherence_factor(double diffusion, double ell, double t, std::size_t j, std::size_t k) {
  require_time(t);
  if (diffusion < 0.0) {
    throw DomainError("diffusion must be non-negative");
  }
  if (j == k) {
    return 1.0;
  }
  return std::exp(-diffusion * index_gap_squared(j, k) * ell * ell * t / (12.0 * hbar * hbar));
}

DecoherenceSchedule DecoherenceSchedule::at_time(std::size_t n, double diffusion, double ell, double t) {
  require_path_count(n);
  require_time(t);
  DecoherenceSchedule s;
  s.n_ = n;
  s.factors_.resize(n * n);
  s.times_.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      s.factors_[j * n + k] = pair_decoherence_factor(diffusion, ell, t, j, k);
      s.times_[j * n + k] = (j == k || diffusion == 0.0) ? std::numeric_limits<double>::infinity()
                                                         : decoherence_time(diffusion, ell, j, k);
    }
  }
  return s;
}

DecoherenceSchedule DecoherenceSchedule::at_scaled_time(std::size_t n, double t_over_tau) {
  require_path_count(n);
  require_time(t_over_tau);
  DecoherenceSchedule s;
  s.n_ = n;
  s.factors_.resize(n * n);
  s.times_.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const double gap2 = index_gap_squared(j, k);
      s.factors_[j * n + k] = j == k ? 1.0 : std::exp(-gap2 * t_over_tau);
      s.times_[j * n + k] = j == k ? std::numeric_limits<double>::infinity() : 1.0 / gap2;
    }
  }
  return s;
}

std::vector<double> DecoherenceSchedule::pair_times() const {
  std::vector<double> out;
  out.reserve(n_ * (n_ - 1) / 2);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t k = j + 1; k < n_; ++k) {
      out.push_back(time(j, k));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

double spreading_width(double eps, const Environment& env, double t) {
  require_positive(eps, "geometry.eps");
  env.validate();
  require_time(t);
  const double m = env.mass;
  const double g = env.gamma * t;

  // (1 - e^{-2γt}) / γ = t h(γt) with h(g) = (1 - e^{-2g}) / g → 2.
  const double h = g == 0.0 ? 2.0 : -std::expm1(-2.0 * g) / g;
  const double kinetic = hbar * hbar * t * t * h * h / (eps * eps * m * m);

  double bracket_over_cube = 0.0;
  if (g < kSpreadingSeriesSwitch) {
    bracket_over_cube = spreading_bracket_over_cube(g);
  } else {
    // 4e^{-2g} - e^{-4g} - 3 = 4 expm1(-2g) - expm1(-4g)
    bracket_over_cube = (4.0 * g + 4.0 * std::expm1(-2.0 * g) - std::expm1(-4.0 * g)) / (g * g * g);
  }
  const double diffusive = env.diffusion * t * t * t * bracket_over_cube / (8.0 * m * m);
  return eps * eps + kinetic + diffusive;
}

double spreading_width(const BathParameters& bath, const SlitGeometry& geom, double t) {
  geom.validate();
  return spreading_width(geom.eps, Environment::from(bath), t);
}

double flight_time(const SlitGeometry& geom, double mass) {
  geom.validate();
  require_positive(mass, "bath.mass");
  return geom.distance * mass * geom.lambda / constants::planck;
}

double diffusion_for_scaled_time(double t_over_tau, double ell, double t) {
  require_time(t_over_tau);
  require_positive(ell, "geometry.ell");
  require_positive(t, "time");
  return 12.0 * hbar * hbar * t_over_tau / (ell * ell * t);
}

double fraunhofer_envelope(const SlitGeometry& geom, const Environment& env, double t, double x) {
  const double s = envelope_scale(geom);
  return std::exp(-2.0 * geom.eps * geom.eps * x * x / s) * prefactor(geom, env, t);
}

double screen_density_exact(const SlitGeometry& geom, const PathConfiguration& paths,
                            const DetectorOverlapMatrix& overlaps, const Environment& env, double t, double x) {
  geom.validate();
  require_matching(geom, paths.size());
  require_matching(geom, overlaps.size());
  const auto schedule = DecoherenceSchedule::at_time(geom.n, env.diffusion, geom.ell, t);
  const double s = envelope_scale(geom);
  const double eps2 = geom.eps * geom.eps;
  const double lambda_l = geom.lambda * geom.distance;
  const auto& c = paths.amplitudes();

  double bracket = 0.0;
  for (std::size_t j = 0; j < geom.n; ++j) {
    const double xj = static_cast<double>(j + 1) * geom.ell;
    bracket += std::norm(c[j]) * std::exp(-2.0 * eps2 * (x - xj) * (x - xj) / s);
    for (std::size_t k = 0; k < geom.n; ++k) {
      if (k == j) {
        continue;
      }
      const double xk = static_cast<double>(k + 1) * geom.ell;
      const double gap = static_cast<double>(k) - static_cast<double>(j);
      const double midpoint = 0.5 * (xj + xk);
      const double envelope = std::exp(-eps2 * ((x - xj) * (x - xj) + (x - xk) * (x - xk)) / s);
      const double phase = 2.0 * pi * geom.ell * gap * (x - midpoint) / lambda_l + paths.phase(k) - paths.phase(j);
      bracket += std::abs(c[j]) * std::abs(c[k]) * std::abs(overlaps(j, k)) * envelope * schedule.factor(j, k) *
                 std::cos(phase);
    }
  }
  return prefactor(geom, env, t) * bracket;
}

double screen_density_fraunhofer(const SlitGeometry& geom, const PathConfiguration& paths,
                                 const DetectorOverlapMatrix& overlaps, const Environment& env, double t, double x) {
  geom.require_fraunhofer();
  require_matching(geom, paths.size());
  require_matching(geom, overlaps.size());
  const auto schedule = DecoherenceSchedule::at_time(geom.n, env.diffusion, geom.ell, t);
  const double phi = geom.fringe_phase(x);
  const auto& c = paths.amplitudes();

  double bracket = 1.0;
  for (std::size_t j = 0; j < geom.n; ++j) {
    for (std::size_t k = 0; k < geom.n; ++k) {
      if (k == j) {
        continue;
      }
      const double gap = static_cast<double>(k) - static_cast<double>(j);
      bracket += std::abs(c[j]) * std::abs(c[k]) * std::abs(overlaps(j, k)) * schedule.factor(j, k) *
                 std::cos(gap * phi + paths.phase(k) - paths.phase(j));
    }
  }
  return fraunhofer_envelope(geom, env, t, x) * bracket;
}

double screen_density_selective(const SlitGeometry& geom, const PathConfiguration& paths, const Environment& env,
                                double t, double x) {
  geom.require_fraunhofer();
  require_matching(geom, paths.size());
  const std::size_t n = geom.n;
  if (paths.pi_index() != n - 1) {
    throw DomainError("path-selective decoherence requires the pi phase on the last path");
  }
  const auto schedule = DecoherenceSchedule::at_time(n, env.diffusion, geom.ell, t);
  const double phi = geom.fringe_phase(x);
  const auto& c = paths.amplitudes();
  const auto& theta = paths.phases();

  double bracket = 1.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (k != j) {
        const double gap = static_cast<double>(k) - static_cast<double>(j);
        bracket += std::abs(c[j]) * std::abs(c[k]) * std::cos(gap * phi + theta[k] - theta[j]);
      }
    }
  }
  const std::size_t last = n - 1;
  for (std::size_t j = 0; j < last; ++j) {
    const auto gap = static_cast<double>(last - j);
    bracket -= 2.0 * std::abs(c[j]) * std::abs(c[last]) * schedule.factor(j, last) *
               std::cos(gap * phi + theta[last] - theta[j]);
  }
  return fraunhofer_envelope(geom, env, t, x) * bracket;
}

double maxcoherent_bracket(std::size_t n, double t_over_tau, double phi) {
  require_path_count(n);
  require_time(t_over_tau);
  const auto nd = static_cast<double>(n);
  double coherent = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (k != j) {
        coherent += std::cos((static_cast<double>(k) - static_cast<double>(j)) * phi);
      }
    }
  }
  double damped = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const auto gap = static_cast<double>(n - 1 - j);
    damped += std::exp(-gap * gap * t_over_tau) * std::cos(gap * phi);
  }
  return 1.0 + coherent / nd - 2.0 / nd * damped;
}

double screen_density_maxcoherent(const SlitGeometry& geom, const Environment& env, double t, double x) {
  geom.require_fraunhofer();
  const std::size_t n = geom.n;
  const auto schedule = DecoherenceSchedule::at_time(n, env.diffusion, geom.ell, t);
  const double phi = geom.fringe_phase(x);
  const auto nd = static_cast<double>(n);

  double coherent = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (k != j) {
        coherent += std::cos((static_cast<double>(k) - static_cast<double>(j)) * phi);
      }
    }
  }
  double damped = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    damped += schedule.factor(j, n - 1) * std::cos(static_cast<double>(n - 1 - j) * phi);
  }
  return fraunhofer_envelope(geom, env, t, x) * (1.0 + coherent / nd - 2.0 / nd * damped);
}

}  // namespace multislit
