#include "multislit/interference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "multislit/constants.hpp"
#include "multislit/errors.hpp"

namespace multislit {

namespace {

// Σ_{d=1}^{m} cos(dθ) = cos((m+1)θ/2) sin(mθ/2) / sin(θ/2), with the
// removable singularity at θ ≡ 0 (mod 2π) summed directly.
double cosine_series(std::size_t m, double theta) {
  const double half = std::sin(theta / 2.0);
  if (std::abs(half) < 1e-3) {
    double sum = 0.0;
    for (std::size_t d = 1; d <= m; ++d) {
      sum += std::cos(static_cast<double>(d) * theta);
    }
    return sum;
  }
  const auto md = static_cast<double>(m);
  return std::cos((md + 1.0) * theta / 2.0) * std::sin(md * theta / 2.0) / half;
}

struct Extremum {
  double where;
  double value;
};

// Candidate grid indices for a maximum of `values` on a periodic grid, best first.
std::vector<std::size_t> local_maxima(const std::vector<double>& values, std::size_t keep) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = values[(i + n - 1) % n];
    const double next = values[(i + 1) % n];
    if (values[i] >= prev && values[i] >= next) {
      idx.push_back(i);
    }
  }
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  if (idx.size() > keep) {
    idx.resize(keep);
  }
  return idx;
}

// Refines the maximum of sign·f over the grid cells adjacent to the best
// local maxima of sign·f.
Extremum refine(const std::function<double(double)>& f, const std::vector<double>& grid_values, double step,
                double sign) {
  std::vector<double> signed_values(grid_values.size());
  std::transform(grid_values.begin(), grid_values.end(), signed_values.begin(),
                 [sign](double v) { return sign * v; });
  const auto candidates = local_maxima(signed_values, 8);
  Extremum best{0.0, -std::numeric_limits<double>::infinity()};
  for (const auto i : candidates) {
    const double centre = static_cast<double>(i) * step;
    if (signed_values[i] > best.value) {
      best = {centre, signed_values[i]};
    }
    const auto [where, neg] = boost::math::tools::brent_find_minima(
        [&](double x) { return -sign * f(x); }, centre - step, centre + step, std::numeric_limits<double>::digits / 2);
    if (-neg > best.value) {
      best = {where, -neg};
    }
  }
  return {best.where, sign * best.value};
}

}  // namespace

double michelson_visibility(double i_max, double i_min) {
  if (i_max < i_min || i_min < -kIntensitySlack) {
    throw DomainError("invalid extrema for visibility");
  }
  const double lo = std::max(i_min, 0.0);
  const double sum = i_max + lo;
  if (sum <= 0.0) {
    return 0.0;
  }
  return std::clamp((i_max - lo) / sum, 0.0, 1.0);
}

double channel_intensity(const PathConfiguration& paths, const DetectorOverlapMatrix& overlaps, double theta) {
  if (paths.size() != overlaps.size()) {
    throw DimensionMismatch("channel_intensity: " + std::to_string(paths.size()) + " paths vs " +
                            std::to_string(overlaps.size()) + " detector states");
  }
  const std::size_t n = paths.size();
  const auto& c = paths.amplitudes();
  std::vector<cplx> field(n);
  for (std::size_t k = 0; k < n; ++k) {
    field[k] = c[k] * std::polar(1.0, paths.phase(k) + static_cast<double>(k + 1) * theta);
  }
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    total += std::norm(c[j]);
    for (std::size_t k = 0; k < n; ++k) {
      if (j != k) {
        total += std::real(field[j] * std::conj(field[k]) * overlaps(j, k));
      }
    }
  }
  return total;
}

double intensity_n3(double beta, double theta) {
  require_beta(beta);
  return 1.0 + 2.0 * (1.0 - beta) / 3.0 * std::cos(theta) - 2.0 * beta / 3.0 * std::cos(2.0 * theta);
}

double intensity_n4(double beta, double theta) {
  require_beta(beta);
  return 1.0 + (2.0 - beta) / 2.0 * std::cos(theta) + (1.0 - beta) / 2.0 * std::cos(2.0 * theta) -
         beta / 2.0 * std::cos(3.0 * theta);
}

double closed_form_intensity(std::size_t n, double beta, double theta) {
  require_path_count(n, 3);
  require_beta(beta);
  const auto nd = static_cast<double>(n);
  double coherent = 0.0;
  for (std::size_t j = 3; j <= n; ++j) {
    coherent += static_cast<double>(n + 1 - j) * std::cos(static_cast<double>(j - 2) * theta);
  }
  return 1.0 + 2.0 / nd * coherent - 2.0 * beta / nd * std::cos((nd - 1.0) * theta) -
         2.0 * beta / nd * cosine_series(n - 2, theta);
}

PathConfiguration one_path_paths(std::size_t n, bool with_pi) {
  require_path_count(n);
  return PathConfiguration::equal(n, with_pi ? std::optional<std::size_t>(n - 1) : std::nullopt);
}

FringeScan scan_periodic(const std::function<double(double)>& pattern, std::size_t samples, double period,
                         ScanAxis axis) {
  if (samples < kMinScanSamples) {
    throw DomainError("scan needs at least " + std::to_string(kMinScanSamples) + " samples, got " +
                      std::to_string(samples));
  }
  if (!(period > 0.0)) {
    throw DomainError("scan period must be positive");
  }
  FringeScan scan;
  scan.axis = axis;
  scan.samples.reserve(samples);
  const double step = period / static_cast<double>(samples);
  std::vector<double> values(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = static_cast<double>(i) * step;
    values[i] = pattern(x);
    if (values[i] < -kIntensitySlack) {
      throw DomainError("negative intensity " + std::to_string(values[i]) + " in fringe scan");
    }
    scan.samples.push_back({x, values[i]});
  }
  const Extremum hi = refine(pattern, values, step, +1.0);
  const Extremum lo = refine(pattern, values, step, -1.0);
  scan.i_max = hi.value;
  scan.argmax = std::fmod(hi.where + period, period);
  scan.i_min = std::max(lo.value, 0.0);
  scan.argmin = std::fmod(lo.where + period, period);
  scan.visibility = michelson_visibility(scan.i_max, lo.value);
  return scan;
}

FringeScan scan_phase(const PathConfiguration& paths, const DetectorOverlapMatrix& overlaps, std::size_t samples) {
  if (paths.size() != overlaps.size()) {
    throw DimensionMismatch("scan_phase: path and overlap dimensions differ");
  }
  return scan_periodic([&](double theta) { return channel_intensity(paths, overlaps, theta); }, samples,
                       2.0 * constants::pi, ScanAxis::phase);
}

FringeScan scan_phase(std::size_t n, double beta, std::size_t samples) {
  return scan_phase(one_path_paths(n), DetectorOverlapMatrix::one_path_knowledge(n, beta), samples);
}

BetaSweepTable sweep_beta(std::size_t n, std::span<const double> grid, std::size_t samples, bool with_pi) {
  require_path_count(n);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require_beta(grid[i]);
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError("beta grid must be strictly increasing");
    }
  }
  const auto paths = one_path_paths(n, with_pi);
  BetaSweepTable table;
  table.n = n;
  table.rows.reserve(grid.size());
  for (const double beta : grid) {
    const auto scan = scan_phase(paths, DetectorOverlapMatrix::one_path_knowledge(n, beta), samples);
    table.rows.push_back({beta, 1.0 - beta, scan.visibility, coherence_closed_form(n, beta)});
  }
  return table;
}

std::vector<double> uniform_grid(double first, double last, std::size_t points) {
  if (points == 0) {
    return {};
  }
  if (points == 1) {
    return {first};
  }
  std::vector<double> grid(points);
  const double span = last - first;
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = first + span * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  grid.back() = last;
  return grid;
}

}  // namespace multislit
