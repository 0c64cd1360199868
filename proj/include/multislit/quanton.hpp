#pragma once

// Quanton states: path amplitudes, which-path detector overlaps, the reduced
// density matrix obtained by tracing out the detectors, and its l1-norm
// coherence.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace multislit {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;

/// Amplitudes c_k, constant phase offsets θ_k and the optional path that
/// carries an extra π phase. Path indices are zero-based in the API; the
/// config file and CLI use one-based indices.
class PathConfiguration {
public:
  /// Throws NotNormalized when Σ|c_k|² differs from 1 by more than 1e-12,
  /// DomainError for n < 2, a phase vector of the wrong length, or an
  /// out-of-range pi_index. An empty phase vector means all zero.
  PathConfiguration(std::vector<cplx> amplitudes, std::vector<double> phases = {},
                    std::optional<std::size_t> pi_index = std::nullopt);

  /// Equal amplitudes 1/√n, zero phases.
  static PathConfiguration equal(std::size_t n, std::optional<std::size_t> pi_index = std::nullopt);

  std::size_t size() const noexcept { return amplitudes_.size(); }
  const std::vector<cplx>& amplitudes() const noexcept { return amplitudes_; }
  const std::vector<double>& phases() const noexcept { return phases_; }
  std::optional<std::size_t> pi_index() const noexcept { return pi_index_; }

  /// θ_k including the π offset when k is the π path.
  double phase(std::size_t k) const;

  /// Copy with θ_k advanced by (k+1)·theta, the linear phase ramp θ_k = kθ
  /// of the phase-scan experiments.
  PathConfiguration with_linear_phase(double theta) const;

  PathConfiguration without_pi() const;

private:
  std::vector<cplx> amplitudes_;
  std::vector<double> phases_;
  std::optional<std::size_t> pi_index_;
};

/// Gram matrix O_jk = ⟨χ_k|χ_j⟩ of normalized ancilla states.
class DetectorOverlapMatrix {
public:
  /// Validates Hermiticity, unit diagonal, |O_jk| ≤ 1 (ValidationError) and
  /// positive semidefiniteness (NotPositiveSemidefinite).
  explicit DetectorOverlapMatrix(ComplexMatrix entries);

  /// Orthogonal detector states: every path fully distinguishable.
  static DetectorOverlapMatrix distinguishable(std::size_t n);
  /// Identical detector states: no path information.
  static DetectorOverlapMatrix indistinguishable(std::size_t n);
  /// First n-1 detector states identical, the last one overlapping each of
  /// them with the real value beta ∈ [0, 1].
  static DetectorOverlapMatrix one_path_knowledge(std::size_t n, double beta);
  /// Columns of `states` are the ancilla vectors |χ_j⟩; each is normalized
  /// before the Gram matrix is formed.
  static DetectorOverlapMatrix from_ancilla_states(const ComplexMatrix& states);

  std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return entries_; }
  cplx operator()(std::size_t j, std::size_t k) const { return entries_(j, k); }

private:
  ComplexMatrix entries_;
};

/// n×n quanton state after the detectors are traced out.
class ReducedDensityMatrix {
public:
  /// Validates Hermiticity, unit trace and positive semidefiniteness.
  explicit ReducedDensityMatrix(ComplexMatrix entries);

  std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return entries_; }
  cplx operator()(std::size_t j, std::size_t k) const { return entries_(j, k); }

private:
  ComplexMatrix entries_;
};

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& hermitian);

/// ρ_jk = c_j c_k* e^{i(θ_j-θ_k)} O_jk.
ReducedDensityMatrix build_reduced_density(const PathConfiguration& paths,
                                           const DetectorOverlapMatrix& overlaps);

/// Equal-amplitude state with one-path knowledge 1-β and the π phase on the
/// last path folded into the sign: ρ_jk = 1/n inside the first n-1 paths,
/// ρ_jn = ρ_nj = -β/n.
ReducedDensityMatrix one_path_knowledge_state(std::size_t n, double beta);

/// C = Σ_{j≠k} |ρ_jk| / (n-1).
double l1_coherence(const ReducedDensityMatrix& rho);

/// (n-2+2β)/n, the l1 coherence of one_path_knowledge_state(n, β).
double coherence_closed_form(std::size_t n, double beta);

void require_path_count(std::size_t n, std::size_t minimum = 2);
void require_beta(double beta);

}  // namespace multislit
