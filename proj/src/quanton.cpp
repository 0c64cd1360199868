#include "multislit/quanton.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "multislit/constants.hpp"
#include "multislit/errors.hpp"

namespace multislit {

namespace {

constexpr double kHermitianTolerance = 1e-12;

bool is_hermitian(const ComplexMatrix& m) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= kHermitianTolerance;
}

}  // namespace

void require_path_count(std::size_t n, std::size_t minimum) {
  if (n < minimum) {
    throw DomainError("path count " + std::to_string(n) + " below minimum " + std::to_string(minimum));
  }
}

void require_beta(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw DomainError("beta must lie in [0, 1], got " + std::to_string(beta));
  }
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------

PathConfiguration::PathConfiguration(std::vector<cplx> amplitudes, std::vector<double> phases,
                                     std::optional<std::size_t> pi_index)
    : amplitudes_(std::move(amplitudes)), phases_(std::move(phases)), pi_index_(pi_index) {
  require_path_count(amplitudes_.size());
  if (phases_.empty()) {
    phases_.assign(amplitudes_.size(), 0.0);
  }
  if (phases_.size() != amplitudes_.size()) {
    throw DimensionMismatch("phase vector has " + std::to_string(phases_.size()) + " entries for " +
                            std::to_string(amplitudes_.size()) + " paths");
  }
  if (pi_index_ && *pi_index_ >= amplitudes_.size()) {
    throw DomainError("pi path index out of range");
  }
  double norm = 0.0;
  for (const auto& c : amplitudes_) {
    norm += std::norm(c);
  }
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw NotNormalized("path amplitudes are not normalized: sum |c|^2 = " + std::to_string(norm));
  }
}

PathConfiguration PathConfiguration::equal(std::size_t n, std::optional<std::size_t> pi_index) {
  require_path_count(n);
  return PathConfiguration(std::vector<cplx>(n, cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0)), {},
                           pi_index);
}

double PathConfiguration::phase(std::size_t k) const {
  return phases_.at(k) + (pi_index_ == k ? constants::pi : 0.0);
}

PathConfiguration PathConfiguration::with_linear_phase(double theta) const {
  PathConfiguration out = *this;
  for (std::size_t k = 0; k < out.phases_.size(); ++k) {
    out.phases_[k] += static_cast<double>(k + 1) * theta;
  }
  return out;
}

PathConfiguration PathConfiguration::without_pi() const {
  PathConfiguration out = *this;
  out.pi_index_.reset();
  return out;
}

// ---------------------------------------------------------------------------

DetectorOverlapMatrix::DetectorOverlapMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw DimensionMismatch("overlap matrix must be square");
  }
  require_path_count(size());
  if (!is_hermitian(entries_)) {
    throw ValidationError("overlap matrix is not Hermitian");
  }
  for (Eigen::Index j = 0; j < entries_.rows(); ++j) {
    if (std::abs(entries_(j, j) - cplx(1.0, 0.0)) > kNormTolerance) {
      throw ValidationError("overlap matrix diagonal must be 1 (normalized detector states)");
    }
  }
  if (entries_.cwiseAbs().maxCoeff() > 1.0 + kNormTolerance) {
    throw ValidationError("overlap magnitude exceeds 1");
  }
  const double lowest = min_eigenvalue(entries_);
  if (lowest < -kPsdTolerance) {
    throw NotPositiveSemidefinite("overlap matrix is not a Gram matrix: minimum eigenvalue " +
                                  std::to_string(lowest));
  }
}

DetectorOverlapMatrix DetectorOverlapMatrix::distinguishable(std::size_t n) {
  return DetectorOverlapMatrix(ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

DetectorOverlapMatrix DetectorOverlapMatrix::indistinguishable(std::size_t n) {
  return DetectorOverlapMatrix(ComplexMatrix::Ones(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

DetectorOverlapMatrix DetectorOverlapMatrix::one_path_knowledge(std::size_t n, double beta) {
  require_path_count(n);
  require_beta(beta);
  const auto dim = static_cast<Eigen::Index>(n);
  ComplexMatrix o = ComplexMatrix::Ones(dim, dim);
  for (Eigen::Index j = 0; j + 1 < dim; ++j) {
    o(j, dim - 1) = beta;
    o(dim - 1, j) = beta;
  }
  return DetectorOverlapMatrix(std::move(o));
}

DetectorOverlapMatrix DetectorOverlapMatrix::from_ancilla_states(const ComplexMatrix& states) {
  ComplexMatrix normalized = states;
  for (Eigen::Index j = 0; j < normalized.cols(); ++j) {
    const double len = normalized.col(j).norm();
    if (len == 0.0) {
      throw ValidationError("ancilla state " + std::to_string(j) + " has zero norm");
    }
    normalized.col(j) /= len;
  }
  // (X^† X)_{kj} = ⟨χ_k|χ_j⟩, so O is its transpose.
  ComplexMatrix gram = (normalized.adjoint() * normalized).transpose();
  gram.diagonal().setOnes();
  return DetectorOverlapMatrix(std::move(gram));
}

// ---------------------------------------------------------------------------

ReducedDensityMatrix::ReducedDensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw DimensionMismatch("density matrix must be square and non-empty");
  }
  if (!is_hermitian(entries_)) {
    throw ValidationError("density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - cplx(1.0, 0.0)) > kNormTolerance) {
    throw NotNormalized("density matrix trace is not 1");
  }
  const double lowest = min_eigenvalue(entries_);
  if (lowest < -kPsdTolerance) {
    throw NotPositiveSemidefinite("density matrix has negative eigenvalue " + std::to_string(lowest));
  }
}

ReducedDensityMatrix build_reduced_density(const PathConfiguration& paths,
                                           const DetectorOverlapMatrix& overlaps) {
  if (paths.size() != overlaps.size()) {
    throw DimensionMismatch("path configuration has " + std::to_string(paths.size()) +
                            " paths but overlap matrix is " + std::to_string(overlaps.size()) + "x" +
                            std::to_string(overlaps.size()));
  }
  const auto n = static_cast<Eigen::Index>(paths.size());
  const auto& c = paths.amplitudes();
  ComplexMatrix rho(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto uj = static_cast<std::size_t>(j);
      const auto uk = static_cast<std::size_t>(k);
      rho(j, k) = c[uj] * std::conj(c[uk]) * std::polar(1.0, paths.phase(uj) - paths.phase(uk)) * overlaps(uj, uk);
    }
  }
  return ReducedDensityMatrix(std::move(rho));
}

ReducedDensityMatrix one_path_knowledge_state(std::size_t n, double beta) {
  require_path_count(n);
  require_beta(beta);
  const auto dim = static_cast<Eigen::Index>(n);
  const double w = 1.0 / static_cast<double>(n);
  ComplexMatrix rho = ComplexMatrix::Constant(dim, dim, w);
  for (Eigen::Index j = 0; j + 1 < dim; ++j) {
    rho(j, dim - 1) = -beta * w;
    rho(dim - 1, j) = -beta * w;
  }
  return ReducedDensityMatrix(std::move(rho));
}

double l1_coherence(const ReducedDensityMatrix& rho) {
  const auto& m = rho.matrix();
  const Eigen::Index n = m.rows();
  if (n < 2) {
    return 0.0;
  }
  double off = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (j != k) {
        off += std::abs(m(j, k));
      }
    }
  }
  return off / static_cast<double>(n - 1);
}

double coherence_closed_form(std::size_t n, double beta) {
  require_path_count(n);
  require_beta(beta);
  const auto nd = static_cast<double>(n);
  return (nd - 2.0 + 2.0 * beta) / nd;
}

}  // namespace multislit
