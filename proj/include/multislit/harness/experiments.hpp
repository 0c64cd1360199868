#pragma once

// Figure-reproduction experiments and ad-hoc evaluators. Each returns fully
// computed, validated tables; writing them out is the CLI's job.

#include <string>
#include <vector>

#include "multislit/bath.hpp"
#include "multislit/harness/config.hpp"
#include "multislit/harness/table.hpp"

namespace multislit::harness {

/// Defaults for the figure experiments.
std::vector<std::size_t> default_path_counts();  // 3, 4, 5, 6
std::vector<double> default_beta_grid();         // 101 points on [0, 1]
std::vector<double> default_fig4_times();        // 0, 1/12, 1/4, 1/2, 2
std::vector<double> default_time_grid();         // 201 points on [0, 4]

/// Environment for a scaled time t/τ_d reached at absolute time t:
/// D = 12ℏ²(t/τ_d)/(ℓ²t), γ = D/(2 m k_B T).
Environment scaled_environment(const RunConfig& config, double t_over_tau, double t);

/// Visibility versus one-path knowledge; `stem` is "fig2" or "fig3".
std::vector<Table> run_fig2_fig3(const RunConfig& config, const std::string& stem);
/// Screen patterns ρ(x,x,t) of the maximally coherent state for each t/τ_d.
std::vector<Table> run_fig4(const RunConfig& config);
/// Visibility and coherence versus t/τ_d, one table per n.
std::vector<Table> run_fig5(const RunConfig& config);

Table run_scan(const RunConfig& config);
Table run_screen(const RunConfig& config);
Table run_decay(const RunConfig& config);

}  // namespace multislit::harness
