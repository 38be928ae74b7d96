#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mkt/panel.hpp"

namespace mkt {

/// Coupled arithmetic Brownian system
///   dX_i = (alpha_i + sum_{j != i} beta_ij X_j) dt + sigma_i dW_i
/// with correlated driving noises (corr = correlation of the dW).
struct SdeSystem {
    std::vector<std::string> factor_names;
    std::vector<double> alpha;               // constant drift, per year
    std::vector<std::vector<double>> beta;   // coupling, zero diagonal, per year
    std::vector<double> sigma;               // volatility, >= 0, per sqrt(year)
    std::vector<std::vector<double>> corr;   // noise correlation, PSD
    std::vector<double> x0;

    std::size_t size() const { return factor_names.size(); }
    void validate() const;
};

struct SimulationSpec {
    double horizon = 1.0;  // years
    int steps = 100;       // dt = horizon / steps
    int paths = 1000;
    std::uint64_t seed = 0;
};

struct FactorStats {
    std::string name;
    double terminal_mean = 0;
    double terminal_stddev = 0;  // sample stddev over paths
    double q05 = 0, q50 = 0, q95 = 0;
};

struct EnsembleReport {
    std::vector<FactorStats> factors;
    std::vector<std::vector<double>> increment_correlation;  // M x M, pooled increments
    // Trajectories [path][step][factor], including the initial state; filled
    // only when requested.
    std::vector<std::vector<std::vector<double>>> paths;
};

/// Euler-Maruyama: X <- X + mu dt + sigma * sqrt(dt) * (L z) per step, with
/// L the Cholesky factor of corr (diagonal jitter up to 1e-10 if needed)
/// and z drawn from a counter stream keyed on (seed, path, step, factor).
/// Fixed seed gives bit-identical reports regardless of path scheduling.
EnsembleReport euler_maruyama(const SdeSystem& system, const SimulationSpec& spec,
                              bool retain_paths = false);

/// Fits the system to observed series on increments: sigma from the sample
/// stddev of increments, corr from their Pearson correlation, and
/// (alpha_i, beta_ij) by least squares of dX_i/dt on [1, X_j (j != i)].
/// Underdetermined regressions fall back to beta = 0 with alpha the mean
/// increment rate, and append a warning. x0 is the last observation.
SdeSystem estimate_parameters(const std::vector<std::string>& names,
                              const std::vector<std::vector<double>>& series,
                              double dt = 1.0,
                              std::vector<std::string>* warnings = nullptr);
SdeSystem estimate_parameters(const RevenuePanel& panel,
                              std::vector<std::string>* warnings = nullptr);

SdeSystem load_system_json(const std::string& text);
std::string to_json(const SdeSystem& system);
std::string to_json(const EnsembleReport& report);

/// CSV dump of retained trajectories: path,time,<factor...> per step.
std::string paths_csv(const EnsembleReport& report, const SdeSystem& system,
                      const SimulationSpec& spec);

}  // namespace mkt
