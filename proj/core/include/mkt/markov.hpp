#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "mkt/panel.hpp"

namespace mkt {

/// Growth states in fixed order; used for both a company's own performance
/// and the competition it faces.
enum class State { Declining = 0, Stable = 1, Growing = 2 };

constexpr std::size_t kStateCount = 3;
const char* to_string(State s);

/// Row-stochastic matrix. The pipeline uses 3x3 chains; the solver accepts
/// any square size so embedded chains can be analyzed directly.
struct TransitionMatrix {
    std::vector<std::vector<double>> p;

    std::size_t size() const { return p.size(); }
    void validate() const;  // rows sum to 1 within 1e-12, entries in [0, 1]
};

enum class StationaryMethod { power_iteration, eigen_solve };
const char* to_string(StationaryMethod m);

/// Probability vector pi with pi * P = pi.
struct StationaryDistribution {
    std::vector<double> pi;
    StationaryMethod method = StationaryMethod::power_iteration;
    int iterations_used = 0;
    double residual = 0;  // max-norm of pi*P - pi
};

/// Growth-rate thresholds mapping continuous rates to states. Rates on a
/// threshold are Stable (closed band).
struct DiscretizationSpec {
    double decline_threshold = -0.02;
    double growth_threshold = 0.02;
};

/// Long-run state occupancy of a company's own growth chain (internal) and
/// of the leave-one-out market growth chain it competes against (external).
struct CompanyRiskProfile {
    std::string company;
    StationaryDistribution internal;
    StationaryDistribution external;
    TransitionMatrix internal_p;
    TransitionMatrix external_p;
};

std::vector<State> discretize(const GrowthSeries& growth, const DiscretizationSpec& spec);

/// p[i][j] = (count(i->j) + smoothing) / (count(i->.) + 3*smoothing).
/// Rows with no observed transitions and zero smoothing become uniform.
TransitionMatrix estimate_transitions(std::span<const State> states, double smoothing);

/// Solves pi * P = pi with sum(pi) = 1.
///  - power_iteration: plain iteration from uniform; if not converged by
///    max_iter/2, continues with the damping mix pi <- 0.99*pi*P + 0.01*u
///    to break periodicity. Throws NumericError if max_iter is exhausted.
///  - eigen_solve: direct elimination on (P^T - I) pi = 0 with the
///    normalization row; falls back to iteration when the system is
///    singular (degenerate chains resolve to uniform).
StationaryDistribution stationary(const TransitionMatrix& p, StationaryMethod method,
                                  double tol = 1e-12, int max_iter = 100000);

/// Growth of the aggregate revenue of every company except the named one:
/// the market that company faces.
GrowthSeries external_competition_series(const RevenuePanel& panel,
                                         const std::string& company);

std::vector<CompanyRiskProfile> risk_profiles(const RevenuePanel& panel,
                                              const DiscretizationSpec& disc,
                                              double smoothing);

std::string risk_report_json(const std::vector<CompanyRiskProfile>& profiles, bool verbose);

/// Two stacked bars per company (internal, external); segments red/blue/
/// green bottom-to-top for Declining/Stable/Growing. Byte-deterministic.
std::string stacked_bar_svg(const std::vector<CompanyRiskProfile>& profiles);

}  // namespace mkt
