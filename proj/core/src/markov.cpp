#include "mkt/markov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "linalg.hpp"
#include "mkt/errors.hpp"
#include "mkt/svg.hpp"

namespace mkt {

namespace {

constexpr double kResidualLimit = 1e-10;

double residual_of(const std::vector<double>& pi, const std::vector<std::vector<double>>& p) {
    const std::size_t n = pi.size();
    double worst = 0;
    for (std::size_t j = 0; j < n; ++j) {
        double q = 0;
        for (std::size_t i = 0; i < n; ++i) q += pi[i] * p[i][j];
        worst = std::max(worst, std::fabs(q - pi[j]));
    }
    return worst;
}

std::vector<double> multiply_left(const std::vector<double>& pi,
                                  const std::vector<std::vector<double>>& p) {
    const std::size_t n = pi.size();
    std::vector<double> q(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q[j] += pi[i] * p[i][j];
    return q;
}

void normalize_distribution(std::vector<double>& pi) {
    double sum = 0;
    for (double& v : pi) {
        if (v < 0) v = 0;  // clamp elimination round-off
        sum += v;
    }
    for (double& v : pi) v /= sum;
}

StationaryDistribution power_iterate(const TransitionMatrix& p, double tol, int max_iter) {
    const std::size_t n = p.size();
    const double u = 1.0 / static_cast<double>(n);
    std::vector<double> pi(n, u);
    const int damp_after = max_iter / 2;
    for (int iter = 0; iter < max_iter; ++iter) {
        std::vector<double> q = multiply_left(pi, p.p);
        double res = 0;
        for (std::size_t j = 0; j < n; ++j) res = std::max(res, std::fabs(q[j] - pi[j]));
        if (res <= tol) {
            normalize_distribution(pi);
            StationaryDistribution out;
            out.pi = std::move(pi);
            out.method = StationaryMethod::power_iteration;
            out.iterations_used = iter;
            out.residual = residual_of(out.pi, p.p);
            return out;
        }
        if (iter >= damp_after) {
            // Damping mix breaks periodic cycling; convergence is still
            // checked against the undamped chain.
            for (std::size_t j = 0; j < n; ++j) q[j] = 0.99 * q[j] + 0.01 * u;
        }
        pi = std::move(q);
        normalize_distribution(pi);
    }
    const double res = residual_of(pi, p.p);
    std::ostringstream msg;
    msg << "stationary distribution did not converge after " << max_iter
        << " iterations (residual " << res << "; last iterate";
    for (double v : pi) msg << ' ' << v;
    msg << ")";
    throw NumericError(msg.str());
}

}  // namespace

const char* to_string(State s) {
    switch (s) {
        case State::Declining: return "Declining";
        case State::Stable: return "Stable";
        case State::Growing: return "Growing";
    }
    return "unknown";
}

const char* to_string(StationaryMethod m) {
    return m == StationaryMethod::power_iteration ? "power_iteration" : "eigen_solve";
}

void TransitionMatrix::validate() const {
    const std::size_t n = p.size();
    if (n == 0) throw InputError("transition matrix is empty");
    for (std::size_t i = 0; i < n; ++i) {
        if (p[i].size() != n) throw InputError("transition matrix is not square");
        double sum = 0;
        for (double v : p[i]) {
            if (v < -1e-15 || v > 1.0 + 1e-12)
                throw InputError("transition probability out of [0, 1]");
            sum += v;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            throw InputError("transition matrix row " + std::to_string(i) +
                             " sums to " + std::to_string(sum) + ", expected 1");
    }
}

std::vector<State> discretize(const GrowthSeries& growth, const DiscretizationSpec& spec) {
    if (growth.rates.empty()) throw InputError("growth series is empty");
    if (!(spec.decline_threshold < spec.growth_threshold))
        throw InputError("decline threshold must be below growth threshold");
    std::vector<State> out;
    out.reserve(growth.rates.size());
    for (double r : growth.rates) {
        if (r < spec.decline_threshold)
            out.push_back(State::Declining);
        else if (r > spec.growth_threshold)
            out.push_back(State::Growing);
        else
            out.push_back(State::Stable);
    }
    return out;
}

TransitionMatrix estimate_transitions(std::span<const State> states, double smoothing) {
    if (states.size() < 2)
        throw InputError("transition estimation needs at least 2 states");
    if (smoothing < 0) throw InputError("smoothing must be >= 0");
    double counts[kStateCount][kStateCount] = {};
    for (std::size_t t = 0; t + 1 < states.size(); ++t)
        counts[static_cast<int>(states[t])][static_cast<int>(states[t + 1])] += 1.0;

    TransitionMatrix out;
    out.p.assign(kStateCount, std::vector<double>(kStateCount, 0.0));
    for (std::size_t i = 0; i < kStateCount; ++i) {
        double total = smoothing * static_cast<double>(kStateCount);
        for (std::size_t j = 0; j < kStateCount; ++j) total += counts[i][j];
        if (total == 0) {
            // No observations and no smoothing: uniform row.
            for (std::size_t j = 0; j < kStateCount; ++j)
                out.p[i][j] = 1.0 / static_cast<double>(kStateCount);
        } else {
            for (std::size_t j = 0; j < kStateCount; ++j)
                out.p[i][j] = (counts[i][j] + smoothing) / total;
        }
    }
    return out;
}

StationaryDistribution stationary(const TransitionMatrix& p, StationaryMethod method,
                                  double tol, int max_iter) {
    p.validate();
    if (method == StationaryMethod::power_iteration) return power_iterate(p, tol, max_iter);

    // eigen_solve: (P^T - I) pi = 0 with the last equation replaced by the
    // normalization sum(pi) = 1.
    const std::size_t n = p.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = p.p[j][i] - (i == j ? 1.0 : 0.0);
    for (std::size_t j = 0; j < n; ++j) a[n - 1][j] = 1.0;
    std::vector<double> b(n, 0.0);
    b[n - 1] = 1.0;

    auto solution = detail::solve_linear(std::move(a), std::move(b));
    if (!solution) {
        // Singular system: multiple stationary distributions (e.g. the
        // identity chain). Iteration from uniform picks the declared
        // tie-break deterministically.
        return power_iterate(p, tol, max_iter);
    }
    normalize_distribution(*solution);
    StationaryDistribution out;
    out.pi = std::move(*solution);
    out.method = StationaryMethod::eigen_solve;
    out.iterations_used = 0;
    out.residual = residual_of(out.pi, p.p);
    if (out.residual > kResidualLimit)
        throw NumericError("eigen solve produced residual " + std::to_string(out.residual));
    return out;
}

GrowthSeries external_competition_series(const RevenuePanel& panel,
                                         const std::string& company) {
    panel.validate();
    if (panel.company_count() < 2)
        throw InputError("external competition needs at least 2 companies");
    std::size_t target = panel.company_count();
    for (std::size_t i = 0; i < panel.company_count(); ++i)
        if (panel.companies[i] == company) target = i;
    if (target == panel.company_count())
        throw InputError("company '" + company + "' not found in panel");

    RevenuePanel aggregate;
    aggregate.companies = {"market excluding " + company};
    aggregate.periods = panel.periods;
    aggregate.values.assign(1, std::vector<double>(panel.period_count(), 0.0));
    for (std::size_t i = 0; i < panel.company_count(); ++i) {
        if (i == target) continue;
        for (std::size_t t = 0; t < panel.period_count(); ++t)
            aggregate.values[0][t] += panel.values[i][t];
    }
    return growth_rates(aggregate)[0];
}

std::vector<CompanyRiskProfile> risk_profiles(const RevenuePanel& panel,
                                              const DiscretizationSpec& disc,
                                              double smoothing) {
    panel.validate();
    const auto growth = growth_rates(panel);
    std::vector<CompanyRiskProfile> out;
    out.reserve(panel.company_count());
    for (std::size_t i = 0; i < panel.company_count(); ++i) {
        CompanyRiskProfile profile;
        profile.company = panel.companies[i];
        const auto internal_states = discretize(growth[i], disc);
        profile.internal_p = estimate_transitions(internal_states, smoothing);
        profile.internal = stationary(profile.internal_p, StationaryMethod::eigen_solve);
        const auto external = external_competition_series(panel, panel.companies[i]);
        const auto external_states = discretize(external, disc);
        profile.external_p = estimate_transitions(external_states, smoothing);
        profile.external = stationary(profile.external_p, StationaryMethod::eigen_solve);
        out.push_back(std::move(profile));
    }
    return out;
}

std::string risk_report_json(const std::vector<CompanyRiskProfile>& profiles, bool verbose) {
    nlohmann::ordered_json root;
    root["states"] = {to_string(State::Declining), to_string(State::Stable),
                      to_string(State::Growing)};
    root["companies"] = nlohmann::ordered_json::array();
    auto dist_json = [](const StationaryDistribution& d) {
        nlohmann::ordered_json j;
        j["pi"] = d.pi;
        j["residual"] = d.residual;
        j["method"] = to_string(d.method);
        return j;
    };
    for (const auto& p : profiles) {
        nlohmann::ordered_json item;
        item["company"] = p.company;
        item["internal"] = dist_json(p.internal);
        item["external"] = dist_json(p.external);
        if (verbose) {
            item["internal_transitions"] = p.internal_p.p;
            item["external_transitions"] = p.external_p.p;
        }
        root["companies"].push_back(std::move(item));
    }
    return root.dump(2) + "\n";
}

std::string stacked_bar_svg(const std::vector<CompanyRiskProfile>& profiles) {
    if (profiles.empty()) throw InputError("no risk profiles to draw");
    const char* const colors[kStateCount] = {"#d62728", "#1f77b4", "#2ca02c"};
    const double bar_w = 32, bar_gap = 6, group_gap = 28, bar_h = 220;
    const double left = 60, top = 40, bottom = 64;
    const double group_w = 2 * bar_w + bar_gap;
    const double width = left + static_cast<double>(profiles.size()) * (group_w + group_gap) +
                         160;
    const double height = top + bar_h + bottom;

    SvgWriter svg(width, height);
    // y-axis with probability ticks.
    for (int g = 0; g <= 4; ++g) {
        const double frac = static_cast<double>(g) / 4.0;
        const double yy = top + bar_h * (1.0 - frac);
        svg.line(left - 4, yy, left, yy, "stroke=\"#000000\" stroke-width=\"1\"");
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%.2f", frac);
        svg.text(left - 8, yy + 4, buf,
                 "text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\"");
    }
    svg.line(left, top, left, top + bar_h, "stroke=\"#000000\" stroke-width=\"1\"");

    double x = left + group_gap / 2;
    for (const auto& p : profiles) {
        auto draw_bar = [&](const StationaryDistribution& dist, double bx) {
            svg.open_group("class=\"bar\"");
            double y = top + bar_h;  // stack from the bottom: Declining, Stable, Growing
            for (std::size_t s = 0; s < kStateCount; ++s) {
                const double h = dist.pi[s] * bar_h;
                y -= h;
                svg.rect(bx, y, bar_w, h,
                         "class=\"seg\" fill=\"" + std::string(colors[s]) +
                             "\" stroke=\"#ffffff\" stroke-width=\"0.5\"");
            }
            svg.close_group();
        };
        draw_bar(p.internal, x);
        draw_bar(p.external, x + bar_w + bar_gap);
        svg.text(x + bar_w / 2, top + bar_h + 16, "I",
                 "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\"");
        svg.text(x + bar_w + bar_gap + bar_w / 2, top + bar_h + 16, "E",
                 "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\"");
        svg.text(x + group_w / 2, top + bar_h + 34, p.company,
                 "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\"");
        x += group_w + group_gap;
    }

    // Legend.
    const char* const names[kStateCount] = {"Declining", "Stable", "Growing"};
    double ly = top + 10;
    const double lx = width - 140;
    for (std::size_t s = 0; s < kStateCount; ++s) {
        svg.rect(lx, ly - 10, 14, 14, "fill=\"" + std::string(colors[s]) + "\"");
        svg.text(lx + 20, ly + 2, names[s],
                 "class=\"legend-item\" font-family=\"sans-serif\" font-size=\"11\"");
        ly += 20;
    }
    svg.text(lx, ly + 6, "I = internal, E = external",
             "font-family=\"sans-serif\" font-size=\"10\"");
    return svg.finish();
}

}  // namespace mkt
