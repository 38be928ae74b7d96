#include "mkt/sde.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "linalg.hpp"
#include "mkt/errors.hpp"
#include "mkt/rng.hpp"
#include "mkt/stats.hpp"

namespace mkt {

namespace {

std::vector<std::vector<double>> cholesky_with_jitter(
    const std::vector<std::vector<double>>& corr) {
    // Escalating diagonal jitter up to 1e-10 rescues semi-definite inputs
    // (e.g. perfectly correlated factors).
    for (double jitter : {0.0, 1e-14, 1e-12, 1e-10}) {
        std::vector<std::vector<double>> a = corr;
        for (std::size_t i = 0; i < a.size(); ++i) a[i][i] += jitter;
        if (auto l = detail::cholesky(a)) return *l;
    }
    throw NumericError("correlation matrix is not positive semi-definite");
}

void check_square(const std::vector<std::vector<double>>& m, std::size_t n,
                  const char* what) {
    if (m.size() != n) throw InputError(std::string(what) + " has wrong row count");
    for (const auto& row : m)
        if (row.size() != n) throw InputError(std::string(what) + " is not square");
}

}  // namespace

void SdeSystem::validate() const {
    const std::size_t m = factor_names.size();
    if (m == 0) throw InputError("SDE system needs at least one factor");
    if (alpha.size() != m || sigma.size() != m || x0.size() != m)
        throw InputError("SDE system field lengths are inconsistent");
    check_square(beta, m, "beta");
    check_square(corr, m, "corr");
    for (std::size_t i = 0; i < m; ++i) {
        if (!(sigma[i] >= 0)) throw InputError("sigma must be >= 0");
        if (beta[i][i] != 0.0)
            throw InputError("beta diagonal must be zero (factor " + factor_names[i] + ")");
        if (std::fabs(corr[i][i] - 1.0) > 1e-12)
            throw InputError("corr diagonal must be 1");
        for (std::size_t j = 0; j < m; ++j) {
            if (std::fabs(corr[i][j] - corr[j][i]) > 1e-12)
                throw InputError("corr must be symmetric");
            if (corr[i][j] < -1.0 - 1e-12 || corr[i][j] > 1.0 + 1e-12)
                throw InputError("corr entries must lie in [-1, 1]");
            if (!std::isfinite(beta[i][j])) throw InputError("beta must be finite");
        }
        if (!std::isfinite(alpha[i]) || !std::isfinite(x0[i]))
            throw InputError("alpha and x0 must be finite");
    }
}

EnsembleReport euler_maruyama(const SdeSystem& system, const SimulationSpec& spec,
                              bool retain_paths) {
    system.validate();
    if (!(spec.horizon > 0)) throw InputError("horizon must be > 0");
    if (spec.steps < 1) throw InputError("steps must be >= 1");
    if (spec.paths < 1) throw InputError("paths must be >= 1");

    const std::size_t m = system.size();
    const double dt = spec.horizon / static_cast<double>(spec.steps);
    const double sqrt_dt = std::sqrt(dt);
    const auto l = cholesky_with_jitter(system.corr);

    std::vector<std::vector<double>> terminals(m);
    for (auto& t : terminals) t.reserve(static_cast<std::size_t>(spec.paths));

    // Pooled increment moments per factor pair, accumulated in fixed
    // (path, step) order for bit determinism.
    std::vector<double> inc_sum(m, 0.0), inc_sq(m, 0.0);
    std::vector<std::vector<double>> inc_cross(m, std::vector<double>(m, 0.0));
    const double n_inc = static_cast<double>(spec.paths) * static_cast<double>(spec.steps);

    EnsembleReport report;
    if (retain_paths)
        report.paths.reserve(static_cast<std::size_t>(spec.paths));

    std::vector<double> x(m), mu(m), dw(m), z(m), dx(m);
    for (int path = 0; path < spec.paths; ++path) {
        x = system.x0;
        std::vector<std::vector<double>> trajectory;
        if (retain_paths) {
            trajectory.reserve(static_cast<std::size_t>(spec.steps) + 1);
            trajectory.push_back(x);
        }
        for (int step = 0; step < spec.steps; ++step) {
            for (std::size_t i = 0; i < m; ++i)
                z[i] = rng::gaussian(spec.seed, static_cast<std::uint64_t>(path),
                                     static_cast<std::uint64_t>(step), i);
            for (std::size_t i = 0; i < m; ++i) {
                double corr_z = 0;
                for (std::size_t j = 0; j <= i; ++j) corr_z += l[i][j] * z[j];
                dw[i] = sqrt_dt * corr_z;
            }
            for (std::size_t i = 0; i < m; ++i) {
                mu[i] = system.alpha[i];
                for (std::size_t j = 0; j < m; ++j)
                    if (j != i) mu[i] += system.beta[i][j] * x[j];
            }
            for (std::size_t i = 0; i < m; ++i) {
                dx[i] = mu[i] * dt + system.sigma[i] * dw[i];
                x[i] += dx[i];
                if (!std::isfinite(x[i]))
                    throw NumericError("non-finite state for factor '" +
                                       system.factor_names[i] + "' at path " +
                                       std::to_string(path) + ", step " +
                                       std::to_string(step));
            }
            for (std::size_t i = 0; i < m; ++i) {
                inc_sum[i] += dx[i];
                inc_sq[i] += dx[i] * dx[i];
                for (std::size_t j = i + 1; j < m; ++j) inc_cross[i][j] += dx[i] * dx[j];
            }
            if (retain_paths) trajectory.push_back(x);
        }
        for (std::size_t i = 0; i < m; ++i) terminals[i].push_back(x[i]);
        if (retain_paths) report.paths.push_back(std::move(trajectory));
    }

    for (std::size_t i = 0; i < m; ++i) {
        FactorStats fs;
        fs.name = system.factor_names[i];
        fs.terminal_mean = stats::mean(terminals[i]);
        fs.terminal_stddev = stats::sample_stddev(terminals[i]);
        std::vector<double> sorted = terminals[i];
        std::sort(sorted.begin(), sorted.end());
        fs.q05 = stats::quantile_sorted(sorted, 0.05);
        fs.q50 = stats::quantile_sorted(sorted, 0.50);
        fs.q95 = stats::quantile_sorted(sorted, 0.95);
        report.factors.push_back(std::move(fs));
    }

    report.increment_correlation.assign(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        report.increment_correlation[i][i] = 1.0;
        for (std::size_t j = i + 1; j < m; ++j) {
            const double cov = inc_cross[i][j] / n_inc -
                               (inc_sum[i] / n_inc) * (inc_sum[j] / n_inc);
            const double vi = inc_sq[i] / n_inc - (inc_sum[i] / n_inc) * (inc_sum[i] / n_inc);
            const double vj = inc_sq[j] / n_inc - (inc_sum[j] / n_inc) * (inc_sum[j] / n_inc);
            double r = 0.0;
            if (vi > 0 && vj > 0) r = std::clamp(cov / std::sqrt(vi * vj), -1.0, 1.0);
            report.increment_correlation[i][j] = r;
            report.increment_correlation[j][i] = r;
        }
    }
    return report;
}

SdeSystem estimate_parameters(const std::vector<std::string>& names,
                              const std::vector<std::vector<double>>& series,
                              double dt, std::vector<std::string>* warnings) {
    const std::size_t m = names.size();
    if (m == 0 || series.size() != m)
        throw InputError("estimate_parameters: names and series sizes differ");
    if (!(dt > 0)) throw InputError("estimate_parameters: dt must be > 0");
    const std::size_t t_count = series[0].size();
    if (t_count < 3)
        throw InputError("estimate_parameters: series too short (need length >= 3)");
    for (const auto& s : series)
        if (s.size() != t_count)
            throw InputError("estimate_parameters: series lengths differ");

    const std::size_t n = t_count - 1;  // increments
    std::vector<std::vector<double>> inc(m, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t t = 0; t < n; ++t) inc[i][t] = series[i][t + 1] - series[i][t];

    SdeSystem out;
    out.factor_names = names;
    out.alpha.assign(m, 0.0);
    out.beta.assign(m, std::vector<double>(m, 0.0));
    out.sigma.assign(m, 0.0);
    out.corr.assign(m, std::vector<double>(m, 0.0));
    out.x0.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        out.x0[i] = series[i][t_count - 1];
        out.sigma[i] = stats::sample_stddev(inc[i]) / std::sqrt(dt);
        out.corr[i][i] = 1.0;
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            double r = 0.0;
            if (stats::population_variance(inc[i]) > 0 &&
                stats::population_variance(inc[j]) > 0)
                r = std::clamp(stats::pearson(inc[i], inc[j]), -1.0, 1.0);
            out.corr[i][j] = r;
            out.corr[j][i] = r;
        }
    }

    auto fallback = [&](std::size_t i, const std::string& why) {
        out.alpha[i] = stats::mean(inc[i]) / dt;
        for (std::size_t j = 0; j < m; ++j) out.beta[i][j] = 0.0;
        if (warnings)
            warnings->push_back("factor '" + names[i] + "': " + why +
                                "; using beta = 0 and mean increment drift");
    };

    if (n < m) {
        for (std::size_t i = 0; i < m; ++i)
            fallback(i, "regression underdetermined (" + std::to_string(n) +
                            " increments for " + std::to_string(m) + " coefficients)");
        return out;
    }

    // Least squares of dX_i/dt on [1, X_j (j != i)] at the interval start.
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::vector<double>> design(n, std::vector<double>(m, 0.0));
        std::vector<double> target(n, 0.0);
        for (std::size_t t = 0; t < n; ++t) {
            design[t][0] = 1.0;
            std::size_t col = 1;
            for (std::size_t j = 0; j < m; ++j) {
                if (j == i) continue;
                design[t][col++] = series[j][t];
            }
            target[t] = inc[i][t] / dt;
        }
        std::vector<std::vector<double>> gram(m, std::vector<double>(m, 0.0));
        std::vector<double> rhs(m, 0.0);
        for (std::size_t t = 0; t < n; ++t) {
            for (std::size_t a = 0; a < m; ++a) {
                rhs[a] += design[t][a] * target[t];
                for (std::size_t b = 0; b < m; ++b) gram[a][b] += design[t][a] * design[t][b];
            }
        }
        auto coef = detail::solve_linear(std::move(gram), std::move(rhs), 1e-9);
        if (!coef) {
            fallback(i, "regressors are collinear");
            continue;
        }
        out.alpha[i] = (*coef)[0];
        std::size_t col = 1;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            out.beta[i][j] = (*coef)[col++];
        }
    }
    return out;
}

SdeSystem estimate_parameters(const RevenuePanel& panel, std::vector<std::string>* warnings) {
    panel.validate();
    return estimate_parameters(panel.companies, panel.values, 1.0, warnings);
}

SdeSystem load_system_json(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid system JSON: ") + e.what());
    }
    SdeSystem out;
    try {
        out.factor_names = root.at("factors").get<std::vector<std::string>>();
        out.alpha = root.at("alpha").get<std::vector<double>>();
        out.beta = root.at("beta").get<std::vector<std::vector<double>>>();
        out.sigma = root.at("sigma").get<std::vector<double>>();
        out.corr = root.at("corr").get<std::vector<std::vector<double>>>();
        out.x0 = root.at("x0").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid system JSON: ") + e.what());
    }
    out.validate();
    return out;
}

std::string to_json(const SdeSystem& system) {
    nlohmann::ordered_json root;
    root["factors"] = system.factor_names;
    root["alpha"] = system.alpha;
    root["beta"] = system.beta;
    root["sigma"] = system.sigma;
    root["corr"] = system.corr;
    root["x0"] = system.x0;
    return root.dump(2) + "\n";
}

std::string to_json(const EnsembleReport& report) {
    nlohmann::ordered_json root;
    root["factors"] = nlohmann::ordered_json::array();
    for (const auto& f : report.factors) {
        nlohmann::ordered_json item;
        item["name"] = f.name;
        item["terminal_mean"] = f.terminal_mean;
        item["terminal_stddev"] = f.terminal_stddev;
        item["q05"] = f.q05;
        item["q50"] = f.q50;
        item["q95"] = f.q95;
        root["factors"].push_back(std::move(item));
    }
    root["increment_correlation"] = report.increment_correlation;
    return root.dump(2) + "\n";
}

std::string paths_csv(const EnsembleReport& report, const SdeSystem& system,
                      const SimulationSpec& spec) {
    if (report.paths.empty())
        throw InputError("no retained paths; run the simulation with path retention");
    std::ostringstream out;
    out << "path,time";
    for (const auto& name : system.factor_names) out << ',' << name;
    out << '\n';
    const double dt = spec.horizon / static_cast<double>(spec.steps);
    char buf[64];
    for (std::size_t p = 0; p < report.paths.size(); ++p) {
        for (std::size_t s = 0; s < report.paths[p].size(); ++s) {
            std::snprintf(buf, sizeof(buf), "%.6g", static_cast<double>(s) * dt);
            out << p << ',' << buf;
            for (double v : report.paths[p][s]) {
                std::snprintf(buf, sizeof(buf), "%.12g", v);
                out << ',' << buf;
            }
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace mkt
