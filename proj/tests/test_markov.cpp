#include <doctest.h>

#include <cmath>
#include <random>

#include "mkt/errors.hpp"
#include "mkt/markov.hpp"

using namespace mkt;

namespace {

constexpr auto D = State::Declining;
constexpr auto S = State::Stable;
constexpr auto G = State::Growing;

TransitionMatrix random_positive_chain(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> entry(0.05, 1.0);
    TransitionMatrix p;
    p.p.assign(3, std::vector<double>(3, 0.0));
    for (auto& row : p.p) {
        double sum = 0;
        for (auto& v : row) {
            v = entry(gen);
            sum += v;
        }
        for (auto& v : row) v /= sum;
        // Renormalize the largest entry so the row sums to 1 exactly.
        double resid = 1.0;
        for (std::size_t j = 1; j < 3; ++j) resid -= row[j];
        row[0] = resid;
    }
    return p;
}

double max_residual(const StationaryDistribution& d, const TransitionMatrix& p) {
    double worst = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        double q = 0;
        for (std::size_t i = 0; i < p.size(); ++i) q += d.pi[i] * p.p[i][j];
        worst = std::max(worst, std::fabs(q - d.pi[j]));
    }
    return worst;
}

RevenuePanel make_panel(std::vector<std::string> names,
                        std::vector<std::vector<double>> values) {
    RevenuePanel panel;
    panel.companies = std::move(names);
    panel.values = std::move(values);
    for (std::size_t j = 0; j < panel.values[0].size(); ++j)
        panel.periods.push_back(2017 + static_cast<int>(j));
    return panel;
}

}  // namespace

TEST_SUITE_BEGIN("markov");

TEST_CASE("discretize: one state per band, thresholds are Stable") {
    const DiscretizationSpec spec;
    const GrowthSeries g{"X", {-0.10, 0.00, 0.10}};
    CHECK(discretize(g, spec) == std::vector<State>{D, S, G});

    const GrowthSeries edges{"X", {-0.02, 0.02}};
    CHECK(discretize(edges, spec) == std::vector<State>{S, S});

    const GrowthSeries from_dataset{"X", {0.25, -0.10}};
    CHECK(discretize(from_dataset, spec) == std::vector<State>{G, D});
}

TEST_CASE("estimate_transitions: hand-count oracle on [G,G,D,S,G]") {
    const std::vector<State> seq{G, G, D, S, G};
    const auto p = estimate_transitions(seq, 0.0);
    // Transitions: G->G, G->D, D->S, S->G.
    CHECK(p.p[2][2] == doctest::Approx(0.5));
    CHECK(p.p[2][0] == doctest::Approx(0.5));
    CHECK(p.p[2][1] == doctest::Approx(0.0));
    CHECK(p.p[0][1] == doctest::Approx(1.0));
    CHECK(p.p[1][2] == doctest::Approx(1.0));
}

TEST_CASE("estimate_transitions: single-state chain and unseen-row rule") {
    const std::vector<State> seq{S, S, S, S};
    const auto p = estimate_transitions(seq, 0.0);
    CHECK(p.p[1] == std::vector<double>{0.0, 1.0, 0.0});
    CHECK(p.p[0] == std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(p.p[2] == std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
}

TEST_CASE("estimate_transitions: Laplace smoothing keeps all entries positive") {
    const std::vector<State> seq{G, G, G, G};
    const auto p = estimate_transitions(seq, 1.0);
    for (const auto& row : p.p)
        for (double v : row) CHECK(v > 0.0);
    p.validate();
}

TEST_CASE("estimate_transitions: rows sum to 1 within 1e-12") {
    std::mt19937_64 gen(53);
    std::uniform_int_distribution<int> state(0, 2);
    std::uniform_real_distribution<double> smooth(0.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<State> seq;
        for (int t = 0; t < 2 + trial % 20; ++t)
            seq.push_back(static_cast<State>(state(gen)));
        const auto p = estimate_transitions(seq, trial % 2 == 0 ? 0.0 : smooth(gen));
        for (const auto& row : p.p) {
            double sum = 0;
            for (double v : row) sum += v;
            CHECK(std::fabs(sum - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("estimate_transitions: reads exactly length-1 pairs; reversal transposes counts") {
    std::mt19937_64 gen(59);
    std::uniform_int_distribution<int> state(0, 2);
    std::vector<State> seq;
    for (int t = 0; t < 40; ++t) seq.push_back(static_cast<State>(state(gen)));

    // Recompute raw counts independently.
    double fwd[3][3] = {}, bwd[3][3] = {};
    for (std::size_t t = 0; t + 1 < seq.size(); ++t)
        fwd[static_cast<int>(seq[t])][static_cast<int>(seq[t + 1])] += 1;
    std::vector<State> rev(seq.rbegin(), seq.rend());
    for (std::size_t t = 0; t + 1 < rev.size(); ++t)
        bwd[static_cast<int>(rev[t])][static_cast<int>(rev[t + 1])] += 1;

    double total = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(fwd[i][j] == bwd[j][i]);  // reversal transposes, it does not preserve
            total += fwd[i][j];
        }
    CHECK(total == static_cast<double>(seq.size() - 1));

    // The estimator reproduces the forward counts row-normalized.
    const auto p = estimate_transitions(seq, 0.0);
    for (int i = 0; i < 3; ++i) {
        double row_total = fwd[i][0] + fwd[i][1] + fwd[i][2];
        for (int j = 0; j < 3; ++j) {
            const double expected = row_total > 0 ? fwd[i][j] / row_total : 1.0 / 3;
            CHECK(p.p[i][j] == doctest::Approx(expected));
        }
    }
}

TEST_CASE("stationary: cyclic chain gives the uniform distribution") {
    TransitionMatrix p;
    p.p = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
    for (auto method : {StationaryMethod::power_iteration, StationaryMethod::eigen_solve}) {
        const auto d = stationary(p, method);
        for (double v : d.pi) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-9));
        CHECK(d.residual <= 1e-10);
    }
}

TEST_CASE("stationary: 2-state analytic oracle [5/6, 1/6]") {
    // Balance equation: 0.1 * pi_1 = 0.5 * pi_2 with pi_1 + pi_2 = 1.
    TransitionMatrix p;
    p.p = {{0.9, 0.1}, {0.5, 0.5}};
    for (auto method : {StationaryMethod::power_iteration, StationaryMethod::eigen_solve}) {
        const auto d = stationary(p, method);
        CHECK(std::fabs(d.pi[0] - 5.0 / 6.0) <= 1e-10);
        CHECK(std::fabs(d.pi[1] - 1.0 / 6.0) <= 1e-10);
    }
}

TEST_CASE("stationary: identity chain resolves to uniform by tie-break") {
    TransitionMatrix p;
    p.p = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (auto method : {StationaryMethod::power_iteration, StationaryMethod::eigen_solve}) {
        const auto d = stationary(p, method);
        for (double v : d.pi) CHECK(v == doctest::Approx(1.0 / 3));
    }
}

TEST_CASE("stationary: symmetric periodic chain still converges from uniform") {
    // S is transient and feeds the D<->G cycle evenly, so the uniform start
    // carries no oscillating component.
    TransitionMatrix p;
    p.p = {{0, 0, 1}, {1.0 / 3, 1.0 / 3, 1.0 / 3}, {1, 0, 0}};
    const auto d = stationary(p, StationaryMethod::power_iteration);
    CHECK(d.pi[0] == doctest::Approx(0.5));
    CHECK(d.pi[2] == doctest::Approx(0.5));
    CHECK(d.residual <= 1e-10);
}

TEST_CASE("stationary: asymmetric periodic chain errors with last iterate and residual") {
    // The uniform start oscillates on the D<->G cycle; the damping mix
    // settles on a point whose residual against the undamped chain stays
    // above tolerance, so power iteration must report non-convergence.
    TransitionMatrix p;
    p.p = {{0, 0, 1}, {2.0 / 3, 0, 1.0 / 3}, {1, 0, 0}};
    CHECK_THROWS_WITH_AS(stationary(p, StationaryMethod::power_iteration),
                         doctest::Contains("did not converge"), NumericError);
    const auto d = stationary(p, StationaryMethod::eigen_solve);
    CHECK(d.pi[0] == doctest::Approx(0.5));
    CHECK(d.pi[1] == doctest::Approx(0.0));
    CHECK(d.pi[2] == doctest::Approx(0.5));
    CHECK(d.residual <= 1e-10);
}

TEST_CASE("stationary: methods agree on 1000 random positive chains") {
    std::mt19937_64 gen(61);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto p = random_positive_chain(gen);
        const auto power = stationary(p, StationaryMethod::power_iteration);
        const auto eigen = stationary(p, StationaryMethod::eigen_solve);
        CHECK(max_residual(power, p) <= 1e-10);
        CHECK(max_residual(eigen, p) <= 1e-10);
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(std::fabs(power.pi[i] - eigen.pi[i]) <= 1e-8);
    }
}

TEST_CASE("stationary: smoothing > 0 converges without the damping phase") {
    std::mt19937_64 gen(67);
    std::uniform_int_distribution<int> state(0, 2);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<State> seq;
        for (int t = 0; t < 6; ++t) seq.push_back(static_cast<State>(state(gen)));
        const auto p = estimate_transitions(seq, 1.0);
        const auto d = stationary(p, StationaryMethod::power_iteration);
        CHECK(d.iterations_used < 1000);  // well before the damping phase at max_iter/2
        CHECK(d.residual <= 1e-10);
    }
}

TEST_CASE("stationary: distribution sums to 1 and is non-negative") {
    std::mt19937_64 gen(71);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = random_positive_chain(gen);
        const auto d = stationary(p, StationaryMethod::eigen_solve);
        double sum = 0;
        for (double v : d.pi) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(std::fabs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("external series: N = 2 reduces to the other company") {
    const auto panel = make_panel({"A", "B"}, {{100, 110, 121}, {50, 55, 66}});
    const auto external = external_competition_series(panel, "A");
    CHECK(external.rates[0] == doctest::Approx(0.10));
    CHECK(external.rates[1] == doctest::Approx(0.20));
}

TEST_CASE("external series: flat competitors give all-Stable states") {
    const auto panel = make_panel({"A", "B", "C"},
                                  {{100, 150, 200}, {50, 50, 50}, {70, 70, 70}});
    const auto external = external_competition_series(panel, "A");
    const auto states = discretize(external, {});
    for (auto s : states) CHECK(s == S);
}

TEST_CASE("external series: equals growth of manually summed competitors") {
    const auto panel = load_panel_file(MKT_SAMPLE_PANEL);
    for (const auto& company : panel.companies) {
        const auto external = external_competition_series(panel, company);
        std::vector<double> sums(panel.period_count(), 0.0);
        for (std::size_t i = 0; i < panel.company_count(); ++i) {
            if (panel.companies[i] == company) continue;
            for (std::size_t t = 0; t < panel.period_count(); ++t)
                sums[t] += panel.values[i][t];
        }
        for (std::size_t t = 0; t + 1 < sums.size(); ++t)
            CHECK(external.rates[t] == doctest::Approx(sums[t + 1] / sums[t] - 1.0));
    }
}

TEST_CASE("external series: unknown company") {
    const auto panel = make_panel({"A", "B"}, {{1, 2}, {3, 4}});
    CHECK_THROWS_WITH_AS(external_competition_series(panel, "Zed"),
                         doctest::Contains("Zed"), InputError);
}

TEST_CASE("risk profiles: strictly growing company has internal pi = [0,0,1]") {
    const auto panel = make_panel({"Up", "Down"},
                                  {{100, 120, 150, 190, 240}, {240, 190, 150, 120, 100}});
    const auto profiles = risk_profiles(panel, {}, 0.0);
    CHECK(profiles[0].internal.pi[0] == doctest::Approx(0.0));
    CHECK(profiles[0].internal.pi[1] == doctest::Approx(0.0));
    CHECK(profiles[0].internal.pi[2] == doctest::Approx(1.0));
    CHECK(profiles[1].internal.pi[0] == doctest::Approx(1.0));
}

TEST_CASE("risk profiles: identical companies share an external profile") {
    const auto panel = make_panel({"A", "B", "C"},
                                  {{100, 120, 110, 140}, {100, 120, 110, 140},
                                   {80, 90, 85, 100}});
    const auto profiles = risk_profiles(panel, {}, 0.0);
    for (std::size_t s = 0; s < 3; ++s)
        CHECK(profiles[0].external.pi[s] == doctest::Approx(profiles[1].external.pi[s]));
}

TEST_CASE("risk profiles: fixed point holds on the sample fixture") {
    const auto panel = load_panel_file(MKT_SAMPLE_PANEL);
    const auto profiles = risk_profiles(panel, {}, 0.0);
    CHECK(profiles.size() == panel.company_count());
    for (const auto& profile : profiles) {
        CHECK(max_residual(profile.internal, profile.internal_p) <= 1e-10);
        CHECK(max_residual(profile.external, profile.external_p) <= 1e-10);
    }
}

TEST_CASE("risk report json: verbose includes transition matrices") {
    const auto panel = load_panel_file(MKT_SAMPLE_PANEL);
    const auto profiles = risk_profiles(panel, {}, 0.0);
    const auto quiet = risk_report_json(profiles, false);
    const auto verbose = risk_report_json(profiles, true);
    CHECK(quiet.find("internal_transitions") == std::string::npos);
    CHECK(verbose.find("internal_transitions") != std::string::npos);
    CHECK(verbose.find("external_transitions") != std::string::npos);
}

TEST_SUITE_END();
