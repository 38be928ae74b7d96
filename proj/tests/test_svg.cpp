#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "mkt/benchmark.hpp"
#include "mkt/cluster.hpp"
#include "mkt/correlation.hpp"
#include "mkt/errors.hpp"
#include "mkt/markov.hpp"
#include "mkt/panel.hpp"
#include "mkt/trend.hpp"
#include "test_util.hpp"

using namespace mkt;

namespace {

// Golden snapshot comparison. Setting MKT_BLESS_GOLDEN regenerates the
// files; snapshots were reviewed before being frozen.
void check_golden(const std::string& name, const std::string& bytes) {
    const std::string path = std::string(MKT_GOLDEN_DIR) + "/" + name;
    if (std::getenv("MKT_BLESS_GOLDEN") != nullptr) {
        std::filesystem::create_directories(MKT_GOLDEN_DIR);
        testutil::write_file(path, bytes);
        return;
    }
    const std::string expected = testutil::read_file(path);
    REQUIRE_MESSAGE(!expected.empty(), "missing golden file ", path);
    CHECK_MESSAGE(bytes == expected, "render of ", name, " deviates from the snapshot");
}

std::vector<BenchmarkProfile> crane_profiles() {
    return load_profiles_json(testutil::read_file(MKT_CRANES_JSON), default_scales());
}

}  // namespace

TEST_SUITE_BEGIN("svg");

TEST_CASE("heatmap: identity colors and well-formed xml") {
    CorrelationMatrix corr;
    corr.labels = {"A", "B"};
    corr.r = {{1.0, 0.0}, {0.0, 1.0}};
    const auto svg = heatmap_svg(corr);
    CHECK(testutil::xml_well_formed(svg));
    // Diagonal cells at the +1 color, off-diagonal at the 0 (white) color.
    CHECK(testutil::count_occurrences(svg, "fill=\"rgb(255,0,0)\"") == 2);
    CHECK(testutil::count_occurrences(svg, "fill=\"rgb(255,255,255)\"") == 2);
    CHECK(svg == heatmap_svg(corr));  // byte-identical across runs
}

TEST_CASE("heatmap: golden snapshot on the sample fixture") {
    const auto panel = load_panel_file(MKT_SAMPLE_PANEL);
    const auto corr = pearson_matrix(normalize(panel));
    const auto svg = heatmap_svg(corr);
    CHECK(testutil::xml_well_formed(svg));
    check_golden("heatmap.svg", svg);
}

TEST_CASE("trend chart: legend has N + 2 entries") {
    const auto panel = load_panel_file(MKT_SAMPLE_PANEL);
    const RidgeSpec spec{1.0, false};
    const auto shared = shared_trend(panel, spec);
    const auto companies = company_trends(panel, spec);
    const auto svg = trend_chart_svg(panel, shared, companies);
    CHECK(testutil::xml_well_formed(svg));
    CHECK(testutil::count_occurrences(svg, "class=\"legend-item\"") ==
          panel.company_count() + 2);
    check_golden("trend.svg", svg);
}

TEST_CASE("stacked bars: equal total height per bar") {
    const auto panel = load_panel_file(MKT_SAMPLE_PANEL);
    const auto profiles = risk_profiles(panel, {}, 0.0);
    const auto svg = stacked_bar_svg(profiles);
    CHECK(testutil::xml_well_formed(svg));
    // 2 bars per company, 3 segments per bar.
    CHECK(testutil::count_occurrences(svg, "class=\"bar\"") == 2 * profiles.size());
    CHECK(testutil::count_occurrences(svg, "class=\"seg\"") == 6 * profiles.size());
    // Segment heights inside one bar group sum to the bar height.
    std::size_t pos = 0;
    while ((pos = svg.find("<g class=\"bar\">", pos)) != std::string::npos) {
        const auto end = svg.find("</g>", pos);
        const std::string group = svg.substr(pos, end - pos);
        double total = 0;
        std::size_t h = 0;
        while ((h = group.find("height=\"", h)) != std::string::npos) {
            h += 8;
            total += std::stod(group.substr(h));
        }
        CHECK(total == doctest::Approx(220.0).epsilon(0.001));
        pos = end;
    }
    check_golden("risk_bars.svg", svg);
}

TEST_CASE("radar: pentagon for a full-score profile sits on the outer gridline") {
    BenchmarkProfile full;
    full.product = "full";
    full.scores = {5, 5, 5, 5, 5};
    const std::vector<BenchmarkProfile> profiles{full};
    const auto svg = radar_svg(profiles, default_scales());
    CHECK(testutil::xml_well_formed(svg));
    // The outermost gridline pentagon and the profile polygon share vertices.
    CHECK(testutil::count_occurrences(
              svg, "270.00,75.00 450.70,206.29 381.68,418.71 158.32,418.71 89.30,206.29") == 2);
}

TEST_CASE("radar: a zero score maps to the chart center") {
    BenchmarkProfile p;
    p.product = "zeroed";
    p.scores = {0, 5, 5, 5, 5};
    const std::vector<BenchmarkProfile> profiles{p};
    const auto svg = radar_svg(profiles, default_scales());
    CHECK(svg.find("270.00,265.00 450.70,206.29") != std::string::npos);
}

TEST_CASE("radar: golden snapshot for the five benchmark cranes") {
    const auto profiles = crane_profiles();
    const auto svg = radar_svg(profiles, default_scales());
    CHECK(testutil::xml_well_formed(svg));
    CHECK(testutil::count_occurrences(svg, "class=\"legend-item\"") == profiles.size());
    CHECK(svg == radar_svg(profiles, default_scales()));
    check_golden("radar.svg", svg);
}

TEST_CASE("radar: profile count limits") {
    std::vector<BenchmarkProfile> none;
    CHECK_THROWS_AS(radar_svg(none, default_scales()), InputError);
    std::vector<BenchmarkProfile> many(9);
    for (std::size_t i = 0; i < 9; ++i) {
        many[i].product = "P" + std::to_string(i);
        many[i].scores = {1, 2, 3, 4, 5};
    }
    CHECK_THROWS_AS(radar_svg(many, default_scales()), InputError);
}

TEST_SUITE_END();
