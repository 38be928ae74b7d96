#include "mkt/benchmark.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "mkt/errors.hpp"
#include "mkt/svg.hpp"

namespace mkt {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxScore = 5;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

// Axis angles: 2*pi*k/5 - pi/2 (first axis points up).
double axis_angle(std::size_t k) {
    return 2.0 * kPi * static_cast<double>(k) / static_cast<double>(kDimensionCount) -
           kPi / 2.0;
}

Dimension dimension_from_name(const std::string& name) {
    for (std::size_t d = 0; d < kDimensionCount; ++d)
        if (name == to_string(static_cast<Dimension>(d))) return static_cast<Dimension>(d);
    throw InputError("unknown dimension '" + name + "'");
}

void validate_scales(std::span<const DimensionScale> scales) {
    if (scales.size() != kDimensionCount)
        throw InputError("expected " + std::to_string(kDimensionCount) + " dimension scales");
    for (std::size_t d = 0; d < kDimensionCount; ++d) {
        if (scales[d].dimension != static_cast<Dimension>(d))
            throw InputError("scales must follow the fixed dimension order");
        if (scales[d].label_map.empty())
            throw InputError(std::string("empty scale for ") +
                             to_string(scales[d].dimension));
        int prev = 0;
        for (const auto& [label, score] : scales[d].label_map) {
            if (score < 1 || score > kMaxScore)
                throw InputError("score for '" + label + "' out of [1, 5]");
            if (score <= prev)
                throw InputError(std::string("scores must be strictly increasing in ") +
                                 to_string(scales[d].dimension));
            prev = score;
        }
    }
}

}  // namespace

const char* to_string(Dimension d) {
    switch (d) {
        case Dimension::LiftingCapacity: return "LiftingCapacity";
        case Dimension::Stability: return "Stability";
        case Dimension::BoomConfigurations: return "BoomConfigurations";
        case Dimension::TransportationEase: return "TransportationEase";
        case Dimension::AdvancedTechnology: return "AdvancedTechnology";
    }
    return "unknown";
}

std::vector<DimensionScale> default_scales() {
    return {
        {Dimension::LiftingCapacity,
         {{"Moderate", 3}, {"Moderate to High", 4}, {"High", 5}}},
        {Dimension::Stability, {{"Good", 3}, {"Very Good", 4}, {"Excellent", 5}}},
        {Dimension::BoomConfigurations,
         {{"Limited", 2}, {"Versatile", 4}, {"Highly Versatile", 5}}},
        {Dimension::TransportationEase,
         {{"Relatively Easy", 3}, {"Easy", 4}, {"Very Easy", 5}}},
        {Dimension::AdvancedTechnology,
         {{"Moderate", 3}, {"Advanced", 4}, {"Highly Advanced", 5}}},
    };
}

BenchmarkProfile score_product(const std::string& product,
                               std::span<const std::string> labels,
                               std::span<const DimensionScale> scales) {
    validate_scales(scales);
    if (labels.size() != kDimensionCount)
        throw InputError("expected " + std::to_string(kDimensionCount) + " labels for '" +
                         product + "', got " + std::to_string(labels.size()));
    BenchmarkProfile profile;
    profile.product = product;
    for (std::size_t d = 0; d < kDimensionCount; ++d) {
        const auto& map = scales[d].label_map;
        const auto it = std::find_if(map.begin(), map.end(),
                                     [&](const auto& kv) { return kv.first == labels[d]; });
        if (it == map.end())
            throw InputError(std::string("unknown label for ") +
                             to_string(scales[d].dimension) + ": '" + labels[d] + "'");
        profile.scores[d] = it->second;
    }
    return profile;
}

double radar_area(const BenchmarkProfile& profile) {
    double acc = 0;
    for (std::size_t k = 0; k < kDimensionCount; ++k) {
        const std::size_t next = (k + 1) % kDimensionCount;
        const double xk = profile.scores[k] * std::cos(axis_angle(k));
        const double yk = profile.scores[k] * std::sin(axis_angle(k));
        const double xn = profile.scores[next] * std::cos(axis_angle(next));
        const double yn = profile.scores[next] * std::sin(axis_angle(next));
        acc += xk * yn - xn * yk;
    }
    return std::fabs(acc) / 2.0;
}

ComparisonReport compare(std::span<const BenchmarkProfile> profiles) {
    if (profiles.size() < 2) throw InputError("comparison needs at least 2 profiles");
    ComparisonReport report;
    for (std::size_t d = 0; d < kDimensionCount; ++d) {
        DimensionComparison dc;
        dc.dimension = static_cast<Dimension>(d);
        int best = 0, worst = kMaxScore + 1;
        for (const auto& p : profiles) {
            best = std::max(best, p.scores[d]);
            worst = std::min(worst, p.scores[d]);
        }
        for (const auto& p : profiles) {
            if (p.scores[d] == best) dc.best.push_back(p.product);
            if (p.scores[d] == worst) dc.worst.push_back(p.product);
        }
        report.dimensions.push_back(std::move(dc));
    }
    for (const auto& p : profiles) report.areas.emplace_back(p.product, radar_area(p));
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        for (std::size_t j = i + 1; j < profiles.size(); ++j) {
            TradeOff t;
            t.a = profiles[i].product;
            t.b = profiles[j].product;
            for (std::size_t d = 0; d < kDimensionCount; ++d) {
                const char* name = to_string(static_cast<Dimension>(d));
                if (profiles[i].scores[d] >= profiles[j].scores[d])
                    t.a_ge_b.push_back(name);
                else
                    t.a_lt_b.push_back(name);
            }
            report.trade_offs.push_back(std::move(t));
        }
    }
    return report;
}

std::string to_json(const ComparisonReport& report) {
    nlohmann::ordered_json root;
    root["dimensions"] = nlohmann::ordered_json::array();
    for (const auto& dc : report.dimensions) {
        nlohmann::ordered_json item;
        item["dimension"] = to_string(dc.dimension);
        item["best"] = dc.best;
        item["worst"] = dc.worst;
        root["dimensions"].push_back(std::move(item));
    }
    root["areas"] = nlohmann::ordered_json::array();
    for (const auto& [product, area] : report.areas) {
        nlohmann::ordered_json item;
        item["product"] = product;
        item["area"] = area;
        root["areas"].push_back(std::move(item));
    }
    root["trade_offs"] = nlohmann::ordered_json::array();
    for (const auto& t : report.trade_offs) {
        nlohmann::ordered_json item;
        item["a"] = t.a;
        item["b"] = t.b;
        item["a_ge_b"] = t.a_ge_b;
        item["a_lt_b"] = t.a_lt_b;
        root["trade_offs"].push_back(std::move(item));
    }
    return root.dump(2) + "\n";
}

std::string radar_svg(std::span<const BenchmarkProfile> profiles,
                      std::span<const DimensionScale> scales) {
    validate_scales(scales);
    if (profiles.empty() || profiles.size() > 8)
        throw InputError("radar chart accepts 1 to 8 profiles, got " +
                         std::to_string(profiles.size()));
    const double cx = 270, cy = 265, radius = 190;
    const double width = 700, height = 540;

    SvgWriter svg(width, height);
    // Gridlines: pentagons at scores 1..5.
    for (int level = 1; level <= kMaxScore; ++level) {
        const double r = radius * static_cast<double>(level) / kMaxScore;
        std::vector<std::pair<double, double>> pts;
        for (std::size_t k = 0; k < kDimensionCount; ++k)
            pts.emplace_back(cx + r * std::cos(axis_angle(k)),
                             cy + r * std::sin(axis_angle(k)));
        svg.polygon(pts, "fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"");
    }
    // Axes and labels.
    for (std::size_t k = 0; k < kDimensionCount; ++k) {
        const double ax = std::cos(axis_angle(k));
        const double ay = std::sin(axis_angle(k));
        svg.line(cx, cy, cx + radius * ax, cy + radius * ay,
                 "stroke=\"#999999\" stroke-width=\"1\"");
        const double lx = cx + (radius + 16) * ax;
        const double ly = cy + (radius + 16) * ay + 4;
        const std::string anchor = ax > 0.3 ? "start" : (ax < -0.3 ? "end" : "middle");
        svg.text(lx, ly, to_string(static_cast<Dimension>(k)),
                 "text-anchor=\"" + anchor + "\" font-family=\"sans-serif\" font-size=\"12\"");
    }
    // Profiles.
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t k = 0; k < kDimensionCount; ++k) {
            const double r = radius * static_cast<double>(profiles[i].scores[k]) / kMaxScore;
            pts.emplace_back(cx + r * std::cos(axis_angle(k)),
                             cy + r * std::sin(axis_angle(k)));
        }
        const std::string color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg.polygon(pts, "fill=\"" + color + "\" fill-opacity=\"0.12\" stroke=\"" + color +
                             "\" stroke-width=\"2\"");
    }
    // Legend.
    double ly = 40;
    const double lx = 520;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const std::string color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg.rect(lx, ly - 10, 14, 14, "fill=\"" + color + "\" fill-opacity=\"0.5\"");
        svg.text(lx + 20, ly + 2, profiles[i].product,
                 "class=\"legend-item\" font-family=\"sans-serif\" font-size=\"12\"");
        ly += 20;
    }
    return svg.finish();
}

std::vector<BenchmarkProfile> load_profiles_json(const std::string& text,
                                                 std::span<const DimensionScale> scales) {
    validate_scales(scales);
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid profiles JSON: ") + e.what());
    }
    if (!root.is_array()) throw InputError("profiles JSON must be an array");
    std::vector<BenchmarkProfile> out;
    for (const auto& entry : root) {
        if (!entry.contains("product") || !entry.contains("labels"))
            throw InputError("profile entry needs 'product' and 'labels'");
        const std::string product = entry["product"].get<std::string>();
        const auto& labels = entry["labels"];
        std::vector<std::string> ordered(kDimensionCount);
        for (std::size_t d = 0; d < kDimensionCount; ++d) {
            const char* name = to_string(static_cast<Dimension>(d));
            if (!labels.contains(name))
                throw InputError("profile '" + product + "' is missing dimension '" +
                                 name + "'");
            ordered[d] = labels[name].get<std::string>();
        }
        out.push_back(score_product(product, ordered, scales));
    }
    return out;
}

std::vector<DimensionScale> load_scales_json(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid scales JSON: ") + e.what());
    }
    if (!root.is_object()) throw InputError("scales JSON must be an object");
    std::vector<DimensionScale> scales(kDimensionCount);
    std::array<bool, kDimensionCount> seen{};
    for (const auto& [name, entries] : root.items()) {
        const Dimension d = dimension_from_name(name);
        DimensionScale scale;
        scale.dimension = d;
        if (!entries.is_array()) throw InputError("scale for '" + name + "' must be an array");
        for (const auto& pair : entries) {
            if (!pair.is_array() || pair.size() != 2)
                throw InputError("scale entries must be [label, score] pairs");
            scale.label_map.emplace_back(pair[0].get<std::string>(), pair[1].get<int>());
        }
        scales[static_cast<std::size_t>(d)] = std::move(scale);
        seen[static_cast<std::size_t>(d)] = true;
    }
    for (std::size_t d = 0; d < kDimensionCount; ++d)
        if (!seen[d])
            throw InputError(std::string("scales JSON is missing dimension '") +
                             to_string(static_cast<Dimension>(d)) + "'");
    validate_scales(scales);
    return scales;
}

}  // namespace mkt
