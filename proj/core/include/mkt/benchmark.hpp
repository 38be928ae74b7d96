#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mkt {

/// The five comparison dimensions, in fixed axis order.
enum class Dimension {
    LiftingCapacity = 0,
    Stability = 1,
    BoomConfigurations = 2,
    TransportationEase = 3,
    AdvancedTechnology = 4,
};

constexpr std::size_t kDimensionCount = 5;
const char* to_string(Dimension d);

/// Ordered mapping from qualitative labels to ordinal scores 1..5.
struct DimensionScale {
    Dimension dimension = Dimension::LiftingCapacity;
    std::vector<std::pair<std::string, int>> label_map;  // scores strictly increasing
};

/// Ordinal scores of one product over the five dimensions.
struct BenchmarkProfile {
    std::string product;
    std::array<int, kDimensionCount> scores{};
};

/// Built-in label scales covering the full benchmark vocabulary.
std::vector<DimensionScale> default_scales();

/// Maps five labels (in dimension order) to a profile; unknown labels are
/// rejected naming the dimension.
BenchmarkProfile score_product(const std::string& product,
                               std::span<const std::string> labels,
                               std::span<const DimensionScale> scales);

/// Shoelace area of the radar polygon with vertex radius = score; a single
/// aggregate capability indicator.
double radar_area(const BenchmarkProfile& profile);

struct DimensionComparison {
    Dimension dimension = Dimension::LiftingCapacity;
    std::vector<std::string> best;   // all products at the max score
    std::vector<std::string> worst;  // all products at the min score
};

struct TradeOff {
    std::string a, b;
    std::vector<std::string> a_ge_b;  // dimension names where a scores >= b
    std::vector<std::string> a_lt_b;
};

struct ComparisonReport {
    std::vector<DimensionComparison> dimensions;
    std::vector<std::pair<std::string, double>> areas;
    std::vector<TradeOff> trade_offs;  // one entry per unordered pair
};

ComparisonReport compare(std::span<const BenchmarkProfile> profiles);

std::string to_json(const ComparisonReport& report);

/// Pentagon radar chart: axes at 2*pi*k/5 - pi/2, vertex radius
/// proportional to score/5, gridlines at scores 1..5, legend.
/// Accepts 1 to 8 profiles. Byte-deterministic.
std::string radar_svg(std::span<const BenchmarkProfile> profiles,
                      std::span<const DimensionScale> scales);

/// Input JSON: [{"product": ..., "labels": {"<dimension>": "<label>", ...}}, ...]
std::vector<BenchmarkProfile> load_profiles_json(const std::string& text,
                                                 std::span<const DimensionScale> scales);

/// Custom scales JSON: {"<dimension>": [["<label>", score], ...], ...}
std::vector<DimensionScale> load_scales_json(const std::string& text);

}  // namespace mkt
