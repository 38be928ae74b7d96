#include "mkt/trend.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "mkt/errors.hpp"
#include "mkt/stats.hpp"
#include "mkt/svg.hpp"

namespace mkt {

namespace {

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::vector<double> year_axis(const RevenuePanel& panel) {
    std::vector<double> t;
    t.reserve(panel.period_count());
    for (int y : panel.periods) t.push_back(static_cast<double>(y));
    return t;
}

}  // namespace

const char* to_string(TrendLabel label) {
    switch (label) {
        case TrendLabel::growing: return "growing";
        case TrendLabel::tracking: return "tracking";
        case TrendLabel::lagging: return "lagging";
    }
    return "unknown";
}

TrendLine ridge_fit(std::span<const double> t, std::span<const double> y,
                    const RidgeSpec& spec) {
    if (t.size() != y.size())
        throw InputError("ridge fit: time and target lengths differ");
    if (t.size() < 2) throw InputError("ridge fit needs at least 2 observations");
    if (spec.lambda < 0) throw InputError("ridge lambda must be >= 0");
    const std::size_t n = t.size();
    const double mt = stats::mean(t);
    const double my = stats::mean(y);
    double stt = 0, sty = 0;
    for (std::size_t i = 0; i < n; ++i) {
        stt += (t[i] - mt) * (t[i] - mt);
        sty += (t[i] - mt) * (y[i] - my);
    }
    if (!(stt > 0)) throw InputError("degenerate time axis: all times equal");

    TrendLine line;
    line.lambda_used = spec.lambda;
    if (!spec.penalize_intercept) {
        line.slope = sty / (stt + spec.lambda);
        line.intercept = my - line.slope * mt;
    } else {
        // Penalized intercept: solve (X^T X + lambda I) b = X^T y for [b, a].
        const double dn = static_cast<double>(n);
        double st = 0, st2 = 0, sy = 0, sty_raw = 0;
        for (std::size_t i = 0; i < n; ++i) {
            st += t[i];
            st2 += t[i] * t[i];
            sy += y[i];
            sty_raw += t[i] * y[i];
        }
        const double a11 = dn + spec.lambda, a12 = st;
        const double a21 = st, a22 = st2 + spec.lambda;
        const double det = a11 * a22 - a12 * a21;
        if (det == 0) throw NumericError("ridge fit: singular normal equations");
        line.intercept = (sy * a22 - a12 * sty_raw) / det;
        line.slope = (a11 * sty_raw - a21 * sy) / det;
    }
    return line;
}

SharedTrends shared_trend(const RevenuePanel& panel, const RidgeSpec& spec) {
    panel.validate();
    const std::vector<double> t = year_axis(panel);
    std::vector<double> sums(panel.period_count(), 0.0);
    std::vector<double> means(panel.period_count(), 0.0);
    for (std::size_t j = 0; j < panel.period_count(); ++j) {
        for (std::size_t i = 0; i < panel.company_count(); ++i) sums[j] += panel.values[i][j];
        means[j] = sums[j] / static_cast<double>(panel.company_count());
    }
    SharedTrends out;
    out.sum = ridge_fit(t, sums, spec);
    out.sum.kind = TrendKind::shared_sum;
    out.mean = ridge_fit(t, means, spec);
    out.mean.kind = TrendKind::shared_mean;
    return out;
}

std::vector<CompanyTrend> company_trends(const RevenuePanel& panel, const RidgeSpec& spec) {
    panel.validate();
    const double shared_slope = shared_trend(panel, spec).mean.slope;
    const std::vector<double> t = year_axis(panel);
    std::vector<CompanyTrend> out;
    out.reserve(panel.company_count());
    for (std::size_t i = 0; i < panel.company_count(); ++i) {
        CompanyTrend ct;
        ct.company = panel.companies[i];
        ct.line = ridge_fit(t, panel.values[i], spec);
        ct.line.kind = TrendKind::company;
        ct.residuals.reserve(panel.period_count());
        for (std::size_t j = 0; j < panel.period_count(); ++j)
            ct.residuals.push_back(panel.values[i][j] - ct.line.at(t[j]));
        if (std::fabs(ct.line.slope - shared_slope) <= 0.05 * std::fabs(shared_slope))
            ct.label = TrendLabel::tracking;
        else if (ct.line.slope > shared_slope)
            ct.label = TrendLabel::growing;
        else
            ct.label = TrendLabel::lagging;
        out.push_back(std::move(ct));
    }
    return out;
}

std::string trend_report_json(const SharedTrends& shared,
                              const std::vector<CompanyTrend>& companies) {
    nlohmann::ordered_json root;
    root["shared"]["sum"] = {{"a", shared.sum.slope}, {"b", shared.sum.intercept}};
    root["shared"]["mean"] = {{"a", shared.mean.slope}, {"b", shared.mean.intercept}};
    root["lambda"] = shared.sum.lambda_used;
    root["companies"] = nlohmann::ordered_json::array();
    for (const auto& c : companies) {
        nlohmann::ordered_json item;
        item["company"] = c.company;
        item["slope"] = c.line.slope;
        item["intercept"] = c.line.intercept;
        item["label"] = to_string(c.label);
        item["residuals"] = c.residuals;
        root["companies"].push_back(std::move(item));
    }
    return root.dump(2) + "\n";
}

std::string trend_chart_svg(const RevenuePanel& panel, const SharedTrends& shared,
                            const std::vector<CompanyTrend>& companies) {
    panel.validate();
    if (panel.period_count() < 2)
        throw InputError("trend chart needs at least 2 periods");
    const double width = 920, height = 540;
    const double left = 80, right = 240, top = 30, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    const double y0 = static_cast<double>(panel.periods.front());
    const double y1 = static_cast<double>(panel.periods.back());

    double vmin = 0, vmax = 0;
    bool first = true;
    auto consider = [&](double v) {
        if (first) {
            vmin = vmax = v;
            first = false;
        } else {
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
    };
    for (const auto& row : panel.values)
        for (double v : row) consider(v);
    for (double yr : {y0, y1}) {
        consider(shared.sum.at(yr));
        consider(shared.mean.at(yr));
    }
    if (vmax == vmin) vmax = vmin + 1;
    const double pad = 0.05 * (vmax - vmin);
    vmin -= pad;
    vmax += pad;

    auto sx = [&](double year) { return left + (year - y0) / (y1 - y0) * plot_w; };
    auto sy = [&](double v) { return top + (vmax - v) / (vmax - vmin) * plot_h; };

    SvgWriter svg(width, height);
    // Axes and gridlines.
    for (int g = 0; g <= 5; ++g) {
        const double v = vmin + (vmax - vmin) * static_cast<double>(g) / 5.0;
        const double yy = sy(v);
        svg.line(left, yy, left + plot_w, yy, "stroke=\"#dddddd\" stroke-width=\"1\"");
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        svg.text(left - 8, yy + 4, buf,
                 "text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\"");
    }
    for (int y = panel.periods.front(); y <= panel.periods.back(); ++y) {
        const double xx = sx(static_cast<double>(y));
        svg.line(xx, top, xx, top + plot_h, "stroke=\"#eeeeee\" stroke-width=\"1\"");
        svg.text(xx, top + plot_h + 18, std::to_string(y),
                 "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\"");
    }
    svg.line(left, top, left, top + plot_h, "stroke=\"#000000\" stroke-width=\"1\"");
    svg.line(left, top + plot_h, left + plot_w, top + plot_h,
             "stroke=\"#000000\" stroke-width=\"1\"");

    // Company series.
    for (std::size_t i = 0; i < panel.company_count(); ++i) {
        std::vector<std::pair<double, double>> pts;
        pts.reserve(panel.period_count());
        for (std::size_t j = 0; j < panel.period_count(); ++j)
            pts.emplace_back(sx(static_cast<double>(panel.periods[j])),
                             sy(panel.values[i][j]));
        const std::string color = kPalette[i % kPaletteSize];
        svg.polyline(pts, "fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.8\"");
    }
    // Shared trends, dashed.
    auto trend_line = [&](const TrendLine& line, const std::string& color) {
        svg.line(sx(y0), sy(line.at(y0)), sx(y1), sy(line.at(y1)),
                 "stroke=\"" + color +
                     "\" stroke-width=\"2\" stroke-dasharray=\"7 4\" fill=\"none\"");
    };
    trend_line(shared.sum, "#000000");
    trend_line(shared.mean, "#666666");

    // Legend: one entry per company plus the two shared trends.
    double ly = top + 10;
    const double lx = left + plot_w + 18;
    for (std::size_t i = 0; i < companies.size(); ++i) {
        const std::string color = kPalette[i % kPaletteSize];
        svg.line(lx, ly - 4, lx + 22, ly - 4, "stroke=\"" + color + "\" stroke-width=\"2\"");
        svg.text(lx + 28, ly, companies[i].company + " (" + to_string(companies[i].label) + ")",
                 "class=\"legend-item\" font-family=\"sans-serif\" font-size=\"11\"");
        ly += 18;
    }
    svg.line(lx, ly - 4, lx + 22, ly - 4,
             "stroke=\"#000000\" stroke-width=\"2\" stroke-dasharray=\"7 4\"");
    svg.text(lx + 28, ly, "shared trend (sum)",
             "class=\"legend-item\" font-family=\"sans-serif\" font-size=\"11\"");
    ly += 18;
    svg.line(lx, ly - 4, lx + 22, ly - 4,
             "stroke=\"#666666\" stroke-width=\"2\" stroke-dasharray=\"7 4\"");
    svg.text(lx + 28, ly, "shared trend (mean)",
             "class=\"legend-item\" font-family=\"sans-serif\" font-size=\"11\"");

    return svg.finish();
}

}  // namespace mkt
