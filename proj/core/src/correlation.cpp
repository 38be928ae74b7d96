#include "mkt/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mkt/errors.hpp"
#include "mkt/stats.hpp"
#include "mkt/svg.hpp"

namespace mkt {

namespace {

CorrelationMatrix pearson_of_rows(const std::vector<std::string>& labels,
                                  const std::vector<std::vector<double>>& rows) {
    const std::size_t n = labels.size();
    const std::size_t t_count = rows.empty() ? 0 : rows[0].size();
    if (t_count < 2) throw InputError("correlation needs at least 2 periods");

    // Center once; reject constant rows up front.
    std::vector<std::vector<double>> centered(n);
    std::vector<double> norm(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double m = stats::mean(rows[i]);
        centered[i].reserve(t_count);
        double ss = 0;
        for (double v : rows[i]) {
            centered[i].push_back(v - m);
            ss += (v - m) * (v - m);
        }
        if (!(ss > 0))
            throw InputError("constant series for company '" + labels[i] +
                             "': correlation undefined");
        norm[i] = std::sqrt(ss);
    }

    CorrelationMatrix corr;
    corr.labels = labels;
    corr.r.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        corr.r[i][i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double dot = 0;
            for (std::size_t t = 0; t < t_count; ++t) dot += centered[i][t] * centered[j][t];
            const double r = std::clamp(dot / (norm[i] * norm[j]), -1.0, 1.0);
            corr.r[i][j] = r;
            corr.r[j][i] = r;
        }
    }
    return corr;
}

std::string cell_color(double r) {
    // Diverging scale: -1 blue, 0 white, +1 red.
    int red = 255, green = 255, blue = 255;
    if (r >= 0) {
        green = blue = static_cast<int>(std::lround(255.0 * (1.0 - r)));
    } else {
        red = green = static_cast<int>(std::lround(255.0 * (1.0 + r)));
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "rgb(%d,%d,%d)", red, green, blue);
    return buf;
}

}  // namespace

void CorrelationMatrix::validate() const {
    const std::size_t n = labels.size();
    if (r.size() != n) throw InputError("correlation matrix has wrong row count");
    for (std::size_t i = 0; i < n; ++i) {
        if (r[i].size() != n) throw InputError("correlation matrix is not square");
        if (r[i][i] != 1.0) throw InputError("correlation diagonal must be 1");
        for (std::size_t j = 0; j < n; ++j) {
            if (r[i][j] != r[j][i]) throw InputError("correlation matrix not symmetric");
            if (r[i][j] < -1.0 - 1e-12 || r[i][j] > 1.0 + 1e-12)
                throw InputError("correlation entry out of [-1, 1]");
        }
    }
}

CorrelationMatrix pearson_matrix(const RevenuePanel& panel) {
    panel.validate();
    return pearson_of_rows(panel.companies, panel.values);
}

CorrelationMatrix pearson_matrix(const NormalizedPanel& panel) {
    panel.validate();
    return pearson_of_rows(panel.labels, panel.z);
}

DistanceMatrix correlation_distance(const CorrelationMatrix& corr) {
    corr.validate();
    const std::size_t n = corr.size();
    DistanceMatrix dist;
    dist.labels = corr.labels;
    dist.d.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            dist.d[i][j] = (i == j) ? 0.0 : 1.0 - corr.r[i][j];
    return dist;
}

std::string to_csv(const CorrelationMatrix& corr) {
    std::ostringstream out;
    out << "company";
    for (const auto& l : corr.labels) out << ',' << l;
    out << '\n';
    char buf[48];
    for (std::size_t i = 0; i < corr.size(); ++i) {
        out << corr.labels[i];
        for (std::size_t j = 0; j < corr.size(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.12g", corr.r[i][j]);
            out << ',' << buf;
        }
        out << '\n';
    }
    return out.str();
}

std::string heatmap_svg(const CorrelationMatrix& corr) {
    corr.validate();
    const std::size_t n = corr.size();
    const double cell = 44;
    std::size_t max_label = 0;
    for (const auto& l : corr.labels) max_label = std::max(max_label, l.size());
    const double left = 16 + 7.0 * static_cast<double>(max_label);
    const double top = 16 + 7.0 * static_cast<double>(max_label);
    const double width = left + cell * static_cast<double>(n) + 16;
    const double height = top + cell * static_cast<double>(n) + 16;

    SvgWriter svg(width, height);
    for (std::size_t i = 0; i < n; ++i) {
        // Row label (left) and column label (top, rotated).
        const double cy = top + cell * (static_cast<double>(i) + 0.5);
        svg.text(left - 6, cy + 4, corr.labels[i],
                 "text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\"");
        const double cx = left + cell * (static_cast<double>(i) + 0.5);
        svg.text(cx + 4, top - 6, corr.labels[i],
                 "text-anchor=\"start\" font-family=\"sans-serif\" font-size=\"11\" transform=\"rotate(-60 " +
                     SvgWriter::num(cx + 4) + " " + SvgWriter::num(top - 6) + ")\"");
    }
    char buf[32];
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double x = left + cell * static_cast<double>(j);
            const double y = top + cell * static_cast<double>(i);
            const double r = corr.r[i][j];
            svg.rect(x, y, cell, cell,
                     "fill=\"" + cell_color(r) + "\" stroke=\"#cccccc\" stroke-width=\"0.5\"");
            std::snprintf(buf, sizeof(buf), "%.2f", r);
            std::string value(buf);
            if (value == "-0.00") value = "0.00";
            const std::string tcolor = std::fabs(r) > 0.55 ? "#ffffff" : "#000000";
            svg.text(x + cell / 2, y + cell / 2 + 4, value,
                     "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" +
                         tcolor + "\"");
        }
    }
    return svg.finish();
}

}  // namespace mkt
