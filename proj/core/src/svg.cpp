#include "mkt/svg.hpp"

#include <cstdio>

namespace mkt {

SvgWriter::SvgWriter(double width, double height) {
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
         << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << " "
         << num(height) << "\">\n";
}

std::string SvgWriter::num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    std::string s(buf);
    if (s == "-0.00") s = "0.00";
    return s;
}

std::string SvgWriter::escape(const std::string& s) {
    std::string r;
    r.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': r += "&amp;"; break;
            case '<': r += "&lt;"; break;
            case '>': r += "&gt;"; break;
            case '"': r += "&quot;"; break;
            case '\'': r += "&apos;"; break;
            default: r += c;
        }
    }
    return r;
}

std::string SvgWriter::points_attr(const std::vector<std::pair<double, double>>& pts) {
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ' ';
        s += num(pts[i].first);
        s += ',';
        s += num(pts[i].second);
    }
    return s;
}

void SvgWriter::rect(double x, double y, double w, double h, const std::string& attrs) {
    out_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
         << "\" height=\"" << num(h) << "\" " << attrs << "/>\n";
}

void SvgWriter::line(double x1, double y1, double x2, double y2, const std::string& attrs) {
    out_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
         << "\" y2=\"" << num(y2) << "\" " << attrs << "/>\n";
}

void SvgWriter::polyline(const std::vector<std::pair<double, double>>& pts,
                         const std::string& attrs) {
    out_ << "<polyline points=\"" << points_attr(pts) << "\" " << attrs << "/>\n";
}

void SvgWriter::polygon(const std::vector<std::pair<double, double>>& pts,
                        const std::string& attrs) {
    out_ << "<polygon points=\"" << points_attr(pts) << "\" " << attrs << "/>\n";
}

void SvgWriter::circle(double cx, double cy, double r, const std::string& attrs) {
    out_ << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r)
         << "\" " << attrs << "/>\n";
}

void SvgWriter::text(double x, double y, const std::string& content, const std::string& attrs) {
    out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" " << attrs << ">"
         << escape(content) << "</text>\n";
}

void SvgWriter::open_group(const std::string& attrs) {
    out_ << "<g " << attrs << ">\n";
}

void SvgWriter::close_group() {
    out_ << "</g>\n";
}

std::string SvgWriter::finish() {
    if (!finished_) {
        out_ << "</svg>\n";
        finished_ = true;
    }
    return out_.str();
}

}  // namespace mkt
