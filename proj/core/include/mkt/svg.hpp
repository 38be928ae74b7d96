#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace mkt {

// Minimal SVG writer. Every number goes through num(), so identical inputs
// produce identical bytes.
class SvgWriter {
public:
    SvgWriter(double width, double height);

    void rect(double x, double y, double w, double h, const std::string& attrs);
    void line(double x1, double y1, double x2, double y2, const std::string& attrs);
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& attrs);
    void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& attrs);
    void circle(double cx, double cy, double r, const std::string& attrs);
    void text(double x, double y, const std::string& content, const std::string& attrs);
    void open_group(const std::string& attrs);
    void close_group();

    /// Closes the document and returns the bytes.
    std::string finish();

    static std::string num(double v);  // fixed 2-decimal formatting, no "-0.00"
    static std::string escape(const std::string& s);

private:
    std::string points_attr(const std::vector<std::pair<double, double>>& pts);

    std::ostringstream out_;
    bool finished_ = false;
};

}  // namespace mkt
