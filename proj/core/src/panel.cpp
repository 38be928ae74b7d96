#include "mkt/panel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mkt/errors.hpp"
#include "mkt/rng.hpp"
#include "mkt/stats.hpp"

namespace mkt {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

bool parse_double(const std::string& cell, double& out) {
    const std::string t = trim(cell);
    if (t.empty()) return false;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

bool parse_year(const std::string& cell, int& out) {
    const std::string t = trim(cell);
    if (t.size() != 4 || !std::all_of(t.begin(), t.end(), [](char c) {
            return c >= '0' && c <= '9';
        }))
        return false;
    out = (t[0] - '0') * 1000 + (t[1] - '0') * 100 + (t[2] - '0') * 10 + (t[3] - '0');
    return true;
}

// Growth of one positive series; `name` is used in error messages only.
std::vector<double> growth_of(const std::vector<double>& series,
                              const std::vector<int>& periods, const std::string& name) {
    std::vector<double> rates;
    rates.reserve(series.size() > 0 ? series.size() - 1 : 0);
    for (std::size_t t = 0; t + 1 < series.size(); ++t) {
        if (!(series[t] > 0)) {
            throw InputError("growth rate undefined for '" + name + "' at period " +
                             std::to_string(periods[t]) + ": revenue must be positive");
        }
        rates.push_back(series[t + 1] / series[t] - 1.0);
    }
    return rates;
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void RevenuePanel::validate() const {
    const std::size_t n = companies.size();
    const std::size_t t = periods.size();
    if (n < 1) throw InputError("panel must contain at least one company");
    if (t < 1) throw InputError("panel must contain at least one period");
    if (values.size() != n)
        throw InputError("panel value matrix has " + std::to_string(values.size()) +
                         " rows, expected " + std::to_string(n));
    std::set<std::string> seen;
    for (std::size_t i = 0; i < n; ++i) {
        if (trim(companies[i]).empty())
            throw InputError("company name at row " + std::to_string(i + 1) + " is empty");
        if (!seen.insert(trim(companies[i])).second)
            throw InputError("duplicate company '" + companies[i] + "'");
        if (values[i].size() != t)
            throw InputError("row for '" + companies[i] + "' has " +
                             std::to_string(values[i].size()) + " cells, expected " +
                             std::to_string(t));
        for (std::size_t j = 0; j < t; ++j) {
            if (!std::isfinite(values[i][j]))
                throw InputError("non-finite revenue for '" + companies[i] + "' at period " +
                                 std::to_string(periods[j]));
            if (values[i][j] < 0)
                throw InputError("negative revenue for '" + companies[i] + "' at period " +
                                 std::to_string(periods[j]));
        }
    }
    for (std::size_t j = 0; j + 1 < t; ++j) {
        if (periods[j + 1] != periods[j] + 1)
            throw InputError("periods must be consecutive years, got " +
                             std::to_string(periods[j]) + " followed by " +
                             std::to_string(periods[j + 1]));
    }
}

std::size_t RevenuePanel::period_index(int year) const {
    for (std::size_t j = 0; j < periods.size(); ++j)
        if (periods[j] == year) return j;
    throw InputError("year " + std::to_string(year) + " not in panel");
}

void NormalizedPanel::validate() const {
    const std::size_t n = labels.size();
    if (n == 0) throw InputError("normalized panel is empty");
    if (z.size() != n || mu.size() != n || sigma.size() != n)
        throw InputError("normalized panel fields have inconsistent row counts");
    for (std::size_t i = 0; i < n; ++i) {
        if (z[i].size() != periods.size())
            throw InputError("normalized row '" + labels[i] + "' has wrong length");
        if (!(sigma[i] > 0))
            throw InputError("normalized row '" + labels[i] + "' has non-positive sigma");
    }
    if (base_count > n) throw InputError("normalized panel base_count exceeds row count");
}

RevenuePanel load_panel(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    // Drop trailing blank lines.
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw InputError("malformed header: input is empty");

    // Header: `company,<year>,<year>,...`
    std::string header = lines[0];
    if (header.size() >= 3 && static_cast<unsigned char>(header[0]) == 0xEF &&
        static_cast<unsigned char>(header[1]) == 0xBB &&
        static_cast<unsigned char>(header[2]) == 0xBF)
        header.erase(0, 3);
    const auto hcells = split_line(header);
    if (hcells.empty() || trim(hcells[0]) != "company")
        throw InputError("malformed header: first cell must be 'company'");
    if (hcells.size() < 3)
        throw InputError("malformed header: fewer than 2 periods");

    RevenuePanel panel;
    for (std::size_t j = 1; j < hcells.size(); ++j) {
        int year = 0;
        if (!parse_year(hcells[j], year))
            throw InputError("malformed header: column " + std::to_string(j + 1) +
                             " ('" + trim(hcells[j]) + "') is not a 4-digit year");
        panel.periods.push_back(year);
    }
    for (std::size_t j = 0; j + 1 < panel.periods.size(); ++j) {
        if (panel.periods[j + 1] != panel.periods[j] + 1)
            throw InputError("malformed header: periods must be consecutive years, got " +
                             std::to_string(panel.periods[j]) + " followed by " +
                             std::to_string(panel.periods[j + 1]));
    }

    std::set<std::string> seen;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        if (trim(lines[r]).empty()) continue;
        const auto cells = split_line(lines[r]);
        const std::size_t row = panel.companies.size() + 1;  // 1-based data row
        if (cells.size() != hcells.size())
            throw InputError("row " + std::to_string(row) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(hcells.size()));
        const std::string name = trim(cells[0]);
        if (name.empty())
            throw InputError("row " + std::to_string(row) + " has an empty company name");
        if (!seen.insert(name).second)
            throw InputError("duplicate company '" + name + "' at row " + std::to_string(row));
        std::vector<double> vals;
        vals.reserve(panel.periods.size());
        for (std::size_t j = 1; j < cells.size(); ++j) {
            double v = 0;
            if (!parse_double(cells[j], v) || !std::isfinite(v))
                throw InputError("non-numeric cell '" + trim(cells[j]) + "' at row " +
                                 std::to_string(row) + ", column " +
                                 std::to_string(panel.periods[j - 1]));
            if (v < 0)
                throw InputError("negative revenue at row " + std::to_string(row) +
                                 ", column " + std::to_string(panel.periods[j - 1]));
            vals.push_back(v);
        }
        panel.companies.push_back(name);
        panel.values.push_back(std::move(vals));
    }

    if (panel.companies.size() < 2) throw InputError("fewer than 2 companies");
    panel.validate();
    return panel;
}

RevenuePanel load_panel_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    return load_panel(in);
}

NormalizedPanel normalize(const RevenuePanel& panel) {
    panel.validate();
    NormalizedPanel out;
    out.labels = panel.companies;
    out.periods = panel.periods;
    out.base_count = panel.companies.size();
    out.z.resize(panel.company_count());
    for (std::size_t i = 0; i < panel.company_count(); ++i) {
        const auto& row = panel.values[i];
        const double mu = stats::mean(row);
        const double sigma = stats::population_stddev(row);
        if (!(sigma > 0))
            throw InputError("constant series for company '" + panel.companies[i] +
                             "': standard deviation is zero");
        out.mu.push_back(mu);
        out.sigma.push_back(sigma);
        out.z[i].reserve(row.size());
        for (double v : row) out.z[i].push_back((v - mu) / sigma);
    }
    return out;
}

NormalizedPanel augment(const NormalizedPanel& panel, const NoiseSpec& spec) {
    panel.validate();
    if (spec.delta < 0) throw InputError("noise delta must be >= 0");
    NormalizedPanel out = panel;
    const std::size_t rows = panel.labels.size();
    const std::size_t t_count = panel.periods.size();
    for (std::size_t rep = 1; rep <= spec.replicas; ++rep) {
        for (std::size_t i = 0; i < rows; ++i) {
            std::vector<double> noisy(t_count);
            for (std::size_t t = 0; t < t_count; ++t) {
                noisy[t] = panel.z[i][t] +
                           spec.delta * rng::gaussian(spec.seed, rep, i, t);
            }
            out.labels.push_back(panel.labels[i] + "#" + std::to_string(rep));
            out.z.push_back(std::move(noisy));
            out.mu.push_back(panel.mu[i]);
            out.sigma.push_back(panel.sigma[i]);
        }
    }
    return out;
}

std::vector<GrowthSeries> growth_rates(const RevenuePanel& panel) {
    panel.validate();
    if (panel.period_count() < 2)
        throw InputError("growth rates need at least 2 periods");
    std::vector<GrowthSeries> out;
    out.reserve(panel.company_count());
    for (std::size_t i = 0; i < panel.company_count(); ++i) {
        out.push_back({panel.companies[i],
                       growth_of(panel.values[i], panel.periods, panel.companies[i])});
    }
    return out;
}

RevenuePanel slice_period(const RevenuePanel& panel, int start_year, int end_year) {
    panel.validate();
    if (start_year >= end_year)
        throw InputError("period slice start " + std::to_string(start_year) +
                         " must precede end " + std::to_string(end_year));
    const std::size_t a = panel.period_index(start_year);
    const std::size_t b = panel.period_index(end_year);
    RevenuePanel out;
    out.companies = panel.companies;
    out.periods.assign(panel.periods.begin() + a, panel.periods.begin() + b + 1);
    out.values.reserve(panel.company_count());
    for (const auto& row : panel.values)
        out.values.emplace_back(row.begin() + a, row.begin() + b + 1);
    return out;
}

PanelSummary summarize(const RevenuePanel& panel) {
    panel.validate();
    PanelSummary out;
    out.periods = panel.periods;
    for (std::size_t i = 0; i < panel.company_count(); ++i) {
        std::vector<double> sorted = panel.values[i];
        std::sort(sorted.begin(), sorted.end());
        CompanySummary s;
        s.company = panel.companies[i];
        s.min = sorted.front();
        s.max = sorted.back();
        s.mean = stats::mean(panel.values[i]);
        s.q1 = stats::quantile_sorted(sorted, 0.25);
        s.median = stats::quantile_sorted(sorted, 0.50);
        s.q3 = stats::quantile_sorted(sorted, 0.75);
        out.companies.push_back(std::move(s));
    }
    out.shares.assign(panel.company_count(), std::vector<double>(panel.period_count(), 0.0));
    for (std::size_t t = 0; t < panel.period_count(); ++t) {
        double total = 0;
        for (std::size_t i = 0; i < panel.company_count(); ++i) total += panel.values[i][t];
        if (!(total > 0))
            throw InputError("total revenue is zero in period " +
                             std::to_string(panel.periods[t]) +
                             "; shares are undefined");
        for (std::size_t i = 0; i < panel.company_count(); ++i)
            out.shares[i][t] = panel.values[i][t] / total;
    }
    return out;
}

std::string to_csv(const RevenuePanel& panel) {
    std::ostringstream out;
    out << "company";
    for (int y : panel.periods) out << ',' << y;
    out << '\n';
    for (std::size_t i = 0; i < panel.company_count(); ++i) {
        out << panel.companies[i];
        for (double v : panel.values[i]) out << ',' << format_value(v);
        out << '\n';
    }
    return out.str();
}

std::string to_csv(const NormalizedPanel& panel) {
    std::ostringstream out;
    out << "company";
    for (int y : panel.periods) out << ',' << y;
    out << '\n';
    for (std::size_t i = 0; i < panel.labels.size(); ++i) {
        out << panel.labels[i];
        for (double v : panel.z[i]) out << ',' << format_value(v);
        out << '\n';
    }
    return out.str();
}

std::string to_json(const PanelSummary& summary) {
    ordered_json root;
    root["companies"] = ordered_json::array();
    for (const auto& c : summary.companies) {
        ordered_json item;
        item["name"] = c.company;
        item["min"] = c.min;
        item["max"] = c.max;
        item["mean"] = c.mean;
        item["median"] = c.median;
        item["q1"] = c.q1;
        item["q3"] = c.q3;
        root["companies"].push_back(std::move(item));
    }
    root["periods"] = ordered_json::array();
    for (std::size_t t = 0; t < summary.periods.size(); ++t) {
        ordered_json item;
        item["year"] = summary.periods[t];
        ordered_json shares;
        for (std::size_t i = 0; i < summary.companies.size(); ++i)
            shares[summary.companies[i].company] = summary.shares[i][t];
        item["shares"] = std::move(shares);
        root["periods"].push_back(std::move(item));
    }
    return root.dump(2) + "\n";
}

}  // namespace mkt
