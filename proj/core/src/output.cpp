#include "conewave/output.hpp"
#include "conewave/errors.hpp"

#include <cmath>
#include <cstdio>

namespace conewave {

std::string format_double(double v) {
    char buf[40];
    // Shortest representation that round-trips.
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::string>& header_comments)
    : out_(path), ncols_(columns.size()) {
    if (!out_) throw invalid_parameter("csv: cannot open '" + path + "' for writing");
    for (const auto& c : header_comments) out_ << "# " << c << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    }
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != ncols_) throw invalid_parameter("csv: row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        out_ << format_double(values[i]) << (i + 1 < values.size() ? "," : "\n");
    }
}

void CsvWriter::row_mixed(const std::vector<std::string>& cells) {
    if (cells.size() != ncols_) throw invalid_parameter("csv: row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
    }
}

CsvWriter::~CsvWriter() = default;

void write_loglog_svg(const std::string& path, const std::string& title,
                      const LogLogSeries& series, double fitted_slope) {
    if (series.x.size() != series.y.size() || series.x.size() < 2)
        throw invalid_parameter("svg: need matching x/y with >= 2 points");
    std::ofstream out(path);
    if (!out) throw invalid_parameter("svg: cannot open '" + path + "' for writing");

    const int W = 640, H = 480, M = 60;
    double lx0 = std::log10(series.x.front()), lx1 = lx0;
    double ly0 = std::log10(series.y.front()), ly1 = ly0;
    for (std::size_t i = 0; i < series.x.size(); ++i) {
        const double lx = std::log10(series.x[i]);
        const double ly = std::log10(series.y[i]);
        lx0 = std::min(lx0, lx);
        lx1 = std::max(lx1, lx);
        ly0 = std::min(ly0, ly);
        ly1 = std::max(ly1, ly);
    }
    if (lx1 == lx0) lx1 = lx0 + 1.0;
    if (ly1 == ly0) ly1 = ly0 + 1.0;
    auto px = [&](double lx) { return M + (W - 2 * M) * (lx - lx0) / (lx1 - lx0); };
    auto py = [&](double ly) { return H - M - (H - 2 * M) * (ly - ly0) / (ly1 - ly0); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\""
        << H - M << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M
        << "\" stroke=\"black\"/>\n";
    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series.x.size(); ++i) {
        out << format_double(px(std::log10(series.x[i]))) << ","
            << format_double(py(std::log10(series.y[i]))) << " ";
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < series.x.size(); ++i) {
        out << "<circle cx=\"" << format_double(px(std::log10(series.x[i]))) << "\" cy=\""
            << format_double(py(std::log10(series.y[i])))
            << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    }
    out << "<text x=\"" << M << "\" y=\"" << M - 20 << "\" font-family=\"monospace\" "
        << "font-size=\"14\">" << title << "</text>\n";
    out << "<text x=\"" << M << "\" y=\"" << M << "\" font-family=\"monospace\" "
        << "font-size=\"14\">fitted slope = " << format_double(fitted_slope) << "</text>\n";
    out << "</svg>\n";
}

} // namespace conewave
