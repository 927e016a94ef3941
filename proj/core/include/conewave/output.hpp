#ifndef CONEWAVE_OUTPUT_HPP
#define CONEWAVE_OUTPUT_HPP

#include <fstream>
#include <string>
#include <vector>

namespace conewave {

// Deterministic text formatting for CSV cells: shortest round-trippable form.
std::string format_double(double v);

// CSV file with '#'-prefixed header comments; byte-identical across runs of
// the same build and config.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns,
              const std::vector<std::string>& header_comments);
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& cells);
    ~CsvWriter();

private:
    std::ofstream out_;
    std::size_t ncols_;
};

// Minimal deterministic SVG log-log plot with a fitted-slope annotation.
struct LogLogSeries {
    std::vector<double> x, y;
};

void write_loglog_svg(const std::string& path, const std::string& title,
                      const LogLogSeries& series, double fitted_slope);

} // namespace conewave

#endif
