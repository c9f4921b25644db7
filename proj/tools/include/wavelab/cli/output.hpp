#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace wavelab::cli {

/// Fixed-width table of doubles and strings written as CSV with a header row.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  CsvTable& add(double value);
  CsvTable& add(const std::string& value);
  CsvTable& add(const char* value) { return add(std::string(value)); }
  CsvTable& add(bool value) { return add(value ? "true" : "false"); }
  /// Finishes the current row; throws std::logic_error on a short row.
  void end_row();

  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::string> current_;
};

/// %.17g, the round-trip precision for doubles.
std::string format_double(double v);

/// Collects files and commits them together: each is written to a temporary
/// sibling and renamed only when commit() runs, so a failure before commit
/// leaves no partial output behind.
class OutputBundle {
 public:
  OutputBundle(std::filesystem::path dir, std::string stem);
  ~OutputBundle();
  OutputBundle(const OutputBundle&) = delete;
  OutputBundle& operator=(const OutputBundle&) = delete;

  /// Returns the final path `<dir>/<stem>-<suffix>`.
  std::filesystem::path stage(const std::string& suffix, const std::string& contents);
  void commit();
  const std::vector<std::filesystem::path>& committed() const noexcept { return committed_; }

 private:
  std::filesystem::path dir_;
  std::string stem_;
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> staged_;
  std::vector<std::filesystem::path> committed_;
};

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  double slope = 0.0;  // fitted line through log-log data
  double intercept = 0.0;
  bool has_fit = false;
};

/// Log-log SVG 1.1 plot: markers per series plus the fitted line when present.
std::string loglog_svg(const std::string& title, const std::string& xlabel, const std::vector<PlotSeries>& series);

}  // namespace wavelab::cli
