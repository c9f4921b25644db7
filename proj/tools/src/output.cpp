#include "wavelab/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace wavelab::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

CsvTable& CsvTable::add(double value) {
  current_.push_back(format_double(value));
  return *this;
}

CsvTable& CsvTable::add(const std::string& value) {
  if (value.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : value) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    current_.push_back(q + "\"");
  } else {
    current_.push_back(value);
  }
  return *this;
}

void CsvTable::end_row() {
  if (current_.size() != columns_.size()) throw std::logic_error("csv row width does not match header");
  rows_.push_back(std::move(current_));
  current_.clear();
}

std::string CsvTable::str() const {
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  };
  emit(columns_);
  for (const auto& r : rows_) emit(r);
  return out;
}

OutputBundle::OutputBundle(std::filesystem::path dir, std::string stem) : dir_(std::move(dir)), stem_(std::move(stem)) {}

OutputBundle::~OutputBundle() {
  std::error_code ec;
  for (const auto& [tmp, final_path] : staged_) std::filesystem::remove(tmp, ec);
}

std::filesystem::path OutputBundle::stage(const std::string& suffix, const std::string& contents) {
  std::filesystem::create_directories(dir_);
  const auto final_path = dir_ / (stem_ + "-" + suffix);
  auto tmp = final_path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  staged_.emplace_back(tmp, final_path);
  return final_path;
}

void OutputBundle::commit() {
  for (const auto& [tmp, final_path] : staged_) {
    std::filesystem::rename(tmp, final_path);
    committed_.push_back(final_path);
  }
  staged_.clear();
}

std::string loglog_svg(const std::string& title, const std::string& xlabel, const std::vector<PlotSeries>& series) {
  constexpr double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
      x0 = std::min(x0, std::log10(s.x[i]));
      x1 = std::max(x1, std::log10(s.x[i]));
      y0 = std::min(y0, std::log10(s.y[i]));
      y1 = std::max(y1, std::log10(s.y[i]));
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 - x0 < 1e-12) x1 = x0 + 1;
  if (y1 - y0 < 1e-12) y1 = y0 + 1;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double lx) { return L + (lx - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double ly) { return H - B - (ly - y0) / (y1 - y0) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ostringstream os;
  os.precision(6);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" << title
     << "</text>\n"
     << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
     << "\" fill=\"none\" stroke=\"black\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">log10 "
     << xlabel << "</text>\n";
  for (int d = static_cast<int>(std::ceil(x0)); d <= static_cast<int>(std::floor(x1)); ++d)
    os << "<text x=\"" << px(d) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\" font-size=\"11\">" << d << "</text>\n";
  for (int d = static_cast<int>(std::ceil(y0)); d <= static_cast<int>(std::floor(y1)); ++d)
    os << "<text x=\"" << L - 6 << "\" y=\"" << py(d) + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << d << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* c = colors[k % 6];
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
      os << "<circle cx=\"" << px(std::log10(s.x[i])) << "\" cy=\"" << py(std::log10(s.y[i])) << "\" r=\"3.5\" fill=\"" << c
         << "\"/>\n";
    }
    if (s.has_fit) {
      // Fit is in natural logs: ln y = intercept + slope ln x.
      auto ly = [&](double lx) { return (s.intercept + s.slope * lx * std::log(10.0)) / std::log(10.0); };
      os << "<line x1=\"" << px(x0) << "\" y1=\"" << py(ly(x0)) << "\" x2=\"" << px(x1) << "\" y2=\"" << py(ly(x1))
         << "\" stroke=\"" << c << "\" stroke-width=\"1.5\"/>\n";
    }
    os << "<text x=\"" << L + 10 << "\" y=\"" << T + 16 + 16 * static_cast<double>(k) << "\" font-size=\"12\" fill=\"" << c
       << "\">" << s.label << (s.has_fit ? " (slope " : "");
    if (s.has_fit) os << s.slope << ")";
    os << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace wavelab::cli
