#include "donsa/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "donsa/errors.hpp"

namespace donsa {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string metric_csv(const MetricsReport& report, const std::string& unit,
                       double (*pick)(const AlgoPointMetrics&), bool with_ci) {
  std::ostringstream out;
  out << report.sweep_name;
  for (const std::string& algo : report.algorithms) out << "," << algo << "_" << unit;
  if (with_ci)
    for (const std::string& algo : report.algorithms) out << "," << algo << "_ci_pct";
  out << "\r\n";
  for (std::size_t p = 0; p < report.sweep_values.size(); ++p) {
    out << format_double(report.sweep_values[p]);
    for (std::size_t a = 0; a < report.algorithms.size(); ++a)
      out << "," << format_double(pick(report.cells[p][a]));
    if (with_ci) {
      for (std::size_t a = 0; a < report.algorithms.size(); ++a) {
        out << ",";
        if (report.cells[p][a].ci_defined) out << format_double(report.cells[p][a].adr_ci_pct);
      }
    }
    out << "\r\n";
  }
  return out.str();
}

std::string fixed2(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << body;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string adr_csv(const MetricsReport& report) {
  return metric_csv(report, "bits_per_s",
                    [](const AlgoPointMetrics& m) { return m.adr_bps; }, true);
}

std::string nus_csv(const MetricsReport& report) {
  return metric_csv(report, "count", [](const AlgoPointMetrics& m) { return m.nus; }, false);
}

std::string aet_csv(const MetricsReport& report) {
  return metric_csv(report, "ms", [](const AlgoPointMetrics& m) { return m.aet_ms; }, false);
}

std::string svg_chart(const MetricsReport& report, const std::string& metric) {
  const bool is_adr = metric == "adr";
  const int width = 720, height = 480;
  const double left = 80, right = 700, top = 40, bottom = 430;

  const std::size_t n_points = report.sweep_values.size();
  // Span at least two decades -> log x axis.
  const bool logx = n_points > 1 && report.sweep_values.front() > 0.0 &&
                    report.sweep_values.back() / report.sweep_values.front() >= 100.0;
  auto xt = [&](double v) { return logx ? std::log10(v) : v; };

  double xmin = xt(report.sweep_values.front()), xmax = xt(report.sweep_values.back());
  if (xmin > xmax) std::swap(xmin, xmax);
  if (xmax == xmin) xmax = xmin + 1.0;
  double ymin = 0.0, ymax = 0.0;
  for (std::size_t p = 0; p < n_points; ++p)
    for (std::size_t a = 0; a < report.algorithms.size(); ++a) {
      const AlgoPointMetrics& cell = report.cells[p][a];
      ymax = std::max(ymax, is_adr ? cell.adr_bps : cell.nus);
    }
  if (ymax == 0.0) ymax = 1.0;
  ymax *= 1.05;

  auto sx = [&](double v) { return left + (xt(v) - xmin) / (xmax - xmin) * (right - left); };
  auto sy = [&](double v) { return bottom - (v - ymin) / (ymax - ymin) * (bottom - top); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << (left + right) / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"monospace\" font-size=\"15\">"
      << (is_adr ? "average data rate vs " : "unmatched sources vs ") << report.sweep_name
      << "</text>\n";

  // Axes.
  out << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
      << bottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
      << "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double fy = ymin + (ymax - ymin) * tick / 4.0;
    out << "<line x1=\"" << left - 4 << "\" y1=\"" << fixed2(sy(fy)) << "\" x2=\"" << left
        << "\" y2=\"" << fixed2(sy(fy)) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << left - 8 << "\" y=\"" << fixed2(sy(fy) + 4)
        << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">"
        << format_double(std::round(fy * 100.0) / 100.0) << "</text>\n";
  }
  for (std::size_t p = 0; p < n_points; ++p) {
    const double v = report.sweep_values[p];
    out << "<line x1=\"" << fixed2(sx(v)) << "\" y1=\"" << bottom << "\" x2=\"" << fixed2(sx(v))
        << "\" y2=\"" << bottom + 4 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fixed2(sx(v)) << "\" y=\"" << bottom + 18
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">"
        << format_double(v) << "</text>\n";
  }
  out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << height - 14
      << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">"
      << report.sweep_name << "</text>\n";

  // Series.
  for (std::size_t a = 0; a < report.algorithms.size(); ++a) {
    const char* color = kPalette[a % 8];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t p = 0; p < n_points; ++p) {
      const AlgoPointMetrics& cell = report.cells[p][a];
      const double y = is_adr ? cell.adr_bps : cell.nus;
      out << fixed2(sx(report.sweep_values[p])) << "," << fixed2(sy(y)) << " ";
    }
    out << "\"/>\n";
    out << "<text x=\"" << left + 10 << "\" y=\"" << top + 16 + 16 * a
        << "\" font-family=\"monospace\" font-size=\"12\" fill=\"" << color << "\">"
        << report.algorithms[a] << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string plot_script(const MetricsReport& report) {
  std::ostringstream out;
  const std::size_t n = report.algorithms.size();
  out << "# gnuplot script for the emitted CSVs\n";
  out << "set datafile separator ','\n";
  out << "set key autotitle columnhead\n";
  out << "set xlabel '" << report.sweep_name << "'\n";
  out << "set terminal svg size 720,480\n";
  out << "set output 'adr_gnuplot.svg'\n";
  out << "set ylabel 'ADR (bits/s)'\n";
  out << "plot";
  for (std::size_t a = 0; a < n; ++a)
    out << (a ? "," : "") << " 'adr.csv' using 1:" << a + 2 << " with linespoints";
  out << "\n";
  out << "set output 'nus_gnuplot.svg'\n";
  out << "set ylabel 'unmatched sources'\n";
  out << "plot";
  for (std::size_t a = 0; a < n; ++a)
    out << (a ? "," : "") << " 'nus.csv' using 1:" << a + 2 << " with linespoints";
  out << "\n";
  return out.str();
}

void emit_results(const MetricsReport& report, const std::string& out_dir,
                  const nlohmann::ordered_json& manifest_config) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());

  nlohmann::ordered_json manifest;
  manifest["meta"] = {{"tool", "donsa"}, {"version", DONSA_VERSION}, {"schema", 1}};
  manifest["config"] = manifest_config;

  const fs::path dir(out_dir);
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  write_file(dir / "adr.csv", adr_csv(report));
  write_file(dir / "nus.csv", nus_csv(report));
  write_file(dir / "aet.csv", aet_csv(report));
  write_file(dir / "plot.gp", plot_script(report));
  write_file(dir / "adr.svg", svg_chart(report, "adr"));
  write_file(dir / "nus.svg", svg_chart(report, "nus"));
}

}  // namespace donsa
