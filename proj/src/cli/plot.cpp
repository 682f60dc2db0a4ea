#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "symkernel/cli.hpp"
#include "symkernel/fit.hpp"

namespace symkernel::cli {

int CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw UsageError("csv: missing column '" + name + "'");
  return static_cast<int>(it - header.begin());
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("csv: cannot open " + path);
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != t.header.size()) throw UsageError("csv: ragged row in " + path);
      t.rows.push_back(std::move(cells));
    }
  }
  if (t.header.empty()) throw UsageError("csv: empty file " + path);
  return t;
}

namespace {

namespace fs = std::filesystem;

std::vector<double> numbers(const CsvTable& t, const std::string& name) {
  const int c = t.column(name);
  std::vector<double> v;
  v.reserve(t.rows.size());
  for (const auto& r : t.rows) {
    try {
      v.push_back(r[c] == "inf" ? INFINITY : std::stod(r[c]));
    } catch (const std::exception&) {
      throw UsageError("csv: non-numeric value in column '" + name + "'");
    }
  }
  return v;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Fixed 640x480 canvas with a 60px margin; maps data ranges onto it.
class Svg {
 public:
  Svg(double x0, double x1, double y0, double y1) : x0_(x0), x1_(x1), y0_(y0), y1_(y1) {
    if (x1_ == x0_) x1_ = x0_ + 1;
    if (y1_ == y0_) y1_ = y0_ + 1;
    s_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\">\n"
       << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n"
       << "<rect x=\"60\" y=\"20\" width=\"560\" height=\"400\" fill=\"none\" stroke=\"black\"/>\n";
  }
  double px(double x) const { return 60 + 560 * (x - x0_) / (x1_ - x0_); }
  double py(double y) const { return 420 - 400 * (y - y0_) / (y1_ - y0_); }
  void dot(double x, double y, const char* color) {
    s_ << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
  }
  void line(double xa, double ya, double xb, double yb, const char* color) {
    s_ << "<line x1=\"" << px(xa) << "\" y1=\"" << py(ya) << "\" x2=\"" << px(xb) << "\" y2=\""
       << py(yb) << "\" stroke=\"" << color << "\"/>\n";
  }
  void polyline(const std::vector<double>& x, const std::vector<double>& y, const char* color) {
    s_ << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) s_ << px(x[i]) << "," << py(y[i]) << " ";
    s_ << "\"/>\n";
  }
  void cell(double xa, double xb, double ya, double yb, double value) {
    const int g = static_cast<int>(255 * (1.0 - std::clamp(value, 0.0, 1.0)));
    s_ << "<rect x=\"" << px(xa) << "\" y=\"" << py(yb) << "\" width=\"" << px(xb) - px(xa)
       << "\" height=\"" << py(ya) - py(yb) << "\" fill=\"rgb(" << g << "," << g << ",255)\"/>\n";
  }
  void text(double x, double y, const std::string& t, const char* anchor = "middle") {
    s_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"12\" text-anchor=\"" << anchor
       << "\">" << t << "</text>\n";
  }
  void labels(const std::string& title, const std::string& xl, const std::string& yl) {
    text(340, 14, title);
    text(340, 460, xl);
    text(14, 220, yl, "start");
    text(60, 436, fmt(x0_));
    text(620, 436, fmt(x1_));
    text(56, 424, fmt(y0_), "end");
    text(56, 24, fmt(y1_), "end");
  }
  void save(const fs::path& p) {
    s_ << "</svg>\n";
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << s_.str();
  }

 private:
  double x0_, x1_, y0_, y1_;
  std::ostringstream s_;
};

std::pair<double, double> range(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {*lo, *hi};
}

std::string decay_plot(const CsvTable& t, const fs::path& out) {
  const auto ts = numbers(t, "t");
  const auto mag = numbers(t, "abs_value");
  const auto err = numbers(t, "err_estimate");
  std::vector<double> lx, ly, fx, fy;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(mag[i] > 0)) continue;
    lx.push_back(std::log10(ts[i]));
    ly.push_back(std::log10(mag[i]));
    if (err[i] <= 0.1 * mag[i]) {
      fx.push_back(lx.back());
      fy.push_back(ly.back());
    }
  }
  if (lx.size() < 2) throw UsageError("plot: decay CSV needs at least two positive values");
  const auto [x0, x1] = range(lx);
  const auto [y0, y1] = range(ly);
  Svg svg(x0, x1, y0, y1);
  std::string title = "log10 |s_t| against log10 t";
  if (fx.size() >= 3) {
    const LinearFit f = fit_line(fx, fy);
    svg.line(x0, f.intercept + f.slope * x0, x1, f.intercept + f.slope * x1, "red");
    title += ", fitted slope " + fmt(f.slope);
  }
  for (std::size_t i = 0; i < lx.size(); ++i) svg.dot(lx[i], ly[i], "black");
  svg.labels(title, "log10 t", "log10 |value|");
  svg.save(out);
  return out.string();
}

std::string density_plot(const CsvTable& t, const fs::path& out) {
  const auto lam = numbers(t, "lambda_norm");
  const auto ld = numbers(t, "log_density");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    if (!(lam[i] > 0) || !std::isfinite(ld[i])) continue;
    x.push_back(std::log10(lam[i]));
    y.push_back(ld[i] / std::log(10.0));
  }
  if (x.size() < 2) throw UsageError("plot: density CSV needs at least two finite values");
  const auto [x0, x1] = range(x);
  const auto [y0, y1] = range(y);
  Svg svg(x0, x1, y0, y1);
  svg.polyline(x, y, "black");
  svg.labels("Plancherel density along a ray", "log10 |lambda|", "log10 density");
  svg.save(out);
  return out.string();
}

std::string partition_plot(const CsvTable& t, const fs::path& out) {
  const auto th = numbers(t, "theta");
  const auto chart = numbers(t, "chart");
  const auto val = numbers(t, "value");
  std::vector<double> angles = th;
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
  const int charts = static_cast<int>(*std::max_element(chart.begin(), chart.end())) + 1;
  const double step = angles.size() > 1 ? (angles.back() - angles.front()) / (angles.size() - 1) : 1.0;
  Svg svg(angles.front() - step / 2, angles.back() + step / 2, 0, charts);
  for (std::size_t i = 0; i < th.size(); ++i)
    svg.cell(th[i] - step / 2, th[i] + step / 2, chart[i], chart[i] + 1, val[i]);
  svg.labels("chart values on the unit circle", "theta", "chart id");
  svg.save(out);
  return out.string();
}

}  // namespace

std::vector<std::string> emit_plots(const std::string& csv_path) {
  const CsvTable t = read_csv(csv_path);
  const fs::path base = fs::path(csv_path).replace_extension();
  auto has = [&](const char* c) { return std::find(t.header.begin(), t.header.end(), c) != t.header.end(); };
  if (t.rows.empty()) throw UsageError("plot: no data rows in " + csv_path);
  if (has("t")) return {decay_plot(t, base.string() + ".svg")};
  if (has("theta")) return {partition_plot(t, base.string() + ".svg")};
  if (has("lambda_norm")) return {density_plot(t, base.string() + ".svg")};
  throw UsageError("plot: unrecognized CSV schema (expected a 't', 'theta' or 'lambda_norm' column)");
}

}  // namespace symkernel::cli
