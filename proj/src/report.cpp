#include "beltrami/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace beltrami {

namespace {
std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}
}  // namespace

bool RunReport::overall_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return !c.gated || c.pass; });
}

void RunReport::add(CheckRecord record) { checks.push_back(std::move(record)); }

void RunReport::merge(const RunReport& stage, const std::string& prefix) {
  for (CheckRecord c : stage.checks) {
    c.name = prefix + "/" + c.name;
    checks.push_back(std::move(c));
  }
  stage_seconds[prefix] = stage.total_seconds;
}

nlohmann::ordered_json RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = config.to_json();
  j["environment"] = {{"seed", config.seed}, {"grid_n", config.grid_n}, {"k", config.k}};
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CheckRecord& c : checks) {
    nlohmann::ordered_json rec;
    rec["name"] = c.name;
    rec["target"] = c.target;
    rec["measured"] = c.measured;
    rec["tolerance"] = c.tolerance;
    rec["pass"] = c.pass;
    rec["gated"] = c.gated;
    arr.push_back(std::move(rec));
  }
  j["checks"] = std::move(arr);
  j["overall_pass"] = overall_pass();
  nlohmann::ordered_json timing;
  timing["total_seconds"] = total_seconds;
  for (const auto& [name, secs] : stage_seconds) timing["stage_" + name] = secs;
  j["timing"] = std::move(timing);
  return j;
}

void write_report_json(const RunReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("write_report_json: cannot open " + path);
  out << report.to_json().dump(2) << "\n";
}

void write_seminorm_csv(const SeminormTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("write_seminorm_csv: cannot open " + path);
  out << "scale_r,sqrt_neg_log_r,value,pairs\n";
  for (const SeminormRow& row : table.rows) {
    out << fmt_double(row.scale_r) << "," << fmt_double(std::sqrt(-std::log(row.scale_r)))
        << "," << fmt_double(row.value) << "," << row.pairs << "\n";
  }
}

void write_fit_json(const LogFit& fit, double target, double tolerance, bool pass,
                    const std::string& path) {
  nlohmann::ordered_json j;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["r2"] = fit.r2;
  j["window"] = {fit.window_j_min, fit.window_j_max};
  j["target"] = target;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  std::ofstream out(path);
  if (!out) throw DomainError("write_fit_json: cannot open " + path);
  out << j.dump(2) << "\n";
}

void write_defect_csv(const std::vector<DefectRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("write_defect_csv: cannot open " + path);
  out << "point_re,point_im,step,defect\n";
  for (const DefectRow& r : rows) {
    out << fmt_double(r.point.real()) << "," << fmt_double(r.point.imag()) << ","
        << fmt_double(r.step) << "," << fmt_double(r.defect) << "\n";
  }
}

void write_fit_svg(const SeminormTable& table, const LogFit& fit, double target_slope,
                   const std::string& path) {
  if (table.rows.empty()) throw DomainError("write_fit_svg: empty table");
  const double W = 640, H = 480, ml = 70, mr = 20, mt = 20, mb = 50;
  double x_lo = 1e300, x_hi = -1e300, y_lo = 0.0, y_hi = -1e300;
  for (const SeminormRow& r : table.rows) {
    const double x = std::sqrt(-std::log(r.scale_r));
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
    y_hi = std::max(y_hi, r.value);
  }
  y_hi *= 1.15;
  if (y_hi <= 0) y_hi = 1.0;
  auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo + 1e-300) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (y - y_lo) / (y_hi - y_lo) * (H - mt - mb); };
  std::ofstream out(path);
  if (!out) throw DomainError("write_fit_svg: cannot open " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (W / 2) << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-size=\"14\">sqrt(-log r)</text>\n";
  out << "<text x=\"16\" y=\"" << (H / 2)
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 16 " << (H / 2)
      << ")\">M(r)</text>\n";
  auto line_for = [&](double slope, double intercept, const char* color, const char* dash) {
    const double ya = slope * x_lo + intercept, yb = slope * x_hi + intercept;
    out << "<line x1=\"" << px(x_lo) << "\" y1=\"" << py(std::clamp(ya, y_lo, y_hi))
        << "\" x2=\"" << px(x_hi) << "\" y2=\"" << py(std::clamp(yb, y_lo, y_hi))
        << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"" << dash << "/>\n";
  };
  line_for(fit.slope, fit.intercept, "#1f77b4", "");
  // Target-slope guide through the first data point.
  const double x0 = std::sqrt(-std::log(table.rows.front().scale_r));
  line_for(target_slope, table.rows.front().value - target_slope * x0, "#d62728",
           " stroke-dasharray=\"6,4\"");
  for (const SeminormRow& r : table.rows) {
    const double x = std::sqrt(-std::log(r.scale_r));
    out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(r.value)
        << "\" r=\"3.5\" fill=\"#2ca02c\"/>\n";
  }
  out << "<text x=\"" << ml + 10 << "\" y=\"" << mt + 16 << "\" font-size=\"13\">fit slope "
      << fmt_double(fit.slope) << ", target " << fmt_double(target_slope) << ", R2 "
      << fmt_double(fit.r2) << "</text>\n";
  out << "</svg>\n";
}

}  // namespace beltrami
