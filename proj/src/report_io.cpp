#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "resolab/errors.hpp"
#include "resolab/harness.hpp"

namespace resolab {
namespace {

using json = nlohmann::json;

// 17 significant digits, scientific, locale-independent
std::string num17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

json complex_json(const std::complex<double>& z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SolverError("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw SolverError("write failure on '" + path + "'");
}

// Minimal SVG writer: fixed canvas, one polyline per series.
struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;  // already in data coords
};

std::string render_svg(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel, const std::vector<SvgSeries>& series,
                       bool log_x, bool log_y) {
  const double w = 640, h = 480, ml = 70, mr = 20, mt = 40, mb = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, tx(x));
      xmax = std::max(xmax, tx(x));
      ymin = std::min(ymin, ty(y));
      ymax = std::max(ymax, ty(y));
    }
  if (!(xmin < xmax)) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (!(ymin < ymax)) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double xpad = 0.05 * (xmax - xmin), ypad = 0.08 * (ymax - ymin);
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;
  auto px = [&](double v) { return ml + (tx(v) - xmin) / (xmax - xmin) * (w - ml - mr); };
  auto py = [&](double v) { return h - mb - (ty(v) - ymin) / (ymax - ymin) * (h - mt - mb); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", ml,
                h - mb, w - mr, h - mb);
  out += buf;
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", ml,
                mt, ml, h - mb);
  out += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"24\" font-size=\"15\" text-anchor=\"middle\">%s</text>\n",
                0.5 * (ml + w - mr), title.c_str());
  out += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\" text-anchor=\"middle\">%s</text>\n",
                0.5 * (ml + w - mr), h - 12, xlabel.c_str());
  out += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"16\" y=\"%.1f\" font-size=\"13\" text-anchor=\"middle\" "
                "transform=\"rotate(-90 16 %.1f)\">%s</text>\n",
                0.5 * (mt + h - mb), 0.5 * (mt + h - mb), ylabel.c_str());
  out += buf;
  // a few tick labels on each axis
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    const double vx = log_x ? std::pow(10.0, fx) : fx;
    const double vy = log_y ? std::pow(10.0, fy) : fy;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" text-anchor=\"middle\">%.3g"
                  "</text>\n",
                  ml + (w - ml - mr) * i / 4.0, h - mb + 16, vx);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" text-anchor=\"end\">%.3g</text>\n",
                  ml - 6, h - mb - (h - mt - mb) * i / 4.0 + 4, vy);
    out += buf;
  }
  int legend_y = static_cast<int>(mt) + 12;
  for (const auto& s : series) {
    if (s.points.empty()) continue;
    out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : s.points) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x), py(y));
      out += buf;
    }
    out += "\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%d\" font-size=\"12\" fill=\"%s\">%s</text>\n", w - 230.0,
                  legend_y, s.color.c_str(), s.label.c_str());
    out += buf;
    legend_y += 16;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace

void emit(const SweepReport& rep, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw SolverError("cannot create output directory '" + dir + "': " + ec.message());

  // resonances.csv
  {
    std::string csv =
        "h,k,reE_num,imE_num,reE_thm1,imE_thm1,reE_thm2,imE_thm2,reE_red,imE_red,"
        "abs_gap_re,abs_gap_im,ratio_im\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto put = [&](const std::optional<std::complex<double>>& z, bool re) {
      return num17(z ? (re ? z->real() : z->imag()) : nan);
    };
    for (const auto& r : rep.records) {
      csv += num17(r.h) + "," + std::to_string(r.k) + "," + put(r.e_num, true) + "," +
             put(r.e_num, false) + "," + put(r.e_thm1, true) + "," + put(r.e_thm1, false) + "," +
             put(r.e_thm2, true) + "," + put(r.e_thm2, false) + "," + put(r.e_red, true) + "," +
             put(r.e_red, false) + "," + num17(r.abs_gap_re) + "," + num17(r.abs_gap_im) + "," +
             num17(r.ratio_im) + "\n";
    }
    write_file(dir + "/resonances.csv", csv);
  }

  // report.json
  {
    json j;
    j["config"] = json::parse(rep.config.to_json());
    j["records"] = json::array();
    for (const auto& r : rep.records) {
      json rec{{"h", r.h}, {"k", r.k}};
      if (r.e_num) rec["e_num"] = complex_json(*r.e_num);
      if (r.e_thm1) rec["e_thm1"] = complex_json(*r.e_thm1);
      if (r.e_thm2) rec["e_thm2"] = complex_json(*r.e_thm2);
      if (r.e_red) rec["e_red"] = complex_json(*r.e_red);
      if (std::isfinite(r.abs_gap_re)) rec["abs_gap_re"] = r.abs_gap_re;
      if (std::isfinite(r.abs_gap_im)) rec["abs_gap_im"] = r.abs_gap_im;
      if (std::isfinite(r.ratio_im)) rec["ratio_im"] = r.ratio_im;
      if (!r.note.empty()) rec["note"] = r.note;
      j["records"].push_back(rec);
    }
    j["slopes"] = json::object();
    for (const auto& [name, fit] : rep.slopes)
      j["slopes"][name] = {{"slope", fit.slope}, {"r2", fit.r2}, {"n", fit.n_used}};
    j["identity_checks"] = json::array();
    for (const auto& c : rep.identity_checks)
      j["identity_checks"].push_back(
          {{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"pass", c.pass}});
    // wall-clock is only written on request: the default report must be
    // byte-identical across reruns
    j["timings"] = json::object();
    j["timings"]["enabled"] = rep.config.emit_timings;
    if (rep.config.emit_timings)
      for (const auto& t : rep.timings) j["timings"][t.stage] = t.wall_s;
    j["pass"] = rep.pass;
    write_file(dir + "/report.json", j.dump(2) + "\n");
  }

  // diagnostic plots
  {
    SvgSeries ratio{"ImE_num / ImE_ref", "#1f77b4", {}};
    SvgSeries unity{"ratio = 1", "#999999", {}};
    for (const auto& r : rep.records)
      if (std::isfinite(r.ratio_im)) ratio.points.push_back({r.h, r.ratio_im});
    if (!ratio.points.empty()) {
      unity.points = {{ratio.points.front().first, 1.0}, {ratio.points.back().first, 1.0}};
      write_file(dir + "/width_ratio.svg",
                 render_svg("width ratio vs h", "h", "ImE_num / ImE_ref", {ratio, unity}, true,
                            false));
    }

    SvgSeries re_gap{"|ReE_num - ReE_ref|", "#d62728", {}};
    SvgSeries im_gap{"|ImE_num - ImE_ref|", "#2ca02c", {}};
    for (const auto& r : rep.records) {
      if (std::isfinite(r.abs_gap_re) && r.abs_gap_re > 0.0)
        re_gap.points.push_back({r.h, r.abs_gap_re});
      if (std::isfinite(r.abs_gap_im) && r.abs_gap_im > 0.0)
        im_gap.points.push_back({r.h, r.abs_gap_im});
    }
    std::vector<SvgSeries> err_series;
    if (!re_gap.points.empty()) err_series.push_back(re_gap);
    if (!im_gap.points.empty()) err_series.push_back(im_gap);
    for (const auto& [name, fit] : rep.slopes) {
      SvgSeries fitline{name + " fit (slope " + std::to_string(fit.slope).substr(0, 5) + ")",
                        "#777777",
                        {}};
      const auto& src = name.rfind("re_", 0) == 0 ? re_gap : im_gap;
      if (src.points.size() >= 2) {
        // anchor the fitted line at the geometric mean of the data
        double lx = 0, ly = 0;
        for (const auto& [x, y] : src.points) {
          lx += std::log(x);
          ly += std::log(y);
        }
        lx /= src.points.size();
        ly /= src.points.size();
        const double x0 = src.points.front().first, x1 = src.points.back().first;
        fitline.points = {{x0, std::exp(ly + fit.slope * (std::log(x0) - lx))},
                          {x1, std::exp(ly + fit.slope * (std::log(x1) - lx))}};
        err_series.push_back(fitline);
      }
    }
    if (!err_series.empty())
      write_file(dir + "/error_scaling.svg",
                 render_svg("error scaling vs h", "h", "absolute gap", err_series, true, true));
  }
}

}  // namespace resolab
