#include "resolab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "resolab/airy.hpp"
#include "resolab/errors.hpp"

namespace resolab {
namespace {

using json = nlohmann::json;
using C = std::complex<double>;

double now_s() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// Bounded worker pool over an indexed task list; every task writes only its
// own slot, so assembly order is independent of scheduling.
void run_tasks(const std::vector<std::function<void()>>& tasks, int jobs) {
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  if (jobs == 1) {
    for (const auto& t : tasks) t();
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        tasks[i]();
      }
    });
  for (auto& t : pool) t.join();
}

int central_k(const ActionData& acts, double h, const KRange& kr) {
  int kc = kr.lo;
  for (int k = kr.lo; k <= kr.hi; ++k)
    if (std::abs(lambda_k(acts, h, k)) < std::abs(lambda_k(acts, h, kc))) kc = k;
  return kc;
}

struct PerK {
  std::optional<Resonance> numeric;
  std::optional<Resonance> thm1, thm2, red;
  std::string note;
};

}  // namespace

const char* mode_name(SweepMode m) {
  switch (m) {
    case SweepMode::thm1_check: return "thm1-check";
    case SweepMode::thm2_check: return "thm2-check";
    case SweepMode::identities_only: return "identities-only";
    default: return "decoupled-oracle";
  }
}

SweepMode mode_from_name(const std::string& name) {
  if (name == "thm1-check") return SweepMode::thm1_check;
  if (name == "thm2-check") return SweepMode::thm2_check;
  if (name == "identities-only") return SweepMode::identities_only;
  if (name == "decoupled-oracle") return SweepMode::decoupled_oracle;
  throw ConfigError("unknown mode '" + name + "'");
}

void SweepConfig::check() const {
  if (h_values.empty()) throw ConfigError("empty h grid");
  for (size_t i = 0; i + 1 < h_values.size(); ++i)
    if (!(h_values[i] > h_values[i + 1])) throw ConfigError("h grid must be strictly decreasing");
  for (double h : h_values)
    if (!(h > 0.0)) throw ConfigError("h values must be positive");
  if (!(c0 > 0.0)) throw ConfigError("c0 must be positive");
  if (!(finder.solver.rtol > 0.0) || !(finder.muller_tol > 0.0))
    throw ConfigError("tolerances must be positive");
  if (mode == SweepMode::thm2_check && model.r0bar != 0.0)
    throw ConfigError("mode thm2-check requires r0 = 0");
  if (mode == SweepMode::decoupled_oracle && (model.r0bar != 0.0 || model.r1bar != 0.0))
    throw ConfigError("mode decoupled-oracle requires r0 = r1 = 0");
}

SweepConfig SweepConfig::defaults() {
  SweepConfig c;
  c.h_values.resize(8);
  for (int i = 0; i < 8; ++i)
    c.h_values[i] = 0.08 * std::pow(0.01 / 0.08, i / 7.0);
  return c;
}

SweepConfig SweepConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error: " + std::string(e.what()));
  }
  SweepConfig c = defaults();
  if (j.contains("model")) {
    const auto& m = j["model"];
    if (m.contains("family")) c.model.family = m["family"].get<std::string>();
    if (m.contains("c")) c.model.c = m["c"].get<double>();
    if (m.contains("xstar")) c.model.xstar = m["xstar"].get<double>();
    if (m.contains("tau2")) c.model.tau2 = m["tau2"].get<double>();
    if (m.contains("r0")) c.model.r0bar = m["r0"].get<double>();
    if (m.contains("r1")) c.model.r1bar = m["r1"].get<double>();
    if (m.contains("r1_profile")) {
      const std::string p = m["r1_profile"].get<std::string>();
      if (p == "gaussian") c.model.r1_gaussian = true;
      else if (p == "constant") c.model.r1_gaussian = false;
      else throw ConfigError("unknown r1_profile '" + p + "'");
    }
  }
  if (j.contains("contour")) {
    const auto& ct = j["contour"];
    if (ct.contains("theta")) c.theta = ct["theta"].get<double>();
    if (ct.contains("x_inf")) c.x_inf = ct["x_inf"].get<double>();
    if (ct.contains("l_left")) c.l_left = ct["l_left"].get<double>();
    if (ct.contains("l_right") && ct["l_right"].is_number())
      c.l_right = ct["l_right"].get<double>();
  }
  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    if (s.contains("h")) {
      if (s["h"].is_array()) {
        c.h_values = s["h"].get<std::vector<double>>();
      } else {
        const double hmax = s["h"].value("max", 0.08);
        const double hmin = s["h"].value("min", 0.01);
        const int n = s["h"].value("points", 8);
        if (n < 1 || !(hmin > 0.0) || !(hmax > hmin))
          throw ConfigError("bad geometric h grid specification");
        c.h_values.resize(n);
        for (int i = 0; i < n; ++i)
          c.h_values[i] = hmax * std::pow(hmin / hmax, n > 1 ? i / (n - 1.0) : 0.0);
      }
    }
    if (s.contains("c0")) c.c0 = s["c0"].get<double>();
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    if (t.contains("ode_rtol")) c.finder.solver.rtol = t["ode_rtol"].get<double>();
    if (t.contains("ode_atol")) c.finder.solver.atol = t["ode_atol"].get<double>();
    if (t.contains("muller_tol")) c.finder.muller_tol = t["muller_tol"].get<double>();
  }
  if (j.contains("mode")) c.mode = mode_from_name(j["mode"].get<std::string>());
  if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
  if (j.contains("seedless")) c.seedless = j["seedless"].get<bool>();
  if (j.contains("completeness_check")) c.completeness_check = j["completeness_check"].get<bool>();
  if (j.contains("emit_timings")) c.emit_timings = j["emit_timings"].get<bool>();
  c.check();
  return c;
}

std::string SweepConfig::to_json() const {
  json j;
  j["model"] = {{"family", model.family}, {"c", model.c},     {"xstar", model.xstar},
                {"tau2", model.tau2},     {"r0", model.r0bar}, {"r1", model.r1bar},
                {"r1_profile", model.r1_gaussian ? "gaussian" : "constant"}};
  j["contour"] = {{"theta", theta}, {"x_inf", x_inf}, {"l_left", l_left}};
  if (l_right > 0.0) j["contour"]["l_right"] = l_right;
  else j["contour"]["l_right"] = "auto";
  j["sweep"] = {{"h", h_values}, {"c0", c0}};
  j["tolerances"] = {{"ode_rtol", finder.solver.rtol},
                     {"ode_atol", finder.solver.atol},
                     {"muller_tol", finder.muller_tol}};
  j["mode"] = mode_name(mode);
  j["out_dir"] = out_dir;
  j["jobs"] = jobs;
  j["seedless"] = seedless;
  j["completeness_check"] = completeness_check;
  j["emit_timings"] = emit_timings;
  return j.dump(2);
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& pairs) {
  std::vector<std::pair<double, double>> usable;
  for (const auto& [h, err] : pairs)
    if (err > 0.0 && h > 0.0) usable.push_back({std::log(h), std::log(err)});
  if (usable.size() < 4)
    throw InsufficientDataError("fit_slope: need at least 4 usable (h, err) pairs, have " +
                                std::to_string(usable.size()));
  const int n = static_cast<int>(usable.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : usable) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double denom = (n * sxx - sx * sx) * (n * syy - sy * sy);
  const double r = denom > 0.0 ? (n * sxy - sx * sy) / std::sqrt(denom) : 1.0;
  return {slope, r * r, n};
}

namespace {

void identity_suite(const SweepConfig& cfg, SweepReport& rep) {
  // Airy kernel: Wronskian identity on the dense grid plus the origin values
  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = -20.0 + 28.0 * i / 2000.0;
    const AiryValue v = airy_eval(x);
    worst = std::max(worst, std::abs(v.ai * v.bip - v.aip * v.bi - M_1_PI));
  }
  rep.identity_checks.push_back({"airy-wronskian-grid", worst, 1e-12, worst < 1e-12});

  // closed-form identities of the crossing integrals
  const std::vector<SlopePair> pairs = {SlopePair(1.0, 1.0), SlopePair(1.0, 2.0),
                                        SlopePair(0.5, 1.5)};
  double worst_full = 0.0, worst_prod = 0.0, worst_deriv = 0.0;
  for (const auto& sp : pairs) {
    for (int i = 0; i <= 30; ++i) {
      const double t = -3.0 + 6.0 * i / 30.0;
      const double full = airy_product_full_line(t, sp);
      const double cf = airy_product_closed_form(t, sp);
      worst_full = std::max(worst_full, std::abs(full - cf));

      const double s1 = nu(1, Side::R, Kind::A, t, sp) + nu(1, Side::L, Kind::A, t, sp);
      const double s2 = nu(2, Side::R, Kind::A, t, sp) + nu(2, Side::L, Kind::A, t, sp);
      const double arg = -t / std::cbrt(sp.tau3 * sp.tau3);
      const double aip = airy_eval(arg).aip;
      const double prod_cf = std::cbrt(sp.tau3) / (sp.tau1 + sp.tau2) * aip * aip;
      worst_prod = std::max(worst_prod, std::abs(s1 * s2 - prod_cf));

      // d/dt of the closed form against the nu sums, finite differences
      const double dt = 1e-4;
      const double dd = (airy_product_closed_form(t + dt, sp) -
                         airy_product_closed_form(t - dt, sp)) /
                        (2.0 * dt);
      const double rhs = -std::pow(sp.tau1, -2.0 / 3.0) * s1 - std::pow(sp.tau2, -2.0 / 3.0) * s2;
      worst_deriv = std::max(worst_deriv, std::abs(dd - rhs));
    }
  }
  rep.identity_checks.push_back({"airy-product-full-line", worst_full, 1e-8, worst_full < 1e-8});
  rep.identity_checks.push_back({"nu-product-closed-form", worst_prod, 1e-8, worst_prod < 1e-8});
  rep.identity_checks.push_back(
      {"closed-form-derivative-vs-nu", worst_deriv, 1e-6, worst_deriv < 1e-6});
  (void)cfg;
}

}  // namespace

SweepReport run(const SweepConfig& cfg) {
  cfg.check();
  SweepReport rep;
  rep.config = cfg;

  const double t_start = now_s();
  const CrossingModel model = make_model(cfg.model);
  const ValidationReport vr = validate(model);
  if (!vr.all_pass()) throw ConfigError("model assumptions failed:\n" + vr.summary());

  if (cfg.mode == SweepMode::identities_only) {
    identity_suite(cfg, rep);
    rep.timings.push_back({"identities", now_s() - t_start});
    rep.pass = true;
    for (const auto& c : rep.identity_checks) rep.pass = rep.pass && c.pass;
    return rep;
  }

  const double t_actions = now_s();
  const ActionData acts = action_derivatives(model);
  const SlopePair slopes(model.tau1, model.tau2);
  rep.timings.push_back({"action-derivatives", now_s() - t_actions});

  const bool use_thm2 = model.r0bar == 0.0;

  struct PerH {
    double h;
    KRange kr;
    std::vector<PerK> per_k;
    int count = -1;
    std::string count_note;
  };
  std::vector<PerH> sweep(cfg.h_values.size());

  const double t_sweep = now_s();
  std::vector<std::function<void()>> tasks;
  for (size_t ih = 0; ih < cfg.h_values.size(); ++ih) {
    const double h = cfg.h_values[ih];
    sweep[ih].h = h;
    sweep[ih].kr = k_window(acts, h, cfg.c0);
    sweep[ih].per_k.resize(sweep[ih].kr.size());
    auto make_contour = [&, h] {
      DistortionContour cont = auto_contour(model, h, cfg.c0);
      cont.theta = cfg.theta;
      cont.x_inf = cfg.x_inf;
      cont.l_left = cfg.l_left;
      if (cfg.l_right > 0.0) cont.l_right = cfg.l_right;
      return cont;
    };
    if (cfg.seedless) {
      // one global argument-principle search per h
      tasks.push_back([&, ih, h, make_contour] {
        try {
          const DistortionContour cont = make_contour();
          ResonanceFinder finder(model, cont, acts, cfg.finder);
          const FinderResult fr = finder.find_resonances_seedless(h, cfg.c0);
          for (const auto& z : fr.resonances) {
            const int slot = z.k - sweep[ih].kr.lo;
            if (slot >= 0 && slot < static_cast<int>(sweep[ih].per_k.size()))
              sweep[ih].per_k[slot].numeric = z;
          }
          for (int k = sweep[ih].kr.lo; k <= sweep[ih].kr.hi; ++k) {
            PerK& out = sweep[ih].per_k[k - sweep[ih].kr.lo];
            out.thm1 = predict_thm1(model, acts, slopes, h, k);
            if (use_thm2) {
              out.thm2 = predict_thm2(model, acts, slopes, h, k);
              out.red = predict_reduced(model, acts, slopes, h, k);
            }
          }
        } catch (const std::exception& e) {
          sweep[ih].count_note = e.what();
        }
      });
    } else {
      for (int k = sweep[ih].kr.lo; k <= sweep[ih].kr.hi; ++k) {
        const int slot = k - sweep[ih].kr.lo;
        tasks.push_back([&, ih, h, k, slot, make_contour] {
          PerK& out = sweep[ih].per_k[slot];
          try {
            out.thm1 = predict_thm1(model, acts, slopes, h, k);
            if (use_thm2) {
              out.thm2 = predict_thm2(model, acts, slopes, h, k);
              out.red = predict_reduced(model, acts, slopes, h, k);
            }
            const DistortionContour cont = make_contour();
            ResonanceFinder finder(model, cont, acts, cfg.finder);
            const C seed_rho = use_thm2 ? out.thm2->rho : out.thm1->rho;
            out.numeric = finder.refine(seed_rho, h, k);
          } catch (const std::exception& e) {
            out.note = e.what();
          }
        });
      }
    }
    if (cfg.completeness_check) {
      tasks.push_back([&, ih, h, make_contour] {
        try {
          const DistortionContour cont = make_contour();
          ResonanceFinder finder(model, cont, acts, cfg.finder);
          sweep[ih].count = finder.count_zeros(h, cfg.c0);
        } catch (const std::exception& e) {
          sweep[ih].count_note = e.what();
        }
      });
    }
  }
  run_tasks(tasks, cfg.jobs);
  rep.timings.push_back({"sweep", now_s() - t_sweep});

  // assemble records in (h, k) order
  bool all_found = true;
  for (const auto& ph : sweep) {
    for (int k = ph.kr.lo; k <= ph.kr.hi; ++k) {
      const PerK& pk = ph.per_k[k - ph.kr.lo];
      ResonanceRecord rec;
      rec.h = ph.h;
      rec.k = k;
      rec.note = pk.note;
      if (pk.numeric) rec.e_num = pk.numeric->e;
      if (pk.thm1) rec.e_thm1 = pk.thm1->e;
      if (pk.thm2) rec.e_thm2 = pk.thm2->e;
      if (pk.red) rec.e_red = pk.red->e;
      const auto& ref = use_thm2 ? rec.e_thm2 : rec.e_thm1;
      const double nan = std::numeric_limits<double>::quiet_NaN();
      rec.abs_gap_re = rec.abs_gap_im = rec.ratio_im = nan;
      if (rec.e_num && ref) {
        rec.abs_gap_re = std::abs(rec.e_num->real() - ref->real());
        rec.abs_gap_im = std::abs(rec.e_num->imag() - ref->imag());
        if (ref->imag() != 0.0) rec.ratio_im = rec.e_num->imag() / ref->imag();
      }
      if (!rec.e_num) all_found = false;
      rep.records.push_back(rec);
    }
  }

  bool mode_pass = all_found;

  // mode-specific checks
  if (cfg.mode == SweepMode::decoupled_oracle) {
    for (const auto& ph : sweep) {
      double worst = 0.0;
      for (const auto& pk : ph.per_k)
        if (pk.numeric) worst = std::max(worst, std::abs(pk.numeric->e.imag()));
      const double bound = 1e-12 * h_pow_23(ph.h) * 100.0;  // 1e-10 scale guard
      rep.identity_checks.push_back({"decoupled-realness-h" + std::to_string(ph.h), worst,
                                     bound, worst < bound});
    }
  }

  if (cfg.mode == SweepMode::thm1_check || cfg.mode == SweepMode::thm2_check) {
    // central-k width ratio per h
    std::vector<std::pair<double, double>> re_gap, im_gap;
    double prev_dev = -1.0;
    bool approach_ok = true;
    for (const auto& ph : sweep) {
      const int kc = central_k(acts, ph.h, ph.kr);
      const PerK& pk = ph.per_k[kc - ph.kr.lo];
      const auto& ref = use_thm2 ? pk.thm2 : pk.thm1;
      if (!pk.numeric || !ref) continue;
      const double ratio = pk.numeric->e.imag() / ref->e.imag();
      const double dev = std::abs(ratio - 1.0);
      if (cfg.mode == SweepMode::thm2_check) {
        const double band = 3.0 * h_pow_13(ph.h);
        rep.identity_checks.push_back(
            {"width-ratio-h" + std::to_string(ph.h), ratio, band, dev < band});
        mode_pass = mode_pass && (dev < band);
      } else {
        if (prev_dev >= 0.0 && dev > prev_dev + 0.10) approach_ok = false;
        prev_dev = dev;
      }
      const double floor = 100.0 * cfg.finder.muller_tol * h_pow_23(ph.h);
      const double gr = std::abs(pk.numeric->e.real() - ref->e.real());
      const double gi = std::abs(pk.numeric->e.imag() - ref->e.imag());
      if (gr > floor) re_gap.push_back({ph.h, gr});
      if (gi > floor) im_gap.push_back({ph.h, gi});
    }
    if (cfg.mode == SweepMode::thm1_check && !sweep.empty()) {
      const auto& ph0 = sweep.front();
      const int kc = central_k(acts, ph0.h, ph0.kr);
      const PerK& pk = ph0.per_k[kc - ph0.kr.lo];
      if (pk.numeric && pk.thm1) {
        const double r0ratio = pk.numeric->e.imag() / pk.thm1->e.imag();
        rep.identity_checks.push_back(
            {"thm1-ratio-coarsest", r0ratio, 1.5, r0ratio > 0.5 && r0ratio < 1.5});
        mode_pass = mode_pass && r0ratio > 0.5 && r0ratio < 1.5;
      }
      rep.identity_checks.push_back(
          {"thm1-ratio-monotone-approach", approach_ok ? 1.0 : 0.0, 1.0, approach_ok});
      mode_pass = mode_pass && approach_ok;
    }
    const char* ref_tag = use_thm2 ? "thm2" : "thm1";
    try {
      rep.slopes["re_gap_" + std::string(ref_tag)] = fit_slope(re_gap);
    } catch (const InsufficientDataError&) {
    }
    try {
      rep.slopes["im_gap_" + std::string(ref_tag)] = fit_slope(im_gap);
    } catch (const InsufficientDataError&) {
    }
  }

  if (cfg.mode == SweepMode::thm2_check) {
    // reduced-condition consistency at every sweep point
    double worst = 0.0;
    for (const auto& ph : sweep)
      for (const auto& pk : ph.per_k)
        if (pk.red && pk.thm2 && pk.thm2->e.imag() != 0.0)
          worst = std::max(worst, std::abs(pk.red->e.imag() - pk.thm2->e.imag()) /
                                      std::abs(pk.thm2->e.imag()));
    rep.identity_checks.push_back({"reduced-vs-thm2-width", worst, 1e-5, worst < 1e-5});
    mode_pass = mode_pass && worst < 1e-5;
  }

  if (cfg.completeness_check) {
    for (const auto& ph : sweep) {
      const bool ok = ph.count_note.empty() && ph.count == ph.kr.size();
      int found = 0;
      for (const auto& pk : ph.per_k)
        if (pk.numeric) ++found;
      rep.identity_checks.push_back({"completeness-h" + std::to_string(ph.h),
                                     static_cast<double>(ph.count),
                                     static_cast<double>(ph.kr.size()),
                                     ok && found == ph.kr.size()});
      mode_pass = mode_pass && ok && found == ph.kr.size();
    }
  }

  rep.timings.push_back({"total", now_s() - t_start});
  rep.pass = mode_pass;
  return rep;
}

}  // namespace resolab
