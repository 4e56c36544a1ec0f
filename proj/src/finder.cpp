#include "resolab/finder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "resolab/errors.hpp"

namespace resolab {
namespace {

using C = std::complex<double>;

// Wronskian as a function of rho, rescaled by a reference log factor so
// magnitudes near a zero stay representable.
struct ScaledW {
  const CoupledSolver& solver;
  double h;
  double h23;
  mutable double ls_ref = 0.0;
  mutable bool have_ref = false;

  C operator()(C rho) const {
    const WronskianValue w = solver.wronskian(rho * h23, h);
    if (!have_ref) {
      ls_ref = w.log_scale;
      have_ref = true;
    }
    return w.w * std::exp(w.log_scale - ls_ref);
  }
};

}  // namespace

ResonanceFinder::ResonanceFinder(const CrossingModel& model, const DistortionContour& contour,
                                 const ActionData& actions, FinderOptions opts)
    : model_(model),
      contour_(contour),
      actions_(actions),
      slopes_(model.tau1, model.tau2),
      opts_(opts) {}

Resonance ResonanceFinder::refine(C rho_seed, double h, int k, double spread) const {
  CoupledSolver solver(model_, contour_, opts_.solver);
  const double h23 = h_pow_23(h);
  ScaledW f{solver, h, h23};

  const double spacing = M_PI * h_pow_13(h) / actions_.a1;
  const double d = spread > 0.0 ? spread : 0.02 * spacing;
  C z0 = rho_seed - d, z1 = rho_seed + d, z2 = rho_seed;
  C f0 = f(z0), f1 = f(z1), f2 = f(z2);

  for (int it = 0; it < opts_.muller_max_iter; ++it) {
    const C q = (z2 - z1) / (z1 - z0);
    const C a = q * f2 - q * (1.0 + q) * f1 + q * q * f0;
    const C b = (2.0 * q + 1.0) * f2 - (1.0 + q) * (1.0 + q) * f1 + q * q * f0;
    const C c = (1.0 + q) * f2;
    const C disc = std::sqrt(b * b - 4.0 * a * c);
    const C den1 = b + disc, den2 = b - disc;
    const C den = std::abs(den1) >= std::abs(den2) ? den1 : den2;
    if (std::abs(den) == 0.0)
      throw SolverError("Muller: degenerate denominator at k = " + std::to_string(k));
    const C dz = (z2 - z1) * (2.0 * c / den);
    const C z3 = z2 - dz;
    z0 = z1;
    f0 = f1;
    z1 = z2;
    f1 = f2;
    z2 = z3;
    f2 = f(z3);
    if (std::abs(dz) < opts_.muller_tol)
      return Resonance::from_rho(k, z2, h, Provenance::numeric);
  }
  throw SolverError("Muller: no convergence after " + std::to_string(opts_.muller_max_iter) +
                    " iterations at k = " + std::to_string(k));
}

FinderResult ResonanceFinder::find_resonances(double h, double c0) const {
  FinderResult out;
  const KRange kr = k_window(actions_, h, c0);
  const double spacing = M_PI * h_pow_13(h) / actions_.a1;
  const double merge_dist = 0.25 * spacing;  // quarter level spacing in rho

  for (int k = kr.lo; k <= kr.hi; ++k) {
    const Resonance seed = model_.r0_is_zero()
                               ? predict_thm2(model_, actions_, slopes_, h, k)
                               : predict_thm1(model_, actions_, slopes_, h, k);
    try {
      Resonance zero = refine(seed.rho, h, k);
      if (zero.rho.imag() > 1e-9) {
        out.issues.push_back({k, "out-of-box", zero.rho});
        continue;
      }
      // widths live in the closed lower half plane
      if (zero.rho.imag() > 0.0) zero = Resonance::from_rho(k, C(zero.rho.real(), 0.0), h,
                                                            Provenance::numeric);
      out.resonances.push_back(zero);
    } catch (const SolverError&) {
      out.issues.push_back({k, "no-convergence", seed.rho});
    }
  }

  // merge duplicates (two seeds converging to the same zero)
  std::sort(out.resonances.begin(), out.resonances.end(),
            [](const Resonance& a, const Resonance& b) { return a.rho.real() < b.rho.real(); });
  std::vector<Resonance> merged;
  for (const auto& r : out.resonances) {
    if (!merged.empty() && std::abs(r.rho - merged.back().rho) < merge_dist)
      continue;
    merged.push_back(r);
  }
  out.resonances = std::move(merged);
  return out;
}

int ResonanceFinder::count_zeros(double h, double c0) const {
  CoupledSolver solver(model_, contour_, opts_.solver);
  const double h23 = h_pow_23(h);
  ScaledW f{solver, h, h23};

  const KRange kr = k_window(actions_, h, c0);
  // Side edges at the predicted midpoints of the gaps just outside the
  // window: at finite h the two-term real part shifts levels by O(h^{4/3}),
  // so the literal box edge can cut through a level.  The gap midpoints
  // separate exactly the k-window levels from their neighbours.
  auto rho_re_pred = [&](int k) {
    const double lam = lambda_k(actions_, h, k);
    return lam - (actions_.a2 / (2.0 * actions_.a1)) * lam * lam * h23;
  };
  const double re_lo = 0.5 * (rho_re_pred(kr.lo - 1) + rho_re_pred(kr.lo));
  const double re_hi = 0.5 * (rho_re_pred(kr.hi) + rho_re_pred(kr.hi + 1));
  // top edge slightly above the real axis: resonances have Im <= 0 and the
  // decoupled limit puts zeros exactly on the axis
  const double im_top = 0.05 * c0 * h_pow_13(h);
  const double im_bot = -c0 * h_pow_13(h);

  const C corners[4] = {{re_lo, im_bot}, {re_hi, im_bot}, {re_hi, im_top}, {re_lo, im_top}};

  struct Node {
    double t;  // position along the boundary, in [0, 4)
    C z;
    C w;
  };
  auto z_at = [&](double t) {
    const int edge = static_cast<int>(t) % 4;
    const double frac = t - std::floor(t);
    return corners[edge] + frac * (corners[(edge + 1) % 4] - corners[edge]);
  };

  // The phase of w sweeps ~ (contour length) * dE / (2 sqrt(Q) h) radians
  // along an edge (the outgoing-channel factor dominates), so the initial
  // sampling is sized from that budget; an undersampled edge can alias a
  // full turn past the step-size check.
  const double rate = contour_.total_length() / (2.0 * std::sqrt(0.3) * h);
  auto edge_samples = [&](const C& a, const C& b) {
    const double de = std::abs(b - a) * h23;
    return std::max(8, static_cast<int>(std::ceil(de * rate / 1.2)) + 4);
  };

  std::vector<Node> nodes;
  for (int e = 0; e < 4; ++e) {
    const int n0 = edge_samples(corners[e], corners[(e + 1) % 4]);
    for (int i = 0; i < n0; ++i) {
      const double t = e + static_cast<double>(i) / n0;
      nodes.push_back({t, z_at(t), f(z_at(t))});
    }
  }
  nodes.push_back({4.0, nodes.front().z, nodes.front().w});

  // one unconditional halving exposes any turn hidden between samples, then
  // refine until every phase increment is below pi/2
  auto phase_step = [](const C& a, const C& b) { return std::arg(b / a); };
  for (int depth = 0; depth < opts_.max_winding_depth; ++depth) {
    bool ok = true;
    std::vector<Node> refined;
    refined.reserve(nodes.size() * 2);
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
      refined.push_back(nodes[i]);
      if (depth == 0 || std::abs(phase_step(nodes[i].w, nodes[i + 1].w)) > M_PI_2) {
        ok = false;
        const double tm = 0.5 * (nodes[i].t + nodes[i + 1].t);
        refined.push_back({tm, z_at(tm), f(z_at(tm))});
      }
    }
    refined.push_back(nodes.back());
    nodes = std::move(refined);
    if (ok) break;
    if (depth == opts_.max_winding_depth - 1) {
      // a zero is pinned to the boundary; report the suspect location
      size_t worst = 0;
      double worst_step = 0.0;
      for (size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double p = std::abs(phase_step(nodes[i].w, nodes[i + 1].w));
        if (p > worst_step) {
          worst_step = p;
          worst = i;
        }
      }
      const C hint = 0.5 * (nodes[worst].z + nodes[worst + 1].z);
      throw InconclusiveCountError("count_zeros: phase refinement hit depth limit",
                                   hint.real(), hint.imag());
    }
  }

  double total = 0.0;
  for (size_t i = 0; i + 1 < nodes.size(); ++i)
    total += phase_step(nodes[i].w, nodes[i + 1].w);
  const double winding = total / (2.0 * M_PI);
  const int count = static_cast<int>(std::lround(winding));
  if (std::abs(winding - count) > 0.1)
    throw InconclusiveCountError("count_zeros: winding " + std::to_string(winding) +
                                     " is not an integer",
                                 std::numeric_limits<double>::quiet_NaN(),
                                 std::numeric_limits<double>::quiet_NaN());
  return count;
}

FinderResult ResonanceFinder::find_resonances_seedless(double h, double c0) const {
  // winding-guided bisection in Re rho until boxes isolate single zeros
  CoupledSolver solver(model_, contour_, opts_.solver);
  const double h23 = h_pow_23(h);
  ScaledW f{solver, h, h23};
  const double im_top = 0.05 * c0 * h_pow_13(h);
  const double im_bot = -c0 * h_pow_13(h);

  const double rate = contour_.total_length() / (2.0 * std::sqrt(0.3) * h);
  auto winding_count = [&](double re_lo, double re_hi) {
    const C corners[4] = {{re_lo, im_bot}, {re_hi, im_bot}, {re_hi, im_top}, {re_lo, im_top}};
    std::vector<C> ws;
    for (int e = 0; e < 4; ++e) {
      const int per_edge =
          std::max(12, static_cast<int>(std::ceil(
                           std::abs(corners[(e + 1) % 4] - corners[e]) * h23 * rate / 1.2)) +
                       4);
      for (int i = 0; i < per_edge; ++i) {
        const C z = corners[e] + (static_cast<double>(i) / per_edge) *
                                     (corners[(e + 1) % 4] - corners[e]);
        ws.push_back(f(z));
      }
    }
    ws.push_back(ws.front());
    double total = 0.0;
    for (size_t i = 0; i + 1 < ws.size(); ++i) total += std::arg(ws[i + 1] / ws[i]);
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
  };

  FinderResult out;
  struct Box {
    double lo, hi;
    int count;
  };
  std::vector<Box> work{{-c0, c0, winding_count(-c0, c0)}};
  const double spacing = M_PI * h_pow_13(h) / actions_.a1;
  while (!work.empty()) {
    Box b = work.back();
    work.pop_back();
    if (b.count <= 0) continue;
    // isolate the zero well inside Muller's basin before refining: the
    // wronskian phase turns many radians per level spacing
    if (b.count == 1 && (b.hi - b.lo) < 0.15 * spacing) {
      const C seed(0.5 * (b.lo + b.hi), 0.0);
      out.resonances.push_back(refine(seed, h, 0, 0.2 * (b.hi - b.lo)));
      continue;
    }
    const double mid = 0.5 * (b.lo + b.hi);
    const int cl = winding_count(b.lo, mid);
    work.push_back({b.lo, mid, cl});
    work.push_back({mid, b.hi, b.count - cl});
  }
  std::sort(out.resonances.begin(), out.resonances.end(),
            [](const Resonance& a, const Resonance& b) { return a.rho.real() < b.rho.real(); });
  // recover k labels from the Bohr-Sommerfeld ordering
  for (auto& r : out.resonances) {
    const double k_est = (actions_.a0 + actions_.a1 * r.rho.real() * h23) / (M_PI * h) - 0.5;
    r.k = static_cast<int>(std::lround(k_est));
  }
  return out;
}

}  // namespace resolab
