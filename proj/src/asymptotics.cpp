#include "resolab/asymptotics.hpp"

#include <cmath>
#include <string>

#include "resolab/airy.hpp"
#include "resolab/errors.hpp"

namespace resolab {
namespace {

double re_part_two_terms(const ActionData& a, double lam, double h23) {
  return lam * h23 - (a.a2 / (2.0 * a.a1)) * lam * lam * h23 * h23;
}

void require_thm2(const CrossingModel& m) {
  if (!m.r0_is_zero())
    throw MisuseError("predict_thm2: requires r0 identically zero (scalar coupling present)");
}

}  // namespace

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::numeric: return "numeric";
    case Provenance::thm1: return "thm1";
    case Provenance::thm2: return "thm2";
    default: return "reduced";
  }
}

double h_pow_23(double h) { return std::cbrt(h * h); }
double h_pow_13(double h) { return std::cbrt(h); }

Resonance Resonance::from_rho(int k, std::complex<double> rho, double h, Provenance p) {
  Resonance r;
  r.k = k;
  r.rho = rho;
  r.e = rho * h_pow_23(h);
  r.h = h;
  r.provenance = p;
  return r;
}

Resonance Resonance::from_e(int k, std::complex<double> e, double h, Provenance p) {
  Resonance r;
  r.k = k;
  r.rho = e / h_pow_23(h);
  r.e = r.rho * h_pow_23(h);
  r.h = h;
  r.provenance = p;
  return r;
}

double lambda_k(const ActionData& a, double h, int k) {
  return (-a.a0 + (k + 0.5) * M_PI * h) / (a.a1 * h_pow_23(h));
}

KRange k_window(const ActionData& a, double h, double c0) {
  const double h23 = h_pow_23(h);
  const int lo = static_cast<int>(std::ceil((a.a0 - c0 * a.a1 * h23) / (M_PI * h) - 0.5));
  const int hi = static_cast<int>(std::floor((a.a0 + c0 * a.a1 * h23) / (M_PI * h) - 0.5));
  return {lo, hi};
}

Resonance predict_thm1(const CrossingModel& model, const ActionData& a,
                       const SlopePair& slopes, double h, int k) {
  const double h23 = h_pow_23(h);
  const double lam = lambda_k(a, h, k);
  const double re = re_part_two_terms(a, lam, h23);
  const double r00 = model.r0(Complex(0.0, 0.0)).real();
  const double mu1 = mu(1, lam, slopes), mu2 = mu(2, lam, slopes);
  const double im = -(2.0 * M_PI * M_PI * r00 * r00 / a.a1) *
                    std::cbrt(slopes.tau1 * slopes.tau2) * (mu1 * mu1 + mu2 * mu2) *
                    (h * h23);  // h^{5/3}
  return Resonance::from_e(k, {re, im}, h, Provenance::thm1);
}

Resonance predict_thm2(const CrossingModel& model, const ActionData& a,
                       const SlopePair& slopes, double h, int k) {
  require_thm2(model);
  const double h23 = h_pow_23(h);
  const double lam = lambda_k(a, h, k);
  const double re = re_part_two_terms(a, lam, h23) -
                    (a.a3 / (6.0 * a.a1)) * lam * lam * lam * h * h;
  const double r10 = model.r1(Complex(0.0, 0.0)).real();
  const double arg = -lam / std::cbrt(slopes.tau3 * slopes.tau3);
  const double aip = airy_eval(arg).aip;
  const double im = -(M_PI * M_PI * r10 * r10 / a.a1) *
                    (std::cbrt(slopes.tau3) / (slopes.tau1 + slopes.tau2)) * aip * aip *
                    (h * h * h_pow_13(h));  // h^{7/3}
  return Resonance::from_e(k, {re, im}, h, Provenance::thm2);
}

double im_g(const CrossingModel& model, const SlopePair& slopes, double rho_re) {
  const double r10 = model.r1(Complex(0.0, 0.0)).real();
  const double s1 = nu(1, Side::R, Kind::A, rho_re, slopes) + nu(1, Side::L, Kind::A, rho_re, slopes);
  const double s2 = nu(2, Side::R, Kind::A, rho_re, slopes) + nu(2, Side::L, Kind::A, rho_re, slopes);
  return M_PI * M_PI * r10 * r10 * s1 * s2;
}

Resonance predict_reduced(const CrossingModel& model, const ActionData& a,
                          const SlopePair& slopes, double h, int k) {
  require_thm2(model);
  const double target = (k + 0.5) * M_PI * h;
  const double lam = lambda_k(a, h, k);
  // Newton on the numeric action from the linearized seed
  double e_bs = lam * h_pow_23(h);
  bool converged = false;
  for (int it = 0; it < 30; ++it) {
    const double f = action(model, e_bs) - target;
    const double fp = action_derivative(model, e_bs);
    const double de = f / fp;
    e_bs -= de;
    if (std::abs(de) < 1e-14 * std::max(1.0, std::abs(e_bs))) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw SolverError("predict_reduced: Bohr-Sommerfeld Newton did not converge at k = " +
                      std::to_string(k));
  // Width through the nu-integral route.  The closed-form product evaluated
  // at the same argument is the thm2 width; the two agree through the
  // product identity, which is exactly what the consistency checks pin.
  const double im = -(h * h * h_pow_13(h)) * im_g(model, slopes, lam) / a.a1;
  return Resonance::from_e(k, {e_bs, im}, h, Provenance::reduced);
}

}  // namespace resolab
