#ifndef RESOLAB_AIRY_HPP
#define RESOLAB_AIRY_HPP

#include <utility>

namespace resolab {

/// Values of the two standard Airy solutions and their derivatives at one
/// real argument.  Satisfies ai*bip - aip*bi = 1/pi.
struct AiryValue {
  double ai;
  double aip;
  double bi;
  double bip;
};

/// Evaluate Ai, Ai', Bi, Bi' at x.
///
/// Accuracy: 1e-12 relative, or 1e-14 absolute where the value is below
/// 1e-2.  Supported range [-200, 100]; out of range throws RangeError.
AiryValue airy_eval(double x);

/// log|Ai(x)| and log|Bi(x)| for x >= 4, overflow-safe for large x.
/// Used to size quadrature cutoffs.  x < 4 throws RangeError.
std::pair<double, double> airy_scaled_tail(double x);

}  // namespace resolab

#endif
