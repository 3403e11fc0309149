#include "aus/wigner.hpp"

#include <cmath>
#include <stdexcept>

namespace aus {

namespace {

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

double log_fact(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

Eigen::MatrixXd wigner_little_d(int two_j, double beta) {
  if (two_j < 0) throw std::invalid_argument("wigner_little_d: negative spin");
  const int dim = two_j + 1;
  Eigen::MatrixXd out(dim, dim);
  const double cb = std::cos(beta / 2.0);
  const double sb = std::sin(beta / 2.0);
  for (int ia = 0; ia < dim; ++ia) {
    const int a = 2 * ia - two_j;  // 2m
    for (int ib = 0; ib < dim; ++ib) {
      const int b = 2 * ib - two_j;  // 2m'
      const int jm = (two_j + a) / 2, jmm = (two_j - a) / 2;
      const int jn = (two_j + b) / 2, jnn = (two_j - b) / 2;
      const int mm = (a - b) / 2;  // m - m'
      const double lognorm =
          0.5 * (log_fact(jm) + log_fact(jmm) + log_fact(jn) + log_fact(jnn));
      const int smin = std::max(0, -mm);
      const int smax = std::min(jn, jmm);
      double tot = 0.0;
      for (int s = smin; s <= smax; ++s) {
        const int pc = two_j + (b - a) / 2 - 2 * s;  // cos(beta/2) exponent
        const int ps = mm + 2 * s;                   // sin(beta/2) exponent
        if (cb == 0.0 && pc != 0) continue;
        if (sb == 0.0 && ps != 0) continue;
        const double logden =
            log_fact(jn - s) + log_fact(s) + log_fact(mm + s) + log_fact(jmm - s);
        const double sign = ((mm + s) % 2 == 0) ? 1.0 : -1.0;
        tot += sign * std::exp(lognorm - logden) * ipow(cb, pc) * ipow(sb, ps);
      }
      out(ia, ib) = tot;
    }
  }
  return out;
}

}  // namespace aus
