#include "faddeev/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace faddeev {

namespace {

double log_factorial(int n) { return std::lgamma(n + 1.0); }

bool triangle(int a, int b, int c) {
  return (a + b + c) % 2 == 0 && c <= a + b && c >= std::abs(a - b);
}

// log of the triangle coefficient Delta(abc) with doubled arguments
double log_delta(int a, int b, int c) {
  return 0.5 * (log_factorial((a + b - c) / 2) + log_factorial((a - b + c) / 2) +
                log_factorial((-a + b + c) / 2) - log_factorial((a + b + c) / 2 + 1));
}

}  // namespace

double wigner_6j(int a, int b, int c, int d, int e, int f) {
  if (!triangle(a, b, c) || !triangle(a, e, f) || !triangle(d, b, f) || !triangle(d, e, c)) return 0.0;
  const double pre = log_delta(a, b, c) + log_delta(a, e, f) + log_delta(d, b, f) + log_delta(d, e, c);
  const int t1 = (a + b + c) / 2, t2 = (a + e + f) / 2, t3 = (d + b + f) / 2, t4 = (d + e + c) / 2;
  const int p1 = (a + b + d + e) / 2, p2 = (a + c + d + f) / 2, p3 = (b + c + e + f) / 2;
  const int tmin = std::max({t1, t2, t3, t4});
  const int tmax = std::min({p1, p2, p3});
  double sum = 0.0;
  for (int t = tmin; t <= tmax; ++t) {
    const double lg = log_factorial(t + 1) - log_factorial(t - t1) - log_factorial(t - t2) -
                      log_factorial(t - t3) - log_factorial(t - t4) - log_factorial(p1 - t) -
                      log_factorial(p2 - t) - log_factorial(p3 - t);
    sum += ((t % 2) ? -1.0 : 1.0) * std::exp(lg + pre);
  }
  return sum;
}

double recoupling_cyclic(int two_j, int two_J, int two_pair_in, int two_pair_out) {
  // <(j1 j2) J12, j3; J | (j2 j3) J23, j1; J>
  //   = (-1)^(2 j1 + j2 + j3 + J23) sqrt((2 J12 + 1)(2 J23 + 1)) {j1 j2 J12; j3 J J23}
  const int phase2 = 2 * two_j + two_j + two_j + two_pair_out;  // doubled exponent
  if (phase2 % 2 != 0) throw std::invalid_argument("recoupling phase is not integral");
  const double sign = ((phase2 / 2) % 2) ? -1.0 : 1.0;
  return sign * std::sqrt((two_pair_in + 1.0) * (two_pair_out + 1.0)) *
         wigner_6j(two_j, two_j, two_pair_in, two_j, two_J, two_pair_out);
}

int ChannelSet::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (channels[i].name == name) return i;
  throw std::out_of_range("unknown channel '" + name + "'");
}

ChannelSet ChannelSet::nd_doublet() {
  ChannelSet cs;
  cs.channels = {{0, 0, 0, 0, 1, 1, 2, "singlet"}, {0, 0, 0, 2, 1, 1, 0, "triplet"}};
  const int n = cs.size();
  cs.w_spin.resize(n, n);
  cs.w_isospin.resize(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      cs.w_spin(a, b) = recoupling_cyclic(1, cs.channels[a].two_S, cs.channels[a].two_s, cs.channels[b].two_s);
      cs.w_isospin(a, b) = recoupling_cyclic(1, 1, cs.channels[a].two_t, cs.channels[b].two_t);
    }
  cs.w = cs.w_spin.cwiseProduct(cs.w_isospin);
  return cs;
}

}  // namespace faddeev
