#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace faddeev {

/// Partial-wave channel labels. Spins and isospins are stored doubled so
/// that half-integers stay integral.
struct Channel {
  int ell = 0;
  int lambda = 0;
  int L = 0;
  int two_s = 0;      // pair spin
  int two_sigma = 1;  // spectator spin
  int two_S = 1;      // total spin
  int two_t = 0;      // pair isospin
  std::string name;
};

struct ChannelSet {
  std::vector<Channel> channels;
  Eigen::MatrixXd w_spin;
  Eigen::MatrixXd w_isospin;
  Eigen::MatrixXd w;  // w_spin (.) w_isospin

  int size() const { return static_cast<int>(channels.size()); }
  int index_of(const std::string& name) const;

  /// The two s-wave channels of the nucleon-deuteron doublet (J = 1/2+):
  /// singlet (s=0, t=1) and triplet (s=1, t=0).
  static ChannelSet nd_doublet();
};

/// Wigner 6-j symbol with doubled arguments.
double wigner_6j(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6);

/// Recoupling <(j_j j_k) J_jk, j_i; J | (j_k j_i) J_ki, j_j; J> for three
/// equal spins (doubled arguments), i.e. moving the pair to the next
/// arrangement in cyclic order.
double recoupling_cyclic(int two_j, int two_J, int two_pair_in, int two_pair_out);

}  // namespace faddeev
