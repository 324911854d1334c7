#pragma once

#include <vector>

#include "rational.hpp"

namespace reglab {

// Exact coefficients beta_k of the expansion 2x/(e^{2x}-1) = sum beta_k x^k,
// and the two-index family
//
//   beta_{k,p} = (-1)^p (p-1)! sum_{0 <= i <= floor((p-1)/2)} beta_{k+p-2i}/(2i+1)!
//
// seeded by beta_{k,1} = -beta_{k+1}.  Built once, immutable afterwards.
class BetaTable {
  public:
    explicit BetaTable(int max_index = 48);

    const Rat& beta(int k) const;        // k >= 0
    const Rat& beta_kp(int k, int p) const;  // k >= 0, p >= 1
    int max_index() const { return max_index_; }

    double beta_d(int k) const { return to_double(beta(k)); }
    double beta_kp_d(int k, int p) const { return to_double(beta_kp(k, p)); }

    // recursion checks, used by tests and the verify suite:
    //   2p * beta_{k+1,2p}   = -beta_{k,2p+1} - beta_{k+1}/(2p+1)
    //   (2p-1) * beta_{k+1,2p-1} = -beta_{k,2p}
    bool recursions_hold(int k_max, int p_max) const;

  private:
    int max_index_;
    std::vector<Rat> beta_;
    std::vector<std::vector<Rat>> beta_kp_;  // [k][p-1]
};

const BetaTable& beta_table();  // shared immutable instance

}  // namespace reglab
