#include "beta_table.hpp"

#include <stdexcept>

namespace reglab {

BetaTable::BetaTable(int max_index) : max_index_(max_index) {
    // (e^{2x}-1)/(2x) = sum_{j>=0} 2^j x^j/(j+1)!  and the product with
    // sum beta_k x^k is 1, giving a triangular recurrence for beta_m.
    beta_.resize(max_index_ + 1);
    for (int m = 0; m <= max_index_; ++m) {
        Rat acc = (m == 0) ? rat(1) : rat(0);
        for (int k = 0; k < m; ++k) {
            int j = m - k;
            acc -= beta_[k] * Rat(int_pow(2, j)) / factorial(j + 1);
        }
        beta_[m] = acc;
    }
    // closed summation formula for beta_{k,p}
    int kp_k = max_index_ / 2;
    int kp_p = max_index_ / 2;
    beta_kp_.resize(kp_k + 1);
    for (int k = 0; k <= kp_k; ++k) {
        beta_kp_[k].resize(kp_p);
        for (int p = 1; p <= kp_p; ++p) {
            Rat sum = 0;
            for (int i = 0; 2 * i <= p - 1; ++i) sum += beta_[k + p - 2 * i] / factorial(2 * i + 1);
            Rat val = factorial(p - 1) * sum;
            if (p % 2 == 1) val = -val;
            beta_kp_[k][p - 1] = val;
        }
    }
}

const Rat& BetaTable::beta(int k) const {
    if (k < 0 || k > max_index_) throw std::out_of_range("beta index out of range");
    return beta_[k];
}

const Rat& BetaTable::beta_kp(int k, int p) const {
    if (k < 0 || p < 1 || k >= static_cast<int>(beta_kp_.size()) ||
        p > static_cast<int>(beta_kp_[k].size()))
        throw std::out_of_range("beta_kp index out of range");
    return beta_kp_[k][p - 1];
}

bool BetaTable::recursions_hold(int k_max, int p_max) const {
    // p even:  p * beta_{k+1,p} = -beta_{k,p+1} - beta_{k+1}/(p+1)
    // p odd:   p * beta_{k+1,p} = -beta_{k,p+1}
    for (int k = 0; k + 1 <= k_max; ++k) {
        if (beta_kp(k, 1) != -beta(k + 1)) return false;
        for (int p = 1; p <= p_max; ++p) {
            Rat lhs = rat(p) * beta_kp(k + 1, p);
            Rat rhs = -beta_kp(k, p + 1);
            if (p % 2 == 0) rhs -= beta(k + 1) / rat(p + 1);
            if (lhs != rhs) return false;
        }
    }
    return true;
}

const BetaTable& beta_table() {
    static const BetaTable table(48);
    return table;
}

}  // namespace reglab
