#pragma once

#include "beta_table.hpp"
#include "support.hpp"

namespace reglab {

// Classical polylogarithm Li_n(z), principal branch (cut along [1, inf)).
// Series for |z| <= 1/2, otherwise the integral recursion
// Li_n(z) = int_0^z Li_{n-1}(t) dt/t marched as an ODE along the straight
// path from 0, which never meets the cut for arguments off [1, inf).
Cpx li(int n, Cpx z);

// All Li_1..Li_n at z in one march (cheaper when several weights are needed).
std::vector<Cpx> li_all(int n, Cpx z);

// Single-valued polylogarithm
//   L_n(z) = Re/Im sum_{k=0}^{n-1} beta_k log^k|z| Li_{n-k}(z)
// (Re for n odd, Im for n even), continuous on CP^1 with L_n(0)=L_n(inf)=0.
// L_2 is the Bloch-Wigner function; it vanishes on the real line.
double polylog_sv(int n, Cpx z);

// Levin's modification: sum over even k of
//   c_k L_{n-k}(x) log^k|x|,  c_k = 2^k (n-2)! (2n-k-3)! / ((2n-3)! (k+1)! (n-k-2)!)
// normalised so that the k = 0 coefficient is 1; then L~_n = L_n for n <= 3.
double polylog_sv_levin(int n, Cpx z);

// i*L_n for even n, L_n for odd n (values in R(n-1) up to real scale).
Cpx polylog_hat(int n, Cpx z);

// value of the defining expression Im(Li_2 + log(1-z) log|z|), for cross-checks
double bloch_wigner_direct(Cpx z);

double riemann_zeta(int n);  // n >= 2, by series with tail bound

struct SimplexZetaEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    bool budget_ok = true;
};

// zeta(n) as the volume integral over the ordered simplex
// 0 < t_1 < ... < t_n < 1 of dt_1/(1-t_1) dt_2/t_2 ... dt_n/t_n,
// estimated by seeded Monte Carlo.  Throws degenerate_input for n < 2.
SimplexZetaEstimate zeta_leibniz(int n, std::uint64_t budget, std::uint64_t seed,
                                 double requested_tol = 0.0);

}  // namespace reglab
