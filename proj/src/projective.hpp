#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "formal_sum.hpp"
#include "rational.hpp"
#include "support.hpp"

namespace reglab {

// ---------------------------------------------------------------------------
// Points / configurations with exact rational coordinates
// ---------------------------------------------------------------------------

using VecQ = std::vector<Rat>;  // homogeneous coordinates, not all zero
using VecC = std::vector<Cpx>;

struct ConfigQ {
    int dim = 0;  // ambient vector-space dimension
    std::vector<VecQ> points;

    // canonical representative of the GL(dim)-orbit of the ordered tuple
    // (reduced row echelon form of the coordinate matrix)
    ConfigQ canonical() const;
    bool operator<(const ConfigQ& o) const;
    bool operator==(const ConfigQ& o) const;
};

struct ConfigC {
    int dim = 0;
    std::vector<VecC> points;
};

// JSON round-trip per the configuration schema
// { "dim": n, "points": [[...], ...], "field": "rational" | "complex" }.
std::string config_to_json(const ConfigQ& c);
std::string config_to_json(const ConfigC& c);
ConfigQ config_q_from_json(const std::string& text);
ConfigC config_c_from_json(const std::string& text);

Rat det3(const VecQ& a, const VecQ& b, const VecQ& c);
Rat det4(const VecQ& a, const VecQ& b, const VecQ& c, const VecQ& d);
Cpx det3(const VecC& a, const VecC& b, const VecC& c);

// ---------------------------------------------------------------------------
// Cross-ratios
// ---------------------------------------------------------------------------

// Convention, frozen by calibration against the five-term relation:
//   r(z1,z2,z3,z4) = ((z1-z3)(z2-z4)) / ((z1-z4)(z2-z3))
// Both delta_2 of the five-term relator and the alternating sum of
// Bloch-Wigner values vanish for this ordering (golden tests pin it).
Cpx cross_ratio(Cpx z1, Cpx z2, Cpx z3, Cpx z4);

// exact cross-ratio of four collinear points in P^{dim-1}
Rat cross_ratio(const VecQ& z1, const VecQ& z2, const VecQ& z3, const VecQ& z4);

// cross-ratio on P^1(Q) given as affine values (nullopt = infinity)
using P1Q = std::optional<Rat>;
Rat cross_ratio_p1(const P1Q& z1, const P1Q& z2, const P1Q& z3, const P1Q& z4);

// ---------------------------------------------------------------------------
// Special configurations (2n points: simplex vertices + edge points)
// ---------------------------------------------------------------------------

// The 2n points (l_0..l_{n-1}, m_0..m_{n-1}) in P^{n-1} with m_i on the edge
// l_i l_{i+1}.  The invariant is the multiplier of the composite of the edge
// maps L_0 -> L_1 -> ... -> L_0 determined by the m_i.
Rat gen_cross_ratio_special(const ConfigQ& config);

// per-edge evaluation r(l_i, l_{i+1}, m_i, mhat) used to cross-check the
// edge-map product; mhat is cut out on the edge by the hyperplane through
// the other m_j.
Rat gen_cross_ratio_edge(const ConfigQ& config, int edge);

// standard special configuration with invariant a (exact), n >= 2
ConfigQ make_special_config(int n, const Rat& a);

bool is_special_config(const ConfigQ& config);

// ---------------------------------------------------------------------------
// Generalized cross-ratio of 6 points in P^2 (720-term alternation)
// ---------------------------------------------------------------------------

// one plain triple-ratio, arguments in the printed order:
//   [012|345] = D(l0l1l3) D(l1l2l4) D(l2l0l5) / (D(l0l1l4) D(l1l2l5) D(l2l0l3))
Rat triple_ratio(const std::array<VecQ, 6>& l);
Cpx triple_ratio(const std::array<VecC, 6>& l);

// the full Alt_6 of the triple ratio as a formal sum over field elements
FormalSum<Rat> r3_element(const std::array<VecQ, 6>& x);

struct CpxGen {
    CpxKey key;
    Cpx value;  // representative
    bool operator<(const CpxGen& o) const { return key < o.key; }
    bool operator==(const CpxGen& o) const { return key == o.key; }
};
FormalSum<CpxGen> r3_element(const std::array<VecC, 6>& x);

// ---------------------------------------------------------------------------
// Functional-equation defects
// ---------------------------------------------------------------------------

// | sum_{i=1}^{5} (-1)^i L_2(r(z_1,...,^z_i,...,z_5)) |
double abel5_defect(const std::array<Cpx, 5>& z);

// | sum_{i=1}^{7} (-1)^i L_3(r_3(x_1,...,^x_i,...,x_7)) | with L_3 applied
// linearly to the 720-term alternation
double trilog7_defect(const std::array<VecC, 7>& x);

// ---------------------------------------------------------------------------
// Grassmannian complex differentials (exact)
// ---------------------------------------------------------------------------

using ConfigSum = FormalSum<ConfigQ>;

// d(l_0,...,l_k) = sum_i (-1)^i (l_0,...,^l_i,...,l_k)
ConfigSum grassmann_d(const ConfigQ& gen);
ConfigSum grassmann_d(const ConfigSum& sum);

// projection differential: sum_i (-1)^i (l_i | l_0,...,^l_i,...,l_k)
ConfigSum grassmann_proj_d(const ConfigQ& gen);
ConfigSum grassmann_proj_d(const ConfigSum& sum);

ConfigQ project_from(const ConfigQ& config, int i);  // quotient by <l_i>

// ---------------------------------------------------------------------------
// Formal cobracket components on 8 points in P^3
// ---------------------------------------------------------------------------

// generator {x}_3 (x) y of B_3(F) tensor F^*
struct B3TensorGen {
    Rat x;
    Rat y;
    bool operator<(const B3TensorGen& o) const { return x != o.x ? x < o.x : y < o.y; }
    bool operator==(const B3TensorGen& o) const { return x == o.x && y == o.y; }
};
// generator {x}_2 ^ {y}_2 of Lambda^2 B_2(F), stored with x < y
struct Wedge22Gen {
    Rat x;
    Rat y;
    bool operator<(const Wedge22Gen& o) const { return x != o.x ? x < o.x : y < o.y; }
    bool operator==(const Wedge22Gen& o) const { return x == o.x && y == o.y; }
};

FormalSum<B3TensorGen> delta31(const std::array<VecQ, 8>& l);
FormalSum<Wedge22Gen> delta22(const std::array<VecQ, 8>& l);

// Independent brute-force expansions used as oracles: every summand value is
// recomputed from actual quotient projections (no 4x4 minor identities, no
// determinant cache).  Slow; test use only.
FormalSum<B3TensorGen> delta31_naive(const std::array<VecQ, 8>& l);
FormalSum<Wedge22Gen> delta22_naive(const std::array<VecQ, 8>& l);

}  // namespace reglab
