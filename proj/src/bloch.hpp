#pragma once

#include "mult_symbol.hpp"
#include "projective.hpp"

namespace reglab {

// ---------------------------------------------------------------------------
// Terms of the polylogarithmic complexes Gamma(F, n)
//
// A term is {x}_m tensor (wedge monomial); m = 0 encodes the pure wedge
// part Lambda^n F*.  Quotients B_m(F) are never materialized: elements are
// kept as formal sums and only the differentials and residues act on them.
// ---------------------------------------------------------------------------

// F = Q: B-part generators live in P^1(Q)
struct GammaGenQ {
    int m = 0;                    // B-part weight; 0 = no B-part
    std::optional<P1Q> x;         // P^1(Q) point when m >= 2
    WedgeMonomial<Int> wedge;     // sorted distinct primes

    bool operator<(const GammaGenQ& o) const;
    bool operator==(const GammaGenQ& o) const;
};

// F = Q(t)
struct GammaGenQt {
    int m = 0;
    std::optional<RationalMapQ> x;
    WedgeMonomial<QtGen> wedge;

    bool operator<(const GammaGenQt& o) const;
    bool operator==(const GammaGenQt& o) const;
};

using GammaQ = FormalSum<GammaGenQ>;
using GammaQt = FormalSum<GammaGenQt>;

GammaQ make_b_term_q(int m, const P1Q& x);
GammaQt make_b_term_qt(int m, const RationalMapQ& x);

// attach extra wedge factors (each factored) to every term
GammaQ tensor_wedge(const GammaQ& e, const std::vector<Rat>& factors);
GammaQt tensor_wedge(const GammaQt& e, const std::vector<RationalMapQ>& factors);

// ---------------------------------------------------------------------------
// Differentials
// ---------------------------------------------------------------------------

// delta_2 {z} = (1-z) ^ z, with {0}, {1}, {inf} killed
WedgeQ delta2(const FormalSum<P1Q>& elem);
WedgeQt delta2_qt(const FormalSum<RationalMapQ>& elem);

// the full differential on complex terms:
//   {x}_m (x) w  ->  {x}_{m-1} (x) (x ^ w)          m >= 3
//   {x}_2 (x) w  ->  (1-x) ^ x ^ w                  m = 2
// pure wedge terms map to zero
GammaQ delta(const GammaQ& elem);
GammaQt delta(const GammaQt& elem);

// ---------------------------------------------------------------------------
// Valuations, residues, specialization
// ---------------------------------------------------------------------------

// place of Q(t): a rational point of P^1 (nullopt = infinity); residue field Q
using PlaceQt = P1Q;

// theta on wedge symbols over Q(t) at a rational place: the unique map with
// theta(pi ^ u_1 ^ ... ^ u_{n-1}) = ubar_1 ^ ... ^ ubar_{n-1} and
// theta(units) = 0, extended bilinearly to factored symbols
WedgeQ theta(const WedgeQt& w, const PlaceQt& v);

// theta over Q at a prime p; residues land in the formal symbol group on
// the classes of F_p^* (torsion not killed: this is the raw image data)
using WedgeFp = WedgeSymbol<long>;
WedgeFp theta_q(const WedgeQ& w, long p);

// residue morphism d_v = s_v (x) theta on Gamma(Q(t), n) terms
GammaQ residue_morphism(const GammaQt& elem, const PlaceQt& v);

// specialization at t_0: {f(t)} -> {f(t_0)} termwise, and on tensor slots
// the stripped evaluation g -> (g / (t - t_0)^{v(g)})(t_0)
GammaQ specialize(const GammaQt& elem, const P1Q& t0);

// ---------------------------------------------------------------------------
// Relators
// ---------------------------------------------------------------------------

// sum_{i=1}^{5} (-1)^i {r(z_1,...,^z_i,...,z_5)} in Z[P^1(Q)]
FormalSum<P1Q> five_term_relator(const std::array<P1Q, 5>& z);

// ---------------------------------------------------------------------------
// Hodge-symbol coproduct of Li_n (formal, exact)
// ---------------------------------------------------------------------------

struct LiSymbol {
    enum Kind { UNIT = 0, LOG = 1, LI = 2 };
    Kind kind = UNIT;
    int weight = 0;

    int total_weight() const { return kind == UNIT ? 0 : weight; }
    auto operator<=>(const LiSymbol&) const = default;
};

using LiTensor = std::vector<LiSymbol>;  // tensor factors, left to right
using LiSum = FormalSum<LiTensor>;

// Delta Li_n = sum_k Li_{n-k} (x) log^k / k!
LiSum li_coproduct(int n);

// coproduct applied in one slot of a tensor (for coassociativity checks)
LiSum coproduct_slot(const LiSum& sum, int slot);

// counit: keep terms whose given slot is UNIT, dropping that slot
LiSum counit_slot(const LiSum& sum, int slot);

bool weight_graded(const LiSum& sum, int total);

}  // namespace reglab
