#pragma once

#include <functional>

#include "beta_table.hpp"
#include "polylog.hpp"
#include "rational_map.hpp"

namespace reglab {

// ---------------------------------------------------------------------------
// Forms on a curve chart: degree 0, 1, 2 with complex coefficients on the
// basis 1, {dz, dzbar}, dz ^ dzbar.
// ---------------------------------------------------------------------------

struct FormValue {
    int degree = 0;
    Cpx c0{};        // degree 0
    Cpx cz{}, czb{};  // degree 1
    Cpx czzb{};      // degree 2

    static FormValue scalar(Cpx v) { return {0, v, 0, 0, 0}; }
    static FormValue one_form(Cpx dz, Cpx dzb) { return {1, 0, dz, dzb, 0}; }
    static FormValue two_form(Cpx c) { return {2, 0, 0, 0, c}; }

    FormValue operator+(const FormValue& o) const;
    FormValue operator-(const FormValue& o) const;
    FormValue operator*(double s) const;
    FormValue operator*(Cpx s) const;
    FormValue wedge(const FormValue& o) const;

    double max_abs() const;
};

// pointwise 1-forms of a rational map at z
FormValue dlog_abs(const RationalMapQ& f, Cpx z);   // d log|f|
FormValue darg_i(const RationalMapQ& f, Cpx z);     // d i arg f
FormValue dlog_full(const RationalMapQ& f, Cpx z);  // (f'/f) dz

// ---------------------------------------------------------------------------
// The canonical primitive r_{m-1} and the smooth-function version omega_{m-1}
// ---------------------------------------------------------------------------

// r_{m-1}(f_1 ^ ... ^ f_m)(z), m <= 3 on a curve:
//   Alt_m sum_j c_{j,m} log|f_1| dlog|f_2| ^...^ dlog|f_{2j+1}|
//                        ^ di arg f_{2j+2} ^...^ di arg f_m
// with c_{j,m} = 1/((2j+1)! (m-2j-1)!).
FormValue r_form(const std::vector<RationalMapQ>& fs, Cpx z);

// first jet of a smooth function: value, dz and dzbar coefficients of d(phi),
// plus the coefficient of dz^dzbar in dbar d phi (needed by the identity
// checks; zero for harmonic functions like log|f|)
struct SmoothJet {
    Cpx value{};
    Cpx dz{};
    Cpx dzb{};
    Cpx dbar_d{};
};
using SmoothFn = std::function<SmoothJet(Cpx)>;

SmoothFn log_abs_fn(const RationalMapQ& f);

// omega_{m-1}(phi_1 ^ ... ^ phi_m)(z) in the printed normalization
//   (1/m!) Alt_m sum_{k=1}^m (-1)^{m-k} phi_1 dphi_2 ...dphi_k dbar-phi_{k+1}...
// For phi_i = log|f_i| one has r_{m-1}(f) = 2^{m-1} omega_{m-1}(log|f|),
// the factor coming from dlog f = 2 d log|f| on holomorphic functions.
FormValue omega_form(const std::vector<SmoothFn>& phis, Cpx z);

// right-hand side of the derivative identity for omega: at a curve point all
// (2,0)/(0,2) products vanish and only the dbar-d terms survive
FormValue omega_d_identity_rhs(const std::vector<SmoothFn>& phis, Cpx z);

// ---------------------------------------------------------------------------
// Regulator 1-forms built from polylogarithms
// ---------------------------------------------------------------------------

// alpha(a, b) := -log|a| dlog|b| + log|b| dlog|a| (convention frozen so that
// the expanded weight-three r_3(2) is reproduced by the general machinery)
FormValue alpha_form(const RationalMapQ& a, const RationalMapQ& b, Cpx z);

// Lhat_{p,q}(f)(z): Lhat_p(f) log^{q-1}|f| dlog|f| for p >= 2, and the
// alpha(1-f, f)-based form for p = 1
FormValue lhat_pq(int p, int q, const RationalMapQ& f, Cpx z);

// r_{n+m}(m+1)({f}_n (x) g_1 ^ ... ^ g_m)(z), assembled from the weighted
// alternations with beta_{k,p} coefficients; m <= 2 on a curve
FormValue reg_form(int n, int m, const RationalMapQ& f, const std::vector<RationalMapQ>& gs,
                   Cpx z);

// ---------------------------------------------------------------------------
// Explicit weight 1/2/3 maps and the chain-map check
// ---------------------------------------------------------------------------

// one term of the weight-n curve complex built from rational maps:
// {f}_m (x) g_1 ^ ... ^ g_j  (m = 0 encodes the pure wedge part)
struct CurveElement {
    int m = 0;
    RationalMapQ f;
    std::vector<RationalMapQ> gs;
};

struct WeightMapValue {
    FormValue density;
    std::string support;  // empty: a genuine smooth form at z; otherwise the
                          // subvariety tag the distribution is supported on
};

// r_n(slot) for n = 1, 2, 3 per the printed displays; slots carried by
// subvarieties (r_1(2), r_2(3), r_2(4), r_3(3..6) with Y-support) return the
// smooth density factor together with the support tag
WeightMapValue weight_map(int n, int slot, const CurveElement& elem, Cpx z);

// delta of a curve element (formal, with the {0},{1},{inf} conventions)
std::vector<std::pair<Rat, CurveElement>> curve_delta(const CurveElement& elem);

// | d(r_n(k)(elem)) - r_n(k+1)(delta elem) | at z, the exterior derivative
// estimated by central differences with step h and one Richardson level
double chain_map_defect(int n, int k, const CurveElement& elem, Cpx z, double h = 1e-4);

// finite-difference exterior derivative of a form-valued function
FormValue numeric_d(const std::function<FormValue(Cpx)>& F, Cpx z, double h);
FormValue numeric_d_richardson(const std::function<FormValue(Cpx)>& F, Cpx z, double h);

// r'_4(2)({f}_2 ^ {g}_2) = (1/3)(Lhat_2(g) alpha(1-f,f) - Lhat_2(f) alpha(1-g,g))
FormValue r4p2(const RationalMapQ& f, const RationalMapQ& g, Cpx z);

// ---------------------------------------------------------------------------
// Multivariate scaffolding for the non-degenerate identity checks
//
// On a one-dimensional chart both sides of d r_{m-1} = pi_m(dlog ^...) vanish
// identically, so the full-strength checks run on C^m charts where the
// (m,0)-components survive.  Functions are products of powers of affine
// linear forms, which is exactly the shape the integrands use.
// ---------------------------------------------------------------------------

struct NForm {
    int vars = 1;                // complex dimension k; basis dz_1..dz_k, dzb_1..dzb_k
    std::vector<Cpx> comp;       // indexed by bitmask over the 2k basis forms

    explicit NForm(int k = 1) : vars(k), comp(std::size_t(1) << (2 * k), Cpx(0.0)) {}
    NForm wedge(const NForm& o) const;
    NForm operator+(const NForm& o) const;
    NForm operator-(const NForm& o) const;
    NForm operator*(Cpx s) const;
    NForm conjugated() const;  // complex conjugate of the form
    double max_abs() const;
};

struct LinearForm {
    std::vector<Cpx> a;
    Cpx b;  // L(z) = b + sum a_i z_i
    Cpx eval(const std::vector<Cpx>& z) const;
};

struct LinProduct {  // f = prod L_j^{e_j}
    std::vector<std::pair<LinearForm, int>> factors;
    Cpx log_value(const std::vector<Cpx>& z) const;             // log f (any branch)
    std::vector<Cpx> dlog(const std::vector<Cpx>& z) const;     // (d/dz_i) log f
};

NForm nform_dlog_abs(const LinProduct& f, const std::vector<Cpx>& z);
NForm nform_darg_i(const LinProduct& f, const std::vector<Cpx>& z);
NForm nform_dlog_full(const LinProduct& f, const std::vector<Cpx>& z);

NForm nform_r(const std::vector<LinProduct>& fs, const std::vector<Cpx>& z);
NForm nform_omega_logs(const std::vector<LinProduct>& fs, const std::vector<Cpx>& z);

// pi_m projection of dlog f_1 ^ ... ^ dlog f_m (real part for odd m, the
// i-imaginary part for even m)
NForm nform_pi_dlog(const std::vector<LinProduct>& fs, const std::vector<Cpx>& z);

NForm nform_numeric_d(const std::function<NForm(const std::vector<Cpx>&)>& F,
                      const std::vector<Cpx>& z, double h);

}  // namespace reglab
