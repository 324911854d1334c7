#pragma once

#include <optional>

#include "measured_complex.hpp"
#include "rational.hpp"
#include "support.hpp"

namespace reglab {

// ---------------------------------------------------------------------------
// Quadratic fields Q(sqrt(D)) for a fundamental discriminant D
// ---------------------------------------------------------------------------

struct QuadField {
    long D = 0;
    int r1 = 0, r2 = 0;
    int w = 2;              // roots of unity
    long h = 0;             // class number
    Int eps_x, eps_y;       // fundamental unit (x + y sqrt(D))/2 for D > 0
    int eps_norm = 1;       // N(eps)
    double regulator = 1.0; // log eps for D > 0, 1 by convention for D < 0
};

bool is_fundamental_discriminant(long D);
QuadField field_data(long D);

// Kronecker symbol (D | n)
int kronecker(long D, long n);

// independent oracles used by the tests
long class_number_reduced_forms(long D);        // D < 0: direct reduced-form count
long narrow_class_number_cycles(long D);        // D > 0: cycles of reduced forms
std::optional<std::pair<Int, Int>> pell_search(long D, const Int& y_bound);  // brute force

// ---------------------------------------------------------------------------
// Binary quadratic forms (imaginary quadratic class group arithmetic)
// ---------------------------------------------------------------------------

struct QForm {
    Int a, b, c;
    bool operator<(const QForm& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
    bool operator==(const QForm& o) const { return a == o.a && b == o.b && c == o.c; }
};

QForm reduce_form(QForm f);                  // D < 0
QForm compose_forms(const QForm& f, const QForm& g);  // D < 0, reduced output
QForm principal_form(long D);

// ---------------------------------------------------------------------------
// Prime ideals and S-units (imaginary quadratic scope)
// ---------------------------------------------------------------------------

struct PrimeIdeal {
    long p = 0;      // rational prime below
    int f = 1;       // residue degree (norm = p^f)
    Int b = 0;       // ideal = (p, (b + sqrt(D))/2) in standard form (split/ramified)
    bool ramified = false;
    double log_norm() const { return f * std::log(static_cast<double>(p)); }
};

// element (x + y sqrt(D))/2 of the maximal order
struct QuadElem {
    Int x, y;
    Int norm(long D) const { return (x * x - Int(D) * y * y) / 4; }
};

// valuation of alpha at P (imaginary or real quadratic, split/ramified P)
int valuation(const QuadElem& alpha, const PrimeIdeal& P, long D);

// ---------------------------------------------------------------------------
// The weight-one measured complex and the class number formula
// ---------------------------------------------------------------------------

struct WeightOneData {
    MeasuredComplex complex;            // U_S -> R^{r1+r2} + Z^S -> R in degrees [1,3]
    std::vector<PrimeIdeal> s_primes;
    std::vector<std::vector<long>> unit_divisors;  // div of each free generator
    std::vector<QuadElem> generators;              // the corresponding elements
    double product_formula_defect = 0.0;           // max |Sigma R_1 + l div| over generators
};

// builds the S-truncated diagonal complex; S is extended with non-inert
// primes until it generates the class group (empty when h = 1)
WeightOneData weight_one_complex(const QuadField& field);

// ---------------------------------------------------------------------------
// zeta side
// ---------------------------------------------------------------------------

struct ZetaValues {
    double residue_s1 = 0.0;   // Res_{s=1} zeta_F = L(1, chi_D)
    Rat l_chi_0;               // L(0, chi_D), exact (odd characters; D < 0)
    double lim_s0 = 0.0;       // lim s^{-(r1+r2-1)} zeta_F(s) at s = 0
};

ZetaValues zeta_quadratic(const QuadField& field);

struct ClassNumberCheck {
    long D;
    long h;
    int w;
    double regulator;
    double lhs;      // -R_mu(weight-one complex)
    double rhs;      // zeta-side value
    double abs_err;
    bool pass;
};

ClassNumberCheck class_number_formula_check(long D, double tol_imag = 1e-10,
                                            double tol_real = 1e-6);

}  // namespace reglab
