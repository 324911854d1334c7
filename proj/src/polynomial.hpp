#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"
#include "support.hpp"

namespace reglab {

// Univariate polynomial over Q, coefficient list by ascending degree.
class Poly {
  public:
    Poly() = default;
    Poly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }
    explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly constant(const Rat& q) { return Poly{std::vector<Rat>{q}}; }
    static Poly monomial(const Rat& q, int deg);
    static Poly variable() { return Poly{rat(0), rat(1)}; }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const Rat& coeff(int i) const;
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& leading() const { return c_.back(); }

    Rat eval(const Rat& x) const;
    Cpx eval(const Cpx& x) const;
    Poly derivative() const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& q) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    // division with remainder; o must be nonzero
    std::pair<Poly, Poly> divmod(const Poly& o) const;
    bool divides(const Poly& o) const;

    Poly monic() const;
    std::string str(const std::string& var = "t") const;

    // total order: degree first, then lexicographic on coefficients
    static int compare(const Poly& a, const Poly& b);

  private:
    void trim();
    std::vector<Rat> c_;
};

Poly gcd(const Poly& a, const Poly& b);

// Factorization of a nonzero polynomial over Q into unit * monic irreducibles.
struct PolyFactorization {
    Rat unit;  // leading rational constant
    std::vector<std::pair<Poly, int>> factors;  // (monic irreducible, multiplicity)
};

// Exact factorization.  Splits off rational roots, quadratics by discriminant
// and quartics by an integer divisor-pair search; remaining factors of degree
// >= 3 are certified irreducible by reduction mod small primes.  Throws
// std::runtime_error for inputs whose irreducibility cannot be certified.
PolyFactorization factor_poly(const Poly& p);

struct PolyHash {
    std::size_t operator()(const Poly& p) const {
        std::size_t h = 0x2545f4914f6cdd1dULL;
        RatHash rh;
        for (const auto& q : p.coeffs()) h = h * 1099511628211ULL ^ rh(q);
        return h;
    }
};

}  // namespace reglab
