#pragma once

#include <optional>

#include "polynomial.hpp"
#include "support.hpp"

namespace reglab {

// Rational function in one variable over Q, kept in reduced form with a
// monic denominator.
class RationalMapQ {
  public:
    RationalMapQ() : num_(Poly::constant(rat(0))), den_(Poly::constant(rat(1))) {}
    RationalMapQ(Poly num, Poly den);
    static RationalMapQ constant(const Rat& q) {
        return RationalMapQ(Poly::constant(q), Poly::constant(rat(1)));
    }
    static RationalMapQ variable() { return RationalMapQ(Poly::variable(), Poly::constant(rat(1))); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() <= 0; }

    // value in P^1(Q): nullopt = infinity
    std::optional<Rat> eval(const Rat& x) const;
    Cpx eval(const Cpx& z) const;
    Cpx dlog(const Cpx& z) const;  // f'(z)/f(z)

    RationalMapQ operator+(const RationalMapQ& o) const;
    RationalMapQ operator-(const RationalMapQ& o) const;
    RationalMapQ operator*(const RationalMapQ& o) const;
    RationalMapQ operator/(const RationalMapQ& o) const;
    RationalMapQ derivative() const;
    bool operator==(const RationalMapQ& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator<(const RationalMapQ& o) const;

    // order of vanishing at x (negative at poles); nullopt handled at infinity
    int valuation(const std::optional<Rat>& x) const;

    std::string str() const;

  private:
    Poly num_, den_;
};

// Rational function with complex double coefficients (numeric evaluation only).
class RationalMapC {
  public:
    RationalMapC() = default;
    RationalMapC(std::vector<Cpx> num, std::vector<Cpx> den)
        : num_(std::move(num)), den_(std::move(den)) {}
    explicit RationalMapC(const RationalMapQ& q);

    Cpx eval(const Cpx& z) const;
    Cpx dlog(const Cpx& z) const;
    const std::vector<Cpx>& num() const { return num_; }
    const std::vector<Cpx>& den() const { return den_; }

  private:
    static Cpx horner(const std::vector<Cpx>& c, const Cpx& z);
    static Cpx horner_d(const std::vector<Cpx>& c, const Cpx& z);
    std::vector<Cpx> num_{Cpx(0.0)};
    std::vector<Cpx> den_{Cpx(1.0)};
};

}  // namespace reglab
