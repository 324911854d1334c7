#include "rational_map.hpp"

namespace reglab {

RationalMapQ::RationalMapQ(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("rational map: zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(rat(1));
        return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
    }
    Rat lead = den_.leading();
    den_ = den_ * (1 / lead);
    num_ = num_ * (1 / lead);
}

std::optional<Rat> RationalMapQ::eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (d == 0) return std::nullopt;
    return num_.eval(x) / d;
}

Cpx RationalMapQ::eval(const Cpx& z) const { return num_.eval(z) / den_.eval(z); }

Cpx RationalMapQ::dlog(const Cpx& z) const {
    Cpx n = num_.eval(z), d = den_.eval(z);
    if (std::abs(n) == 0.0 || std::abs(d) == 0.0)
        throw singular_point("dlog evaluated on the divisor");
    return num_.derivative().eval(z) / n - den_.derivative().eval(z) / d;
}

RationalMapQ RationalMapQ::operator+(const RationalMapQ& o) const {
    return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
}
RationalMapQ RationalMapQ::operator-(const RationalMapQ& o) const {
    return {num_ * o.den_ - o.num_ * den_, den_ * o.den_};
}
RationalMapQ RationalMapQ::operator*(const RationalMapQ& o) const {
    return {num_ * o.num_, den_ * o.den_};
}
RationalMapQ RationalMapQ::operator/(const RationalMapQ& o) const {
    if (o.is_zero()) throw std::invalid_argument("rational map division by zero");
    return {num_ * o.den_, den_ * o.num_};
}

RationalMapQ RationalMapQ::derivative() const {
    return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
}

bool RationalMapQ::operator<(const RationalMapQ& o) const {
    int c = Poly::compare(num_, o.num_);
    if (c != 0) return c < 0;
    return Poly::compare(den_, o.den_) < 0;
}

int RationalMapQ::valuation(const std::optional<Rat>& x) const {
    if (num_.is_zero()) throw std::invalid_argument("valuation of the zero function");
    if (!x) return den_.degree() - num_.degree();
    Poly lin{-*x, rat(1)};
    auto mult = [&lin](Poly p) {
        int m = 0;
        while (!p.is_zero() && lin.divides(p)) {
            p = p.divmod(lin).first;
            ++m;
        }
        return m;
    };
    return mult(num_) - mult(den_);
}

std::string RationalMapQ::str() const {
    if (den_ == Poly::constant(rat(1))) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RationalMapC::RationalMapC(const RationalMapQ& q) {
    num_.clear();
    den_.clear();
    for (const auto& c : q.num().coeffs()) num_.emplace_back(to_double(c), 0.0);
    for (const auto& c : q.den().coeffs()) den_.emplace_back(to_double(c), 0.0);
    if (num_.empty()) num_.push_back(Cpx(0.0));
    if (den_.empty()) den_.push_back(Cpx(1.0));
}

Cpx RationalMapC::horner(const std::vector<Cpx>& c, const Cpx& z) {
    Cpx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Cpx RationalMapC::horner_d(const std::vector<Cpx>& c, const Cpx& z) {
    Cpx acc = 0.0;
    for (std::size_t i = c.size(); i-- > 1;) acc = acc * z + static_cast<double>(i) * c[i];
    return acc;
}

Cpx RationalMapC::eval(const Cpx& z) const { return horner(num_, z) / horner(den_, z); }

Cpx RationalMapC::dlog(const Cpx& z) const {
    Cpx n = horner(num_, z), d = horner(den_, z);
    if (std::abs(n) == 0.0 || std::abs(d) == 0.0)
        throw singular_point("dlog evaluated on the divisor");
    return horner_d(num_, z) / n - horner_d(den_, z) / d;
}

}  // namespace reglab
