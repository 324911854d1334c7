#pragma once

#include <variant>

#include "formal_sum.hpp"
#include "rational_map.hpp"

namespace reglab {

// Multiplicative symbols: elements of F* tensor Q stored as factored
// exponent lists on prime generators.  Torsion (signs, roots of unity) is
// discarded because the coefficients are rational.
//
// Generators:
//   F = Q     : positive rational primes
//   F = Q(t)  : rational primes plus monic irreducible polynomials,
//               ordered primes-first, then by (degree, coefficients)

struct QtGen {
    std::variant<Int, Poly> v;

    bool is_prime() const { return v.index() == 0; }
    const Int& prime() const { return std::get<0>(v); }
    const Poly& poly() const { return std::get<1>(v); }

    bool operator<(const QtGen& o) const {
        if (v.index() != o.v.index()) return v.index() < o.v.index();
        if (is_prime()) return prime() < o.prime();
        return Poly::compare(poly(), o.poly()) < 0;
    }
    bool operator==(const QtGen& o) const {
        if (v.index() != o.v.index()) return false;
        return is_prime() ? prime() == o.prime() : poly() == o.poly();
    }
    std::string str() const { return is_prime() ? prime().get_str() : poly().str(); }
};

template <typename Gen>
class MultSymbol {
  public:
    using Map = std::map<Gen, Rat>;

    void add(const Gen& g, const Rat& e) {
        if (e == 0) return;
        auto [it, inserted] = exps_.try_emplace(g, e);
        if (!inserted) {
            it->second += e;
            if (it->second == 0) exps_.erase(it);
        }
    }
    MultSymbol& operator*=(const MultSymbol& o) {  // group law in F* tensor Q
        for (const auto& [g, e] : o.exps_) add(g, e);
        return *this;
    }
    MultSymbol inverse() const {
        MultSymbol out;
        for (const auto& [g, e] : exps_) out.exps_.emplace(g, -e);
        return out;
    }
    bool is_trivial() const { return exps_.empty(); }
    const Map& exps() const { return exps_; }
    bool operator==(const MultSymbol& o) const { return exps_ == o.exps_; }

  private:
    Map exps_;
};

using MultSymbolQ = MultSymbol<Int>;     // generator = positive prime
using MultSymbolQt = MultSymbol<QtGen>;  // primes + monic irreducibles

// exact factorizations (unit part discarded); throw on zero input
MultSymbolQ factor(const Rat& x);
MultSymbolQt factor(const RationalMapQ& f);

// integer factorization helper (trial division + Pollard rho)
std::vector<std::pair<Int, int>> factor_integer(Int n);

// ---------------------------------------------------------------------------
// Wedge symbols: Lambda^n F* tensor Q, monomials = sorted distinct generators
// ---------------------------------------------------------------------------

template <typename Gen>
using WedgeMonomial = std::vector<Gen>;  // sorted, distinct

template <typename Gen>
class WedgeSymbol {
  public:
    using Sum = FormalSum<WedgeMonomial<Gen>>;

    WedgeSymbol() = default;
    explicit WedgeSymbol(int degree) : degree_(degree) {}

    int degree() const { return degree_; }
    bool is_zero() const { return sum_.is_zero(); }
    const Sum& sum() const { return sum_; }
    bool operator==(const WedgeSymbol& o) const { return degree_ == o.degree_ && sum_ == o.sum_; }

    WedgeSymbol& operator+=(const WedgeSymbol& o) {
        if (degree_ != o.degree_ && !o.is_zero() && !is_zero())
            throw std::invalid_argument("wedge symbols of different degrees");
        if (is_zero()) degree_ = o.degree_;
        sum_ += o.sum_;
        return *this;
    }
    WedgeSymbol operator-() const {
        WedgeSymbol out = *this;
        out.sum_ = -out.sum_;
        return out;
    }
    WedgeSymbol& operator*=(const Rat& q) {
        sum_ *= q;
        return *this;
    }

    // insert a monomial given in arbitrary order; sorts, tracks the sign,
    // drops monomials with a repeated generator
    void add_monomial(WedgeMonomial<Gen> mono, Rat coeff) {
        int sign = 1;
        for (std::size_t i = 0; i + 1 < mono.size(); ++i)
            for (std::size_t j = 0; j + 1 < mono.size() - i; ++j)
                if (mono[j + 1] < mono[j]) {
                    std::swap(mono[j], mono[j + 1]);
                    sign = -sign;
                }
        for (std::size_t i = 0; i + 1 < mono.size(); ++i)
            if (mono[i] == mono[i + 1]) return;
        sum_.add(mono, sign > 0 ? coeff : Rat(-coeff));
    }

    // wedge product of factored symbols, distributed over the generators
    static WedgeSymbol wedge(const std::vector<MultSymbol<Gen>>& factors) {
        WedgeSymbol out(static_cast<int>(factors.size()));
        std::vector<std::pair<Gen, Rat>> current;
        build(factors, 0, current, rat(1), out);
        return out;
    }

  private:
    static void build(const std::vector<MultSymbol<Gen>>& factors, std::size_t slot,
                      std::vector<std::pair<Gen, Rat>>& current, Rat coeff, WedgeSymbol& out) {
        if (slot == factors.size()) {
            WedgeMonomial<Gen> mono;
            mono.reserve(current.size());
            Rat c = coeff;
            for (const auto& [g, e] : current) {
                mono.push_back(g);
                c *= e;
            }
            out.add_monomial(std::move(mono), c);
            return;
        }
        for (const auto& [g, e] : factors[slot].exps()) {
            current.emplace_back(g, e);
            build(factors, slot + 1, current, coeff, out);
            current.pop_back();
        }
    }

    int degree_ = 0;
    Sum sum_;
};

using WedgeQ = WedgeSymbol<Int>;
using WedgeQt = WedgeSymbol<QtGen>;

// canonical JSON form { "gens": [...], "exps": [...] } for multiplicative
// symbols, used by reports and golden tests
std::string symbol_to_json(const MultSymbolQ& s);
std::string symbol_to_json(const MultSymbolQt& s);

}  // namespace reglab
