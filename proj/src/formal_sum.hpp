#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "rational.hpp"
#include "support.hpp"

namespace reglab {

// Exact rational-coefficient linear combination over an ordered generator
// type.  Zero coefficients are dropped on the fly.
template <typename Gen, typename Less = std::less<Gen>>
class FormalSum {
  public:
    using Map = std::map<Gen, Rat, Less>;

    FormalSum() = default;

    void add(const Gen& g, const Rat& coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = terms_.try_emplace(g, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    FormalSum& operator+=(const FormalSum& o) {
        for (const auto& [g, c] : o.terms_) add(g, c);
        return *this;
    }
    FormalSum& operator-=(const FormalSum& o) {
        for (const auto& [g, c] : o.terms_) add(g, -c);
        return *this;
    }
    FormalSum& operator*=(const Rat& q) {
        if (q == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [g, c] : terms_) c *= q;
        return *this;
    }
    friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
    friend FormalSum operator-(FormalSum a, const FormalSum& b) { return a -= b; }
    friend FormalSum operator*(FormalSum a, const Rat& q) { return a *= q; }
    FormalSum operator-() const {
        FormalSum out = *this;
        for (auto& [g, c] : out.terms_) c = -c;
        return out;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Map& terms() const { return terms_; }
    bool operator==(const FormalSum& o) const { return terms_ == o.terms_; }

    template <typename F>
    auto map_reduce(F&& f) const {
        using R = decltype(f(std::declval<const Gen&>()));
        R acc{};
        for (const auto& [g, c] : terms_) acc += to_double(c) * f(g);
        return acc;
    }

  private:
    Map terms_;
};

// Canonical key for complex-valued generators: quantised to a grid of pitch
// 1e-12 * 2^e anchored at the binary exponent of the larger component, so
// that numerically equal values collapse when large alternations are summed.
struct CpxKey {
    long long re_q;
    long long im_q;

    static constexpr double kTol = 1e-12;

    static CpxKey of(const Cpx& z) {
        double m = std::max({1.0, std::abs(z.real()), std::abs(z.imag())});
        int e = 0;
        std::frexp(m, &e);
        double grid = std::ldexp(kTol, e);
        return {static_cast<long long>(std::llround(z.real() / grid)),
                static_cast<long long>(std::llround(z.imag() / grid))};
    }
    auto operator<=>(const CpxKey&) const = default;
};

}  // namespace reglab
