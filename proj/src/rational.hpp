#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>

namespace reglab {

// Exact rational numbers.  mpq_class already keeps values in lowest terms
// with a positive denominator, which is exactly the invariant we need.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_pow(const Rat& base, long e) {
    Rat out = 1;
    Rat b = base;
    long n = e < 0 ? -e : e;
    while (n) {
        if (n & 1) out *= b;
        b *= b;
        n >>= 1;
    }
    if (e < 0) out = 1 / out;
    return out;
}

inline Int int_pow(Int base, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

inline Rat factorial(unsigned long n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rat(f);
}

inline Rat binomial(unsigned long n, unsigned long k) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rat(b);
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

inline double to_double(const Rat& q) { return q.get_d(); }

struct RatHash {
    std::size_t operator()(const Rat& q) const {
        std::size_t h = 1469598103934665603ULL;
        auto roll = [&h](const mpz_srcptr z) {
            h ^= static_cast<std::size_t>(mpz_size(z)) * 0x9e3779b97f4a7c15ULL;
            for (std::size_t i = 0; i < mpz_size(z); ++i) {
                h ^= mpz_getlimbn(z, i);
                h *= 1099511628211ULL;
            }
            h ^= static_cast<std::size_t>(mpz_sgn(z)) + 0x517cc1b727220a95ULL;
        };
        roll(q.get_num().get_mpz_t());
        roll(q.get_den().get_mpz_t());
        return h;
    }
};

}  // namespace reglab
