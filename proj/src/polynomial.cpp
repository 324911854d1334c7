#include "polynomial.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace reglab {

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monomial(const Rat& q, int deg) {
    std::vector<Rat> c(deg + 1, rat(0));
    c[deg] = q;
    return Poly{std::move(c)};
}

const Rat& Poly::coeff(int i) const {
    static const Rat zero = 0;
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[i];
}

Rat Poly::eval(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Cpx Poly::eval(const Cpx& x) const {
    Cpx acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * rat(static_cast<long>(i));
    return Poly{std::move(d)};
}

Poly Poly::operator-() const {
    std::vector<Rat> d(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) d[i] = -c_[i];
    return Poly{std::move(d)};
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rat> d(std::max(c_.size(), o.c_.size()), rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) d[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) d[i] += o.c_[i];
    return Poly{std::move(d)};
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rat> d(c_.size() + o.c_.size() - 1, rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) d[i + j] += c_[i] * o.c_[j];
    return Poly{std::move(d)};
}

Poly Poly::operator*(const Rat& q) const {
    std::vector<Rat> d(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) d[i] = c_[i] * q;
    return Poly{std::move(d)};
}

std::pair<Poly, Poly> Poly::divmod(const Poly& o) const {
    if (o.is_zero()) throw std::invalid_argument("polynomial division by zero");
    std::vector<Rat> rem = c_;
    int dn = o.degree();
    int dr = degree();
    if (dr < dn) return {Poly{}, *this};
    std::vector<Rat> quo(dr - dn + 1, rat(0));
    while (dr >= dn) {
        Rat q = rem[dr] / o.leading();
        int shift = dr - dn;
        quo[shift] = q;
        for (int i = 0; i <= dn; ++i) rem[shift + i] -= q * o.coeff(i);
        --dr;
        while (dr >= 0 && rem[dr] == 0) --dr;
    }
    rem.resize(dr + 1);
    return {Poly{std::move(quo)}, Poly{std::move(rem)}};
}

bool Poly::divides(const Poly& o) const { return o.divmod(*this).second.is_zero(); }

Poly Poly::monic() const {
    if (is_zero()) return {};
    return *this * (1 / leading());
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rat& q = coeff(i);
        if (q == 0) continue;
        Rat a = q;
        if (first) {
            if (q < 0) {
                os << "-";
                a = -q;
            }
        } else {
            os << (q > 0 ? " + " : " - ");
            a = q > 0 ? q : Rat(-q);
        }
        if (i == 0 || a != 1) os << to_string(a);
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

int Poly::compare(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (int i = a.degree(); i >= 0; --i) {
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i) ? -1 : 1;
    }
    return 0;
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x.divmod(y).second;
        x = y;
        y = r;
    }
    return x.is_zero() ? x : x.monic();
}

namespace {

// integer content-scaled coefficients (primitive integer polynomial)
std::vector<Int> primitive_integer(const Poly& p) {
    Int den_lcm = 1;
    for (const auto& q : p.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Int> ic;
    ic.reserve(p.coeffs().size());
    for (const auto& q : p.coeffs()) ic.push_back(q.get_num() * (den_lcm / q.get_den()));
    Int g = 0;
    for (const auto& z : ic) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    if (g != 0)
        for (auto& z : ic) z /= g;
    return ic;
}

std::vector<Int> divisors_of(Int n) {
    n = abs(n);
    std::vector<Int> divs;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            divs.push_back(d);
            if (d * d != n) divs.push_back(n / d);
        }
    }
    return divs;
}

// rational roots of a primitive integer polynomial
std::vector<Rat> rational_roots(const std::vector<Int>& ic) {
    std::vector<Rat> roots;
    if (ic.empty()) return roots;
    int lo = 0;
    while (lo < static_cast<int>(ic.size()) && ic[lo] == 0) ++lo;
    if (lo == static_cast<int>(ic.size())) return roots;
    if (lo > 0) roots.push_back(rat(0));
    std::vector<Int> c(ic.begin() + lo, ic.end());
    if (c.size() <= 1) return roots;
    auto ps = divisors_of(c.front());
    auto qs = divisors_of(c.back());
    auto is_root = [&c](const Rat& x) {
        Rat acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Rat(*it);
        return acc == 0;
    };
    std::vector<Rat> found;
    for (const auto& p : ps)
        for (const auto& q : qs)
            for (int s : {1, -1}) {
                Rat x(s * p, q);
                x.canonicalize();
                if (std::find(found.begin(), found.end(), x) == found.end() && is_root(x)) found.push_back(x);
            }
    roots.insert(roots.end(), found.begin(), found.end());
    return roots;
}

// quadratic splitting over Q via discriminant
std::optional<std::pair<Poly, Poly>> split_quadratic(const Poly& p) {
    Rat a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
    Rat disc = b * b - 4 * a * c;
    if (disc < 0) return std::nullopt;
    Int num = disc.get_num(), den = disc.get_den();
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    Rat sq(sn, sd);
    sq.canonicalize();
    Rat r1 = (-b + sq) / (2 * a), r2 = (-b - sq) / (2 * a);
    return std::make_pair(Poly{-r1, rat(1)}, Poly{-r2, rat(1)});
}

// quartic splitting into two integer quadratics (monic primitive input)
std::optional<std::pair<Poly, Poly>> split_quartic(const Poly& p) {
    // work with the monic rational quartic x^4+a3 x^3+a2 x^2+a1 x+a0; search
    // factors (x^2+px+q)(x^2+rx+s) with q*s = a0 over divisor candidates of a
    // scaled constant term.
    Rat a3 = p.coeff(3), a2 = p.coeff(2), a1 = p.coeff(1), a0 = p.coeff(0);
    // clear denominators by x -> x/m with m = lcm of denominators: y^4 + m a3 y^3 + ...
    Int m = 1;
    for (const Rat& q : {a3, a2, a1, a0}) mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), q.get_den().get_mpz_t());
    Rat M(m);
    Rat b3 = a3 * M, b2 = a2 * M * M, b1 = a1 * M * M * M, b0 = a0 * M * M * M * M;
    if (b3.get_den() != 1 || b2.get_den() != 1 || b1.get_den() != 1 || b0.get_den() != 1)
        return std::nullopt;  // cannot happen, m clears everything
    Int B3 = b3.get_num(), B2 = b2.get_num(), B1 = b1.get_num(), B0 = b0.get_num();
    if (B0 == 0) return std::nullopt;  // zero root handled earlier
    for (const auto& qd : divisors_of(B0)) {
        for (int s1 : {1, -1}) {
            Int q = s1 * qd;
            if (q == 0 || B0 % q != 0) continue;
            Int s = B0 / q;
            // p + r = B3 ; q + s + p r = B2 ; p s + q r = B1
            // from the last two: p r = B2 - q - s and p s + q r = B1
            Int pr = B2 - q - s;
            // solve p + r = B3, p*r = pr  ->  p, r roots of z^2 - B3 z + pr
            Int disc = B3 * B3 - 4 * pr;
            if (disc < 0) continue;
            Int sd;
            mpz_sqrt(sd.get_mpz_t(), disc.get_mpz_t());
            if (sd * sd != disc) continue;
            for (int sign : {1, -1}) {
                Int twop = B3 + sign * sd;
                if (twop % 2 != 0) continue;
                Int pp = twop / 2;
                Int rr = B3 - pp;
                if (pp * s + q * rr != B1) continue;
                // undo the scaling x = y/m
                Poly f{Rat(q) / (M * M), Rat(pp) / M, rat(1)};
                Poly g{Rat(s) / (M * M), Rat(rr) / M, rat(1)};
                return std::make_pair(f, g);
            }
        }
    }
    return std::nullopt;
}

// irreducibility certificate: irreducible mod p (p not dividing leading coeff)
// implies irreducible over Q.  Dense polynomial arithmetic mod small p.
bool irreducible_mod_p(const std::vector<Int>& ic, long p) {
    auto mod = [&](const Int& z) {
        long r = static_cast<long>(mpz_fdiv_ui(z.get_mpz_t(), p));
        return r;
    };
    std::vector<long> f;
    f.reserve(ic.size());
    for (const auto& z : ic) f.push_back(mod(z));
    while (!f.empty() && f.back() == 0) f.pop_back();
    if (static_cast<int>(f.size()) != static_cast<int>(ic.size())) return false;  // degree dropped
    int n = static_cast<int>(f.size()) - 1;
    if (n <= 0) return false;

    auto mulmod = [&](std::vector<long> a, const std::vector<long>& b) {
        std::vector<long> c(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
        // reduce mod f
        long inv_lead = 1;
        {  // modular inverse of f.back() via Fermat
            long base = f.back() % p, e = p - 2, acc = 1;
            while (e) {
                if (e & 1) acc = acc * base % p;
                base = base * base % p;
                e >>= 1;
            }
            inv_lead = acc;
        }
        while (static_cast<int>(c.size()) - 1 >= n) {
            long q = c.back() % p * inv_lead % p;
            int shift = static_cast<int>(c.size()) - 1 - n;
            for (int i = 0; i <= n; ++i) c[shift + i] = ((c[shift + i] - q * f[i]) % p + p) % p;
            while (!c.empty() && c.back() == 0) c.pop_back();
        }
        if (c.empty()) c.push_back(0);
        return c;
    };
    auto powmod_x = [&](Int e) {
        std::vector<long> result{1};
        std::vector<long> base{0, 1};
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) result = mulmod(result, base);
            base = mulmod(base, base);
            e >>= 1;
        }
        return result;
    };
    auto poly_gcd_deg = [&](std::vector<long> a, std::vector<long> b) {
        auto deg = [](const std::vector<long>& v) { return static_cast<int>(v.size()) - 1; };
        auto norm = [](std::vector<long>& v) {
            while (!v.empty() && v.back() == 0) v.pop_back();
        };
        norm(a);
        norm(b);
        while (!b.empty()) {
            // a mod b
            long inv = 1;
            {
                long base = b.back() % p, e = p - 2, acc = 1;
                while (e) {
                    if (e & 1) acc = acc * base % p;
                    base = base * base % p;
                    e >>= 1;
                }
                inv = acc;
            }
            while (deg(a) >= deg(b) && !a.empty()) {
                long q = a.back() * inv % p;
                int shift = deg(a) - deg(b);
                for (int i = 0; i <= deg(b); ++i) a[shift + i] = ((a[shift + i] - q * b[i]) % p + p) % p;
                norm(a);
            }
            std::swap(a, b);
        }
        return deg(a);
    };

    // x^(p^n) == x mod f, and gcd(x^(p^d) - x, f) trivial for d | n, d < n
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        Int e = int_pow(Int(p), d);
        auto xp = powmod_x(e);
        // xp - x
        std::vector<long> g = xp;
        if (g.size() < 2) g.resize(2, 0);
        g[1] = ((g[1] - 1) % p + p) % p;
        std::vector<long> fv(f.begin(), f.end());
        if (poly_gcd_deg(g, fv) != 0) return false;
    }
    Int e = int_pow(Int(p), n);
    auto xp = powmod_x(e);
    std::vector<long> g = xp;
    if (g.size() < 2) g.resize(2, 0);
    g[1] = ((g[1] - 1) % p + p) % p;
    while (!g.empty() && g.back() == 0) g.pop_back();
    return g.empty();
}

void factor_monic(const Poly& input, std::map<std::vector<Rat>, std::pair<Poly, int>>& out);

void record_factor(const Poly& f, std::map<std::vector<Rat>, std::pair<Poly, int>>& out) {
    Poly m = f.monic();
    auto key = m.coeffs();
    auto it = out.find(key);
    if (it == out.end())
        out.emplace(key, std::make_pair(m, 1));
    else
        it->second.second += 1;
}

void factor_monic(const Poly& input, std::map<std::vector<Rat>, std::pair<Poly, int>>& out) {
    Poly p = input;
    if (p.degree() <= 0) return;
    if (p.degree() == 1) {
        record_factor(p, out);
        return;
    }
    auto ic = primitive_integer(p);
    auto roots = rational_roots(ic);
    if (!roots.empty()) {
        for (const auto& r : roots) {
            Poly lin{-r, rat(1)};
            while (lin.divides(p)) {
                record_factor(lin, out);
                p = p.divmod(lin).first;
            }
        }
        factor_monic(p, out);
        return;
    }
    if (p.degree() <= 1) {
        if (p.degree() == 1) record_factor(p, out);
        return;
    }
    if (p.degree() == 2) {
        if (auto sp = split_quadratic(p)) {
            record_factor(sp->first, out);
            record_factor(sp->second, out);
        } else {
            record_factor(p, out);
        }
        return;
    }
    if (p.degree() == 4) {
        if (auto sp = split_quartic(p)) {
            factor_monic(sp->first, out);
            factor_monic(sp->second, out);
            return;
        }
    }
    // no rational roots; try the mod-p irreducibility certificate
    static const long primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                  47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103};
    auto icp = primitive_integer(p);
    for (long q : primes) {
        if (mpz_divisible_ui_p(icp.back().get_mpz_t(), q)) continue;
        if (irreducible_mod_p(icp, q)) {
            record_factor(p, out);
            return;
        }
    }
    throw std::runtime_error("factor_poly: cannot certify factorization of degree-" +
                             std::to_string(p.degree()) + " polynomial " + p.str());
}

}  // namespace

PolyFactorization factor_poly(const Poly& p) {
    if (p.is_zero()) throw std::invalid_argument("factor_poly: zero polynomial");
    PolyFactorization out;
    out.unit = p.leading();
    std::map<std::vector<Rat>, std::pair<Poly, int>> acc;
    factor_monic(p.monic(), acc);
    for (auto& [key, val] : acc) out.factors.push_back(val);
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return Poly::compare(a.first, b.first) < 0; });
    return out;
}

}  // namespace reglab
