#include "numberfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace reglab {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool squarefree(long n) {
    if (n < 0) n = -n;
    for (long d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0) return false;
    return true;
}

double log_of_int(const Int& z) {
    long e = 0;
    double d = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log(std::abs(d)) + e * std::log(2.0);
}

}  // namespace

bool is_fundamental_discriminant(long D) {
    if (D == 1 || D == 0) return false;
    long m4 = ((D % 4) + 4) % 4;
    if (m4 == 1) return squarefree(D);
    if (m4 == 0) {
        long m = D / 4;
        long mm4 = ((m % 4) + 4) % 4;
        return squarefree(m) && (mm4 == 2 || mm4 == 3);
    }
    return false;
}

int kronecker(long D, long n) {
    Int a(D), b(n);
    return mpz_kronecker(a.get_mpz_t(), b.get_mpz_t());
}

// ---------------------------------------------------------------------------
// class numbers
// ---------------------------------------------------------------------------

long class_number_reduced_forms(long D) {
    if (D >= 0) throw std::invalid_argument("reduced-form count needs D < 0");
    long count = 0;
    for (long a = 1; 3 * a * a <= -D; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - D;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            long g = std::__gcd(std::__gcd(std::abs(a), std::abs(b)), std::abs(c));
            if (g != 1) continue;
            ++count;
        }
    }
    return count;
}

namespace {

long isqrt_floor(long n) {
    long s = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s;
}

struct RForm {
    long a, b, c;
    bool operator<(const RForm& o) const {
        return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
    }
    bool operator==(const RForm& o) const { return a == o.a && b == o.b && c == o.c; }
};

bool is_reduced_indefinite(long D, long a, long b, long c) {
    if (a == 0 || c == 0) return false;
    long s = isqrt_floor(D);
    // 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b
    if (b <= 0 || b > s) return false;
    if (b == s && s * s == D) return false;
    double sd = std::sqrt(static_cast<double>(D));
    double t = 2.0 * std::abs(a);
    return sd - b < t && t < sd + b;
}

RForm rho_indefinite(long D, const RForm& f) {
    // rho(a,b,c) = (c, r, (r^2 - D)/(4c)) with r = -b mod 2c in the window
    long c2 = 2 * std::abs(f.c);
    long s = isqrt_floor(D);
    long target;
    if (std::abs(f.c) > s)
        target = -std::abs(f.c) + 1;  // -|c| < r <= |c|
    else
        target = s - c2 + 1;  // sqrt(D) - 2|c| < r < sqrt(D)
    long r = -f.b % c2;
    if (r < target) r += ((target - r) / c2 + 1) * c2;
    while (r - c2 >= target) r -= c2;
    long cc = (r * r - D) / (4 * f.c);
    return {f.c, r, cc};
}

}  // namespace

long narrow_class_number_cycles(long D) {
    if (D <= 0) throw std::invalid_argument("cycle count needs D > 0");
    std::set<RForm> forms;
    long s = isqrt_floor(D);
    for (long b = 1; b <= s; ++b) {
        if ((b - D) % 2 != 0) continue;
        long num = b * b - D;  // negative
        for (long a2 = 1; a2 <= s + b; ++a2) {
            if (num % (4LL * a2) != 0 && num % (-4LL * a2) != 0) continue;
            for (long a : {a2, -a2}) {
                if (num % (4 * a) != 0) continue;
                long c = num / (4 * a);
                if (!is_reduced_indefinite(D, a, b, c)) continue;
                long g = std::__gcd(std::__gcd(std::abs(a), std::abs(b)), std::abs(c));
                if (g != 1) continue;
                forms.insert({a, b, c});
            }
        }
    }
    long cycles = 0;
    std::set<RForm> seen;
    for (const auto& f0 : forms) {
        if (seen.count(f0)) continue;
        ++cycles;
        RForm f = f0;
        for (int guard = 0; guard < 100000; ++guard) {
            seen.insert(f);
            f = rho_indefinite(D, f);
            if (f == f0 || seen.count(f)) break;
        }
    }
    return cycles;
}

std::optional<std::pair<Int, Int>> pell_search(long D, const Int& y_bound) {
    for (Int y = 1; y <= y_bound; ++y) {
        for (int sign : {1, -1}) {
            Int x2 = Int(D) * y * y + 4 * sign;
            if (x2 < 0) continue;
            Int x;
            mpz_sqrt(x.get_mpz_t(), x2.get_mpz_t());
            if (x * x == x2) return std::make_pair(x, y);
        }
    }
    return std::nullopt;
}

namespace {

// fundamental unit by the continued fraction of (P0 + sqrt(D))/Q0
void fundamental_unit(long D, Int& out_x, Int& out_y, int& out_norm) {
    long s;
    Int omega_p, omega_q;
    if (((D % 4) + 4) % 4 == 1) {
        omega_p = 1;
        omega_q = 2;
    } else {
        omega_p = 0;
        omega_q = 2;  // (0 + sqrt(D))/2 = sqrt(D/4)
    }
    s = isqrt_floor(D);
    // continued fraction of alpha = (P + sqrt(D))/Q with Q | D - P^2
    Int P = omega_p, Q = omega_q;
    std::map<std::pair<long, long>, int> seen;
    std::vector<Int> as;
    std::vector<std::pair<Int, Int>> states;
    int cycle_start = -1;
    for (int k = 0; k < 100000; ++k) {
        auto key = std::make_pair(static_cast<long>(P.get_si()), static_cast<long>(Q.get_si()));
        auto it = seen.find(key);
        if (it != seen.end()) {
            cycle_start = it->second;
            break;
        }
        seen[key] = k;
        states.emplace_back(P, Q);
        Int a = (P + s) / Q;  // floor for Q > 0
        as.push_back(a);
        Int Pn = a * Q - P;
        Int Qn = (Int(D) - Pn * Pn) / Q;
        P = Pn;
        Q = Qn;
    }
    if (cycle_start < 0) throw std::runtime_error("fundamental_unit: no period found");
    // product of [[a_i, 1], [1, 0]] over the cycle
    Int m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    for (std::size_t i = cycle_start; i < as.size(); ++i) {
        Int n00 = m00 * as[i] + m01;
        Int n10 = m10 * as[i] + m11;
        m01 = m00;
        m11 = m10;
        m00 = n00;
        m10 = n10;
    }
    // the cycle fixes alpha_c = (P_c + sqrt(D))/Q_c; the unit is
    // eps = m10 * alpha_c + m11 = (m10 P_c + m11 Q_c + m10 sqrt(D)) / Q_c
    Int Pc = states[cycle_start].first, Qc = states[cycle_start].second;
    Int num_x = 2 * (m10 * Pc + m11 * Qc);
    Int num_y = 2 * m10;
    if (num_x % Qc != 0 || num_y % Qc != 0)
        throw std::runtime_error("fundamental_unit: non-integral unit coordinates");
    out_x = num_x / Qc;
    out_y = num_y / Qc;
    Int n4 = out_x * out_x - Int(D) * out_y * out_y;
    if (n4 == 4)
        out_norm = 1;
    else if (n4 == -4)
        out_norm = -1;
    else
        throw std::runtime_error("fundamental_unit: norm check failed");
    if (out_x < 0) {
        out_x = -out_x;
        out_y = -out_y;
    }
    if (out_y < 0) out_y = -out_y;  // take eps > 1
}

}  // namespace

QuadField field_data(long D) {
    if (!is_fundamental_discriminant(D))
        throw std::invalid_argument("field_data: not a fundamental discriminant");
    if (std::abs(D) > 1000000) throw std::invalid_argument("field_data: |D| too large");
    QuadField F;
    F.D = D;
    if (D < 0) {
        F.r1 = 0;
        F.r2 = 1;
        F.w = (D == -3) ? 6 : (D == -4) ? 4 : 2;
        F.h = class_number_reduced_forms(D);
        F.regulator = 1.0;
        F.eps_norm = 1;
    } else {
        F.r1 = 2;
        F.r2 = 0;
        F.w = 2;
        fundamental_unit(D, F.eps_x, F.eps_y, F.eps_norm);
        double eps = 0.5 * (F.eps_x.get_d() + F.eps_y.get_d() * std::sqrt(static_cast<double>(D)));
        if (F.eps_x.fits_slong_p() && F.eps_y.fits_slong_p())
            F.regulator = std::log(eps);
        else
            F.regulator = std::log(0.5) +
                          log_of_int(F.eps_x) +
                          std::log1p(std::exp(log_of_int(F.eps_y) + 0.5 * std::log((double)D) -
                                              log_of_int(F.eps_x)));
        long hplus = narrow_class_number_cycles(D);
        F.h = (F.eps_norm == -1) ? hplus : hplus / 2;
    }
    return F;
}

// ---------------------------------------------------------------------------
// imaginary quadratic form arithmetic
// ---------------------------------------------------------------------------

QForm principal_form(long D) {
    long m4 = ((D % 4) + 4) % 4;
    if (m4 == 1) return {1, 1, (1 - D) / 4};
    return {1, 0, -D / 4};
}

QForm reduce_form(QForm f) {
    for (int guard = 0; guard < 100000; ++guard) {
        // normalize: -a < b <= a
        if (f.b > f.a || f.b <= -f.a) {
            Int two_a = 2 * f.a;
            Int r = f.b % two_a;
            if (r > f.a) r -= two_a;
            if (r <= -f.a) r += two_a;
            Int k = (f.b - r) / two_a;
            f.c = f.c - ((f.b + r) / 2) * k;
            f.b = r;
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        return f;
    }
    throw std::runtime_error("reduce_form: no convergence");
}

QForm compose_forms(const QForm& f, const QForm& g) {
    // united-forms composition: replace g by an equivalent form whose leading
    // coefficient is coprime to f.a, then glue by CRT
    Int D = f.b * f.b - 4 * f.a * f.c;
    Int a1 = f.a, b1 = f.b;
    Int a2 = g.a, b2 = g.b, c2 = g.c;
    Int d;
    mpz_gcd(d.get_mpz_t(), a1.get_mpz_t(), a2.get_mpz_t());
    if (d != 1) {
        // find (x, y) with gcd(g(x, y), a1) = 1; a primitive form represents
        // values coprime to any fixed modulus
        bool found = false;
        for (long x = 0; x <= 30 && !found; ++x) {
            for (long y = -30; y <= 30 && !found; ++y) {
                if (std::__gcd(x, std::abs(y)) != 1) continue;
                Int m = a2 * x * x + b2 * x * y + c2 * y * y;
                if (m == 0) continue;
                Int gg;
                mpz_gcd(gg.get_mpz_t(), m.get_mpz_t(), a1.get_mpz_t());
                if (gg == 1) {
                    // complete (x, y) to a unimodular matrix [[x, r], [y, s]]
                    Int gxy, s0, r0;
                    Int xi(x), yi(y);
                    mpz_gcdext(gxy.get_mpz_t(), s0.get_mpz_t(), r0.get_mpz_t(), xi.get_mpz_t(),
                               yi.get_mpz_t());
                    // x s - r y = 1 with s = s0, r = -r0
                    Int s = s0, r = -r0;
                    Int A = m;
                    Int B = 2 * (a2 * xi * r + c2 * yi * s) + b2 * (xi * s + r * yi);
                    Int C = a2 * r * r + b2 * r * s + c2 * s * s;
                    a2 = A;
                    b2 = B;
                    c2 = C;
                    found = true;
                }
            }
        }
        if (!found) throw std::runtime_error("compose_forms: no coprime representative found");
    }
    // CRT: B = b1 mod 2a1, B = b2 mod 2a2 (consistent since b1, b2 have the
    // parity of D)
    Int t_num = (b2 - b1) / 2;
    Int inv, gg, dummy;
    mpz_gcdext(gg.get_mpz_t(), inv.get_mpz_t(), dummy.get_mpz_t(), a1.get_mpz_t(), a2.get_mpz_t());
    // gg == 1
    Int t = (t_num * inv) % a2;
    Int B = b1 + 2 * a1 * t;
    Int a3 = a1 * a2;
    Int mod = 2 * a3;
    B %= mod;
    if (B < 0) B += mod;
    Int c3num = B * B - D;
    if (c3num % (4 * a3) != 0) throw std::runtime_error("compose_forms: congruence failure");
    return reduce_form({a3, B, c3num / (4 * a3)});
}

// ---------------------------------------------------------------------------
// prime ideals and valuations
// ---------------------------------------------------------------------------

namespace {

std::optional<PrimeIdeal> prime_above(long D, long p) {
    int chi = kronecker(D, p);
    if (chi == -1) return std::nullopt;  // inert
    PrimeIdeal P;
    P.p = p;
    P.f = 1;
    P.ramified = (chi == 0);
    // b with b^2 = D mod 4p and b = D mod 2
    for (long b = 0; b < 4 * p; ++b) {
        if (((b - D) % 2 + 2) % 2 != 0) continue;
        if (((b * b - D) % (4 * p) + 4 * p) % (4 * p) == 0) {
            P.b = b;
            return P;
        }
    }
    return std::nullopt;
}

QForm ideal_form(long D, const PrimeIdeal& P) { return reduce_form({Int(P.p), P.b, (P.b * P.b - D) / (4 * P.p)}); }

QForm inverse_class(const QForm& f) { return reduce_form({f.a, -f.b, f.c}); }

}  // namespace

int valuation(const QuadElem& alpha, const PrimeIdeal& P, long D) {
    if (alpha.x == 0 && alpha.y == 0) throw std::invalid_argument("valuation of zero");
    if (P.ramified) {
        // P is the only prime above p and N(P) = p, so v_P = v_p(N(alpha))
        Int n4 = alpha.x * alpha.x - Int(D) * alpha.y * alpha.y;
        int v = 0;
        while (n4 % P.p == 0) {
            n4 /= P.p;
            ++v;
        }
        return P.p == 2 ? v - 2 : v;
    }
    // split case: alpha in P^k  <=>  x = y b_k (mod 2 p^k), b_k^2 = D (mod 4 p^k)
    Int pk = 1;
    Int bk = P.b;
    int k = 0;
    while (true) {
        Int pk_next = pk * P.p;
        // lift: b^2 = D mod 4 p^{k+1}, b = bk mod 2 p^k (search the p lifts)
        Int found = -1;
        for (long j = 0; j < P.p * 2; ++j) {
            Int cand = bk + j * 2 * pk;
            Int rem = (cand * cand - D) % (4 * pk_next);
            if (rem < 0) rem += 4 * pk_next;
            if (rem == 0) {
                found = cand;
                break;
            }
        }
        if (found < 0) return k;  // no deeper power divides (ramified saturation)
        bk = found;
        pk = pk_next;
        Int diff = (alpha.x - alpha.y * bk) % (2 * pk);
        if (diff != 0) return k;
        ++k;
        if (k > 4096) throw std::runtime_error("valuation: runaway");
    }
}

// ---------------------------------------------------------------------------
// weight-one complex
// ---------------------------------------------------------------------------

namespace {

// integer HNF basis (row style, nonnegative entries) of the lattice spanned
// by the given vectors; returns a square basis (the lattice must have full
// rank)
std::vector<std::vector<long>> hnf_basis(std::vector<std::vector<long>> vecs, int dim) {
    std::vector<std::vector<long>> basis;
    // Gaussian elimination over Z (column echelon by rows)
    for (int col = 0; col < dim; ++col) {
        // find vector with nonzero entry at col, minimal |entry|
        while (true) {
            int best = -1;
            for (std::size_t i = 0; i < vecs.size(); ++i) {
                if (vecs[i][col] == 0) continue;
                if (best < 0 || std::abs(vecs[i][col]) < std::abs(vecs[best][col])) best =
                    static_cast<int>(i);
            }
            if (best < 0) break;
            bool done = true;
            for (std::size_t i = 0; i < vecs.size(); ++i) {
                if (static_cast<int>(i) == best || vecs[i][col] == 0) continue;
                long q = vecs[i][col] / vecs[best][col];
                for (int j = 0; j < dim; ++j) vecs[i][j] -= q * vecs[best][j];
                if (vecs[i][col] != 0) done = false;
            }
            if (done) {
                basis.push_back(vecs[best]);
                if (basis.back()[col] < 0)
                    for (auto& x : basis.back()) x = -x;
                vecs.erase(vecs.begin() + best);
                break;
            }
        }
    }
    if (static_cast<int>(basis.size()) != dim)
        throw std::runtime_error("hnf_basis: lattice not of full rank");
    // reduce upper entries to make all entries nonnegative and minimal
    std::sort(basis.begin(), basis.end(), [dim](const auto& a, const auto& b) {
        for (int j = 0; j < dim; ++j) {
            bool za = a[j] != 0, zb = b[j] != 0;
            if (za != zb) return za;
        }
        return false;
    });
    for (int i = dim - 1; i >= 0; --i) {
        int pivot_col = 0;
        while (pivot_col < dim && basis[i][pivot_col] == 0) ++pivot_col;
        if (pivot_col >= dim) continue;
        for (int k = 0; k < i; ++k) {
            long piv = basis[i][pivot_col];
            long q = basis[k][pivot_col] / piv;
            if (basis[k][pivot_col] - q * piv < 0) q -= 1;
            if (q != 0)
                for (int j = 0; j < dim; ++j) basis[k][j] -= q * basis[i][j];
        }
    }
    return basis;
}

}  // namespace

WeightOneData weight_one_complex(const QuadField& field) {
    WeightOneData out;
    long D = field.D;
    if (D > 0 && field.h != 1)
        throw std::invalid_argument(
            "weight_one_complex: real quadratic fields with h > 1 are not supported");

    // choose S generating the class group
    std::vector<PrimeIdeal> S;
    std::vector<QForm> classes;  // class of each chosen ideal
    if (field.h > 1) {
        QForm id = principal_form(D);
        for (long p = 2; p < 2000 && static_cast<long>(S.size()) < 6; ++p) {
            bool prime = p >= 2;
            for (long d = 2; d * d <= p; ++d)
                if (p % d == 0) prime = false;
            if (!prime) continue;
            auto P = prime_above(D, p);
            if (!P) continue;
            QForm cls = ideal_form(D, *P);
            if (cls == id && S.empty()) continue;  // useless first generator
            S.push_back(*P);
            classes.push_back(cls);
            // test generation: BFS over products
            std::set<QForm> gen{id};
            bool grew = true;
            while (grew) {
                grew = false;
                for (const auto& c : std::vector<QForm>(gen.begin(), gen.end()))
                    for (const auto& g2 : classes) {
                        QForm prod = compose_forms(c, g2);
                        if (gen.insert(prod).second) grew = true;
                        QForm prod2 = compose_forms(c, inverse_class(g2));
                        if (gen.insert(prod2).second) grew = true;
                    }
            }
            if (static_cast<long>(gen.size()) == field.h) break;
            if (static_cast<long>(gen.size()) > field.h)
                throw std::runtime_error("weight_one_complex: class group inconsistency");
        }
    }
    out.s_primes = S;
    int k = static_cast<int>(S.size());

    // kernel lattice of Z^S -> Cl
    std::vector<std::vector<long>> lattice_vecs;
    std::vector<long> orders(k, 1);
    for (int i = 0; i < k; ++i) {
        QForm id = principal_form(D);
        QForm cls = classes[i];
        QForm acc = cls;
        long ord = 1;
        while (!(acc == id)) {
            acc = compose_forms(acc, cls);
            ++ord;
            if (ord > 4 * field.h) throw std::runtime_error("order computation runaway");
        }
        orders[i] = ord;
        std::vector<long> v(k, 0);
        v[i] = ord;
        lattice_vecs.push_back(v);
    }
    if (k > 0) {
        // enumerate the box to catch cross relations
        std::vector<long> v(k, 0);
        QForm id = principal_form(D);
        std::function<void(int, QForm)> walk = [&](int idx, QForm acc) {
            if (idx == k) {
                bool nonzero = std::any_of(v.begin(), v.end(), [](long x) { return x != 0; });
                if (nonzero && acc == id) lattice_vecs.push_back(v);
                return;
            }
            QForm cur = acc;
            for (long e = 0; e < orders[idx]; ++e) {
                v[idx] = e;
                walk(idx + 1, cur);
                cur = compose_forms(cur, classes[idx]);
            }
            v[idx] = 0;
        };
        walk(0, id);
    }
    auto basis = k > 0 ? hnf_basis(lattice_vecs, k) : std::vector<std::vector<long>>{};

    // generators: find alpha with divisor sum v_i P_i for each basis vector
    double max_defect = 0.0;
    std::vector<QuadElem> gens;
    if (D < 0) {
        for (const auto& v : basis) {
            // shift negative exponents by principal multiples (p_i)^{m_i}
            std::vector<long> m(k, 0), w(k, 0);
            Int N = 1;
            for (int i = 0; i < k; ++i) {
                if (S[i].ramified) {
                    m[i] = v[i] < 0 ? (-v[i] + 1) / 2 : 0;
                    w[i] = v[i] + 2 * m[i];
                    N *= int_pow(Int(S[i].p), w[i]);
                } else {
                    m[i] = std::max(0L, -v[i]);
                    w[i] = v[i] + m[i];
                    N *= int_pow(Int(S[i].p), w[i] + m[i]);
                }
            }
            bool found = false;
            QuadElem alpha_found;
            Int y_max;
            mpz_sqrt(y_max.get_mpz_t(), Int(4 * N / Int(-D)).get_mpz_t());
            for (Int y = 0; y <= y_max && !found; ++y) {
                Int x2 = 4 * N + Int(D) * y * y;
                if (x2 < 0) continue;
                Int x;
                mpz_sqrt(x.get_mpz_t(), x2.get_mpz_t());
                if (x * x != x2) continue;
                for (int sy : {1, -1}) {
                    QuadElem alpha{x, sy * y};
                    if (((alpha.x - alpha.y * Int(D)) % 2) != 0) continue;
                    bool ok = true;
                    for (int i = 0; i < k && ok; ++i) {
                        if (valuation(alpha, S[i], D) != w[i]) ok = false;
                        if (ok && !S[i].ramified) {
                            QuadElem conj{alpha.x, -alpha.y};
                            if (valuation(conj, S[i], D) != m[i]) ok = false;
                        }
                    }
                    if (ok) {
                        alpha_found = alpha;
                        found = true;
                        break;
                    }
                }
            }
            if (!found) throw std::runtime_error("weight_one_complex: no generator for a lattice vector");
            gens.push_back(alpha_found);
            // product formula on the explicit generator: the element is
            // alpha / prod p_i^{m_i}, so subtract the shift from log N
            Int n4 = alpha_found.x * alpha_found.x - Int(D) * alpha_found.y * alpha_found.y;
            double log_norm = log_of_int(n4) - std::log(4.0);
            for (int i = 0; i < k; ++i) log_norm -= 2.0 * m[i] * std::log(double(S[i].p));
            double divisor_side = 0.0;
            for (int i = 0; i < k; ++i) divisor_side += v[i] * S[i].log_norm();
            max_defect = std::max(max_defect, std::abs(log_norm - divisor_side));
            out.unit_divisors.push_back(v);
        }
    } else {
        // h = 1, S empty: the only free generator is the fundamental unit
        gens.push_back(QuadElem{field.eps_x, field.eps_y});
        out.unit_divisors.push_back({});
    }
    out.generators = gens;
    out.product_formula_defect = max_defect;

    // assemble the measured complex in degrees [1,3]
    MeasuredComplex cx;
    cx.first_degree = 1;
    int r = field.r1 + field.r2;
    MeasuredGroup A;  // S-units
    A.free_rank = static_cast<int>(gens.size());
    A.torsion = field.w;
    MeasuredGroup B;
    B.real_rank = r;
    B.free_rank = k;
    MeasuredGroup C;
    C.real_rank = 1;
    cx.groups = {A, B, C};

    MeasuredMap f;  // units -> R^r + Z^S
    f.real_block.assign(r, std::vector<double>(A.free_rank, 0.0));
    f.int_block.assign(k, std::vector<long>(A.free_rank, 0));
    for (int j = 0; j < A.free_rank; ++j) {
        const QuadElem& alpha = gens[j];
        if (D < 0) {
            // one complex place, |x|_sigma = |sigma x|^2 = N(alpha)
            // the complex carries the theoretical R_1 of the generator of
            // prod P_i^{v_i}: log N = sum v_i log N(P_i); the explicit alpha
            // above independently verified it (product_formula_defect)
            double ln = 0.0;
            for (int i = 0; i < k; ++i) ln += out.unit_divisors[j][i] * S[i].log_norm();
            f.real_block[0][j] = ln;
            for (int i = 0; i < k; ++i) f.int_block[i][j] = out.unit_divisors[j][i];
        } else {
            // two real places: log|eps| and log|eps'| = -log|eps|
            f.real_block[0][j] = field.regulator;
            f.real_block[1][j] = -field.regulator;
        }
    }
    MeasuredMap g;  // R^r + Z^S -> R: Sigma + l
    g.real_block.assign(1, std::vector<double>(r + k, 0.0));
    for (int i = 0; i < r; ++i) g.real_block[0][i] = 1.0;
    for (int i = 0; i < k; ++i) g.real_block[0][r + i] = -S[i].log_norm();
    g.int_block.clear();
    cx.maps = {f, g};
    out.complex = cx;
    return out;
}

// ---------------------------------------------------------------------------
// zeta side
// ---------------------------------------------------------------------------

ZetaValues zeta_quadratic(const QuadField& field) {
    ZetaValues out;
    long D = field.D;
    long aD = std::abs(D);
    if (D < 0) {
        Int S1 = 0;
        for (long a = 1; a < aD; ++a) S1 += Int(kronecker(D, a)) * a;
        out.l_chi_0 = Rat(-S1, aD);
        out.l_chi_0.canonicalize();
        out.lim_s0 = -0.5 * to_double(out.l_chi_0);
        out.residue_s1 = -kPi * S1.get_d() / std::pow(static_cast<double>(aD), 1.5);
    } else {
        Kahan acc;
        for (long a = 1; a < aD; ++a) {
            int chi = kronecker(D, a);
            if (chi == 0) continue;
            acc.add(-chi * std::log(std::sin(kPi * a / aD)));
        }
        out.residue_s1 = acc.value() / std::sqrt(static_cast<double>(aD));
        out.l_chi_0 = 0;
        // lim s^{-1} zeta_F(s) = -h R / w via the functional equation
        out.lim_s0 = -std::sqrt(static_cast<double>(aD)) * out.residue_s1 / 4.0;
    }
    return out;
}

ClassNumberCheck class_number_formula_check(long D, double tol_imag, double tol_real) {
    QuadField F = field_data(D);
    auto data = weight_one_complex(F);
    double lhs = -r_mu(data.complex);
    ZetaValues zv = zeta_quadratic(F);
    ClassNumberCheck out;
    out.D = D;
    out.h = F.h;
    out.w = F.w;
    out.regulator = F.regulator;
    out.lhs = lhs;
    out.rhs = zv.lim_s0;
    out.abs_err = std::abs(lhs - out.rhs);
    out.pass = out.abs_err <= (D < 0 ? tol_imag : tol_real);
    return out;
}

}  // namespace reglab
