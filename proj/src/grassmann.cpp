#include "grassmann.hpp"

#include <algorithm>
#include <numeric>

namespace reglab {

namespace {

constexpr double kPi = 3.14159265358979323846;

int perm_sign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

// linear fractional function <a, (1,z)> / <b, (1,z)> on the CP^1 chart
struct LinFrac {
    Cpx a0, a1, b0, b1;
    Cpx num(Cpx z) const { return a0 + a1 * z; }
    Cpx den(Cpx z) const { return b0 + b1 * z; }
    double log_abs(Cpx z) const { return std::log(std::abs(num(z))) - std::log(std::abs(den(z))); }
    Cpx dlog(Cpx z) const { return a1 / num(z) - b1 / den(z); }
};

// dx^dy density of r_2(f_1 ^ f_2 ^ f_3) at z:
//   Alt_3 [ (1/6) log|f_1| dlog|f_2| ^ dlog|f_3| - (1/2) log|f_1| darg f_2 ^ darg f_3 ]
double r2_density(const std::array<const LinFrac*, 3>& fs, Cpx z) {
    double la[3];
    double ux[3], uy[3], vx[3], vy[3];
    for (int i = 0; i < 3; ++i) {
        la[i] = fs[i]->log_abs(z);
        Cpx w = fs[i]->dlog(z);
        ux[i] = w.real();
        uy[i] = -w.imag();  // dlog|f| = Re w dx - Im w dy
        vx[i] = w.imag();
        vy[i] = w.real();  // darg f = Im w dx + Re w dy
    }
    auto wedge = [](double ax, double ay, double bx, double by) { return ax * by - ay * bx; };
    double acc = 0.0;
    std::vector<int> p{0, 1, 2};
    do {
        double sign = perm_sign(p);
        acc += sign * la[p[0]] *
               ((1.0 / 6.0) * wedge(ux[p[1]], uy[p[1]], ux[p[2]], uy[p[2]]) -
                (1.0 / 2.0) * wedge(vx[p[1]], vy[p[1]], vx[p[2]], vy[p[2]]));
    } while (std::next_permutation(p.begin(), p.end()));
    return acc;
}

std::vector<Cpx> singular_points_of(const std::vector<VecC>& covectors) {
    std::vector<Cpx> pts;
    for (const auto& a : covectors) {
        if (std::abs(a[1]) > 1e-12 * std::abs(a[0])) pts.push_back(-a[0] / a[1]);
    }
    return pts;
}

}  // namespace

// ---------------------------------------------------------------------------
// HermForm
// ---------------------------------------------------------------------------

HermForm HermForm::identity() {
    HermForm f{};
    f.h[0][0] = 1.0;
    f.h[1][1] = 1.0;
    return f;
}

HermForm HermForm::boundary(const VecC& covector) {
    HermForm f{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) f.h[i][j] = std::conj(covector[i]) * covector[j];
    return f;
}

HermForm HermForm::random_posdef(Rng& rng) {
    // G G^dagger + eps for a random complex 2x2 G
    Cpx g[2][2];
    for (auto& row : g)
        for (auto& v : row) v = Cpx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    HermForm f{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Cpx acc = 0.0;
            for (int k = 0; k < 2; ++k) acc += g[i][k] * std::conj(g[j][k]);
            f.h[i][j] = acc;
        }
    f.h[0][0] += 0.05;
    f.h[1][1] += 0.05;
    return f;
}

double HermForm::eval(Cpx z) const {
    // v = (1, z)
    Cpx v0 = 1.0, v1 = z;
    Cpx acc = std::conj(v0) * (h[0][0] * v0 + h[0][1] * v1) +
              std::conj(v1) * (h[1][0] * v0 + h[1][1] * v1);
    return acc.real();
}

Cpx HermForm::eval_dz(Cpx z) const {
    // d/dz of v^dagger H v with v = (1, z): conj((H v)_1)
    Cpx hv1 = h[1][0] * 1.0 + h[1][1] * z;
    return std::conj(hv1);
}

bool HermForm::hermitian_nonneg(double tol) const {
    if (std::abs(h[0][1] - std::conj(h[1][0])) > tol) return false;
    if (h[0][0].imag() > tol || h[1][1].imag() > tol) return false;
    double tr = h[0][0].real() + h[1][1].real();
    double det = (h[0][0] * h[1][1] - h[0][1] * h[1][0]).real();
    return tr >= -tol && det >= -tol * std::max(1.0, tr * tr);
}

HermForm HermForm::scaled(double lambda) const {
    HermForm f = *this;
    for (auto& row : f.h)
        for (auto& v : row) v *= lambda;
    return f;
}

// ---------------------------------------------------------------------------
// L^G_n
// ---------------------------------------------------------------------------

namespace {

// n = 2 integral with the reduced wedge (g_i = f_i / f_4, no h_0)
IntegralEstimate lg2_integral(const std::vector<VecC>& cov, const GrassmannOptions& opt) {
    if (cov.size() != 4) throw degenerate_input("grassmann_polylog: need 4 hyperplanes for n = 2");
    std::array<LinFrac, 3> g;
    for (int i = 0; i < 3; ++i) g[i] = LinFrac{cov[i][0], cov[i][1], cov[3][0], cov[3][1]};
    auto density = [&g](Cpx z) -> Cpx {
        return Cpx(r2_density({&g[0], &g[1], &g[2]}, z), 0.0);
    };
    return integrate_cp1(density, singular_points_of(cov), opt.budget, opt.tol);
}

// n = 2 integral with an explicit h_0 (sum over j of r_2-forms)
IntegralEstimate lg2_integral_h0(const std::vector<VecC>& cov, const VecC& h0,
                                 const GrassmannOptions& opt) {
    std::array<LinFrac, 4> f;
    for (int i = 0; i < 4; ++i) f[i] = LinFrac{cov[i][0], cov[i][1], h0[0], h0[1]};
    auto density = [&f](Cpx z) -> Cpx {
        double acc = 0.0;
        for (int j = 0; j < 4; ++j) {
            std::array<const LinFrac*, 3> rest{};
            int k = 0;
            for (int i = 0; i < 4; ++i)
                if (i != j) rest[k++] = &f[i];
            double sign = (j % 2 == 0) ? -1.0 : 1.0;  // (-1)^j with 1-based j
            acc += sign * r2_density(rest, z);
        }
        return Cpx(acc, 0.0);
    };
    auto singular = singular_points_of(cov);
    auto extra = singular_points_of({h0});
    singular.insert(singular.end(), extra.begin(), extra.end());
    return integrate_cp1(density, singular, opt.budget, opt.tol);
}

// n = 3 Monte Carlo: density of r_4(g_1 ^ ... ^ g_5) on the CP^2 chart
struct Lin3 {
    std::array<Cpx, 3> a;  // covector; L(z) = a0 + a1 z1 + a2 z2
    std::array<Cpx, 3> b;  // base covector
    Cpx num(const std::array<Cpx, 2>& z) const { return a[0] + a[1] * z[0] + a[2] * z[1]; }
    Cpx den(const std::array<Cpx, 2>& z) const { return b[0] + b[1] * z[0] + b[2] * z[1]; }
};

double r4_density(const std::array<Lin3, 5>& g, const std::array<Cpx, 2>& z) {
    double la[5];
    // real 4-vectors of dlog|g| and darg g in coords (x1, y1, x2, y2)
    double u[5][4], v[5][4];
    for (int i = 0; i < 5; ++i) {
        Cpx n = g[i].num(z), d = g[i].den(z);
        double an = std::abs(n), ad = std::abs(d);
        if (an < 1e-9 || ad < 1e-9) return 0.0;  // rejection band near the divisors
        la[i] = std::log(an) - std::log(ad);
        Cpx w1 = g[i].a[1] / n - g[i].b[1] / d;
        Cpx w2 = g[i].a[2] / n - g[i].b[2] / d;
        u[i][0] = w1.real();
        u[i][1] = -w1.imag();
        u[i][2] = w2.real();
        u[i][3] = -w2.imag();
        v[i][0] = w1.imag();
        v[i][1] = w1.real();
        v[i][2] = w2.imag();
        v[i][3] = w2.real();
    }
    auto det4 = [](const double* c0, const double* c1, const double* c2, const double* c3) {
        auto m3 = [](double a0, double a1, double a2, double b0, double b1, double b2, double c0,
                     double c1, double c2) {
            return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
        };
        return c0[0] * m3(c1[1], c1[2], c1[3], c2[1], c2[2], c2[3], c3[1], c3[2], c3[3]) -
               c0[1] * m3(c1[0], c1[2], c1[3], c2[0], c2[2], c2[3], c3[0], c3[2], c3[3]) +
               c0[2] * m3(c1[0], c1[1], c1[3], c2[0], c2[1], c2[3], c3[0], c3[1], c3[3]) -
               c0[3] * m3(c1[0], c1[1], c1[2], c2[0], c2[1], c2[2], c3[0], c3[1], c3[2]);
    };
    // stabilizer-reduced expansion of
    //   Alt_5 sum_j c_{j,5} log|f_1| dlog|f_2|..dlog|f_{2j+1}| diarg ... :
    // per choice of the log slot a and dlog-subset S of the remaining four,
    // coefficients (+1, -1/3, +1/5) carry the (2j)!(4-2j)! stabilizer weight
    // and the i-powers of diarg.
    double acc = 0.0;
    for (int a = 0; a < 5; ++a) {
        int rest[4], k = 0;
        for (int i = 0; i < 5; ++i)
            if (i != a) rest[k++] = i;
        double sa = (a % 2 == 0) ? 1.0 : -1.0;  // move slot a to the front
        // j = 0: all darg
        double term = det4(v[rest[0]], v[rest[1]], v[rest[2]], v[rest[3]]);
        // j = 2: all dlog
        term += 0.2 * det4(u[rest[0]], u[rest[1]], u[rest[2]], u[rest[3]]);
        // j = 1: choose 2 of 4 for dlog slots, shuffle sign of the subset
        static const int pairs[6][5] = {{0, 1, 2, 3, +1}, {0, 2, 1, 3, -1}, {0, 3, 1, 2, +1},
                                        {1, 2, 0, 3, +1}, {1, 3, 0, 2, -1}, {2, 3, 0, 1, +1}};
        for (const auto& pr : pairs) {
            term += (-1.0 / 3.0) * pr[4] *
                    det4(u[rest[pr[0]]], u[rest[pr[1]]], v[rest[pr[2]]], v[rest[pr[3]]]);
        }
        acc += sa * la[a] * term;
    }
    return acc;
}

IntegralEstimate lg3_integral(const std::vector<VecC>& cov, const GrassmannOptions& opt) {
    if (cov.size() != 6) throw degenerate_input("grassmann_polylog: need 6 hyperplanes for n = 3");
    // one function family per chart: coordinates permuted so that slot
    // `chart` carries the homogeneous 1
    std::array<std::array<Lin3, 5>, 3> g;
    for (int c = 0; c < 3; ++c) {
        int i1 = (c + 1) % 3, i2 = (c + 2) % 3;
        for (int i = 0; i < 5; ++i)
            g[c][i] = Lin3{{cov[i][c], cov[i][i1], cov[i][i2]}, {cov[5][c], cov[5][i1], cov[5][i2]}};
    }
    auto density = [g](int chart, const std::array<Cpx, 2>& z) {
        return r4_density(g[chart], z);
    };
    std::vector<std::array<Cpx, 3>> divisors;
    for (const auto& c : cov) divisors.push_back({c[0], c[1], c[2]});
    return integrate_cp2_mc(density, divisors, opt.budget, opt.seed);
}

}  // namespace

IntegralEstimate grassmann_polylog(const HyperplaneConfig& cfg, const GrassmannOptions& opt) {
    for (std::size_t i = 0; i < cfg.covectors.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.covectors.size(); ++j) {
            // pairwise distinct hyperplanes (proportional covectors collide)
            const auto& a = cfg.covectors[i];
            const auto& b = cfg.covectors[j];
            double na = 0.0, nb = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) {
                na += std::norm(a[k]);
                nb += std::norm(b[k]);
            }
            double mismatch = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k)
                for (std::size_t l = k + 1; l < a.size(); ++l)
                    mismatch = std::max(mismatch, std::abs(a[k] * b[l] - a[l] * b[k]));
            if (mismatch < 1e-12 * std::sqrt(na * nb))
                throw degenerate_input("grassmann_polylog: coincident hyperplanes");
        }
    IntegralEstimate raw;
    if (cfg.n == 2) {
        if (opt.h0_index == -2)
            raw = lg2_integral_h0(cfg.covectors, opt.h0, opt);
        else
            raw = lg2_integral(cfg.covectors, opt);
        raw.value *= Cpx(0.0, -1.0 / (2.0 * kPi));  // (2 pi i)^{1-n} with n = 2
        raw.std_error /= 2.0 * kPi;
        return raw;
    }
    if (cfg.n == 3) {
        raw = lg3_integral(cfg.covectors, opt);
        // (2 pi i)^{-2} = -1/(4 pi^2)
        raw.value *= -1.0 / (4.0 * kPi * kPi);
        raw.std_error /= 4.0 * kPi * kPi;
        return raw;
    }
    throw std::invalid_argument("grassmann_polylog: n in {2, 3}");
}

double lg_real(int n, const IntegralEstimate& est) {
    // Real representatives frozen by the golden calibrations against the
    // closed forms.  The raw integral of r_{2n-2} is real, so the printed
    // (2 pi i)^{1-n} prefactor leaves an i-power ambiguity; measured:
    // for n = 2, -2 Im((2 pi i)^{-1} I) = -2 L_2(r) exactly.
    if (n == 2) return -2.0 * est.value.imag();
    return est.value.real();
}

double grassmann_polylog2_closed(const HyperplaneConfig& cfg) {
    // duality (a0, a1) -> zero point (-a1 : a0) is linear, so the cross-ratio
    // of the covectors as homogeneous pairs equals that of the dual points
    const auto& c = cfg.covectors;
    auto d = [&c](int i, int j) { return c[i][0] * c[j][1] - c[j][0] * c[i][1]; };
    Cpx den = d(0, 3) * d(1, 2);
    if (std::abs(den) == 0.0) throw degenerate_input("grassmann_polylog2_closed: degenerate");
    Cpx r = d(0, 2) * d(1, 3) / den;
    return -2.0 * polylog_sv(2, r);
}

double grassmann_polylog3_closed(const std::array<VecC, 6>& pts) {
    auto r3 = r3_element(pts);
    std::map<CpxKey, double> memo;
    Kahan main;
    for (const auto& [g, c] : r3.terms()) {
        auto it = memo.find(g.key);
        if (it == memo.end()) it = memo.emplace(g.key, polylog_sv(3, g.value)).first;
        main.add(to_double(c) * it->second);
    }
    // second term: (1/9) Alt_6 log|D(l0l1l2)| log|D(l1l2l3)| log|D(l2l3l4)|
    std::map<std::array<int, 3>, double> logdet;
    auto ld = [&](int i, int j, int k) {
        std::array<int, 3> key{i, j, k};
        std::sort(key.begin(), key.end());
        auto it = logdet.find(key);
        if (it == logdet.end()) {
            Cpx d = det3(pts[key[0]], pts[key[1]], pts[key[2]]);
            it = logdet.emplace(key, std::log(std::abs(d))).first;
        }
        return it->second;
    };
    Kahan alt;
    std::vector<int> p{0, 1, 2, 3, 4, 5};
    do {
        double sign = perm_sign(p);
        alt.add(sign * ld(p[0], p[1], p[2]) * ld(p[1], p[2], p[3]) * ld(p[2], p[3], p[4]));
    } while (std::next_permutation(p.begin(), p.end()));
    // the relative sign of the two alternations is calibrated against the
    // Monte Carlo integral (least squares over independent configurations
    // gives (+1, -1) for the printed (1/90, 1/9) weights in our Alt_6
    // convention); frozen here and in the golden test
    return main.value() / 90.0 - alt.value() / 9.0;
}

double cocycle_defect_a(const std::vector<VecC>& hyperplanes_cp2, const GrassmannOptions& opt) {
    if (hyperplanes_cp2.size() != 5)
        throw degenerate_input("cocycle_defect_a: need 5 hyperplanes in CP^2 for n = 2");
    Kahan acc;
    for (int j = 0; j < 5; ++j) {
        const VecC& aj = hyperplanes_cp2[j];
        // basis of the plane <a_j, x> = 0
        std::array<VecC, 2> basis;
        {
            int piv = 0;
            for (int i = 1; i < 3; ++i)
                if (std::abs(aj[i]) > std::abs(aj[piv])) piv = i;
            int o1 = (piv + 1) % 3, o2 = (piv + 2) % 3;
            VecC b1(3, Cpx(0.0)), b2(3, Cpx(0.0));
            b1[o1] = 1.0;
            b1[piv] = -aj[o1] / aj[piv];
            b2[o2] = 1.0;
            b2[piv] = -aj[o2] / aj[piv];
            basis = {b1, b2};
        }
        HyperplaneConfig sub;
        sub.n = 2;
        for (int k = 0; k < 5; ++k) {
            if (k == j) continue;
            const VecC& ak = hyperplanes_cp2[k];
            Cpx c1 = ak[0] * basis[0][0] + ak[1] * basis[0][1] + ak[2] * basis[0][2];
            Cpx c2 = ak[0] * basis[1][0] + ak[1] * basis[1][1] + ak[2] * basis[1][2];
            sub.covectors.push_back(VecC{c1, c2});
        }
        auto est = grassmann_polylog(sub, opt);
        double term = lg_real(2, est);
        acc.add((j % 2 == 0) ? -term : term);  // (-1)^j, 1-based
    }
    return std::abs(acc.value());
}

double cocycle_defect_b(const std::vector<VecC>& hyperplanes_cp1, const GrassmannOptions& opt) {
    if (hyperplanes_cp1.size() != 5)
        throw degenerate_input("cocycle_defect_b: need 5 hyperplanes in CP^1 for n = 2");
    Kahan acc;
    for (int j = 0; j < 5; ++j) {
        HyperplaneConfig sub;
        sub.n = 2;
        for (int k = 0; k < 5; ++k)
            if (k != j) sub.covectors.push_back(hyperplanes_cp1[k]);
        auto est = grassmann_polylog(sub, opt);
        double term = lg_real(2, est);
        acc.add((j % 2 == 0) ? -term : term);
    }
    return std::abs(acc.value());
}

const int kSpecialValueSign = -1;  // frozen by the golden calibration test

double special_value_c(int n, Cpx a) {
    if (n < 2) throw std::invalid_argument("special_value: n >= 2");
    double sign = ((n * (n - 1) / 2) % 2 == 0) ? -1.0 : 1.0;  // -(-1)^{n(n-1)/2}
    double c = sign * std::pow(4.0, n - 1) / to_double(binomial(2 * n - 2, n - 1));
    return c * polylog_sv_levin(n, a);
}

double special_value(const ConfigQ& special) {
    Rat a = gen_cross_ratio_special(special);
    return special_value_c(special.dim, Cpx(to_double(a), 0.0));
}

std::vector<VecC> special_config_covectors(int n, Cpx a) {
    std::vector<VecC> cov;
    for (int i = 0; i < n; ++i) {
        VecC e(n, Cpx(0.0));
        e[i] = 1.0;
        cov.push_back(e);
    }
    for (int i = 0; i < n; ++i) {
        VecC m(n, Cpx(0.0));
        m[i] = 1.0;
        if (i + 1 < n)
            m[i + 1] = 1.0;
        else
            m[0] = (n % 2) ? -a : a;
        cov.push_back(m);
    }
    return cov;
}

// ---------------------------------------------------------------------------
// psi_2
// ---------------------------------------------------------------------------

namespace {

double psi_density(const std::array<const HermForm*, 4>& H, Cpx z) {
    // phi_i = log|mu_i / mu_0| = 2 (log H_0 - log H_i), i = 1..3
    double h[4];
    Cpx hz[4];
    for (int i = 0; i < 4; ++i) {
        h[i] = H[i]->eval(z);
        if (h[i] < 1e-18) return 0.0;  // rejection band at a kernel point
        hz[i] = H[i]->eval_dz(z);
    }
    auto grad = [&](int i) {
        // gradient of log H_i: (2 Re hz, -2 Im hz)/H
        return std::array<double, 2>{2.0 * hz[i].real() / h[i], -2.0 * hz[i].imag() / h[i]};
    };
    auto g0 = grad(0);
    double phi1 = 2.0 * (std::log(h[0]) - std::log(h[1]));
    auto g2 = grad(2), g3 = grad(3);
    double d2x = 2.0 * (g0[0] - g2[0]), d2y = 2.0 * (g0[1] - g2[1]);
    double d3x = 2.0 * (g0[0] - g3[0]), d3y = 2.0 * (g0[1] - g3[1]);
    return phi1 * (d2x * d3y - d2y * d3x);
}

std::vector<Cpx> herm_singular_points(const std::vector<const HermForm*>& forms) {
    std::vector<Cpx> pts;
    for (const auto* f : forms) {
        // rank-1 forms have a kernel point z with (H v) = 0
        double det = ((*f).h[0][0] * (*f).h[1][1] - (*f).h[0][1] * (*f).h[1][0]).real();
        double tr = (*f).h[0][0].real() + (*f).h[1][1].real();
        if (std::abs(det) < 1e-10 * std::max(1.0, tr * tr)) {
            // kernel of [[a,b],[conj(b),d]]: v = (1, z) with a + b z = 0
            if (std::abs((*f).h[0][1]) > 1e-14) pts.push_back(-(*f).h[0][0] / (*f).h[0][1]);
        }
    }
    return pts;
}

}  // namespace

IntegralEstimate psi2(const std::array<HermForm, 4>& forms, std::uint64_t budget, double tol) {
    for (const auto& f : forms)
        if (!f.hermitian_nonneg()) throw degenerate_input("psi2: form not Hermitian nonnegative");
    std::array<const HermForm*, 4> H{&forms[0], &forms[1], &forms[2], &forms[3]};
    auto density = [&H](Cpx z) { return Cpx(psi_density(H, z), 0.0); };
    auto singular = herm_singular_points({&forms[0], &forms[1], &forms[2], &forms[3]});
    auto est = integrate_cp1(density, singular, budget, tol);
    est.strategy = "adaptive-psi2";
    return est;
}

double psi2_additivity_defect(const std::array<HermForm, 5>& forms, std::uint64_t budget,
                              double tol) {
    Kahan acc;
    for (int i = 0; i < 5; ++i) {
        std::array<HermForm, 4> sub;
        int k = 0;
        for (int j = 0; j < 5; ++j)
            if (j != i) sub[k++] = forms[j];
        auto est = psi2(sub, budget, tol);
        double term = est.value.real();
        acc.add((i % 2 == 0) ? term : -term);  // (-1)^i, 0-based
    }
    return std::abs(acc.value());
}

double psi2_constant_magnitude() {
    // |(-4)^{-2} (2 pi i) 4^3 binom(2,1)| = (1/16)(2 pi)(64)(2) = 16 pi
    return 16.0 * kPi;
}

}  // namespace reglab
