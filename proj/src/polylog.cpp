#include "polylog.hpp"

#include <algorithm>
#include <limits>

namespace reglab {

namespace {

constexpr double kSeriesRadius = 0.5;

Cpx li1(Cpx z) { return -std::log(Cpx(1.0) - z); }

// series sum_{k>=1} z^k/k^n, |z| <= 1/2 (53 terms reach full precision)
Cpx li_series(int n, Cpx z) {
    Cpx term = z;
    Kahan re, im;
    re.add(term.real());
    im.add(term.imag());
    for (int k = 2; k <= 64; ++k) {
        term *= z;
        double kn = std::pow(static_cast<double>(k), n);
        Cpx t = term / kn;
        re.add(t.real());
        im.add(t.imag());
        if (std::abs(t.real()) + std::abs(t.imag()) < 1e-19 * (std::abs(re.value()) + 1e-30)) break;
    }
    return {re.value(), im.value()};
}

// Dormand-Prince 5(4) step on the vector (Li_2,...,Li_n) along s = e^u,
// where d Li_k / du = Li_{k-1}(e^u z); the log parametrisation keeps the
// right-hand side smooth even for very large |z|.
struct LiOde {
    int n;
    Cpx z;

    std::vector<Cpx> rhs(double u, const std::vector<Cpx>& y) const {
        std::vector<Cpx> d(y.size());
        Cpx prev = li1(std::exp(u) * z);
        for (std::size_t i = 0; i < y.size(); ++i) {
            d[i] = prev;
            prev = y[i];
        }
        return d;
    }
};

std::vector<Cpx> march(const LiOde& ode, std::vector<Cpx> y, double s0, double s1) {
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double tol = 1e-13;
    double s = s0;
    double h = std::min(0.05, (s1 - s0) * 0.5);
    auto k1 = ode.rhs(s, y);
    int guard = 0;
    while (s < s1) {
        if (++guard > 200000) throw std::runtime_error("polylog ODE: step limit");
        h = std::min(h, s1 - s);
        std::vector<Cpx> yt(y.size());

        auto stage = [&](const std::vector<double>& coef, const std::vector<const std::vector<Cpx>*>& ks) {
            for (std::size_t i = 0; i < y.size(); ++i) {
                Cpx acc = y[i];
                for (std::size_t j = 0; j < ks.size(); ++j) acc += h * coef[j] * (*ks[j])[i];
                yt[i] = acc;
            }
        };

        stage({a21}, {&k1});
        auto k2 = ode.rhs(s + c2 * h, yt);
        stage({a31, a32}, {&k1, &k2});
        auto k3 = ode.rhs(s + c3 * h, yt);
        stage({a41, a42, a43}, {&k1, &k2, &k3});
        auto k4 = ode.rhs(s + c4 * h, yt);
        stage({a51, a52, a53, a54}, {&k1, &k2, &k3, &k4});
        auto k5 = ode.rhs(s + c5 * h, yt);
        stage({a61, a62, a63, a64, a65}, {&k1, &k2, &k3, &k4, &k5});
        auto k6 = ode.rhs(s + h, yt);
        stage({b1, 0.0, b3, b4, b5, b6}, {&k1, &k2, &k3, &k4, &k5, &k6});
        auto k7 = ode.rhs(s + h, yt);

        double err = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            Cpx e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            double scale = 1.0 + std::abs(yt[i]);
            err = std::max(err, std::abs(e) / scale);
        }
        if (err <= tol) {
            s += h;
            y = yt;
            k1 = k7;  // FSAL
        }
        double factor = err > 0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        h = std::max(h, 1e-12);
    }
    return y;
}

}  // namespace

std::vector<Cpx> li_all(int n, Cpx z) {
    if (n < 1 || n > 16) throw std::invalid_argument("li: weight out of range");
    std::vector<Cpx> out(n);
    if (z == Cpx(0.0)) return out;
    if (z == Cpx(1.0)) {
        out[0] = Cpx(std::numeric_limits<double>::infinity(), 0.0);
        for (int k = 2; k <= n; ++k) out[k - 1] = Cpx(riemann_zeta(k), 0.0);
        return out;
    }
    out[0] = li1(z);
    if (n == 1) return out;
    if (std::abs(z) <= kSeriesRadius) {
        for (int k = 2; k <= n; ++k) out[k - 1] = li_series(k, z);
        return out;
    }
    double s0 = 0.4 / std::abs(z);
    std::vector<Cpx> y(n - 1);
    for (int k = 2; k <= n; ++k) y[k - 2] = li_series(k, s0 * z);
    y = march(LiOde{n, z}, std::move(y), std::log(s0), 0.0);
    for (int k = 2; k <= n; ++k) out[k - 1] = y[k - 2];
    return out;
}

Cpx li(int n, Cpx z) {
    if (n == 1 && z == Cpx(1.0)) throw singular_point("Li_1 has a branch point at z = 1");
    return li_all(n, z)[n - 1];
}

double polylog_sv(int n, Cpx z) {
    if (n < 2) throw std::invalid_argument("polylog_sv: n >= 2 required");
    if (z == Cpx(0.0)) return 0.0;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        return 0.0;  // continuous limit at infinity
    if (z.imag() == 0.0) {
        if (n % 2 == 0) return 0.0;  // vanishes on the real line for even n
        if (z.real() == 1.0) return riemann_zeta(n);
    }
    if (z == Cpx(1.0)) return n % 2 ? riemann_zeta(n) : 0.0;
    auto lis = li_all(n, z);
    const auto& bt = beta_table();
    double lz = std::log(std::abs(z));
    Kahan re, im;
    double logpow = 1.0;
    for (int k = 0; k <= n - 1; ++k) {
        Cpx term = bt.beta_d(k) * logpow * lis[n - k - 1];
        re.add(term.real());
        im.add(term.imag());
        logpow *= lz;
    }
    return n % 2 ? re.value() : im.value();
}

double polylog_sv_levin(int n, Cpx z) {
    if (n < 2) throw std::invalid_argument("polylog_sv_levin: n >= 2 required");
    if (z == Cpx(0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) return 0.0;
    double lz = std::log(std::abs(z));
    double acc = 0.0;
    for (int k = 0; k <= n - 2; k += 2) {
        Rat c = Rat(int_pow(2, k)) * factorial(n - 2) * factorial(2 * n - k - 3) /
                (factorial(2 * n - 3) * factorial(k + 1) * factorial(n - k - 2));
        acc += to_double(c) * polylog_sv(n - k, z) * std::pow(lz, k);
    }
    return acc;
}

Cpx polylog_hat(int n, Cpx z) {
    double v = polylog_sv(n, z);
    return n % 2 ? Cpx(v, 0.0) : Cpx(0.0, v);
}

double bloch_wigner_direct(Cpx z) {
    Cpx v = li(2, z) + std::log(Cpx(1.0) - z) * std::log(std::abs(z));
    return v.imag();
}

double riemann_zeta(int n) {
    if (n < 2) throw std::invalid_argument("riemann_zeta: n >= 2 required");
    const int K = 400;
    Kahan acc;
    for (int k = K - 1; k >= 1; --k) acc.add(std::pow(static_cast<double>(k), -n));
    // Euler-Maclaurin tail at K
    double Kd = K;
    double tail = std::pow(Kd, 1.0 - n) / (n - 1) + 0.5 * std::pow(Kd, -n) +
                  n / 12.0 * std::pow(Kd, -n - 1) -
                  n * (n + 1) * (n + 2) / 720.0 * std::pow(Kd, -n - 3);
    acc.add(tail);
    return acc.value();
}

SimplexZetaEstimate zeta_leibniz(int n, std::uint64_t budget, std::uint64_t seed,
                                 double requested_tol) {
    if (n < 2) throw degenerate_input("zeta_leibniz: the length-1 integral diverges");
    if (budget < 16) throw degenerate_input("zeta_leibniz: budget too small");
    // Ordered simplex mapped to the unit cube by t_i = x_i ... x_n; the
    // Jacobian cancels the dt/t factors leaving 1/(1 - x_1...x_n).
    const double band = 1e-12;
    const std::uint64_t n_strata = 256;
    std::uint64_t per = std::max<std::uint64_t>(1, budget / n_strata);
    Kahan total, total_sq;
    std::uint64_t used = 0;
    for (std::uint64_t stratum = 0; stratum < n_strata; ++stratum) {
        Rng rng(Rng::mix(seed, stratum));
        Kahan part;
        for (std::uint64_t i = 0; i < per; ++i) {
            double prod = 1.0;
            for (int j = 0; j < n; ++j) prod *= rng.uniform();
            double denom = 1.0 - prod;
            if (denom > band) part.add(1.0 / denom);
        }
        double mean = part.value() / static_cast<double>(per);
        total.add(mean);
        total_sq.add(mean * mean);
        used += per;
    }
    double k = static_cast<double>(n_strata);
    double mean = total.value() / k;
    double var = std::max(0.0, total_sq.value() / k - mean * mean);
    SimplexZetaEstimate est;
    est.value = mean;
    est.std_error = std::sqrt(var / k);
    est.samples = used;
    if (requested_tol > 0.0 && est.std_error > requested_tol) est.budget_ok = false;
    return est;
}

}  // namespace reglab
