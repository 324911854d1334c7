#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "forms.hpp"
#include "support.hpp"

using namespace reglab;

namespace {

Rat rq(Rng& rng, long lo = -6, long hi = 6) {
    while (true) {
        long num = lo + static_cast<long>(rng.below(hi - lo + 1));
        if (num == 0) continue;
        return rat(num, 1 + static_cast<long>(rng.below(4)));
    }
}

RationalMapQ random_map(Rng& rng, int atoms = 2) {
    RationalMapQ f = RationalMapQ::constant(rq(rng));
    for (int i = 0; i < atoms; ++i) {
        RationalMapQ a(Poly{rq(rng), rat(1)}, Poly::constant(rat(1)));
        if (rng.below(2))
            f = f * a;
        else
            f = f / a;
    }
    return f;
}

Cpx generic_point(Rng& rng) { return Cpx(rng.uniform(0.2, 1.8), rng.uniform(0.3, 1.7)); }

LinProduct random_lin_product(Rng& rng, int vars, int factors = 2) {
    LinProduct f;
    for (int j = 0; j < factors; ++j) {
        LinearForm L;
        L.b = Cpx(rng.uniform(0.5, 2.0), rng.uniform(-0.4, 0.4));
        for (int i = 0; i < vars; ++i)
            L.a.push_back(Cpx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)));
        f.factors.emplace_back(L, rng.below(2) ? 1 : -1);
    }
    return f;
}

std::vector<Cpx> generic_nd_point(Rng& rng, int vars) {
    std::vector<Cpx> z(vars);
    for (auto& v : z) v = Cpx(rng.uniform(0.1, 0.6), rng.uniform(0.1, 0.6));
    return z;
}

}  // namespace

TEST_CASE("r_form basics") {
    Rng rng(301);
    SUBCASE("m = 1 is log|f|") {
        for (int t = 0; t < 10; ++t) {
            auto f = random_map(rng);
            Cpx z = generic_point(rng);
            FormValue v = r_form({f}, z);
            CHECK(v.degree == 0);
            CHECK(std::abs(v.c0 - std::log(std::abs(f.eval(z)))) < 1e-13);
        }
    }
    SUBCASE("values lie in R(m-1): parity of the coefficients") {
        for (int t = 0; t < 10; ++t) {
            auto f = random_map(rng), g = random_map(rng), h = random_map(rng);
            Cpx z = generic_point(rng);
            FormValue r1 = r_form({f, g}, z);
            // R(1)-valued 1-form: dz and dzbar coefficients conjugate-negated
            CHECK(std::abs(r1.cz + std::conj(r1.czb)) < 1e-12);
            FormValue r2 = r_form({f, g, h}, z);
            // R(2)-valued 2-form: the dz^dzbar coefficient is imaginary
            CHECK(std::abs(r2.czzb.real()) < 1e-12 * std::max(1.0, std::abs(r2.czzb)));
        }
    }
    SUBCASE("singular point error") {
        RationalMapQ f(Poly{rat(-1), rat(1)}, Poly::constant(rat(1)));  // t - 1
        CHECK_THROWS_AS(r_form({f, f}, Cpx(1.0, 0.0)), singular_point);
    }
}

TEST_CASE("dr identities") {
    Rng rng(302);
    SUBCASE("curve chart: dr_1 vanishes (the pi_2 image is zero on a curve)") {
        for (int t = 0; t < 20; ++t) {
            auto f = random_map(rng), g = random_map(rng);
            Cpx z = generic_point(rng);
            auto F = [&](Cpx w) { return r_form({f, g}, w); };
            FormValue d = numeric_d_richardson(F, z, 1e-3);
            double scale = dlog_abs(f, z).wedge(darg_i(g, z)).max_abs() + 1.0;
            CHECK(d.max_abs() / scale < 1e-5);
        }
    }
    SUBCASE("full identity on a two-variable chart, m = 2") {
        for (int t = 0; t < 20; ++t) {
            auto f = random_lin_product(rng, 2), g = random_lin_product(rng, 2);
            auto z = generic_nd_point(rng, 2);
            auto F = [&](const std::vector<Cpx>& w) { return nform_r({f, g}, w); };
            NForm lhs = (nform_numeric_d(F, z, 5e-4) * Cpx(4.0 / 3.0)) -
                        (nform_numeric_d(F, z, 1e-3) * Cpx(1.0 / 3.0));
            NForm rhs = nform_pi_dlog({f, g}, z);
            double scale = rhs.max_abs() + 1.0;
            CHECK((lhs - rhs).max_abs() / scale < 1e-5);
        }
    }
    SUBCASE("full identity on a three-variable chart, m = 3") {
        for (int t = 0; t < 20; ++t) {
            auto f = random_lin_product(rng, 3), g = random_lin_product(rng, 3),
                 h = random_lin_product(rng, 3);
            auto z = generic_nd_point(rng, 3);
            auto F = [&](const std::vector<Cpx>& w) { return nform_r({f, g, h}, w); };
            NForm lhs = (nform_numeric_d(F, z, 5e-4) * Cpx(4.0 / 3.0)) -
                        (nform_numeric_d(F, z, 1e-3) * Cpx(1.0 / 3.0));
            NForm rhs = nform_pi_dlog({f, g, h}, z);
            double scale = rhs.max_abs() + 1.0;
            CHECK((lhs - rhs).max_abs() / scale < 1e-5);
        }
    }
}

TEST_CASE("omega") {
    Rng rng(303);
    SUBCASE("m = 1 returns the function") {
        auto f = random_map(rng);
        Cpx z = generic_point(rng);
        auto phi = log_abs_fn(f);
        FormValue v = omega_form({phi}, z);
        CHECK(std::abs(v.c0 - phi(z).value) < 1e-14);
    }
    SUBCASE("m = 2 matches the printed display") {
        // omega_1 = (1/2)(phi1 dphi2 - phi2 dphi1 - phi1 dbar-phi2 + phi2 dbar-phi1)
        SmoothFn p1 = [](Cpx z) {
            double x = z.real(), y = z.imag();
            // phi = x^2 y: dphi/dz = (2xy - i x^2)/... via Wirtinger
            Cpx dz = 0.5 * (Cpx(2 * x * y, 0) - Cpx(0, 1) * Cpx(x * x, 0));
            Cpx dzb = 0.5 * (Cpx(2 * x * y, 0) + Cpx(0, 1) * Cpx(x * x, 0));
            return SmoothJet{Cpx(x * x * y, 0), dz, dzb, Cpx(0, 0)};
        };
        SmoothFn p2 = [](Cpx z) {
            double x = z.real(), y = z.imag();
            Cpx dz = 0.5 * (Cpx(std::cos(x), 0) - Cpx(0, 1) * Cpx(2 * y, 0));
            Cpx dzb = 0.5 * (Cpx(std::cos(x), 0) + Cpx(0, 1) * Cpx(2 * y, 0));
            return SmoothJet{Cpx(std::sin(x) + y * y, 0), dz, dzb, Cpx(0, 0)};
        };
        Cpx z = generic_point(rng);
        auto j1 = p1(z), j2 = p2(z);
        FormValue expect =
            (FormValue::one_form(j2.dz, 0.0) * j1.value - FormValue::one_form(j1.dz, 0.0) * j2.value -
             FormValue::one_form(0.0, j2.dzb) * j1.value +
             FormValue::one_form(0.0, j1.dzb) * j2.value) *
            0.5;
        FormValue got = omega_form({p1, p2}, z);
        CHECK((got - expect).max_abs() < 1e-13);
    }
    SUBCASE("r equals 2^{m-1} omega on log|f| arguments") {
        for (int t = 0; t < 10; ++t) {
            auto f = random_map(rng), g = random_map(rng), h = random_map(rng);
            Cpx z = generic_point(rng);
            FormValue r1 = r_form({f}, z);
            FormValue o1 = omega_form({log_abs_fn(f)}, z);
            CHECK((r1 - o1).max_abs() < 1e-10);
            FormValue r2 = r_form({f, g}, z);
            FormValue o2 = omega_form({log_abs_fn(f), log_abs_fn(g)}, z) * 2.0;
            CHECK((r2 - o2).max_abs() < 1e-10);
            FormValue r3 = r_form({f, g, h}, z);
            FormValue o3 = omega_form({log_abs_fn(f), log_abs_fn(g), log_abs_fn(h)}, z) * 4.0;
            CHECK((r3 - o3).max_abs() < 1e-10);
        }
    }
    SUBCASE("derivative identity on the curve, m = 2, non-harmonic arguments") {
        SmoothFn p1 = [](Cpx z) {
            double x = z.real(), y = z.imag();
            // phi = x^2 + x y^2, laplacian = 2 + 2x; dbar d phi = -lap/4 dz^dzb
            Cpx fx(2 * x + y * y, 0), fy(2 * x * y, 0);
            return SmoothJet{Cpx(x * x + x * y * y, 0), 0.5 * (fx - Cpx(0, 1) * fy),
                             0.5 * (fx + Cpx(0, 1) * fy), Cpx(-(2 + 2 * x) / 4.0, 0)};
        };
        SmoothFn p2 = [](Cpx z) {
            double x = z.real(), y = z.imag();
            // phi = exp(x) sin(y): harmonic... use exp(x) sin(y) + x^3
            Cpx fx(std::exp(x) * std::sin(y) + 3 * x * x, 0), fy(std::exp(x) * std::cos(y), 0);
            double lap = 6 * x;
            return SmoothJet{Cpx(std::exp(x) * std::sin(y) + x * x * x, 0),
                             0.5 * (fx - Cpx(0, 1) * fy), 0.5 * (fx + Cpx(0, 1) * fy),
                             Cpx(-lap / 4.0, 0)};
        };
        for (int t = 0; t < 20; ++t) {
            Cpx z = generic_point(rng);
            auto F = [&](Cpx w) { return omega_form({p1, p2}, w); };
            FormValue lhs = numeric_d_richardson(F, z, 1e-3);
            FormValue rhs = omega_d_identity_rhs({p1, p2}, z);
            double scale = rhs.max_abs() + 1.0;
            CHECK((lhs - rhs).max_abs() / scale < 1e-5);
        }
    }
    SUBCASE("derivative identity on C^2 and C^3 charts, harmonic log arguments") {
        for (int vars : {2, 3}) {
            int m = vars;  // full-strength case m = vars
            for (int t = 0; t < 10; ++t) {
                std::vector<LinProduct> fs;
                for (int i = 0; i < m; ++i) fs.push_back(random_lin_product(rng, vars));
                auto z = generic_nd_point(rng, vars);
                auto F = [&](const std::vector<Cpx>& w) { return nform_omega_logs(fs, w); };
                NForm lhs = (nform_numeric_d(F, z, 5e-4) * Cpx(4.0 / 3.0)) -
                            (nform_numeric_d(F, z, 1e-3) * Cpx(1.0 / 3.0));
                // rhs: del phi_1 ^ ... + (-1)^{m-1} delbar phi_1 ^ ...
                NForm del(vars), delb(vars);
                del.comp[0] = 1.0;
                delb.comp[0] = 1.0;
                for (const auto& f : fs) {
                    auto g = f.dlog(z);
                    std::vector<Cpx> half(vars), halfc(vars), zero(vars, Cpx(0.0));
                    for (int i = 0; i < vars; ++i) {
                        half[i] = 0.5 * g[i];
                        halfc[i] = 0.5 * std::conj(g[i]);
                    }
                    NForm dpi(vars), dbpi(vars);
                    for (int i = 0; i < vars; ++i) {
                        dpi.comp[1u << i] = half[i];
                        dbpi.comp[1u << (i + vars)] = halfc[i];
                    }
                    del = del.wedge(dpi);
                    delb = delb.wedge(dbpi);
                }
                NForm rhs = (m % 2) ? del + delb : del - delb;  // (-1)^{m-1}
                double scale = rhs.max_abs() + 1.0;
                CHECK((lhs - rhs).max_abs() / scale < 1e-5);
            }
        }
    }
}

TEST_CASE("Lhat_{p,q} forms") {
    Rng rng(304);
    SUBCASE("q = 1, p = 2 specialization") {
        auto f = random_map(rng);
        Cpx z = generic_point(rng);
        FormValue v = lhat_pq(2, 1, f, z);
        FormValue expect = dlog_abs(f, z) * polylog_hat(2, f.eval(z));
        CHECK((v - expect).max_abs() < 1e-13);
    }
    SUBCASE("parity: even p at positive real values gives imaginary coefficients") {
        RationalMapQ f(Poly{rat(2), rat(0), rat(1)}, Poly::constant(rat(1)));  // t^2 + 2
        double x = 0.7;  // f(x) real > 0 along the real axis
        FormValue v = lhat_pq(2, 3, f, Cpx(x, 0.0));
        CHECK(std::abs(v.cz.real()) < 1e-14);
        CHECK(std::abs(v.czb.real()) < 1e-14);
    }
}

TEST_CASE("reg_form against the printed specializations") {
    Rng rng(305);
    SUBCASE("m = 0 is Lhat_n") {
        for (int n : {2, 3, 4}) {
            auto f = random_map(rng);
            Cpx z = generic_point(rng);
            FormValue v = reg_form(n, 0, f, {}, z);
            CHECK(std::abs(v.c0 - polylog_hat(n, f.eval(z))) < 1e-12);
        }
    }
    SUBCASE("m = 1 matches the first printed example") {
        const auto& bt = beta_table();
        for (int n : {2, 3, 4}) {
            for (int t = 0; t < 5; ++t) {
                auto f = random_map(rng);
                auto g = random_map(rng);
                Cpx z = generic_point(rng);
                FormValue expect = darg_i(g, z) * polylog_hat(n, f.eval(z));
                double lg = std::log(std::abs(g.eval(z)));
                for (int k = 1; k <= n - 1; ++k)
                    expect = expect - lhat_pq(n - k, k, f, z) * (bt.beta_d(k + 1) * lg);
                FormValue got = reg_form(n, 1, f, {g}, z);
                CHECK((got - expect).max_abs() < 1e-10);
            }
        }
    }
    SUBCASE("m = 2 matches the second printed example") {
        const auto& bt = beta_table();
        for (int n : {2, 3}) {
            auto f = random_map(rng);
            auto g1 = random_map(rng), g2 = random_map(rng);
            Cpx z = generic_point(rng);
            FormValue expect =
                (darg_i(g1, z).wedge(darg_i(g2, z)) +
                 dlog_abs(g1, z).wedge(dlog_abs(g2, z)) * (1.0 / 3.0)) *
                polylog_hat(n, f.eval(z));
            double l1 = std::log(std::abs(g1.eval(z))), l2 = std::log(std::abs(g2.eval(z)));
            for (int k = 1; k <= n - 1; ++k) {
                FormValue mixed = darg_i(g2, z) * l1 - darg_i(g1, z) * l2;
                expect = expect - lhat_pq(n - k, k, f, z).wedge(mixed) * bt.beta_d(k + 1);
                FormValue logs = dlog_abs(g2, z) * l1 - dlog_abs(g1, z) * l2;
                expect = expect + lhat_pq(n - k, k, f, z).wedge(logs) * bt.beta_d(k + 2);
            }
            FormValue got = reg_form(n, 2, f, {g1, g2}, z);
            CHECK((got - expect).max_abs() < 1e-10);
        }
    }
    SUBCASE("weight-three r_3(2) display is reproduced by the machinery") {
        for (int t = 0; t < 10; ++t) {
            auto f = random_map(rng);
            auto g = random_map(rng);
            Cpx z = generic_point(rng);
            Cpx fv = f.eval(z);
            RationalMapQ omf = RationalMapQ::constant(rat(1)) - f;
            double lg = std::log(std::abs(g.eval(z)));
            double lf = std::log(std::abs(fv));
            double lomf = std::log(std::abs(omf.eval(z)));
            FormValue display = darg_i(g, z) * polylog_hat(2, fv) -
                                (dlog_abs(f, z) * (-lomf) + dlog_abs(omf, z) * lf) * (lg / 3.0);
            FormValue got = reg_form(2, 1, f, {g}, z);
            CHECK((got - display).max_abs() < 1e-10);
            CHECK((weight_map(3, 2, CurveElement{2, f, {g}}, z).density - display).max_abs() <
                  1e-10);
        }
    }
}

TEST_CASE("chain map") {
    Rng rng(306);
    auto sample = [&rng](int atoms) {
        while (true) {
            auto f = random_map(rng, atoms);
            if (!f.is_constant()) return f;
        }
    };
    SUBCASE("weight 2, first square") {
        int done = 0;
        while (done < 20) {
            auto f = sample(2);
            Cpx z = generic_point(rng);
            try {
                double defect = chain_map_defect(2, 1, CurveElement{2, f, {}}, z);
                CHECK(defect < 1e-4);
                ++done;
            } catch (const singular_point&) {
            }
        }
    }
    SUBCASE("weight 3, middle square") {
        int done = 0;
        while (done < 20) {
            auto f = sample(2);
            auto g = sample(2);
            Cpx z = generic_point(rng);
            try {
                double defect = chain_map_defect(3, 2, CurveElement{2, f, {g}}, z);
                CHECK(defect < 1e-4);
                ++done;
            } catch (const singular_point&) {
            }
        }
    }
    SUBCASE("weight 3, first square") {
        int done = 0;
        while (done < 10) {
            auto f = sample(2);
            Cpx z = generic_point(rng);
            try {
                double defect = chain_map_defect(3, 1, CurveElement{3, f, {}}, z);
                CHECK(defect < 1e-4);
                ++done;
            } catch (const singular_point&) {
            }
        }
    }
    SUBCASE("defect decreases under step refinement") {
        auto f = sample(2);
        Cpx z(0.63, 0.41);
        double d1 = chain_map_defect(2, 1, CurveElement{2, f, {}}, z, 2e-2);
        double d2 = chain_map_defect(2, 1, CurveElement{2, f, {}}, z, 1e-2);
        CHECK(d2 < d1);
    }
    SUBCASE("weight-2 top square with the pi_2 correction (zero on a curve)") {
        int done = 0;
        while (done < 10) {
            auto f = sample(2);
            auto g = sample(2);
            Cpx z = generic_point(rng);
            try {
                double defect = chain_map_defect(2, 2, CurveElement{0, {}, {f, g}}, z);
                CHECK(defect < 1e-4);
                ++done;
            } catch (const singular_point&) {
            }
        }
    }
}

TEST_CASE("r'_4(2)") {
    Rng rng(307);
    auto f = random_map(rng), g = random_map(rng);
    Cpx z = generic_point(rng);
    SUBCASE("antisymmetry") {
        CHECK(r4p2(f, f, z).max_abs() < 1e-14);
        FormValue a = r4p2(f, g, z);
        FormValue b = r4p2(g, f, z);
        CHECK((a + b).max_abs() < 1e-13);
    }
    SUBCASE("matches term-by-term evaluation") {
        RationalMapQ one = RationalMapQ::constant(rat(1));
        auto alpha_direct = [&](const RationalMapQ& a, const RationalMapQ& b) {
            double la = std::log(std::abs(a.eval(z)));
            double lb = std::log(std::abs(b.eval(z)));
            Cpx wa = a.dlog(z), wb = b.dlog(z);
            return FormValue::one_form(-la * 0.5 * wb + lb * 0.5 * wa,
                                       -la * 0.5 * std::conj(wb) + lb * 0.5 * std::conj(wa));
        };
        FormValue expect = (alpha_direct(one - f, f) * polylog_hat(2, g.eval(z)) -
                            alpha_direct(one - g, g) * polylog_hat(2, f.eval(z))) *
                           (1.0 / 3.0);
        CHECK((r4p2(f, g, z) - expect).max_abs() < 1e-13);
    }
}

TEST_CASE("weight map slots and mismatches") {
    Rng rng(308);
    auto f = random_map(rng);
    Cpx z = generic_point(rng);
    CHECK(weight_map(2, 1, CurveElement{2, f, {}}, z).support.empty());
    CHECK(weight_map(2, 3, CurveElement{0, {}, {f}}, z).support == "Y1");
    CHECK(weight_map(3, 3, CurveElement{2, f, {}}, z).support == "Y1");
    CHECK_THROWS_AS(weight_map(2, 1, CurveElement{0, {}, {f}}, z), std::invalid_argument);
    FormValue r22 = weight_map(2, 2, CurveElement{0, {}, {f, f * f}}, z).density;
    CHECK(r22.degree == 1);
}
