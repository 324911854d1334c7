#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grassmann.hpp"
#include "support.hpp"

using namespace reglab;

namespace {

VecC random_cov2(Rng& rng) {
    return VecC{rng.complex_in_disk(1.5) + Cpx(0.4, 0.2), rng.complex_in_disk(1.5) + Cpx(1.0, 0.0)};
}

HyperplaneConfig random_cfg2(Rng& rng) {
    HyperplaneConfig cfg;
    cfg.n = 2;
    for (int i = 0; i < 4; ++i) cfg.covectors.push_back(random_cov2(rng));
    return cfg;
}

}  // namespace

TEST_CASE("integrate_cp1 sanity") {
    SUBCASE("Fubini-Study chart integral") {
        // density 1/(1+|z|^2)^2 integrates to pi over the chart
        auto est = integrate_cp1(
            [](Cpx z) { return Cpx(1.0 / std::pow(1.0 + std::norm(z), 2), 0.0); }, {}, 100000,
            1e-9);
        CHECK(std::abs(est.value.real() - 3.14159265358979) < 1e-7);
    }
    SUBCASE("budget flag") {
        auto est = integrate_cp1(
            [](Cpx z) { return Cpx(std::log(std::abs(z - 0.3)), 0.0); }, {Cpx(0.3, 0.0)}, 3000,
            1e-12);
        CHECK_FALSE(est.budget_ok);
    }
}

TEST_CASE("Grassmannian dilogarithm") {
    Rng rng(91);
    SUBCASE("matches -2 L_2(r) on random configurations") {
        for (int t = 0; t < 6; ++t) {
            auto cfg = random_cfg2(rng);
            GrassmannOptions opt;
            opt.budget = 400'000;
            opt.tol = 1e-6;
            auto est = grassmann_polylog(cfg, opt);
            double closed = grassmann_polylog2_closed(cfg);
            CHECK(std::abs(lg_real(2, est) - closed) < 1e-4);
        }
    }
    SUBCASE("independent of the auxiliary hyperplane") {
        auto cfg = random_cfg2(rng);
        GrassmannOptions oa;
        oa.h0_index = -2;
        oa.h0 = random_cov2(rng);
        oa.budget = 400'000;
        oa.tol = 1e-6;
        GrassmannOptions ob = oa;
        ob.h0 = random_cov2(rng);
        auto ea = grassmann_polylog(cfg, oa);
        auto eb = grassmann_polylog(cfg, ob);
        auto er = grassmann_polylog(cfg);
        CHECK(std::abs(ea.value.imag() - eb.value.imag()) <
              3.0 * (ea.std_error + eb.std_error) + 1e-5);
        CHECK(std::abs(ea.value.imag() - er.value.imag()) <
              3.0 * (ea.std_error + er.std_error) + 1e-5);
    }
    SUBCASE("skew symmetry under a transposition") {
        auto cfg = random_cfg2(rng);
        auto base = grassmann_polylog(cfg);
        std::swap(cfg.covectors[1], cfg.covectors[3]);
        auto swapped = grassmann_polylog(cfg);
        CHECK(std::abs(base.value.imag() + swapped.value.imag()) <
              3.0 * (base.std_error + swapped.std_error) + 1e-5);
    }
    SUBCASE("coincident hyperplanes are rejected") {
        auto cfg = random_cfg2(rng);
        cfg.covectors[2] = cfg.covectors[0];
        for (auto& v : cfg.covectors[2]) v *= Cpx(2.0, 1.0);
        CHECK_THROWS_AS(grassmann_polylog(cfg), degenerate_input);
    }
}

TEST_CASE("Grassmannian trilogarithm vs closed form") {
    Rng rng(93);
    // one moderate-budget config in unit tests; the acceptance suite runs the
    // full five-config criterion
    std::array<VecC, 6> pts;
    HyperplaneConfig cfg;
    cfg.n = 3;
    for (int i = 0; i < 6; ++i) {
        pts[i] = VecC{rng.complex_in_disk(1.5) + Cpx(0.4, 0.1), rng.complex_in_disk(1.5),
                      rng.complex_in_disk(1.5) + Cpx(0.2, -0.3)};
        cfg.covectors.push_back(pts[i]);
    }
    GrassmannOptions opt;
    opt.budget = 2'000'000;
    opt.seed = 5;
    auto est = grassmann_polylog(cfg, opt);
    double closed = grassmann_polylog3_closed(pts);
    CHECK(std::abs(lg_real(3, est) - closed) < 4.0 * est.std_error + 0.01);
}

TEST_CASE("cocycle equations for n = 2") {
    Rng rng(95);
    GrassmannOptions opt;
    opt.budget = 300'000;
    opt.tol = 1e-6;
    SUBCASE("five hyperplanes in CP^2") {
        std::vector<VecC> hs;
        for (int i = 0; i < 5; ++i)
            hs.push_back(VecC{rng.complex_in_disk(1.5) + Cpx(0.5, 0.1), rng.complex_in_disk(1.5),
                              rng.complex_in_disk(1.5) + Cpx(0.2, 0.4)});
        CHECK(cocycle_defect_a(hs, opt) < 5e-3);
    }
    SUBCASE("five hyperplanes in CP^1") {
        std::vector<VecC> hs;
        for (int i = 0; i < 5; ++i) hs.push_back(random_cov2(rng));
        CHECK(cocycle_defect_b(hs, opt) < 5e-3);
    }
    SUBCASE("degenerate input") {
        std::vector<VecC> hs;
        for (int i = 0; i < 5; ++i) hs.push_back(random_cov2(rng));
        hs[3] = hs[1];
        CHECK_THROWS_AS(cocycle_defect_b(hs, opt), degenerate_input);
    }
}

TEST_CASE("special configurations vs the theorem value") {
    SUBCASE("n = 2 sign calibration (golden)") {
        Cpx a(0.4, 0.7);
        HyperplaneConfig cfg;
        cfg.n = 2;
        cfg.covectors = special_config_covectors(2, a);
        GrassmannOptions opt;
        opt.budget = 400'000;
        opt.tol = 1e-6;
        auto est = grassmann_polylog(cfg, opt);
        CHECK(kSpecialValueSign == -1);
        CHECK(std::abs(lg_real(2, est) - kSpecialValueSign * special_value_c(2, a)) < 1e-4);
    }
    SUBCASE("real parameter in (0,1) gives zero") {
        Cpx a(0.37, 0.0);
        HyperplaneConfig cfg;
        cfg.n = 2;
        cfg.covectors = special_config_covectors(2, a);
        auto est = grassmann_polylog(cfg);
        CHECK(std::abs(lg_real(2, est)) < 1e-6);
        CHECK(special_value_c(2, a) == 0.0);
    }
    SUBCASE("exact configuration round trip") {
        auto cfg = make_special_config(3, rat(5, 2));
        CHECK(std::abs(special_value(cfg) -
                       special_value_c(3, Cpx(2.5, 0.0))) < 1e-12);
    }
    SUBCASE("non-special input is rejected") {
        ConfigQ cfg = make_special_config(3, rat(2));
        cfg.points[4][0] = 1;
        CHECK_THROWS_AS(special_value(cfg), degenerate_input);
    }
}

TEST_CASE("psi_2") {
    Rng rng(97);
    SUBCASE("rescaling one form leaves the integral unchanged") {
        std::array<HermForm, 4> forms;
        for (auto& f : forms) f = HermForm::random_posdef(rng);
        auto base = psi2(forms, 200'000, 1e-6);
        forms[2] = forms[2].scaled(3.7);
        auto scaled = psi2(forms, 200'000, 1e-6);
        CHECK(std::abs(base.value.real() - scaled.value.real()) < 1e-8);
    }
    SUBCASE("permutation antisymmetry") {
        std::array<HermForm, 4> forms;
        for (auto& f : forms) f = HermForm::random_posdef(rng);
        auto base = psi2(forms, 200'000, 1e-6);
        std::swap(forms[0], forms[1]);
        auto swapped = psi2(forms, 200'000, 1e-6);
        CHECK(std::abs(base.value.real() + swapped.value.real()) < 1e-8);
    }
    SUBCASE("additivity over five measures") {
        std::array<HermForm, 5> forms;
        for (auto& f : forms) f = HermForm::random_posdef(rng);
        CHECK(psi2_additivity_defect(forms, 150'000, 1e-7) < 1e-6);
    }
    SUBCASE("boundary forms reproduce the recorded multiple of L^G_2") {
        HyperplaneConfig cfg;
        std::array<HermForm, 4> forms;
        cfg.n = 2;
        for (int i = 0; i < 4; ++i) {
            VecC a = random_cov2(rng);
            cfg.covectors.push_back(a);
            forms[i] = HermForm::boundary(a);
        }
        GrassmannOptions opt;
        opt.budget = 400'000;
        opt.tol = 1e-7;
        auto lg = grassmann_polylog(cfg, opt);
        auto ps = psi2(forms, 400'000, 1e-6);
        double ratio = ps.value.real() / lg_real(2, lg);
        // measured: -32 pi; the printed magnitude is 16 pi (factor-2/i-power
        // convention slack recorded in the golden calibration)
        CHECK(std::abs(ratio + 2.0 * psi2_constant_magnitude()) <
              0.01 * 2.0 * psi2_constant_magnitude());
    }
    SUBCASE("degenerate input is rejected") {
        std::array<HermForm, 4> forms;
        for (auto& f : forms) f = HermForm::random_posdef(rng);
        forms[1].h[0][1] = Cpx(5.0, 2.0);  // not Hermitian
        CHECK_THROWS_AS(psi2(forms, 10'000, 1e-3), degenerate_input);
    }
}
