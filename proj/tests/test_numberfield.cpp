#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "numberfield.hpp"
#include "support.hpp"

using namespace reglab;

TEST_CASE("fundamental discriminants") {
    CHECK(is_fundamental_discriminant(5));
    CHECK(is_fundamental_discriminant(8));
    CHECK(is_fundamental_discriminant(-3));
    CHECK(is_fundamental_discriminant(-4));
    CHECK(is_fundamental_discriminant(-23));
    CHECK_FALSE(is_fundamental_discriminant(9));
    CHECK_FALSE(is_fundamental_discriminant(-9));
    CHECK_FALSE(is_fundamental_discriminant(12 * 4));
    CHECK_FALSE(is_fundamental_discriminant(1));
    CHECK_THROWS(field_data(9));
}

TEST_CASE("field data for the pinned examples") {
    SUBCASE("D = 5") {
        auto F = field_data(5);
        CHECK(F.h == 1);
        CHECK(F.w == 2);
        CHECK(F.eps_x == 1);
        CHECK(F.eps_y == 1);  // (1 + sqrt 5)/2
        CHECK(F.eps_norm == -1);
        CHECK(std::abs(F.regulator - 0.4812118250596035) < 1e-12);
    }
    SUBCASE("D = -23") {
        auto F = field_data(-23);
        CHECK(F.h == 3);
        CHECK(F.w == 2);
    }
    SUBCASE("D = -4") {
        auto F = field_data(-4);
        CHECK(F.h == 1);
        CHECK(F.w == 4);
    }
    SUBCASE("D = -3") {
        auto F = field_data(-3);
        CHECK(F.h == 1);
        CHECK(F.w == 6);
    }
}

TEST_CASE("class numbers against the analytic oracle (imaginary)") {
    // independent oracle: h = w |S1| / (2|D|) with S1 = sum chi(a) a (exact)
    for (long D = -3; D >= -500; --D) {
        if (!is_fundamental_discriminant(D)) continue;
        auto F = field_data(D);
        Int S1 = 0;
        for (long a = 1; a < -D; ++a) S1 += Int(kronecker(D, a)) * a;
        Rat expect(Int(F.w) * (-S1), Int(2 * (-D)));
        expect.canonicalize();
        CHECK(expect == F.h);
    }
}

TEST_CASE("fundamental units against Pell brute force (real)") {
    int tested = 0;
    for (long D = 5; D <= 500; ++D) {
        if (!is_fundamental_discriminant(D)) continue;
        auto oracle = pell_search(D, Int(30000));
        if (!oracle) continue;  // unit too large for the brute-force bound
        auto F = field_data(D);
        CHECK(F.eps_x == oracle->first);
        CHECK(F.eps_y == oracle->second);
        ++tested;
    }
    CHECK(tested > 50);
    SUBCASE("analytic class number cross-check") {
        for (long D : {5L, 8L, 12L, 13L, 40L, 60L, 65L, 229L}) {
            auto F = field_data(D);
            auto zv = zeta_quadratic(F);
            double analytic = std::sqrt(static_cast<double>(D)) * zv.residue_s1 /
                              (2.0 * F.regulator);
            CHECK(std::abs(analytic - F.h) < 1e-6);
        }
    }
}

TEST_CASE("form composition sanity") {
    long D = -23;
    QForm id = principal_form(D);
    QForm f = reduce_form({2, 1, 3});  // a non-principal class of D = -23
    CHECK(compose_forms(id, f) == f);
    QForm f_inv = reduce_form({f.a, -f.b, f.c});
    CHECK(compose_forms(f, f_inv) == id);
    // the class group of D = -23 is cyclic of order 3
    QForm f2 = compose_forms(f, f);
    CHECK(compose_forms(f2, f) == id);
    CHECK_FALSE(f2 == f);
    CHECK_FALSE(f2 == id);
}

TEST_CASE("measured complexes") {
    SUBCASE("single compact group: measure to the (-1)^i") {
        MeasuredComplex cx;
        cx.first_degree = 2;
        MeasuredGroup g;
        g.torus_rank = 1;
        g.torus_vol = 3.5;
        cx.groups = {g};
        CHECK(std::abs(r_mu(cx) - 3.5) < 1e-14);
        cx.first_degree = 1;
        CHECK(std::abs(r_mu(cx) - 1.0 / 3.5) < 1e-14);
    }
    SUBCASE("shift inverts the invariant") {
        MeasuredComplex cx;
        cx.first_degree = 0;
        MeasuredGroup a, b;
        a.free_rank = 1;
        b.free_rank = 1;
        cx.groups = {a, b};
        MeasuredMap m;
        m.int_block = {{2}};
        cx.maps = {m};
        double v = r_mu(cx);
        CHECK(std::abs(v - 0.5) < 1e-14);  // Z --2--> Z ~ Z/2 in degree 1
        CHECK(std::abs(r_mu(cx.shifted()) - 1.0 / v) < 1e-14);
    }
    SUBCASE("padding with zero groups does not change the value") {
        MeasuredComplex cx;
        cx.first_degree = 0;
        MeasuredGroup a, b, zero;
        a.free_rank = 1;
        b.free_rank = 1;
        cx.groups = {a, b};
        MeasuredMap m;
        m.int_block = {{3}};
        cx.maps = {m};
        double v = r_mu(cx);
        MeasuredComplex padded;
        padded.first_degree = -2;
        padded.groups = {zero, zero, a, b, zero};
        MeasuredMap z1, z2, z3;
        z2.int_block = {{3}};
        padded.maps = {z1, z1, z2, z3};
        CHECK(std::abs(r_mu(padded) - v) < 1e-14);
    }
    SUBCASE("acyclic two-term real complex has the scale ratio") {
        MeasuredComplex cx;
        cx.first_degree = 0;
        MeasuredGroup a, b;
        a.free_rank = 1;
        a.scale = 1.0;
        b.real_rank = 1;
        b.scale = 1.0;
        cx.groups = {a, b};
        MeasuredMap m;
        m.real_block = {{0.25}};  // Z -> R: H^1 = R/(0.25 Z) of volume 1/4 in degree 1
        cx.maps = {m};
        CHECK(std::abs(r_mu(cx) - 4.0) < 1e-13);
    }
    SUBCASE("non-compact cohomology is rejected") {
        MeasuredComplex cx;
        cx.first_degree = 0;
        MeasuredGroup a, b;
        a.free_rank = 1;
        b.real_rank = 2;  // quotient R^2 / Z v is non-compact
        cx.groups = {a, b};
        MeasuredMap m;
        m.real_block = {{1.0}, {0.5}};
        cx.maps = {m};
        CHECK_THROWS_AS(r_mu(cx), std::invalid_argument);
    }
}

TEST_CASE("weight-one complex and the class number formula") {
    SUBCASE("D = 5: covolume of the unit lattice") {
        auto F = field_data(5);
        auto data = weight_one_complex(F);
        CHECK(data.s_primes.empty());
        double v = r_mu(data.complex);
        CHECK(std::abs(v - F.h * F.regulator / F.w) < 1e-12);
        CHECK(data.product_formula_defect < 1e-12);
    }
    SUBCASE("D = -23: h/w and torsion H^1") {
        auto F = field_data(-23);
        auto data = weight_one_complex(F);
        CHECK_FALSE(data.s_primes.empty());
        double v = r_mu(data.complex);
        CHECK(std::abs(v - 1.5) < 1e-10);
        CHECK(data.complex.groups[0].torsion == 2);  // H^1 = mu_F
        CHECK(data.product_formula_defect < 1e-12);
    }
    SUBCASE("product formula on unit and prime generators") {
        for (long D : {-15L, -20L, -23L, -47L, -84L}) {
            auto data = weight_one_complex(field_data(D));
            CHECK(data.product_formula_defect < 1e-12);
        }
    }
    SUBCASE("class number formula, imaginary quadratic, exact sums") {
        auto chk = class_number_formula_check(-23);
        CHECK(chk.pass);
        CHECK(std::abs(chk.lhs + 1.5) < 1e-10);
        CHECK(std::abs(chk.rhs + 1.5) < 1e-12);
        auto chk4 = class_number_formula_check(-4);
        CHECK(chk4.pass);
        CHECK(std::abs(chk4.rhs + 0.25) < 1e-14);
    }
    SUBCASE("class number formula, real quadratic, residue route") {
        for (long D : {5L, 8L, 13L, 17L, 29L}) {
            auto chk = class_number_formula_check(D);
            CHECK(chk.pass);
            CHECK(chk.abs_err < 1e-6);
        }
    }
    SUBCASE("ten-field imaginary sweep") {
        int count = 0;
        for (long D = -3; D >= -200 && count < 10; --D) {
            if (!is_fundamental_discriminant(D)) continue;
            auto chk = class_number_formula_check(D);
            CHECK(chk.pass);
            ++count;
        }
        CHECK(count == 10);
    }
}

TEST_CASE("zeta values") {
    SUBCASE("D = 5 residue matches the class number data") {
        auto F = field_data(5);
        auto zv = zeta_quadratic(F);
        double expect = 4.0 * F.regulator * F.h / (F.w * std::sqrt(5.0));
        CHECK(std::abs(zv.residue_s1 - expect) < 1e-9);
    }
    SUBCASE("D = -23 exact L(0)") {
        auto F = field_data(-23);
        auto zv = zeta_quadratic(F);
        CHECK(zv.l_chi_0 == 3);  // L(0, chi) = 2h/w = 3
        CHECK(zv.lim_s0 == -1.5);
    }
    SUBCASE("imaginary residue matches 2 pi h / (w sqrt|D|)") {
        for (long D : {-4L, -7L, -23L, -47L}) {
            auto F = field_data(D);
            auto zv = zeta_quadratic(F);
            double expect = 2.0 * 3.14159265358979323846 * F.h /
                            (F.w * std::sqrt(static_cast<double>(-D)));
            CHECK(std::abs(zv.residue_s1 - expect) < 1e-10);
        }
    }
}
