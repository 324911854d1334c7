#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "projective.hpp"
#include "support.hpp"

using namespace reglab;

namespace {

Rat rrat(Rng& rng, long lo = -9, long hi = 9) {
    long num = lo + static_cast<long>(rng.below(hi - lo + 1));
    long den = 1 + static_cast<long>(rng.below(7));
    return rat(num, den);
}

VecQ rvec(Rng& rng, int dim) {
    while (true) {
        VecQ v(dim);
        bool nonzero = false;
        for (auto& q : v) {
            q = rrat(rng);
            if (q != 0) nonzero = true;
        }
        if (nonzero) return v;
    }
}

VecC cvec(Rng& rng, int dim, double radius = 2.0) {
    VecC v(dim);
    for (auto& z : v) z = rng.complex_in_disk(radius) + Cpx(0.1, 0.1);
    return v;
}

std::vector<std::vector<Rat>> random_gl(Rng& rng, int n) {
    while (true) {
        std::vector<std::vector<Rat>> g(n, std::vector<Rat>(n));
        for (auto& row : g)
            for (auto& q : row) q = rrat(rng, -5, 5);
        // determinant by elimination
        auto m = g;
        Rat det = 1;
        bool ok = true;
        for (int c = 0; c < n && ok; ++c) {
            int p = -1;
            for (int r = c; r < n; ++r)
                if (m[r][c] != 0) {
                    p = r;
                    break;
                }
            if (p < 0) {
                ok = false;
                break;
            }
            if (p != c) {
                std::swap(m[p], m[c]);
                det = -det;
            }
            det *= m[c][c];
            for (int r = c + 1; r < n; ++r) {
                Rat f = m[r][c] / m[c][c];
                for (int c2 = c; c2 < n; ++c2) m[r][c2] -= f * m[c][c2];
            }
        }
        if (ok && det != 0) return g;
    }
}

VecQ apply_gl(const std::vector<std::vector<Rat>>& g, const VecQ& v) {
    VecQ out(v.size(), rat(0));
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += g[i][j] * v[j];
    return out;
}

}  // namespace

TEST_CASE("exact cross-ratio") {
    Rng rng(3);
    SUBCASE("projective invariance under random Mobius maps") {
        for (int trial = 0; trial < 30; ++trial) {
            std::array<VecQ, 4> z;
            for (auto& v : z) v = rvec(rng, 2);
            bool distinct = true;
            for (int i = 0; i < 4 && distinct; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (z[i][0] * z[j][1] == z[i][1] * z[j][0]) distinct = false;
            if (!distinct) {
                --trial;
                continue;
            }
            Rat r0 = cross_ratio(z[0], z[1], z[2], z[3]);
            auto g = random_gl(rng, 2);
            Rat r1 = cross_ratio(apply_gl(g, z[0]), apply_gl(g, z[1]), apply_gl(g, z[2]), apply_gl(g, z[3]));
            CHECK(r0 == r1);
        }
    }
    SUBCASE("normal form r(inf, 0, 1, x) = x") {
        // frozen convention: r(z1,z2,z3,z4) = (z1-z3)(z2-z4)/((z1-z4)(z2-z3))
        for (long xv : {2L, 3L, 5L, -7L}) {
            Rat r = cross_ratio_p1(std::nullopt, rat(0), rat(1), rat(xv));
            CHECK(r == rat(xv));
        }
    }
    SUBCASE("repetition is rejected") {
        VecQ a{rat(1), rat(2)}, b{rat(2), rat(4)}, c{rat(0), rat(1)}, d{rat(1), rat(1)};
        CHECK_THROWS_AS(cross_ratio(a, b, c, d), degenerate_input);
    }
    SUBCASE("collinearity is required") {
        VecQ a{rat(1), rat(0), rat(0)}, b{rat(0), rat(1), rat(0)}, c{rat(0), rat(0), rat(1)},
            d{rat(1), rat(1), rat(1)};
        CHECK_THROWS_AS(cross_ratio(a, b, c, d), degenerate_input);
    }
}

TEST_CASE("special configurations") {
    Rng rng(17);
    SUBCASE("constructed configuration carries its parameter") {
        for (long av : {2L, 3L, -5L}) {
            for (int n : {2, 3, 4}) {
                auto cfg = make_special_config(n, rat(av));
                CHECK(is_special_config(cfg));
                CHECK(gen_cross_ratio_special(cfg) == rat(av));
            }
        }
    }
    SUBCASE("n = 2 reduces to the 4-point cross-ratio") {
        auto cfg = make_special_config(2, rat(7, 3));
        Rat via_edge = cross_ratio(cfg.points[0], cfg.points[1], cfg.points[2], cfg.points[3]);
        CHECK(via_edge == gen_cross_ratio_special(cfg));
    }
    SUBCASE("independent of the edge index and cyclically invariant") {
        for (int trial = 0; trial < 50; ++trial) {
            int n = 2 + static_cast<int>(rng.below(3));
            // random special configuration: random simplex + random edge points
            auto g = random_gl(rng, n);
            ConfigQ cfg;
            cfg.dim = n;
            std::vector<VecQ> l(n);
            for (int i = 0; i < n; ++i) {
                VecQ e(n, rat(0));
                e[i] = 1;
                l[i] = apply_gl(g, e);
                cfg.points.push_back(l[i]);
            }
            std::vector<Rat> alpha(n), beta(n);
            for (int i = 0; i < n; ++i) {
                do {
                    alpha[i] = rrat(rng, -6, 6);
                } while (alpha[i] == 0);
                do {
                    beta[i] = rrat(rng, -6, 6);
                } while (beta[i] == 0);
                VecQ m(n, rat(0));
                for (int r = 0; r < n; ++r)
                    m[r] = alpha[i] * l[i][r] + beta[i] * l[(i + 1) % n][r];
                cfg.points.push_back(m);
            }
            Rat a = gen_cross_ratio_special(cfg);
            for (int e = 0; e < n; ++e) CHECK(gen_cross_ratio_edge(cfg, e) == a);
            // cyclic relabeling (l, m shifted by one)
            ConfigQ shifted;
            shifted.dim = n;
            for (int i = 0; i < n; ++i) shifted.points.push_back(cfg.points[(i + 1) % n]);
            for (int i = 0; i < n; ++i) shifted.points.push_back(cfg.points[n + (i + 1) % n]);
            CHECK(gen_cross_ratio_special(shifted) == a);
        }
    }
    SUBCASE("non-special input is rejected") {
        ConfigQ cfg = make_special_config(3, rat(2));
        cfg.points[4][0] = 1;  // push m_1 off its edge
        CHECK_THROWS_AS(gen_cross_ratio_special(cfg), degenerate_input);
    }
}

TEST_CASE("generalized cross-ratio of 6 points") {
    Rng rng(23);
    auto random_p2 = [&rng](std::array<VecQ, 6>& x) {
        for (auto& v : x) v = rvec(rng, 3);
    };
    SUBCASE("GL_3 action leaves the formal sum unchanged") {
        for (int trial = 0; trial < 5; ++trial) {
            std::array<VecQ, 6> x;
            random_p2(x);
            FormalSum<Rat> base;
            try {
                base = r3_element(x);
            } catch (const degenerate_input&) {
                --trial;
                continue;
            }
            auto g = random_gl(rng, 3);  // arbitrary determinant: also covers volume-form rescale
            std::array<VecQ, 6> gx;
            for (int i = 0; i < 6; ++i) gx[i] = apply_gl(g, x[i]);
            CHECK(r3_element(gx) == base);
        }
    }
    SUBCASE("degenerate triple is named") {
        std::array<VecQ, 6> x;
        random_p2(x);
        x[2] = x[0];  // forces collinear triples containing 0 and 2
        for (auto& v : x[2]) v *= 2;
        CHECK_THROWS_WITH_AS(r3_element(x), doctest::Contains("collinear"), degenerate_input);
    }
}

TEST_CASE("trilogarithm seven-term relation") {
    Rng rng(29);
    int done = 0;
    while (done < 3) {  // the acceptance suite runs the full 20; keep unit tests fast
        std::array<VecC, 7> x;
        for (auto& v : x) v = cvec(rng, 3);
        try {
            double defect = trilog7_defect(x);
            CHECK(defect < 1e-6);
            ++done;
        } catch (const degenerate_input&) {
            continue;
        }
    }
    SUBCASE("SL_3 motion preserves the defect terms") {
        std::array<VecC, 7> x;
        for (auto& v : x) v = cvec(rng, 3);
        double d0 = trilog7_defect(x);
        // random complex shear with determinant 1
        std::array<VecC, 7> y;
        for (int i = 0; i < 7; ++i) {
            const auto& v = x[i];
            y[i] = {v[0] + Cpx(0.3, -0.2) * v[1], v[1] + Cpx(0.1, 0.4) * v[2], v[2]};
        }
        double d1 = trilog7_defect(y);
        CHECK(std::abs(d0 - d1) < 1e-8);
    }
    SUBCASE("degenerate seven-tuple is rejected") {
        std::array<VecC, 7> x;
        for (auto& v : x) v = cvec(rng, 3);
        x[1] = x[0];
        CHECK_THROWS_AS(trilog7_defect(x), degenerate_input);
    }
}

TEST_CASE("Grassmannian complex differentials") {
    Rng rng(41);
    SUBCASE("d o d = 0") {
        for (int trial = 0; trial < 10; ++trial) {
            ConfigQ cfg;
            cfg.dim = 2 + static_cast<int>(rng.below(2));
            int m = cfg.dim + 2 + static_cast<int>(rng.below(3));
            for (int i = 0; i < m; ++i) cfg.points.push_back(rvec(rng, cfg.dim));
            CHECK(grassmann_d(grassmann_d(cfg)).is_zero());
        }
    }
    SUBCASE("k = 1 pair maps to (l_1) - (l_0)") {
        ConfigQ cfg;
        cfg.dim = 2;
        cfg.points = {VecQ{rat(1), rat(2)}, VecQ{rat(3), rat(5)}};
        auto d = grassmann_d(cfg);
        // single nonzero vectors all lie in one GL_2 orbit, so the formula
        // (l_1) - (l_0) collapses to zero after canonicalization
        CHECK(d.is_zero());
        ConfigQ a;
        a.dim = 2;
        a.points = {cfg.points[0]};
        ConfigQ b;
        b.dim = 2;
        b.points = {cfg.points[1]};
        CHECK(a.canonical() == b.canonical());
    }
    SUBCASE("five vectors in dim 2: hand expansion") {
        ConfigQ cfg;
        cfg.dim = 2;
        for (int i = 0; i < 5; ++i) cfg.points.push_back(rvec(rng, 2));
        auto d = grassmann_d(cfg);
        FormalSum<ConfigQ> hand;
        for (int i = 0; i < 5; ++i) {
            ConfigQ sub;
            sub.dim = 2;
            for (int j = 0; j < 5; ++j)
                if (j != i) sub.points.push_back(cfg.points[j]);
            hand.add(sub.canonical(), rat(i % 2 ? -1 : 1));
        }
        CHECK(d == hand);
    }
    SUBCASE("projection of 3 vectors in dim 2 lands in dim 1") {
        ConfigQ cfg;
        cfg.dim = 2;
        cfg.points = {VecQ{rat(1), rat(0)}, VecQ{rat(0), rat(1)}, VecQ{rat(1), rat(1)}};
        auto p = grassmann_proj_d(cfg);
        for (const auto& [g, c] : p.terms()) {
            CHECK(g.dim == 1);
            CHECK(g.points.size() == 2);
        }
    }
    SUBCASE("bicomplex anticommutation d p + p d = 0") {
        for (int trial = 0; trial < 10; ++trial) {
            ConfigQ cfg;
            cfg.dim = 3;
            for (int i = 0; i < 6; ++i) cfg.points.push_back(rvec(rng, 3));
            try {
                auto a = grassmann_d(grassmann_proj_d(cfg));
                auto b = grassmann_proj_d(grassmann_d(cfg));
                CHECK((a + b).is_zero());
            } catch (const degenerate_input&) {
                --trial;
                continue;
            }
        }
    }
    SUBCASE("projection degeneracy is reported") {
        ConfigQ cfg;
        cfg.dim = 2;
        cfg.points = {VecQ{rat(1), rat(1)}, VecQ{rat(2), rat(2)}, VecQ{rat(0), rat(1)}};
        CHECK_THROWS_AS(grassmann_proj_d(cfg), degenerate_input);
    }
}

TEST_CASE("configuration JSON round trip") {
    ConfigQ cfg;
    cfg.dim = 2;
    cfg.points = {VecQ{rat(1, 2), rat(-3)}, VecQ{rat(7), rat(22, 7)}};
    auto back = config_q_from_json(config_to_json(cfg));
    CHECK(back.dim == cfg.dim);
    CHECK(back.points == cfg.points);

    ConfigC cc;
    cc.dim = 2;
    cc.points = {VecC{Cpx(0.5, -1.25), Cpx(3.0, 0.0)}};
    auto cback = config_c_from_json(config_to_json(cc));
    CHECK(cback.points[0][0] == cc.points[0][0]);
}

TEST_CASE("formal cobracket components on 8 points") {
    Rng rng(57);
    auto random_p3 = [&rng]() {
        std::array<VecQ, 8> l;
        for (auto& v : l) v = rvec(rng, 4);
        return l;
    };
    SUBCASE("transposition of two points negates both components") {
        for (int trial = 0; trial < 2; ++trial) {
            auto l = random_p3();
            try {
                auto d31 = delta31(l);
                auto d22 = delta22(l);
                std::swap(l[2], l[5]);
                CHECK(delta31(l) == -d31);
                CHECK(delta22(l) == -d22);
            } catch (const degenerate_input&) {
                --trial;
            }
        }
    }
    SUBCASE("exact expansion matches the brute-force projection oracle") {
        auto l = random_p3();
        try {
            auto exact31 = delta31(l);
            auto naive31 = delta31_naive(l);
            CHECK(exact31.size() == naive31.size());
            CHECK(exact31 == naive31);
            auto exact22 = delta22(l);
            auto naive22 = delta22_naive(l);
            CHECK(exact22.size() == naive22.size());
            CHECK(exact22 == naive22);
        } catch (const degenerate_input&) {
            MESSAGE("degenerate random tuple, skipped");
        }
    }
    SUBCASE("PGL_4 motion with det 1 leaves both sums unchanged") {
        auto l = random_p3();
        try {
            auto d31 = delta31(l);
            std::array<VecQ, 8> g;
            for (int i = 0; i < 8; ++i) {
                // unimodular shear
                g[i] = l[i];
                g[i][0] += rat(2) * l[i][1] - rat(1, 2) * l[i][3];
                g[i][2] += rat(3) * l[i][3];
            }
            CHECK(delta31(g) == d31);
        } catch (const degenerate_input&) {
            MESSAGE("degenerate random tuple, skipped");
        }
    }
    SUBCASE("degeneracy names the minor") {
        auto l = random_p3();
        l[3] = l[0];
        CHECK_THROWS_WITH_AS(delta31(l), doctest::Contains("minor"), degenerate_input);
    }
}
