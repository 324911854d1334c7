#include "integrate.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <queue>
#include <set>
#include <vector>

namespace reglab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 5-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr double kNodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                              0.5384693101056831, 0.9061798459386640};
constexpr double kWeights[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                0.4786286704993665, 0.2369268850561891};

struct Cell {
    double t0, t1, p0, p1;  // theta and phi ranges
    Cpx value;
    double error;
    std::uint64_t id;
};

struct CellOrder {
    bool operator()(const Cell& a, const Cell& b) const {
        if (a.error != b.error) return a.error < b.error;
        return a.id > b.id;  // deterministic tie-break
    }
};

}  // namespace

IntegralEstimate integrate_cp1(const std::function<Cpx(Cpx)>& density,
                               const std::vector<Cpx>& singular_points, std::uint64_t budget,
                               double tol) {
    // reject evaluations within the band around singular points / infinity
    auto f = [&](double theta, double phi) -> Cpx {
        double ct = std::cos(theta);
        if (ct < 1e-12) return 0.0;
        double r = std::tan(theta);
        Cpx z = r * Cpx(std::cos(phi), std::sin(phi));
        for (const auto& s : singular_points) {
            if (std::abs(z - s) < 1e-9 * std::max(1.0, std::abs(s))) return 0.0;
        }
        Cpx d = density(z);
        // jacobian of z = tan(theta) e^{i phi}: dx dy = tan(theta) sec^2(theta) dtheta dphi
        return d * (r / (ct * ct));
    };

    std::uint64_t evals = 0;
    auto cell_quad = [&](double t0, double t1, double p0, double p1) {
        Cpx acc = 0.0;
        for (int i = 0; i < 5; ++i) {
            double th = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * kNodes[i];
            for (int j = 0; j < 5; ++j) {
                double ph = 0.5 * (p0 + p1) + 0.5 * (p1 - p0) * kNodes[j];
                acc += kWeights[i] * kWeights[j] * f(th, ph);
            }
        }
        evals += 25;
        return acc * (0.25 * (t1 - t0) * (p1 - p0));
    };

    // initial grid: split at the coordinates of the singular points so the
    // quadrature nodes never sit on a singularity
    std::set<double> tcuts{0.0, kPi / 2.0};
    std::set<double> pcuts{0.0, 2.0 * kPi};
    for (const auto& s : singular_points) {
        double th = std::atan(std::abs(s));
        double ph = std::arg(s);
        if (ph < 0) ph += 2.0 * kPi;
        if (th > 1e-12 && th < kPi / 2 - 1e-12) tcuts.insert(th);
        if (ph > 1e-12 && ph < 2 * kPi - 1e-12) pcuts.insert(ph);
    }
    tcuts.insert(kPi / 4);  // keep the grid reasonably balanced
    pcuts.insert(kPi);

    std::uint64_t next_id = 0;
    std::priority_queue<Cell, std::vector<Cell>, CellOrder> queue;
    Kahan total_re, total_im;
    double total_err = 0.0;

    auto push_cell = [&](double t0, double t1, double p0, double p1) {
        Cpx whole = cell_quad(t0, t1, p0, p1);
        double tm = 0.5 * (t0 + t1), pm = 0.5 * (p0 + p1);
        Cpx parts = cell_quad(t0, tm, p0, pm) + cell_quad(t0, tm, pm, p1) +
                    cell_quad(tm, t1, p0, pm) + cell_quad(tm, t1, pm, p1);
        Cell c{t0, t1, p0, p1, parts, std::abs(parts - whole), next_id++};
        queue.push(c);
        total_re.add(parts.real());
        total_im.add(parts.imag());
        total_err += c.error;
    };

    std::vector<double> tv(tcuts.begin(), tcuts.end());
    std::vector<double> pv(pcuts.begin(), pcuts.end());
    for (std::size_t i = 0; i + 1 < tv.size(); ++i)
        for (std::size_t j = 0; j + 1 < pv.size(); ++j) push_cell(tv[i], tv[i + 1], pv[j], pv[j + 1]);

    while (!queue.empty() && total_err > tol && evals + 125 < budget) {
        Cell c = queue.top();
        if (c.error < tol / (8.0 * (queue.size() + 1))) break;
        queue.pop();
        total_re.add(-c.value.real());
        total_im.add(-c.value.imag());
        total_err -= c.error;
        double tm = 0.5 * (c.t0 + c.t1), pm = 0.5 * (c.p0 + c.p1);
        push_cell(c.t0, tm, c.p0, pm);
        push_cell(c.t0, tm, pm, c.p1);
        push_cell(tm, c.t1, c.p0, pm);
        push_cell(tm, c.t1, pm, c.p1);
    }

    IntegralEstimate est;
    est.value = Cpx(total_re.value(), total_im.value());
    est.std_error = total_err;
    est.samples = evals;
    est.strategy = "adaptive-cp1";
    est.budget_ok = total_err <= tol || tol <= 0.0;
    return est;
}

namespace {

// geometry of one divisor line in a chart, set up for log-radial sampling
struct LineGeom {
    std::array<Cpx, 2> p0;  // closest point to the origin
    std::array<Cpx, 2> dir;  // unit direction (complex)
    std::array<Cpx, 2> nrm;  // unit normal (complex)
    Cpx a1, a2;
    double a_norm = 0.0;
    bool usable = false;

    static constexpr double kTMax = 1.6;    // covers the bidisk |w| <= sqrt(2)
    static constexpr double kRMin = 1e-8;
    static constexpr double kRMax = 0.5;

    void init(const std::array<Cpx, 3>& cov) {
        a1 = cov[1];
        a2 = cov[2];
        a_norm = std::sqrt(std::norm(a1) + std::norm(a2));
        if (a_norm < 1e-14) return;  // the line at infinity of this chart
        Cpx a0 = cov[0];
        p0 = {-std::conj(a1) * a0 / (a_norm * a_norm), -std::conj(a2) * a0 / (a_norm * a_norm)};
        double p0n = std::sqrt(std::norm(p0[0]) + std::norm(p0[1]));
        if (p0n > 1.6) return;  // line misses the bidisk
        dir = {-a2 / a_norm, a1 / a_norm};
        nrm = {std::conj(a1) / a_norm, std::conj(a2) / a_norm};
        usable = true;
    }

    // density of the line-concentrated proposal at w (0 outside its support)
    double pdf(const std::array<Cpx, 2>& w) const {
        Cpx diff0 = w[0] - p0[0], diff1 = w[1] - p0[1];
        Cpx t = std::conj(dir[0]) * diff0 + std::conj(dir[1]) * diff1;
        Cpx s = std::conj(nrm[0]) * diff0 + std::conj(nrm[1]) * diff1;
        double r = std::abs(s);
        if (std::abs(t) > kTMax || r < kRMin || r > kRMax) return 0.0;
        double L = std::log(kRMax / kRMin);
        return 1.0 / (kPi * kTMax * kTMax) * 1.0 / (2.0 * kPi * L * r * r);
    }

    std::array<Cpx, 2> sample(Rng& rng) const {
        double rt = kTMax * std::sqrt(rng.uniform());
        double pt = rng.uniform(0.0, 2.0 * kPi);
        Cpx t(rt * std::cos(pt), rt * std::sin(pt));
        double L = std::log(kRMax / kRMin);
        double r = kRMin * std::exp(rng.uniform() * L);
        double ps = rng.uniform(0.0, 2.0 * kPi);
        Cpx s(r * std::cos(ps), r * std::sin(ps));
        return {p0[0] + t * dir[0] + s * nrm[0], p0[1] + t * dir[1] + s * nrm[1]};
    }
};

}  // namespace

IntegralEstimate integrate_cp2_mc(
    const std::function<double(int chart, const std::array<Cpx, 2>&)>& density,
    const std::vector<std::array<Cpx, 3>>& divisor_covectors, std::uint64_t budget,
    std::uint64_t seed) {
    const std::uint64_t n_strata = 768;  // divisible by 3: strata cycle the charts
    const std::uint64_t per = std::max<std::uint64_t>(1, budget / n_strata);
    const double pi2 = kPi * kPi;
    const double beta = divisor_covectors.empty() ? 0.0 : 0.45;

    // per-chart line geometry (chart c uses homogeneous slots (c, c+1, c+2))
    std::array<std::vector<LineGeom>, 3> lines;
    for (int c = 0; c < 3; ++c) {
        for (const auto& cov : divisor_covectors) {
            LineGeom g;
            g.init({cov[c], cov[(c + 1) % 3], cov[(c + 2) % 3]});
            if (g.usable) lines[c].push_back(g);
        }
    }

    auto run_stratum = [&](std::uint64_t s) {
        Rng rng(Rng::mix(seed, s));
        int chart = static_cast<int>(s % 3);
        const auto& ls = lines[chart];
        double line_share = ls.empty() ? 0.0 : beta;
        Kahan acc;
        for (std::uint64_t i = 0; i < per; ++i) {
            std::array<Cpx, 2> w;
            if (!ls.empty() && rng.uniform() < line_share) {
                w = ls[rng.below(ls.size())].sample(rng);
            } else {
                auto disk = [&rng]() {
                    double r = std::sqrt(rng.uniform());
                    double phi = rng.uniform(0.0, 2.0 * kPi);
                    return Cpx(r * std::cos(phi), r * std::sin(phi));
                };
                w = {disk(), disk()};
            }
            bool inside = std::norm(w[0]) <= 1.0 && std::norm(w[1]) <= 1.0;
            if (!inside) continue;  // integrand restricted to the chart region
            double q = (1.0 - line_share) / pi2;
            if (!ls.empty()) {
                double qline = 0.0;
                for (const auto& g : ls) qline += g.pdf(w);
                q += line_share * qline / static_cast<double>(ls.size());
            }
            if (q <= 0.0) continue;
            double d = density(chart, w);
            if (!std::isfinite(d)) continue;  // rejected band near a divisor
            acc.add(d / q);
        }
        return acc.value() / static_cast<double>(per);
    };

    // deterministic parallel map over strata, reduced in stratum order
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<double> means(n_strata, 0.0);
    std::vector<std::future<void>> futs;
    std::uint64_t chunk = (n_strata + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t lo = w * chunk, hi = std::min<std::uint64_t>(n_strata, lo + chunk);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, [&, lo, hi] {
            for (std::uint64_t s = lo; s < hi; ++s) means[s] = run_stratum(s);
        }));
    }
    for (auto& f : futs) f.get();

    // combine per chart: the total is the sum of the three region integrals
    double total = 0.0, var_total = 0.0;
    for (int c = 0; c < 3; ++c) {
        Kahan mean_acc, sq_acc;
        double kc = 0.0;
        for (std::uint64_t s = c; s < n_strata; s += 3) {
            mean_acc.add(means[s]);
            sq_acc.add(means[s] * means[s]);
            kc += 1.0;
        }
        double mean = mean_acc.value() / kc;
        double var = std::max(0.0, sq_acc.value() / kc - mean * mean);
        total += mean;
        var_total += var / kc;
    }

    IntegralEstimate est;
    est.value = Cpx(total, 0.0);
    est.std_error = std::sqrt(var_total);
    est.samples = per * n_strata;
    est.strategy = "mc-cp2";
    return est;
}

}  // namespace reglab
