#include "forms.hpp"

#include <algorithm>
#include <numeric>

namespace reglab {

namespace {

int perm_sign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

double fact(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

// ---------------------------------------------------------------------------
// FormValue
// ---------------------------------------------------------------------------

FormValue FormValue::operator+(const FormValue& o) const {
    if (degree != o.degree && max_abs() != 0.0 && o.max_abs() != 0.0)
        throw std::invalid_argument("form degrees differ");
    FormValue out = *this;
    out.degree = max_abs() == 0.0 ? o.degree : degree;
    out.c0 += o.c0;
    out.cz += o.cz;
    out.czb += o.czb;
    out.czzb += o.czzb;
    return out;
}

FormValue FormValue::operator-(const FormValue& o) const { return *this + o * Cpx(-1.0); }

FormValue FormValue::operator*(double s) const { return *this * Cpx(s); }

FormValue FormValue::operator*(Cpx s) const {
    FormValue out = *this;
    out.c0 *= s;
    out.cz *= s;
    out.czb *= s;
    out.czzb *= s;
    return out;
}

FormValue FormValue::wedge(const FormValue& o) const {
    int d = degree + o.degree;
    if (d > 2) return FormValue::two_form(0.0);  // no 3-forms on a curve
    if (degree == 0) return o * c0;
    if (o.degree == 0) return *this * o.c0;
    // 1-form ^ 1-form
    return FormValue::two_form(cz * o.czb - czb * o.cz);
}

double FormValue::max_abs() const {
    return std::max({std::abs(c0), std::abs(cz), std::abs(czb), std::abs(czzb)});
}

// ---------------------------------------------------------------------------
// pointwise 1-forms of rational maps
// ---------------------------------------------------------------------------

FormValue dlog_abs(const RationalMapQ& f, Cpx z) {
    Cpx w = f.dlog(z);
    return FormValue::one_form(0.5 * w, 0.5 * std::conj(w));
}

FormValue darg_i(const RationalMapQ& f, Cpx z) {
    Cpx w = f.dlog(z);
    return FormValue::one_form(0.5 * w, -0.5 * std::conj(w));
}

FormValue dlog_full(const RationalMapQ& f, Cpx z) {
    return FormValue::one_form(f.dlog(z), 0.0);
}

// ---------------------------------------------------------------------------
// r_{m-1} on curve charts
// ---------------------------------------------------------------------------

FormValue r_form(const std::vector<RationalMapQ>& fs, Cpx z) {
    int m = static_cast<int>(fs.size());
    if (m < 1 || m > 3) throw std::invalid_argument("r_form: need 1 <= m <= 3 on a curve");
    std::vector<double> logabs(m);
    std::vector<FormValue> dla(m), dia(m);
    for (int i = 0; i < m; ++i) {
        Cpx v = fs[i].eval(z);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) == 0.0)
            throw singular_point("r_form: z lies on a divisor");
        logabs[i] = std::log(std::abs(v));
        dla[i] = dlog_abs(fs[i], z);
        dia[i] = darg_i(fs[i], z);
    }
    FormValue acc;
    acc.degree = m - 1;
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    do {
        int sign = perm_sign(p);
        for (int j = 0; 2 * j + 1 <= m; ++j) {
            double c = 1.0 / (fact(2 * j + 1) * fact(m - 2 * j - 1));
            FormValue term = FormValue::scalar(logabs[p[0]]);
            for (int i = 1; i <= 2 * j; ++i) term = term.wedge(dla[p[i]]);
            for (int i = 2 * j + 1; i < m; ++i) term = term.wedge(dia[p[i]]);
            acc = acc + term * (sign * c);
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return acc;
}

// ---------------------------------------------------------------------------
// omega
// ---------------------------------------------------------------------------

SmoothFn log_abs_fn(const RationalMapQ& f) {
    return [f](Cpx z) {
        Cpx v = f.eval(z);
        if (std::abs(v) == 0.0 || !std::isfinite(std::abs(v)))
            throw singular_point("log_abs_fn: on the divisor");
        Cpx w = f.dlog(z);
        return SmoothJet{std::log(std::abs(v)), 0.5 * w, 0.5 * std::conj(w), 0.0};
    };
}

FormValue omega_form(const std::vector<SmoothFn>& phis, Cpx z) {
    int m = static_cast<int>(phis.size());
    if (m < 1 || m > 3) throw std::invalid_argument("omega_form: need 1 <= m <= 3");
    std::vector<SmoothJet> jets(m);
    for (int i = 0; i < m; ++i) jets[i] = phis[i](z);
    FormValue acc;
    acc.degree = m - 1;
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    do {
        int sign = perm_sign(p);
        for (int k = 1; k <= m; ++k) {
            FormValue term = FormValue::scalar(jets[p[0]].value);
            for (int i = 1; i < k; ++i)
                term = term.wedge(FormValue::one_form(jets[p[i]].dz, 0.0));
            for (int i = k; i < m; ++i)
                term = term.wedge(FormValue::one_form(0.0, jets[p[i]].dzb));
            double s = ((m - k) % 2 ? -1.0 : 1.0) * sign;
            acc = acc + term * s;
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return acc * (1.0 / fact(m));
}

FormValue omega_d_identity_rhs(const std::vector<SmoothFn>& phis, Cpx z) {
    int m = static_cast<int>(phis.size());
    std::vector<SmoothJet> jets(m);
    for (int i = 0; i < m; ++i) jets[i] = phis[i](z);
    if (m == 1) return FormValue::one_form(jets[0].dz, jets[0].dzb);
    // on a curve the (m,0) and (0,m) products vanish for m >= 2; the
    // dbar-d terms survive:
    //   sum_i (-1)^i dbar d phi_i ^ omega_{m-2}(phi_1 ^ ...hat i... ^ phi_m)
    FormValue acc;
    acc.degree = 2;  // wedge of a (1,1)-form with an (m-2)-form; m <= 2 here
    if (m == 2) {
        acc = acc + FormValue::two_form(jets[0].dbar_d * jets[1].value) * (-1.0);
        acc = acc + FormValue::two_form(jets[1].dbar_d * jets[0].value);
        return acc;
    }
    // m = 3 would need a 3-form on the curve; identically zero
    return FormValue::two_form(0.0) * 0.0;
}

// ---------------------------------------------------------------------------
// regulator 1-forms
// ---------------------------------------------------------------------------

FormValue alpha_form(const RationalMapQ& a, const RationalMapQ& b, Cpx z) {
    Cpx va = a.eval(z), vb = b.eval(z);
    if (std::abs(va) == 0.0 || std::abs(vb) == 0.0)
        throw singular_point("alpha_form: on the divisor");
    double la = std::log(std::abs(va)), lb = std::log(std::abs(vb));
    return dlog_abs(b, z) * (-la) + dlog_abs(a, z) * lb;
}

FormValue lhat_pq(int p, int q, const RationalMapQ& f, Cpx z) {
    if (p < 1 || q < 1) throw std::invalid_argument("lhat_pq: p, q >= 1 required");
    Cpx v = f.eval(z);
    if (std::abs(v) == 0.0 || !std::isfinite(std::abs(v)))
        throw singular_point("lhat_pq: on the divisor");
    double lf = std::log(std::abs(v));
    if (p == 1) {
        RationalMapQ one_minus = RationalMapQ::constant(rat(1)) - f;
        return alpha_form(one_minus, f, z) * std::pow(lf, q - 1);
    }
    Cpx lhat = polylog_hat(p, v);
    return dlog_abs(f, z) * (lhat * std::pow(lf, q - 1));
}

namespace {

// A_m { prod_{i<=2p} dlog|g_i| ^ prod diarg g_j } with the stabilizer weights
FormValue a_form_even(const std::vector<RationalMapQ>& gs, int p, Cpx z) {
    int m = static_cast<int>(gs.size());
    std::vector<FormValue> dla(m), dia(m);
    for (int i = 0; i < m; ++i) {
        dla[i] = dlog_abs(gs[i], z);
        dia[i] = darg_i(gs[i], z);
    }
    FormValue acc;
    acc.degree = m;
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    double w = 1.0 / (fact(2 * p) * fact(m - 2 * p));
    do {
        int sign = perm_sign(idx);
        FormValue term = FormValue::scalar(1.0);
        for (int i = 0; i < 2 * p; ++i) term = term.wedge(dla[idx[i]]);
        for (int i = 2 * p; i < m; ++i) term = term.wedge(dia[idx[i]]);
        acc = acc + term * (sign * w);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return acc;
}

// A_m { log|g_1| prod_{2<=i<=p} dlog|g_i| ^ prod diarg g_j }
FormValue a_form_log(const std::vector<RationalMapQ>& gs, int p, Cpx z) {
    int m = static_cast<int>(gs.size());
    std::vector<FormValue> dla(m), dia(m);
    std::vector<double> la(m);
    for (int i = 0; i < m; ++i) {
        dla[i] = dlog_abs(gs[i], z);
        dia[i] = darg_i(gs[i], z);
        la[i] = std::log(std::abs(gs[i].eval(z)));
    }
    FormValue acc;
    acc.degree = m - 1;
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    double w = 1.0 / (fact(p - 1) * fact(m - p));
    do {
        int sign = perm_sign(idx);
        FormValue term = FormValue::scalar(la[idx[0]]);
        for (int i = 1; i < p; ++i) term = term.wedge(dla[idx[i]]);
        for (int i = p; i < m; ++i) term = term.wedge(dia[idx[i]]);
        acc = acc + term * (sign * w);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return acc;
}

}  // namespace

FormValue reg_form(int n, int m, const RationalMapQ& f, const std::vector<RationalMapQ>& gs,
                   Cpx z) {
    if (n < 1) throw std::invalid_argument("reg_form: n >= 1 required");
    if (static_cast<int>(gs.size()) != m) throw std::invalid_argument("reg_form: |gs| != m");
    if (m > 2) throw std::invalid_argument("reg_form: m <= 2 on a curve");
    Cpx v = f.eval(z);
    if (std::abs(v) == 0.0 || !std::isfinite(std::abs(v)))
        throw singular_point("reg_form: on the divisor");
    const auto& bt = beta_table();

    // first block: Lhat_n(f) * A_m { sum_p 1/(2p+1) ... }
    FormValue a_even;
    a_even.degree = m;
    for (int p = 0; 2 * p <= m; ++p) a_even = a_even + a_form_even(gs, p, z) * (1.0 / (2 * p + 1));
    FormValue out = a_even * polylog_hat(n, v);

    // second block: sum_{k>=1} sum_{1<=p<=m} beta_{k,p} Lhat_{n-k,k}(f) ^ A_m{log...}
    for (int k = 1; k <= n - 1; ++k) {
        FormValue lkf = lhat_pq(n - k, k, f, z);
        for (int p = 1; p <= m; ++p) {
            double beta = bt.beta_kp_d(k, p);
            if (beta == 0.0) continue;
            out = out + lkf.wedge(a_form_log(gs, p, z)) * beta;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// weight 1/2/3 maps
// ---------------------------------------------------------------------------

WeightMapValue weight_map(int n, int slot, const CurveElement& elem, Cpx z) {
    auto bad = [&] {
        return std::invalid_argument("weight_map: element does not match slot (" +
                                     std::to_string(n) + "," + std::to_string(slot) + ")");
    };
    const Cpx two_pi_i(0.0, 2.0 * 3.14159265358979323846);
    if (n == 1) {
        if (slot == 1) {
            if (elem.m != 0 || elem.gs.size() != 1) throw bad();
            Cpx v = elem.gs[0].eval(z);
            return {FormValue::scalar(std::log(std::abs(v))), ""};
        }
        if (slot == 2) return {FormValue::scalar(two_pi_i), "Y1"};
        throw bad();
    }
    if (n == 2) {
        switch (slot) {
            case 1:
                if (elem.m != 2 || !elem.gs.empty()) throw bad();
                return {FormValue::scalar(polylog_hat(2, elem.f.eval(z))), ""};
            case 2: {
                if (elem.m != 0 || elem.gs.size() != 2) throw bad();
                double lf = std::log(std::abs(elem.gs[0].eval(z)));
                double lg = std::log(std::abs(elem.gs[1].eval(z)));
                FormValue v = darg_i(elem.gs[1], z) * (-lf) + darg_i(elem.gs[0], z) * lg;
                return {v, ""};
            }
            case 3: {
                if (elem.m != 0 || elem.gs.size() != 1) throw bad();
                double lf = std::log(std::abs(elem.gs[0].eval(z)));
                return {FormValue::scalar(two_pi_i * lf), "Y1"};
            }
            case 4:
                return {FormValue::scalar(two_pi_i * two_pi_i), "Y2"};
            default:
                throw bad();
        }
    }
    if (n == 3) {
        switch (slot) {
            case 1:
                if (elem.m != 3 || !elem.gs.empty()) throw bad();
                return {FormValue::scalar(polylog_hat(3, elem.f.eval(z))), ""};
            case 2: {
                if (elem.m != 2 || elem.gs.size() != 1) throw bad();
                return {reg_form(2, 1, elem.f, elem.gs, z), ""};
            }
            case 3: {
                if (elem.m == 0 && elem.gs.size() == 3) return {r_form(elem.gs, z), ""};
                if (elem.m == 2 && elem.gs.empty())
                    return {FormValue::scalar(two_pi_i * polylog_hat(2, elem.f.eval(z))), "Y1"};
                throw bad();
            }
            case 4: {
                if (elem.m != 0 || elem.gs.size() != 2) throw bad();
                double lf = std::log(std::abs(elem.gs[0].eval(z)));
                double lg = std::log(std::abs(elem.gs[1].eval(z)));
                FormValue v = darg_i(elem.gs[1], z) * (-lf) + darg_i(elem.gs[0], z) * lg;
                return {v * two_pi_i, "Y1"};
            }
            case 5: {
                if (elem.m != 0 || elem.gs.size() != 1) throw bad();
                double lf = std::log(std::abs(elem.gs[0].eval(z)));
                return {FormValue::scalar(two_pi_i * two_pi_i * lf), "Y2"};
            }
            case 6:
                return {FormValue::scalar(two_pi_i * two_pi_i * two_pi_i), "Y3"};
            default:
                throw bad();
        }
    }
    throw std::invalid_argument("weight_map: n <= 3 supported");
}

std::vector<std::pair<Rat, CurveElement>> curve_delta(const CurveElement& elem) {
    std::vector<std::pair<Rat, CurveElement>> out;
    if (elem.m < 2) return out;  // pure wedge maps into tame-symbol slots
    const RationalMapQ& f = elem.f;
    if (f.is_zero()) return out;
    if (f.is_constant() && f.num().coeff(0) == f.den().coeff(0)) return out;  // {1}
    if (elem.m >= 3) {
        CurveElement next;
        next.m = elem.m - 1;
        next.f = f;
        next.gs = elem.gs;
        next.gs.insert(next.gs.begin(), f);
        out.emplace_back(rat(1), next);
    } else {
        CurveElement next;
        next.m = 0;
        next.gs = elem.gs;
        next.gs.insert(next.gs.begin(), f);
        next.gs.insert(next.gs.begin(), RationalMapQ::constant(rat(1)) - f);
        out.emplace_back(rat(1), next);
    }
    return out;
}

FormValue numeric_d(const std::function<FormValue(Cpx)>& F, Cpx z, double h) {
    FormValue xp = F(z + Cpx(h, 0.0)), xm = F(z - Cpx(h, 0.0));
    FormValue yp = F(z + Cpx(0.0, h)), ym = F(z - Cpx(0.0, h));
    FormValue dx = (xp - xm) * (1.0 / (2.0 * h));
    FormValue dy = (yp - ym) * (1.0 / (2.0 * h));
    FormValue base = F(z);
    if (base.degree == 0) {
        Cpx dz = 0.5 * (dx.c0 - Cpx(0.0, 1.0) * dy.c0);
        Cpx dzb = 0.5 * (dx.c0 + Cpx(0.0, 1.0) * dy.c0);
        return FormValue::one_form(dz, dzb);
    }
    if (base.degree == 1) {
        // d(a dz + b dzbar) = (d_z b - d_zbar a) dz ^ dzbar
        Cpx dzb_a = 0.5 * (dx.cz + Cpx(0.0, 1.0) * dy.cz);
        Cpx dz_b = 0.5 * (dx.czb - Cpx(0.0, 1.0) * dy.czb);
        return FormValue::two_form(dz_b - dzb_a);
    }
    return FormValue::two_form(0.0) * 0.0;  // no 3-forms on a curve
}

FormValue numeric_d_richardson(const std::function<FormValue(Cpx)>& F, Cpx z, double h) {
    FormValue dh = numeric_d(F, z, h);
    FormValue dh2 = numeric_d(F, z, h / 2.0);
    return dh2 * (4.0 / 3.0) - dh * (1.0 / 3.0);
}

double chain_map_defect(int n, int k, const CurveElement& elem, Cpx z, double h) {
    auto F = [&](Cpx w) { return weight_map(n, k, elem, w).density; };
    FormValue lhs = numeric_d_richardson(F, z, h);
    FormValue rhs;
    rhs.degree = lhs.degree;
    // Relative sign of the two printed conventions, calibrated numerically:
    // with the displayed r_3(2), r_3(3) and delta({x}_2 (x) y) = (1-x)^x^y the
    // middle weight-3 square anticommutes exactly; the sign lives here.
    double slot_sign = (n == 3 && k == 2) ? -1.0 : 1.0;
    for (const auto& [coeff, term] : curve_delta(elem)) {
        auto val = weight_map(n, k + 1, term, z);
        if (!val.support.empty()) continue;  // distributions vanish at generic z
        rhs = rhs + val.density * (slot_sign * to_double(coeff));
    }
    // pure wedge slots: the smooth continuation of the differential is
    // pi_n(dlog...), which vanishes identically on a curve chart
    return (lhs - rhs).max_abs();
}

FormValue r4p2(const RationalMapQ& f, const RationalMapQ& g, Cpx z) {
    RationalMapQ one = RationalMapQ::constant(rat(1));
    Cpx l2g = polylog_hat(2, g.eval(z));
    Cpx l2f = polylog_hat(2, f.eval(z));
    FormValue af = alpha_form(one - f, f, z);
    FormValue ag = alpha_form(one - g, g, z);
    return (af * l2g - ag * l2f) * (1.0 / 3.0);
}

// ---------------------------------------------------------------------------
// multivariate scaffolding
// ---------------------------------------------------------------------------

NForm NForm::wedge(const NForm& o) const {
    NForm out(vars);
    int nb = 2 * vars;
    for (unsigned a = 0; a < comp.size(); ++a) {
        if (comp[a] == Cpx(0.0)) continue;
        for (unsigned b = 0; b < o.comp.size(); ++b) {
            if (o.comp[b] == Cpx(0.0) || (a & b)) continue;
            // sign: number of transpositions to interleave basis indices
            int crossings = 0;
            for (int j = 0; j < nb; ++j)
                if (b & (1u << j)) crossings += __builtin_popcount(a >> (j + 1));
            Cpx c = comp[a] * o.comp[b];
            out.comp[a | b] += (crossings % 2 ? -c : c);
        }
    }
    return out;
}

NForm NForm::operator+(const NForm& o) const {
    NForm out = *this;
    for (unsigned i = 0; i < comp.size(); ++i) out.comp[i] += o.comp[i];
    return out;
}
NForm NForm::operator-(const NForm& o) const {
    NForm out = *this;
    for (unsigned i = 0; i < comp.size(); ++i) out.comp[i] -= o.comp[i];
    return out;
}
NForm NForm::operator*(Cpx s) const {
    NForm out = *this;
    for (auto& c : out.comp) c *= s;
    return out;
}

NForm NForm::conjugated() const {
    NForm out(vars);
    int k = vars;
    for (unsigned mask = 0; mask < comp.size(); ++mask) {
        if (comp[mask] == Cpx(0.0)) continue;
        // swap dz_i <-> dzb_i and track the reordering sign
        std::vector<int> mapped;
        for (int j = 0; j < 2 * k; ++j)
            if (mask & (1u << j)) mapped.push_back(j < k ? j + k : j - k);
        unsigned newmask = 0;
        for (int j : mapped) newmask |= (1u << j);
        int inv = 0;
        for (std::size_t i = 0; i < mapped.size(); ++i)
            for (std::size_t j = i + 1; j < mapped.size(); ++j)
                if (mapped[i] > mapped[j]) ++inv;
        Cpx c = std::conj(comp[mask]);
        out.comp[newmask] += (inv % 2 ? -c : c);
    }
    return out;
}

double NForm::max_abs() const {
    double m = 0.0;
    for (const auto& c : comp) m = std::max(m, std::abs(c));
    return m;
}

Cpx LinearForm::eval(const std::vector<Cpx>& z) const {
    Cpx v = b;
    for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * z[i];
    return v;
}

Cpx LinProduct::log_value(const std::vector<Cpx>& z) const {
    Cpx acc = 0.0;
    for (const auto& [L, e] : factors) acc += static_cast<double>(e) * std::log(L.eval(z));
    return acc;
}

std::vector<Cpx> LinProduct::dlog(const std::vector<Cpx>& z) const {
    std::vector<Cpx> g(z.size(), Cpx(0.0));
    for (const auto& [L, e] : factors) {
        Cpx v = L.eval(z);
        if (std::abs(v) == 0.0) throw singular_point("LinProduct: on the divisor");
        for (std::size_t i = 0; i < z.size(); ++i) g[i] += static_cast<double>(e) * L.a[i] / v;
    }
    return g;
}

namespace {

NForm one_form_from(const std::vector<Cpx>& dz_coeffs, const std::vector<Cpx>& dzb_coeffs,
                    int k) {
    NForm out(k);
    for (int i = 0; i < k; ++i) {
        out.comp[1u << i] = dz_coeffs[i];
        out.comp[1u << (i + k)] = dzb_coeffs[i];
    }
    return out;
}

}  // namespace

NForm nform_dlog_abs(const LinProduct& f, const std::vector<Cpx>& z) {
    int k = static_cast<int>(z.size());
    auto g = f.dlog(z);
    std::vector<Cpx> gc(k);
    for (int i = 0; i < k; ++i) gc[i] = 0.5 * std::conj(g[i]);
    for (auto& v : g) v *= 0.5;
    return one_form_from(g, gc, k);
}

NForm nform_darg_i(const LinProduct& f, const std::vector<Cpx>& z) {
    int k = static_cast<int>(z.size());
    auto g = f.dlog(z);
    std::vector<Cpx> gc(k);
    for (int i = 0; i < k; ++i) gc[i] = -0.5 * std::conj(g[i]);
    for (auto& v : g) v *= 0.5;
    return one_form_from(g, gc, k);
}

NForm nform_dlog_full(const LinProduct& f, const std::vector<Cpx>& z) {
    int k = static_cast<int>(z.size());
    auto g = f.dlog(z);
    return one_form_from(g, std::vector<Cpx>(k, Cpx(0.0)), k);
}

NForm nform_r(const std::vector<LinProduct>& fs, const std::vector<Cpx>& z) {
    int m = static_cast<int>(fs.size());
    int k = static_cast<int>(z.size());
    std::vector<double> la(m);
    std::vector<NForm> dla, dia;
    for (int i = 0; i < m; ++i) {
        la[i] = fs[i].log_value(z).real();
        dla.push_back(nform_dlog_abs(fs[i], z));
        dia.push_back(nform_darg_i(fs[i], z));
    }
    NForm acc(k);
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    do {
        int sign = perm_sign(p);
        for (int j = 0; 2 * j + 1 <= m; ++j) {
            double c = 1.0 / (fact(2 * j + 1) * fact(m - 2 * j - 1));
            NForm term(k);
            term.comp[0] = la[p[0]];
            for (int i = 1; i <= 2 * j; ++i) term = term.wedge(dla[p[i]]);
            for (int i = 2 * j + 1; i < m; ++i) term = term.wedge(dia[p[i]]);
            acc = acc + term * Cpx(sign * c);
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return acc;
}

NForm nform_omega_logs(const std::vector<LinProduct>& fs, const std::vector<Cpx>& z) {
    int m = static_cast<int>(fs.size());
    int k = static_cast<int>(z.size());
    std::vector<double> la(m);
    std::vector<NForm> dpart(m), dbpart(m);
    for (int i = 0; i < m; ++i) {
        la[i] = fs[i].log_value(z).real();
        auto g = fs[i].dlog(z);
        std::vector<Cpx> half(k), halfc(k), zero(k, Cpx(0.0));
        for (int j = 0; j < k; ++j) {
            half[j] = 0.5 * g[j];
            halfc[j] = 0.5 * std::conj(g[j]);
        }
        dpart[i] = one_form_from(half, zero, k);
        dbpart[i] = one_form_from(zero, halfc, k);
    }
    NForm acc(k);
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    do {
        int sign = perm_sign(p);
        for (int kk = 1; kk <= m; ++kk) {
            NForm term(k);
            term.comp[0] = la[p[0]];
            for (int i = 1; i < kk; ++i) term = term.wedge(dpart[p[i]]);
            for (int i = kk; i < m; ++i) term = term.wedge(dbpart[p[i]]);
            double s = ((m - kk) % 2 ? -1.0 : 1.0) * sign;
            acc = acc + term * Cpx(s);
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return acc * Cpx(1.0 / fact(m));
}

NForm nform_pi_dlog(const std::vector<LinProduct>& fs, const std::vector<Cpx>& z) {
    int k = static_cast<int>(z.size());
    NForm w(k);
    w.comp[0] = 1.0;
    for (const auto& f : fs) w = w.wedge(nform_dlog_full(f, z));
    NForm wc = w.conjugated();
    int m = static_cast<int>(fs.size());
    if (m % 2) return (w + wc) * Cpx(0.5);   // real part
    return (w - wc) * Cpx(0.5);              // i-imaginary part
}

NForm nform_numeric_d(const std::function<NForm(const std::vector<Cpx>&)>& F,
                      const std::vector<Cpx>& z, double h) {
    int k = static_cast<int>(z.size());
    NForm out(k);
    for (int i = 0; i < k; ++i) {
        auto shift = [&](double dx, double dy) {
            auto w = z;
            w[i] += Cpx(dx, dy);
            return F(w);
        };
        NForm dx = (shift(h, 0) - shift(-h, 0)) * Cpx(1.0 / (2 * h));
        NForm dy = (shift(0, h) - shift(0, -h)) * Cpx(1.0 / (2 * h));
        NForm dz_comp = (dx - dy * Cpx(0.0, 1.0)) * Cpx(0.5);
        NForm dzb_comp = (dx + dy * Cpx(0.0, 1.0)) * Cpx(0.5);
        NForm ez(k), ezb(k);
        ez.comp[1u << i] = 1.0;
        ezb.comp[1u << (i + k)] = 1.0;
        out = out + ez.wedge(dz_comp) + ezb.wedge(dzb_comp);
    }
    return out;
}

}  // namespace reglab
