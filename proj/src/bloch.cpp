#include "bloch.hpp"

#include <algorithm>

namespace reglab {

namespace {

int cmp_p1(const P1Q& a, const P1Q& b) {
    if (!a && !b) return 0;
    if (!a) return 1;
    if (!b) return -1;
    if (*a == *b) return 0;
    return *a < *b ? -1 : 1;
}

template <typename Gen>
int cmp_monomial(const WedgeMonomial<Gen>& a, const WedgeMonomial<Gen>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) continue;
        return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

bool p1_is_degenerate(const P1Q& x) { return !x || *x == 0; }  // {0}, {inf}

}  // namespace

bool GammaGenQ::operator<(const GammaGenQ& o) const {
    if (m != o.m) return m < o.m;
    if (m >= 2) {
        int c = cmp_p1(*x, *o.x);
        if (c != 0) return c < 0;
    }
    return cmp_monomial(wedge, o.wedge) < 0;
}
bool GammaGenQ::operator==(const GammaGenQ& o) const {
    return m == o.m && (m < 2 || cmp_p1(*x, *o.x) == 0) && cmp_monomial(wedge, o.wedge) == 0;
}

bool GammaGenQt::operator<(const GammaGenQt& o) const {
    if (m != o.m) return m < o.m;
    if (m >= 2) {
        if (!(*x == *o.x)) return *x < *o.x;
    }
    return cmp_monomial(wedge, o.wedge) < 0;
}
bool GammaGenQt::operator==(const GammaGenQt& o) const {
    return m == o.m && (m < 2 || *x == *o.x) && cmp_monomial(wedge, o.wedge) == 0;
}

GammaQ make_b_term_q(int m, const P1Q& x) {
    GammaQ out;
    if (m < 2) throw std::invalid_argument("B-part weight must be >= 2");
    if (p1_is_degenerate(x)) return out;  // {0}, {inf} are relators
    out.add(GammaGenQ{m, x, {}}, rat(1));
    return out;
}

GammaQt make_b_term_qt(int m, const RationalMapQ& x) {
    GammaQt out;
    if (m < 2) throw std::invalid_argument("B-part weight must be >= 2");
    if (x.is_zero()) return out;
    out.add(GammaGenQt{m, x, {}}, rat(1));
    return out;
}

namespace {

template <typename GammaSum, typename Gen, typename Mult>
GammaSum tensor_wedge_impl(const GammaSum& e, const std::vector<Mult>& factored) {
    GammaSum out;
    for (const auto& [gen, coeff] : e.terms()) {
        // distribute the new factors into the existing monomial
        std::vector<Mult> parts;
        for (const auto& g : gen.wedge) {
            Mult single;
            single.add(g, rat(1));
            parts.push_back(single);
        }
        for (const auto& f : factored) parts.push_back(f);
        auto wedge = WedgeSymbol<Gen>::wedge(parts);
        for (const auto& [mono, c] : wedge.sum().terms()) {
            auto g2 = gen;
            g2.wedge = mono;
            out.add(g2, coeff * c);
        }
    }
    return out;
}

}  // namespace

GammaQ tensor_wedge(const GammaQ& e, const std::vector<Rat>& factors) {
    std::vector<MultSymbolQ> fs;
    for (const auto& f : factors) fs.push_back(factor(f));
    return tensor_wedge_impl<GammaQ, Int>(e, fs);
}

GammaQt tensor_wedge(const GammaQt& e, const std::vector<RationalMapQ>& factors) {
    std::vector<MultSymbolQt> fs;
    for (const auto& f : factors) fs.push_back(factor(f));
    return tensor_wedge_impl<GammaQt, QtGen>(e, fs);
}

// ---------------------------------------------------------------------------
// differentials
// ---------------------------------------------------------------------------

WedgeQ delta2(const FormalSum<P1Q>& elem) {
    WedgeQ out(2);
    for (const auto& [z, c] : elem.terms()) {
        if (!z || *z == 0 || *z == 1) continue;  // conventions at 0, 1, inf
        auto w = WedgeQ::wedge({factor(Rat(1 - *z)), factor(*z)});
        w *= c;
        out += w;
    }
    return out;
}

WedgeQt delta2_qt(const FormalSum<RationalMapQ>& elem) {
    WedgeQt out(2);
    RationalMapQ one = RationalMapQ::constant(rat(1));
    for (const auto& [f, c] : elem.terms()) {
        if (f.is_zero()) continue;
        if (f.is_constant() && (f.num().coeff(0) == f.den().coeff(0))) continue;  // {1}
        auto w = WedgeQt::wedge({factor(one - f), factor(f)});
        w *= c;
        out += w;
    }
    return out;
}

GammaQ delta(const GammaQ& elem) {
    GammaQ out;
    for (const auto& [gen, coeff] : elem.terms()) {
        if (gen.m < 2) continue;  // top wedge maps to zero here
        const P1Q& x = *gen.x;
        if (!x || *x == 0 || *x == 1) continue;
        if (gen.m >= 3) {
            GammaQ t;
            t.add(GammaGenQ{gen.m - 1, x, gen.wedge}, coeff);
            out += tensor_wedge(t, {*x});
        } else {
            GammaQ t;
            t.add(GammaGenQ{0, std::nullopt, gen.wedge}, coeff);
            out += tensor_wedge(t, {Rat(1 - *x), *x});
        }
    }
    return out;
}

GammaQt delta(const GammaQt& elem) {
    GammaQt out;
    RationalMapQ one = RationalMapQ::constant(rat(1));
    for (const auto& [gen, coeff] : elem.terms()) {
        if (gen.m < 2) continue;
        const RationalMapQ& f = *gen.x;
        if (f.is_zero()) continue;
        if (f.is_constant() && f.num().coeff(0) == f.den().coeff(0)) continue;
        if (gen.m >= 3) {
            GammaQt t;
            t.add(GammaGenQt{gen.m - 1, f, gen.wedge}, coeff);
            out += tensor_wedge(t, {f});
        } else {
            GammaQt t;
            t.add(GammaGenQt{0, std::nullopt, gen.wedge}, coeff);
            out += tensor_wedge(t, {one - f, f});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// theta and residues
// ---------------------------------------------------------------------------

namespace {

// valuation of a symbol generator at a place of Q(t)
int gen_valuation(const QtGen& g, const PlaceQt& v) {
    if (g.is_prime()) return 0;
    if (!v) return -g.poly().degree();
    // finite place t - a: generators are monic irreducibles, so the
    // valuation is 1 precisely for the generator t - a itself
    const Poly& p = g.poly();
    if (p.degree() == 1 && p.coeff(0) == -*v) return 1;
    return 0;
}

// residue of the unit part of a generator (a nonzero rational)
Rat gen_residue(const QtGen& g, const PlaceQt& v) {
    if (g.is_prime()) return Rat(g.prime());
    if (!v) return rat(1);  // monic: leading coefficient
    const Poly& p = g.poly();
    if (p.degree() == 1 && p.coeff(0) == -*v) return rat(1);  // the uniformizer itself
    Rat val = p.eval(*v);
    if (val == 0) throw std::logic_error("irreducible generator vanishing at a rational place");
    return val;
}

}  // namespace

WedgeQ theta(const WedgeQt& w, const PlaceQt& v) {
    WedgeQ out(std::max(0, w.degree() - 1));
    for (const auto& [mono, coeff] : w.sum().terms()) {
        for (std::size_t i = 0; i < mono.size(); ++i) {
            int a = gen_valuation(mono[i], v);
            if (a == 0) continue;
            std::vector<MultSymbolQ> residues;
            bool trivial = false;
            for (std::size_t j = 0; j < mono.size(); ++j) {
                if (j == i) continue;
                Rat r = gen_residue(mono[j], v);
                MultSymbolQ s = factor(r);
                if (s.is_trivial()) {
                    trivial = true;
                    break;
                }
                residues.push_back(std::move(s));
            }
            if (trivial) continue;
            auto piece = WedgeQ::wedge(residues);
            Rat sign = (i % 2 == 0) ? rat(1) : rat(-1);  // (-1)^{i-1}, 1-based
            piece *= coeff * rat(a) * sign;
            out += piece;
        }
    }
    return out;
}

WedgeFp theta_q(const WedgeQ& w, long p) {
    WedgeFp out(std::max(0, w.degree() - 1));
    for (const auto& [mono, coeff] : w.sum().terms()) {
        for (std::size_t i = 0; i < mono.size(); ++i) {
            if (mono[i] != p) continue;
            std::vector<MultSymbol<long>> residues;
            bool trivial = false;
            for (std::size_t j = 0; j < mono.size(); ++j) {
                if (j == i) continue;
                long r = static_cast<long>(mpz_fdiv_ui(mono[j].get_mpz_t(), p));
                if (r == 1) {
                    trivial = true;
                    break;
                }
                MultSymbol<long> s;
                s.add(r, rat(1));
                residues.push_back(std::move(s));
            }
            if (trivial) continue;
            auto piece = WedgeFp::wedge(residues);
            Rat sign = (i % 2 == 0) ? rat(1) : rat(-1);
            piece *= coeff * sign;
            out += piece;
        }
    }
    return out;
}

GammaQ residue_morphism(const GammaQt& elem, const PlaceQt& v) {
    GammaQ out;
    for (const auto& [gen, coeff] : elem.terms()) {
        // pack the wedge monomial back into a symbol and apply theta
        WedgeQt w(static_cast<int>(gen.wedge.size()));
        w.add_monomial(gen.wedge, rat(1));
        if (gen.m >= 2) {
            const RationalMapQ& f = *gen.x;
            if (f.valuation(v) != 0) continue;  // s_v kills non-units
            P1Q value;
            if (!v) {
                // valuation at infinity is zero, so degrees match
                value = Rat(f.num().leading() / f.den().leading());
            } else {
                auto ev = f.eval(*v);
                if (!ev) continue;  // cannot happen for a unit
                value = *ev;
            }
            WedgeQ tw = theta(w, v);
            for (const auto& [mono, c] : tw.sum().terms())
                out.add(GammaGenQ{gen.m, value, mono}, coeff * c);
        } else {
            WedgeQ tw = theta(w, v);
            for (const auto& [mono, c] : tw.sum().terms())
                out.add(GammaGenQ{0, std::nullopt, mono}, coeff * c);
        }
    }
    return out;
}

GammaQ specialize(const GammaQt& elem, const P1Q& t0) {
    GammaQ out;
    for (const auto& [gen, coeff] : elem.terms()) {
        P1Q value;
        if (gen.m >= 2) {
            const RationalMapQ& f = *gen.x;
            if (t0) {
                value = f.eval(*t0);  // nullopt = pole = {inf}
            } else {
                int v = f.valuation(std::nullopt);
                if (v > 0)
                    value = rat(0);
                else if (v < 0)
                    value = std::nullopt;
                else
                    value = f.num().leading() / f.den().leading();
            }
            if (!value) continue;  // {inf} is a relator
            if (*value == 0) continue;
        }
        // stripped evaluation of the wedge generators
        std::vector<MultSymbolQ> parts;
        bool dead = false;
        for (const auto& g : gen.wedge) {
            Rat stripped;
            if (g.is_prime()) {
                stripped = Rat(g.prime());
            } else if (!t0) {
                stripped = rat(1);  // monic leading coefficient
            } else {
                const Poly& p = g.poly();
                if (p.degree() == 1 && p.coeff(0) == -*t0)
                    stripped = rat(1);  // (t - t0)/(t - t0)
                else
                    stripped = p.eval(*t0);
            }
            if (stripped == 0) throw std::logic_error("specialize: unexpected zero");
            MultSymbolQ s = factor(stripped);
            if (s.is_trivial()) {
                dead = true;
                break;
            }
            parts.push_back(std::move(s));
        }
        if (dead && !gen.wedge.empty()) continue;
        if (gen.wedge.empty()) {
            out.add(GammaGenQ{gen.m, gen.m >= 2 ? value : P1Q{}, {}}, coeff);
            continue;
        }
        auto w = WedgeQ::wedge(parts);
        for (const auto& [mono, c] : w.sum().terms())
            out.add(GammaGenQ{gen.m, gen.m >= 2 ? value : P1Q{}, mono}, coeff * c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// five-term relator
// ---------------------------------------------------------------------------

FormalSum<P1Q> five_term_relator(const std::array<P1Q, 5>& z) {
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (cmp_p1(z[i], z[j]) == 0) throw degenerate_input("five_term_relator: repeated point");
    FormalSum<P1Q> out;
    for (int i = 0; i < 5; ++i) {
        std::array<P1Q, 4> w;
        int k = 0;
        for (int j = 0; j < 5; ++j)
            if (j != i) w[k++] = z[j];
        Rat r = cross_ratio_p1(w[0], w[1], w[2], w[3]);
        out.add(P1Q{r}, rat((i % 2 == 0) ? -1 : 1));  // (-1)^i, 1-based
    }
    return out;
}

// ---------------------------------------------------------------------------
// Li coproduct
// ---------------------------------------------------------------------------

namespace {

LiSymbol unit_sym() { return LiSymbol{LiSymbol::UNIT, 0}; }
LiSymbol li_sym(int n) { return n == 0 ? unit_sym() : LiSymbol{LiSymbol::LI, n}; }
LiSymbol log_sym(int k) { return k == 0 ? unit_sym() : LiSymbol{LiSymbol::LOG, k}; }

// coproduct of a single factor as a sum of 2-tensors
LiSum coproduct_one(const LiSymbol& s) {
    LiSum out;
    switch (s.kind) {
        case LiSymbol::UNIT:
            out.add(LiTensor{unit_sym(), unit_sym()}, rat(1));
            break;
        case LiSymbol::LI:
            for (int k = 0; k <= s.weight; ++k)
                out.add(LiTensor{li_sym(s.weight - k), log_sym(k)}, 1 / factorial(k));
            break;
        case LiSymbol::LOG:
            // log^k is the k-th power of a primitive, so
            // Delta(log^k) = sum_a C(k,a) log^a (x) log^{k-a}
            for (int a = 0; a <= s.weight; ++a)
                out.add(LiTensor{log_sym(a), log_sym(s.weight - a)}, binomial(s.weight, a));
            break;
    }
    return out;
}

}  // namespace

LiSum li_coproduct(int n) {
    if (n < 1) throw std::invalid_argument("li_coproduct: n >= 1 required");
    // normalisation: the printed formula carries 1/k! on the log factor; we
    // keep log^k as the generator and the 1/k! in the coefficient
    return coproduct_one(li_sym(n));
}

LiSum coproduct_slot(const LiSum& sum, int slot) {
    LiSum out;
    for (const auto& [tensor, c] : sum.terms()) {
        if (slot < 0 || slot >= static_cast<int>(tensor.size()))
            throw std::invalid_argument("coproduct_slot: slot out of range");
        LiSum piece = coproduct_one(tensor[slot]);
        for (const auto& [pair, pc] : piece.terms()) {
            LiTensor expanded;
            for (int i = 0; i < static_cast<int>(tensor.size()); ++i) {
                if (i == slot) {
                    expanded.push_back(pair[0]);
                    expanded.push_back(pair[1]);
                } else {
                    expanded.push_back(tensor[i]);
                }
            }
            out.add(expanded, c * pc);
        }
    }
    return out;
}

LiSum counit_slot(const LiSum& sum, int slot) {
    LiSum out;
    for (const auto& [tensor, c] : sum.terms()) {
        if (tensor[slot].kind != LiSymbol::UNIT) continue;
        LiTensor rest;
        for (int i = 0; i < static_cast<int>(tensor.size()); ++i)
            if (i != slot) rest.push_back(tensor[i]);
        out.add(rest, c);
    }
    return out;
}

bool weight_graded(const LiSum& sum, int total) {
    for (const auto& [tensor, c] : sum.terms()) {
        int w = 0;
        for (const auto& s : tensor) w += s.total_weight();
        if (w != total) return false;
    }
    return true;
}

}  // namespace reglab
