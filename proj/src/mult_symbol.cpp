#include "mult_symbol.hpp"

#include <json.hpp>

namespace reglab {

namespace {

bool is_probable_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0; }

Int pollard_rho(const Int& n, unsigned long c) {
    Int x = 2, y = 2, d = 1;
    auto f = [&n, c](const Int& v) { return Int((v * v + c) % n); };
    while (d == 1) {
        x = f(x);
        y = f(f(y));
        Int diff = x > y ? Int(x - y) : Int(y - x);
        if (diff == 0) return 0;
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    return d == n ? Int(0) : d;
}

void factor_into(Int n, std::map<Int, int>& out) {
    if (n <= 1) return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        if (n % p == 0) {
            out[Int(p)] += 1;
            factor_into(n / p, out);
            return;
        }
    }
    for (unsigned long c = 1;; ++c) {
        Int d = pollard_rho(n, c);
        if (d > 1) {
            factor_into(d, out);
            factor_into(n / d, out);
            return;
        }
        if (c > 64) throw std::runtime_error("factor_integer: failed to split " + n.get_str());
    }
}

}  // namespace

std::vector<std::pair<Int, int>> factor_integer(Int n) {
    if (n == 0) throw std::invalid_argument("factor_integer: zero");
    if (n < 0) n = -n;
    std::map<Int, int> acc;
    factor_into(n, acc);
    return {acc.begin(), acc.end()};
}

MultSymbolQ factor(const Rat& x) {
    if (x == 0) throw std::invalid_argument("factor: zero element");
    MultSymbolQ out;
    for (const auto& [p, e] : factor_integer(x.get_num())) out.add(p, rat(e));
    for (const auto& [p, e] : factor_integer(x.get_den())) out.add(p, rat(-e));
    return out;
}

MultSymbolQt factor(const RationalMapQ& f) {
    if (f.is_zero()) throw std::invalid_argument("factor: zero element");
    MultSymbolQt out;
    auto absorb = [&out](const Poly& p, int sign) {
        auto fac = factor_poly(p);
        for (const auto& [irr, mult] : fac.factors) out.add(QtGen{irr}, rat(sign * mult));
        Rat unit = fac.unit;
        if (unit != 0) {
            for (const auto& [q, e] : factor_integer(unit.get_num())) out.add(QtGen{q}, rat(sign * e));
            for (const auto& [q, e] : factor_integer(unit.get_den()))
                out.add(QtGen{q}, rat(-sign * e));
        }
    };
    if (f.num().degree() == 0 && f.den().degree() == 0) {
        Rat c = f.num().coeff(0) / f.den().coeff(0);
        return [&c] {
            MultSymbolQt s;
            for (const auto& [q, e] : factor_integer(c.get_num())) s.add(QtGen{q}, rat(e));
            for (const auto& [q, e] : factor_integer(c.get_den())) s.add(QtGen{q}, rat(-e));
            return s;
        }();
    }
    absorb(f.num(), 1);
    absorb(f.den(), -1);
    return out;
}

namespace {

template <typename Sym>
std::string symbol_json_impl(const Sym& s) {
    nlohmann::json j;
    auto& gens = j["gens"] = nlohmann::json::array();
    auto& exps = j["exps"] = nlohmann::json::array();
    for (const auto& [g, e] : s.exps()) {
        if constexpr (std::is_same_v<Sym, MultSymbolQ>)
            gens.push_back(g.get_str());
        else
            gens.push_back(g.str());
        exps.push_back(to_string(e));
    }
    return j.dump();
}

}  // namespace

std::string symbol_to_json(const MultSymbolQ& s) { return symbol_json_impl(s); }
std::string symbol_to_json(const MultSymbolQt& s) { return symbol_json_impl(s); }

}  // namespace reglab
