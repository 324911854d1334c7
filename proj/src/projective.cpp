#include "projective.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>

#include "polylog.hpp"

namespace reglab {

namespace {

int permutation_sign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

bool is_zero_vec(const VecQ& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& q) { return q == 0; });
}

bool proportional(const VecQ& a, const VecQ& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// ConfigQ
// ---------------------------------------------------------------------------

ConfigQ ConfigQ::canonical() const {
    // reduced row echelon form of the dim x m coordinate matrix; this is the
    // canonical representative of the left GL(dim) orbit of the tuple
    std::vector<std::vector<Rat>> m(dim, std::vector<Rat>(points.size(), rat(0)));
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (static_cast<int>(points[j].size()) != dim)
            throw std::invalid_argument("configuration: point dimension mismatch");
        for (int i = 0; i < dim; ++i) m[i][j] = points[j][i];
    }
    int row = 0;
    for (std::size_t col = 0; col < points.size() && row < dim; ++col) {
        int pivot = -1;
        for (int r = row; r < dim; ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[row], m[pivot]);
        Rat lead = m[row][col];
        for (auto& v : m[row]) v /= lead;
        for (int r = 0; r < dim; ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (std::size_t c = 0; c < points.size(); ++c) m[r][c] -= f * m[row][c];
        }
        ++row;
    }
    ConfigQ out;
    out.dim = dim;
    out.points.assign(points.size(), VecQ(dim));
    for (std::size_t j = 0; j < points.size(); ++j)
        for (int i = 0; i < dim; ++i) out.points[j][i] = m[i][j];
    return out;
}

bool ConfigQ::operator<(const ConfigQ& o) const {
    if (dim != o.dim) return dim < o.dim;
    if (points.size() != o.points.size()) return points.size() < o.points.size();
    for (std::size_t j = 0; j < points.size(); ++j)
        for (int i = 0; i < dim; ++i) {
            if (points[j][i] != o.points[j][i]) return points[j][i] < o.points[j][i];
        }
    return false;
}

bool ConfigQ::operator==(const ConfigQ& o) const {
    return dim == o.dim && points == o.points;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

nlohmann::json rat_to_json(const Rat& q) {
    if (q.get_den() == 1 && mpz_sizeinbase(q.get_num().get_mpz_t(), 2) < 50)
        return nlohmann::json(q.get_num().get_si());
    return nlohmann::json(to_string(q));
}

Rat rat_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        Rat q(j.get<std::string>());
        q.canonicalize();
        return q;
    }
    if (j.is_number_integer()) return rat(j.get<long>());
    throw std::invalid_argument("configuration JSON: expected exact rational entry");
}

}  // namespace

std::string config_to_json(const ConfigQ& c) {
    nlohmann::json j;
    j["dim"] = c.dim;
    j["field"] = "rational";
    auto& pts = j["points"] = nlohmann::json::array();
    for (const auto& p : c.points) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& q : p) row.push_back(rat_to_json(q));
        pts.push_back(row);
    }
    return j.dump();
}

std::string config_to_json(const ConfigC& c) {
    nlohmann::json j;
    j["dim"] = c.dim;
    j["field"] = "complex";
    auto& pts = j["points"] = nlohmann::json::array();
    for (const auto& p : c.points) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& z : p) row.push_back(nlohmann::json::array({z.real(), z.imag()}));
        pts.push_back(row);
    }
    return j.dump();
}

ConfigQ config_q_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (j.value("field", "rational") != "rational")
        throw std::invalid_argument("configuration JSON: field mismatch, expected rational");
    ConfigQ c;
    c.dim = j.at("dim").get<int>();
    for (const auto& row : j.at("points")) {
        VecQ p;
        for (const auto& e : row) p.push_back(rat_from_json(e));
        c.points.push_back(std::move(p));
    }
    return c;
}

ConfigC config_c_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (j.value("field", "complex") != "complex")
        throw std::invalid_argument("configuration JSON: field mismatch, expected complex");
    ConfigC c;
    c.dim = j.at("dim").get<int>();
    for (const auto& row : j.at("points")) {
        VecC p;
        for (const auto& e : row) {
            if (e.is_array())
                p.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
            else
                p.emplace_back(e.get<double>(), 0.0);
        }
        c.points.push_back(std::move(p));
    }
    return c;
}

// ---------------------------------------------------------------------------
// determinants
// ---------------------------------------------------------------------------

Rat det3(const VecQ& a, const VecQ& b, const VecQ& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

Cpx det3(const VecC& a, const VecC& b, const VecC& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

Rat det4(const VecQ& a, const VecQ& b, const VecQ& c, const VecQ& d) {
    Rat out = 0;
    const VecQ* rows[4] = {&a, &b, &c, &d};
    for (int j = 0; j < 4; ++j) {
        VecQ bb, cc, dd;
        for (int k = 0; k < 4; ++k) {
            if (k == j) continue;
            bb.push_back((*rows[1])[k]);
            cc.push_back((*rows[2])[k]);
            dd.push_back((*rows[3])[k]);
        }
        Rat minor = det3(bb, cc, dd);
        Rat term = (*rows[0])[j] * minor;
        out += (j % 2 ? -term : term);
    }
    return out;
}

static Cpx det4(const VecC& a, const VecC& b, const VecC& c, const VecC& d) {
    Cpx out = 0;
    const VecC* rows[4] = {&a, &b, &c, &d};
    for (int j = 0; j < 4; ++j) {
        VecC bb, cc, dd;
        for (int k = 0; k < 4; ++k) {
            if (k == j) continue;
            bb.push_back((*rows[1])[k]);
            cc.push_back((*rows[2])[k]);
            dd.push_back((*rows[3])[k]);
        }
        Cpx term = (*rows[0])[j] * det3(bb, cc, dd);
        out += (j % 2 ? -term : term);
    }
    return out;
}

// ---------------------------------------------------------------------------
// cross-ratios
// ---------------------------------------------------------------------------

Cpx cross_ratio(Cpx z1, Cpx z2, Cpx z3, Cpx z4) {
    Cpx num = (z1 - z3) * (z2 - z4);
    Cpx den = (z1 - z4) * (z2 - z3);
    if (std::abs(den) == 0.0) throw degenerate_input("cross_ratio: coincident points");
    return num / den;
}

Rat cross_ratio(const VecQ& z1, const VecQ& z2, const VecQ& z3, const VecQ& z4) {
    const VecQ* z[4] = {&z1, &z2, &z3, &z4};
    std::size_t n = z1.size();
    for (const auto* p : z) {
        if (p->size() != n) throw std::invalid_argument("cross_ratio: dimension mismatch");
        if (is_zero_vec(*p)) throw degenerate_input("cross_ratio: zero vector");
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (proportional(*z[i], *z[j])) throw degenerate_input("cross_ratio: coincident points");

    // basis of the common line: z1 and the first point independent of it
    const VecQ& p = z1;
    int qi = -1;
    for (int i = 1; i < 4; ++i)
        if (!proportional(p, *z[i])) {
            qi = i;
            break;
        }
    if (qi < 0) throw degenerate_input("cross_ratio: all points coincide");
    const VecQ& q = *z[qi];

    // two coordinate rows with invertible 2x2 minor
    int r0 = -1, r1 = -1;
    for (std::size_t i = 0; i < n && r1 < 0; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (p[i] * q[j] - p[j] * q[i] != 0) {
                r0 = static_cast<int>(i);
                r1 = static_cast<int>(j);
                break;
            }
    Rat det = p[r0] * q[r1] - p[r1] * q[r0];

    std::array<std::pair<Rat, Rat>, 4> ab;
    for (int k = 0; k < 4; ++k) {
        const VecQ& v = *z[k];
        Rat a = (v[r0] * q[r1] - v[r1] * q[r0]) / det;
        Rat b = (p[r0] * v[r1] - p[r1] * v[r0]) / det;
        for (std::size_t i = 0; i < n; ++i)
            if (v[i] != a * p[i] + b * q[i])
                throw degenerate_input("cross_ratio: points are not collinear");
        ab[k] = {a, b};
    }
    auto d = [&ab](int i, int j) -> Rat { return ab[i].first * ab[j].second - ab[j].first * ab[i].second; };
    Rat den = d(0, 3) * d(1, 2);
    if (den == 0) throw degenerate_input("cross_ratio: degenerate quadruple");
    return d(0, 2) * d(1, 3) / den;
}

Rat cross_ratio_p1(const P1Q& z1, const P1Q& z2, const P1Q& z3, const P1Q& z4) {
    auto coords = [](const P1Q& z) -> std::pair<Rat, Rat> {
        if (!z) return {rat(1), rat(0)};
        return {*z, rat(1)};
    };
    std::array<std::pair<Rat, Rat>, 4> h = {coords(z1), coords(z2), coords(z3), coords(z4)};
    auto d = [&h](int i, int j) -> Rat { return h[i].first * h[j].second - h[j].first * h[i].second; };
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (d(i, j) == 0) throw degenerate_input("cross_ratio_p1: coincident points");
    return d(0, 2) * d(1, 3) / (d(0, 3) * d(1, 2));
}

// ---------------------------------------------------------------------------
// special configurations
// ---------------------------------------------------------------------------

namespace {

// m_i = alpha_i l_i + beta_i l_{i+1}; solved exactly in the simplex basis
struct EdgeCoeffs {
    std::vector<Rat> alpha, beta;
};

EdgeCoeffs edge_coefficients(const ConfigQ& config) {
    int n = config.dim;
    if (static_cast<int>(config.points.size()) != 2 * n)
        throw degenerate_input("special configuration: expected 2n points");
    // vertex coordinates: solve l-basis expansion of each m by elimination
    std::vector<VecQ> basis(config.points.begin(), config.points.begin() + n);
    // invert the basis matrix (columns = l_i)
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(2 * n, rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = basis[j][i];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][n + j] = rat(i == j ? 1 : 0);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw degenerate_input("special configuration: vertices do not span a simplex");
        std::swap(m[col], m[pivot]);
        Rat lead = m[col][col];
        for (auto& v : m[col]) v /= lead;
        for (int r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (int c = 0; c < 2 * n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    EdgeCoeffs ec;
    ec.alpha.resize(n);
    ec.beta.resize(n);
    for (int i = 0; i < n; ++i) {
        const VecQ& mi = config.points[n + i];
        VecQ coords(n, rat(0));
        for (int r = 0; r < n; ++r) {
            Rat acc = 0;
            for (int c = 0; c < n; ++c) acc += m[r][n + c] * mi[c];
            coords[r] = acc;
        }
        int j = (i + 1) % n;
        for (int r = 0; r < n; ++r)
            if (r != i && r != j && coords[r] != 0)
                throw degenerate_input("special configuration: m_" + std::to_string(i) +
                                       " is not on its edge");
        ec.alpha[i] = coords[i];
        ec.beta[i] = coords[j];
        if (ec.alpha[i] == 0 || ec.beta[i] == 0)
            throw degenerate_input("special configuration: m_" + std::to_string(i) +
                                   " coincides with a vertex");
    }
    return ec;
}

}  // namespace

bool is_special_config(const ConfigQ& config) {
    try {
        edge_coefficients(config);
        return true;
    } catch (const degenerate_input&) {
        return false;
    }
}

Rat gen_cross_ratio_special(const ConfigQ& config) {
    // multiplier of the composite edge map L_0 -> L_1 -> ... -> L_0, in the
    // convention fixed by the per-edge cross-ratio below (golden tested)
    auto ec = edge_coefficients(config);
    int n = config.dim;
    Rat a = 1;
    for (int i = 0; i < n; ++i) a *= ec.beta[i] / ec.alpha[i];
    if (n % 2) a = -a;
    return a;
}

Rat gen_cross_ratio_edge(const ConfigQ& config, int edge) {
    int n = config.dim;
    if (edge < 0 || edge >= n) throw std::invalid_argument("edge index out of range");
    const VecQ& li = config.points[edge];
    const VecQ& lj = config.points[(edge + 1) % n];
    const VecQ& mi = config.points[n + edge];

    // hyperplane through all m_k except m_edge, intersected with the edge
    std::vector<VecQ> hyp;
    for (int k = 0; k < n; ++k)
        if (k != edge) hyp.push_back(config.points[n + k]);
    // solve for (s, t): s*li + t*lj in span(hyp)  <=>  det(hyp, s*li + t*lj) = 0
    // work with the n x n matrix whose last column is the unknown point
    // compute the two determinants D_i = det(hyp..., li) and D_j = det(hyp..., lj)
    auto det_n = [n](std::vector<VecQ> cols) {
        // Gaussian elimination determinant of an n x n exact matrix
        std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
        for (int c = 0; c < n; ++c)
            for (int r = 0; r < n; ++r) m[r][c] = cols[c][r];
        Rat det = 1;
        for (int col = 0; col < n; ++col) {
            int pivot = -1;
            for (int r = col; r < n; ++r)
                if (m[r][col] != 0) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) return rat(0);
            if (pivot != col) {
                std::swap(m[col], m[pivot]);
                det = -det;
            }
            det *= m[col][col];
            for (int r = col + 1; r < n; ++r) {
                if (m[r][col] == 0) continue;
                Rat f = m[r][col] / m[col][col];
                for (int c2 = col; c2 < n; ++c2) m[r][c2] -= f * m[col][c2];
            }
        }
        return det;
    };
    std::vector<VecQ> cols = hyp;
    cols.push_back(li);
    Rat di = det_n(cols);
    cols.back() = lj;
    Rat dj = det_n(cols);
    if (di == 0 && dj == 0)
        throw degenerate_input("special configuration: edge lies in the m-hyperplane");
    // mhat = dj*li - di*lj is on the hyperplane
    VecQ mhat(li.size());
    for (std::size_t r = 0; r < li.size(); ++r) mhat[r] = dj * li[r] - di * lj[r];
    return cross_ratio(li, lj, mi, mhat);
}

ConfigQ make_special_config(int n, const Rat& a) {
    if (n < 2) throw std::invalid_argument("special configuration needs n >= 2");
    if (a == 0) throw degenerate_input("special configuration parameter must be nonzero");
    ConfigQ c;
    c.dim = n;
    for (int i = 0; i < n; ++i) {
        VecQ e(n, rat(0));
        e[i] = 1;
        c.points.push_back(e);
    }
    for (int i = 0; i < n; ++i) {
        VecQ m(n, rat(0));
        m[i] = 1;
        if (i + 1 < n)
            m[i + 1] = 1;
        else
            m[0] = (n % 2) ? -a : a;
        c.points.push_back(m);
    }
    return c;
}

// ---------------------------------------------------------------------------
// triple ratio / r_3
// ---------------------------------------------------------------------------

Rat triple_ratio(const std::array<VecQ, 6>& l) {
    Rat num = det3(l[0], l[1], l[3]) * det3(l[1], l[2], l[4]) * det3(l[2], l[0], l[5]);
    Rat den = det3(l[0], l[1], l[4]) * det3(l[1], l[2], l[5]) * det3(l[2], l[0], l[3]);
    if (den == 0) throw degenerate_input("triple_ratio: degenerate triple");
    return num / den;
}

Cpx triple_ratio(const std::array<VecC, 6>& l) {
    Cpx num = det3(l[0], l[1], l[3]) * det3(l[1], l[2], l[4]) * det3(l[2], l[0], l[5]);
    Cpx den = det3(l[0], l[1], l[4]) * det3(l[1], l[2], l[5]) * det3(l[2], l[0], l[3]);
    if (std::abs(den) == 0.0) throw degenerate_input("triple_ratio: degenerate triple");
    return num / den;
}

namespace {

template <typename Vec, typename Det, typename Val>
Val triple_ratio_memo(const std::array<Vec, 6>& x, const std::vector<int>& p, Det&& dets) {
    // dets(i,j,k): cached determinant of points (x_i, x_j, x_k)
    Val num = dets(p[0], p[1], p[3]) * dets(p[1], p[2], p[4]) * dets(p[2], p[0], p[5]);
    Val den = dets(p[0], p[1], p[4]) * dets(p[1], p[2], p[5]) * dets(p[2], p[0], p[3]);
    return num / den;
}

}  // namespace

FormalSum<Rat> r3_element(const std::array<VecQ, 6>& x) {
    for (const auto& v : x)
        if (v.size() != 3) throw std::invalid_argument("r3_element: points must be in P^2");
    std::map<std::array<int, 3>, Rat> cache;
    auto dets = [&x, &cache](int i, int j, int k) {
        std::array<int, 3> key{i, j, k};
        std::array<int, 3> sorted = key;
        std::sort(sorted.begin(), sorted.end());
        int sign = permutation_sign({key[0], key[1], key[2]});
        auto it = cache.find(sorted);
        if (it == cache.end()) {
            Rat d = det3(x[sorted[0]], x[sorted[1]], x[sorted[2]]);
            if (d == 0)
                throw degenerate_input("r3_element: collinear triple (" + std::to_string(sorted[0]) +
                                       "," + std::to_string(sorted[1]) + "," +
                                       std::to_string(sorted[2]) + ")");
            it = cache.emplace(sorted, d).first;
        }
        return sign > 0 ? it->second : Rat(-it->second);
    };
    FormalSum<Rat> out;
    std::vector<int> p{0, 1, 2, 3, 4, 5};
    do {
        Rat val = triple_ratio_memo<VecQ, decltype(dets)&, Rat>(x, p, dets);
        out.add(val, rat(permutation_sign(p)));
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

FormalSum<CpxGen> r3_element(const std::array<VecC, 6>& x) {
    for (const auto& v : x)
        if (v.size() != 3) throw std::invalid_argument("r3_element: points must be in P^2");
    double scale = 0.0;
    for (const auto& v : x)
        for (const auto& z : v) scale = std::max(scale, std::abs(z));
    std::map<std::array<int, 3>, Cpx> cache;
    auto dets = [&x, &cache, scale](int i, int j, int k) {
        std::array<int, 3> key{i, j, k};
        std::array<int, 3> sorted = key;
        std::sort(sorted.begin(), sorted.end());
        int sign = permutation_sign({key[0], key[1], key[2]});
        auto it = cache.find(sorted);
        if (it == cache.end()) {
            Cpx d = det3(x[sorted[0]], x[sorted[1]], x[sorted[2]]);
            if (std::abs(d) < 1e-13 * scale * scale * scale)
                throw degenerate_input("r3_element: near-collinear triple (" +
                                       std::to_string(sorted[0]) + "," + std::to_string(sorted[1]) +
                                       "," + std::to_string(sorted[2]) + ")");
            it = cache.emplace(sorted, d).first;
        }
        return sign > 0 ? it->second : -it->second;
    };
    FormalSum<CpxGen> out;
    std::vector<int> p{0, 1, 2, 3, 4, 5};
    do {
        Cpx val = triple_ratio_memo<VecC, decltype(dets)&, Cpx>(x, p, dets);
        out.add(CpxGen{CpxKey::of(val), val}, rat(permutation_sign(p)));
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// ---------------------------------------------------------------------------
// functional-equation defects
// ---------------------------------------------------------------------------

double abel5_defect(const std::array<Cpx, 5>& z) {
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (z[i] == z[j]) throw degenerate_input("abel5_defect: repeated point");
    Kahan acc;
    for (int i = 0; i < 5; ++i) {
        std::array<Cpx, 4> w;
        int k = 0;
        for (int j = 0; j < 5; ++j)
            if (j != i) w[k++] = z[j];
        double term = polylog_sv(2, cross_ratio(w[0], w[1], w[2], w[3]));
        acc.add((i % 2 == 0) ? -term : term);  // (-1)^i with 1-based i
    }
    return std::abs(acc.value());
}

double trilog7_defect(const std::array<VecC, 7>& x) {
    std::map<CpxKey, double> memo;
    auto l3 = [&memo](const CpxGen& g) {
        auto it = memo.find(g.key);
        if (it == memo.end()) it = memo.emplace(g.key, polylog_sv(3, g.value)).first;
        return it->second;
    };
    Kahan acc;
    for (int i = 0; i < 7; ++i) {
        std::array<VecC, 6> sub;
        int k = 0;
        for (int j = 0; j < 7; ++j)
            if (j != i) sub[k++] = x[j];
        auto sum = r3_element(sub);
        Kahan term;
        for (const auto& [g, c] : sum.terms()) term.add(to_double(c) * l3(g));
        acc.add((i % 2 == 0) ? -term.value() : term.value());
    }
    return std::abs(acc.value());
}

// ---------------------------------------------------------------------------
// Grassmannian complex differentials
// ---------------------------------------------------------------------------

ConfigSum grassmann_d(const ConfigQ& gen) {
    ConfigSum out;
    for (std::size_t i = 0; i < gen.points.size(); ++i) {
        ConfigQ sub;
        sub.dim = gen.dim;
        for (std::size_t j = 0; j < gen.points.size(); ++j)
            if (j != i) sub.points.push_back(gen.points[j]);
        out.add(sub.canonical(), rat(i % 2 ? -1 : 1));
    }
    return out;
}

ConfigSum grassmann_d(const ConfigSum& sum) {
    ConfigSum out;
    for (const auto& [g, c] : sum.terms()) {
        ConfigSum part = grassmann_d(g);
        part *= c;
        out += part;
    }
    return out;
}

ConfigQ project_from(const ConfigQ& config, int i) {
    const VecQ& l = config.points[i];
    int pivot = -1;
    for (int r = 0; r < config.dim; ++r)
        if (l[r] != 0) {
            pivot = r;
            break;
        }
    if (pivot < 0) throw degenerate_input("project_from: zero vector");
    ConfigQ out;
    out.dim = config.dim - 1;
    if (out.dim < 1) throw std::invalid_argument("project_from: ambient dimension too small");
    for (std::size_t j = 0; j < config.points.size(); ++j) {
        if (static_cast<int>(j) == i) continue;
        const VecQ& w = config.points[j];
        Rat f = w[pivot] / l[pivot];
        VecQ q;
        q.reserve(out.dim);
        for (int r = 0; r < config.dim; ++r) {
            if (r == pivot) continue;
            q.push_back(w[r] - f * l[r]);
        }
        if (is_zero_vec(q))
            throw degenerate_input("project_from: point " + std::to_string(j) +
                                   " lies on the center of projection");
        out.points.push_back(std::move(q));
    }
    return out;
}

ConfigSum grassmann_proj_d(const ConfigQ& gen) {
    ConfigSum out;
    for (std::size_t i = 0; i < gen.points.size(); ++i)
        out.add(project_from(gen, static_cast<int>(i)).canonical(), rat(i % 2 ? -1 : 1));
    return out;
}

ConfigSum grassmann_proj_d(const ConfigSum& sum) {
    ConfigSum out;
    for (const auto& [g, c] : sum.terms()) {
        ConfigSum part = grassmann_proj_d(g);
        part *= c;
        out += part;
    }
    return out;
}

// ---------------------------------------------------------------------------
// delta_{3,1} and delta_{2,2} on 8 points of P^3
// ---------------------------------------------------------------------------

namespace {

template <typename Vec, typename Val>
struct Det4Memo {
    const std::array<Vec, 8>& pts;
    std::map<std::array<int, 4>, Val> cache;
    double scale = 1.0;

    explicit Det4Memo(const std::array<Vec, 8>& p) : pts(p) {
        if constexpr (std::is_same_v<Val, Cpx>) {
            for (const auto& v : p)
                for (const auto& z : v) scale = std::max(scale, std::abs(z));
        }
    }

    Val operator()(int i, int j, int k, int l) {
        std::array<int, 4> key{i, j, k, l};
        std::array<int, 4> sorted = key;
        std::sort(sorted.begin(), sorted.end());
        int sign = permutation_sign({key[0], key[1], key[2], key[3]});
        auto it = cache.find(sorted);
        if (it == cache.end()) {
            Val d = det4(pts[sorted[0]], pts[sorted[1]], pts[sorted[2]], pts[sorted[3]]);
            bool zero;
            if constexpr (std::is_same_v<Val, Cpx>)
                zero = std::abs(d) < 1e-12 * scale * scale * scale * scale;
            else
                zero = d == 0;
            if (zero)
                throw degenerate_input("degenerate minor (" + std::to_string(sorted[0]) + "," +
                                       std::to_string(sorted[1]) + "," + std::to_string(sorted[2]) +
                                       "," + std::to_string(sorted[3]) + ")");
            it = cache.emplace(sorted, d).first;
        }
        return sign > 0 ? it->second : Val(-it->second);
    }
};

// the three field values entering the delta_{3,1} summand, printed order
template <typename Val, typename Dets>
std::array<Val, 3> delta31_summand(const std::vector<int>& p, Dets& dets) {
    // p = (sigma(1),...,sigma(8)) as 0-based indices
    int a = p[0], b = p[1], c = p[2], d = p[3], e = p[4], f = p[5], g = p[6];
    // plain triple ratio of the projection from p[0] of (p[1],...,p[6]);
    // determinants in the quotient pull back to 4x4 minors with p[0] first
    Val t1_num = dets(a, b, c, e) * dets(a, c, d, f) * dets(a, d, b, g);
    Val t1_den = dets(a, b, c, f) * dets(a, c, d, g) * dets(a, d, b, e);
    // cross-ratios of projections from the line (p[0], p[1]):
    //   r(l1 l2 | l3, l6, l4, l5) and r(l1 l2 | l3, l5, l4, l6)
    Val t2 = dets(a, b, c, d) * dets(a, b, f, e) / (dets(a, b, c, e) * dets(a, b, f, d));
    Val t3 = dets(a, b, c, d) * dets(a, b, e, f) / (dets(a, b, c, f) * dets(a, b, e, d));
    return {t1_num / t1_den, t2, t3};
}

}  // namespace

FormalSum<B3TensorGen> delta31(const std::array<VecQ, 8>& l) {
    for (const auto& v : l)
        if (v.size() != 4) throw std::invalid_argument("delta31: points must be in P^3");
    Det4Memo<VecQ, Rat> dets(l);
    FormalSum<B3TensorGen> out;
    std::vector<int> p{0, 1, 2, 3, 4, 5, 6, 7};
    do {
        int sign = permutation_sign(p);
        auto vals = delta31_summand<Rat>(p, dets);
        Rat dd = dets(p[4], p[5], p[6], p[7]);
        Rat coeff = Rat(sign) * rat(-1, 9);
        out.add({vals[0], dd}, coeff);
        out.add({vals[1], dd}, coeff);
        out.add({vals[2], dd}, -coeff);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

FormalSum<Wedge22Gen> delta22(const std::array<VecQ, 8>& l) {
    for (const auto& v : l)
        if (v.size() != 4) throw std::invalid_argument("delta22: points must be in P^3");
    Det4Memo<VecQ, Rat> dets(l);
    FormalSum<Wedge22Gen> out;
    std::vector<int> p{0, 1, 2, 3, 4, 5, 6, 7};
    do {
        int sign = permutation_sign(p);
        // r_2(l1,l2|l3,l4,l5,l6) and r_2(l3,l4|l1,l2,l5,l7)
        Rat x = dets(p[0], p[1], p[2], p[4]) * dets(p[0], p[1], p[3], p[5]) /
                (dets(p[0], p[1], p[2], p[5]) * dets(p[0], p[1], p[3], p[4]));
        Rat y = dets(p[2], p[3], p[0], p[4]) * dets(p[2], p[3], p[1], p[6]) /
                (dets(p[2], p[3], p[0], p[6]) * dets(p[2], p[3], p[1], p[4]));
        if (x == y) continue;  // {x}_2 ^ {x}_2 = 0
        Rat coeff = Rat(sign) * rat(1, 7);
        if (y < x) {
            std::swap(x, y);
            coeff = -coeff;
        }
        out.add({x, y}, coeff);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

namespace {

// quotient coordinates of w modulo the span of the given centers
VecQ quotient_coords(const std::vector<VecQ>& centers, const VecQ& w) {
    // eliminate one coordinate per center
    std::vector<VecQ> cs = centers;
    VecQ v = w;
    std::vector<bool> dropped(v.size(), false);
    for (std::size_t c = 0; c < cs.size(); ++c) {
        int pivot = -1;
        for (std::size_t r = 0; r < v.size(); ++r)
            if (!dropped[r] && cs[c][r] != 0) {
                pivot = static_cast<int>(r);
                break;
            }
        if (pivot < 0) throw degenerate_input("quotient_coords: dependent centers");
        Rat f = v[pivot] / cs[c][pivot];
        for (std::size_t r = 0; r < v.size(); ++r) v[r] -= f * cs[c][r];
        for (std::size_t c2 = c + 1; c2 < cs.size(); ++c2) {
            Rat g = cs[c2][pivot] / cs[c][pivot];
            for (std::size_t r = 0; r < v.size(); ++r) cs[c2][r] -= g * cs[c][r];
        }
        dropped[pivot] = true;
    }
    VecQ out;
    for (std::size_t r = 0; r < v.size(); ++r)
        if (!dropped[r]) out.push_back(v[r]);
    return out;
}

}  // namespace

FormalSum<B3TensorGen> delta31_naive(const std::array<VecQ, 8>& l) {
    FormalSum<B3TensorGen> out;
    std::vector<int> p{0, 1, 2, 3, 4, 5, 6, 7};
    do {
        int sign = permutation_sign(p);
        // project the six points p[1..6] from p[0] and take the plain ratio
        std::array<VecQ, 6> proj;
        for (int i = 0; i < 6; ++i) proj[i] = quotient_coords({l[p[0]]}, l[p[i + 1]]);
        Rat t1 = triple_ratio(proj);
        // project the four relevant points from the line (p[0], p[1])
        auto line_pt = [&](int idx) { return quotient_coords({l[p[0]], l[p[1]]}, l[idx]); };
        VecQ c = line_pt(p[2]), d = line_pt(p[3]), e = line_pt(p[4]), f = line_pt(p[5]);
        Rat t2 = cross_ratio(c, f, d, e);  // r(l1l2 | l3, l6, l4, l5)
        Rat t3 = cross_ratio(c, e, d, f);  // r(l1l2 | l3, l5, l4, l6)
        Rat dd = det4(l[p[4]], l[p[5]], l[p[6]], l[p[7]]);
        Rat coeff = Rat(sign) * rat(-1, 9);
        out.add({t1, dd}, coeff);
        out.add({t2, dd}, coeff);
        out.add({t3, dd}, -coeff);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

FormalSum<Wedge22Gen> delta22_naive(const std::array<VecQ, 8>& l) {
    FormalSum<Wedge22Gen> out;
    std::vector<int> p{0, 1, 2, 3, 4, 5, 6, 7};
    do {
        int sign = permutation_sign(p);
        auto proj_cr = [&](int a, int b, int i, int j, int k, int m) {
            VecQ pi = quotient_coords({l[p[a]], l[p[b]]}, l[p[i]]);
            VecQ pj = quotient_coords({l[p[a]], l[p[b]]}, l[p[j]]);
            VecQ pk = quotient_coords({l[p[a]], l[p[b]]}, l[p[k]]);
            VecQ pm = quotient_coords({l[p[a]], l[p[b]]}, l[p[m]]);
            return cross_ratio(pi, pj, pk, pm);
        };
        Rat x = proj_cr(0, 1, 2, 3, 4, 5);  // r_2(l1,l2 | l3,l4,l5,l6)
        Rat y = proj_cr(2, 3, 0, 1, 4, 6);  // r_2(l3,l4 | l1,l2,l5,l7)
        if (x == y) continue;
        Rat coeff = Rat(sign) * rat(1, 7);
        if (y < x) {
            std::swap(x, y);
            coeff = -coeff;
        }
        out.add({x, y}, coeff);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace reglab
