#include "measured_complex.hpp"

#include <algorithm>
#include <cmath>

namespace reglab {

namespace {

using Mat = std::vector<std::vector<double>>;

int rows(const Mat& m) { return static_cast<int>(m.size()); }
int cols(const Mat& m) { return m.empty() ? 0 : static_cast<int>(m[0].size()); }

Mat matmul(const Mat& a, const Mat& b) {
    Mat c(rows(a), std::vector<double>(cols(b), 0.0));
    for (int i = 0; i < rows(a); ++i)
        for (int k = 0; k < cols(a); ++k)
            for (int j = 0; j < cols(b); ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

double det(Mat m) {
    int n = rows(m);
    if (n == 0) return 1.0;
    double d = 1.0;
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
        if (std::abs(m[p][c]) < 1e-13) return 0.0;
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            double f = m[r][c] / m[c][c];
            for (int cc = c; cc < n; ++cc) m[r][cc] -= f * m[c][cc];
        }
    }
    return d;
}

// orthonormal basis of the null space of m (columns of the result)
Mat null_space(const Mat& m, int dim) {
    // Gram-Schmidt on the rows, then complete to a basis and keep the
    // orthogonal complement of the row space
    std::vector<std::vector<double>> rows_on;
    for (const auto& r : m) {
        std::vector<double> v = r;
        for (const auto& u : rows_on) {
            double dot = 0.0;
            for (int i = 0; i < dim; ++i) dot += v[i] * u[i];
            for (int i = 0; i < dim; ++i) v[i] -= dot * u[i];
        }
        double n2 = 0.0;
        for (int i = 0; i < dim; ++i) n2 += v[i] * v[i];
        if (std::sqrt(n2) > 1e-11) {
            for (auto& x : v) x /= std::sqrt(n2);
            rows_on.push_back(v);
        }
    }
    Mat basis;
    for (int i = 0; i < dim; ++i) {
        std::vector<double> v(dim, 0.0);
        v[i] = 1.0;
        for (const auto& u : rows_on) {
            double dot = 0.0;
            for (int j = 0; j < dim; ++j) dot += v[j] * u[j];
            for (int j = 0; j < dim; ++j) v[j] -= dot * u[j];
        }
        for (const auto& u : basis) {
            double dot = 0.0;
            for (int j = 0; j < dim; ++j) dot += v[j] * u[j];
            for (int j = 0; j < dim; ++j) v[j] -= dot * u[j];
        }
        double n2 = 0.0;
        for (double x : v) n2 += x * x;
        if (std::sqrt(n2) > 1e-9) {
            for (auto& x : v) x /= std::sqrt(n2);
            basis.push_back(v);
        }
    }
    // columns
    Mat out(dim, std::vector<double>(basis.size(), 0.0));
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (int i = 0; i < dim; ++i) out[i][j] = basis[j][i];
    return out;
}

struct Tail {
    double eta = 1.0;   // eta_{d+2} contribution of the final quotient
    Mat t_basis;        // transversal columns in R^{a}, mapped bijectively
};

// transversal T in R^a with g(T) = identity on the range, and the final
// quotient volume s_C / |det g(T)|
Tail make_tail(const Mat& p_block, int a_dom, const MeasuredGroup& target) {
    Tail tail;
    int a_tgt = target.real_rank;
    if (target.free_rank != 0)
        throw std::invalid_argument("r_mu: discrete directions in the final group are unsupported");
    if (a_tgt == 0) {
        tail.eta = target.scale * static_cast<double>(target.torsion.get_d());
        return tail;
    }
    // solve P T = I via least squares (P has full row rank for compactness)
    // normal equations: T = P^T (P P^T)^{-1}
    Mat ppt(a_tgt, std::vector<double>(a_tgt, 0.0));
    for (int i = 0; i < a_tgt; ++i)
        for (int j = 0; j < a_tgt; ++j)
            for (int k = 0; k < a_dom; ++k) ppt[i][j] += p_block[i][k] * p_block[j][k];
    if (std::abs(det(ppt)) < 1e-20)
        throw std::invalid_argument("r_mu: non-compact cohomology (tail map not surjective)");
    // invert ppt by Gauss-Jordan
    int n = a_tgt;
    Mat inv(n, std::vector<double>(2 * n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) inv[i][j] = ppt[i][j];
        inv[i][n + i] = 1.0;
    }
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(inv[r][c]) > std::abs(inv[p][c])) p = r;
        std::swap(inv[p], inv[c]);
        double lead = inv[c][c];
        for (auto& x : inv[c]) x /= lead;
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = inv[r][c];
            for (int cc = 0; cc < 2 * n; ++cc) inv[r][cc] -= f * inv[c][cc];
        }
    }
    Mat ppt_inv(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ppt_inv[i][j] = inv[i][n + j];
    tail.t_basis = Mat(a_dom, std::vector<double>(n, 0.0));
    for (int i = 0; i < a_dom; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) tail.t_basis[i][j] += p_block[k][i] * ppt_inv[k][j];
    // g(T) = I by construction, so |det g(T)| = 1 and the quotient carries
    tail.eta = target.scale * static_cast<double>(target.torsion.get_d());
    return tail;
}

}  // namespace

double r_mu(const MeasuredComplex& cx) {
    // strip zero groups at both ends (canonical truncation invariance)
    int lo = 0, hi = static_cast<int>(cx.groups.size());
    while (lo < hi && cx.groups[lo].is_zero()) ++lo;
    while (hi > lo && cx.groups[hi - 1].is_zero()) --hi;
    int len = hi - lo;
    int d0 = cx.first_degree + lo;
    auto apply = [&](double acc, int degree, double eta) {
        bool even = ((degree % 2) + 2) % 2 == 0;
        return even ? acc * eta : acc / eta;
    };

    if (len == 0) return 1.0;
    if (len == 1) {
        const auto& g = cx.groups[lo];
        if (g.real_rank != 0 || g.free_rank != 0)
            throw std::invalid_argument("r_mu: single non-compact group");
        double vol = g.scale * g.torsion.get_d() * (g.torus_rank ? g.torus_vol : 1.0);
        return apply(1.0, d0, vol);
    }
    if (len > 3) throw std::invalid_argument("r_mu: complexes longer than three groups unsupported");

    const MeasuredGroup& A = cx.groups[lo];
    const MeasuredGroup& B = cx.groups[lo + 1];
    const MeasuredMap& f = cx.maps[lo];
    if (A.real_rank != 0)
        throw std::invalid_argument("r_mu: continuous head group unsupported");
    if (A.torus_rank || B.torus_rank)
        throw std::invalid_argument("r_mu: torus factors allowed only in single-group complexes");

    // eta at the head: the kernel of f must be the torsion
    {
        Mat m;  // (a_B + b_B) x b_A
        for (int r = 0; r < B.real_rank; ++r) m.push_back(f.real_block[r]);
        for (int r = 0; r < B.free_rank; ++r) {
            std::vector<double> row(A.free_rank);
            for (int c = 0; c < A.free_rank; ++c) row[c] = static_cast<double>(f.int_block[r][c]);
            m.push_back(row);
        }
        // rank must equal b_A
        Mat gram(A.free_rank, std::vector<double>(A.free_rank, 0.0));
        for (int i = 0; i < A.free_rank; ++i)
            for (int j = 0; j < A.free_rank; ++j)
                for (const auto& row : m) gram[i][j] += row[i] * row[j];
        if (A.free_rank > 0 && std::abs(det(gram)) < 1e-18)
            throw std::invalid_argument("r_mu: non-compact H at the head (free kernel)");
    }
    double acc = apply(1.0, d0, A.scale * A.torsion.get_d());

    if (len == 2) {
        // H^{d+1} = B / im f
        int n = B.real_rank + B.free_rank;
        if (n != A.free_rank)
            throw std::invalid_argument("r_mu: non-compact middle quotient (rank mismatch)");
        Mat m(n, std::vector<double>(n, 0.0));
        for (int j = 0; j < A.free_rank; ++j) {
            for (int r = 0; r < B.real_rank; ++r) m[r][j] = f.real_block[r][j];
            for (int r = 0; r < B.free_rank; ++r)
                m[B.real_rank + r][j] = static_cast<double>(f.int_block[r][j]);
        }
        double vol = B.scale * std::abs(det(m)) * B.torsion.get_d();
        if (vol == 0.0) throw std::invalid_argument("r_mu: non-compact middle quotient");
        return apply(acc, d0 + 1, vol);
    }

    const MeasuredGroup& C = cx.groups[lo + 2];
    const MeasuredMap& g = cx.maps[lo + 1];
    if (C.torus_rank) throw std::invalid_argument("r_mu: torus factors in the tail unsupported");

    // continuous kernel of g inside R^{a_B}
    Mat p_block(C.real_rank, std::vector<double>(B.real_rank, 0.0));
    for (int r = 0; r < C.real_rank; ++r)
        for (int c = 0; c < B.real_rank; ++c) p_block[r][c] = g.real_block[r][c];
    Mat U = null_space(p_block, B.real_rank);
    int cdim = cols(U);
    Tail tail = make_tail(p_block, B.real_rank, C);

    // lattice kernel of g inside Z^{b_B}: int block zero and real residual in
    // the range of p_block (we support the surjective-tail case, where the
    // residual condition is vacuous)
    for (int r = 0; r < C.free_rank; ++r)
        for (int c = 0; c < B.free_rank; ++c)
            if (g.int_block[r][c] != 0)
                throw std::invalid_argument("r_mu: discrete tail images unsupported");

    // J1 = |det [U | T]| on R^{a_B}
    double j1 = 1.0;
    if (B.real_rank > 0) {
        Mat ut(B.real_rank, std::vector<double>(B.real_rank, 0.0));
        for (int i = 0; i < B.real_rank; ++i) {
            for (int j = 0; j < cdim; ++j) ut[i][j] = U[i][j];
            for (int j = 0; j < cols(tail.t_basis); ++j) ut[i][cdim + j] = tail.t_basis[i][j];
        }
        if (cdim + cols(tail.t_basis) != B.real_rank)
            throw std::invalid_argument("r_mu: kernel/transversal dimension mismatch");
        j1 = std::abs(det(ut));
    }

    // image generators of f expressed in kernel coordinates (U-part, Z-part)
    int gens = A.free_rank;
    int kdim = cdim + B.free_rank;
    if (gens != kdim)
        throw std::invalid_argument("r_mu: non-compact middle cohomology (rank mismatch)");
    Mat G(kdim, std::vector<double>(gens, 0.0));
    for (int j = 0; j < gens; ++j) {
        // v_j real part and integer part
        std::vector<double> vr(B.real_rank, 0.0);
        for (int r = 0; r < B.real_rank; ++r) vr[r] = f.real_block[r][j];
        std::vector<double> vz(B.free_rank, 0.0);
        for (int r = 0; r < B.free_rank; ++r) vz[r] = static_cast<double>(f.int_block[r][j]);
        // subtract the particular solution X z (so that the remainder lies in
        // the U-span): X z = -P^+ Q z where Q z is the real image of the
        // z-part under g; for complexes (g o f = 0) the remainder is in ker P
        std::vector<double> qz(C.real_rank, 0.0);
        for (int r = 0; r < C.real_rank; ++r)
            for (int c = 0; c < B.free_rank; ++c)
                qz[r] += g.real_block[r][B.real_rank + c] * vz[c];
        // vr_corrected = vr + T * qz has P (vr + T qz) = P vr + qz = 0
        std::vector<double> vc = vr;
        for (int i = 0; i < B.real_rank; ++i)
            for (int r = 0; r < static_cast<int>(qz.size()); ++r)
                vc[i] += tail.t_basis[i][r] * qz[r];
        // U-coordinates (U orthonormal columns)
        for (int j2 = 0; j2 < cdim; ++j2) {
            double dot = 0.0;
            for (int i = 0; i < B.real_rank; ++i) dot += U[i][j2] * vc[i];
            G[j2][j] = dot;
        }
        for (int r = 0; r < B.free_rank; ++r) G[cdim + r][j] = vz[r];
    }
    double middle = B.scale * j1 * std::abs(det(G)) * B.torsion.get_d();
    if (middle == 0.0) throw std::invalid_argument("r_mu: non-compact middle cohomology");
    acc = apply(acc, d0 + 1, middle);
    acc = apply(acc, d0 + 2, tail.eta);
    return acc;
}

}  // namespace reglab
