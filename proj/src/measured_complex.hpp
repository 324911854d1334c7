#pragma once

#include <vector>

#include "rational.hpp"
#include "support.hpp"

namespace reglab {

// A finite cochain complex of locally compact abelian groups of the shape
// R^a + Z^b + (finite of order t), each with a declared Haar measure
// (scale * Lebesgue^a * counting), plus an optional compact torus factor for
// single-group complexes.  Maps are linear: the real block takes both the
// R^a and Z^b coordinates into R^{a'}, the integer block takes Z^b to Z^{b'};
// torsion maps to zero.
struct MeasuredGroup {
    int real_rank = 0;
    int free_rank = 0;
    Int torsion = 1;
    double scale = 1.0;
    int torus_rank = 0;      // compact factor, only for single-group complexes
    double torus_vol = 1.0;

    bool is_zero() const {
        return real_rank == 0 && free_rank == 0 && torsion == 1 && torus_rank == 0;
    }
};

struct MeasuredMap {
    // real_block: (a' rows) x (a + b columns)
    std::vector<std::vector<double>> real_block;
    // int_block: (b' rows) x (b columns)
    std::vector<std::vector<long>> int_block;
};

struct MeasuredComplex {
    int first_degree = 1;
    std::vector<MeasuredGroup> groups;
    std::vector<MeasuredMap> maps;  // maps[i]: groups[i] -> groups[i+1]

    MeasuredComplex shifted(int by = 1) const {
        MeasuredComplex out = *this;
        out.first_degree -= by;  // A[1] places the complex one degree lower
        return out;
    }
};

// The multiplicative Euler characteristic of the measures: the inductively
// defined invariant with R_mu(A[1]) = R_mu(A)^{-1}.  Throws
// std::invalid_argument when a cohomology group is not compact or the shape
// is outside the supported class (heads with continuous rank feeding maps).
double r_mu(const MeasuredComplex& cx);

}  // namespace reglab
