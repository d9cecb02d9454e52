#pragma once

// Hermite constraint and interpolation matrices, restriction, and the fused
// three-node (Virtual), one-sided (Upwind) and extended reconstructions.
//
// All offsets are dimensionless (in units of the grid spacing), so every
// matrix here is independent of the grid.

#include "hermite/jet.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace hermite {

// Constraint matrix C(zeta) with C[m][n] = binom(n,m) * zeta^(n-m) for n >= m.
// Row m expresses the m-th scaled derivative of a width-coefficient expansion,
// evaluated at offset zeta from the expansion center.
inline Mat constraint_matrix(double zeta, int n_derivs, int width) {
    if (n_derivs < 1) throw std::invalid_argument("constraint_matrix: n_derivs < 1");
    if (width < n_derivs) throw std::invalid_argument("constraint_matrix: width < n_derivs");
    Mat c = Mat::Zero(n_derivs, width);
    for (int m = 0; m < n_derivs; ++m) {
        double binom = 1.0;  // binom(m,m)
        double zp = 1.0;     // zeta^(n-m)
        for (int n = m; n < width; ++n) {
            c(m, n) = binom * zp;
            binom = binom * (n + 1) / (n + 1 - m);
            zp *= zeta;
        }
    }
    return c;
}

// H = [C(zl); C(zr)]^{-1}, the (2N+2)x(2N+2) map from two endpoint jets of
// degree N to the degree-(2N+1) reconstruction jet at the center.
namespace detail {

// Extended-precision inverse: the stacked constraint matrices are mildly
// ill-conditioned at the widest offsets, and the interpolation operators must
// reproduce polynomials to ~1e-12 relative accuracy.
using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

inline Mat invert_extended(const Mat& a, const char* who) {
    Eigen::PartialPivLU<Mat> lu(a);
    if (lu.rcond() < 1e-14)
        throw std::runtime_error(std::string(who) + ": stacked constraint matrix is numerically singular");
    Eigen::PartialPivLU<LMat> llu(a.cast<long double>());
    return llu.inverse().cast<double>();
}

}  // namespace detail

inline Mat hermite_matrix_uncached(double zl, double zr, int n) {
    if (zl == zr) throw std::invalid_argument("hermite_matrix: offsets must be distinct");
    const int w = 2 * n + 2;
    Mat stacked(w, w);
    stacked.topRows(n + 1) = constraint_matrix(zl, n + 1, w);
    stacked.bottomRows(n + 1) = constraint_matrix(zr, n + 1, w);
    return detail::invert_extended(stacked, "hermite_matrix");
}

// Cached variant; offsets across schemes are a handful of fixed values.
inline const Mat& hermite_matrix(double zl, double zr, int n) {
    using Key = std::tuple<double, double, int>;
    static std::map<Key, Mat> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto [it, inserted] = cache.try_emplace(Key{zl, zr, n});
    if (inserted) it->second = hermite_matrix_uncached(zl, zr, n);
    return it->second;
}

// First n+1 entries, unchanged.
inline Vec restrict_jet(const Vec& coeffs, int n) {
    if (coeffs.size() < n + 1) throw std::invalid_argument("restrict_jet: jet degree below target");
    return coeffs.head(n + 1);
}

// Fused Virtual reconstruction matrix, (2N+2) x 3(N+1): acts on concatenated
// degree-N data at nodes (m-1, m, m+1) and yields the degree-(2N+1) jet at m.
// Equals H * [RH 0; 0 RH] with H the half-offset interpolation matrix.
inline Mat virtual_reconstruction_matrix(int n) {
    const Mat& h = hermite_matrix(-0.5, 0.5, n);
    const Mat rh = h.topRows(n + 1);  // restriction of the dual reconstruction
    Mat pair = Mat::Zero(2 * n + 2, 3 * (n + 1));
    pair.block(0, 0, n + 1, 2 * (n + 1)) = rh;                // Q_{m-1/2} from (U_{m-1}, U_m)
    pair.block(n + 1, n + 1, n + 1, 2 * (n + 1)) = rh;        // Q_{m+1/2} from (U_m, U_{m+1})
    return h * pair;
}

// Stage-wise application: bitwise identical to the explicit two-stage path
// (restricted half-offset reconstructions at m -/+ 1/2, then the half-offset
// reconstruction at m), which the fused matrix equals only up to roundoff.
inline Vec virtual_reconstruct(const Vec& um1, const Vec& u0, const Vec& up1, int n) {
    const Mat& h = hermite_matrix(-0.5, 0.5, n);
    Vec left(2 * n + 2), right(2 * n + 2);
    left << um1, u0;
    right << u0, up1;
    Vec pair(2 * n + 2);
    pair << Vec((h * left).head(n + 1)), Vec((h * right).head(n + 1));
    return h * pair;
}

// One-sided reconstruction at x_m from (x_{m-1}, x_m): the first N+1
// coefficients are U_m verbatim, the tail comes from the last N+1 rows of
// the (-1, 0) interpolation matrix. `mirrored` gives the downwind variant
// from (x_m, x_{m+1}), i.e. offsets (0, +1).
inline Mat upwind_tail_matrix(int n, bool mirrored = false) {
    const Mat& h = mirrored ? hermite_matrix(0.0, 1.0, n) : hermite_matrix(-1.0, 0.0, n);
    return h.bottomRows(n + 1);
}

// Full square reconstruction matrix acting on [U_neighbor; U_m] (upwind) or
// [U_m; U_neighbor] (downwind); rows 0..N select U_m exactly.
inline Mat upwind_reconstruction_matrix(int n, bool mirrored = false) {
    Mat r = Mat::Zero(2 * n + 2, 2 * n + 2);
    if (mirrored)
        r.block(0, 0, n + 1, n + 1).setIdentity();
    else
        r.block(0, n + 1, n + 1, n + 1).setIdentity();
    r.bottomRows(n + 1) = upwind_tail_matrix(n, mirrored);
    return r;
}

inline Vec upwind_reconstruct(const Vec& um1, const Vec& u0, int n) {
    Vec out(2 * n + 2);
    out.head(n + 1) = u0;
    Vec data(2 * n + 2);
    data << um1, u0;
    out.tail(n + 1) = upwind_tail_matrix(n) * data;
    return out;
}

// Exact three-node interpolation matrix: maps degree-N data at offsets
// (-1, 0, 1) to the unique degree-(3N+2) jet at the center.
inline Mat three_node_full_matrix(int n) {
    const int w = 3 * n + 3;
    Mat stacked(w, w);
    stacked.topRows(n + 1) = constraint_matrix(-1.0, n + 1, w);
    stacked.middleRows(n + 1, n + 1) = constraint_matrix(0.0, n + 1, w);
    stacked.bottomRows(n + 1) = constraint_matrix(1.0, n + 1, w);
    return detail::invert_extended(stacked, "three_node_full_matrix");
}

// Tail rows of the exact three-node matrix; the default initialization of the
// free block H2 in the extended reconstruction.
inline Mat extended_tail_init(int n) { return three_node_full_matrix(n).bottomRows(n + 1); }

// Extended reconstruction: coefficients 0..2N+1 equal the fused Virtual
// reconstruction, coefficients 2N+2..3N+2 are H2 applied to the 3-node data.
inline Mat extended_reconstruction_matrix(int n, const Mat& h2) {
    if (h2.rows() != n + 1 || h2.cols() != 3 * n + 3)
        throw std::invalid_argument("extended_reconstruction_matrix: H2 must be (N+1) x (3N+3)");
    Mat r(3 * n + 3, 3 * n + 3);
    r.topRows(2 * n + 2) = virtual_reconstruction_matrix(n);
    r.bottomRows(n + 1) = h2;
    return r;
}

inline Vec extended_reconstruct(const Vec& um1, const Vec& u0, const Vec& up1, int n,
                                const Mat& h2) {
    Vec data(3 * (n + 1));
    data << um1, u0, up1;
    return extended_reconstruction_matrix(n, h2) * data;
}

}  // namespace hermite
