#pragma once

// Tensor-product extension of the Hermite schemes to periodic 2D grids,
// for scalar advection and the first-order isotropic acoustic system.
//
// All reconstructions are dimension-by-dimension: the 1D reconstruction
// matrix for a scheme is applied along x (to each column of y-coefficients)
// and then along y, which for a tensor jet stored as a matrix reduces to
// the sandwich  Rx * [stencil block] * Ry^T.

#include "hermite/interpolation.hpp"
#include "hermite/jet.hpp"
#include "hermite/schemes1d.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hermite {

struct Grid2D {
    double ax, bx, ay, by;
    int kx, ky;

    Grid2D(double ax_, double bx_, int kx_, double ay_, double by_, int ky_)
        : ax(ax_), bx(bx_), ay(ay_), by(by_), kx(kx_), ky(ky_) {
        if (kx < 3 || ky < 3 || bx <= ax || by <= ay)
            throw std::invalid_argument("Grid2D: need K >= 3 per axis and positive extents");
    }

    static Grid2D square(double a, double b, int k) { return Grid2D(a, b, k, a, b, k); }

    double hx() const { return (bx - ax) / kx; }
    double hy() const { return (by - ay) / ky; }
    double x(int m) const { return ax + m * hx(); }
    double y(int n) const { return ay + n * hy(); }
    int wx(int m) const {
        int r = m % kx;
        return r < 0 ? r + kx : r;
    }
    int wy(int n) const {
        int r = n % ky;
        return r < 0 ? r + ky : r;
    }
};

struct Pde2D {
    LinearOp2D rhs;
    double wavespeed;

    static Pde2D advection(double cx, double cy) {
        LinearOp2D op = LinearOp2D::advection(cx, cy);
        return Pde2D{op, op.spectral_radius};
    }

    static Pde2D acoustic(double c) {
        LinearOp2D op = LinearOp2D::acoustic(c);
        return Pde2D{op, op.spectral_radius};
    }

    int fields() const { return rhs.fields(); }
};

// Per node and field, an (N+1)x(N+1) tensor jet.
struct GridState2D {
    Grid2D grid;
    int order;
    int fields;
    double time;
    std::vector<Mat> data;  // [(m * ky + n) * fields + f]

    GridState2D(const Grid2D& g, int n_, int f = 1, double t = 0.0)
        : grid(g), order(n_), fields(f), time(t),
          data(static_cast<std::size_t>(g.kx) * g.ky * f, Mat::Zero(n_ + 1, n_ + 1)) {}

    Mat& at(int m, int n, int f = 0) {
        return data[(static_cast<std::size_t>(grid.wx(m)) * grid.ky + grid.wy(n)) * fields + f];
    }
    const Mat& at(int m, int n, int f = 0) const {
        return data[(static_cast<std::size_t>(grid.wx(m)) * grid.ky + grid.wy(n)) * fields + f];
    }
};

inline double max_timestep_2d(const SchemeConfig& cfg, const Pde2D& pde, const Grid2D& g) {
    if (pde.wavespeed <= 0.0) throw std::invalid_argument("max_timestep_2d: zero wavespeed");
    const double h = std::min(g.hx(), g.hy());
    switch (cfg.kind) {
        case SchemeKind::Dual:
        case SchemeKind::Virtual: return cfg.cfl * h / (2.0 * pde.wavespeed);
        default: return cfg.cfl * h / pde.wavespeed;
    }
}

namespace detail {

// Assemble the stencil block matrix for a per-axis reconstruction: entries
// of node (i,j) of the stencil occupy block (i,j) of the result.
template <int NX, int NY>
inline Mat stencil_block(const std::array<std::array<const Mat*, NY>, NX>& jets, int n) {
    Mat block(NX * (n + 1), NY * (n + 1));
    for (int i = 0; i < NX; ++i)
        for (int j = 0; j < NY; ++j) block.block(i * (n + 1), j * (n + 1), n + 1, n + 1) = *jets[i][j];
    return block;
}

}  // namespace detail

// Reconstruct the degree-(2N+1, 2N+1) tensor jet at node (m, n). The stencil
// is taken from `state` relative to (m, n) according to the scheme; for
// Upwind the one-sided neighbor per axis follows (sx, sy) = sign(c_x), sign(c_y).
inline Mat reconstruct_2d(SchemeKind kind, const GridState2D& s, int m, int n, int f, int sx = 1,
                          int sy = 1) {
    const int N = s.order;
    switch (kind) {
        case SchemeKind::Central: {
            const Mat& h = hermite_matrix(-1.0, 1.0, N);
            std::array<std::array<const Mat*, 2>, 2> st{
                {{&s.at(m - 1, n - 1, f), &s.at(m - 1, n + 1, f)},
                 {&s.at(m + 1, n - 1, f), &s.at(m + 1, n + 1, f)}}};
            return h * detail::stencil_block<2, 2>(st, N) * h.transpose();
        }
        case SchemeKind::Virtual: {
            const Mat v = virtual_reconstruction_matrix(N);
            std::array<std::array<const Mat*, 3>, 3> st{
                {{&s.at(m - 1, n - 1, f), &s.at(m - 1, n, f), &s.at(m - 1, n + 1, f)},
                 {&s.at(m, n - 1, f), &s.at(m, n, f), &s.at(m, n + 1, f)},
                 {&s.at(m + 1, n - 1, f), &s.at(m + 1, n, f), &s.at(m + 1, n + 1, f)}}};
            return v * detail::stencil_block<3, 3>(st, N) * v.transpose();
        }
        case SchemeKind::Upwind: {
            const Mat rx = upwind_reconstruction_matrix(N, sx < 0);
            const Mat ry = upwind_reconstruction_matrix(N, sy < 0);
            const int ox = sx > 0 ? -1 : +1;
            const int oy = sy > 0 ? -1 : +1;
            // Matrix row order must match the matrix's expected input order:
            // upwind expects [neighbor; center], downwind [center; neighbor].
            const int x0 = sx > 0 ? m + ox : m, x1 = sx > 0 ? m : m + ox;
            const int y0 = sy > 0 ? n + oy : n, y1 = sy > 0 ? n : n + oy;
            std::array<std::array<const Mat*, 2>, 2> st{
                {{&s.at(x0, y0, f), &s.at(x0, y1, f)}, {&s.at(x1, y0, f), &s.at(x1, y1, f)}}};
            return rx * detail::stencil_block<2, 2>(st, N) * ry.transpose();
        }
        case SchemeKind::Dual:
            throw std::invalid_argument("reconstruct_2d: Dual reconstructs on the staggered lattice");
    }
    throw std::logic_error("reconstruct_2d: unknown scheme");
}

namespace detail {

inline GridState2D dual_stage_2d(const GridState2D& s, const Pde2D& pde, double dt, int dir) {
    // dir = +1: primary -> dual lattice (jets at (m+1/2, n+1/2) stored at index (m,n)),
    // dir = -1: dual -> primary.
    const int N = s.order;
    const int nf = s.fields;
    const Mat& h = hermite_matrix(-0.5, 0.5, N);
    const int lo = dir > 0 ? 0 : -1;
    GridState2D out(s.grid, N, nf, s.time + dt);
    const int order = 2 * (2 * N + 1);
    std::vector<Mat> stack(nf);
    for (int m = 0; m < s.grid.kx; ++m)
        for (int n = 0; n < s.grid.ky; ++n) {
            for (int f = 0; f < nf; ++f) {
                std::array<std::array<const Mat*, 2>, 2> st{
                    {{&s.at(m + lo, n + lo, f), &s.at(m + lo, n + lo + 1, f)},
                     {&s.at(m + lo + 1, n + lo, f), &s.at(m + lo + 1, n + lo + 1, f)}}};
                stack[f] = h * stencil_block<2, 2>(st, N) * h.transpose();
            }
            std::vector<Mat> ev = taylor_evolve_2d(stack, pde.rhs, dt, order, s.grid.hx(), s.grid.hy());
            for (int f = 0; f < nf; ++f) out.at(m, n, f) = ev[f].topLeftCorner(N + 1, N + 1);
        }
    return out;
}

}  // namespace detail

// One update of the requested scheme. For Dual, `advance` covers the full
// two-stage step; for the others a single step of `advance`.
inline GridState2D step_2d(SchemeKind kind, const GridState2D& s, const Pde2D& pde,
                           double advance) {
    const double h = std::min(s.grid.hx(), s.grid.hy());
    const bool half = (kind == SchemeKind::Dual || kind == SchemeKind::Virtual);
    const double dt = (kind == SchemeKind::Dual) ? 0.5 * advance : advance;
    detail::check_cfl(pde.wavespeed * dt, half ? 0.5 * h : h, "step_2d");

    if (kind == SchemeKind::Upwind && pde.rhs.kind == LinearOp2D::Kind::Acoustic)
        throw std::invalid_argument("step_2d: Upwind is unsupported for the acoustic system");

    if (kind == SchemeKind::Dual) {
        GridState2D mid = detail::dual_stage_2d(s, pde, dt, +1);
        return detail::dual_stage_2d(mid, pde, dt, -1);
    }

    const int N = s.order;
    const int nf = s.fields;
    const int sx = pde.rhs.cx >= 0.0 ? 1 : -1;
    const int sy = pde.rhs.cy >= 0.0 ? 1 : -1;
    const int order = 2 * (2 * N + 1);
    GridState2D out(s.grid, N, nf, s.time + dt);
    std::vector<Mat> stack(nf);
    for (int m = 0; m < s.grid.kx; ++m)
        for (int n = 0; n < s.grid.ky; ++n) {
            for (int f = 0; f < nf; ++f) stack[f] = reconstruct_2d(kind, s, m, n, f, sx, sy);
            std::vector<Mat> ev = taylor_evolve_2d(stack, pde.rhs, dt, order, s.grid.hx(), s.grid.hy());
            for (int f = 0; f < nf; ++f) out.at(m, n, f) = ev[f].topLeftCorner(N + 1, N + 1);
        }
    return out;
}

inline double nominal_advance_2d(const SchemeConfig& cfg, const Pde2D& pde, const Grid2D& g) {
    const double dt = max_timestep_2d(cfg, pde, g);
    return cfg.kind == SchemeKind::Dual ? 2.0 * dt : dt;
}

using Observer2D = std::function<void(double, const GridState2D&)>;

// Uniform steps landing exactly on t_final, as in the 1D driver.
inline GridState2D run_2d(GridState2D state, const Pde2D& pde, const SchemeConfig& cfg,
                          double t_final, const Observer2D& observer = {}) {
    if (t_final < state.time) throw std::invalid_argument("run_2d: t_final before current time");
    const double t0 = state.time;
    const double span = t_final - t0;
    if (span <= 1e-14 * std::max(1.0, std::abs(t_final))) {
        state.time = t_final;
        return state;
    }
    const long n = uniform_step_count(span, nominal_advance_2d(cfg, pde, state.grid));
    for (long i = 1; i <= n; ++i) {
        state = step_2d(cfg.kind, state, pde, span / n);
        state.time = t0 + span * i / n;
        if (observer) observer(state.time, state);
    }
    state.time = t_final;
    return state;
}

// Time-derivative jets of the acoustic system for given (p, u, v) jets.
inline std::vector<Mat> acoustic_operator(const std::vector<Mat>& puv, double c, double hx,
                                          double hy) {
    if (puv.size() != 3) throw std::invalid_argument("acoustic_operator: expected (p, u, v)");
    LinearOp2D op = LinearOp2D::acoustic(c);
    std::vector<Mat> out;
    op.apply(puv, out, hx, hy);
    return out;
}

}  // namespace hermite
