#pragma once

// Periodic 1D grids, grid states and the Dual, Virtual, Central and Upwind
// Hermite time steppers.

#include "hermite/interpolation.hpp"
#include "hermite/jet.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hermite {

struct CflError : std::runtime_error {
    explicit CflError(const std::string& what) : std::runtime_error(what) {}
};

enum class SchemeKind { Dual, Virtual, Central, Upwind };

inline const char* scheme_name(SchemeKind k) {
    switch (k) {
        case SchemeKind::Dual: return "dual";
        case SchemeKind::Virtual: return "virtual";
        case SchemeKind::Central: return "central";
        case SchemeKind::Upwind: return "upwind";
    }
    return "?";
}

struct SchemeConfig {
    SchemeKind kind;
    int order;   // N, degrees of freedom per node are N+1
    double cfl;  // C in (0, 1]

    SchemeConfig(SchemeKind k, int n, double c) : kind(k), order(n), cfl(c) {
        if (n < 0) throw std::invalid_argument("SchemeConfig: N must be >= 0");
        if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("SchemeConfig: C must be in (0,1]");
    }
};

struct Grid1D {
    double a, b;
    int cells;  // K

    Grid1D(double a_, double b_, int k) : a(a_), b(b_), cells(k) {
        if (k < 3 || b <= a) throw std::invalid_argument("Grid1D: need K >= 3 and b > a");
    }

    double h() const { return (b - a) / cells; }
    double node(int m) const { return a + m * h(); }
    int wrap(int m) const {
        int r = m % cells;
        return r < 0 ? r + cells : r;
    }
};

// Scalar advection u_t + c u_x = 0 (transport to the right for c > 0), or a
// constant-coefficient system u_t = A u_x.
struct Pde1D {
    LinearOp1D rhs;     // right-hand side coupling (A for u_t = A u_x)
    double wavespeed;   // spectral radius, used for CFL
    bool scalar;
    double c = 0.0;     // advection speed when scalar

    static Pde1D advection(double speed) {
        Pde1D p{LinearOp1D::scalar(-speed), std::abs(speed), true, speed};
        return p;
    }

    static Pde1D system(const Mat& a) {
        LinearOp1D op = LinearOp1D::system(a);
        return Pde1D{op, op.spectral_radius, false, 0.0};
    }

    int fields() const { return rhs.fields(); }
};

// Degree-N jets for each (node, field), all sharing the grid scale.
struct GridState1D {
    Grid1D grid;
    int order;   // N
    int fields;
    double time;
    std::vector<Vec> data;  // [m * fields + f], each of length N+1

    GridState1D(const Grid1D& g, int n, int f = 1, double t = 0.0)
        : grid(g), order(n), fields(f), time(t), data(static_cast<std::size_t>(g.cells) * f, Vec::Zero(n + 1)) {}

    Vec& at(int m, int f = 0) { return data[static_cast<std::size_t>(grid.wrap(m)) * fields + f]; }
    const Vec& at(int m, int f = 0) const {
        return data[static_cast<std::size_t>(grid.wrap(m)) * fields + f];
    }
};

// Largest stable timestep times the CFL constant. Dual/Virtual interpolate
// over half-cell intervals, Central/Upwind over full cells.
inline double max_timestep(const SchemeConfig& cfg, const Pde1D& pde, double h) {
    if (pde.wavespeed <= 0.0) throw std::invalid_argument("max_timestep: zero wavespeed");
    switch (cfg.kind) {
        case SchemeKind::Dual:
        case SchemeKind::Virtual: return cfg.cfl * h / (2.0 * pde.wavespeed);
        default: return cfg.cfl * h / pde.wavespeed;
    }
}

namespace detail {

inline void check_cfl(double cdt, double limit, const char* who) {
    if (cdt > limit * (1.0 + 1e-12))
        throw CflError(std::string(who) + ": timestep violates CFL restriction");
}

// Reconstruct-evolve-restrict at every node with a two-node stencil given by
// the square matrix `rec` acting on [U_{m+lo}; U_{m+hi}] per field.
inline GridState1D two_node_step(const GridState1D& s, const Pde1D& pde, const Mat& rec, int lo,
                                 int hi, double dt) {
    const int n = s.order;
    const int nf = s.fields;
    GridState1D out(s.grid, n, nf, s.time + dt);
    const double h = s.grid.h();
    std::vector<Vec> stack(nf);
    for (int m = 0; m < s.grid.cells; ++m) {
        for (int f = 0; f < nf; ++f) {
            Vec data(2 * n + 2);
            data << s.at(m + lo, f), s.at(m + hi, f);
            stack[f] = rec * data;
        }
        std::vector<Vec> evolved = taylor_evolve(stack, pde.rhs, dt, 2 * n + 1, h);
        for (int f = 0; f < nf; ++f) out.at(m, f) = evolved[f].head(n + 1);
    }
    return out;
}

}  // namespace detail

// Central: reconstruct at x_m from (x_{m-1}, x_{m+1}), evolve, restrict.
inline GridState1D step_central(const GridState1D& s, const Pde1D& pde, double dt) {
    detail::check_cfl(pde.wavespeed * dt, s.grid.h(), "step_central");
    const Mat& rec = hermite_matrix(-1.0, 1.0, s.order);
    return detail::two_node_step(s, pde, rec, -1, +1, dt);
}

// Upwind: one-sided reconstruction from (x_{m-1}, x_m) for c > 0, mirrored
// for c < 0. Scalar advection only.
inline GridState1D step_upwind(const GridState1D& s, const Pde1D& pde, double dt,
                               bool force_downwind = false) {
    if (!pde.scalar)
        throw std::invalid_argument("step_upwind: systems are not supported (use characteristic path)");
    detail::check_cfl(pde.wavespeed * dt, s.grid.h(), "step_upwind");
    const bool downwind = force_downwind ? (pde.c > 0.0) : (pde.c < 0.0);
    const Mat rec = upwind_reconstruction_matrix(s.order, downwind);
    return downwind ? detail::two_node_step(s, pde, rec, 0, +1, dt)
                    : detail::two_node_step(s, pde, rec, -1, 0, dt);
}

// Dual: stage 1 reconstructs on the staggered grid x_{m+1/2} from (x_m, x_{m+1}),
// evolves and restricts; stage 2 returns to the primary nodes. Each stage
// advances dt_stage, the full step 2*dt_stage.
inline GridState1D step_dual(const GridState1D& s, const Pde1D& pde, double dt_stage) {
    detail::check_cfl(pde.wavespeed * dt_stage, 0.5 * s.grid.h(), "step_dual");
    const int n = s.order;
    const int nf = s.fields;
    const double h = s.grid.h();
    const Mat& rec = hermite_matrix(-0.5, 0.5, n);
    // Dual-grid state: entry m holds the jet at x_{m+1/2}.
    GridState1D dual(s.grid, n, nf, s.time + dt_stage);
    std::vector<Vec> stack(nf);
    for (int m = 0; m < s.grid.cells; ++m) {
        for (int f = 0; f < nf; ++f) {
            Vec data(2 * n + 2);
            data << s.at(m, f), s.at(m + 1, f);
            stack[f] = rec * data;
        }
        std::vector<Vec> evolved = taylor_evolve(stack, pde.rhs, dt_stage, 2 * n + 1, h);
        for (int f = 0; f < nf; ++f) dual.at(m, f) = evolved[f].head(n + 1);
    }
    GridState1D out(s.grid, n, nf, s.time + 2.0 * dt_stage);
    for (int m = 0; m < s.grid.cells; ++m) {
        for (int f = 0; f < nf; ++f) {
            Vec data(2 * n + 2);
            data << dual.at(m - 1, f), dual.at(m, f);  // x_{m-1/2}, x_{m+1/2}
            stack[f] = rec * data;
        }
        std::vector<Vec> evolved = taylor_evolve(stack, pde.rhs, dt_stage, 2 * n + 1, h);
        for (int f = 0; f < nf; ++f) out.at(m, f) = evolved[f].head(n + 1);
    }
    return out;
}

// Virtual: the fused three-node reconstruction (Dual with a zero-length stage
// on the staggered grid), one evolution of dt, restriction.
inline GridState1D step_virtual(const GridState1D& s, const Pde1D& pde, double dt) {
    detail::check_cfl(pde.wavespeed * dt, 0.5 * s.grid.h(), "step_virtual");
    const int n = s.order;
    const int nf = s.fields;
    const double h = s.grid.h();
    GridState1D out(s.grid, n, nf, s.time + dt);
    std::vector<Vec> stack(nf);
    for (int m = 0; m < s.grid.cells; ++m) {
        for (int f = 0; f < nf; ++f)
            stack[f] = virtual_reconstruct(s.at(m - 1, f), s.at(m, f), s.at(m + 1, f), n);
        std::vector<Vec> evolved = taylor_evolve(stack, pde.rhs, dt, 2 * n + 1, h);
        for (int f = 0; f < nf; ++f) out.at(m, f) = evolved[f].head(n + 1);
    }
    return out;
}

// Extended Virtual step: degree-(3N+2) reconstruction from the three-node
// stencil with free tail block h2, evolved at Taylor order 3N+2.
inline GridState1D step_extended_virtual(const GridState1D& s, const Pde1D& pde, double dt,
                                         const Mat& h2) {
    detail::check_cfl(pde.wavespeed * dt, 0.5 * s.grid.h(), "step_extended_virtual");
    const int n = s.order;
    const int nf = s.fields;
    const double h = s.grid.h();
    const Mat rec = extended_reconstruction_matrix(n, h2);
    GridState1D out(s.grid, n, nf, s.time + dt);
    std::vector<Vec> stack(nf);
    for (int m = 0; m < s.grid.cells; ++m) {
        for (int f = 0; f < nf; ++f) {
            Vec data(3 * (n + 1));
            data << s.at(m - 1, f), s.at(m, f), s.at(m + 1, f);
            stack[f] = rec * data;
        }
        std::vector<Vec> evolved = taylor_evolve(stack, pde.rhs, dt, 3 * n + 2, h);
        for (int f = 0; f < nf; ++f) out.at(m, f) = evolved[f].head(n + 1);
    }
    return out;
}

// One scheme-appropriate update. For Dual this is the full two-stage step
// advancing `advance`; for the other schemes a single step of `advance`.
inline GridState1D step(SchemeKind kind, const GridState1D& s, const Pde1D& pde, double advance) {
    switch (kind) {
        case SchemeKind::Dual: return step_dual(s, pde, 0.5 * advance);
        case SchemeKind::Virtual: return step_virtual(s, pde, advance);
        case SchemeKind::Central: return step_central(s, pde, advance);
        case SchemeKind::Upwind: return step_upwind(s, pde, advance);
    }
    throw std::logic_error("step: unknown scheme");
}

// Physical time covered by one call to step() at the nominal timestep.
inline double nominal_advance(const SchemeConfig& cfg, const Pde1D& pde, double h) {
    const double dt = max_timestep(cfg, pde, h);
    return cfg.kind == SchemeKind::Dual ? 2.0 * dt : dt;
}

using Observer1D = std::function<void(double, const GridState1D&)>;

// Number of uniform steps covering `span` without exceeding the nominal
// advance (up to a relative slack absorbing roundoff in span/nominal).
inline long uniform_step_count(double span, double nominal) {
    return std::max(1L, static_cast<long>(std::ceil(span / nominal * (1.0 - 5e-13))));
}

// March to t_final with uniform steps: the nominal advance is shrunk just
// enough that an integer number of steps lands exactly on t_final.
inline GridState1D run(GridState1D state, const Pde1D& pde, const SchemeConfig& cfg,
                       double t_final, const Observer1D& observer = {}) {
    if (t_final < state.time) throw std::invalid_argument("run: t_final before current time");
    const double t0 = state.time;
    const double span = t_final - t0;
    if (span <= 1e-14 * std::max(1.0, std::abs(t_final))) {
        state.time = t_final;
        return state;
    }
    const long n = uniform_step_count(span, nominal_advance(cfg, pde, state.grid.h()));
    for (long i = 1; i <= n; ++i) {
        state = step(cfg.kind, state, pde, span / n);
        state.time = t0 + span * i / n;  // avoid accumulation drift
        if (observer) observer(state.time, state);
    }
    state.time = t_final;
    return state;
}

}  // namespace hermite
