#pragma once

// Closed-form solutions used by the experiment drivers, with analytic jets
// produced through truncated Taylor arithmetic, and projection of initial
// data onto grid states.

#include "hermite/jet.hpp"
#include "hermite/schemes1d.hpp"
#include "hermite/schemes2d.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hermite {

inline constexpr double kSqrt2 = 1.41421356237309504880;

// ---------------------------------------------------------------------------
// 1D: advection with speed 1 on [-1, 1].
// ---------------------------------------------------------------------------

enum class Solution1DKind { Sine, Gaussian };

inline Solution1DKind solution1d_from_name(const std::string& name) {
    if (name == "sine1d") return Solution1DKind::Sine;
    if (name == "gaussian1d") return Solution1DKind::Gaussian;
    throw std::invalid_argument("unknown 1D solution id: " + name);
}

// u(x,t) = sin(pi (x - t))  or  u(x,t) = exp(-4 sin(pi (x - t))^2)
inline double solution1d_value(Solution1DKind kind, double x, double t) {
    const double s = std::sin(kPi * (x - t));
    return kind == Solution1DKind::Sine ? s : std::exp(-4.0 * s * s);
}

inline Vec solution1d_jet(Solution1DKind kind, double x0, double t, int n, double h) {
    // phase jet of pi*(x - t) about x0
    Vec ph = Vec::Zero(n + 1);
    ph[0] = kPi * (x0 - t);
    if (n >= 1) ph[1] = kPi * h;
    Jet phase(ph, h);
    auto [s, c] = jet_sin_cos(phase);
    if (kind == Solution1DKind::Sine) return s.coeffs;
    return jet_exp(jet_scale(jet_multiply(s, s), -4.0)).coeffs;
}

inline GridState1D project_initial_condition(Solution1DKind kind, const Grid1D& grid, int n) {
    GridState1D state(grid, n, 1, 0.0);
    for (int m = 0; m < grid.cells; ++m)
        state.at(m) = solution1d_jet(kind, grid.node(m), 0.0, n, grid.h());
    return state;
}

// ---------------------------------------------------------------------------
// 2D: advection at a given velocity, and the acoustic standing wave (c = 1).
// ---------------------------------------------------------------------------

enum class Solution2DKind { Sine, StandingWave };

inline Solution2DKind solution2d_from_name(const std::string& name) {
    if (name == "sine2d") return Solution2DKind::Sine;
    if (name == "standing-wave2d") return Solution2DKind::StandingWave;
    throw std::invalid_argument("unknown 2D solution id: " + name);
}

// u(x,y,t) = sin(pi (x - cx t)) sin(pi (y - cy t))
inline double sine2d_value(double x, double y, double t, double cx, double cy) {
    return std::sin(kPi * (x - cx * t)) * std::sin(kPi * (y - cy * t));
}

inline Mat sine2d_jet(double x0, double y0, double t, double cx, double cy, int n, double hx,
                      double hy) {
    Vec jx = Vec::Zero(n + 1), jy = Vec::Zero(n + 1);
    {
        Vec ph = Vec::Zero(n + 1);
        ph[0] = kPi * (x0 - cx * t);
        if (n >= 1) ph[1] = kPi * hx;
        jx = jet_sin_cos(Jet(ph, hx)).first.coeffs;
    }
    {
        Vec ph = Vec::Zero(n + 1);
        ph[0] = kPi * (y0 - cy * t);
        if (n >= 1) ph[1] = kPi * hy;
        jy = jet_sin_cos(Jet(ph, hy)).first.coeffs;
    }
    return jx * jy.transpose();
}

// Standing wave for the first-order acoustic system with c = 1:
//   p =  sin(pi x) sin(pi y) cos(sqrt(2) pi t)
//   u = -(1/sqrt(2)) cos(pi x) sin(pi y) sin(sqrt(2) pi t)
//   v = -(1/sqrt(2)) sin(pi x) cos(pi y) sin(sqrt(2) pi t)
inline double standing_wave_value(int field, double x, double y, double t) {
    const double st = std::sin(kSqrt2 * kPi * t), ct = std::cos(kSqrt2 * kPi * t);
    switch (field) {
        case 0: return std::sin(kPi * x) * std::sin(kPi * y) * ct;
        case 1: return -std::cos(kPi * x) * std::sin(kPi * y) * st / kSqrt2;
        case 2: return -std::sin(kPi * x) * std::cos(kPi * y) * st / kSqrt2;
    }
    throw std::invalid_argument("standing_wave_value: field out of range");
}

inline Mat standing_wave_jet(int field, double x0, double y0, double t, int n, double hx,
                             double hy) {
    Vec phx = Vec::Zero(n + 1), phy = Vec::Zero(n + 1);
    phx[0] = kPi * x0;
    phy[0] = kPi * y0;
    if (n >= 1) {
        phx[1] = kPi * hx;
        phy[1] = kPi * hy;
    }
    auto [sx, cx] = jet_sin_cos(Jet(phx, hx));
    auto [sy, cy] = jet_sin_cos(Jet(phy, hy));
    const double st = std::sin(kSqrt2 * kPi * t), ct = std::cos(kSqrt2 * kPi * t);
    switch (field) {
        case 0: return ct * (sx.coeffs * sy.coeffs.transpose());
        case 1: return (-st / kSqrt2) * (cx.coeffs * sy.coeffs.transpose());
        case 2: return (-st / kSqrt2) * (sx.coeffs * cy.coeffs.transpose());
    }
    throw std::invalid_argument("standing_wave_jet: field out of range");
}

inline GridState2D project_initial_condition_2d(Solution2DKind kind, const Grid2D& grid, int n,
                                                double cx = 0.0, double cy = 0.0) {
    const int nf = kind == Solution2DKind::StandingWave ? 3 : 1;
    GridState2D state(grid, n, nf, 0.0);
    for (int m = 0; m < grid.kx; ++m)
        for (int j = 0; j < grid.ky; ++j) {
            const double x = grid.x(m), y = grid.y(j);
            if (kind == Solution2DKind::Sine) {
                state.at(m, j, 0) = sine2d_jet(x, y, 0.0, cx, cy, n, grid.hx(), grid.hy());
            } else {
                for (int f = 0; f < 3; ++f)
                    state.at(m, j, f) = standing_wave_jet(f, x, y, 0.0, n, grid.hx(), grid.hy());
            }
        }
    return state;
}

}  // namespace hermite
