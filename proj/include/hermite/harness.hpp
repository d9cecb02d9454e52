#pragma once

// Experiment drivers: single runs, convergence sweeps and their reports.

#include "hermite/analysis.hpp"
#include "hermite/error_norms.hpp"
#include "hermite/schemes1d.hpp"
#include "hermite/schemes2d.hpp"
#include "hermite/solutions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hermite {

enum class Equation { Advection1D, Advection2D, Wave2D };

inline Equation equation_from_name(const std::string& name) {
    if (name == "advection1d") return Equation::Advection1D;
    if (name == "advection2d") return Equation::Advection2D;
    if (name == "wave2d") return Equation::Wave2D;
    throw std::invalid_argument("unknown equation: " + name);
}

inline SchemeKind scheme_from_name(const std::string& name) {
    if (name == "dual") return SchemeKind::Dual;
    if (name == "virtual") return SchemeKind::Virtual;
    if (name == "central") return SchemeKind::Central;
    if (name == "upwind") return SchemeKind::Upwind;
    throw std::invalid_argument("unknown scheme: " + name);
}

struct ExperimentConfig {
    Equation equation = Equation::Advection1D;
    SchemeKind scheme = SchemeKind::Dual;
    int order = 2;                    // N
    std::vector<int> cells = {16};    // K per run
    double cfl = 0.5;
    double t_final = 10.0;
    std::string solution = "";       // empty -> equation default
    // advection angle for 2D
    double angle = kPi / 3.0;

    std::string solution_or_default() const {
        if (!solution.empty()) return solution;
        switch (equation) {
            case Equation::Advection1D: return "sine1d";
            case Equation::Advection2D: return "sine2d";
            case Equation::Wave2D: return "standing-wave2d";
        }
        return "";
    }
};

struct RunResult {
    int cells;
    double l2;
    std::vector<double> times;   // optional per-step trace
    std::vector<double> errors;
};

// Run one case to t_final and measure the L2 error against the exact solution.
inline RunResult run_case(const ExperimentConfig& ec, int k, bool trace = false) {
    SchemeConfig cfg(ec.scheme, ec.order, ec.cfl);
    RunResult res;
    res.cells = k;

    if (ec.equation == Equation::Advection1D) {
        const Solution1DKind sol = solution1d_from_name(ec.solution_or_default());
        Grid1D grid(-1.0, 1.0, k);
        Pde1D pde = Pde1D::advection(1.0);
        GridState1D state = project_initial_condition(sol, grid, ec.order);
        auto exact = [sol](double x, double t) { return solution1d_value(sol, x, t); };
        Observer1D obs;
        if (trace)
            obs = [&](double t, const GridState1D& s) {
                res.times.push_back(t);
                res.errors.push_back(l2_error(s, exact));
            };
        GridState1D final = run(state, pde, cfg, ec.t_final, obs);
        res.l2 = l2_error(final, exact);
        return res;
    }

    Grid2D grid = Grid2D::square(-1.0, 1.0, k);
    if (ec.equation == Equation::Advection2D) {
        const double cx = std::cos(ec.angle), cy = std::sin(ec.angle);
        Pde2D pde = Pde2D::advection(cx, cy);
        GridState2D state = project_initial_condition_2d(Solution2DKind::Sine, grid, ec.order, cx, cy);
        auto exact = [cx, cy](double x, double y, double t) { return sine2d_value(x, y, t, cx, cy); };
        Observer2D obs;
        if (trace)
            obs = [&](double t, const GridState2D& s) {
                res.times.push_back(t);
                res.errors.push_back(l2_error_2d(s, exact));
            };
        GridState2D final = run_2d(state, pde, cfg, ec.t_final, obs);
        res.l2 = l2_error_2d(final, exact);
        return res;
    }

    // Wave2D: acoustic standing wave, c = 1, error measured in p.
    Pde2D pde = Pde2D::acoustic(1.0);
    GridState2D state = project_initial_condition_2d(Solution2DKind::StandingWave, grid, ec.order);
    auto exact = [](double x, double y, double t) { return standing_wave_value(0, x, y, t); };
    Observer2D obs;
    if (trace)
        obs = [&](double t, const GridState2D& s) {
            res.times.push_back(t);
            res.errors.push_back(l2_error_2d(s, exact, 0));
        };
    GridState2D final = run_2d(state, pde, cfg, ec.t_final, obs);
    res.l2 = l2_error_2d(final, exact, 0);
    return res;
}

struct ErrorReport {
    std::vector<int> cells;
    std::vector<double> errors;
    std::vector<double> rates;  // rates[i] = log2(errors[i-1]/errors[i]); rates[0] = NaN
    double mean_rate = 0.0;
};

inline ErrorReport rates_from_errors(const std::vector<int>& cells,
                                     const std::vector<double>& errors) {
    if (cells.size() != errors.size() || cells.size() < 2)
        throw std::invalid_argument("rates_from_errors: need >= 2 matching grid sizes");
    ErrorReport rep;
    rep.cells = cells;
    rep.errors = errors;
    rep.rates.assign(errors.size(), std::nan(""));
    double acc = 0.0;
    for (std::size_t i = 1; i < errors.size(); ++i) {
        rep.rates[i] = std::log2(errors[i - 1] / errors[i]);
        acc += rep.rates[i];
    }
    rep.mean_rate = acc / (errors.size() - 1);
    return rep;
}

// Run the config over its grid-size list and report pairwise L2 rates.
inline ErrorReport converge(const ExperimentConfig& ec) {
    if (ec.cells.size() < 2) throw std::invalid_argument("converge: need at least 2 grid sizes");
    for (std::size_t i = 1; i < ec.cells.size(); ++i)
        if (ec.cells[i] != 2 * ec.cells[i - 1])
            throw std::invalid_argument("converge: grid sizes must double");
    std::vector<double> errors;
    for (int k : ec.cells) errors.push_back(run_case(ec, k).l2);
    return rates_from_errors(ec.cells, errors);
}

}  // namespace hermite
