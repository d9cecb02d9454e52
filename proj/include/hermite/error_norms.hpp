#pragma once

// L2 error norms against pointwise-evaluable exact solutions. The discrete
// solution is the piecewise degree-(2N+1) Hermite reconstruction built per
// cell from the two (four in 2D) endpoint jets; the squared difference is
// integrated with Gauss-Legendre quadrature of 2N+4 points per axis.

#include "hermite/interpolation.hpp"
#include "hermite/quadrature.hpp"
#include "hermite/schemes1d.hpp"
#include "hermite/schemes2d.hpp"

#include <cmath>
#include <functional>

namespace hermite {

// exact(x, t) evaluated at state.time.
inline double l2_error(const GridState1D& s, const std::function<double(double, double)>& exact,
                       int field = 0) {
    const int n = s.order;
    const double h = s.grid.h();
    const Mat& rec = hermite_matrix(0.0, 1.0, n);  // cell reconstruction about the left node
    auto [qx, qw] = gauss_legendre(2 * n + 4);
    double acc = 0.0;
    for (int m = 0; m < s.grid.cells; ++m) {
        Vec data(2 * n + 2);
        data << s.at(m, field), s.at(m + 1, field);
        const Vec cell = rec * data;
        const double xl = s.grid.node(m);
        for (int q = 0; q < qx.size(); ++q) {
            const double x = xl + 0.5 * h * (qx[q] + 1.0);
            const double diff = jet_evaluate(cell, h, x, xl) - exact(x, s.time);
            acc += 0.5 * h * qw[q] * diff * diff;
        }
    }
    return std::sqrt(acc);
}

// exact(x, y, t) evaluated at state.time.
inline double l2_error_2d(const GridState2D& s,
                          const std::function<double(double, double, double)>& exact,
                          int field = 0) {
    const int n = s.order;
    const double hx = s.grid.hx(), hy = s.grid.hy();
    const Mat& rec = hermite_matrix(0.0, 1.0, n);
    auto [qx, qw] = gauss_legendre(2 * n + 4);
    const int q = static_cast<int>(qx.size());
    double acc = 0.0;
    for (int m = 0; m < s.grid.kx; ++m)
        for (int j = 0; j < s.grid.ky; ++j) {
            Mat block(2 * n + 2, 2 * n + 2);
            block.topLeftCorner(n + 1, n + 1) = s.at(m, j, field);
            block.topRightCorner(n + 1, n + 1) = s.at(m, j + 1, field);
            block.bottomLeftCorner(n + 1, n + 1) = s.at(m + 1, j, field);
            block.bottomRightCorner(n + 1, n + 1) = s.at(m + 1, j + 1, field);
            const Mat cell = rec * block * rec.transpose();
            const double xl = s.grid.x(m), yl = s.grid.y(j);
            for (int a = 0; a < q; ++a)
                for (int b = 0; b < q; ++b) {
                    const double x = xl + 0.5 * hx * (qx[a] + 1.0);
                    const double y = yl + 0.5 * hy * (qx[b] + 1.0);
                    const double diff = tensor_evaluate(cell, hx, hy, x, y, xl, yl) - exact(x, y, s.time);
                    acc += 0.25 * hx * hy * qw[a] * qw[b] * diff * diff;
                }
        }
    return std::sqrt(acc);
}

}  // namespace hermite
