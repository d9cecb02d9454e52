#pragma once

// Gauss-Legendre quadrature on [-1, 1] via Newton iteration on the Legendre
// recurrence. Deterministic, accurate to roundoff for the small orders used.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace hermite {

inline std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int q) {
    if (q < 1) throw std::invalid_argument("gauss_legendre: need q >= 1");
    Eigen::VectorXd x(q), w(q);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < q; ++i) {
        double z = std::cos(pi * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= q; ++k) {
                double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = q * (z * p1 - p0) / (z * z - 1.0);
            double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return {x, w};
}

}  // namespace hermite
