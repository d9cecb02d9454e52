#pragma once

// Scaled Taylor coefficients (jets), derivative matrices, and temporal
// Taylor evolution for linear constant-coefficient operators.
//
// A jet of degree d stores the dimensionless coefficients
//   u_j = (h^j / j!) * d^j u / dx^j,   j = 0..d,
// so that u(x) ~ sum_j u_j * xi^j with xi = (x - center)/h.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hermite {

inline constexpr double kPi = 3.14159265358979323846;

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Jet {
    Vec coeffs;    // coeffs[j] = (h^j/j!) d^j u
    double scale;  // h > 0

    Jet() : scale(1.0) {}
    Jet(Vec c, double h) : coeffs(std::move(c)), scale(h) {
        if (scale <= 0.0) throw std::invalid_argument("Jet: scale must be positive");
    }

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Strictly superdiagonal matrix mapping scaled coefficients of u to those of du/dx:
// D[i][i+1] = (i+1)/h.
inline Mat make_derivative_matrix(int degree, double h) {
    if (degree < 0) throw std::invalid_argument("make_derivative_matrix: degree < 0");
    if (h <= 0.0) throw std::invalid_argument("make_derivative_matrix: h must be positive");
    Mat d = Mat::Zero(degree + 1, degree + 1);
    for (int i = 0; i < degree; ++i) d(i, i + 1) = static_cast<double>(i + 1) / h;
    return d;
}

// In-place-free derivative application, equivalent to make_derivative_matrix(d,h) * c.
inline Vec apply_derivative(const Vec& c, double h) {
    const int n = static_cast<int>(c.size());
    Vec out = Vec::Zero(n);
    for (int i = 0; i + 1 < n; ++i) out[i] = static_cast<double>(i + 1) / h * c[i + 1];
    return out;
}

// Horner evaluation of the jet polynomial at x.
inline double jet_evaluate(const Jet& j, double x, double center) {
    const double xi = (x - center) / j.scale;
    double acc = 0.0;
    for (int k = j.degree(); k >= 0; --k) acc = acc * xi + j.coeffs[k];
    return acc;
}

inline double jet_evaluate(const Vec& coeffs, double scale, double x, double center) {
    return jet_evaluate(Jet(coeffs, scale), x, center);
}

namespace detail {
inline void check_compatible(const Jet& a, const Jet& b) {
    if (a.degree() != b.degree() || a.scale != b.scale)
        throw std::invalid_argument("jet arithmetic: mismatched degree or scale");
}
}  // namespace detail

inline Jet jet_add(const Jet& a, const Jet& b) {
    detail::check_compatible(a, b);
    return Jet(a.coeffs + b.coeffs, a.scale);
}

inline Jet jet_scale(const Jet& a, double alpha) { return Jet(alpha * a.coeffs, a.scale); }

// Cauchy product, truncated to the common degree.
inline Jet jet_multiply(const Jet& a, const Jet& b) {
    detail::check_compatible(a, b);
    const int d = a.degree();
    Vec out = Vec::Zero(d + 1);
    for (int n = 0; n <= d; ++n)
        for (int k = 0; k <= n; ++k) out[n] += a.coeffs[k] * b.coeffs[n - k];
    return Jet(out, a.scale);
}

// exp(a) by the standard power-series recurrence b_n = (1/n) sum_k k a_k b_{n-k}.
inline Jet jet_exp(const Jet& a) {
    const int d = a.degree();
    Vec out = Vec::Zero(d + 1);
    out[0] = std::exp(a.coeffs[0]);
    for (int n = 1; n <= d; ++n) {
        double s = 0.0;
        for (int k = 1; k <= n; ++k) s += k * a.coeffs[k] * out[n - k];
        out[n] = s / n;
    }
    return Jet(out, a.scale);
}

// Coupled sin/cos recurrences.
inline std::pair<Jet, Jet> jet_sin_cos(const Jet& a) {
    const int d = a.degree();
    Vec s = Vec::Zero(d + 1), c = Vec::Zero(d + 1);
    s[0] = std::sin(a.coeffs[0]);
    c[0] = std::cos(a.coeffs[0]);
    for (int n = 1; n <= d; ++n) {
        double ss = 0.0, cc = 0.0;
        for (int k = 1; k <= n; ++k) {
            ss += k * a.coeffs[k] * c[n - k];
            cc -= k * a.coeffs[k] * s[n - k];
        }
        s[n] = ss / n;
        c[n] = cc / n;
    }
    return {Jet(s, a.scale), Jet(c, a.scale)};
}

// Jet of the identity map x about `center` with scale h: [center, h, 0, ...].
inline Jet jet_of_x(double center, int degree, double h) {
    Vec c = Vec::Zero(degree + 1);
    c[0] = center;
    if (degree >= 1) c[1] = h;
    return Jet(c, h);
}

// ---------------------------------------------------------------------------
// Linear spatial operators and temporal Taylor evolution.
// ---------------------------------------------------------------------------

// Right-hand side of du/dt = op(u), with op = A * d/dx acting field-wise on a
// stack of 1D jets. `coupling` is the F x F matrix A.
struct LinearOp1D {
    Mat coupling;
    double spectral_radius;

    static LinearOp1D scalar(double a) {
        LinearOp1D op;
        op.coupling = Mat::Constant(1, 1, a);
        op.spectral_radius = std::abs(a);
        return op;
    }

    static LinearOp1D system(const Mat& a) {
        if (a.rows() != a.cols()) throw std::invalid_argument("LinearOp1D: A must be square");
        LinearOp1D op;
        op.coupling = a;
        op.spectral_radius = a.eigenvalues().cwiseAbs().maxCoeff();
        return op;
    }

    int fields() const { return static_cast<int>(coupling.rows()); }

    // out[f] = sum_g A(f,g) * D * in[g]
    void apply(const std::vector<Vec>& in, std::vector<Vec>& out, double h) const {
        const int f = fields();
        const int n = static_cast<int>(in[0].size());
        out.resize(f);
        for (int i = 0; i < f; ++i) {
            out[i] = Vec::Zero(n);
            for (int g = 0; g < f; ++g) {
                const double a = coupling(i, g);
                if (a == 0.0) continue;
                const Vec& u = in[g];
                for (int j = 0; j + 1 < n; ++j) out[i][j] += a * (j + 1) / h * u[j + 1];
            }
        }
    }
};

// Truncated-exponential evolution: returns sum_{k=0}^{order} (dt*op)^k/k! applied
// to the stack, computed by the Horner recurrence w <- u + (dt/k) op(w).
inline std::vector<Vec> taylor_evolve(const std::vector<Vec>& jets, const LinearOp1D& op,
                                      double dt, int order, double h) {
    if (order < 0) throw std::invalid_argument("taylor_evolve: order < 0");
    if (dt < 0.0) throw std::invalid_argument("taylor_evolve: dt < 0");
    if (dt == 0.0 || order == 0) return jets;
    std::vector<Vec> w = jets, t;
    for (int k = order; k >= 1; --k) {
        op.apply(w, t, h);
        for (std::size_t f = 0; f < jets.size(); ++f) w[f] = jets[f] + (dt / k) * t[f];
    }
    return w;
}

// ---------------------------------------------------------------------------
// Tensor-product jets for 2D.
// ---------------------------------------------------------------------------

// coeffs(j,k) = (hx^j hy^k / (j! k!)) * d^{j+k} u / dx^j dy^k
struct TensorJet2D {
    Mat coeffs;
    double hx, hy;

    TensorJet2D() : hx(1.0), hy(1.0) {}
    TensorJet2D(Mat c, double sx, double sy) : coeffs(std::move(c)), hx(sx), hy(sy) {
        if (hx <= 0.0 || hy <= 0.0) throw std::invalid_argument("TensorJet2D: scales must be positive");
    }
};

inline double tensor_evaluate(const Mat& coeffs, double hx, double hy, double x, double y,
                              double cx, double cy) {
    const double xi = (x - cx) / hx, eta = (y - cy) / hy;
    double acc = 0.0;
    for (int j = static_cast<int>(coeffs.rows()) - 1; j >= 0; --j) {
        double row = 0.0;
        for (int k = static_cast<int>(coeffs.cols()) - 1; k >= 0; --k) row = row * eta + coeffs(j, k);
        acc = acc * xi + row;
    }
    return acc;
}

// Right-hand side for the supported 2D systems: scalar advection
// u_t = -cx u_x - cy u_y, or the first-order acoustic system on (p,u,v):
//   p_t = -c^2 (u_x + v_y),  u_t = -p_x,  v_t = -p_y.
struct LinearOp2D {
    enum class Kind { Advection, Acoustic };
    Kind kind;
    double cx = 0.0, cy = 0.0;  // advection velocity
    double c = 0.0;             // acoustic wavespeed
    double spectral_radius = 0.0;

    static LinearOp2D advection(double vx, double vy) {
        LinearOp2D op;
        op.kind = Kind::Advection;
        op.cx = vx;
        op.cy = vy;
        op.spectral_radius = std::hypot(vx, vy);
        return op;
    }

    static LinearOp2D acoustic(double speed) {
        LinearOp2D op;
        op.kind = Kind::Acoustic;
        op.c = speed;
        op.spectral_radius = speed;
        return op;
    }

    int fields() const { return kind == Kind::Advection ? 1 : 3; }

    void apply(const std::vector<Mat>& in, std::vector<Mat>& out, double hx, double hy) const {
        const int rows = static_cast<int>(in[0].rows());
        const int cols = static_cast<int>(in[0].cols());
        auto dx = [&](const Mat& m) {
            Mat r = Mat::Zero(rows, cols);
            for (int j = 0; j + 1 < rows; ++j) r.row(j) = (j + 1) / hx * m.row(j + 1);
            return r;
        };
        auto dy = [&](const Mat& m) {
            Mat r = Mat::Zero(rows, cols);
            for (int k = 0; k + 1 < cols; ++k) r.col(k) = (k + 1) / hy * m.col(k + 1);
            return r;
        };
        out.resize(in.size());
        if (kind == Kind::Advection) {
            out[0] = -cx * dx(in[0]) - cy * dy(in[0]);
        } else {
            out[0] = -c * c * (dx(in[1]) + dy(in[2]));  // p_t
            out[1] = -dx(in[0]);                        // u_t
            out[2] = -dy(in[0]);                        // v_t
        }
    }
};

inline std::vector<Mat> taylor_evolve_2d(const std::vector<Mat>& jets, const LinearOp2D& op,
                                         double dt, int order, double hx, double hy) {
    if (order < 0) throw std::invalid_argument("taylor_evolve_2d: order < 0");
    if (dt == 0.0 || order == 0) return jets;
    std::vector<Mat> w = jets, t;
    for (int k = order; k >= 1; --k) {
        op.apply(w, t, hx, hy);
        for (std::size_t f = 0; f < jets.size(); ++f) w[f] = jets[f] + (dt / k) * t[f];
    }
    return w;
}

}  // namespace hermite
