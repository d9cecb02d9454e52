#pragma once

// Update-matrix probing, block-circulant assembly, spectra, Bloch/Floquet
// dispersion-dissipation analysis, and DRP optimization of the extended
// Virtual reconstruction.

#include "hermite/interpolation.hpp"
#include "hermite/schemes1d.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hermite {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Banded blocks S_j of the one-step update U^{n+1}_m = sum_j S_j U^n_{m+j},
// for a normalized update covering the same physical advance for every scheme
// (Dual: two stages; Virtual: two steps, i.e. S^2; Central/Upwind: one step).
struct UpdateBlocks {
    int order;                  // N
    std::map<int, Mat> blocks;  // offset -> (N+1)x(N+1) block
    double advance;             // physical time covered
    double theta;               // c * advance / h_x (phase advance per kh unit)
};

namespace detail {

inline int scheme_bandwidth(SchemeKind kind, bool normalized) {
    if (kind == SchemeKind::Virtual) return normalized ? 2 : 1;
    return 1;
}

}  // namespace detail

// Matrix-free probing of the translation-invariant blocks: apply one
// normalized update to unit-impulse states on a small periodic grid and read
// off the response. Verifies bandedness and translation invariance to 1e-13.
// If `h2` is given, the Virtual scheme is replaced by the extended Virtual
// scheme with that tail block.
inline UpdateBlocks probe_update_blocks(SchemeKind kind, int n, double cfl, double c, double hx,
                                        const std::optional<Mat>& h2 = std::nullopt) {
    if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("probe_update_blocks: C in (0,1]");
    const int bw = detail::scheme_bandwidth(kind, true);
    const int k = 2 * bw + 7;
    Grid1D grid(0.0, k * hx, k);
    Pde1D pde = Pde1D::advection(c);
    SchemeConfig cfg(kind, n, cfl);
    const double adv = nominal_advance(cfg, pde, hx);

    auto normalized_update = [&](const GridState1D& s) {
        switch (kind) {
            case SchemeKind::Dual: return step_dual(s, pde, 0.5 * adv);
            case SchemeKind::Central: return step_central(s, pde, adv);
            case SchemeKind::Upwind: return step_upwind(s, pde, adv);
            case SchemeKind::Virtual: {
                const double dt = max_timestep(cfg, pde, hx);
                GridState1D mid = h2 ? step_extended_virtual(s, pde, dt, *h2)
                                     : step_virtual(s, pde, dt);
                return h2 ? step_extended_virtual(mid, pde, dt, *h2) : step_virtual(mid, pde, dt);
            }
        }
        throw std::logic_error("probe_update_blocks: unknown scheme");
    };

    auto probe_at = [&](int p) {
        std::map<int, Mat> blocks;
        for (int off = -bw; off <= bw; ++off) blocks[off] = Mat::Zero(n + 1, n + 1);
        for (int col = 0; col <= n; ++col) {
            GridState1D s(grid, n);
            s.at(p)[col] = 1.0;
            GridState1D r = normalized_update(s);
            for (int m = 0; m < k; ++m) {
                const int off = p - m;
                if (std::abs(off) <= bw && grid.wrap(m + off) == p) {
                    blocks[off].col(col) = r.at(m);
                } else if (r.at(m).cwiseAbs().maxCoeff() > 1e-13) {
                    throw std::runtime_error("probe_update_blocks: response outside expected band");
                }
            }
        }
        return blocks;
    };

    std::map<int, Mat> blocks = probe_at(k / 2);
    std::map<int, Mat> shifted = probe_at(k / 2 + 1);
    for (auto& [off, b] : blocks)
        if ((b - shifted.at(off)).cwiseAbs().maxCoeff() > 1e-13)
            throw std::runtime_error("probe_update_blocks: update is not translation invariant");

    // Normalized advance: two half-steps for Virtual, full two-stage step for
    // Dual, one step otherwise. For Virtual adv above is one half-step.
    const double advance = kind == SchemeKind::Virtual ? 2.0 * adv : adv;
    return UpdateBlocks{n, std::move(blocks), advance, c * advance / hx};
}

// Dense block-circulant assembly of the K(N+1) update matrix.
inline Mat assemble_global(const UpdateBlocks& ub, int k) {
    const int b = ub.order + 1;
    int bw = 0;
    for (auto& [off, blk] : ub.blocks) bw = std::max(bw, std::abs(off));
    if (k < 2 * bw + 1) throw std::invalid_argument("assemble_global: grid too small for bandwidth");
    Mat s = Mat::Zero(k * b, k * b);
    for (int m = 0; m < k; ++m)
        for (auto& [off, blk] : ub.blocks) {
            int col = ((m + off) % k + k) % k;
            s.block(m * b, col * b, b, b) += blk;
        }
    return s;
}

// Eigenvalues of a dense real matrix with a residual sanity check.
inline CVec spectrum(const Mat& m, double residual_tol = 1e-8) {
    Eigen::EigenSolver<Mat> es(m);
    if (es.info() != Eigen::Success) throw std::runtime_error("spectrum: eigensolver failed");
    const CMat v = es.eigenvectors();
    const CVec lam = es.eigenvalues();
    const CMat mz = m.cast<std::complex<double>>();
    for (int i = 0; i < lam.size(); ++i) {
        const double r = (mz * v.col(i) - lam[i] * v.col(i)).norm();
        if (r > residual_tol * std::max(1.0, v.col(i).norm()))
            throw std::runtime_error("spectrum: eigenpair residual above tolerance");
    }
    return lam;
}

inline double spectral_radius(const UpdateBlocks& ub, int k) {
    return spectrum(assemble_global(ub, k)).cwiseAbs().maxCoeff();
}

// Bloch symbol sum_j e^{i j kh} S_j.
inline CMat bloch_symbol(const UpdateBlocks& ub, double kh) {
    const int b = ub.order + 1;
    CMat m = CMat::Zero(b, b);
    const std::complex<double> i(0.0, 1.0);
    for (auto& [off, blk] : ub.blocks) m += std::exp(i * (off * kh)) * blk.cast<std::complex<double>>();
    return m;
}

struct FloquetResult {
    double kh;
    std::complex<double> lambda;
    double error;      // E_kh
    bool ambiguous;    // eigenvector selection was degenerate
};

namespace detail {
using CLMat = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
using CLVec = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, 1>;
}  // namespace detail

// Discrete Floquet multiplier: the symbol eigenvalue whose eigenvector has
// maximal normalized correlation with the exact Bloch-mode jet
// b_j = (i kh)^j / j!, compared against the exact multiplier e^{-i kh theta}.
// The symbol and its eigendecomposition are evaluated in extended precision:
// at small kh the multiplier error scales like (kh)^{2N+2} and drops below
// the double-precision eigensolver floor for N >= 3.
inline FloquetResult floquet_error(const UpdateBlocks& ub, double kh) {
    if (!(kh > 0.0 && kh <= kPi + 1e-12))
        throw std::invalid_argument("floquet_error: kh must lie in (0, pi]");
    const int b = ub.order + 1;
    const std::complex<long double> i(0.0L, 1.0L);
    const long double khl = kh;

    detail::CLMat sym = detail::CLMat::Zero(b, b);
    for (auto& [off, blk] : ub.blocks)
        sym += std::exp(i * (off * khl)) * blk.cast<std::complex<long double>>();

    detail::CLVec mode(b);
    std::complex<long double> term(1.0L, 0.0L);
    for (int j = 0; j < b; ++j) {
        mode[j] = term;
        term *= i * khl / static_cast<long double>(j + 1);
    }
    mode.normalize();

    Eigen::ComplexEigenSolver<detail::CLMat> es(sym);
    if (es.info() != Eigen::Success) throw std::runtime_error("floquet_error: eigensolver failed");
    long double best = -1.0L, second = -1.0L;
    int best_i = 0;
    for (int j = 0; j < b; ++j) {
        const long double corr = std::abs(mode.dot(es.eigenvectors().col(j).normalized()));
        if (corr > best) {
            second = best;
            best = corr;
            best_i = j;
        } else if (corr > second) {
            second = corr;
        }
    }
    const std::complex<long double> lambda = es.eigenvalues()[best_i];
    const std::complex<long double> exact = std::exp(-i * (khl * static_cast<long double>(ub.theta)));
    const long double err = std::abs(lambda - exact) / std::abs(exact);
    return FloquetResult{kh,
                         std::complex<double>(static_cast<double>(lambda.real()),
                                              static_cast<double>(lambda.imag())),
                         static_cast<double>(err), b > 1 && best - second < 1e-12L};
}

// ---------------------------------------------------------------------------
// DRP optimization of the extended Virtual tail block H2 (Nelder-Mead).
// ---------------------------------------------------------------------------

struct DrpResult {
    Mat h2;
    double objective;
    double spectral_radius;   // of the optimized normalized update on K_coarse
    bool stagnated;
    int iterations;
};

namespace detail {

// Deterministic Nelder-Mead on a flat parameter vector.
template <typename F>
std::pair<Vec, double> nelder_mead(const F& f, const Vec& x0, int max_iter, int stall_limit,
                                   int* iters_out, bool* stagnated_out) {
    const int n = static_cast<int>(x0.size());
    std::vector<Vec> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    for (int i = 0; i < n; ++i) {
        const double step = 0.05 * std::max(1.0, std::abs(x0[i]));
        xs[i + 1][i] += step;
    }
    for (int i = 0; i <= n; ++i) fs[i] = f(xs[i]);

    auto order = [&]() {
        for (int i = 1; i <= n; ++i)
            for (int j = i; j > 0 && fs[j] < fs[j - 1]; --j) {
                std::swap(fs[j], fs[j - 1]);
                std::swap(xs[j], xs[j - 1]);
            }
    };
    order();

    double best_seen = fs[0];
    int stall = 0, it = 0;
    for (; it < max_iter; ++it) {
        Vec centroid = Vec::Zero(n);
        for (int i = 0; i < n; ++i) centroid += xs[i];
        centroid /= n;

        const Vec xr = centroid + (centroid - xs[n]);
        const double fr = f(xr);
        if (fr < fs[0]) {
            const Vec xe = centroid + 2.0 * (centroid - xs[n]);
            const double fe = f(xe);
            if (fe < fr) { xs[n] = xe; fs[n] = fe; } else { xs[n] = xr; fs[n] = fr; }
        } else if (fr < fs[n - 1]) {
            xs[n] = xr;
            fs[n] = fr;
        } else {
            const Vec xc = centroid + 0.5 * (xs[n] - centroid);
            const double fc = f(xc);
            if (fc < fs[n]) {
                xs[n] = xc;
                fs[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    xs[i] = xs[0] + 0.5 * (xs[i] - xs[0]);
                    fs[i] = f(xs[i]);
                }
            }
        }
        order();
        if (fs[0] < best_seen * (1.0 - 1e-12)) {
            best_seen = fs[0];
            stall = 0;
        } else if (++stall >= stall_limit) {
            break;
        }
        if (fs[n] - fs[0] < 1e-15 * std::max(1.0, std::abs(fs[0]))) break;
    }
    if (iters_out) *iters_out = it;
    if (stagnated_out) *stagnated_out = stall >= stall_limit;
    return {xs[0], fs[0]};
}

}  // namespace detail

// Per-sample DRP objective: relative dispersion error split
// into real and imaginary parts; samples where either part of the exact
// multiplier is near zero are excluded by the caller.
inline double drp_objective(const UpdateBlocks& ub, const std::vector<double>& khs) {
    const std::complex<double> i(0.0, 1.0);
    double acc = 0.0;
    for (double kh : khs) {
        const FloquetResult fr = floquet_error(ub, kh);
        const std::complex<double> exact = std::exp(-i * (kh * ub.theta));
        const std::complex<double> diff = fr.lambda - exact;
        acc += std::pow(diff.real() / exact.real(), 2) + std::pow(diff.imag() / exact.imag(), 2);
    }
    return acc;
}

// Default sample set kh = 2 pi m / K, m = 1..K/2, excluding wavenumbers where
// Re or Im of the exact multiplier falls below 1e-3.
inline std::vector<double> drp_sample_set(int k_coarse, double theta) {
    std::vector<double> khs;
    const double pi = kPi;
    for (int m = 1; m <= k_coarse / 2; ++m) {
        const double kh = 2.0 * pi * m / k_coarse;
        const std::complex<double> exact = std::exp(std::complex<double>(0.0, -kh * theta));
        if (std::abs(exact.real()) < 1e-3 || std::abs(exact.imag()) < 1e-3) continue;
        khs.push_back(kh);
    }
    if (khs.empty()) throw std::invalid_argument("drp_sample_set: all samples excluded");
    return khs;
}

// Minimize the summed DRP objective over the tail block H2, starting from the
// tail rows of the exact three-node interpolation matrix. H2 is varied only
// within the subspace that keeps it exact on polynomials up to degree 2N+1:
// writing V for the stacked three-node constraint matrix of width 2N+2 (the
// data any such polynomial produces on the stencil), admissible perturbations
// are P * W^T with W a basis of ker(V^T). This fixes the scheme's formal
// order while freeing N+1 parameters per tail row.
inline DrpResult drp_optimize(int n, double cfl, double c, int k_coarse,
                              const std::vector<double>& khs_in = {}, int max_iter = 4000) {
    const Mat h2_init = extended_tail_init(n);
    const int rows = n + 1;

    Mat v(3 * n + 3, 2 * n + 2);
    v.topRows(n + 1) = constraint_matrix(-1.0, n + 1, 2 * n + 2);
    v.middleRows(n + 1, n + 1) = constraint_matrix(0.0, n + 1, 2 * n + 2);
    v.bottomRows(n + 1) = constraint_matrix(1.0, n + 1, 2 * n + 2);
    Mat w = Eigen::FullPivLU<Mat>(v.transpose()).kernel();  // (3N+3) x (N+1)
    if (w.cols() != n + 1)
        throw std::runtime_error("drp_optimize: unexpected constraint kernel dimension");
    for (int j = 0; j < w.cols(); ++j) w.col(j).normalize();
    const int cols = static_cast<int>(w.cols());

    const double theta = cfl;  // normalized two-step advance: c * (2 dt) / h_x = C
    const std::vector<double> khs = khs_in.empty() ? drp_sample_set(k_coarse, theta) : khs_in;

    auto unpack = [&](const Vec& x) {
        Mat p(rows, cols);
        for (int r = 0; r < rows; ++r) p.row(r) = x.segment(r * cols, cols).transpose();
        return Mat(h2_init + p * w.transpose());
    };
    auto objective = [&](const Vec& x) {
        try {
            UpdateBlocks ub = probe_update_blocks(SchemeKind::Virtual, n, cfl, c, 1.0, unpack(x));
            return drp_objective(ub, khs);
        } catch (const std::exception&) {
            return 1e30;  // reject parameter points that break bandedness checks
        }
    };

    const Vec x0 = Vec::Zero(rows * cols);

    int iters = 0;
    bool stagnated = false;
    auto [xbest, fbest] =
        detail::nelder_mead(objective, x0, max_iter, 200, &iters, &stagnated);

    const Mat h2 = unpack(xbest);
    UpdateBlocks ub = probe_update_blocks(SchemeKind::Virtual, n, cfl, c, 1.0, h2);
    return DrpResult{h2, fbest, spectral_radius(ub, k_coarse), stagnated, iters};
}

}  // namespace hermite
