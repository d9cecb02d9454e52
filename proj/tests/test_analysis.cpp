#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hermite/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

using namespace hermite;

TEST_CASE("probed blocks match a directly assembled central update") {
    const int n = 2;
    const double cfl = 0.5, c = 1.0, h = 1.0;
    UpdateBlocks ub = probe_update_blocks(SchemeKind::Central, n, cfl, c, h);
    CHECK(ub.order == n);
    CHECK(ub.advance == doctest::Approx(cfl * h / c));
    CHECK(ub.theta == doctest::Approx(cfl));

    // reference: restriction of (truncated exponential) * (reconstruction)
    const double dt = cfl * h / c;
    const Mat& rec = hermite_matrix(-1.0, 1.0, n);
    Mat d = make_derivative_matrix(2 * n + 1, h);
    Mat e = Mat::Identity(2 * n + 2, 2 * n + 2);
    Mat term = Mat::Identity(2 * n + 2, 2 * n + 2);
    double fact = 1.0;
    for (int k = 1; k <= 2 * n + 1; ++k) {
        term = (-c * dt) * (d * term);
        fact *= k;
        e += term / fact;
    }
    Mat full = (e * rec).topRows(n + 1);  // (N+1) x (2N+2), columns [left | right]
    CHECK((ub.blocks.at(-1) - full.leftCols(n + 1)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((ub.blocks.at(+1) - full.rightCols(n + 1)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(ub.blocks.at(0).cwiseAbs().maxCoeff() < 1e-14);  // center node unused
}

TEST_CASE("band structure per scheme") {
    const int n = 1;
    UpdateBlocks up = probe_update_blocks(SchemeKind::Upwind, n, 0.5, 1.0, 1.0);
    CHECK(up.blocks.at(+1).cwiseAbs().maxCoeff() < 1e-14);  // no downwind dependence
    CHECK(up.blocks.at(-1).cwiseAbs().maxCoeff() > 1e-3);
    CHECK(up.blocks.at(0).cwiseAbs().maxCoeff() > 1e-3);

    UpdateBlocks du = probe_update_blocks(SchemeKind::Dual, n, 0.5, 1.0, 1.0);
    CHECK(du.blocks.size() == 3);  // tridiagonal two-stage map

    UpdateBlocks vi = probe_update_blocks(SchemeKind::Virtual, n, 0.5, 1.0, 1.0);
    CHECK(vi.blocks.size() == 5);  // pentadiagonal normalized two-step map
    CHECK(vi.advance == doctest::Approx(du.advance));  // same physical advance
}

TEST_CASE("constants are preserved by every normalized update") {
    for (auto kind : {SchemeKind::Dual, SchemeKind::Virtual, SchemeKind::Central, SchemeKind::Upwind}) {
        for (int n : {1, 2}) {
            UpdateBlocks ub = probe_update_blocks(kind, n, 0.7, 1.0, 1.0);
            Vec e0 = Vec::Zero(n + 1);
            e0[0] = 1.0;
            Vec sum = Vec::Zero(n + 1);
            for (auto& [off, blk] : ub.blocks) sum += blk * e0;
            CHECK((sum - e0).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
}

TEST_CASE("global assembly: small-grid guard and circulant at C = 1") {
    UpdateBlocks ub = probe_update_blocks(SchemeKind::Virtual, 1, 0.5, 1.0, 1.0);
    CHECK_THROWS_AS(assemble_global(ub, 4), std::invalid_argument);

    // C = 1: the central one-step matrix is the block down-shift permutation
    UpdateBlocks c1 = probe_update_blocks(SchemeKind::Central, 2, 1.0, 1.0, 1.0);
    const int k = 8, b = 3;
    Mat s = assemble_global(c1, k);
    Mat expect = Mat::Zero(k * b, k * b);
    for (int m = 0; m < k; ++m)
        expect.block(m * b, ((m - 1 + k) % k) * b, b, b) = Mat::Identity(b, b);
    CHECK((s - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("global spectrum is the union of bloch symbol spectra") {
    const int k = 8, n = 1;
    UpdateBlocks ub = probe_update_blocks(SchemeKind::Central, n, 0.5, 1.0, 1.0);
    CVec global = spectrum(assemble_global(ub, k));
    std::vector<std::complex<double>> expect;
    for (int m = 0; m < k; ++m) {
        CMat sym = bloch_symbol(ub, 2.0 * kPi * m / k);
        Eigen::ComplexEigenSolver<CMat> es(sym);
        for (int i = 0; i < es.eigenvalues().size(); ++i) expect.push_back(es.eigenvalues()[i]);
    }
    REQUIRE(static_cast<int>(expect.size()) == global.size());
    // greedy nearest-neighbor matching: sorting complex values is unstable
    // for conjugate pairs with nearly equal real parts
    std::vector<std::complex<double>> got(global.data(), global.data() + global.size());
    double d = 0.0;
    for (const auto& e : expect) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < got.size(); ++i)
            if (std::abs(got[i] - e) < std::abs(got[best] - e)) best = i;
        d = std::max(d, std::abs(got[best] - e));
        got.erase(got.begin() + best);
    }
    CHECK(d < 1e-8);
}

TEST_CASE("spectral radius: stability at reference parameters") {
    UpdateBlocks ub = probe_update_blocks(SchemeKind::Virtual, 1, 0.9, 1.0, 1.0);
    const double rho = spectral_radius(ub, 16);
    CHECK(rho == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rho <= 1.0 + 1e-10);
}

TEST_CASE("floquet multiplier: domain, accuracy at resolved wavenumbers") {
    UpdateBlocks ub = probe_update_blocks(SchemeKind::Central, 2, 0.5, 1.0, 1.0);
    CHECK_THROWS_AS(floquet_error(ub, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(floquet_error(ub, 4.0), std::invalid_argument);

    FloquetResult fr = floquet_error(ub, 0.1);
    CHECK(fr.error < 1e-6);  // E_kh ~ (kh)^{2N+2} = 1e-6 at kh = 0.1
    CHECK(std::abs(fr.lambda) <= 1.0 + 1e-12);

    // the error decays at the design order: E(kh)/E(kh/2) ~ 2^{2N+2}
    const double e1 = floquet_error(ub, 0.2).error;
    const double e2 = floquet_error(ub, 0.1).error;
    const double order = std::log2(e1 / e2);
    CHECK(order == doctest::Approx(6.0).epsilon(0.15));
}

TEST_CASE("drp: sample set and objective improvement") {
    const std::vector<double> khs = drp_sample_set(8, 0.9);
    CHECK(khs.size() == 4);
    CHECK(khs.front() == doctest::Approx(kPi / 4.0));
    CHECK(khs.back() == doctest::Approx(kPi));

    // the default extended tail is a valid starting point
    const int n = 1;
    UpdateBlocks base =
        probe_update_blocks(SchemeKind::Virtual, n, 0.9, 1.0, 1.0, extended_tail_init(n));
    const double f0 = drp_objective(base, khs);
    CHECK(f0 > 0.0);

    // a short optimization run never worsens the objective
    DrpResult dr = drp_optimize(n, 0.9, 1.0, 8, {}, 60);
    CHECK(dr.objective <= f0 * (1.0 + 1e-12));
    UpdateBlocks opt = probe_update_blocks(SchemeKind::Virtual, n, 0.9, 1.0, 1.0, dr.h2);
    CHECK(drp_objective(opt, khs) == doctest::Approx(dr.objective).epsilon(1e-10));
}
