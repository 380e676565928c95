#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gwpt/coefficients.hpp"
#include "gwpt/errors.hpp"
#include "gwpt/quadrature.hpp"
#include "gwpt/reconstruction.hpp"

#include <cmath>
#include <sstream>

using namespace gwpt;

namespace {

const Complex I(0.0, 1.0);

Vec vec1(double x) {
    Vec v(1);
    v(0) = x;
    return v;
}

// Physicists' Hermite polynomial by recurrence (test oracle).
double hermite_poly(int n, double x) {
    double hkm1 = 0.0, hk = 1.0;
    for (int k = 0; k < n; ++k) {
        const double hkp1 = 2.0 * x * hk - 2.0 * k * hkm1;
        hkm1 = hk;
        hk = hkp1;
    }
    return hk;
}

// Explicit weight formula w_j = 2^{N+1} N! sqrt(pi) / H_{N+1}(s_j)^2,
// usable without overflow for N <= 15.
double explicit_weight(int N, double s) {
    double fact = 1.0;
    for (int i = 2; i <= N; ++i) fact *= i;
    const double h = hermite_poly(N + 1, s);
    return std::pow(2.0, N + 1) * fact * std::sqrt(M_PI) / (h * h);
}

}  // namespace

TEST_CASE("hermite rule: N = 1 and N = 2 closed forms") {
    const HermiteRule r1 = hermite_rule(1);
    CHECK(r1.nodes(0) == 0.0);
    CHECK(r1.weights(0) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-15));

    const HermiteRule r2 = hermite_rule(2);
    CHECK(r2.nodes(0) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(r2.nodes(1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(r2.weights(0) == doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-14));
    CHECK(r2.weights(1) == doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-14));

    CHECK_THROWS_AS(hermite_rule(0), NTooLarge);
    CHECK_THROWS_AS(hermite_rule(513), NTooLarge);
}

TEST_CASE("hermite rule: ascending symmetric nodes, positive weights, weight sum") {
    for (int N : {3, 16, 33, 64, 128}) {
        const HermiteRule r = hermite_rule(N);
        double wsum = 0.0;
        for (int j = 0; j < N; ++j) {
            if (j) CHECK(r.nodes(j) > r.nodes(j - 1));
            CHECK(r.weights(j) > 0.0);
            CHECK(r.nodes(j) == -r.nodes(N - 1 - j));  // exact reflection
            wsum += r.weights(j);
        }
        CHECK(std::abs(wsum - std::sqrt(M_PI)) < 1e-13 * std::sqrt(M_PI));
    }
}

TEST_CASE("hermite rule: second moment at N = 16") {
    const HermiteRule r = hermite_rule(16);
    double m2 = 0.0;
    for (int j = 0; j < 16; ++j) m2 += r.weights(j) * r.nodes(j) * r.nodes(j);
    CHECK(m2 == doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-12));
}

TEST_CASE("hermite rule: moment exactness up to degree 2N-1 for N <= 64") {
    double worst = 0.0;
    for (int N = 1; N <= 64; ++N) {
        const HermiteRule r = hermite_rule(N);
        for (int m = 0; m + 1 <= 2 * N - 1; m += 2) {
            // integral p^m e^{-p^2} dp = Gamma((m+1)/2)
            const double ref = std::tgamma(0.5 * (m + 1));
            double q = 0.0;
            for (int j = 0; j < N; ++j) q += r.weights(j) * std::pow(r.nodes(j), m);
            worst = std::max(worst, std::abs(q - ref) / ref);
        }
        // Odd moments vanish exactly by the symmetrized construction.
        double modd = 0.0;
        for (int j = 0; j < N; ++j) modd += r.weights(j) * std::pow(r.nodes(j), 3);
        CHECK(std::abs(modd) < 1e-12);
    }
    CHECK(worst <= 1e-11);
}

TEST_CASE("golub-welsch weights match the explicit H_{N+1} formula for N <= 15") {
    for (int N = 1; N <= 15; ++N) {
        const HermiteRule r = hermite_rule(N);
        for (int j = 0; j < N; ++j) {
            const double w = explicit_weight(N, r.nodes(j));
            CHECK(r.weights(j) == doctest::Approx(w).epsilon(1e-10));
        }
    }
}

TEST_CASE("scaled weights e^{s^2} w: stable route matches the naive product") {
    for (int N : {1, 2, 8, 15, 50}) {
        const HermiteRule r = hermite_rule(N);
        const Vec scaled = hermite_scaled_weights(N, r.nodes);
        for (int j = 0; j < N; ++j) {
            const double naive = std::exp(r.nodes(j) * r.nodes(j)) * r.weights(j);
            CHECK(scaled(j) == doctest::Approx(naive).epsilon(1e-11));
        }
    }
    // Large N: the naive product overflows near N ~ 400, the stable route
    // stays finite and positive.
    const HermiteRule big = hermite_rule(512);
    const Vec scaled = hermite_scaled_weights(512, big.nodes);
    for (int j = 0; j < 512; ++j) {
        CHECK(std::isfinite(scaled(j)));
        CHECK(scaled(j) > 0.0);
    }
}

TEST_CASE("gh grid: one-point rules and the exact weight identity") {
    // N = 1: single node p0, weight sqrt(2 pi eps).
    const MomentumGrid g1 = gh_grid(1, 1.0, Vec::Zero(1));
    CHECK(g1.size() == 1);
    CHECK(g1.node(std::size_t{0})(0) == 0.0);
    CHECK(g1.weight(std::size_t{0}) == doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-14));

    const MomentumGrid g01 = gh_grid(1, 0.1, Vec::Zero(1));
    CHECK(g01.weight(std::size_t{0}) ==
          doctest::Approx(std::sqrt(0.2 * M_PI)).epsilon(1e-14));

    // sum_j omega_j e^{-(p_j-p0)^2/(2 eps)} = sqrt(2 pi eps) exactly (h == 1).
    for (int N : {2, 5, 16}) {
        const double eps = 0.7;
        const MomentumGrid g = gh_grid(N, eps, Vec::Zero(1));
        double s = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double p = g.node(j)(0);
            s += g.weight(j) * std::exp(-p * p / (2.0 * eps));
        }
        CHECK(s == doctest::Approx(std::sqrt(2.0 * M_PI * eps)).epsilon(1e-13));
    }
}

TEST_CASE("gh grid: convergence on the narrower Gaussian e^{-p^2/eps}") {
    // Reference: closed form integral e^{-p^2/eps} dp = sqrt(pi eps).
    const double eps = 1.0;
    const double target = std::sqrt(M_PI * eps);
    const auto quad = [&](int N) {
        const MomentumGrid g = gh_grid(N, eps, Vec::Zero(1));
        double s = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double p = g.node(j)(0);
            s += g.weight(j) * std::exp(-p * p / eps);
        }
        return s;
    };
    // N = 8 lands near 3.6e-4 absolute; 1e-10 is first reached around N = 24.
    CHECK(std::abs(quad(8) - target) < 1e-3);
    CHECK(std::abs(quad(8) - target) > 1e-5);
    CHECK(std::abs(quad(24) - target) < 1e-10);
}

TEST_CASE("tcm grid: spec node layouts") {
    const MomentumGrid g1 = tcm_grid(1, 1.0, Vec::Zero(1), 1.0, 1);
    CHECK(g1.size() == 1);
    CHECK(g1.node(std::size_t{0})(0) == 0.0);
    CHECK(g1.weight(std::size_t{0}) == doctest::Approx(2.0));

    const MomentumGrid g4 = tcm_grid(4, 4.0 * M_PI, Vec::Zero(1), 1.0, 1);
    CHECK(g4.dp == doctest::Approx(2.0 * M_PI));
    const double expect[] = {-3.0 * M_PI, -M_PI, M_PI, 3.0 * M_PI};
    for (int j = 0; j < 4; ++j)
        CHECK(g4.node(std::size_t(j))(0) == doctest::Approx(expect[j]).epsilon(1e-14));

    Vec p0 = Vec::Zero(2);
    const MomentumGrid g2d = tcm_grid(3, 2.0, p0, 1.0, 2);
    CHECK(g2d.size() == 9);
    for (std::size_t j = 0; j < 9; ++j)
        CHECK(g2d.weight(j) == doctest::Approx(g2d.dp * g2d.dp));
}

TEST_CASE("momentum grids: node multiset symmetric about p0 per dimension") {
    const Vec p0 = vec1(0.7);
    for (const MomentumGrid& g :
         {tcm_grid(6, 3.0, p0, 1.0, 1), tcm_grid(7, 3.0, p0, 1.0, 1),
          rs_grid(0.8, p0, 1.0, 1, 1e-12), gh_grid(9, 0.5, p0)}) {
        const int n = g.per_dim_count();
        for (int j = 0; j < n; ++j)
            CHECK(g.offsets1d(j) == -g.offsets1d(n - 1 - j));  // exact mirror
        for (int j = 0; j < n; ++j) CHECK(g.weights1d(j) > 0.0);
    }
}

TEST_CASE("rs grid: truncation radius solves the envelope inequality") {
    // eps = 1, dp = 1, tol = 1e-16: smallest J with e^{-J^2/2} < 1e-16 is 9.
    const MomentumGrid g = rs_grid(1.0, Vec::Zero(1), 1.0, 1, 1e-16);
    CHECK(g.N == 2 * 9 + 1);
    CHECK(g.labels1d.front() == -9);
    CHECK(g.labels1d.back() == 9);
    CHECK(g.node(std::size_t{0})(0) == doctest::Approx(-9.0));

    // Coarse lattice: the first off-center node already falls below the
    // envelope tolerance, leaving J = 1 (its coefficients are negligible).
    const MomentumGrid coarse = rs_grid(20.0, Vec::Zero(1), 1.0, 1, 1e-6);
    CHECK(coarse.N == 3);

    CHECK_THROWS_AS(rs_grid(1.0, Vec::Zero(1), 1.0, 1, 1e-3), std::invalid_argument);
}

TEST_CASE("coefficients: self-overlap cell and Gaussian decay") {
    const double eps = 1.0;
    const WidthMatrix C = scalar_width(I);
    const WavePacket psi0(PhaseSpacePoint(Vec::Zero(1), Vec::Zero(1)), C, eps);

    // One-cell grids whose single node sits exactly on psi0's center (an M = 1
    // grid centered at q0 places its midpoint at q0):
    // r = dp (2 pi eps)^{-1} <g_{0,0}|g_{0,0}> = dp / (2 pi eps).
    const MomentumGrid mg = tcm_grid(1, 1.5, Vec::Zero(1), eps, 1);
    const PositionGrid qc = PositionGrid::finite(Vec::Zero(1), 1.5, 1, C);
    const Vec pt = qc.point(std::size_t{0});
    CHECK(pt(0) == doctest::Approx(0.0));

    const CoefficientTable t = coefficients(mg, qc, C, psi0);
    CHECK(t.values().size() == 1);
    CHECK(std::abs(t.at(0, 0) - Complex(mg.dp / (2.0 * M_PI * eps), 0.0)) < 1e-14);

    // Distant cell: coefficient magnitude collapses with the overlap.
    const PositionGrid far = PositionGrid::finite(vec1(10.0 * std::sqrt(eps)), 0.5, 1, C);
    const CoefficientTable tf = coefficients(mg, far, C, psi0);
    CHECK(std::abs(tf.at(0, 0)) < 1e-15 * std::abs(t.at(0, 0)));
}

TEST_CASE("tensor consistency: separable d=2 coefficients factor into d=1 products") {
    const double eps = 0.8;
    Vec g0(2), gb(2);
    g0 << 1.0, 1.5;
    gb << 2.0, 3.0;
    Vec q0(2), p0(2);
    q0 << 0.3, -0.2;
    p0 << 0.5, 1.0;

    const WavePacket psi2(PhaseSpacePoint(q0, p0), diagonal_width(g0), eps);
    const WidthMatrix C2 = diagonal_width(gb);
    const PositionGrid grid2 = PositionGrid::finite(q0, 2.0, 3, C2);

    for (int use_gh : {0, 1}) {
        const MomentumGrid m2 =
            use_gh ? gh_grid(3, eps, p0) : tcm_grid(3, 2.5, p0, eps, 2);
        const CoefficientTable t2 = coefficients(m2, grid2, C2, psi2);

        // d=1 factors per axis.
        std::vector<CoefficientTable> parts;
        for (int n = 0; n < 2; ++n) {
            const WavePacket psi1(PhaseSpacePoint(vec1(q0(n)), vec1(p0(n))),
                                  scalar_width(Complex(0.0, g0(n))), eps);
            const WidthMatrix C1 = scalar_width(Complex(0.0, gb(n)));
            const PositionGrid grid1 = PositionGrid::finite(vec1(q0(n)), 2.0, 3, C1);
            const MomentumGrid m1 =
                use_gh ? gh_grid(3, eps, vec1(p0(n))) : tcm_grid(3, 2.5, vec1(p0(n)), eps, 1);
            parts.push_back(coefficients(m1, grid1, C1, psi1));
        }
        for (int j1 = 0; j1 < 3; ++j1)
            for (int j2 = 0; j2 < 3; ++j2)
                for (int k1 = 0; k1 < 3; ++k1)
                    for (int k2 = 0; k2 < 3; ++k2) {
                        const Complex lhs = t2.at(j1 * 3 + j2, k1 * 3 + k2);
                        const Complex rhs = parts[0].at(j1, k1) * parts[1].at(j2, k2);
                        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
                    }
    }
}

TEST_CASE("rs and tcm coefficient tables coincide on geometrically equal grids") {
    // dp = 1, eps = 1, tail_tol = 1e-6 gives J = 6, i.e. 13 nodes on
    // [-6, 6]; the TcM grid with N = 13, L_p = 6.5 hits the same points.
    const double eps = 1.0;
    const WidthMatrix C = scalar_width(2.0 * I);
    const WavePacket psi0(PhaseSpacePoint(Vec::Zero(1), Vec::Zero(1)), scalar_width(I), eps);
    const PositionGrid qg = PositionGrid::finite(Vec::Zero(1), 4.0, 8, C);

    const MomentumGrid rs = rs_grid(1.0, Vec::Zero(1), eps, 1, 1e-6);
    REQUIRE(rs.N == 13);
    const MomentumGrid tcm = tcm_grid(13, 6.5, Vec::Zero(1), eps, 1);
    for (int j = 0; j < 13; ++j)
        CHECK(rs.offsets1d(j) == doctest::Approx(tcm.offsets1d(j)).epsilon(1e-14));

    const CoefficientTable a = coefficients(rs, qg, C, psi0);
    const CoefficientTable b = coefficients(tcm, qg, C, psi0);
    REQUIRE(a.values().size() == b.values().size());
    for (std::size_t i = 0; i < a.values().size(); ++i)
        CHECK(std::abs(a.values()[i] - b.values()[i]) <= 1e-14 * std::abs(b.values()[i]));
}

TEST_CASE("rs truncation self-consistency: widening the lattice changes nothing") {
    const double eps = 1.0, tail = 1e-8;
    const WidthMatrix C = scalar_width(2.0 * I);
    const WavePacket psi0(PhaseSpacePoint(Vec::Zero(1), Vec::Zero(1)), scalar_width(I), eps);
    const PositionGrid qg = PositionGrid::finite(Vec::Zero(1), 6.0, 16, C);
    const SummationCurve curve(qg, C, eps);

    const MomentumGrid narrow = rs_grid(0.9, Vec::Zero(1), eps, 1, tail);
    const MomentumGrid wide = rs_grid(0.9, Vec::Zero(1), eps, 1, 1e-16);
    CHECK(wide.N > narrow.N);

    const Reconstruction ra(coefficients(narrow, qg, C, psi0), curve);
    const Reconstruction rb(coefficients(wide, qg, C, psi0), curve);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Vec x = vec1(-6.0 + 12.0 * i / 199.0);
        worst = std::max(worst, std::abs(ra(x) - rb(x)));
    }
    CHECK(worst < 10.0 * tail);
}

TEST_CASE("coefficient CSV layout") {
    const WidthMatrix C = scalar_width(I);
    const WavePacket psi0(PhaseSpacePoint(Vec::Zero(1), Vec::Zero(1)), C, 1.0);
    const MomentumGrid mg = tcm_grid(2, 1.0, Vec::Zero(1), 1.0, 1);
    const PositionGrid qg = PositionGrid::finite(Vec::Zero(1), 1.0, 2, C);
    const CoefficientTable t = coefficients(mg, qg, C, psi0);
    std::ostringstream os;
    t.write_csv(os);
    const std::string csv = os.str();
    CHECK(csv.substr(0, 15) == "rule,j,k,re,im\n");
    CHECK(csv.find("TcM,1,1,") != std::string::npos);
    CHECK(csv.find("TcM,2,2,") != std::string::npos);
}
