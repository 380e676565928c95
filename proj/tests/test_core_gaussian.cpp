#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gwpt/errors.hpp"
#include "gwpt/overlap.hpp"
#include "gwpt/wave_packet.hpp"
#include "gwpt/width_matrix.hpp"

#include <cmath>
#include <random>

using namespace gwpt;

namespace {

const Complex I(0.0, 1.0);

WavePacket packet1d(double q, double p, Complex gamma, double eps) {
    Vec qv(1), pv(1);
    qv(0) = q;
    pv(0) = p;
    return WavePacket(PhaseSpacePoint(qv, pv), scalar_width(gamma), eps);
}

Vec vec1(double x) {
    Vec v(1);
    v(0) = x;
    return v;
}

struct RandomPackets {
    std::mt19937 rng{918273u};
    std::uniform_real_distribution<double> width{0.3, 4.0};
    std::uniform_real_distribution<double> center{-2.0, 2.0};

    WavePacket draw(int d, double eps) {
        Vec g(d), q(d), p(d);
        for (int n = 0; n < d; ++n) {
            g(n) = width(rng);
            q(n) = center(rng);
            p(n) = center(rng);
        }
        return WavePacket(PhaseSpacePoint(q, p), diagonal_width(g), eps);
    }
};

}  // namespace

TEST_CASE("validate_width accepts Siegel matrices and rejects the rest") {
    CMat one(1, 1);
    one(0, 0) = I;
    const WidthMatrix w1 = WidthMatrix::validate(one);
    CHECK(w1.dim() == 1);
    CHECK(w1.det_imag() == doctest::Approx(1.0));

    CMat diag2 = CMat::Zero(2, 2);
    diag2(0, 0) = I;
    diag2(1, 1) = 2.0 * I;
    const WidthMatrix w2 = WidthMatrix::validate(diag2);
    CHECK(w2.dim() == 2);
    CHECK(w2.min_imag_eigenvalue() == doctest::Approx(1.0));

    CMat neg(1, 1);
    neg(0, 0) = -I;
    CHECK_THROWS_AS(WidthMatrix::validate(neg), ImaginaryPartNotPositiveDefinite);

    CMat asym(2, 2);
    asym << I, Complex(0.5, 0.0), Complex(-0.5, 0.0), I;
    CHECK_THROWS_AS(WidthMatrix::validate(asym), NotSymmetric);

    // Indefinite imaginary part in d=2.
    CMat indef = CMat::Zero(2, 2);
    indef(0, 0) = I;
    indef(1, 1) = -I;
    CHECK_THROWS_AS(WidthMatrix::validate(indef), ImaginaryPartNotPositiveDefinite);
}

TEST_CASE("validate_width reports the offending eigenvalue") {
    CMat neg(1, 1);
    neg(0, 0) = Complex(0.0, -3.0);
    try {
        WidthMatrix::validate(neg);
        FAIL("expected throw");
    } catch (const ImaginaryPartNotPositiveDefinite& e) {
        CHECK(e.offending_eigenvalue == doctest::Approx(-3.0));
    }
}

TEST_CASE("width eigendecomposition is orthogonal and reconstructs Im C") {
    CMat m(2, 2);
    m << Complex(0.3, 2.0), Complex(-0.1, 0.7), Complex(-0.1, 0.7), Complex(0.0, 1.1);
    const WidthMatrix w = WidthMatrix::validate(m);
    const Mat& U = w.eig_vectors();
    CHECK(((U.transpose() * U) - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    const Mat rec = U * w.eig_values().asDiagonal() * U.transpose();
    CHECK((rec - w.imag_part()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(w.eig_values()(0) <= w.eig_values()(1));
}

TEST_CASE("evaluate: canonical coherent state values") {
    const WavePacket g = packet1d(0.0, 0.0, I, 1.0);
    // pi^{-1/4}
    CHECK(std::abs(g(vec1(0.0)) - Complex(0.7511255444649425, 0.0)) < 1e-15);
    CHECK(std::abs(g(vec1(1.0)) - std::pow(M_PI, -0.25) * std::exp(-0.5)) < 1e-15);

    // Momentum adds the phase e^{i p (x-q)}.
    const WavePacket gp = packet1d(0.0, 2.0, I, 1.0);
    const Complex expect = std::pow(M_PI, -0.25) * std::exp(-0.5) * std::exp(2.0 * I);
    CHECK(std::abs(gp(vec1(1.0)) - expect) < 1e-15);

    CHECK_THROWS_AS(g(Vec::Zero(2)), DimensionMismatch);
}

TEST_CASE("evaluate magnitude depends only on Im C and x - q") {
    // Same Im C, different Re C: identical magnitudes everywhere.
    const WavePacket a = packet1d(0.4, 1.3, Complex(0.0, 1.7), 0.7);
    const WavePacket b = packet1d(0.4, -2.0, Complex(0.9, 1.7), 0.7);
    for (double x : {-1.0, 0.0, 0.4, 2.2}) {
        CHECK(std::abs(a(vec1(x))) == doctest::Approx(std::abs(b(vec1(x)))).epsilon(1e-13));
    }
}

TEST_CASE("overlap: self-overlap is 1, spec displacement examples") {
    const WavePacket g00 = packet1d(0.0, 0.0, I, 1.0);
    CHECK(std::abs(overlap(g00, g00) - Complex(1.0, 0.0)) < 1e-14);

    // |<g_{(0,0)} | g_{(1,0)}>| = e^{-1/4}; brute-force trapezoid oracle agrees.
    const WavePacket g10 = packet1d(1.0, 0.0, I, 1.0);
    CHECK(std::abs(overlap(g00, g10)) == doctest::Approx(std::exp(-0.25)).epsilon(1e-13));

    // |<g_{(0,0)} | g_{(0,2)}>| = e^{-1} (q<->p symmetry of coherent states).
    const WavePacket g02 = packet1d(0.0, 2.0, I, 1.0);
    CHECK(std::abs(overlap(g00, g02)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
}

TEST_CASE("overlap preconditions") {
    const WavePacket a = packet1d(0.0, 0.0, I, 1.0);
    const WavePacket b = packet1d(0.0, 0.0, I, 0.5);
    CHECK_THROWS_AS(overlap(a, b), EpsMismatch);

    Vec q2 = Vec::Zero(2), p2 = Vec::Zero(2);
    const WavePacket c(PhaseSpacePoint(q2, p2), diagonal_width(Vec::Ones(2)), 1.0);
    CHECK_THROWS_AS(overlap(a, c), DimensionMismatch);
}

TEST_CASE("overlap oracle: normalization and distant-packet decay") {
    const WavePacket g = packet1d(0.3, -0.7, Complex(0.0, 1.4), 1.0);
    const Complex self = overlap_oracle(g, g, 12.0, 100001);
    CHECK(std::abs(self - Complex(1.0, 0.0)) < 1e-8);

    const WavePacket far = packet1d(0.3 + 10.0, -0.7, Complex(0.0, 1.4), 1.0);
    CHECK(std::abs(overlap(g, far)) < 1e-10);

    CHECK_THROWS_AS(overlap_oracle(g, g, 12.0, 8), std::invalid_argument);
    Vec q4 = Vec::Zero(4), p4 = Vec::Zero(4);
    const WavePacket g4(PhaseSpacePoint(q4, p4), diagonal_width(Vec::Ones(4)), 1.0);
    CHECK_THROWS_AS(overlap_oracle(g4, g4, 8.0, 32), DimensionTooLarge);
}

TEST_CASE("overlap params: spec values and the inverse identity") {
    const WavePacket psi0 = packet1d(0.0, 0.0, I, 1.0);

    // C = C0 = i: A = i (i - (-i))^{-1} = 1/2.
    const OverlapParams p1(scalar_width(I), psi0, vec1(0.0));
    CHECK(std::abs(p1.A()(0, 0) - Complex(0.5, 0.0)) < 1e-14);
    // b vanishes when q_k = q0 and x = q0.
    CHECK(std::abs(p1.b(vec1(0.0))(0)) < 1e-15);

    // C = 2i, C0 = i: A = i/(3i) = 1/3, real.
    const OverlapParams p2(scalar_width(2.0 * I), psi0, vec1(0.0));
    CHECK(std::abs(p2.A()(0, 0) - Complex(1.0 / 3.0, 0.0)) < 1e-14);
    CHECK(std::abs(p2.A()(0, 0).imag()) < 1e-15);

    // (C0^{-1} - conj(C)^{-1})^{-1} == i conj(C) A C0, here for a d=2 pair.
    Vec g(2);
    g << 1.3, 2.4;
    const WidthMatrix C = diagonal_width(g);
    Vec q0 = Vec::Zero(2), p0 = Vec::Zero(2);
    q0 << 0.2, -0.4;
    const WavePacket psi2(PhaseSpacePoint(q0, p0), diagonal_width(Vec::Ones(2)), 0.8);
    const OverlapParams p3(C, psi2, q0);
    const CMat lhs = p3.M().topLeftCorner(2, 2);
    const CMat rhs = I * C.entries().conjugate() * p3.A() * psi2.width().entries();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10 * rhs.cwiseAbs().maxCoeff());
}

TEST_CASE("overlap properties: hermitian symmetry and Cauchy-Schwarz") {
    RandomPackets gen;
    for (int i = 0; i < 100; ++i) {
        const double eps = 0.5 + 0.01 * i;
        const WavePacket a = gen.draw(1, eps);
        const WavePacket b = gen.draw(1, eps);
        const Complex ab = overlap(a, b);
        const Complex ba = overlap(b, a);
        CHECK(std::abs(ab - std::conj(ba)) < 1e-12);
        CHECK(std::abs(ab) <= 1.0 + 1e-12);
    }
}

TEST_CASE("oracle equivalence: analytic overlap matches trapezoid integration") {
    RandomPackets gen;
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
        const WavePacket a = gen.draw(1, 1.0);
        const WavePacket b = gen.draw(1, 1.0);
        const Complex exact = overlap(a, b);
        if (std::abs(exact) <= 1e-8) continue;
        const Complex approx = overlap_oracle(a, b, 30.0, 60001);
        worst = std::max(worst, std::abs(exact - approx) / std::abs(exact));
    }
    for (int i = 0; i < 10; ++i) {
        const WavePacket a = gen.draw(2, 0.9);
        const WavePacket b = gen.draw(2, 0.9);
        const Complex exact = overlap(a, b);
        if (std::abs(exact) <= 1e-8) continue;
        const Complex approx = overlap_oracle(a, b, 25.0, 501);
        worst = std::max(worst, std::abs(exact - approx) / std::abs(exact));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("normalization: random packets have unit L2 norm") {
    RandomPackets gen;
    for (int i = 0; i < 8; ++i) {
        const WavePacket g = gen.draw(1, 1.0);
        const Complex n = overlap_oracle(g, g, 30.0, 50001);
        CHECK(std::abs(n - Complex(1.0, 0.0)) < 1e-6);
    }
}

TEST_CASE("phase-space identity: coefficient kernel equals the lemma integrand") {
    // (2 pi eps)^{-d} <g_z|psi0> g_z(x)
    //   == g_0(x-q) c(x) exp(-(p-p0)^T A (p-p0)/(2 eps) + i b(x).(p-p0)/eps)
    RandomPackets gen;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> pos(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const double eps = 0.4 + 0.02 * i;
        const WavePacket psi0 = gen.draw(1, eps);
        const WavePacket basis_probe = gen.draw(1, eps);
        const WidthMatrix& C = basis_probe.width();
        const Vec qk = vec1(pos(rng));
        const Vec p = vec1(pos(rng));
        const Vec x = vec1(pos(rng));

        const WavePacket gz(PhaseSpacePoint(qk, p), C, eps);
        const Complex lhs = std::pow(2.0 * M_PI * eps, -1.0) * overlap(gz, psi0) * gz(x);

        const OverlapParams params(C, psi0, qk);
        const Vec dp = p - psi0.center().p;
        const Complex quad = dp(0) * params.A()(0, 0) * dp(0);
        const Complex rhs = gz.envelope(x - qk) * params.c(x) *
                            std::exp(-quad / (2.0 * eps) + I / eps * params.b(x)(0) * dp(0));
        if (std::abs(lhs) > 1e-12)
            CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-10);
    }
}

TEST_CASE("beta and M reproduce the analytic overlap") {
    RandomPackets gen;
    for (int i = 0; i < 20; ++i) {
        const double eps = 1.0;
        const WavePacket psi0 = gen.draw(1, eps);
        const WavePacket gz = gen.draw(1, eps);
        const OverlapParams params(gz.width(), psi0, gz.center().q);

        const CMat M = params.M();
        CVec dz(2);
        dz(0) = Complex(gz.center().q(0) - psi0.center().q(0), 0.0);
        dz(1) = Complex(gz.center().p(0) - psi0.center().p(0), 0.0);
        Complex quad(0.0, 0.0);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) quad += dz(r) * M(r, c) * dz(c);
        const Complex via_lemma =
            params.beta(gz.center().p) * std::exp(I / (2.0 * eps) * quad);
        const Complex direct = overlap(gz, psi0);
        CHECK(std::abs(via_lemma - direct) < 1e-12);
    }
}
