#include "gwpt/quadrature.hpp"

#include "gwpt/errors.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace gwpt {

HermiteRule hermite_rule(int N) {
    if (N < 1 || N > 512)
        throw NTooLarge("hermite rule: need 1 <= N <= 512");

    HermiteRule rule;
    if (N == 1) {
        rule.nodes = Vec::Zero(1);
        rule.weights = Vec::Constant(1, std::sqrt(M_PI));
        return rule;
    }

    Vec diag = Vec::Zero(N);
    Vec sub(N - 1);
    for (int k = 1; k < N; ++k) sub(k - 1) = std::sqrt(0.5 * k);

    Eigen::SelfAdjointEigenSolver<Mat> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    rule.nodes = es.eigenvalues();  // ascending
    rule.weights = Vec(N);
    for (int j = 0; j < N; ++j) {
        const double v0 = es.eigenvectors()(0, j);
        rule.weights(j) = std::sqrt(M_PI) * v0 * v0;
    }

    // Enforce exact reflection symmetry of the node multiset.
    for (int i = 0; i < N / 2; ++i) {
        const int m = N - 1 - i;
        const double s = 0.5 * (rule.nodes(i) - rule.nodes(m));
        rule.nodes(i) = s;
        rule.nodes(m) = -s;
        const double w = 0.5 * (rule.weights(i) + rule.weights(m));
        rule.weights(i) = w;
        rule.weights(m) = w;
    }
    if (N % 2 == 1) rule.nodes(N / 2) = 0.0;
    return rule;
}

Vec hermite_scaled_weights(int N, const Vec& nodes) {
    if (N < 1 || N > 512)
        throw NTooLarge("hermite scaled weights: need 1 <= N <= 512");
    if (nodes.size() != N)
        throw DimensionMismatch("hermite scaled weights: node count differs from N");

    Vec out(N);
    for (int j = 0; j < N; ++j) {
        const double s = nodes(j);
        // Normalized Hermite functions: psi_0 = pi^{-1/4} e^{-s^2/2},
        // psi_{k+1} = s sqrt(2/(k+1)) psi_k - sqrt(k/(k+1)) psi_{k-1}.
        double hk = std::pow(M_PI, -0.25) * std::exp(-0.5 * s * s);
        double hkm1 = 0.0;
        for (int k = 0; k + 1 < N; ++k) {
            const double hkp1 =
                s * std::sqrt(2.0 / (k + 1)) * hk - std::sqrt(double(k) / (k + 1)) * hkm1;
            hkm1 = hk;
            hk = hkp1;
        }
        out(j) = 1.0 / (N * hk * hk);  // = e^{s^2} w_j
    }
    return out;
}

std::string rule_name(Rule r) {
    switch (r) {
        case Rule::TcM: return "TcM";
        case Rule::RS: return "RS";
        case Rule::GH: return "GH";
    }
    return "?";
}

std::size_t MomentumGrid::size() const {
    std::size_t n = 1;
    for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(per_dim_count());
    return n;
}

std::vector<int> MomentumGrid::unflatten(std::size_t flat) const {
    const int n1 = per_dim_count();
    std::vector<int> j(dim);
    for (int n = dim - 1; n >= 0; --n) {
        j[n] = static_cast<int>(flat % n1);
        flat /= n1;
    }
    if (flat != 0)
        throw IndexOutOfRange("momentum grid: flat index outside the grid");
    return j;
}

Vec MomentumGrid::node(const std::vector<int>& j) const {
    Vec p(dim);
    for (int n = 0; n < dim; ++n) p(n) = p0(n) + offsets1d(j[n]);
    return p;
}

Vec MomentumGrid::node(std::size_t flat) const { return node(unflatten(flat)); }

double MomentumGrid::weight(const std::vector<int>& j) const {
    double w = 1.0;
    for (int n = 0; n < dim; ++n) w *= weights1d(j[n]);
    return w;
}

double MomentumGrid::weight(std::size_t flat) const { return weight(unflatten(flat)); }

namespace {

void check_p0(const Vec& p0, int d) {
    if (p0.size() != d)
        throw DimensionMismatch("momentum grid: p0 has wrong dimension");
}

// Offsets built in mirrored pairs so the node multiset is symmetric about p0
// to the last bit.
Vec mirrored_offsets(int N, double half_length, double dp) {
    Vec off(N);
    for (int j = 0; j < N / 2; ++j) {
        const double v = -half_length + (2.0 * j + 1.0) / 2.0 * dp;
        off(j) = v;
        off(N - 1 - j) = -v;
    }
    if (N % 2 == 1) off(N / 2) = 0.0;
    return off;
}

}  // namespace

MomentumGrid tcm_grid(int N, double L_p, const Vec& p0, double eps, int d) {
    if (N < 1) throw std::invalid_argument("tcm grid: N >= 1");
    if (!(L_p > 0.0)) throw std::invalid_argument("tcm grid: L_p > 0");
    if (!(eps > 0.0)) throw std::invalid_argument("tcm grid: eps > 0");
    check_p0(p0, d);

    MomentumGrid g;
    g.rule = Rule::TcM;
    g.dim = d;
    g.p0 = p0;
    g.N = N;
    g.L_p = L_p;
    g.dp = 2.0 * L_p / N;
    g.offsets1d = mirrored_offsets(N, L_p, g.dp);
    g.weights1d = Vec::Constant(N, g.dp);
    g.labels1d.resize(N);
    for (int j = 0; j < N; ++j) g.labels1d[j] = j + 1;
    return g;
}

MomentumGrid rs_grid(double dp, const Vec& p0, double eps, int d, double tail_tol) {
    if (!(dp > 0.0)) throw std::invalid_argument("rs grid: dp > 0");
    if (!(eps > 0.0)) throw std::invalid_argument("rs grid: eps > 0");
    if (!(tail_tol > 0.0 && tail_tol <= 1e-6))
        throw std::invalid_argument("rs grid: tail_tol in (0, 1e-6]");
    check_p0(p0, d);

    int J = 0;
    while (std::exp(-(J * dp) * (J * dp) / (2.0 * eps)) >= tail_tol) ++J;

    MomentumGrid g;
    g.rule = Rule::RS;
    g.dim = d;
    g.p0 = p0;
    g.dp = dp;
    g.tail_tol = tail_tol;
    g.N = 2 * J + 1;
    g.offsets1d = Vec(g.N);
    g.weights1d = Vec::Constant(g.N, dp);
    g.labels1d.resize(g.N);
    for (int j = -J; j <= J; ++j) {
        g.offsets1d(j + J) = j * dp;
        g.labels1d[j + J] = j;
    }
    return g;
}

MomentumGrid gh_grid_scaled(int N, double eps, const Vec& p0, double scale) {
    if (!(eps > 0.0)) throw std::invalid_argument("gh grid: eps > 0");
    if (!(scale > 0.0)) throw std::invalid_argument("gh grid: scale > 0");
    const int d = static_cast<int>(p0.size());
    if (d < 1) throw DimensionMismatch("gh grid: p0 must be nonempty");

    const HermiteRule rule = hermite_rule(N);
    const Vec scaled = hermite_scaled_weights(N, rule.nodes);
    const double stretch = scale * std::sqrt(2.0 * eps);

    MomentumGrid g;
    g.rule = Rule::GH;
    g.dim = d;
    g.p0 = p0;
    g.N = N;
    g.offsets1d = rule.nodes * stretch;
    g.weights1d = scaled * stretch;
    g.labels1d.resize(N);
    for (int j = 0; j < N; ++j) g.labels1d[j] = j + 1;
    return g;
}

MomentumGrid gh_grid(int N, double eps, const Vec& p0) {
    return gh_grid_scaled(N, eps, p0, 1.0);
}

}  // namespace gwpt
