#include "bergman/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "bergman/kernel.hpp"

namespace bergman {

namespace {

constexpr double kPi = std::numbers::pi;

// Legendre polynomial value and derivative at x via the three-term
// recurrence.
void legendre_pd(std::size_t m, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= m; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    p = (m == 0) ? 1.0 : p1;
    dp = (m == 0) ? 0.0
                  : m * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

void gauss_legendre_01(std::size_t m, std::vector<double>& x,
                       std::vector<double>& w) {
    if (m == 0) throw std::invalid_argument("quadrature order must be >= 1");
    x.resize(m);
    w.resize(m);
    const std::size_t half = (m + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        // Chebyshev-based initial guess, then Newton on P_m.
        double t = std::cos(kPi * (i + 0.75) / (m + 0.5));
        double p, dp;
        for (int it = 0; it < 64; ++it) {
            legendre_pd(m, t, p, dp);
            const double dt = p / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        legendre_pd(m, t, p, dp);
        const double wi = 2.0 / ((1.0 - t * t) * dp * dp);
        // map [-1,1] -> [0,1]
        x[i] = 0.5 * (1.0 - t);
        w[i] = 0.5 * wi;
        x[m - 1 - i] = 0.5 * (1.0 + t);
        w[m - 1 - i] = 0.5 * wi;
    }
}

void gauss_jacobi_01(std::size_t m, double alpha, std::vector<double>& x,
                     std::vector<double>& w) {
    if (m == 0) throw std::invalid_argument("quadrature order must be >= 1");
    if (!(alpha > -1.0))
        throw std::invalid_argument("Jacobi weight exponent must be > -1");
    // Golub-Welsch for the weight (1+t)^alpha on [-1,1] (Jacobi a=0, b=alpha),
    // then map t -> u=(1+t)/2 so the rule integrates against u^alpha on [0,1].
    const double a = 0.0, b = alpha;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    auto diag = [&](std::size_t k) {
        const double s = 2.0 * k + a + b;
        if (k == 0) return (b - a) / (a + b + 2.0);
        return (b * b - a * a) / (s * (s + 2.0));
    };
    auto offdiag = [&](std::size_t k) {  // beta_k, k >= 1
        const double s = 2.0 * k + a + b;
        if (k == 1)
            return 4.0 * (a + 1.0) * (b + 1.0) /
                   ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
        return 4.0 * k * (k + a) * (k + b) * (k + a + b) /
               (s * s * (s + 1.0) * (s - 1.0));
    };
    for (std::size_t k = 0; k < m; ++k) {
        J(k, k) = diag(k);
        if (k + 1 < m) {
            const double e = std::sqrt(offdiag(k + 1));
            J(k, k + 1) = e;
            J(k + 1, k) = e;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const double mu0 =
        std::pow(2.0, a + b + 1.0) *
        std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                 std::lgamma(a + b + 2.0));
    x.resize(m);
    w.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        x[i] = 0.5 * (1.0 + t);
        // extra 2^{-alpha-1} from du = dt/2 and u^alpha = ((1+t)/2)^alpha
        w[i] = mu0 * v0 * v0 * std::pow(2.0, -alpha - 1.0);
    }
}

QuadratureRule disk_rule(std::size_t nodes_radial,
                         std::size_t nodes_angular) {
    if (nodes_radial == 0 || nodes_angular == 0)
        throw std::invalid_argument("disk rule needs positive node counts");
    std::vector<double> r, wr;
    gauss_legendre_01(nodes_radial, r, wr);
    QuadratureRule q;
    q.dim = 1;
    q.nodes.reserve(nodes_radial * nodes_angular);
    q.weights.reserve(nodes_radial * nodes_angular);
    const double wtheta = 2.0 * kPi / static_cast<double>(nodes_angular);
    for (std::size_t i = 0; i < nodes_radial; ++i) {
        for (std::size_t j = 0; j < nodes_angular; ++j) {
            const double th = wtheta * (static_cast<double>(j) + 0.5);
            q.nodes.push_back(std::polar(r[i], th));
            q.weights.push_back(wr[i] * r[i] * wtheta);
        }
    }
    q.description = "disk gauss " + std::to_string(nodes_radial) + "x" +
                    std::to_string(nodes_angular);
    return q;
}

namespace {

double halton(std::uint64_t index, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

constexpr std::uint64_t kPrimes[] = {2,  3,  5,  7,  11, 13, 17,
                                     19, 23, 29, 31, 37, 41, 43};

double frac(double x) { return x - std::floor(x); }

}  // namespace

QuadratureRule ball_qmc_rule(std::size_t n, std::size_t samples,
                             std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("ball dimension must be >= 1");
    const std::size_t dims = 2 * n + 1;
    if (dims > std::size(kPrimes))
        throw std::invalid_argument("ball dimension too large for QMC bases");
    if (samples == 0)
        throw std::invalid_argument("QMC rule needs a positive sample count");

    // Cranley-Patterson rotation offsets from the seed.
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> shift(dims);
    for (double& s : shift) s = unif(gen);

    const DomainSpec dom = DomainSpec::ball(n);
    const double wt = dom.lebesgue_volume / static_cast<double>(samples);

    QuadratureRule q;
    q.dim = n;
    q.nodes.resize(samples * n);
    q.weights.assign(samples, wt);
    std::vector<double> u(dims);
    for (std::size_t i = 0; i < samples; ++i) {
        for (std::size_t d = 0; d < dims; ++d)
            u[d] = frac(halton(i + 1, kPrimes[d]) + shift[d]);
        // radius with density 2n R^{2n-1} on (0,1)
        const double R =
            std::pow(u[0], 1.0 / (2.0 * static_cast<double>(n)));
        cplx* node = q.nodes.data() + i * n;
        if (n == 1) {
            node[0] = std::polar(R, 2.0 * kPi * u[1]);
        } else if (n == 2) {
            // exact Hopf parametrization of S^3: |zeta_1|^2 uniform
            const double s2 = u[3];
            node[0] = std::polar(R * std::sqrt(s2), 2.0 * kPi * u[1]);
            node[1] = std::polar(R * std::sqrt(1.0 - s2), 2.0 * kPi * u[2]);
        } else {
            // Box-Muller direction on S^{2n-1}
            double norm2 = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double a = std::max(u[1 + 2 * k], 1e-300);
                const double rad = std::sqrt(-2.0 * std::log(a));
                const double ang = 2.0 * kPi * u[2 + 2 * k];
                node[k] = std::polar(rad, ang);
                norm2 += std::norm(node[k]);
            }
            const double scale = R / std::sqrt(norm2);
            for (std::size_t k = 0; k < n; ++k) node[k] *= scale;
        }
    }
    q.description = "ball qmc n=" + std::to_string(n) + " N=" +
                    std::to_string(samples) + " seed=" + std::to_string(seed);
    return q;
}

QuadratureRule disk_rule_weighted_peaked(double z_abs, double phase,
                                         double alpha,
                                         std::size_t panel_order) {
    if (!(z_abs >= 0.0 && z_abs < 1.0))
        throw std::invalid_argument("peak location must satisfy 0 <= |z| < 1");
    if (!(alpha > -1.0))
        throw std::invalid_argument("boundary weight exponent must be > -1");
    const double delta = 1.0 - z_abs;
    const std::size_t m = panel_order;

    std::vector<double> gx, gw;
    gauss_legendre_01(m, gx, gw);
    std::vector<double> jx, jw;
    gauss_jacobi_01(m, alpha, jx, jw);

    // Radial panels in u = 1 - rho: dyadic from 1 down to ~delta/8, then a
    // Gauss-Jacobi panel on [0, u_min] absorbing the u^alpha weight.
    const int levels_r = std::clamp(
        static_cast<int>(std::ceil(std::log2(8.0 / delta))), 4, 60);
    std::vector<std::pair<double, double>> rnodes;  // (rho, weight incl u^a)
    for (int k = 0; k < levels_r; ++k) {
        const double hi = std::pow(2.0, -k);
        const double lo = hi / 2.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double u = lo + (hi - lo) * gx[i];
            rnodes.emplace_back(1.0 - u,
                                gw[i] * (hi - lo) * std::pow(u, alpha));
        }
    }
    const double u_min = std::pow(2.0, -levels_r);
    for (std::size_t i = 0; i < m; ++i) {
        const double u = u_min * jx[i];
        // int_0^{u_min} g(u) u^a du = u_min^{a+1} * sum jw g(u_min * x)
        rnodes.emplace_back(1.0 - u, jw[i] * std::pow(u_min, alpha + 1.0));
    }

    // Angular panels in theta from pi down to ~delta/8 around the peak
    // angle, mirrored to both signs; the innermost panel reaches 0.
    const int levels_t = std::clamp(
        static_cast<int>(std::ceil(std::log2(8.0 * kPi / delta))), 4, 64);
    std::vector<std::pair<double, double>> tnodes;  // (theta, weight)
    for (int k = 0; k < levels_t; ++k) {
        const double hi = kPi * std::pow(2.0, -k);
        const double lo = hi / 2.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double th = lo + (hi - lo) * gx[i];
            tnodes.emplace_back(th, gw[i] * (hi - lo));
            tnodes.emplace_back(-th, gw[i] * (hi - lo));
        }
    }
    const double t_min = kPi * std::pow(2.0, -levels_t);
    for (std::size_t i = 0; i < m; ++i) {
        const double th = t_min * (2.0 * gx[i] - 1.0);  // one panel across 0
        tnodes.emplace_back(th, gw[i] * 2.0 * t_min);
    }

    QuadratureRule q;
    q.dim = 1;
    q.nodes.reserve(rnodes.size() * tnodes.size());
    q.weights.reserve(rnodes.size() * tnodes.size());
    for (const auto& [rho, wr] : rnodes) {
        for (const auto& [th, wt] : tnodes) {
            q.nodes.push_back(std::polar(rho, th + phase));
            q.weights.push_back(wr * wt * rho);  // area element rho drho dth
        }
    }
    q.description = "disk peaked composite (delta=" + std::to_string(delta) +
                    ", alpha=" + std::to_string(alpha) + ")";
    return q;
}

QuadratureRule kobayashi_ball_rule(const DomainSpec& dom,
                                   const KobayashiBall& ball,
                                   const QuadratureRule& unit_rule) {
    if (unit_rule.dim != dom.n || ball.center.dim() != dom.n)
        throw std::invalid_argument("kobayashi_ball_rule: dimension mismatch");
    const double r = ball.radius;
    QuadratureRule q;
    q.dim = dom.n;
    q.nodes.resize(unit_rule.nodes.size());
    q.weights.resize(unit_rule.size());
    const PointView c = ball.center.view();
    const double r2n = std::pow(r * r, static_cast<double>(dom.n));
    std::vector<cplx> scaled(dom.n), image;
    for (std::size_t i = 0; i < unit_rule.size(); ++i) {
        const PointView x = unit_rule.node(i);
        for (std::size_t d = 0; d < dom.n; ++d) scaled[d] = r * x[d];
        const PointView sview{scaled.data(), dom.n};
        mobius_view(c, sview, image);
        std::copy(image.begin(), image.end(), q.nodes.begin() + i * dom.n);
        // |J_phi|^2 = K(x,x)/K(phi(x),phi(x)) and the r-scaling Jacobian
        const double jac = std::norm(jacobian(dom, ball.center, sview));
        q.weights[i] = unit_rule.weights[i] * r2n * jac;
    }
    q.description = "mapped(" + unit_rule.description + ")";
    return q;
}

QuadratureRule make_rule(const DomainSpec& dom, const QuadConfig& cfg) {
    if (cfg.rule == QuadConfig::Kind::qmc || dom.n > 1)
        return ball_qmc_rule(dom.n, cfg.samples, cfg.seed);
    return disk_rule(cfg.nodes_radial, cfg.nodes_angular);
}

}  // namespace bergman
