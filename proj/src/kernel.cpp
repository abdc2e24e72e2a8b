#include "bergman/kernel.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bergman/quadrature.hpp"

namespace bergman {

cplx kernel(const DomainSpec& dom, PointView z, PointView w) {
    const cplx omi = one_minus_inner(z, w);
    return dom.kernel_norm / ipow(omi, static_cast<unsigned>(dom.n + 1));
}

double kernel_abs(const DomainSpec& dom, PointView z, PointView w) {
    const cplx omi = one_minus_inner(z, w);
    return dom.kernel_norm /
           std::pow(std::abs(omi), static_cast<double>(dom.n + 1));
}

double log_kernel_abs(const DomainSpec& dom, PointView z, PointView w) {
    const cplx omi = one_minus_inner(z, w);
    return std::log(dom.kernel_norm) -
           static_cast<double>(dom.n + 1) * std::log(std::abs(omi));
}

KernelPower::KernelPower(Point a, double s) : base_point(std::move(a)),
                                              exponent(s) {
    if (!(s > 0.0))
        throw std::invalid_argument("kernel power exponent must be positive");
}

cplx kernel_power_view(const DomainSpec& dom, PointView base, double s,
                       PointView z) {
    const cplx omi = one_minus_inner(z, base);
    const double e = static_cast<double>(dom.n + 1) * s;
    return std::pow(dom.kernel_norm, s) / cpow(omi, e);
}

cplx kernel_power(const DomainSpec& dom, const KernelPower& kp, PointView z) {
    return kernel_power_view(dom, kp.base_point.view(), kp.exponent, z);
}

cplx jacobian(const DomainSpec& dom, const Point& a, PointView z) {
    const PointView av = a.view();
    const double s2 = one_minus_sqnorm(av);
    const cplx omi = one_minus_inner(z, av);
    const double np1 = static_cast<double>(dom.n + 1);
    const double sign = (dom.n % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(s2, 0.5 * np1) /
           ipow(omi, static_cast<unsigned>(dom.n + 1));
}

double check_transformation_identity(const DomainSpec& dom, const Point& a,
                                     const Point& z, const Point& w) {
    const cplx lhs = kernel(dom, z, w);
    const Point pz = mobius(a, z);
    const Point pw = mobius(a, w);
    const cplx rhs = jacobian(dom, a, z.view()) *
                     std::conj(jacobian(dom, a, w.view())) *
                     kernel(dom, pz, pw);
    return std::abs(lhs - rhs) / std::abs(lhs);
}

double check_change_of_variables(const DomainSpec& dom, const RealFn& f,
                                 const Point& a, const QuadratureRule& quad) {
    const double direct = quad.integrate(f);
    std::vector<cplx> img;
    const double pulled = quad.integrate([&](PointView x) {
        mobius_view(a.view(), x, img);
        const double j2 = std::norm(jacobian(dom, a, x));
        return f(PointView{img.data(), img.size()}) * j2;
    });
    return std::abs(direct - pulled) / std::max(std::abs(direct), 1e-300);
}

cplx reproduce(const DomainSpec& dom, const HoloFn& f, const Point& z,
               const QuadratureRule& quad) {
    const PointView zv = z.view();
    return quad.integrate_complex(
        [&](PointView w) { return kernel(dom, zv, w) * f(w); });
}

namespace {

void validate_fr_window(const DomainSpec& dom, double p, double alpha) {
    const double n = static_cast<double>(dom.n);
    if (!(p > n / (n + 1.0)))
        throw std::domain_error(
            "weighted kernel integral requires p > n/(n+1); got p = " +
            std::to_string(p));
    if (!(alpha > -1.0 && alpha < (n + 1.0) * (p - 1.0)))
        throw std::domain_error(
            "weighted kernel integral requires -1 < alpha < (n+1)(p-1); "
            "got alpha = " +
            std::to_string(alpha) + ", (n+1)(p-1) = " +
            std::to_string((n + 1.0) * (p - 1.0)));
}

double fr_disk_peaked(const DomainSpec& dom, const Point& z, double p,
                      double alpha) {
    const PointView zv = z.view();
    const double z_abs = std::abs(zv[0]);
    const double phase = (z_abs == 0.0) ? 0.0 : std::arg(zv[0]);
    const QuadratureRule rule =
        disk_rule_weighted_peaked(z_abs, phase, alpha);
    const double np1p = 2.0 * p;  // (n+1)p on the disk
    const double cn_p = std::pow(dom.kernel_norm, p);
    // the rule already carries the delta(w)^alpha weight
    return rule.integrate([&](PointView w) {
        const cplx omi = one_minus_inner(zv, w);
        return cn_p * std::pow(std::abs(omi), -np1p);
    });
}

double fr_generic(const DomainSpec& dom, const Point& z, double p,
                  double alpha, const QuadratureRule& quad) {
    const PointView zv = z.view();
    const double np1p = static_cast<double>(dom.n + 1) * p;
    const double cn_p = std::pow(dom.kernel_norm, p);
    return quad.integrate([&](PointView w) {
        const cplx omi = one_minus_inner(zv, w);
        const double d = boundary_distance(w);
        return cn_p * std::pow(std::abs(omi), -np1p) * std::pow(d, alpha);
    });
}

}  // namespace

double forelli_rudin_integral(const DomainSpec& dom, const Point& z, double p,
                              double alpha, const QuadratureRule& quad) {
    validate_fr_window(dom, p, alpha);
    return fr_generic(dom, z, p, alpha, quad);
}

double forelli_rudin_integral(const DomainSpec& dom, const Point& z, double p,
                              double alpha) {
    validate_fr_window(dom, p, alpha);
    return forelli_rudin_integral_unchecked(dom, z, p, alpha);
}

double forelli_rudin_integral_unchecked(const DomainSpec& dom, const Point& z,
                                        double p, double alpha) {
    if (dom.n == 1) return fr_disk_peaked(dom, z, p, alpha);
    const QuadratureRule quad = ball_qmc_rule(dom.n, 1'000'000, 42);
    return fr_generic(dom, z, p, alpha, quad);
}

SlopeFit fit_log_slope(const std::vector<double>& deltas,
                       const std::vector<double>& values,
                       double correction_exponent) {
    if (deltas.size() != values.size() || deltas.size() < 5)
        throw std::invalid_argument("slope fit needs >= 5 matched samples");
    const double ce = correction_exponent;
    const bool extra = ce > 0.04 && ce < 2.5 && std::abs(ce - 1.0) > 0.04 &&
                       std::abs(ce - 2.0) > 0.04;
    const Eigen::Index m = static_cast<Eigen::Index>(deltas.size());
    Eigen::MatrixXd X(m, extra ? 5 : 4);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double d = deltas[static_cast<std::size_t>(i)];
        X(i, 0) = 1.0;
        X(i, 1) = std::log(d);
        X(i, 2) = d;
        X(i, 3) = d * d;
        if (extra) X(i, 4) = std::pow(d, ce);
        y(i) = std::log(values[static_cast<std::size_t>(i)]);
    }
    SlopeFit fit;
    const Eigen::VectorXd beta = X.colPivHouseholderQr().solve(y);
    fit.slope = beta(1);
    fit.max_residual = (X * beta - y).cwiseAbs().maxCoeff();
    const Eigen::VectorXd beta2 =
        X.leftCols(2).colPivHouseholderQr().solve(y);
    fit.slope_plain = beta2(1);
    return fit;
}

ForelliRudinSlope forelli_rudin_slope(const DomainSpec& dom, double p,
                                      double alpha,
                                      const std::vector<double>& deltas) {
    ForelliRudinSlope out;
    out.deltas = deltas;
    try {
        validate_fr_window(dom, p, alpha);
    } catch (const std::domain_error& e) {
        out.admissible = false;
        out.violated = e.what();
    }
    for (double d : deltas) {
        const Point z(cplx(1.0 - d, 0.0));
        out.values.push_back(
            forelli_rudin_integral_unchecked(dom, z, p, alpha));
    }
    // subleading order of the integral: the gap to the admissibility edge
    const double corr = (static_cast<double>(dom.n) + 1.0) * (p - 1.0) - alpha;
    out.fit = fit_log_slope(out.deltas, out.values, corr);
    return out;
}

DiagonalBracket check_diagonal_estimates(const DomainSpec& dom,
                                         const std::vector<Point>& samples,
                                         double r) {
    if (samples.empty())
        throw std::invalid_argument("diagonal estimate needs samples");
    DiagonalBracket b;
    b.diag_min = b.near_min = std::numeric_limits<double>::infinity();
    const double np1 = static_cast<double>(dom.n + 1);
    for (const Point& z : samples) {
        const double d = boundary_distance(z);
        const double scale = std::pow(d, np1);
        const double diag = kernel_abs(dom, z.view(), z.view()) * scale;
        b.diag_min = std::min(b.diag_min, diag);
        b.diag_max = std::max(b.diag_max, diag);
        // w in B(z,r): Möbius images of t*e_1-style directions, t < r
        std::vector<cplx> dir(dom.n, 0.0), img;
        for (int k = -4; k <= 4; ++k) {
            const double t = r * static_cast<double>(k) / 4.5;
            dir[0] = t;
            mobius_view(z.view(), {dir.data(), dir.size()}, img);
            const double v =
                kernel_abs(dom, z.view(), {img.data(), img.size()}) * scale;
            b.near_min = std::min(b.near_min, v);
            b.near_max = std::max(b.near_max, v);
        }
    }
    return b;
}

}  // namespace bergman
