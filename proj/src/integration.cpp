#include "bergman/integration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bergman {

SpaceParams SpaceParams::make(double p, double beta, std::size_t n) {
    if (!(p >= 1.0))
        throw std::invalid_argument("space exponent p must be >= 1");
    if (!(beta > -1.0))
        throw std::invalid_argument("space weight beta must be > -1");
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    SpaceParams sp;
    sp.p = p;
    sp.beta = beta;
    sp.n = n;
    sp.q = (p == 1.0) ? 1.0 : p / (p - 1.0);
    return sp;
}

double AtomicMeasure::total_mass() const {
    NeumaierSum s;
    for (const Atom& a : atoms) s.add(a.mass);
    return s.value();
}

double AtomicMeasure::ball_mass(const Point& z, double r) const {
    NeumaierSum s;
    const PointView zv = z.view();
    for (const Atom& a : atoms)
        if (pseudo_distance(zv, a.point.view()) < r) s.add(a.mass);
    return s.value();
}

WeightedNorm weighted_norm(const DomainSpec& dom, const HoloFn& f,
                           const SpaceParams& sp, const QuadratureRule& quad,
                           const std::vector<double>& known_exponents) {
    if (sp.n != dom.n)
        throw std::invalid_argument("weighted_norm: dimension mismatch");
    WeightedNorm out;
    // Kernel-power terms with interior bases are bounded on the closed ball
    // (|1 - <z,a>| >= 1 - ||a|| > 0), so the only genuinely divergent
    // integrand is a non-integrable weight.  The declared exponents are
    // still validated: a non-positive one is not a kernel power.
    for (double e : known_exponents)
        if (!(e > 0.0))
            throw std::invalid_argument(
                "weighted_norm: kernel-power exponents must be positive");
    if (!(sp.beta > -1.0)) out.divergent = true;

    auto integrand = [&](PointView w) {
        const double d = boundary_distance(w);
        const double v = std::abs(f(w));
        return std::pow(v, sp.p) * std::pow(d, sp.beta);
    };
    const double full = quad.integrate(integrand);

    // half-density rule of the same family for the error estimate
    QuadratureRule half;
    half.dim = quad.dim;
    for (std::size_t i = 0; i < quad.size(); i += 2) {
        for (std::size_t d = 0; d < quad.dim; ++d)
            half.nodes.push_back(quad.nodes[i * quad.dim + d]);
        half.weights.push_back(quad.weights[i] * 2.0);
    }
    const double coarse = half.integrate(integrand);

    out.value = std::pow(full, 1.0 / sp.p);
    const double coarse_norm = std::pow(std::max(coarse, 0.0), 1.0 / sp.p);
    out.error_estimate = std::abs(out.value - coarse_norm);
    return out;
}

CarlesonResult carleson_test(const DomainSpec& dom, const AtomicMeasure& mu,
                             double beta, double r,
                             const std::vector<Point>& grid, double cap) {
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("carleson_test: radius must be in (0,1)");
    if (grid.empty())
        throw std::invalid_argument("carleson_test: grid must be nonempty");
    CarlesonResult res;
    res.argmax = grid.front();
    const double expo = beta + static_cast<double>(dom.n) + 1.0;
    for (const Point& z : grid) {
        const double m = mu.ball_mass(z, r);
        if (m == 0.0) continue;
        const double ratio = m / std::pow(boundary_distance(z), expo);
        if (ratio > res.constant) {
            res.constant = ratio;
            res.argmax = z;
        }
    }
    res.bounded = res.constant <= cap;
    return res;
}

std::vector<Point> default_carleson_grid(const DomainSpec& dom,
                                         const AtomicMeasure& mu) {
    std::vector<Point> grid;
    for (const Atom& a : mu.atoms) grid.push_back(a.point);
    const std::size_t n_angles = 64;
    for (int j = 1; j <= 12; ++j) {
        const double rho = 1.0 - std::pow(2.0, -j);
        for (std::size_t k = 0; k < n_angles; ++k) {
            const double th =
                2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) /
                static_cast<double>(n_angles);
            std::vector<cplx> c(dom.n, 0.0);
            c[0] = std::polar(rho, th);
            grid.emplace_back(std::move(c));
        }
    }
    return grid;
}

GradientBound gradient_bound_check(const DomainSpec& dom, const HoloFn& f,
                                   const Point& a, double R, double r,
                                   double p, const QuadratureRule& unit_rule) {
    if (!(R > 0.0 && R < r && r < 1.0))
        throw std::invalid_argument(
            "gradient_bound_check needs 0 < R < r < 1");
    GradientBound out;

    // denominator: local p-norm over the Kobayashi ball B(a,r)
    const KobayashiBall outer(a, r);
    const QuadratureRule region = kobayashi_ball_rule(dom, outer, unit_rule);
    const double integral = region.integrate(
        [&](PointView w) { return std::pow(std::abs(f(w)), p); });
    out.local_norm = std::pow(integral, 1.0 / p);

    // numerator: sup of the complex gradient norm over samples of B(a,R),
    // again Möbius images of scaled directions so membership is exact
    std::vector<cplx> x(dom.n, 0.0), img, shifted(dom.n);
    for (int i = -3; i <= 3; ++i) {
        for (int kdir = 0; kdir < static_cast<int>(dom.n); ++kdir) {
            std::fill(x.begin(), x.end(), cplx(0.0));
            x[kdir] = R * static_cast<double>(i) / 3.5;
            mobius_view(a.view(), {x.data(), x.size()}, img);
            const PointView z{img.data(), img.size()};
            const double h =
                std::max(1e-6, 1e-4 * boundary_distance(z));
            double grad2 = 0.0;
            for (std::size_t d = 0; d < dom.n; ++d) {
                // fourth-order central difference along real coordinate d;
                // for holomorphic f this equals the complex derivative
                std::copy(img.begin(), img.end(), shifted.begin());
                auto at = [&](double off) {
                    shifted[d] = img[d] + off;
                    return f(PointView{shifted.data(), shifted.size()});
                };
                const cplx der = (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) +
                                  at(-2.0 * h)) /
                                 (12.0 * h);
                grad2 += std::norm(der);
            }
            out.sup_gradient = std::max(out.sup_gradient, std::sqrt(grad2));
        }
    }
    out.ratio = out.sup_gradient / out.local_norm;
    return out;
}

}  // namespace bergman
