#pragma once

// Weighted Bergman norms, atomic Carleson-measure testing, and the local
// gradient bound for holomorphic functions.

#include <limits>
#include <utility>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/kernel.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

// Parameters of the space A^p_beta on the ball of dimension n, with the
// conjugate exponent convention q = 1 when p = 1.
struct SpaceParams {
    double p = 1.0;
    double beta = 0.0;
    std::size_t n = 1;
    double q = 1.0;

    static SpaceParams make(double p, double beta, std::size_t n);
    // canonical sequence-weight exponent (n+1+beta)/p
    double weight_exponent() const {
        return (static_cast<double>(n) + 1.0 + beta) / p;
    }
};

struct Atom {
    Point point;
    double mass = 0.0;
};

struct AtomicMeasure {
    std::vector<Atom> atoms;

    double total_mass() const;
    // mass inside the Kobayashi ball B(z,r)
    double ball_mass(const Point& z, double r) const;
};

// (int |f|^p delta^beta dnu)^{1/p} by the given rule.  `known_exponents`
// declares the (n+1)s exponents of f's kernel-power terms (validated
// positive); since interior-based kernel powers are bounded on the ball,
// `divergent` fires only for a non-integrable weight (beta <= -1), in which
// case the quadrature value is only a partial (rule-dependent) number.
struct WeightedNorm {
    double value = 0.0;
    bool divergent = false;
    double error_estimate = 0.0;  // |full rule - half-density rule|
};
WeightedNorm weighted_norm(const DomainSpec& dom, const HoloFn& f,
                           const SpaceParams& sp, const QuadratureRule& quad,
                           const std::vector<double>& known_exponents = {});

// sup over the grid of mu(B(z,r)) / delta(z)^{beta+n+1}, and whether it
// stays below the cap.  The grid must include the atoms themselves plus
// near-boundary probes; use default_carleson_grid for a reasonable one.
struct CarlesonResult {
    bool bounded = true;
    double constant = 0.0;
    Point argmax;
};
CarlesonResult carleson_test(
    const DomainSpec& dom, const AtomicMeasure& mu, double beta, double r,
    const std::vector<Point>& grid,
    double cap = std::numeric_limits<double>::infinity());

// atoms plus dyadic radial probes delta = 2^{-j}, j <= 12, at 64 angular
// directions (first-coordinate directions on the ball).
std::vector<Point> default_carleson_grid(const DomainSpec& dom,
                                         const AtomicMeasure& mu);

// sup over sample points z in B(a,R) of |grad f(z)| divided by the local
// norm (int_{B(a,r)} |f|^p dnu)^{1/p}; fourth-order central differences
// with a step scaled by the boundary distance.
struct GradientBound {
    double ratio = 0.0;          // sup |grad f| / local norm
    double sup_gradient = 0.0;
    double local_norm = 0.0;
};
GradientBound gradient_bound_check(const DomainSpec& dom, const HoloFn& f,
                                   const Point& a, double R, double r,
                                   double p, const QuadratureRule& unit_rule);

}  // namespace bergman
