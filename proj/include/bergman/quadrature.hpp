#pragma once

// Quadrature rules on the disk and ball: tensor Gauss-Legendre in
// (radius, angle) for the disk, Halton quasi-Monte Carlo for the ball, and
// a composite rule resolving kernel peaks near the boundary.  All rules
// store flat node/weight arrays and integrate with a deterministic chunked
// reduction, so results are byte-reproducible for a fixed node count.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/numeric.hpp"
#include "bergman/parallel.hpp"

namespace bergman {

struct QuadratureRule {
    std::size_t dim = 1;       // complex dimension of the nodes
    std::vector<cplx> nodes;   // dim entries per node
    std::vector<double> weights;
    std::string description;

    std::size_t size() const { return weights.size(); }
    PointView node(std::size_t i) const {
        return {nodes.data() + i * dim, dim};
    }

    // sum_i w_i f(x_i) for a real-valued integrand.
    template <typename F>
    double integrate(F&& f) const {
        return parallel_sum_chunked(size(), [&](std::size_t b, std::size_t e) {
            NeumaierSum s;
            for (std::size_t i = b; i < e; ++i)
                s.add(weights[i] * f(node(i)));
            return s.value();
        });
    }

    template <typename F>
    cplx integrate_complex(F&& f) const {
        return parallel_reduce_chunked<cplx>(
            size(),
            [&](std::size_t b, std::size_t e) {
                cplx s = 0.0;
                for (std::size_t i = b; i < e; ++i)
                    s += weights[i] * f(node(i));
                return s;
            },
            cplx(0.0));
    }
};

// Gauss-Legendre nodes/weights on [0,1].
void gauss_legendre_01(std::size_t m, std::vector<double>& x,
                       std::vector<double>& w);

// Gauss-Jacobi nodes/weights on [0,1] for the weight u^alpha (alpha > -1):
// sum_i w_i g(u_i) ~ int_0^1 g(u) u^alpha du exactly for polynomials g of
// degree <= 2m-1.  Computed by Golub-Welsch on the Jacobi matrix.
void gauss_jacobi_01(std::size_t m, double alpha, std::vector<double>& x,
                     std::vector<double>& w);

// Tensor rule on the unit disk: Gauss-Legendre in the radius times midpoint
// angles.  Integrates f against Lebesgue measure.
QuadratureRule disk_rule(std::size_t nodes_radial, std::size_t nodes_angular);

// Halton QMC rule on the unit ball of complex dimension n, with a
// Cranley-Patterson rotation derived from the seed.
QuadratureRule ball_qmc_rule(std::size_t n, std::size_t samples,
                             std::uint64_t seed);

// Composite disk rule that integrates f against delta(w)^alpha dnu(w) and
// resolves an integrand peaked near the boundary point |z|*e^{i*phase}
// (peak width ~ delta = 1-|z|): dyadic panels in 1-rho and in angle down to
// the peak scale, Gauss-Legendre per panel, and a final Gauss-Jacobi panel
// carrying the fractional boundary weight u^alpha exactly.
QuadratureRule disk_rule_weighted_peaked(double z_abs, double phase,
                                         double alpha,
                                         std::size_t panel_order = 16);

// Rule over a Kobayashi ball, by mapping a unit-domain rule through the
// Möbius automorphism (exact change of variables with |J|^2 weights).
QuadratureRule kobayashi_ball_rule(const DomainSpec& dom,
                                   const KobayashiBall& ball,
                                   const QuadratureRule& unit_rule);

// Rule configuration as it appears in config files.
struct QuadConfig {
    enum class Kind { gauss, qmc };
    Kind rule = Kind::gauss;
    std::size_t nodes_radial = 256;
    std::size_t nodes_angular = 512;
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 42;
};

// Default rule for a domain: disk tensor Gauss for n = 1, Halton QMC
// otherwise (per the config).
QuadratureRule make_rule(const DomainSpec& dom, const QuadConfig& cfg);

}  // namespace bergman
