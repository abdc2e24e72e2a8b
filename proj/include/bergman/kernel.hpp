#pragma once

// Bergman kernel of the ball, principal-branch kernel powers, the complex
// Jacobian of the Möbius automorphisms with its transformation identities,
// and empirical checkers for the classical kernel estimates (diagonal
// growth brackets and the Forelli-Rudin weighted integrals).

#include <functional>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/numeric.hpp"

namespace bergman {

struct QuadratureRule;  // quadrature.hpp
struct QuadConfig;

// holomorphic test function, evaluable at any interior point
using HoloFn = std::function<cplx(PointView)>;
// real-valued integrand
using RealFn = std::function<double(PointView)>;

// K(z,w) = c_n (1 - <z,w>)^{-(n+1)}, holomorphic in z, conjugate-symmetric.
cplx kernel(const DomainSpec& dom, PointView z, PointView w);
inline cplx kernel(const DomainSpec& dom, const Point& z, const Point& w) {
    return kernel(dom, z.view(), w.view());
}

double kernel_abs(const DomainSpec& dom, PointView z, PointView w);
// log |K(z,w)|, safe for points arbitrarily close to the boundary
double log_kernel_abs(const DomainSpec& dom, PointView z, PointView w);

// The fractional power K(.,a)^s as a function of its first argument,
// using the principal branch of (1 - <z,a>)^{-(n+1)s}; well-defined since
// Re(1 - <z,a>) > 0 on the ball.
struct KernelPower {
    Point base_point;
    double exponent = 1.0;  // s, must be > 0

    KernelPower(Point a, double s);
};

cplx kernel_power(const DomainSpec& dom, const KernelPower& kp, PointView z);
cplx kernel_power_view(const DomainSpec& dom, PointView base, double s,
                       PointView z);

// Complex Jacobian determinant of the Möbius involution phi_a at z:
//   J_{phi_a}(z) = (-1)^n (1 - ||a||^2)^{(n+1)/2} / (1 - <z,a>)^{n+1}.
cplx jacobian(const DomainSpec& dom, const Point& a, PointView z);
inline cplx jacobian(const DomainSpec& dom, const Point& a, const Point& z) {
    return jacobian(dom, a, z.view());
}

// Relative residual of the kernel transformation identity under phi_a:
//   K(z,w) = J(z) * conj(J(w)) * K(phi_a(z), phi_a(w)).
double check_transformation_identity(const DomainSpec& dom, const Point& a,
                                     const Point& z, const Point& w);

// Relative difference between int f dnu and int (f.phi_a) |J|^2 dnu
// (automorphism change of variables), both by the given rule.
double check_change_of_variables(const DomainSpec& dom, const RealFn& f,
                                 const Point& a, const QuadratureRule& quad);

// Numerical reproducing integral int K(z,w) f(w) dnu(w) ~ f(z).
cplx reproduce(const DomainSpec& dom, const HoloFn& f, const Point& z,
               const QuadratureRule& quad);

// int |K(z,w)|^p delta(w)^alpha dnu(w).  Validates the admissibility window
// p > n/(n+1), -1 < alpha < (n+1)(p-1) (outside it the upper estimate
// delta(z)^{alpha+n+1-(n+1)p} fails); throws std::domain_error otherwise.
double forelli_rudin_integral(const DomainSpec& dom, const Point& z, double p,
                              double alpha, const QuadratureRule& quad);
// Same, with an automatically chosen rule: the peak-resolving composite on
// the disk, Halton QMC on the ball.
double forelli_rudin_integral(const DomainSpec& dom, const Point& z, double p,
                              double alpha);
// Reporting aid that skips the window validation (the integral itself is
// still finite for alpha > -1); used to measure behavior of excluded
// parameter pairs.
double forelli_rudin_integral_unchecked(const DomainSpec& dom, const Point& z,
                                        double p, double alpha);

// Least-squares fit of log(values) against log(deltas).  `slope` comes from
// the regression on {1, log d, d, d^2}, which absorbs the analytic
// (2-d)^t correction of the ball integrals; `slope_plain` is the ordinary
// two-parameter fit, reported for reference.  A positive
// `correction_exponent` e adds the column d^e (the subleading term of an
// integral ~ A d^slope + B d^{slope+e} + ...), used when e < 1 would
// otherwise bias the slope; exponents indistinguishable from the existing
// columns are ignored.
struct SlopeFit {
    double slope = 0.0;
    double slope_plain = 0.0;
    double max_residual = 0.0;  // of the 4-parameter model, in log space
};
SlopeFit fit_log_slope(const std::vector<double>& deltas,
                       const std::vector<double>& values,
                       double correction_exponent = 0.0);

// Behavior of the weighted kernel integral as z -> boundary along a radius:
// values I(delta) on the grid plus the fitted slope (expected
// alpha + n + 1 - (n+1)p inside the admissibility window).
struct ForelliRudinSlope {
    std::vector<double> deltas;
    std::vector<double> values;
    SlopeFit fit;
    bool admissible = true;     // parameter pair inside the window
    std::string violated;       // named inequality when not admissible
};
ForelliRudinSlope forelli_rudin_slope(const DomainSpec& dom, double p,
                                      double alpha,
                                      const std::vector<double>& deltas);

// Brackets for the diagonal growth K(z,z) ~ delta(z)^{-(n+1)} and for the
// near-boundary comparability |K(z,w)| ~ delta(z)^{-(n+1)} on w in B(z,r).
struct DiagonalBracket {
    double diag_min = 0.0, diag_max = 0.0;        // K(z,z) delta^{n+1}
    double near_min = 0.0, near_max = 0.0;        // |K(z,w)| delta(z)^{n+1}
};
DiagonalBracket check_diagonal_estimates(const DomainSpec& dom,
                                         const std::vector<Point>& samples,
                                         double r = 0.3);

}  // namespace bergman
