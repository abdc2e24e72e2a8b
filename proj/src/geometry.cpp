#include "bergman/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bergman {

namespace {

constexpr double kBoundaryTol = 1e-12;

double factorial(std::size_t n) {
    double f = 1.0;
    for (std::size_t k = 2; k <= n; ++k) f *= static_cast<double>(k);
    return f;
}

}  // namespace

DomainSpec DomainSpec::disk() { return ball(1); }

DomainSpec DomainSpec::ball(std::size_t n) {
    if (n < 1) throw std::invalid_argument("domain dimension must be >= 1");
    DomainSpec d;
    d.n = n;
    const double pi_n = std::pow(std::numbers::pi, static_cast<double>(n));
    d.lebesgue_volume = pi_n / factorial(n);
    d.kernel_norm = factorial(n) / pi_n;
    return d;
}

Point::Point(std::vector<cplx> coords) : coords_(std::move(coords)) {
    if (coords_.empty())
        throw std::invalid_argument("point needs at least one coordinate");
    validate();
}

void Point::validate() const {
    const double nrm = std::sqrt(sqnorm(view()));
    if (!(nrm < 1.0 - kBoundaryTol))
        throw std::domain_error(
            "point is on or outside the domain boundary (||z|| >= 1 - 1e-12)");
}

double boundary_distance(PointView z) {
    const double nrm = std::sqrt(sqnorm(z));
    if (!(nrm < 1.0 - kBoundaryTol))
        throw std::domain_error(
            "point is on or outside the domain boundary (||z|| >= 1 - 1e-12)");
    return 1.0 - nrm;
}

void mobius_view(PointView a, PointView z, std::vector<cplx>& out) {
    if (a.size() != z.size())
        throw std::invalid_argument("mobius: dimension mismatch");
    const std::size_t n = a.size();
    out.resize(n);
    const double a2 = sqnorm(a);
    if (a2 == 0.0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = -z[i];
        return;
    }
    const cplx denom = one_minus_inner(z, a);  // 1 - <z,a>
    if (n == 1) {
        out[0] = (a[0] - z[0]) / denom;
        return;
    }
    // phi_a(z) = (a - P_a z - s Q_a z) / (1 - <z,a>), with P_a the
    // projection onto span{a}, Q_a = I - P_a, s = sqrt(1 - ||a||^2).
    const double s = std::sqrt(one_minus_sqnorm(a));
    const cplx proj = inner(z, a) / a2;  // <z,a>/||a||^2
    for (std::size_t i = 0; i < n; ++i) {
        const cplx pa = proj * a[i];
        const cplx qa = z[i] - pa;
        out[i] = (a[i] - pa - s * qa) / denom;
    }
}

Point mobius(const Point& a, const Point& z) {
    std::vector<cplx> out;
    mobius_view(a.view(), z.view(), out);
    return Point(std::move(out));
}

double one_minus_pseudo_sq(PointView z, PointView w) {
    const double az = one_minus_sqnorm(z);
    const double aw = one_minus_sqnorm(w);
    const cplx d = one_minus_inner(z, w);
    return az * aw / std::norm(d);
}

double pseudo_distance(PointView z, PointView w) {
    const double u = one_minus_pseudo_sq(z, w);
    if (u >= 1.0) return 0.0;  // coincident points up to roundoff
    if (u < 0.75) return std::sqrt(1.0 - u);
    // Nearby points: 1-u cancels, so evaluate ||phi_z(w)|| directly
    // (absolute accuracy ~eps, which is what membership tests need).
    static thread_local std::vector<cplx> tmp;
    mobius_view(z, w, tmp);
    return std::sqrt(sqnorm({tmp.data(), tmp.size()}));
}

double kobayashi_distance(PointView z, PointView w) {
    const double u = one_minus_pseudo_sq(z, w);
    if (u >= 1.0) return 0.0;
    if (u < 0.75) {
        // Far regime: arctanh(rho) = log((1+rho)^2 / (1-rho^2)) / 2 keeps
        // full relative accuracy because u = 1-rho^2 was never cancelled.
        const double rho = std::sqrt(1.0 - u);
        return 0.5 * std::log((1.0 + rho) * (1.0 + rho) / u);
    }
    static thread_local std::vector<cplx> tmp;
    mobius_view(z, w, tmp);
    return std::atanh(std::sqrt(sqnorm({tmp.data(), tmp.size()})));
}

KobayashiBall::KobayashiBall(Point c, double r)
    : center(std::move(c)), radius(r) {
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("Kobayashi ball radius must be in (0,1)");
}

bool ball_membership(const KobayashiBall& ball, const Point& w) {
    return pseudo_distance(ball.center.view(), w.view()) < ball.radius;
}

double ball_volume(const DomainSpec& dom, const KobayashiBall& ball) {
    if (ball.center.dim() != dom.n)
        throw std::invalid_argument("ball_volume: dimension mismatch");
    const double r2 = ball.radius * ball.radius;
    const double c2 = sqnorm(ball.center.view());
    const double ratio = (1.0 - c2) / (1.0 - r2 * c2);
    return dom.lebesgue_volume * std::pow(r2, static_cast<double>(dom.n)) *
           std::pow(ratio, static_cast<double>(dom.n) + 1.0);
}

std::size_t count_points(const Point& z, double r,
                         const std::vector<Point>& seq) {
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("count_points: radius must be in (0,1)");
    std::size_t c = 0;
    for (const Point& a : seq)
        if (pseudo_distance(z.view(), a.view()) < r) ++c;
    return c;
}

}  // namespace bergman
