#pragma once

// Hyperbolic geometry of the unit disk / unit ball: boundary distance,
// Möbius automorphisms, the Kobayashi distance (arctanh of the invariant
// pseudo-distance) and its metric balls.

#include <cstddef>
#include <string>
#include <vector>

#include "bergman/numeric.hpp"

namespace bergman {

// Which domain we work on (unit ball of complex dimension n; n = 1 is the
// disk) plus the derived constants of its Bergman theory.
struct DomainSpec {
    std::size_t n = 1;         // complex dimension
    double kernel_norm = 0.0;  // c_n in K(z,w) = c_n (1-<z,w>)^{-(n+1)}
    double lebesgue_volume = 0.0;  // nu(B_n) = pi^n / n!

    static DomainSpec disk();
    static DomainSpec ball(std::size_t n);

    bool operator==(const DomainSpec&) const = default;
};

// A point strictly inside the domain.  Construction rejects points with
// Euclidean norm >= 1 - 1e-12: kernel powers blow up at the boundary and
// every downstream quadrature assumes a strictly interior point.
class Point {
  public:
    Point() : coords_(1, 0.0) {}
    explicit Point(cplx z) : coords_{z} { validate(); }
    explicit Point(std::vector<cplx> coords);

    const std::vector<cplx>& coords() const { return coords_; }
    PointView view() const { return {coords_.data(), coords_.size()}; }
    std::size_t dim() const { return coords_.size(); }

    bool operator==(const Point&) const = default;

  private:
    void validate() const;
    std::vector<cplx> coords_;
};

// Euclidean distance to the boundary, delta(z) = 1 - ||z||.
double boundary_distance(PointView z);
inline double boundary_distance(const Point& z) {
    return boundary_distance(z.view());
}

// The involutive automorphism phi_a exchanging 0 and a.
Point mobius(const Point& a, const Point& z);
void mobius_view(PointView a, PointView z, std::vector<cplx>& out);

// (1 - ||z||^2)(1 - ||w||^2) / |1 - <z,w>|^2 = 1 - ||phi_z(w)||^2, computed
// with compensated arithmetic so its relative accuracy survives near the
// boundary.  Strictly positive for interior points.
double one_minus_pseudo_sq(PointView z, PointView w);

// tanh of the Kobayashi distance: ||phi_z(w)||.
double pseudo_distance(PointView z, PointView w);
inline double pseudo_distance(const Point& z, const Point& w) {
    return pseudo_distance(z.view(), w.view());
}

// Kobayashi distance beta(z,w) = arctanh ||phi_z(w)||.
double kobayashi_distance(PointView z, PointView w);
inline double kobayashi_distance(const Point& z, const Point& w) {
    return kobayashi_distance(z.view(), w.view());
}

// Kobayashi metric ball B(z,r) = {w : tanh beta(z,w) < r}; the radius lives
// on the pseudo-distance (tanh) scale, in (0,1).
struct KobayashiBall {
    Point center;
    double radius = 0.0;

    KobayashiBall(Point c, double r);
};

// Strict membership test: tanh beta(center, w) < radius.
bool ball_membership(const KobayashiBall& ball, const Point& w);

// Exact Lebesgue volume of a Kobayashi ball.  B(z,r) is the Möbius image
// phi_z of the Euclidean ball of radius r, an ellipsoid with one complex
// axis r(1-||z||^2)/(1-r^2||z||^2) and n-1 axes r*sqrt of the same ratio:
//   nu(B(z,r)) = nu(B_n) * r^{2n} * [(1-||z||^2)/(1-r^2||z||^2)]^{n+1}.
double ball_volume(const DomainSpec& dom, const KobayashiBall& ball);

// Number of sequence members inside B(z,r).
std::size_t count_points(const Point& z, double r,
                         const std::vector<Point>& seq);

}  // namespace bergman
