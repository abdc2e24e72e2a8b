#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "bergman/geometry.hpp"

using bergman::cplx;
using bergman::DomainSpec;
using bergman::Point;

namespace {
Point rand_point(std::mt19937_64& rng, std::size_t n, double rmax) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<cplx> c(n);
    double s = 0.0;
    for (auto& z : c) {
        z = {g(rng), g(rng)};
        s += std::norm(z);
    }
    const double rad = rmax * std::sqrt(u(rng));
    for (auto& z : c) z *= rad / std::sqrt(s);
    return Point(std::move(c));
}
}  // namespace

TEST_CASE("domain constants") {
    const DomainSpec disk = DomainSpec::disk();
    CHECK(disk.n == 1);
    CHECK(disk.kernel_norm == doctest::Approx(1.0 / M_PI).epsilon(1e-15));
    CHECK(disk.lebesgue_volume == doctest::Approx(M_PI).epsilon(1e-15));

    const DomainSpec b2 = DomainSpec::ball(2);
    CHECK(b2.n == 2);
    CHECK(b2.kernel_norm == doctest::Approx(2.0 / (M_PI * M_PI)).epsilon(1e-15));
    CHECK(b2.lebesgue_volume ==
          doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-15));

    const DomainSpec b3 = DomainSpec::ball(3);
    CHECK(b3.kernel_norm ==
          doctest::Approx(6.0 / std::pow(M_PI, 3)).epsilon(1e-14));
}

TEST_CASE("point validation") {
    CHECK_NOTHROW(Point(cplx{0.9, 0.0}));
    CHECK_THROWS_AS(Point(cplx{1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(Point(cplx{0.8, 0.8}), std::domain_error);
    CHECK_THROWS_AS(Point(cplx{1.0 - 1e-13, 0.0}), std::domain_error);
    CHECK_NOTHROW(Point(cplx{1.0 - 1e-11, 0.0}));
    const double nan = std::nan("");
    CHECK_THROWS_AS(Point(cplx{nan, 0.0}), std::domain_error);
    CHECK_THROWS_AS(Point(std::vector<cplx>{}), std::invalid_argument);
    // ball point with norm over 1 even though each coordinate is small
    CHECK_THROWS_AS(Point(std::vector<cplx>{{0.8, 0.0}, {0.7, 0.0}}),
                    std::domain_error);
    CHECK_NOTHROW(Point(std::vector<cplx>{{0.5, 0.0}, {0.5, 0.5}}));
}

TEST_CASE("boundary distance") {
    CHECK(bergman::boundary_distance(Point(cplx{0.0, 0.0})) == 1.0);
    CHECK(bergman::boundary_distance(Point(cplx{0.3, 0.4})) ==
          doctest::Approx(0.5).epsilon(1e-15));
    const Point pb(std::vector<cplx>{{0.3, 0.0}, {0.0, 0.4}});
    CHECK(bergman::boundary_distance(pb) ==
          doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("mobius involution") {
    std::mt19937_64 rng(7);
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
        for (int t = 0; t < 50; ++t) {
            const Point a = rand_point(rng, n, 0.95);
            const Point z = rand_point(rng, n, 0.95);
            const Point az = bergman::mobius(a, z);
            // phi_a(0) = a and phi_a(a) = 0
            const Point zero = rand_point(rng, n, 0.0);
            const Point a0 = bergman::mobius(a, zero);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(std::abs(a0.coords()[i] - a.coords()[i]) < 1e-14);
            }
            const Point aa = bergman::mobius(a, a);
            for (std::size_t i = 0; i < n; ++i)
                CHECK(std::abs(aa.coords()[i]) < 1e-14);
            // involution
            const Point back = bergman::mobius(a, az);
            for (std::size_t i = 0; i < n; ++i)
                CHECK(std::abs(back.coords()[i] - z.coords()[i]) < 1e-13);
        }
    }
}

TEST_CASE("pseudo distance basics") {
    const Point o(cplx{0.0, 0.0});
    const Point x(cplx{0.5, 0.0});
    const Point y(cplx{0.9, 0.0});
    // from the origin it is the modulus
    CHECK(bergman::pseudo_distance(o, x) == doctest::Approx(0.5).epsilon(1e-15));
    // |(x-y)/(1-xy)| = 0.4/0.55 = 8/11
    CHECK(bergman::pseudo_distance(x, y) ==
          doctest::Approx(8.0 / 11.0).epsilon(1e-14));
    CHECK(bergman::kobayashi_distance(x, y) ==
          doctest::Approx(0.92291334524916538).epsilon(1e-14));
    // symmetry
    CHECK(bergman::pseudo_distance(x, y) == bergman::pseudo_distance(y, x));
    CHECK(bergman::pseudo_distance(x, x) == 0.0);
}

TEST_CASE("kobayashi distance is a geodesic metric on radii") {
    // collinear points through the origin: distances add exactly
    for (double t1 : {0.1, 0.3, 0.6}) {
        for (double t2 : {0.7, 0.9, 0.99}) {
            const Point a(cplx{t1, 0.0});
            const Point b(cplx{t2, 0.0});
            const double lhs = bergman::kobayashi_distance(
                                   Point(cplx{0.0, 0.0}), a) +
                               bergman::kobayashi_distance(a, b);
            const double rhs =
                bergman::kobayashi_distance(Point(cplx{0.0, 0.0}), b);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
        }
    }
}

TEST_CASE("mobius invariance of the pseudo distance") {
    std::mt19937_64 rng(11);
    for (std::size_t n : {std::size_t{1}, std::size_t{2}}) {
        for (int t = 0; t < 100; ++t) {
            const Point a = rand_point(rng, n, 0.9);
            const Point z = rand_point(rng, n, 0.95);
            const Point w = rand_point(rng, n, 0.95);
            const double before = bergman::pseudo_distance(z, w);
            const double after = bergman::pseudo_distance(
                bergman::mobius(a, z), bergman::mobius(a, w));
            CHECK(after == doctest::Approx(before).epsilon(1e-11));
        }
    }
}

TEST_CASE("compensated one minus pseudo square near the boundary") {
    const Point z(cplx{1.0 - 1e-9, 0.0});
    CHECK(bergman::one_minus_pseudo_sq(z.view(), z.view()) ==
          doctest::Approx(1.0).epsilon(1e-12));
    const Point w(cplx{1.0 - 2e-9, 0.0});
    const double omp = bergman::one_minus_pseudo_sq(z.view(), w.view());
    // (1-|z|^2)(1-|w|^2)/|1-z conj(w)|^2 with the leading digits exact:
    // numerator ~ (2e-9)(4e-9), denominator ~ (3e-9)^2 -> 8/9
    CHECK(omp == doctest::Approx(8.0 / 9.0).epsilon(1e-6));
    const double rho = bergman::pseudo_distance(z.view(), w.view());
    CHECK(1.0 - rho * rho == doctest::Approx(omp).epsilon(1e-9));
}

TEST_CASE("kobayashi ball membership and volume") {
    CHECK_THROWS_AS(bergman::KobayashiBall(Point(cplx{0.0, 0.0}), 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(bergman::KobayashiBall(Point(cplx{0.0, 0.0}), 1.0),
                    std::invalid_argument);

    const bergman::KobayashiBall ball(Point(cplx{0.5, 0.0}), 0.4);
    CHECK(bergman::ball_membership(ball, Point(cplx{0.5, 0.0})));
    CHECK(bergman::ball_membership(ball, Point(cplx{0.6, 0.1})));
    CHECK_FALSE(bergman::ball_membership(ball, Point(cplx{-0.5, 0.0})));

    const DomainSpec disk = DomainSpec::disk();
    // closed form nu(B(c,r)) = pi r^2 [(1-c^2)/(1-r^2 c^2)]^2
    CHECK(bergman::ball_volume(
              disk, bergman::KobayashiBall(Point(cplx{0.8, 0.0}), 0.5)) ==
          doctest::Approx(0.14425680552198025).epsilon(1e-14));
    CHECK(bergman::ball_volume(
              disk, bergman::KobayashiBall(Point(cplx{0.0, 0.0}), 0.3)) ==
          doctest::Approx(0.28274333882308137).epsilon(1e-14));
    CHECK(bergman::ball_volume(
              disk, bergman::KobayashiBall(Point(cplx{0.95, 0.0}), 0.7)) ==
          doctest::Approx(0.047036727016873358).epsilon(1e-14));
    // rotation invariance of the volume
    CHECK(bergman::ball_volume(
              disk, bergman::KobayashiBall(
                        Point(0.8 * std::polar(1.0, 2.1)), 0.5)) ==
          doctest::Approx(0.14425680552198025).epsilon(1e-13));

    // centered ball in C^2: nu(B(0,r)) = (pi^2/2) r^4
    const DomainSpec b2 = DomainSpec::ball(2);
    const Point o2(std::vector<cplx>{{0.0, 0.0}, {0.0, 0.0}});
    CHECK(bergman::ball_volume(b2, bergman::KobayashiBall(o2, 0.5)) ==
          doctest::Approx(M_PI * M_PI / 2.0 * 0.0625).epsilon(1e-14));
}

TEST_CASE("ball volume against direct sampling") {
    // Monte Carlo cross-check on the disk, fixed seed
    const DomainSpec disk = DomainSpec::disk();
    const Point c(cplx{0.8, 0.0});
    const double r = 0.5;
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::size_t hits = 0, total = 0;
    for (int i = 0; i < 400000; ++i) {
        const cplx z{u(rng), u(rng)};
        if (std::norm(z) >= 1.0) continue;
        ++total;
        const cplx zv[1] = {z};
        if (bergman::pseudo_distance(bergman::PointView(zv, 1), c.view()) < r)
            ++hits;
    }
    const double mc = 4.0 * static_cast<double>(hits) / 400000.0;
    const double exact = bergman::ball_volume(
        disk, bergman::KobayashiBall(c, r));
    CHECK(mc == doctest::Approx(exact).epsilon(0.02));
}

TEST_CASE("count points") {
    std::vector<Point> seq{Point(cplx{0.0, 0.0}), Point(cplx{0.1, 0.0}),
                           Point(cplx{0.5, 0.0}), Point(cplx{-0.9, 0.0})};
    CHECK(bergman::count_points(Point(cplx{0.0, 0.0}), 0.2, seq) == 2);
    CHECK(bergman::count_points(Point(cplx{0.0, 0.0}), 0.6, seq) == 3);
    CHECK(bergman::count_points(Point(cplx{0.0, 0.0}), 0.95, seq) == 4);
    CHECK(bergman::count_points(Point(cplx{0.7, 0.0}), 0.05, seq) == 0);
}
