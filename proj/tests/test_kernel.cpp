#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/kernel.hpp"
#include "bergman/quadrature.hpp"

using bergman::cplx;
using bergman::DomainSpec;
using bergman::Point;
using bergman::PointView;

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

TEST_CASE("kernel closed form on the disk") {
    const DomainSpec disk = DomainSpec::disk();
    const Point o(cplx{0.0, 0.0});
    CHECK(bergman::kernel(disk, o, o).real() ==
          doctest::Approx(1.0 / M_PI).epsilon(1e-15));
    CHECK(bergman::kernel(disk, o, o).imag() == 0.0);

    const Point z(cplx{0.5, 0.0});
    const Point w(cplx{0.0, 0.3});
    const cplx direct =
        (1.0 / M_PI) / std::pow(1.0 - cplx{0.5, 0.0} * std::conj(cplx{0.0, 0.3}), 2);
    const cplx got = bergman::kernel(disk, z, w);
    CHECK(std::abs(got - direct) < 1e-15);
}

TEST_CASE("kernel symmetry and diagonal positivity") {
    std::mt19937_64 rng(3);
    for (std::size_t n : {std::size_t{1}, std::size_t{2}}) {
        const DomainSpec dom = n == 1 ? DomainSpec::disk() : DomainSpec::ball(n);
        for (int t = 0; t < 50; ++t) {
            const Point z = rand_point(rng, n, 0.95);
            const Point w = rand_point(rng, n, 0.95);
            const cplx kzw = bergman::kernel(dom, z, w);
            const cplx kwz = bergman::kernel(dom, w, z);
            CHECK(std::abs(kzw - std::conj(kwz)) <=
                  1e-13 * std::abs(kzw));
            const cplx diag = bergman::kernel(dom, z, z);
            CHECK(diag.real() > 0.0);
            CHECK(std::abs(diag.imag()) <= 1e-15 * diag.real());
            // diagonal closed form c_n (1-||z||^2)^{-(n+1)}
            double zn = 0.0;
            for (auto c : z.coords()) zn += std::norm(c);
            const double expect =
                dom.kernel_norm / std::pow(1.0 - zn, double(n) + 1.0);
            CHECK(diag.real() == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("log kernel magnitude is consistent with the kernel") {
    const DomainSpec disk = DomainSpec::disk();
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        const Point z = rand_point(rng, 1, 0.98);
        const Point w = rand_point(rng, 1, 0.98);
        const double ka = bergman::kernel_abs(disk, z.view(), w.view());
        const double lka = bergman::log_kernel_abs(disk, z.view(), w.view());
        CHECK(std::exp(lka) == doctest::Approx(ka).epsilon(1e-12));
        CHECK(ka == doctest::Approx(std::abs(bergman::kernel(disk, z, w)))
                        .epsilon(1e-13));
    }
    // near-boundary diagonal where the kernel is huge but finite
    const Point zb(cplx{1.0 - 1e-9, 0.0});
    const double lk = bergman::log_kernel_abs(disk, zb.view(), zb.view());
    const double x = zb.coords()[0].real();
    const double d = 1.0 - x;  // exact for x this close to 1
    const double ref = -std::log(M_PI) - 2.0 * (std::log(d) + std::log(2.0 - d));
    CHECK(lk == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("kernel powers") {
    const DomainSpec disk = DomainSpec::disk();
    CHECK_THROWS_AS(bergman::KernelPower(Point(cplx{0.1, 0.0}), 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(bergman::KernelPower(Point(cplx{0.1, 0.0}), -1.5),
                    std::invalid_argument);

    const Point a(cplx{0.4, -0.2});
    std::mt19937_64 rng(9);
    const bergman::KernelPower kp1(a, 1.0);
    const bergman::KernelPower kp2(a, 2.0);
    const bergman::KernelPower kph(a, 1.5);
    for (int t = 0; t < 30; ++t) {
        const Point z = rand_point(rng, 1, 0.95);
        const cplx k = bergman::kernel(disk, z, a);
        const cplx p1 = bergman::kernel_power(disk, kp1, z.view());
        const cplx p2 = bergman::kernel_power(disk, kp2, z.view());
        const cplx ph = bergman::kernel_power(disk, kph, z.view());
        CHECK(std::abs(p1 - k) <= 1e-13 * std::abs(k));
        CHECK(std::abs(p2 - k * k) <= 1e-12 * std::abs(k * k));
        // magnitude of the fractional power
        CHECK(std::abs(ph) ==
              doctest::Approx(std::pow(std::abs(k), 1.5)).epsilon(1e-12));
        // view entry point agrees
        const cplx pv =
            bergman::kernel_power_view(disk, a.view(), 1.5, z.view());
        CHECK(std::abs(pv - ph) <= 1e-14 * std::abs(ph));
    }
}

TEST_CASE("jacobian magnitude and transformation identity") {
    std::mt19937_64 rng(13);
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
        const DomainSpec dom = n == 1 ? DomainSpec::disk() : DomainSpec::ball(n);
        for (int t = 0; t < 60; ++t) {
            const Point a = rand_point(rng, n, 0.9);
            const Point z = rand_point(rng, n, 0.95);
            const Point w = rand_point(rng, n, 0.95);
            // |J_a(0)|^2 = (1-||a||^2)^{n+1}
            std::vector<cplx> zero(n, 0.0);
            const cplx j0 = bergman::jacobian(dom, a, Point(zero));
            double an = 0.0;
            for (auto c : a.coords()) an += std::norm(c);
            CHECK(std::norm(j0) ==
                  doctest::Approx(std::pow(1.0 - an, double(n) + 1.0))
                      .epsilon(1e-12));
            CHECK(bergman::check_transformation_identity(dom, a, z, w) <
                  1e-12);
        }
    }
}

TEST_CASE("automorphism change of variables preserves integrals") {
    const DomainSpec disk = DomainSpec::disk();
    const bergman::QuadratureRule rule = bergman::disk_rule(128, 256);
    const Point a(cplx{0.35, 0.25});
    const auto f = [](PointView z) {
        return std::exp(-2.0 * std::norm(z[0])) + z[0].real();
    };
    CHECK(bergman::check_change_of_variables(disk, f, a, rule) < 1e-10);
}

TEST_CASE("reproducing integral recovers holomorphic functions") {
    const DomainSpec disk = DomainSpec::disk();
    const bergman::QuadratureRule rule = bergman::disk_rule(128, 256);
    const Point z(cplx{0.4, 0.3});
    for (int d = 0; d <= 6; ++d) {
        const auto f = [d](PointView w) {
            cplx acc = 1.0;
            for (int i = 0; i < d; ++i) acc *= w[0];
            return acc;
        };
        const cplx got = bergman::reproduce(disk, f, z, rule);
        CHECK(std::abs(got - f(z.view())) < 1e-12);
    }
    // entire function with rapidly convergent series
    const auto expf = [](PointView w) { return std::exp(0.7 * w[0]); };
    CHECK(std::abs(bergman::reproduce(disk, expf, z, rule) -
                   expf(z.view())) < 1e-11);

    // ball of dimension 2 with the QMC rule (stochastic accuracy)
    const DomainSpec b2 = DomainSpec::ball(2);
    const bergman::QuadratureRule qmc = bergman::ball_qmc_rule(2, 400000, 42);
    const Point z2(std::vector<cplx>{{0.3, 0.0}, {0.0, 0.2}});
    const auto g = [](PointView w) { return w[0] * w[1] + 0.5 * w[0]; };
    CHECK(std::abs(bergman::reproduce(b2, g, z2, qmc) - g(z2.view())) < 5e-3);
}

TEST_CASE("weighted kernel integrals match series values") {
    const DomainSpec disk = DomainSpec::disk();
    struct Row {
        double p, alpha, r, value;
    };
    // values from the hypergeometric series
    // 2 pi^{1-p} sum_k [(p)_k/k!]^2 r^{2k} B(2k+2, alpha+1)
    const Row rows[] = {
        {1.5, 0.0, 0.7, 1.1910878980949249},
        {2.0, 0.5, 0.8, 0.80140281665253026},
        {3.0, 1.0, 0.9, 3.882598191558763},
        {2.0, 0.0, 0.0, 0.31830988618379067},
    };
    for (const Row& row : rows) {
        const double got = bergman::forelli_rudin_integral(
            disk, Point(cplx{row.r, 0.0}), row.p, row.alpha);
        CHECK(got == doctest::Approx(row.value).epsilon(1e-13));
    }
    // rotation invariance in the base point
    const double rot = bergman::forelli_rudin_integral(
        disk, Point(0.8 * std::polar(1.0, 1.1)), 2.0, 0.5);
    CHECK(rot == doctest::Approx(0.80140281665253026).epsilon(1e-12));
}

TEST_CASE("admissibility window is enforced") {
    const DomainSpec disk = DomainSpec::disk();
    const Point z(cplx{0.5, 0.0});
    // alpha = (n+1)(p-1) sits on the edge and must be rejected
    CHECK_THROWS_AS(bergman::forelli_rudin_integral(disk, z, 1.5, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(bergman::forelli_rudin_integral(disk, z, 2.0, -1.0),
                    std::domain_error);
    CHECK_THROWS_AS(bergman::forelli_rudin_integral(disk, z, 0.4, 0.0),
                    std::domain_error);
    // the unchecked entry point measures anyway
    CHECK(bergman::forelli_rudin_integral_unchecked(disk, z, 1.5, 1.0) > 0.0);
}

TEST_CASE("log-log slope fitting") {
    std::vector<double> deltas, values;
    for (int i = 0; i < 9; ++i) {
        const double d =
            std::exp(std::log(1e-3) +
                     i * (std::log(0.5) - std::log(1e-3)) / 8.0);
        deltas.push_back(d);
        values.push_back(3.7 * std::pow(d, -1.25) * std::pow(2.0 - d, 0.8));
    }
    const bergman::SlopeFit fit = bergman::fit_log_slope(deltas, values);
    CHECK(fit.slope == doctest::Approx(-1.25).epsilon(2e-3));

    // a d^{1/2} correction biases the 4-column fit; declaring the exponent
    // removes the bias
    std::vector<double> biased;
    for (double d : deltas)
        biased.push_back(std::pow(d, -0.5) * (1.0 + 0.8 * std::sqrt(d)));
    const bergman::SlopeFit plain = bergman::fit_log_slope(deltas, biased);
    const bergman::SlopeFit corrected =
        bergman::fit_log_slope(deltas, biased, 0.5);
    CHECK(std::abs(plain.slope + 0.5) > 0.01);
    // the declared column removes the leading bias; the d^{3/2} term of
    // log(1 + 0.8 sqrt(d)) stays outside the basis, so ~4e-4 remains
    CHECK(corrected.slope == doctest::Approx(-0.5).epsilon(2e-3));
    CHECK(std::abs(corrected.slope + 0.5) < std::abs(plain.slope + 0.5) / 5.0);

    CHECK_THROWS_AS(bergman::fit_log_slope({1.0, 2.0}, {1.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("slope driver reports the admissibility flag") {
    const DomainSpec disk = DomainSpec::disk();
    std::vector<double> deltas;
    for (int i = 0; i < 9; ++i)
        deltas.push_back(std::exp(std::log(1e-3) +
                                  i * (std::log(0.5) - std::log(1e-3)) / 8.0));

    const bergman::ForelliRudinSlope good =
        bergman::forelli_rudin_slope(disk, 2.0, 0.0, deltas);
    CHECK(good.admissible);
    CHECK(good.fit.slope == doctest::Approx(-2.0).epsilon(0.01));

    const bergman::ForelliRudinSlope edge =
        bergman::forelli_rudin_slope(disk, 1.5, 1.0, deltas);
    CHECK_FALSE(edge.admissible);
    CHECK(edge.violated.find("alpha") != std::string::npos);
    CHECK(edge.values.size() == deltas.size());
}

TEST_CASE("diagonal growth brackets are sharp on the disk") {
    const DomainSpec disk = DomainSpec::disk();
    std::vector<Point> samples;
    for (int i = 0; i < 24; ++i) {
        const double d = std::exp(std::log(1e-3) +
                                  i * (std::log(0.9) - std::log(1e-3)) / 23.0);
        samples.push_back(Point((1.0 - d) * std::polar(1.0, 0.37 * i)));
    }
    const bergman::DiagonalBracket b =
        bergman::check_diagonal_estimates(disk, samples);
    // K(z,z) delta^2 = (1/pi)(2-delta)^{-2} lies in [1/(4 pi), 1/pi]
    CHECK(b.diag_min >= 1.0 / (4.0 * M_PI) - 1e-12);
    CHECK(b.diag_max <= 1.0 / M_PI + 1e-12);
    CHECK(b.diag_min <= b.diag_max);
    CHECK(b.near_min > 0.0);
    CHECK(b.near_max / b.near_min < 1e3);
}
