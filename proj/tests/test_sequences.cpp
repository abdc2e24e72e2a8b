// Tests for sequence-space machinery: weighted norms, separation margins,
// coupling sums K({a_k},p,q) with brute-force oracles and exact transpose
// symmetry, dyadic radial sequences against the diagonal-kernel bound chain,
// greedy lattice generation with certification, the subordinate Borel
// partition, and the diagnostic battery.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/sequences.hpp"
#include "doctest.h"

namespace {

using namespace bergman;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

Point dpt(double re, double im) { return Point({cd(re, im)}); }

PointSequence three_points() {
    return PointSequence::make(
        {dpt(0.1, 0.2), dpt(-0.5, 0.3), dpt(0.7, -0.1)});
}

PointSequence six_points() {
    return PointSequence::make({dpt(0.1, 0.2), dpt(-0.5, 0.3), dpt(0.7, -0.1),
                                dpt(0.0, -0.6), dpt(0.85, 0.3),
                                dpt(-0.2, -0.75)});
}

// independent oracle: plain complex arithmetic and std::pow, no log-space
double brute_row(const PointSequence& seq, double p, double q, std::size_t k,
                 bool include_diag) {
    const double e = (p + q) / 2.0;  // disk: n + 1 = 2
    long double row = 0.0L;
    for (std::size_t j = 0; j < seq.size(); ++j) {
        if (!include_diag && j == k) continue;
        const cd zk = seq.points[k].coords()[0];
        const cd zj = seq.points[j].coords()[0];
        const double abs_k =
            (1.0 / kPi) / std::norm(cd(1.0, 0.0) - zk * std::conj(zj));
        row += std::pow(seq.deltas[k], p) * std::pow(seq.deltas[j], q) *
               std::pow(abs_k, e);
    }
    return static_cast<double>(row);
}

double brute_k_sum(const PointSequence& seq, double p, double q,
                   bool include_diag) {
    double sup = 0.0;
    for (std::size_t k = 0; k < seq.size(); ++k)
        sup = std::max(sup, brute_row(seq, p, q, k, include_diag));
    return sup;
}

// points on the positive real axis with boundary distances 2^{-k}/scale
PointSequence radial_dyadic(double scale, int count) {
    std::vector<Point> pts;
    for (int k = 1; k <= count; ++k)
        pts.push_back(dpt(1.0 - std::pow(2.0, -k) / scale, 0.0));
    return PointSequence::make(std::move(pts));
}

}  // namespace

TEST_CASE("point sequences cache boundary distances and validate structure") {
    const auto seq = three_points();
    REQUIRE(seq.size() == 3);
    REQUIRE(seq.deltas.size() == 3);
    for (std::size_t k = 0; k < seq.size(); ++k)
        CHECK(seq.deltas[k] ==
              doctest::Approx(boundary_distance(seq.points[k]))
                  .epsilon(1e-15));

    CHECK_THROWS_AS(PointSequence::make({}), std::invalid_argument);
    CHECK_THROWS_AS(
        PointSequence::make({dpt(0.1, 0.0), Point({cd(0.1, 0.0), cd(0.2, 0.0)})}),
        std::invalid_argument);
}

TEST_CASE("weighted sequence norms match hand values and validate input") {
    const std::vector<cd> v1{cd(3.0, 4.0)};
    const std::vector<double> d1{0.5};
    // delta^2 |v| = 0.25 * 5
    CHECK(sequence_norm(v1, d1, 1.0, 2.0) == doctest::Approx(1.25).epsilon(1e-15));

    const std::vector<cd> v2{cd(2.0, 0.0), cd(0.0, 1.0)};
    const std::vector<double> d2{0.5, 0.8};
    const double expect2 = std::sqrt(1.0 + 0.64);
    CHECK(sequence_norm(v2, d2, 2.0, 1.0) ==
          doctest::Approx(expect2).epsilon(1e-15));

    WeightedValueSequence wv;
    wv.values = v2;
    wv.weight_exponent = 1.0;
    CHECK(sequence_norm(wv, d2, 2.0) ==
          doctest::Approx(sequence_norm(v2, d2, 2.0, 1.0)).epsilon(1e-15));

    CHECK_THROWS_AS(sequence_norm(v2, d1, 2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sequence_norm(v1, d1, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("separation margin is the minimal pairwise Kobayashi distance") {
    const auto single = PointSequence::make({dpt(0.3, 0.3)});
    CHECK(separation_margin(single) ==
          std::numeric_limits<double>::infinity());

    // pseudo(0.5, 0.9) = 8/11, margin = arctanh(8/11) = log(19/3)/2
    const auto pair = PointSequence::make({dpt(0.5, 0.0), dpt(0.9, 0.0)});
    CHECK(separation_margin(pair) ==
          doctest::Approx(0.92291334524916538).epsilon(1e-15));

    const auto wide = PointSequence::make(
        {dpt(0.5, 0.0), dpt(0.9, 0.0), dpt(0.7, 0.0)});
    CHECK(separation_margin(wide) < separation_margin(pair));
    const auto swapped = PointSequence::make(
        {dpt(0.9, 0.0), dpt(0.7, 0.0), dpt(0.5, 0.0)});
    CHECK(separation_margin(wide) ==
          doctest::Approx(separation_margin(swapped)).epsilon(1e-15));
}

TEST_CASE("coupling sums match a brute-force oracle") {
    const auto dom = DomainSpec::disk();
    const auto seq = three_points();
    const std::vector<std::pair<double, double>> exps{
        {1.0, 2.0}, {1.3, 2.7}, {2.0, 3.5}};
    for (const auto& [p, q] : exps) {
        for (const bool incl : {true, false}) {
            const auto diag = incl ? Diagonal::include : Diagonal::exclude;
            CHECK(k_sum(dom, seq, p, q, diag) ==
                  doctest::Approx(brute_k_sum(seq, p, q, incl))
                      .epsilon(1e-12));
            const auto rows = k_sum_rows(dom, seq, p, q, diag);
            REQUIRE(rows.size() == seq.size());
            for (std::size_t k = 0; k < rows.size(); ++k)
                CHECK(rows[k] ==
                      doctest::Approx(brute_row(seq, p, q, k, incl))
                          .epsilon(1e-12));
        }
    }

    // the standing two-point configuration {0, 0.9} with a scheme-style
    // exponent pair (m, 2 + beta) = (1, 2.5)
    const auto two = PointSequence::make({dpt(0.0, 0.0), dpt(0.9, 0.0)});
    CHECK(k_sum(dom, two, 1.0, 2.5, Diagonal::include) ==
          doctest::Approx(brute_k_sum(two, 1.0, 2.5, true)).epsilon(1e-12));
    CHECK(k_sum(dom, two, 1.0, 2.5, Diagonal::exclude) ==
          doctest::Approx(brute_k_sum(two, 1.0, 2.5, false)).epsilon(1e-12));
    CHECK(k_sum(dom, two, 1.0, 2.5, Diagonal::include) ==
          doctest::Approx(1.353190423450120e-01).epsilon(1e-13));
    CHECK(k_sum(dom, two, 1.0, 2.5, Diagonal::exclude) ==
          doctest::Approx(1.348924748851578e-02).epsilon(1e-13));
}

TEST_CASE("single-point and empty coupling sums have closed forms") {
    const auto dom = DomainSpec::disk();
    const auto origin = PointSequence::make({dpt(0.0, 0.0)});
    for (const auto& [p, q] : std::vector<std::pair<double, double>>{
             {1.0, 2.0}, {1.5, 2.5}, {2.0, 3.0}}) {
        // delta = 1 and |K(0,0)| = 1/pi leave (1/pi)^{(p+q)/2}
        CHECK(k_sum(dom, origin, p, q, Diagonal::include) ==
              doctest::Approx(std::pow(1.0 / kPi, (p + q) / 2.0))
                  .epsilon(1e-14));
        CHECK(k_sum(dom, origin, p, q, Diagonal::exclude) == 0.0);
    }

    // an empty sequence never passes make(), but the aggregate is usable and
    // every coupling sum over it is an empty sup
    const PointSequence empty;
    CHECK(k_sum(dom, empty, 1.0, 2.0, Diagonal::include) == 0.0);
    CHECK(k_sum_rows(dom, empty, 1.0, 2.0, Diagonal::include).empty());
}

TEST_CASE("coupling term matrices are exactly transpose-symmetric") {
    const auto disk = DomainSpec::disk();
    const auto seq = six_points();
    for (const auto& [p, q] : std::vector<std::pair<double, double>>{
             {1.0, 2.0}, {1.3, 2.7}, {0.6, 3.9}}) {
        for (std::size_t k = 0; k < seq.size(); ++k)
            for (std::size_t j = 0; j < seq.size(); ++j)
                CHECK(k_sum_term(disk, seq, p, q, k, j) ==
                      k_sum_term(disk, seq, q, p, j, k));
    }

    const auto ball = DomainSpec::ball(2);
    const auto bseq = PointSequence::make(
        {Point({cd(0.1, 0.2), cd(-0.3, 0.1)}),
         Point({cd(-0.4, 0.0), cd(0.2, 0.5)}),
         Point({cd(0.6, -0.3), cd(0.05, 0.35)}),
         Point({cd(0.0, 0.0), cd(0.0, -0.8)})});
    for (std::size_t k = 0; k < bseq.size(); ++k)
        for (std::size_t j = 0; j < bseq.size(); ++j)
            CHECK(k_sum_term(ball, bseq, 1.7, 3.2, k, j) ==
                  k_sum_term(ball, bseq, 3.2, 1.7, j, k));
}

TEST_CASE("removing a point never increases a coupling sum") {
    const auto dom = DomainSpec::disk();
    const auto full = six_points();
    const std::vector<std::pair<double, double>> exps{
        {1.0, 2.0}, {1.3, 2.7}, {2.0, 3.5}};
    for (std::size_t drop = 0; drop < full.size(); ++drop) {
        std::vector<Point> rest;
        for (std::size_t i = 0; i < full.size(); ++i)
            if (i != drop) rest.push_back(full.points[i]);
        const auto sub = PointSequence::make(std::move(rest));
        for (const auto& [p, q] : exps) {
            for (const auto diag : {Diagonal::include, Diagonal::exclude}) {
                const double before = k_sum(dom, full, p, q, diag);
                const double after = k_sum(dom, sub, p, q, diag);
                CHECK(after <= before * (1.0 + 1e-13));
            }
        }
    }
}

TEST_CASE("dyadic radial sequences satisfy the diagonal-kernel bound chain") {
    // Nodes with delta(a_k) = 2^{-k}/D on the positive real axis.  With
    // C = sup_z K(z,z) delta(z)^{n+1} (= 1/pi on the disk), the crude chain
    // through |K(a_k,a_j)| <= C (delta_k delta_j)^{-(n+1)/2} bounds
    // K({a_k}, m, n+1+beta) by C^{(m+n+1+beta)/(n+1)}/D at the smallest D
    // that makes this bound < 1, which is all a contraction argument needs.
    // The bound cannot persist for much larger D: the deltas only rescale,
    // the pairwise ratios delta_j/delta_k stay fixed, and the sum tends to a
    // scale-free limit while C^s/D keeps shrinking.
    const auto dom = DomainSpec::disk();
    const double m = 1.0, q = 3.0;  // beta = 1, n = 1
    const double chain_c = std::pow(dom.kernel_norm, (m + q) / 2.0);
    REQUIRE(chain_c < 1.0);  // D = 1 already satisfies C^s/D < 1
    for (const double scale : {1.0, 2.0}) {
        const auto seq = radial_dyadic(scale, 20);
        const double value = k_sum(dom, seq, m, q, Diagonal::include);
        CHECK(value <= chain_c / scale);
    }
    for (const double scale : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
        const auto seq = radial_dyadic(scale, 20);
        CHECK(k_sum(dom, seq, m, q, Diagonal::include) < 1.0);
        CHECK(k_sum(dom, seq, m, q, Diagonal::exclude) < 1.0);
    }
    // a second exponent pair: m = 2, beta = 3
    const auto seq = radial_dyadic(1.0, 20);
    CHECK(k_sum(dom, seq, 2.0, 5.0, Diagonal::include) <=
          std::pow(dom.kernel_norm, 3.5));
}

TEST_CASE("greedy lattice is separated, covering, and deterministic") {
    const auto dom = DomainSpec::disk();
    LatticeOptions opts;
    opts.delta_min = 0.05;  // shallow truncation keeps this case fast
    const auto lat = generate_lattice(dom, 0.5, opts);

    CHECK(lat.r == 0.5);
    CHECK(lat.R == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(lat.delta_min == 0.05);

    // threshold = tanh(2 arctanh(r/3)) = 6r/(9 + r^2) = 12/37 at r = 1/2
    CHECK(lat.cert.separation_threshold ==
          doctest::Approx(12.0 / 37.0).epsilon(1e-15));
    CHECK(lat.cert.centers == lat.seq.size());
    CHECK(lat.cert.min_pairwise_pseudo >= lat.cert.separation_threshold);
    CHECK(lat.cert.uncovered == 0);
    CHECK(lat.cert.max_multiplicity >= 1);
    CHECK(lat.cert.grid_points > 0);

    // frozen deterministic outcome of the greedy sweep at these options
    CHECK(lat.seq.size() == 259);
    CHECK(lat.cert.max_multiplicity == 39);
    CHECK(lat.cert.min_pairwise_pseudo ==
          doctest::Approx(0.32443737400370343).epsilon(1e-12));

    for (const double d : lat.seq.deltas) CHECK(d >= opts.delta_min - 1e-12);

    // brute-force re-measurement of the pairwise minimum
    double brute = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < lat.seq.size(); ++a)
        for (std::size_t b = a + 1; b < lat.seq.size(); ++b)
            brute = std::min(
                brute, pseudo_distance(lat.seq.points[a], lat.seq.points[b]));
    CHECK(brute == doctest::Approx(lat.cert.min_pairwise_pseudo).epsilon(1e-12));
    CHECK(brute >= lat.cert.separation_threshold);

    const auto again = generate_lattice(dom, 0.5, opts);
    REQUIRE(again.seq.size() == lat.seq.size());
    for (std::size_t k = 0; k < lat.seq.size(); ++k)
        CHECK(again.seq.points[k].coords() == lat.seq.points[k].coords());
    CHECK(again.cert.max_multiplicity == lat.cert.max_multiplicity);
    CHECK(again.cert.min_pairwise_pseudo == lat.cert.min_pairwise_pseudo);

    CHECK_THROWS_AS(generate_lattice(DomainSpec::ball(2), 0.5, opts),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_lattice(dom, 1.2, opts), std::invalid_argument);
    LatticeOptions bad = opts;
    bad.delta_min = 0.6;
    CHECK_THROWS_AS(generate_lattice(dom, 0.5, bad), std::invalid_argument);
    LatticeOptions coarse = opts;
    coarse.cand_spacing = 0.4;  // cannot certify covering at r = 0.5
    CHECK_THROWS_AS(generate_lattice(dom, 0.5, coarse), std::invalid_argument);
}

TEST_CASE("borel partition assigns every grid point exactly once") {
    const auto dom = DomainSpec::disk();
    LatticeOptions opts;
    opts.delta_min = 0.05;
    const auto lat = generate_lattice(dom, 0.5, opts);
    const BorelPartition part(lat);

    const auto rep = verify_partition(part, 0.05);
    CHECK(rep.grid_points > 0);
    CHECK(rep.unassigned == 0);
    CHECK(rep.inner_mismatch == 0);
    CHECK(rep.outside_outer == 0);
    CHECK(rep.multiple_inner == 0);

    // each center sits inside its own inner ball, hence its own cell
    for (std::size_t k = 0; k < lat.seq.size(); ++k) {
        const auto idx = part.index(lat.seq.points[k].coords()[0]);
        REQUIRE(idx.has_value());
        CHECK(*idx == k);
    }

    // the Point and complex classifiers agree
    const Point sample = dpt(0.3, 0.1);
    CHECK(part.index(sample) == part.index(cd(0.3, 0.1)));

    // far deeper than the truncation: beyond every r-ball
    CHECK_FALSE(part.index(cd(1.0 - 1e-9, 0.0)).has_value());

    CHECK_THROWS_AS(part.index(cd(1.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(part.index(cd(1.0 - 1e-13, 0.0)), std::domain_error);
    CHECK_THROWS_AS(part.index(Point({cd(0.1, 0.0), cd(0.0, 0.0)})),
                    std::invalid_argument);
}

TEST_CASE("diagnostics stay finite and move together") {
    const auto dom = DomainSpec::disk();

    SUBCASE("single point: everything finite and O(1)") {
        const Point a = dpt(0.2, 0.0);
        const auto d =
            sequence_diagnostics(dom, PointSequence::make({a}), 0.5);
        CHECK(d.separation == std::numeric_limits<double>::infinity());
        CHECK(d.sup_count == 1);
        CHECK(std::isfinite(d.sup_z_coupling));
        CHECK(d.sup_z_coupling > 0.0);
        CHECK(std::isfinite(d.carleson_constant));
        CHECK(d.carleson_constant > 0.0);
        CHECK(d.carleson_constant < 100.0);
        const double delta = boundary_distance(a);
        const double diag_kernel = (1.0 / kPi) / std::norm(cd(1.0, 0.0) - cd(0.2, 0.0) * cd(0.2, 0.0));
        for (const auto& c : d.coupling) {
            // one-term sup: [delta^2 |K(a,a)|]^{(p+q)/2}
            CHECK(c.include_diag ==
                  doctest::Approx(std::pow(delta * delta * diag_kernel,
                                           (c.p + c.q) / 2.0))
                      .epsilon(1e-12));
            CHECK(c.exclude_diag == 0.0);
        }
    }

    SUBCASE("a duplicated cluster inflates every diagnostic proportionally") {
        const auto solo =
            sequence_diagnostics(dom, PointSequence::make({dpt(0.3, 0.1)}), 0.5);
        std::vector<Point> copies;
        for (int i = 0; i < 50; ++i)
            copies.push_back(dpt(0.3 + 1e-9 * i, 0.1 - 1e-9 * i));
        const auto bunch =
            sequence_diagnostics(dom, PointSequence::make(std::move(copies)), 0.5);

        CHECK(bunch.sup_count == 50);
        CHECK(bunch.sup_z_coupling / solo.sup_z_coupling ==
              doctest::Approx(50.0).epsilon(2e-3));
        CHECK(bunch.carleson_constant / solo.carleson_constant ==
              doctest::Approx(50.0).epsilon(2e-3));
        REQUIRE(bunch.coupling.size() == solo.coupling.size());
        for (std::size_t i = 0; i < bunch.coupling.size(); ++i) {
            CHECK(bunch.coupling[i].include_diag /
                      solo.coupling[i].include_diag ==
                  doctest::Approx(50.0).epsilon(2e-3));
            // excluding the diagonal still leaves the 49 twins
            CHECK(bunch.coupling[i].exclude_diag /
                      solo.coupling[i].include_diag ==
                  doctest::Approx(49.0).epsilon(2e-3));
        }
    }

    SUBCASE("removing a point never increases any diagnostic") {
        const auto full_seq = six_points();
        const auto full = sequence_diagnostics(dom, full_seq, 0.4);
        for (std::size_t drop = 0; drop < full_seq.size(); ++drop) {
            std::vector<Point> rest;
            for (std::size_t i = 0; i < full_seq.size(); ++i)
                if (i != drop) rest.push_back(full_seq.points[i]);
            const auto d = sequence_diagnostics(
                dom, PointSequence::make(std::move(rest)), 0.4);
            CHECK(d.sup_count <= full.sup_count);
            CHECK(d.sup_z_coupling <= full.sup_z_coupling * (1.0 + 1e-13));
            CHECK(d.carleson_constant <=
                  full.carleson_constant * (1.0 + 1e-13));
            REQUIRE(d.coupling.size() == full.coupling.size());
            for (std::size_t i = 0; i < d.coupling.size(); ++i) {
                CHECK(d.coupling[i].include_diag <=
                      full.coupling[i].include_diag * (1.0 + 1e-13));
                CHECK(d.coupling[i].exclude_diag <=
                      full.coupling[i].exclude_diag * (1.0 + 1e-13));
            }
        }
    }

    SUBCASE("radius validation") {
        const auto seq = three_points();
        CHECK_THROWS_AS(sequence_diagnostics(dom, seq, 0.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(sequence_diagnostics(dom, seq, 1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("full half-lattice diagnostics stay finite" *
          doctest::timeout(500)) {
    const auto dom = DomainSpec::disk();
    const auto lat = generate_lattice(dom, 0.5);  // delta_min = 1e-3
    const auto d = sequence_diagnostics(dom, lat.seq, 0.5);

    // the separation margin is the arctanh of the certified pseudo minimum
    CHECK(d.separation ==
          doctest::Approx(std::atanh(lat.cert.min_pairwise_pseudo))
              .epsilon(1e-9));
    CHECK(d.sup_count >= 1);
    CHECK(d.sup_count <= lat.cert.max_multiplicity);
    CHECK(std::isfinite(d.sup_z_coupling));
    CHECK(d.sup_z_coupling > 0.0);
    CHECK(std::isfinite(d.carleson_constant));
    CHECK(d.carleson_constant > 0.0);
    CHECK(d.carleson_constant < 1e3);
    for (const auto& c : d.coupling) {
        CHECK(std::isfinite(c.include_diag));
        CHECK(std::isfinite(c.exclude_diag));
        CHECK(c.include_diag > 0.0);
        CHECK(c.exclude_diag > 0.0);
        CHECK(c.exclude_diag <= c.include_diag);
        CHECK(c.include_diag < 1e3);
    }
}
