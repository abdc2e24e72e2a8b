#include "bergman/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bergman/kernel.hpp"
#include "bergman/numeric.hpp"

namespace bergman {

namespace {

constexpr double kPi = std::numbers::pi;

// Pseudo-hyperbolic distance squared between polar points on the disk,
// trig-free given cached cos/sin of the angles:
//   rho(z,w)^2 = ((r1-r2)^2 + 4 r1 r2 sin^2(dt/2)) /
//               ((1-r1 r2)^2 + 4 r1 r2 sin^2(dt/2)).
double polar_pseudo_sq(double r1, double c1, double s1, double r2, double c2,
                       double s2) {
    const double cos_dt = c1 * c2 + s1 * s2;
    const double sin_half_sq = std::max(0.0, 0.5 * (1.0 - cos_dt));
    const double cross = 4.0 * r1 * r2 * sin_half_sq;
    const double num = (r1 - r2) * (r1 - r2) + cross;
    const double den = (1.0 - r1 * r2) * (1.0 - r1 * r2) + cross;
    return num / den;
}

struct RingEntry {
    double rho = 0.0;
    double theta = 0.0;
    double cos_t = 1.0;
    double sin_t = 0.0;
    std::uint32_t id = 0;
};

// Disk points bucketed by arctanh(rho) into annular rings, each ring sorted
// by angle, so that all points within a given pseudo-hyperbolic radius of a
// query can be found by scanning a few rings over a small angular window.
class DiskRingIndex {
  public:
    explicit DiskRingIndex(double ring_height) : h_(ring_height) {}

    void insert(double rho, double theta, std::uint32_t id) {
        const double u = std::atanh(rho);
        const auto j =
            static_cast<std::size_t>(std::max(0.0, std::floor(u / h_)));
        if (j >= rings_.size()) rings_.resize(j + 1);
        auto& ring = rings_[j];
        const RingEntry e{rho, theta, std::cos(theta), std::sin(theta), id};
        auto pos = std::upper_bound(
            ring.begin(), ring.end(), theta,
            [](double t, const RingEntry& a) { return t < a.theta; });
        ring.insert(pos, e);
    }

    // Calls fn(entry, query_cos, query_sin) for every stored entry whose
    // pseudo-hyperbolic distance to (rho_q, theta_q) can be below t.  fn
    // returns true to stop early; visit returns whether it was stopped.
    template <typename F>
    bool visit(double rho_q, double theta_q, double t, F&& fn) const {
        if (rings_.empty()) return false;
        const double u_q = std::atanh(rho_q);
        const double reach = std::atanh(std::min(t, 1.0 - 1e-15));
        const auto j_lo = static_cast<std::size_t>(
            std::max(0.0, std::floor((u_q - reach) / h_)));
        const auto j_hi = std::min(
            rings_.size() - 1,
            static_cast<std::size_t>(std::max(0.0, (u_q + reach) / h_)));
        const double cq = std::cos(theta_q), sq = std::sin(theta_q);
        const double t_sq = t * t;
        for (std::size_t j = j_lo; j <= j_hi; ++j) {
            const auto& ring = rings_[j];
            if (ring.empty()) continue;
            const double rho_lo = std::tanh(static_cast<double>(j) * h_);
            double half_window = kPi;
            const double prod = rho_q * rho_lo;
            if (prod > 0.0 && t < 1.0) {
                const double w =
                    t * (1.0 - prod) / (2.0 * std::sqrt(prod * (1.0 - t_sq)));
                // membership needs sin(|d_theta| / 2) < w, so reach 2 asin(w)
                if (w < 1.0)
                    half_window = 2.0 * std::asin(w) * (1.0 + 1e-12) + 1e-12;
            }
            if (half_window >= kPi - 1e-12) {
                for (const auto& e : ring)
                    if (fn(e, cq, sq)) return true;
                continue;
            }
            // scan theta in [theta_q - half_window, theta_q + half_window],
            // wrapping modulo 2 pi (stored angles lie in [0, 2 pi))
            double lo = theta_q - half_window, hi = theta_q + half_window;
            const auto scan = [&](double a, double b) -> bool {
                auto first = std::lower_bound(
                    ring.begin(), ring.end(), a,
                    [](const RingEntry& e, double v) { return e.theta < v; });
                for (auto it = first; it != ring.end() && it->theta <= b; ++it)
                    if (fn(*it, cq, sq)) return true;
                return false;
            };
            bool stopped = false;
            if (lo < 0.0) {
                stopped = scan(0.0, hi) || scan(lo + 2.0 * kPi, 2.0 * kPi);
            } else if (hi > 2.0 * kPi) {
                stopped = scan(lo, 2.0 * kPi) || scan(0.0, hi - 2.0 * kPi);
            } else {
                stopped = scan(lo, hi);
            }
            if (stopped) return true;
        }
        return false;
    }

  private:
    double h_;
    std::vector<std::vector<RingEntry>> rings_;
};

double wrap_angle(double theta) {
    double t = std::fmod(theta, 2.0 * kPi);
    if (t < 0.0) t += 2.0 * kPi;
    return t;
}

}  // namespace

struct PartitionIndex {
    DiskRingIndex rings;
    explicit PartitionIndex(double ring_height) : rings(ring_height) {}
};

PointSequence PointSequence::make(std::vector<Point> pts) {
    if (pts.empty())
        throw std::invalid_argument("point sequence must be non-empty");
    const std::size_t dim = pts.front().dim();
    PointSequence seq;
    seq.points = std::move(pts);
    seq.deltas.reserve(seq.points.size());
    for (const auto& p : seq.points) {
        if (p.dim() != dim)
            throw std::invalid_argument(
                "all points in a sequence must share one dimension");
        seq.deltas.push_back(boundary_distance(p));
    }
    return seq;
}

double sequence_norm(const std::vector<cplx>& values,
                     const std::vector<double>& deltas, double p,
                     double weight_exponent) {
    if (values.size() != deltas.size())
        throw std::invalid_argument(
            "value and distance sequences must have equal length");
    if (!(p >= 1.0))
        throw std::invalid_argument("sequence norm requires p >= 1");
    NeumaierSum sum;
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double term =
            std::pow(deltas[k], weight_exponent) * std::abs(values[k]);
        sum.add(p == 1.0 ? term : std::pow(term, p));
    }
    return p == 1.0 ? sum.value() : std::pow(sum.value(), 1.0 / p);
}

double separation_margin(const PointSequence& seq) {
    const std::size_t n = seq.size();
    if (n < 2) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = k + 1; j < n; ++j)
            best = std::min(best,
                            kobayashi_distance(seq.points[k], seq.points[j]));
    return best;
}

// ---------------------------------------------------------------------------
// coupling sums

namespace {
// log-space single term; shared by every k_sum entry point so that the
// transpose symmetry K(p,q)[k][j] == K(q,p)[j][k] holds bit for bit
inline double coupling_term(double p_exp, double ld_k, double q_exp,
                            double ld_j, double exponent, double log_kernel) {
    return std::exp(p_exp * ld_k + q_exp * ld_j + exponent * log_kernel);
}
}  // namespace

double k_sum_term(const DomainSpec& dom, const PointSequence& seq,
                  double p_exp, double q_exp, std::size_t k, std::size_t j) {
    const double e = (p_exp + q_exp) / static_cast<double>(dom.n + 1);
    const double lK =
        log_kernel_abs(dom, seq.points[k].view(), seq.points[j].view());
    return coupling_term(p_exp, std::log(seq.deltas[k]), q_exp,
                         std::log(seq.deltas[j]), e, lK);
}

std::vector<double> k_sum_rows(const DomainSpec& dom,
                               const PointSequence& seq, double p_exp,
                               double q_exp, Diagonal diag) {
    const std::size_t n = seq.size();
    const double e = (p_exp + q_exp) / static_cast<double>(dom.n + 1);
    std::vector<double> ld(n);
    for (std::size_t k = 0; k < n; ++k) ld[k] = std::log(seq.deltas[k]);
    std::vector<double> rows(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        NeumaierSum sum;
        for (std::size_t j = 0; j < n; ++j) {
            if (diag == Diagonal::exclude && j == k) continue;
            const double lK = log_kernel_abs(dom, seq.points[k].view(),
                                             seq.points[j].view());
            sum.add(coupling_term(p_exp, ld[k], q_exp, ld[j], e, lK));
        }
        rows[k] = sum.value();
    }
    return rows;
}

double k_sum(const DomainSpec& dom, const PointSequence& seq, double p_exp,
             double q_exp, Diagonal diag) {
    const auto rows = k_sum_rows(dom, seq, p_exp, q_exp, diag);
    double sup = 0.0;
    for (double v : rows) sup = std::max(sup, v);
    return sup;
}

// ---------------------------------------------------------------------------
// lattice generation

Lattice generate_lattice(const DomainSpec& dom, double r,
                         const LatticeOptions& opts) {
    if (dom.n != 1)
        throw std::invalid_argument(
            "lattice generation is implemented for the disk (n = 1) only");
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("lattice radius must lie in (0, 1)");
    if (!(opts.delta_min > 0.0 && opts.delta_min < 0.5))
        throw std::invalid_argument("delta_min must lie in (0, 0.5)");
    if (!(opts.cand_spacing > 0.0) || !(opts.cert_spacing > 0.0))
        throw std::invalid_argument("grid spacings must be positive");

    const double h = opts.cand_spacing;
    const double sep_u = 2.0 * std::atanh(r / 3.0);
    const double cover_u = std::atanh(r);
    // half-diameter of one candidate grid cell in the Kobayashi metric:
    // radial half-gap h/2 plus angular half-gap h/2, with headroom
    const double cell_u = 0.78 * h;
    if (sep_u + cell_u >= cover_u)
        throw std::invalid_argument(
            "cand_spacing too coarse to certify covering at r = " +
            std::to_string(r) + "; need cand_spacing < " +
            std::to_string((cover_u - sep_u) / 0.78));

    const double t_sel = std::tanh(sep_u);  // pseudo-hyperbolic threshold
    const double u_max = std::atanh(1.0 - opts.delta_min);

    std::vector<double> ring_u;
    for (std::size_t j = 0; (static_cast<double>(j) + 0.5) * h < u_max; ++j)
        ring_u.push_back((static_cast<double>(j) + 0.5) * h);
    ring_u.push_back(u_max);  // outermost admissible circle, delta = delta_min

    DiskRingIndex index(0.1);
    std::vector<Point> centers;
    std::vector<double> c_rho, c_cos, c_sin;  // polar mirror for fast checks
    const double t_window = std::min(t_sel + 1e-9, 1.0 - 1e-15);

    for (std::size_t j = 0; j < ring_u.size(); ++j) {
        const double rho = std::tanh(ring_u[j]);
        const double circumference = 2.0 * kPi * rho / (1.0 - rho * rho);
        const auto m = static_cast<std::size_t>(
            std::max(8.0, std::ceil(circumference / h)));
        const double stagger = (j % 2 == 0) ? 0.0 : 0.5;
        for (std::size_t a = 0; a < m; ++a) {
            const double theta =
                2.0 * kPi * (static_cast<double>(a) + stagger) /
                static_cast<double>(m);
            const cplx cand = std::polar(rho, theta);
            const cplx cand_view[1] = {cand};
            const bool taken = index.visit(
                rho, theta, t_window,
                [&](const RingEntry& e, double, double) {
                    return pseudo_distance(
                               PointView(cand_view, 1),
                               centers[e.id].view()) < t_sel;
                });
            if (taken) continue;
            const auto id = static_cast<std::uint32_t>(centers.size());
            index.insert(rho, wrap_angle(theta), id);
            centers.emplace_back(cand);
            c_rho.push_back(rho);
            c_cos.push_back(std::cos(theta));
            c_sin.push_back(std::sin(theta));
        }
    }

    Lattice lat;
    lat.r = r;
    lat.R = 0.5 * (1.0 + r);
    lat.delta_min = opts.delta_min;
    lat.seq = PointSequence::make(std::move(centers));

    // --- certification ---------------------------------------------------
    LatticeCertification cert;
    cert.centers = lat.seq.size();
    cert.separation_threshold = t_sel;

    // pairwise separation: fast polar scan, re-measured with the canonical
    // metric for pairs near the threshold
    double min_pseudo = 1.0;
    const std::size_t nc = lat.seq.size();
    for (std::size_t k = 0; k < nc; ++k) {
        for (std::size_t j = k + 1; j < nc; ++j) {
            const double p2 = polar_pseudo_sq(c_rho[k], c_cos[k], c_sin[k],
                                              c_rho[j], c_cos[j], c_sin[j]);
            if (p2 < (t_sel + 1e-6) * (t_sel + 1e-6)) {
                min_pseudo = std::min(
                    min_pseudo,
                    pseudo_distance(lat.seq.points[k], lat.seq.points[j]));
            } else {
                min_pseudo = std::min(min_pseudo, std::sqrt(p2));
            }
        }
    }
    cert.min_pairwise_pseudo = nc >= 2 ? min_pseudo : 1.0;

    // covering and multiplicity sweep over a finer grid of the region
    // {delta >= delta_min}
    const double ct = opts.cert_spacing;
    const double r_sq = r * r;
    const double R_sq = lat.R * lat.R;
    const double t_probe = std::min(lat.R + 1e-9, 1.0 - 1e-15);
    std::size_t grid_points = 0, uncovered = 0, max_mult = 0;

    std::vector<double> probe_u;
    probe_u.push_back(0.0);  // origin
    for (std::size_t i = 0; (static_cast<double>(i) + 0.37) * ct < u_max; ++i)
        probe_u.push_back((static_cast<double>(i) + 0.37) * ct);
    probe_u.push_back(u_max);

    for (std::size_t i = 0; i < probe_u.size(); ++i) {
        const double rho = std::tanh(probe_u[i]);
        std::size_t m = 1;
        if (rho > 0.0) {
            const double circ = 2.0 * kPi * rho / (1.0 - rho * rho);
            m = static_cast<std::size_t>(std::max(8.0, std::ceil(circ / ct)));
        }
        for (std::size_t a = 0; a < m; ++a) {
            const double theta = 2.0 * kPi * (static_cast<double>(a) + 0.43) /
                                 static_cast<double>(m);
            ++grid_points;
            std::size_t mult = 0;
            bool covered = false;
            index.visit(rho, wrap_angle(theta), t_probe,
                        [&](const RingEntry& e, double cq, double sq) {
                            const double p2 =
                                polar_pseudo_sq(rho, cq, sq, e.rho, e.cos_t,
                                                e.sin_t);
                            if (p2 < R_sq) ++mult;
                            if (p2 < r_sq) covered = true;
                            return false;
                        });
            if (!covered) ++uncovered;
            max_mult = std::max(max_mult, mult);
        }
    }
    cert.grid_points = grid_points;
    cert.uncovered = uncovered;
    cert.max_multiplicity = max_mult;
    lat.cert = cert;
    return lat;
}

// ---------------------------------------------------------------------------
// Borel partition

struct PartitionSweep {
    // classification of one disk point against the lattice: the unique inner
    // ball containing it if any, otherwise the first r-ball, plus the count
    // of inner balls hit (> 1 would contradict disjointness)
    static void classify(const BorelPartition& part, cplx z,
                         std::optional<std::size_t>& idx,
                         std::size_t& inner_hits) {
        const Lattice& lat = part.lat_;
        const double rho = std::abs(z);
        const double theta = wrap_angle(std::arg(z));
        const double r = lat.r;
        const double inner_r = r / 3.0;
        const cplx zv[1] = {z};
        std::size_t best_inner = lat.seq.size();
        std::size_t best_outer = lat.seq.size();
        std::size_t hits = 0;
        part.index_->rings.visit(
            rho, theta, std::min(r + 1e-9, 1.0 - 1e-15),
            [&](const RingEntry& e, double, double) {
                const double d = pseudo_distance(PointView(zv, 1),
                                                 lat.seq.points[e.id].view());
                if (d < inner_r) {
                    ++hits;
                    best_inner = std::min<std::size_t>(best_inner, e.id);
                }
                if (d < r) best_outer = std::min<std::size_t>(best_outer, e.id);
                return false;
            });
        inner_hits = hits;
        if (best_inner < lat.seq.size())
            idx = best_inner;
        else if (best_outer < lat.seq.size())
            idx = best_outer;
        else
            idx = std::nullopt;
    }

};

BorelPartition::BorelPartition(Lattice lat) : lat_(std::move(lat)) {
    if (lat_.seq.points.empty() || lat_.seq.points.front().dim() != 1)
        throw std::invalid_argument(
            "Borel partitions are implemented for disk lattices only");
    auto idx = std::make_shared<PartitionIndex>(0.1);
    for (std::size_t k = 0; k < lat_.seq.size(); ++k) {
        const cplx c = lat_.seq.points[k].coords()[0];
        idx->rings.insert(std::abs(c), wrap_angle(std::arg(c)),
                          static_cast<std::uint32_t>(k));
    }
    index_ = std::move(idx);
}

std::optional<std::size_t> BorelPartition::index(cplx z) const {
    if (!(std::abs(z) < 1.0 - 1e-12))
        throw std::domain_error(
            "point is on or outside the domain boundary (||z|| >= 1 - 1e-12)");
    std::optional<std::size_t> idx;
    std::size_t hits = 0;
    PartitionSweep::classify(*this, z, idx, hits);
    return idx;
}

std::optional<std::size_t> BorelPartition::index(const Point& z) const {
    if (z.dim() != 1)
        throw std::invalid_argument("partition classifier expects disk points");
    return index(z.coords()[0]);
}

PartitionReport verify_partition(const BorelPartition& part,
                                 double grid_spacing) {
    if (!(grid_spacing > 0.0))
        throw std::invalid_argument("grid spacing must be positive");
    const Lattice& lat = part.lattice();
    const double u_max = std::atanh(1.0 - lat.delta_min);
    const double r = lat.r;
    PartitionReport rep;

    std::vector<double> probe_u;
    probe_u.push_back(0.0);
    for (std::size_t i = 0;
         (static_cast<double>(i) + 0.29) * grid_spacing < u_max; ++i)
        probe_u.push_back((static_cast<double>(i) + 0.29) * grid_spacing);
    probe_u.push_back(u_max);

    for (double u : probe_u) {
        const double rho = std::tanh(u);
        std::size_t m = 1;
        if (rho > 0.0) {
            const double circ = 2.0 * kPi * rho / (1.0 - rho * rho);
            m = static_cast<std::size_t>(
                std::max(8.0, std::ceil(circ / grid_spacing)));
        }
        for (std::size_t a = 0; a < m; ++a) {
            const double theta = 2.0 * kPi * (static_cast<double>(a) + 0.61) /
                                 static_cast<double>(m);
            const cplx z = std::polar(rho, theta);
            ++rep.grid_points;
            std::optional<std::size_t> idx;
            std::size_t inner_hits = 0;
            PartitionSweep::classify(part, z, idx, inner_hits);
            if (inner_hits > 1) ++rep.multiple_inner;
            if (!idx) {
                ++rep.unassigned;
                continue;
            }
            const cplx zv[1] = {z};
            const double d = pseudo_distance(PointView(zv, 1),
                                             lat.seq.points[*idx].view());
            if (!(d < r)) ++rep.outside_outer;
            if (inner_hits == 1) {
                // the inner ball owner must win the assignment
                bool owner_ok = d < r / 3.0;
                if (!owner_ok) ++rep.inner_mismatch;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// diagnostics

SequenceDiagnostics sequence_diagnostics(const DomainSpec& dom,
                                         const PointSequence& seq, double r) {
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("diagnostic radius must lie in (0, 1)");
    SequenceDiagnostics out;
    out.separation = separation_margin(seq);

    const double q = static_cast<double>(dom.n) + 2.0;
    out.carleson_q = q;
    AtomicMeasure mu;
    mu.atoms.reserve(seq.size());
    for (std::size_t k = 0; k < seq.size(); ++k)
        mu.atoms.push_back({seq.points[k], std::pow(seq.deltas[k], q)});
    const auto probes = default_carleson_grid(dom, mu);

    // local counts and the sup-over-domain coupling variant at (p,q) = (1,n+1)
    const double p_v = 1.0, q_v = static_cast<double>(dom.n) + 1.0;
    const double e_v = (p_v + q_v) / static_cast<double>(dom.n + 1);
    std::size_t sup_count = 0;
    double sup_coupling = 0.0;
    for (const auto& z : probes) {
        std::size_t count = 0;
        NeumaierSum sum;
        const double ldz = std::log(boundary_distance(z));
        for (std::size_t j = 0; j < seq.size(); ++j) {
            if (pseudo_distance(z, seq.points[j]) < r) ++count;
            const double lK =
                log_kernel_abs(dom, z.view(), seq.points[j].view());
            sum.add(coupling_term(p_v, ldz, q_v, std::log(seq.deltas[j]), e_v,
                                  lK));
        }
        sup_count = std::max(sup_count, count);
        sup_coupling = std::max(sup_coupling, sum.value());
    }
    out.sup_count = sup_count;
    out.sup_z_coupling = sup_coupling;

    // coupling sums over a small (p,q) grid with q > n, p <= q, evaluated in
    // one pass per pair over the node-pair matrix
    std::vector<std::pair<double, double>> pairs;
    for (double qq : {static_cast<double>(dom.n) + 0.5,
                      static_cast<double>(dom.n) + 1.0,
                      static_cast<double>(dom.n) + 2.0}) {
        for (double pp : {0.5 * qq, 1.0, qq}) {
            if (pp <= 0.0 || pp > qq) continue;
            if (std::find(pairs.begin(), pairs.end(),
                          std::make_pair(pp, qq)) == pairs.end())
                pairs.emplace_back(pp, qq);
        }
    }
    const std::size_t np = pairs.size();
    std::vector<double> e_list(np), sup_incl(np, 0.0), sup_excl(np, 0.0);
    for (std::size_t i = 0; i < np; ++i)
        e_list[i] =
            (pairs[i].first + pairs[i].second) / static_cast<double>(dom.n + 1);
    std::vector<double> ld(seq.size());
    for (std::size_t k = 0; k < seq.size(); ++k)
        ld[k] = std::log(seq.deltas[k]);
    std::vector<NeumaierSum> incl(np), excl(np);
    for (std::size_t k = 0; k < seq.size(); ++k) {
        for (auto& s : incl) s = NeumaierSum();
        for (auto& s : excl) s = NeumaierSum();
        for (std::size_t j = 0; j < seq.size(); ++j) {
            const double lK = log_kernel_abs(dom, seq.points[k].view(),
                                             seq.points[j].view());
            for (std::size_t i = 0; i < np; ++i) {
                const double term = coupling_term(pairs[i].first, ld[k],
                                                  pairs[i].second, ld[j],
                                                  e_list[i], lK);
                incl[i].add(term);
                if (j != k) excl[i].add(term);
            }
        }
        for (std::size_t i = 0; i < np; ++i) {
            sup_incl[i] = std::max(sup_incl[i], incl[i].value());
            sup_excl[i] = std::max(sup_excl[i], excl[i].value());
        }
    }
    out.coupling.reserve(np);
    for (std::size_t i = 0; i < np; ++i)
        out.coupling.push_back(
            {pairs[i].first, pairs[i].second, sup_incl[i], sup_excl[i]});

    const auto carleson =
        carleson_test(dom, mu, q - static_cast<double>(dom.n) - 1.0, r,
                      probes);
    out.carleson_constant = carleson.constant;
    return out;
}

}  // namespace bergman
