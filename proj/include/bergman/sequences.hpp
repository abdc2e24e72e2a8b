#pragma once

// Sequence-space machinery: weighted lp norms on node sequences, separation
// margins, greedy r-lattice generation on the disk with certification, the
// first-fit Borel partition subordinate to a lattice, and the K({a_k},p,q)
// coupling sums that control the interpolation operators.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/integration.hpp"

namespace bergman {

struct PartitionIndex;  // spatial index over lattice centers (internal)

struct PointSequence {
    std::vector<Point> points;
    std::vector<double> deltas;  // cached boundary distances

    static PointSequence make(std::vector<Point> pts);
    std::size_t size() const { return points.size(); }
};

// Target values v with the lp_beta' convention: finite norm of
// {delta(a_k)^{beta'} v_k} in lp.
struct WeightedValueSequence {
    std::vector<cplx> values;
    double weight_exponent = 0.0;
};

// (sum_k (delta_k^{weight_exponent} |v_k|)^p)^{1/p}
double sequence_norm(const std::vector<cplx>& values,
                     const std::vector<double>& deltas, double p,
                     double weight_exponent);
inline double sequence_norm(const WeightedValueSequence& v,
                            const std::vector<double>& deltas, double p) {
    return sequence_norm(v.values, deltas, p, v.weight_exponent);
}

// min over pairs of the Kobayashi distance; +infinity for < 2 points.
double separation_margin(const PointSequence& seq);

// ---------------------------------------------------------------------------
// coupling sums K({a_k}, p, q) = sup_k sum_j d_k^p d_j^q |K(a_k,a_j)|^{(p+q)/(n+1)}

enum class Diagonal { include, exclude };

// one term of the double sum, evaluated in log space
double k_sum_term(const DomainSpec& dom, const PointSequence& seq,
                  double p_exp, double q_exp, std::size_t k, std::size_t j);
std::vector<double> k_sum_rows(const DomainSpec& dom,
                               const PointSequence& seq, double p_exp,
                               double q_exp, Diagonal diag);
double k_sum(const DomainSpec& dom, const PointSequence& seq, double p_exp,
             double q_exp, Diagonal diag);

// ---------------------------------------------------------------------------
// lattices

struct LatticeCertification {
    std::size_t centers = 0;
    double min_pairwise_pseudo = 0.0;   // >= separation threshold
    double separation_threshold = 0.0;  // tanh(2 arctanh(r/3))
    std::size_t max_multiplicity = 0;   // sup of N(z, R) over the grid
    std::size_t uncovered = 0;          // grid points missed by all B(a_k,r)
    std::size_t grid_points = 0;
};

struct Lattice {
    PointSequence seq;
    double r = 0.0;
    double R = 0.0;  // (1+r)/2
    double delta_min = 0.0;
    LatticeCertification cert;
};

struct LatticeOptions {
    double delta_min = 1e-3;
    double cand_spacing = 0.05;  // candidate ring spacing, arctanh scale
    double cert_spacing = 0.03;  // certification grid spacing
};

// Greedy maximal set with pairwise Kobayashi distance >= 2 arctanh(r/3),
// drawn from a fine ring grid of {delta >= delta_min}; deterministic
// (candidates ordered by decreasing delta, then angle).  Certifies
// covering, r/3-disjointness and bounded multiplicity on a finer grid.
// Disk (n = 1) only.
Lattice generate_lattice(const DomainSpec& dom, double r,
                         const LatticeOptions& opts = {});

// ---------------------------------------------------------------------------
// Borel partition D_k subordinate to a lattice: B(a_k,r/3) <= D_k <= B(a_k,r),
// pairwise disjoint, covering.  The classifier realizes the first-index
// construction D_k = E_k \ union of earlier D_i with
// E_k = B(a_k,r) - union_{j != k} B(a_j, r/3), which reduces to: a point in
// some inner ball belongs to that ball's index, otherwise to the first
// (lattice-order) r-ball containing it.
class BorelPartition {
  public:
    explicit BorelPartition(Lattice lat);

    const Lattice& lattice() const { return lat_; }
    // index of D_k containing z, or nullopt if z is outside every r-ball
    std::optional<std::size_t> index(const Point& z) const;
    std::optional<std::size_t> index(cplx z) const;  // disk fast path

  private:
    Lattice lat_;
    std::shared_ptr<const PartitionIndex> index_;
    friend struct PartitionSweep;
};

struct PartitionReport {
    std::size_t grid_points = 0;
    std::size_t unassigned = 0;           // violations of covering
    std::size_t inner_mismatch = 0;       // z in B(a_k,r/3) but index != k
    std::size_t outside_outer = 0;        // index k but z outside B(a_k,r)
    std::size_t multiple_inner = 0;       // z in two inner balls (disjointness)
};
// grid sweep over {delta >= lattice delta_min} checking the partition
// conditions pointwise
PartitionReport verify_partition(const BorelPartition& part,
                                 double grid_spacing = 0.03);

// ---------------------------------------------------------------------------
// diagnostic battery tying together the equivalent finiteness conditions
// (bounded local counts, coupling sums, the sup-over-z variant, and the
// Carleson constant of the induced atomic measure)

struct SequenceDiagnostics {
    double separation = 0.0;  // margin (Kobayashi)
    std::size_t sup_count = 0;           // sup_z N(z, r, {a_k}) over probes
    struct CoupleValue {
        double p = 0.0, q = 0.0;
        double include_diag = 0.0, exclude_diag = 0.0;
    };
    std::vector<CoupleValue> coupling;   // over a (p,q) grid with q > n
    double sup_z_coupling = 0.0;         // sup_z sum_j d(z)^p d_j^q |K(z,a_j)|^e
    double carleson_constant = 0.0;      // of sum d_j^q delta_{a_j}, beta=q-n-1
    double carleson_q = 0.0;
};
SequenceDiagnostics sequence_diagnostics(const DomainSpec& dom,
                                         const PointSequence& seq, double r);

}  // namespace bergman
