#pragma once

// Construction of interpolating functions in A^p_beta along separated
// sequences: kernel-power extension operators, the Neumann-series solver
// with its contraction diagnostics, a direct (SVD) oracle solver, Möbius
// transport of interpolation problems, and single-point augmentation.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/integration.hpp"
#include "bergman/kernel.hpp"
#include "bergman/sequences.hpp"

namespace bergman {

// ---------------------------------------------------------------------------
// finite kernel-power combinations

// One summand  coeff * K(., base)^exponent  (power in the first argument,
// principal branch).
struct InterpTerm {
    cplx coeff{0.0, 0.0};
    Point base;
    double exponent = 1.0;
};

// f(z) = offset + sum_k coeff_k K(z, base_k)^{s_k}; the closure under
// addition and scalar multiples of all the extension schemes below.
class Interpolant {
  public:
    Interpolant() = default;
    explicit Interpolant(std::vector<InterpTerm> terms, cplx offset = 0.0);

    const std::vector<InterpTerm>& terms() const { return terms_; }
    cplx offset() const { return offset_; }

    cplx evaluate(const DomainSpec& dom, PointView z) const;
    cplx evaluate(const DomainSpec& dom, const Point& z) const {
        return evaluate(dom, z.view());
    }
    // self-contained closure (copies the term list)
    HoloFn as_function(const DomainSpec& dom) const;

    // the distinct kernel-power growth exponents (n+1)s_k, suitable as the
    // known_exponents hint of weighted_norm
    std::vector<double> kernel_exponents(const DomainSpec& dom) const;

    Interpolant scaled(cplx factor) const;
    // sum of two combinations, consolidating terms with identical
    // (base, exponent)
    static Interpolant merge(const Interpolant& a, const Interpolant& b);

  private:
    std::vector<InterpTerm> terms_;
    cplx offset_{0.0, 0.0};
};

// ---------------------------------------------------------------------------
// problems and extension schemes

enum class Scheme {
    p1,        // p = 1 scheme with free parameter m > 0
    general_p  // p > 1 scheme
};

struct InterpolationProblem {
    PointSequence seq;
    std::vector<cplx> targets;
    SpaceParams space;
    Scheme scheme = Scheme::p1;
    double m = 1.0;  // only read by the p1 scheme

    // validates shape and scheme/parameter consistency
    static InterpolationProblem make(PointSequence seq,
                                     std::vector<cplx> targets,
                                     SpaceParams space, Scheme scheme,
                                     double m = 1.0);

    // kernel-power exponent s of the scheme's dictionary:
    //   p1:        (n+1+beta+m)/(n+1)
    //   general_p: (n+1+beta)/(n+1)
    double exponent() const;
    // lp norm of the targets under the delta^{(n+1+beta)/p} weight
    double target_norm() const;
};

// values f(a_k) with the canonical weight exponent (n+1+beta)/p
WeightedValueSequence restrict_to_nodes(const DomainSpec& dom, const HoloFn& f,
                                        const PointSequence& seq,
                                        const SpaceParams& space);
WeightedValueSequence restrict_to_nodes(const DomainSpec& dom,
                                        const Interpolant& f,
                                        const PointSequence& seq,
                                        const SpaceParams& space);

// the one-shot extensions E(v); exact at the nodes only in the limit of
// infinitely separated sequences (the Neumann solver corrects the rest)
Interpolant extend_p1(const DomainSpec& dom, const InterpolationProblem& prob);
Interpolant extend_general_p(const DomainSpec& dom,
                             const InterpolationProblem& prob);

// ---------------------------------------------------------------------------
// Neumann-series solver

struct NeumannTrace {
    // residual history, entry 0 = the targets themselves
    std::vector<double> residual_norms;  // weighted lp sequence norms
    std::vector<double> residual_sups;   // sup_k |r_k|
    std::vector<double> ratios;          // residual_norms[i+1]/residual_norms[i]
    std::size_t iterations = 0;
    bool converged = false;

    // coupling sums of the scheme's exponent pair over the node sequence
    double coupling_incl = 0.0;
    double coupling_excl = 0.0;
    // exact weighted-operator bound on every residual ratio: the
    // Riesz-Thorin interpolant (max col sum)^{1/p} (max row sum)^{1/q} of
    // the weighted off-diagonal coupling matrix
    double operator_bound = 0.0;
    double measured_contraction = 0.0;  // max of ratios
    // "proved"                 operator_bound < 1
    // "empirical-contraction"  operator_bound >= 1 but all measured ratios < 1
    // "none"                   neither
    std::string contraction_tag;

    // honest node residuals of the assembled function, re-evaluated through
    // Interpolant::evaluate rather than read off the iteration
    double final_sup_residual = 0.0;
    double final_norm_residual = 0.0;
};

struct NeumannSolution {
    Interpolant f;
    NeumannTrace trace;
};

// Iterates gamma <- gamma + r, r <- r - A r on the node-collocation system
// A gamma = v with the column-normalized dictionary
//   A_{kj} = K(a_k, a_j)^s / K(a_j, a_j)^s     (unit diagonal),
// accumulating the Neumann series of I - A.  Stops once both the sup and
// the weighted lp residual norms are <= tol (absolute).  On non-convergence
// returns the best iterate seen with converged = false; never throws for
// that reason.
NeumannSolution solve_neumann(const DomainSpec& dom,
                              const InterpolationProblem& prob, double tol,
                              std::size_t max_iter);

// ---------------------------------------------------------------------------
// direct oracle

struct OracleSolution {
    Interpolant f;
    double condition = 0.0;  // SVD condition number of the collocation matrix
    bool regularized = false;
    double max_node_residual = 0.0;
};

// Solves the same collocation system by full SVD.  Coincident nodes make
// the system exactly singular and throw ConvergenceError; a condition
// number beyond 1e14 triggers a Tikhonov-damped solve, returned with
// regularized = true.
OracleSolution oracle_solve(const DomainSpec& dom,
                            const InterpolationProblem& prob);

// ---------------------------------------------------------------------------
// restriction bound (empirical)

struct RestrictionEstimate {
    double sup_ratio = 0.0;       // max over trials of ||f|_seq|| / ||f||
    std::vector<double> ratios;   // per-trial values
};

// Random finite kernel-power combinations, testing the embedding
// ||{f(a_k)}||_{lp, (n+1+beta)/p} <= C ||f||_{A^p_beta} on a separated
// sequence.  Requires separation_margin(seq) > 0.
RestrictionEstimate restriction_norm_estimate(const DomainSpec& dom,
                                              const PointSequence& seq,
                                              const SpaceParams& space,
                                              std::size_t trials,
                                              std::uint64_t seed,
                                              const QuadratureRule& quad);

// ---------------------------------------------------------------------------
// tail truncation for eventually-interpolating sequences

struct TruncationResult {
    std::size_t start = 0;     // first retained index (0-based)
    bool contracts = false;    // both tail coupling sums < 1
    double k_forward = 0.0;    // include-diagonal K(tail, (n+1+b)/p, (n+1+b)/q)
    double k_transposed = 0.0; // the swapped pair
    double tail_sum = 0.0;     // sum_{j>=start} delta_j^{(n+1+beta)/(2p)}
};

// For a sequence sorted by non-increasing boundary distance, finds the
// smallest tail on which both include-diagonal coupling sums of the pair
// ((n+1+beta)/p, (n+1+beta)/q) drop below 1, where q is the true conjugate
// exponent (the p = 1 case pairs with exponent 0).  Validates the weight
// range (p = 1 needs beta > n-1; p > 1 needs beta > max{n(2p-1)-1,
// n(2q-1)-1}) and throws HypothesisError naming the violated inequality.
TruncationResult contraction_truncation(const DomainSpec& dom,
                                        const PointSequence& seq,
                                        const SpaceParams& space);

// ---------------------------------------------------------------------------
// Möbius transport of interpolation problems

struct TransportPlan {
    Point basepoint;             // c, the Möbius parameter
    double power = 0.0;          // e = 2(n+1+beta)/((n+1)p)
    InterpolationProblem modified;  // same nodes, targets K(a_k,c)^e v_k
    std::vector<Point> images;   // phi_c(a_k), nodes of the pulled-back data
};

// Builds the transported problem: solving `modified` and applying
// transport_pull yields a function taking the original values v_k at the
// image points phi_c(a_k).
TransportPlan transport(const DomainSpec& dom,
                        const InterpolationProblem& prob,
                        const Point& basepoint);

// T f = K(., c)^e  f(phi_c(.))   and its inverse
// S g = K(phi_c(.), c)^{-e} g(phi_c(.)); S(T f) = f identically.
HoloFn transport_push(const DomainSpec& dom, const Point& basepoint,
                      double power, HoloFn f);
HoloFn transport_pull(const DomainSpec& dom, const Point& basepoint,
                      double power, HoloFn g);

// ---------------------------------------------------------------------------
// single-point augmentation

// Kernel-power combination on the nodes of seq plus b (dictionary exponent
// s = `exponent`) vanishing at every a_k with value 1 at b, built by direct
// solve.  Throws ConvergenceError when the augmented collocation system is
// numerically singular.
Interpolant vanishing_function(const DomainSpec& dom, const PointSequence& seq,
                               const Point& b, double exponent);

// F = g + ((v0 - g(b)) / f(b)) f, where g interpolates on seq and f
// vanishes on seq with f(b) != 0.  Checks both hypotheses to `tol` and
// throws HypothesisError when either fails.
Interpolant augment_point(const DomainSpec& dom, const Interpolant& g,
                          const Interpolant& vanishing,
                          const PointSequence& seq, const Point& b, cplx v0,
                          double tol);

}  // namespace bergman
