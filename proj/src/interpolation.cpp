#include "bergman/interpolation.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <utility>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

namespace {

bool finite(cplx v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

// ---------------------------------------------------------------------------
// the column-normalized collocation matrix
//
//   A_{kj} = K(a_k, a_j)^s / K(a_j, a_j)^s
//          = [(1 - ||a_j||^2) / (1 - <a_k, a_j>)]^{(n+1)s},
//
// assembled in log space so that deep points neither overflow nor lose the
// phase; the diagonal is 1 exactly.
std::vector<cplx> collocation_matrix(const DomainSpec& dom,
                                     const std::vector<Point>& pts, double s) {
    const std::size_t N = pts.size();
    const double growth = (static_cast<double>(dom.n) + 1.0) * s;
    std::vector<double> logx(N);
    for (std::size_t j = 0; j < N; ++j)
        logx[j] = std::log(one_minus_sqnorm(pts[j].view()));

    std::vector<cplx> a(N * N);
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t j = 0; j < N; ++j) {
            if (j == k) {
                a[k * N + j] = cplx{1.0, 0.0};
                continue;
            }
            const cplx omi =
                one_minus_inner(pts[k].view(), pts[j].view());
            const double mag =
                std::exp(growth * (logx[j] - std::log(std::abs(omi))));
            a[k * N + j] = std::polar(mag, -growth * std::arg(omi));
        }
    }
    return a;
}

// gamma_j -> coefficient of K(., a_j)^s:  c_j = gamma_j / K(a_j, a_j)^s
std::vector<InterpTerm> dictionary_terms(const DomainSpec& dom,
                                         const std::vector<Point>& pts,
                                         double s,
                                         const std::vector<cplx>& gamma) {
    const double growth = (static_cast<double>(dom.n) + 1.0) * s;
    const double logc = std::log(dom.kernel_norm);
    std::vector<InterpTerm> terms;
    terms.reserve(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
        const double logx = std::log(one_minus_sqnorm(pts[j].view()));
        const cplx coeff = gamma[j] * std::exp(growth * logx - s * logc);
        terms.push_back({coeff, pts[j], s});
    }
    return terms;
}

double sup_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const cplx& x : v) m = std::max(m, std::abs(x));
    return m;
}

struct DirectSolve {
    std::vector<cplx> gamma;
    double condition = 0.0;
    bool regularized = false;
};

// full-SVD solve of the normalized collocation system
DirectSolve solve_collocation(const DomainSpec& dom,
                              const std::vector<Point>& pts, double s,
                              const std::vector<cplx>& rhs) {
    const std::size_t N = pts.size();
    for (std::size_t k = 0; k + 1 < N; ++k) {
        for (std::size_t j = k + 1; j < N; ++j) {
            if (pseudo_distance(pts[k], pts[j]) == 0.0) {
                std::ostringstream msg;
                msg << "collocation matrix is singular: nodes " << k
                    << " and " << j << " coincide";
                throw ConvergenceError(msg.str());
            }
        }
    }

    const std::vector<cplx> a = collocation_matrix(dom, pts, s);
    Eigen::MatrixXcd m(N, N);
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t j = 0; j < N; ++j)
            m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
                a[k * N + j];
    Eigen::VectorXcd b(N);
    for (std::size_t k = 0; k < N; ++k)
        b(static_cast<Eigen::Index>(k)) = rhs[k];

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    const double cond =
        smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();

    DirectSolve out;
    out.condition = cond;
    Eigen::VectorXcd x;
    if (cond <= 1e14) {
        x = svd.solve(b);
    } else {
        // Tikhonov-damped pseudoinverse; flagged, not fatal
        out.regularized = true;
        const double lambda = smax * 1e-14;
        Eigen::VectorXcd y = svd.matrixU().adjoint() * b;
        for (Eigen::Index i = 0; i < y.size(); ++i)
            y(i) *= sv(i) / (sv(i) * sv(i) + lambda * lambda);
        x = svd.matrixV() * y;
    }
    out.gamma.resize(N);
    for (std::size_t k = 0; k < N; ++k)
        out.gamma[k] = x(static_cast<Eigen::Index>(k));
    return out;
}

// true conjugate exponent; +infinity when p = 1
double conjugate_exponent(double p) {
    return p > 1.0 ? p / (p - 1.0) : std::numeric_limits<double>::infinity();
}

}  // namespace

// ---------------------------------------------------------------------------
// Interpolant

Interpolant::Interpolant(std::vector<InterpTerm> terms, cplx offset)
    : terms_(std::move(terms)), offset_(offset) {
    for (const InterpTerm& t : terms_) {
        if (!finite(t.coeff))
            throw std::invalid_argument("Interpolant: non-finite coefficient");
        if (!(t.exponent > 0.0) || !std::isfinite(t.exponent))
            throw std::invalid_argument(
                "Interpolant: kernel-power exponents must be positive");
    }
    if (!finite(offset_))
        throw std::invalid_argument("Interpolant: non-finite offset");
}

cplx Interpolant::evaluate(const DomainSpec& dom, PointView z) const {
    if (z.size() != dom.n)
        throw std::invalid_argument(
            "Interpolant::evaluate: point dimension does not match domain");
    cplx acc = offset_;
    for (const InterpTerm& t : terms_) {
        if (t.base.dim() != dom.n)
            throw std::invalid_argument(
                "Interpolant::evaluate: term base dimension does not match "
                "domain");
        acc += t.coeff * kernel_power_view(dom, t.base.view(), t.exponent, z);
    }
    return acc;
}

HoloFn Interpolant::as_function(const DomainSpec& dom) const {
    return [copy = *this, dom](PointView z) { return copy.evaluate(dom, z); };
}

std::vector<double> Interpolant::kernel_exponents(const DomainSpec& dom) const {
    std::vector<double> out;
    out.reserve(terms_.size());
    for (const InterpTerm& t : terms_)
        out.push_back((static_cast<double>(dom.n) + 1.0) * t.exponent);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Interpolant Interpolant::scaled(cplx factor) const {
    std::vector<InterpTerm> terms = terms_;
    for (InterpTerm& t : terms) t.coeff *= factor;
    return Interpolant(std::move(terms), offset_ * factor);
}

Interpolant Interpolant::merge(const Interpolant& a, const Interpolant& b) {
    std::vector<InterpTerm> terms = a.terms_;
    for (const InterpTerm& tb : b.terms_) {
        bool absorbed = false;
        for (InterpTerm& ta : terms) {
            if (ta.exponent == tb.exponent &&
                ta.base.coords() == tb.base.coords()) {
                ta.coeff += tb.coeff;
                absorbed = true;
                break;
            }
        }
        if (!absorbed) terms.push_back(tb);
    }
    return Interpolant(std::move(terms), a.offset_ + b.offset_);
}

// ---------------------------------------------------------------------------
// problems

InterpolationProblem InterpolationProblem::make(PointSequence seq,
                                                std::vector<cplx> targets,
                                                SpaceParams space,
                                                Scheme scheme, double m) {
    if (seq.size() == 0)
        throw std::invalid_argument(
            "InterpolationProblem: need at least one node");
    if (targets.size() != seq.size())
        throw std::invalid_argument(
            "InterpolationProblem: targets and nodes differ in length");
    for (const cplx& v : targets)
        if (!finite(v))
            throw std::invalid_argument(
                "InterpolationProblem: non-finite target value");
    if (seq.points.front().dim() != space.n)
        throw std::invalid_argument(
            "InterpolationProblem: node dimension does not match the space");
    if (scheme == Scheme::p1) {
        if (space.p != 1.0)
            throw std::invalid_argument(
                "InterpolationProblem: the p1 scheme requires p = 1");
        if (!(m > 0.0) || !std::isfinite(m))
            throw std::invalid_argument(
                "InterpolationProblem: the p1 scheme requires m > 0");
    } else {
        if (!(space.p > 1.0))
            throw std::invalid_argument(
                "InterpolationProblem: the general_p scheme requires p > 1");
    }
    InterpolationProblem prob;
    prob.seq = std::move(seq);
    prob.targets = std::move(targets);
    prob.space = space;
    prob.scheme = scheme;
    prob.m = m;
    return prob;
}

double InterpolationProblem::exponent() const {
    const double n1 = static_cast<double>(space.n) + 1.0;
    if (scheme == Scheme::p1) return (n1 + space.beta + m) / n1;
    return (n1 + space.beta) / n1;
}

double InterpolationProblem::target_norm() const {
    return sequence_norm(targets, seq.deltas, space.p,
                         space.weight_exponent());
}

// ---------------------------------------------------------------------------
// restriction and extension

WeightedValueSequence restrict_to_nodes(const DomainSpec&, const HoloFn& f,
                                        const PointSequence& seq,
                                        const SpaceParams& space) {
    WeightedValueSequence out;
    out.weight_exponent = space.weight_exponent();
    out.values.reserve(seq.size());
    for (const Point& a : seq.points) out.values.push_back(f(a.view()));
    return out;
}

WeightedValueSequence restrict_to_nodes(const DomainSpec& dom,
                                        const Interpolant& f,
                                        const PointSequence& seq,
                                        const SpaceParams& space) {
    WeightedValueSequence out;
    out.weight_exponent = space.weight_exponent();
    out.values.reserve(seq.size());
    for (const Point& a : seq.points)
        out.values.push_back(f.evaluate(dom, a));
    return out;
}

Interpolant extend_p1(const DomainSpec&, const InterpolationProblem& prob) {
    if (prob.scheme != Scheme::p1)
        throw std::invalid_argument("extend_p1: problem uses another scheme");
    const double s = prob.exponent();
    const double w = static_cast<double>(prob.space.n) + 1.0 +
                     prob.space.beta + prob.m;
    std::vector<InterpTerm> terms;
    for (std::size_t k = 0; k < prob.seq.size(); ++k) {
        const cplx coeff =
            prob.targets[k] * std::pow(prob.seq.deltas[k], w);
        if (coeff == cplx{0.0, 0.0}) continue;
        terms.push_back({coeff, prob.seq.points[k], s});
    }
    return Interpolant(std::move(terms));
}

Interpolant extend_general_p(const DomainSpec&,
                             const InterpolationProblem& prob) {
    if (prob.scheme != Scheme::general_p)
        throw std::invalid_argument(
            "extend_general_p: problem uses another scheme");
    const double s = prob.exponent();
    const double w =
        static_cast<double>(prob.space.n) + 1.0 + prob.space.beta;
    std::vector<InterpTerm> terms;
    for (std::size_t k = 0; k < prob.seq.size(); ++k) {
        const cplx coeff =
            prob.targets[k] * std::pow(prob.seq.deltas[k], w);
        if (coeff == cplx{0.0, 0.0}) continue;
        terms.push_back({coeff, prob.seq.points[k], s});
    }
    return Interpolant(std::move(terms));
}

// ---------------------------------------------------------------------------
// Neumann solver

NeumannSolution solve_neumann(const DomainSpec& dom,
                              const InterpolationProblem& prob, double tol,
                              std::size_t max_iter) {
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw std::invalid_argument("solve_neumann: tol must be positive");

    const std::size_t N = prob.seq.size();
    const std::vector<Point>& pts = prob.seq.points;
    const std::vector<double>& deltas = prob.seq.deltas;
    const SpaceParams& sp = prob.space;
    const double p = sp.p;
    const double wexp = sp.weight_exponent();
    const double s = prob.exponent();

    NeumannTrace trace;

    // coupling sums of the scheme's exponent pair
    {
        const double nb = static_cast<double>(sp.n) + 1.0 + sp.beta;
        double pe, qe;
        if (prob.scheme == Scheme::p1) {
            pe = prob.m;
            qe = nb;
        } else {
            pe = nb / p;
            qe = nb / conjugate_exponent(p);
        }
        trace.coupling_incl =
            k_sum(dom, prob.seq, pe, qe, Diagonal::include);
        trace.coupling_excl =
            k_sum(dom, prob.seq, pe, qe, Diagonal::exclude);
    }

    const std::vector<cplx> a = collocation_matrix(dom, pts, s);

    // exact l^p operator bound on I - A in the delta^{(n+1+beta)/p} weights,
    // by Riesz-Thorin between the column-sum (l^1) and row-sum (l^inf) norms
    {
        std::vector<double> w(N);
        for (std::size_t k = 0; k < N; ++k)
            w[k] = std::pow(deltas[k], wexp);
        double rowmax = 0.0, colmax = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
            double row = 0.0, col = 0.0;
            for (std::size_t j = 0; j < N; ++j) {
                if (j == k) continue;
                row += w[k] / w[j] * std::abs(a[k * N + j]);
                col += w[j] / w[k] * std::abs(a[j * N + k]);
            }
            rowmax = std::max(rowmax, row);
            colmax = std::max(colmax, col);
        }
        if (rowmax == 0.0 || colmax == 0.0)
            trace.operator_bound = 0.0;
        else
            trace.operator_bound = std::exp(std::log(colmax) / p +
                                            std::log(rowmax) * (1.0 - 1.0 / p));
    }

    std::vector<cplx> r = prob.targets;
    std::vector<cplx> gamma(N, cplx{0.0, 0.0});
    std::vector<cplx> best_gamma = gamma;

    trace.residual_norms.push_back(sequence_norm(r, deltas, p, wexp));
    trace.residual_sups.push_back(sup_abs(r));
    double best_norm = trace.residual_norms.back();
    trace.converged = trace.residual_sups.back() <= tol &&
                      trace.residual_norms.back() <= tol;

    std::vector<cplx> rnext(N);
    for (std::size_t it = 1; !trace.converged && it <= max_iter; ++it) {
        for (std::size_t k = 0; k < N; ++k) gamma[k] += r[k];
        // r <- (I - A) r; the unit diagonal cancels exactly, leaving the
        // off-diagonal sum
        for (std::size_t k = 0; k < N; ++k) {
            cplx acc{0.0, 0.0};
            for (std::size_t j = 0; j < N; ++j) {
                if (j == k) continue;
                acc += a[k * N + j] * r[j];
            }
            rnext[k] = -acc;
        }
        r.swap(rnext);
        trace.iterations = it;

        const double nrm = sequence_norm(r, deltas, p, wexp);
        const double sup = sup_abs(r);
        if (trace.residual_norms.back() > 0.0)
            trace.ratios.push_back(nrm / trace.residual_norms.back());
        trace.residual_norms.push_back(nrm);
        trace.residual_sups.push_back(sup);

        if (nrm < best_norm) {
            best_norm = nrm;
            best_gamma = gamma;
        }
        trace.converged = sup <= tol && nrm <= tol;
    }
    if (!trace.converged) gamma = best_gamma;

    trace.measured_contraction = 0.0;
    for (double q : trace.ratios)
        trace.measured_contraction = std::max(trace.measured_contraction, q);
    if (trace.operator_bound < 1.0)
        trace.contraction_tag = "proved";
    else if (!trace.ratios.empty() && trace.measured_contraction < 1.0)
        trace.contraction_tag = "empirical-contraction";
    else
        trace.contraction_tag = "none";

    NeumannSolution sol;
    sol.f = Interpolant(dictionary_terms(dom, pts, s, gamma));

    // honest node residuals, re-evaluated through the assembled function
    std::vector<cplx> node_res(N);
    for (std::size_t k = 0; k < N; ++k)
        node_res[k] = sol.f.evaluate(dom, pts[k]) - prob.targets[k];
    trace.final_sup_residual = sup_abs(node_res);
    trace.final_norm_residual = sequence_norm(node_res, deltas, p, wexp);

    sol.trace = std::move(trace);
    return sol;
}

// ---------------------------------------------------------------------------
// oracle

OracleSolution oracle_solve(const DomainSpec& dom,
                            const InterpolationProblem& prob) {
    const double s = prob.exponent();
    DirectSolve ds =
        solve_collocation(dom, prob.seq.points, s, prob.targets);

    OracleSolution out;
    out.condition = ds.condition;
    out.regularized = ds.regularized;
    out.f = Interpolant(dictionary_terms(dom, prob.seq.points, s, ds.gamma));
    for (std::size_t k = 0; k < prob.seq.size(); ++k) {
        const double res = std::abs(
            out.f.evaluate(dom, prob.seq.points[k]) - prob.targets[k]);
        out.max_node_residual = std::max(out.max_node_residual, res);
    }
    return out;
}

// ---------------------------------------------------------------------------
// restriction bound

RestrictionEstimate restriction_norm_estimate(const DomainSpec& dom,
                                              const PointSequence& seq,
                                              const SpaceParams& space,
                                              std::size_t trials,
                                              std::uint64_t seed,
                                              const QuadratureRule& quad) {
    if (seq.size() == 0)
        throw std::invalid_argument(
            "restriction_norm_estimate: empty sequence");
    if (!(separation_margin(seq) > 0.0))
        throw std::invalid_argument(
            "restriction_norm_estimate: sequence must be separated "
            "(positive Kobayashi margin)");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const double n1 = static_cast<double>(space.n) + 1.0;
    RestrictionEstimate out;
    out.ratios.reserve(trials);

    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t nterms = 3 + static_cast<std::size_t>(rng() % 3);
        std::vector<InterpTerm> terms;
        terms.reserve(nterms);
        for (std::size_t i = 0; i < nterms; ++i) {
            // base at log-uniform boundary distance, random direction
            const double delta =
                std::exp(std::log(0.05) +
                         unif(rng) * (std::log(0.9) - std::log(0.05)));
            std::vector<cplx> dir(dom.n);
            double norm2 = 0.0;
            do {
                norm2 = 0.0;
                for (cplx& c : dir) {
                    c = cplx{gauss(rng), gauss(rng)};
                    norm2 += std::norm(c);
                }
            } while (norm2 == 0.0);
            const double scale = (1.0 - delta) / std::sqrt(norm2);
            for (cplx& c : dir) c *= scale;

            const double mi = 1.0 + static_cast<double>(rng() % 3);
            const double si = (n1 + space.beta + mi) / n1;
            terms.push_back(
                {cplx{gauss(rng), gauss(rng)}, Point(std::move(dir)), si});
        }
        const Interpolant f(std::move(terms));

        std::vector<cplx> values(seq.size());
        for (std::size_t k = 0; k < seq.size(); ++k)
            values[k] = f.evaluate(dom, seq.points[k]);
        const double num = sequence_norm(values, seq.deltas, space.p,
                                         space.weight_exponent());
        const double den =
            weighted_norm(dom, f.as_function(dom), space, quad,
                          f.kernel_exponents(dom))
                .value;
        const double ratio = den > 0.0 ? num / den : 0.0;
        out.ratios.push_back(ratio);
        out.sup_ratio = std::max(out.sup_ratio, ratio);
    }
    return out;
}

// ---------------------------------------------------------------------------
// tail truncation

TruncationResult contraction_truncation(const DomainSpec& dom,
                                        const PointSequence& seq,
                                        const SpaceParams& space) {
    if (seq.size() == 0)
        throw std::invalid_argument("contraction_truncation: empty sequence");
    const double n = static_cast<double>(space.n);
    const double p = space.p;

    if (p == 1.0) {
        if (!(space.beta > n - 1.0)) {
            std::ostringstream msg;
            msg << "weight out of range for p = 1: requires beta > n - 1 = "
                << n - 1.0 << ", got beta = " << space.beta;
            throw HypothesisError(msg.str());
        }
    } else {
        const double q = conjugate_exponent(p);
        const double thr =
            std::max(n * (2.0 * p - 1.0) - 1.0, n * (2.0 * q - 1.0) - 1.0);
        if (!(space.beta > thr)) {
            std::ostringstream msg;
            msg << "weight out of range for p > 1: requires beta > "
                   "max{n(2p-1)-1, n(2q-1)-1} = "
                << thr << ", got beta = " << space.beta;
            throw HypothesisError(msg.str());
        }
    }
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (seq.deltas[i + 1] > seq.deltas[i])
            throw std::invalid_argument(
                "contraction_truncation: sequence must be sorted by "
                "non-increasing boundary distance");
    }

    const double nb = n + 1.0 + space.beta;
    const double pe = nb / p;
    const double qe = nb / conjugate_exponent(p);  // 0 when p = 1

    TruncationResult out;
    for (std::size_t start = 0; start < seq.size(); ++start) {
        std::vector<Point> tail_pts(seq.points.begin() +
                                        static_cast<std::ptrdiff_t>(start),
                                    seq.points.end());
        const PointSequence tail = PointSequence::make(std::move(tail_pts));
        const double k1 = k_sum(dom, tail, pe, qe, Diagonal::include);
        const double k2 = k_sum(dom, tail, qe, pe, Diagonal::include);
        if (k1 < 1.0 && k2 < 1.0) {
            out.start = start;
            out.contracts = true;
            out.k_forward = k1;
            out.k_transposed = k2;
            double tail_sum = 0.0;
            for (std::size_t j = start; j < seq.size(); ++j)
                tail_sum += std::pow(seq.deltas[j], nb / (2.0 * p));
            out.tail_sum = tail_sum;
            return out;
        }
        out.start = start + 1;
        out.k_forward = k1;
        out.k_transposed = k2;
    }
    out.contracts = false;
    out.tail_sum = 0.0;
    return out;
}

// ---------------------------------------------------------------------------
// transport

TransportPlan transport(const DomainSpec& dom,
                        const InterpolationProblem& prob,
                        const Point& basepoint) {
    if (basepoint.dim() != dom.n)
        throw std::invalid_argument(
            "transport: basepoint dimension does not match the domain");
    const double n1 = static_cast<double>(dom.n) + 1.0;
    const double e = 2.0 * (n1 + prob.space.beta) / (n1 * prob.space.p);

    std::vector<cplx> targets(prob.seq.size());
    std::vector<Point> images;
    images.reserve(prob.seq.size());
    for (std::size_t k = 0; k < prob.seq.size(); ++k) {
        const Point& ak = prob.seq.points[k];
        targets[k] = kernel_power_view(dom, basepoint.view(), e, ak.view()) *
                     prob.targets[k];
        images.push_back(mobius(basepoint, ak));
    }

    TransportPlan plan;
    plan.basepoint = basepoint;
    plan.power = e;
    plan.modified = InterpolationProblem::make(prob.seq, std::move(targets),
                                               prob.space, prob.scheme,
                                               prob.m);
    plan.images = std::move(images);
    return plan;
}

HoloFn transport_push(const DomainSpec& dom, const Point& basepoint,
                      double power, HoloFn f) {
    return [dom, c = basepoint, e = power, f = std::move(f)](PointView z) {
        std::vector<cplx> image;
        mobius_view(c.view(), z, image);
        return kernel_power_view(dom, c.view(), e, z) *
               f(PointView(image.data(), image.size()));
    };
}

HoloFn transport_pull(const DomainSpec& dom, const Point& basepoint,
                      double power, HoloFn g) {
    return [dom, c = basepoint, e = power, g = std::move(g)](PointView z) {
        std::vector<cplx> image;
        mobius_view(c.view(), z, image);
        const PointView iv(image.data(), image.size());
        return g(iv) / kernel_power_view(dom, c.view(), e, iv);
    };
}

// ---------------------------------------------------------------------------
// augmentation

Interpolant vanishing_function(const DomainSpec& dom,
                               const PointSequence& seq, const Point& b,
                               double exponent) {
    if (!(exponent > 0.0) || !std::isfinite(exponent))
        throw std::invalid_argument(
            "vanishing_function: exponent must be positive");
    std::vector<Point> pts = seq.points;
    pts.push_back(b);
    std::vector<cplx> rhs(pts.size(), cplx{0.0, 0.0});
    rhs.back() = cplx{1.0, 0.0};
    DirectSolve ds = solve_collocation(dom, pts, exponent, rhs);
    return Interpolant(dictionary_terms(dom, pts, exponent, ds.gamma));
}

Interpolant augment_point(const DomainSpec& dom, const Interpolant& g,
                          const Interpolant& vanishing,
                          const PointSequence& seq, const Point& b, cplx v0,
                          double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw std::invalid_argument("augment_point: tol must be positive");
    if (!finite(v0))
        throw std::invalid_argument("augment_point: non-finite target");

    for (std::size_t k = 0; k < seq.size(); ++k) {
        const double fv = std::abs(vanishing.evaluate(dom, seq.points[k]));
        if (fv > tol) {
            std::ostringstream msg;
            msg << "augment_point: the vanishing hypothesis f(a_k) = 0 fails "
                   "at node "
                << k << " (|f| = " << fv << " > tol = " << tol << ")";
            throw HypothesisError(msg.str());
        }
    }
    const cplx fb = vanishing.evaluate(dom, b);
    if (!(std::abs(fb) > tol)) {
        std::ostringstream msg;
        msg << "augment_point: the f(b) != 0 hypothesis fails (|f(b)| = "
            << std::abs(fb) << " <= tol = " << tol << ")";
        throw HypothesisError(msg.str());
    }
    const cplx lambda = (v0 - g.evaluate(dom, b)) / fb;
    return Interpolant::merge(g, vanishing.scaled(lambda));
}

}  // namespace bergman
