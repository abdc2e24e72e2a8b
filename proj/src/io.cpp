#include "bergman/io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

namespace bergman {
namespace io {

json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return cplx{j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
        !j[1].is_number())
        throw std::invalid_argument(
            "complex value must be [re, im] or a plain number");
    return cplx{j[0].get<double>(), j[1].get<double>()};
}

json point_to_json(const Point& z) {
    if (z.dim() == 1) return complex_to_json(z.coords()[0]);
    json out = json::array();
    for (const cplx& c : z.coords()) out.push_back(complex_to_json(c));
    return out;
}

Point point_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("point must be a non-empty array");
    if (j[0].is_number()) return Point(complex_from_json(j));
    std::vector<cplx> coords;
    coords.reserve(j.size());
    for (const json& c : j) coords.push_back(complex_from_json(c));
    return Point(std::move(coords));
}

json points_to_json(const std::vector<Point>& pts) {
    json out = json::array();
    for (const Point& z : pts) out.push_back(point_to_json(z));
    return out;
}

std::vector<Point> points_from_json(const json& j) {
    if (!j.is_array())
        throw std::invalid_argument("points must be an array");
    std::vector<Point> out;
    out.reserve(j.size());
    for (const json& p : j) out.push_back(point_from_json(p));
    return out;
}

ProblemFile problem_from_json(const json& j) {
    const json& sp = j.at("space");
    const double p = sp.at("p").get<double>();
    const double beta = sp.at("beta").get<double>();
    const std::size_t n =
        sp.contains("n") ? sp.at("n").get<std::size_t>() : 1;
    const SpaceParams space = SpaceParams::make(p, beta, n);

    Scheme scheme = p == 1.0 ? Scheme::p1 : Scheme::general_p;
    if (j.contains("scheme")) {
        const std::string name = j.at("scheme").get<std::string>();
        if (name == "p1")
            scheme = Scheme::p1;
        else if (name == "general_p")
            scheme = Scheme::general_p;
        else
            throw std::invalid_argument("unknown scheme \"" + name +
                                        "\" (expected p1 or general_p)");
    }
    const double m = j.contains("m") ? j.at("m").get<double>() : 1.0;

    std::vector<Point> pts = points_from_json(j.at("points"));
    std::vector<cplx> targets;
    for (const json& t : j.at("targets"))
        targets.push_back(complex_from_json(t));

    ProblemFile out;
    out.prob =
        InterpolationProblem::make(PointSequence::make(std::move(pts)),
                                   std::move(targets), space, scheme, m);
    if (j.contains("tol")) out.tol = j.at("tol").get<double>();
    if (j.contains("max_iter"))
        out.max_iter = j.at("max_iter").get<std::size_t>();
    if (!(out.tol > 0.0))
        throw std::invalid_argument("tol must be positive");
    return out;
}

json problem_to_json(const InterpolationProblem& prob, double tol,
                     std::size_t max_iter) {
    json out;
    out["space"] = {{"p", prob.space.p},
                    {"beta", prob.space.beta},
                    {"n", prob.space.n}};
    out["scheme"] = prob.scheme == Scheme::p1 ? "p1" : "general_p";
    out["m"] = prob.m;
    out["points"] = points_to_json(prob.seq.points);
    json targets = json::array();
    for (const cplx& v : prob.targets) targets.push_back(complex_to_json(v));
    out["targets"] = std::move(targets);
    out["tol"] = tol;
    out["max_iter"] = max_iter;
    return out;
}

json interpolant_to_json(const Interpolant& f) {
    json terms = json::array();
    for (const InterpTerm& t : f.terms()) {
        json term;
        term["coeff"] = complex_to_json(t.coeff);
        term["base"] = point_to_json(t.base);
        term["exponent"] = t.exponent;
        terms.push_back(std::move(term));
    }
    json out;
    out["offset"] = complex_to_json(f.offset());
    out["terms"] = std::move(terms);
    return out;
}

Interpolant interpolant_from_json(const json& j) {
    std::vector<InterpTerm> terms;
    for (const json& t : j.at("terms")) {
        InterpTerm term;
        term.coeff = complex_from_json(t.at("coeff"));
        term.base = point_from_json(t.at("base"));
        term.exponent = t.at("exponent").get<double>();
        terms.push_back(std::move(term));
    }
    cplx offset{0.0, 0.0};
    if (j.contains("offset")) offset = complex_from_json(j.at("offset"));
    return Interpolant(std::move(terms), offset);
}

json trace_to_json(const NeumannTrace& trace) {
    json out;
    out["iterations"] = trace.iterations;
    out["converged"] = trace.converged;
    out["residual_norms"] = trace.residual_norms;
    out["residual_sups"] = trace.residual_sups;
    out["ratios"] = trace.ratios;
    out["coupling_incl"] = trace.coupling_incl;
    out["coupling_excl"] = trace.coupling_excl;
    out["operator_bound"] = trace.operator_bound;
    out["measured_contraction"] = trace.measured_contraction;
    out["contraction_tag"] = trace.contraction_tag;
    out["final_sup_residual"] = trace.final_sup_residual;
    out["final_norm_residual"] = trace.final_norm_residual;
    return out;
}

json lattice_to_json(const Lattice& lat) {
    json out;
    out["r"] = lat.r;
    out["R"] = lat.R;
    out["delta_min"] = lat.delta_min;
    out["centers"] = points_to_json(lat.seq.points);
    json cert;
    cert["centers"] = lat.cert.centers;
    cert["min_pairwise_pseudo"] = lat.cert.min_pairwise_pseudo;
    cert["separation_threshold"] = lat.cert.separation_threshold;
    cert["max_multiplicity"] = lat.cert.max_multiplicity;
    cert["uncovered"] = lat.cert.uncovered;
    cert["grid_points"] = lat.cert.grid_points;
    out["certification"] = std::move(cert);
    return out;
}

json partition_report_to_json(const PartitionReport& rep) {
    json out;
    out["grid_points"] = rep.grid_points;
    out["unassigned"] = rep.unassigned;
    out["inner_mismatch"] = rep.inner_mismatch;
    out["outside_outer"] = rep.outside_outer;
    out["multiple_inner"] = rep.multiple_inner;
    return out;
}

json diagnostics_to_json(const SequenceDiagnostics& diag) {
    json coupling = json::array();
    for (const SequenceDiagnostics::CoupleValue& c : diag.coupling) {
        json row;
        row["p"] = c.p;
        row["q"] = c.q;
        row["include_diag"] = c.include_diag;
        row["exclude_diag"] = c.exclude_diag;
        coupling.push_back(std::move(row));
    }
    json out;
    out["separation"] = diag.separation;
    out["sup_count"] = diag.sup_count;
    out["coupling"] = std::move(coupling);
    out["sup_z_coupling"] = diag.sup_z_coupling;
    out["carleson_constant"] = diag.carleson_constant;
    out["carleson_q"] = diag.carleson_q;
    return out;
}

json truncation_to_json(const TruncationResult& res) {
    json out;
    out["start"] = res.start;        // 0-based index of the first kept node
    out["N"] = res.start + 1;        // 1-based, as usually quoted
    out["contracts"] = res.contracts;
    out["k_forward"] = res.k_forward;
    out["k_transposed"] = res.k_transposed;
    out["tail_sum"] = res.tail_sum;
    return out;
}

namespace {
std::string fmt(double v) { return json(v).dump(); }
}  // namespace

std::string csv_header() {
    return "delta,k_sum_incl,k_sum_excl,contraction_measured,iterations,"
           "max_node_residual,norm_f\n";
}

std::string csv_row(double delta, double k_sum_incl, double k_sum_excl,
                    double contraction_measured, std::size_t iterations,
                    double max_node_residual, double norm_f) {
    std::ostringstream row;
    row << fmt(delta) << ',' << fmt(k_sum_incl) << ',' << fmt(k_sum_excl)
        << ',' << fmt(contraction_measured) << ',' << iterations << ','
        << fmt(max_node_residual) << ',' << fmt(norm_f) << '\n';
    return row.str();
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    return json::parse(in);
}

void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << text;
}

}  // namespace io
}  // namespace bergman
