#pragma once

// JSON/CSV serialization of the library's inputs and reports.  All writers
// use nlohmann's ordered_json so that the emitted field order (and hence the
// whole byte stream) is stable across runs.

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bergman/geometry.hpp"
#include "bergman/integration.hpp"
#include "bergman/interpolation.hpp"
#include "bergman/sequences.hpp"

namespace bergman {
namespace io {

using json = nlohmann::ordered_json;

// complex number <-> [re, im]
json complex_to_json(cplx v);
cplx complex_from_json(const json& j);

// A point is [re, im] on the disk and [[re, im], ...] on higher-dimensional
// balls; the one-element nested form is accepted for the disk too.
json point_to_json(const Point& z);
Point point_from_json(const json& j);

json points_to_json(const std::vector<Point>& pts);
std::vector<Point> points_from_json(const json& j);

// problem files:
//   {"space": {"p": 1, "beta": 3, "n": 1}, "scheme": "p1", "m": 1.0,
//    "points": [...], "targets": [[re, im], ...],
//    "tol": 1e-8, "max_iter": 200}
// n, scheme, m, tol and max_iter are optional (n = 1; scheme inferred from
// p; m = 1; tol = 1e-8; max_iter = 200).
struct ProblemFile {
    InterpolationProblem prob;
    double tol = 1e-8;
    std::size_t max_iter = 200;
};
ProblemFile problem_from_json(const json& j);
json problem_to_json(const InterpolationProblem& prob, double tol,
                     std::size_t max_iter);

json interpolant_to_json(const Interpolant& f);
Interpolant interpolant_from_json(const json& j);

json trace_to_json(const NeumannTrace& trace);
json lattice_to_json(const Lattice& lat);
json partition_report_to_json(const PartitionReport& rep);
json diagnostics_to_json(const SequenceDiagnostics& diag);
json truncation_to_json(const TruncationResult& res);

// fixed solve-summary table
std::string csv_header();
std::string csv_row(double delta, double k_sum_incl, double k_sum_excl,
                    double contraction_measured, std::size_t iterations,
                    double max_node_residual, double norm_f);

// file helpers; load throws std::invalid_argument when the file cannot be
// opened and nlohmann's parse_error on malformed content
json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);
void save_text(const std::string& path, const std::string& text);

}  // namespace io
}  // namespace bergman
