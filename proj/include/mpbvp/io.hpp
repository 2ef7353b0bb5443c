#pragma once

#include <string>
#include <vector>

#include "mpbvp/jumping_profile.hpp"
#include "mpbvp/problem_spec.hpp"
#include "mpbvp/shooting.hpp"

namespace mpbvp {

/// On-disk description of the boundary conditions, mirrored in JSON as
/// {"alpha_minus": [...], "eta_minus": [...], "alpha_plus": [...],
///  "eta_plus": [...], "allow_outside_cone": false}.
struct ProblemFile {
    std::vector<double> alpha_minus, eta_minus, alpha_plus, eta_plus;
    bool allow_outside_cone = false;

    /// Validates and converts; throws InvalidProblem with a diagnostic.
    ProblemSpec to_spec() const;
};

/// Parses a problem description from JSON text.  Throws InvalidProblem
/// with a diagnostic for malformed JSON, mismatched array lengths,
/// nodes outside (-1, 1), or coefficient sums >= 1.
ProblemFile parse_problem_json(const std::string& text);

/// Reads and parses a problem file from disk.
ProblemFile load_problem(const std::string& path);

/// Parses the forcing grammar: "zero" | "one" | "step:x0[,level]" |
/// "samples:path" (two-column CSV x,h; optional header).  Throws
/// InvalidProblem on anything else.
Forcing parse_forcing(const std::string& text);

/// Parses the nonlinearity grammar: "linear:c" |
/// "rational_bump:f0,finf" | "atan_shift:finf,fminf,amp".
Nonlinearity parse_nonlinearity(const std::string& text);

/// Parses a nodal class written as "k,+" / "k,-" (or "k,+1" / "k,-1").
NodalClass parse_nodal(const std::string& text);

/// Fixed float formatting used for all emitted CSV/JSON numbers:
/// shortest form with 17 significant digits (round-trips exactly).
std::string format_float(double v);

/// Writes CSV with the given header line, one row per inner vector,
/// every cell rendered by format_float, LF line endings.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

/// Reads a two-column CSV written by write_csv (or by hand; a
/// non-numeric first line is treated as a header and skipped).
std::vector<std::pair<double, double>> read_two_column_csv(const std::string& path);

} // namespace mpbvp
