#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcrit/potential.hpp"
#include "gcrit/quadrature.hpp"

namespace gcrit {

/// Invalid command-line input (exit status 1).
class UsageError : public std::invalid_argument {
 public:
  enum class Kind { UnknownPotential, UnknownMethod, InvalidValue };

  UsageError(Kind kind, const std::string& what);
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// sw | exp | pe (also square_well, exponential, r_exponential, SW, E, PE)
/// or file:PATH.
PotentialShape select_potential(const std::string& selector);

const std::vector<std::string>& known_methods();
/// Splits a comma-separated list and validates every entry.
std::vector<std::string> parse_methods(const std::string& csv);

enum class OutputFormat { text, csv, json };
OutputFormat parse_format(const std::string& name);

enum class BoundType { upper, lower, exact };
enum class Provenance { sequence, closed_form, oracle };
std::string to_string(BoundType type);
std::string to_string(Provenance provenance);

struct ResultRecord {
  std::string potential;
  int ell = 0;
  std::string method;
  int n = 0;
  double value = 0.0;
  BoundType bound_type = BoundType::upper;
  Provenance provenance = Provenance::sequence;
};

struct RunRequest {
  std::string potential = "sw";
  int ell = 0;
  std::vector<std::string> methods{"power", "kellogg", "kolomy", "alpha", "omega"};
  int n_max = 4;
  OutputFormat format = OutputFormat::text;
  /// Quadrature rel_tolerance; falls back to GCRIT_TOL, then the default.
  std::optional<double> tolerance;

  void validate() const;
  QuadratureScheme scheme() const;
};

/// Quadrature scheme with rel_tolerance taken from GCRIT_TOL when set.
QuadratureScheme scheme_from_environment();

/// One record per iterate of every requested method, then the two sides of
/// the best bracket (method "bracket").
std::vector<ResultRecord> cmd_bounds(const RunRequest& request);

/// Oracle value, plus the closed form where one exists.
std::vector<ResultRecord> cmd_oracle(const RunRequest& request);

/// Renders records; deterministic byte for byte.
std::string format_records(const std::vector<ResultRecord>& records, OutputFormat format);

}  // namespace gcrit
