#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcrit/kernel.hpp"
#include "gcrit/potential.hpp"

namespace gcrit {

enum class Method { power, kellogg, kolomy, alpha, omega };
std::string_view to_string(Method method);

enum class BoundDirection { upper, lower };
std::string_view to_string(BoundDirection direction);

/// One method's run of iterates and the bounds they induce on g_c.
///   power   delta_n, bound 1/delta_n (upper), n = 0, 1, ...
///   kellogg gamma_n, bound gamma_n (upper), n = 1, 2, ...
///   kolomy  beta_n,  bound beta_n (upper), n = 1, 2, ...
///   alpha   alpha_n, bound 1/alpha_n (lower), n = 1, 2, ...
///   omega   omega_n, bound 1/omega_n (upper), n = 1, 2, ...
struct BoundSequence {
  Method method = Method::power;
  BoundDirection direction = BoundDirection::upper;
  int first_index = 1;
  std::vector<double> iterates;
  std::vector<double> bounds_on_gc;
  bool converged = false;

  std::size_t size() const noexcept { return bounds_on_gc.size(); }
  int last_index() const noexcept { return first_index + static_cast<int>(size()) - 1; }
  bool has(int n) const noexcept { return n >= first_index && n <= last_index(); }
  double bound(int n) const;
  double iterate(int n) const;
  /// Tightest bound, i.e. the last one.
  double best() const;
};

/// Certified enclosure lower <= g_c <= upper.
struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_source;
  std::string upper_source;

  double width() const noexcept { return upper - lower; }
};

struct SequenceOptions {
  int n_max = 4;
  /// Stop once |b_n - b_(n-1)| < stop_tolerance * b_n. Zero disables it.
  double stop_tolerance = 1e-8;
  /// Unweighted starting function on the operator's grid; r^(l+1) if empty.
  /// Ignored by alpha_omega, whose recursion fixes psi_0 = r.
  std::optional<GridFunction> start;
  QuadratureScheme scheme;
};

/// Power-method moment ratios delta_n = <phi|K^(n+1) phi> / <phi|K^n phi>,
/// n = 0..n_max.
BoundSequence power_sequence(const BirmanSchwingerOperator& op, const SequenceOptions& options = {});
/// Kellogg norm ratios gamma_(n+1) = ||phi_n|| / ||phi_(n+1)||.
BoundSequence kellogg_sequence(const BirmanSchwingerOperator& op, const SequenceOptions& options = {});
/// Kolomy quotients beta_(n+1) = <phi_n|phi_(n+1)> / ||phi_(n+1)||^2.
BoundSequence kolomy_sequence(const BirmanSchwingerOperator& op, const SequenceOptions& options = {});

BoundSequence power_sequence(const PotentialShape& shape, AngularMomentum ell, const SequenceOptions& options = {});
BoundSequence kellogg_sequence(const PotentialShape& shape, AngularMomentum ell, const SequenceOptions& options = {});
BoundSequence kolomy_sequence(const PotentialShape& shape, AngularMomentum ell, const SequenceOptions& options = {});

struct AlphaOmega {
  BoundSequence alpha;
  BoundSequence omega;
  /// alpha_0 = integral of r v (S-wave form); 1/alpha_0 is the
  /// Bargmann-Schwinger lower limit.
  double alpha0 = 0.0;
  /// [1/alpha_1, 1/omega_1].
  Bracket first_order;
};

/// Two-sided ladder from psi_n = A^n r on the S-wave reduction of the shape:
/// alpha_n = int v psi_n / int v psi_(n-1), omega_n = int r v psi_n / int r v psi_(n-1).
AlphaOmega alpha_omega(const PotentialShape& shape, AngularMomentum ell, const SequenceOptions& options = {});

/// A limit computed elsewhere (closed-form or variational) to fold into a bracket.
struct ExternalLimit {
  std::string source;
  double value = 0.0;
  BoundDirection direction = BoundDirection::upper;
};

/// Best lower and upper limits over all sequences and the supplied extras.
/// Throws InconsistentBracket if lower exceeds upper beyond tolerance.
Bracket best_bracket(const PotentialShape& shape, AngularMomentum ell, const SequenceOptions& options = {},
                     const std::vector<ExternalLimit>& extras = {});

/// Folds sequences and extras into a bracket; shared by best_bracket and the CLI.
Bracket assemble_bracket(const std::vector<const BoundSequence*>& sequences,
                         const std::vector<ExternalLimit>& extras, double tolerance);

}  // namespace gcrit
