#include "gcrit/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gcrit/errors.hpp"

namespace gcrit {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::power: return "power";
    case Method::kellogg: return "kellogg";
    case Method::kolomy: return "kolomy";
    case Method::alpha: return "alpha";
    case Method::omega: return "omega";
  }
  return "unknown";
}

std::string_view to_string(BoundDirection direction) {
  return direction == BoundDirection::upper ? "upper" : "lower";
}

double BoundSequence::bound(int n) const {
  if (!has(n)) fail(ErrorKind::InvalidArgument, std::string(to_string(method)) + " has no member " + std::to_string(n));
  return bounds_on_gc[static_cast<std::size_t>(n - first_index)];
}

double BoundSequence::iterate(int n) const {
  if (!has(n)) fail(ErrorKind::InvalidArgument, std::string(to_string(method)) + " has no member " + std::to_string(n));
  return iterates[static_cast<std::size_t>(n - first_index)];
}

double BoundSequence::best() const {
  if (bounds_on_gc.empty()) fail(ErrorKind::InvalidArgument, "empty sequence");
  return bounds_on_gc.back();
}

namespace {

// Iterates u_0 .. u_count of the unweighted recursion u_(n+1) = A u_n.
std::vector<GridFunction> iterate_operator(const BirmanSchwingerOperator& op, GridFunction start, int count) {
  std::vector<GridFunction> out;
  out.reserve(static_cast<std::size_t>(count) + 1);
  out.push_back(std::move(start));
  for (int n = 0; n < count; ++n) out.push_back(op.apply(out.back()));
  return out;
}

GridFunction starting_function(const BirmanSchwingerOperator& op, const SequenceOptions& options) {
  if (!options.start) return op.regular_start();
  const auto& s = *options.start;
  if (s.grid_ptr() != op.grid()) fail(ErrorKind::GridMismatch, "starting function lives on a different grid");
  if (s.meaning() != Representation::unweighted) {
    fail(ErrorKind::InvalidArgument, "starting function must be given in the unweighted form");
  }
  return s;
}

void check_options(const SequenceOptions& options) {
  if (options.n_max < 1) fail(ErrorKind::InvalidArgument, "n_max must be at least 1");
  if (options.stop_tolerance < 0.0) fail(ErrorKind::InvalidArgument, "stop_tolerance must be nonnegative");
}

// Checks the monotonicity of the bounds and applies the stopping rule.
void finalize(BoundSequence& seq, double rel_tolerance, double stop_tolerance) {
  const double slack = 100.0 * rel_tolerance;
  for (std::size_t i = 1; i < seq.bounds_on_gc.size(); ++i) {
    const double prev = seq.bounds_on_gc[i - 1];
    const double cur = seq.bounds_on_gc[i];
    const bool ok = seq.direction == BoundDirection::upper ? cur <= prev + slack * std::abs(prev)
                                                           : cur >= prev - slack * std::abs(prev);
    if (!ok) {
      fail(ErrorKind::MonotonicityViolated,
           std::string(to_string(seq.method)) + " bound moved the wrong way at n = " +
               std::to_string(seq.first_index + static_cast<int>(i)) + " (" + std::to_string(prev) + " -> " +
               std::to_string(cur) + ")");
    }
    if (stop_tolerance > 0.0 && std::abs(cur - prev) < stop_tolerance * std::abs(cur)) {
      seq.bounds_on_gc.resize(i + 1);
      seq.iterates.resize(i + 1);
      seq.converged = true;
      return;
    }
  }
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    fail(ErrorKind::DegeneratePotential, std::string(what) + " is not a positive finite number");
  }
}

}  // namespace

BoundSequence power_sequence(const BirmanSchwingerOperator& op, const SequenceOptions& options) {
  check_options(options);
  const int n_max = options.n_max;
  // <phi|K^j phi> = <u_a, u_b>_v with a + b = j; j runs to n_max + 1.
  const int needed = (n_max + 2) / 2 + 1;
  const auto u = iterate_operator(op, starting_function(op, options), needed);
  auto moment = [&](int j) {
    const int a = j / 2;
    return op.inner(u[static_cast<std::size_t>(a)], u[static_cast<std::size_t>(j - a)]);
  };
  BoundSequence seq;
  seq.method = Method::power;
  seq.direction = BoundDirection::upper;
  seq.first_index = 0;
  double previous = moment(0);
  require_positive(previous, "<phi|phi>");
  for (int n = 0; n <= n_max; ++n) {
    const double next = moment(n + 1);
    require_positive(next, "<phi|K^n phi>");
    const double delta = next / previous;
    seq.iterates.push_back(delta);
    seq.bounds_on_gc.push_back(1.0 / delta);
    previous = next;
  }
  finalize(seq, op.scheme().rel_tolerance, options.stop_tolerance);
  return seq;
}

BoundSequence kellogg_sequence(const BirmanSchwingerOperator& op, const SequenceOptions& options) {
  check_options(options);
  const auto u = iterate_operator(op, starting_function(op, options), options.n_max);
  BoundSequence seq;
  seq.method = Method::kellogg;
  seq.direction = BoundDirection::upper;
  seq.first_index = 1;
  double norm_prev = op.inner(u[0], u[0]);
  require_positive(norm_prev, "||phi_0||^2");
  for (int n = 0; n < options.n_max; ++n) {
    const auto& next = u[static_cast<std::size_t>(n) + 1];
    const double norm_next = op.inner(next, next);
    require_positive(norm_next, "||phi_n||^2");
    const double gamma = std::sqrt(norm_prev / norm_next);
    seq.iterates.push_back(gamma);
    seq.bounds_on_gc.push_back(gamma);
    norm_prev = norm_next;
  }
  finalize(seq, op.scheme().rel_tolerance, options.stop_tolerance);
  return seq;
}

BoundSequence kolomy_sequence(const BirmanSchwingerOperator& op, const SequenceOptions& options) {
  check_options(options);
  const auto u = iterate_operator(op, starting_function(op, options), options.n_max);
  BoundSequence seq;
  seq.method = Method::kolomy;
  seq.direction = BoundDirection::upper;
  seq.first_index = 1;
  for (int n = 0; n < options.n_max; ++n) {
    const auto& cur = u[static_cast<std::size_t>(n)];
    const auto& next = u[static_cast<std::size_t>(n) + 1];
    const double denom = op.inner(next, next);
    require_positive(denom, "||phi_n||^2");
    const double beta = op.inner(cur, next) / denom;
    seq.iterates.push_back(beta);
    seq.bounds_on_gc.push_back(beta);
  }
  finalize(seq, op.scheme().rel_tolerance, options.stop_tolerance);
  return seq;
}

BoundSequence power_sequence(const PotentialShape& shape, AngularMomentum ell, const SequenceOptions& options) {
  return power_sequence(BirmanSchwingerOperator(shape, ell, options.scheme), options);
}

BoundSequence kellogg_sequence(const PotentialShape& shape, AngularMomentum ell, const SequenceOptions& options) {
  return kellogg_sequence(BirmanSchwingerOperator(shape, ell, options.scheme), options);
}

BoundSequence kolomy_sequence(const PotentialShape& shape, AngularMomentum ell, const SequenceOptions& options) {
  return kolomy_sequence(BirmanSchwingerOperator(shape, ell, options.scheme), options);
}

AlphaOmega alpha_omega(const PotentialShape& shape, AngularMomentum ell, const SequenceOptions& options) {
  check_options(options);
  const BirmanSchwingerOperator op(reduce_to_s_wave(shape, ell), AngularMomentum(0), options.scheme);
  const auto ones = op.sample([](double) { return 1.0; });
  const auto radius = op.regular_start();

  AlphaOmega out;
  out.alpha.method = Method::alpha;
  out.alpha.direction = BoundDirection::lower;
  out.omega.method = Method::omega;
  out.omega.direction = BoundDirection::upper;

  // origin slopes int v psi_n and asymptotes int r v psi_n
  GridFunction psi = radius;
  double slope_prev = op.inner(psi, ones);
  double tail_prev = op.inner(psi, radius);
  require_positive(slope_prev, "integral of r v");
  out.alpha0 = slope_prev;
  for (int n = 1; n <= options.n_max; ++n) {
    psi = op.apply(psi);
    const double slope = op.inner(psi, ones);
    const double tail = op.inner(psi, radius);
    require_positive(slope, "integral of v psi_n");
    require_positive(tail, "integral of r v psi_n");
    const double a = slope / slope_prev;
    const double w = tail / tail_prev;
    out.alpha.iterates.push_back(a);
    out.alpha.bounds_on_gc.push_back(1.0 / a);
    out.omega.iterates.push_back(w);
    out.omega.bounds_on_gc.push_back(1.0 / w);
    slope_prev = slope;
    tail_prev = tail;
  }
  out.first_order = Bracket{out.alpha.bounds_on_gc.front(), out.omega.bounds_on_gc.front(), "alpha_1", "omega_1"};

  const double rel = options.scheme.rel_tolerance;
  finalize(out.alpha, rel, options.stop_tolerance);
  finalize(out.omega, rel, options.stop_tolerance);
  return out;
}

Bracket assemble_bracket(const std::vector<const BoundSequence*>& sequences,
                         const std::vector<ExternalLimit>& extras, double tolerance) {
  Bracket b;
  b.lower = -infinity;
  b.upper = infinity;
  auto offer = [&b](BoundDirection dir, double value, const std::string& source) {
    if (dir == BoundDirection::lower && value > b.lower) {
      b.lower = value;
      b.lower_source = source;
    } else if (dir == BoundDirection::upper && value < b.upper) {
      b.upper = value;
      b.upper_source = source;
    }
  };
  for (const auto* seq : sequences) {
    if (seq == nullptr || seq->size() == 0) continue;
    for (std::size_t i = 0; i < seq->size(); ++i) {
      offer(seq->direction, seq->bounds_on_gc[i],
            std::string(to_string(seq->method)) + "_" + std::to_string(seq->first_index + static_cast<int>(i)));
    }
  }
  for (const auto& e : extras) offer(e.direction, e.value, e.source);
  if (std::isinf(b.lower)) {
    b.lower = 0.0;
    b.lower_source = "none";
  }
  if (b.lower > b.upper) {
    if (b.lower - b.upper > tolerance * b.upper) {
      fail(ErrorKind::InconsistentBracket, "lower limit " + std::to_string(b.lower) + " (" + b.lower_source +
                                               ") exceeds upper limit " + std::to_string(b.upper) + " (" +
                                               b.upper_source + ")");
    }
    b.lower = b.upper;
  }
  return b;
}

Bracket best_bracket(const PotentialShape& shape, AngularMomentum ell, const SequenceOptions& options,
                     const std::vector<ExternalLimit>& extras) {
  const BirmanSchwingerOperator op(shape, ell, options.scheme);
  const auto power = power_sequence(op, options);
  const auto kellogg = kellogg_sequence(op, options);
  const auto kolomy = kolomy_sequence(op, options);
  const auto ao = alpha_omega(shape, ell, options);
  return assemble_bracket({&power, &kellogg, &kolomy, &ao.alpha, &ao.omega}, extras,
                          100.0 * options.scheme.rel_tolerance);
}

}  // namespace gcrit
