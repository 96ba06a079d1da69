#include "gcrit/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "gcrit/classic_bounds.hpp"
#include "gcrit/errors.hpp"
#include "gcrit/oracle.hpp"
#include "gcrit/sequences.hpp"

namespace gcrit {

UsageError::UsageError(Kind kind, const std::string& what)
    : std::invalid_argument(std::string(kind == Kind::UnknownPotential ? "UnknownPotential"
                                        : kind == Kind::UnknownMethod  ? "UnknownMethod"
                                                                       : "InvalidValue") +
                            ": " + what),
      kind_(kind) {}

PotentialShape select_potential(const std::string& selector) {
  if (selector.rfind("file:", 0) == 0) {
    const auto path = selector.substr(5);
    if (path.empty()) throw UsageError(UsageError::Kind::UnknownPotential, "file: needs a path");
    if (!std::filesystem::is_regular_file(path)) {
      throw UsageError(UsageError::Kind::UnknownPotential, "no such file '" + path + "'");
    }
    return load_table_file(path);
  }
  std::string key = selector;
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
  if (key == "sw" || key == "square_well") return make_square_well();
  if (key == "exp" || key == "e" || key == "exponential") return make_exponential();
  if (key == "pe" || key == "r_exponential") return make_r_exponential();
  throw UsageError(UsageError::Kind::UnknownPotential, "'" + selector + "' (expected sw, exp, pe or file:PATH)");
}

const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> methods{"power",    "kellogg",   "kolomy",      "alpha",
                                                "omega",    "glaser",    "calogero1",   "calogero2",
                                                "variational", "rayleigh", "chadan"};
  return methods;
}

std::vector<std::string> parse_methods(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto& known = known_methods();
    if (std::find(known.begin(), known.end(), item) == known.end()) {
      throw UsageError(UsageError::Kind::UnknownMethod, "'" + item + "'");
    }
    if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(item);
  }
  if (out.empty()) throw UsageError(UsageError::Kind::UnknownMethod, "empty method list");
  return out;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "text") return OutputFormat::text;
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw UsageError(UsageError::Kind::InvalidValue, "unknown format '" + name + "'");
}

std::string to_string(BoundType type) {
  switch (type) {
    case BoundType::upper: return "upper";
    case BoundType::lower: return "lower";
    case BoundType::exact: return "exact";
  }
  return "unknown";
}

std::string to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::sequence: return "sequence";
    case Provenance::closed_form: return "closed_form";
    case Provenance::oracle: return "oracle";
  }
  return "unknown";
}

QuadratureScheme scheme_from_environment() {
  QuadratureScheme scheme;
  if (const char* env = std::getenv("GCRIT_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double tol = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(tol > 0.0)) {
      throw UsageError(UsageError::Kind::InvalidValue, std::string("GCRIT_TOL='") + env + "' is not a positive number");
    }
    scheme.rel_tolerance = tol;
  }
  return scheme;
}

void RunRequest::validate() const {
  if (ell < 0) throw UsageError(UsageError::Kind::InvalidValue, "ell must be nonnegative");
  if (n_max < 1) throw UsageError(UsageError::Kind::InvalidValue, "iters must be at least 1");
  if (methods.empty()) throw UsageError(UsageError::Kind::UnknownMethod, "empty method list");
  if (tolerance && !(*tolerance > 0.0)) throw UsageError(UsageError::Kind::InvalidValue, "tol must be positive");
}

QuadratureScheme RunRequest::scheme() const {
  auto scheme = scheme_from_environment();
  if (tolerance) scheme.rel_tolerance = *tolerance;
  return scheme;
}

namespace {

void append_sequence(std::vector<ResultRecord>& out, const std::string& label, int ell, const BoundSequence& seq) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    out.push_back(ResultRecord{label, ell, std::string(to_string(seq.method)), seq.first_index + static_cast<int>(i),
                               seq.bounds_on_gc[i],
                               seq.direction == BoundDirection::upper ? BoundType::upper : BoundType::lower,
                               Provenance::sequence});
  }
}

bool wants(const RunRequest& r, const char* method) {
  return std::find(r.methods.begin(), r.methods.end(), method) != r.methods.end();
}

}  // namespace

std::vector<ResultRecord> cmd_bounds(const RunRequest& request) {
  request.validate();
  const auto shape = select_potential(request.potential);
  const AngularMomentum ell(request.ell);
  const auto scheme = request.scheme();
  const auto& label = request.potential;
  const int l = request.ell;

  SequenceOptions options;
  options.n_max = request.n_max;
  options.stop_tolerance = 0.0;
  options.scheme = scheme;

  std::vector<ResultRecord> out;
  std::vector<BoundSequence> sequences;
  std::vector<ExternalLimit> extras;
  auto closed = [&](const char* method, int n, double value, BoundType type) {
    out.push_back(ResultRecord{label, l, method, n, value, type, Provenance::closed_form});
    extras.push_back(ExternalLimit{method, value,
                                   type == BoundType::lower ? BoundDirection::lower : BoundDirection::upper});
  };

  std::optional<BirmanSchwingerOperator> op;
  auto get_op = [&]() -> const BirmanSchwingerOperator& {
    if (!op) op.emplace(shape, ell, scheme);
    return *op;
  };
  if (wants(request, "power")) sequences.push_back(power_sequence(get_op(), options));
  if (wants(request, "kellogg")) sequences.push_back(kellogg_sequence(get_op(), options));
  if (wants(request, "kolomy")) sequences.push_back(kolomy_sequence(get_op(), options));
  if (wants(request, "alpha") || wants(request, "omega")) {
    auto ladder = alpha_omega(shape, ell, options);
    if (wants(request, "alpha")) sequences.push_back(std::move(ladder.alpha));
    if (wants(request, "omega")) sequences.push_back(std::move(ladder.omega));
  }
  for (const auto& seq : sequences) append_sequence(out, label, l, seq);

  auto config = [&](OptimizerConfig c) {
    c.scheme = scheme;
    return c;
  };
  if (wants(request, "glaser")) closed("glaser", 0, glaser_lower(shape, ell, config(glaser_config())).value, BoundType::lower);
  if (wants(request, "calogero1")) {
    closed("calogero1", 0, calogero_upper_linear(shape, ell, config(scale_config())).value, BoundType::upper);
  }
  if (wants(request, "calogero2")) {
    closed("calogero2", 0, calogero_upper_nonlinear(shape, ell, config(scale_config())).value, BoundType::upper);
  }
  if (wants(request, "variational")) {
    closed("variational", 0, variational_upper_closed(shape, ell, config(variational_config())).value, BoundType::upper);
  }
  if (wants(request, "rayleigh")) {
    TrialFunctionSpec trial;
    trial.family = shape.support_cutoff() ? TrialFamily::power : TrialFamily::exponential;
    for (int i = 0; i < request.n_max; ++i) {
      trial.iterations = i;
      closed("rayleigh", i, rayleigh_upper(get_op(), trial, config(scale_config())).value, BoundType::upper);
    }
  }
  if (wants(request, "chadan")) closed("chadan", 0, chadan_upper(shape, ell, scheme), BoundType::upper);

  std::vector<const BoundSequence*> pointers;
  for (const auto& seq : sequences) pointers.push_back(&seq);
  const auto bracket = assemble_bracket(pointers, extras, 100.0 * scheme.rel_tolerance);
  auto origin = [&extras](const std::string& source) {
    const bool external = std::any_of(extras.begin(), extras.end(), [&](const ExternalLimit& e) { return e.source == source; });
    return external ? Provenance::closed_form : Provenance::sequence;
  };
  if (bracket.lower_source != "none") {
    out.push_back(ResultRecord{label, l, "bracket", request.n_max, bracket.lower, BoundType::lower, origin(bracket.lower_source)});
  }
  if (std::isfinite(bracket.upper)) {
    out.push_back(ResultRecord{label, l, "bracket", request.n_max, bracket.upper, BoundType::upper, origin(bracket.upper_source)});
  }
  return out;
}

std::vector<ResultRecord> cmd_oracle(const RunRequest& request) {
  request.validate();
  const auto shape = select_potential(request.potential);
  const AngularMomentum ell(request.ell);
  std::vector<ResultRecord> out;
  out.push_back(ResultRecord{request.potential, request.ell, "shooting", 0, critical_g(shape, ell), BoundType::exact,
                             Provenance::oracle});
  std::optional<double> closed;
  if (shape.label() == "SW") closed = square_well_closed_form(ell);
  if (shape.label() == "E" && request.ell == 0) closed = exponential_closed_form();
  if (closed) {
    out.push_back(ResultRecord{request.potential, request.ell, "bessel_zero", 0, *closed, BoundType::exact,
                               Provenance::closed_form});
  }
  return out;
}

namespace {

std::string number(double value, const char* format) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

}  // namespace

std::string format_records(const std::vector<ResultRecord>& records, OutputFormat format) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::text: {
      char line[256];
      std::snprintf(line, sizeof line, "%-14s %3s  %-12s %3s  %-18s %-6s %s\n", "potential", "ell", "method", "n", "value",
                    "bound", "provenance");
      os << line;
      for (const auto& r : records) {
        std::snprintf(line, sizeof line, "%-14s %3d  %-12s %3d  %-18s %-6s %s\n", r.potential.c_str(), r.ell,
                      r.method.c_str(), r.n, number(r.value, "%.10g").c_str(), to_string(r.bound_type).c_str(),
                      to_string(r.provenance).c_str());
        os << line;
      }
      break;
    }
    case OutputFormat::csv:
      os << "potential,ell,method,n,value,bound_type,provenance\n";
      for (const auto& r : records) {
        os << r.potential << ',' << r.ell << ',' << r.method << ',' << r.n << ',' << number(r.value, "%.17g") << ','
           << to_string(r.bound_type) << ',' << to_string(r.provenance) << '\n';
      }
      break;
    case OutputFormat::json: {
      auto doc = nlohmann::ordered_json::array();
      for (const auto& r : records) {
        doc.push_back(nlohmann::ordered_json{{"potential", r.potential},
                                             {"ell", r.ell},
                                             {"method", r.method},
                                             {"n", r.n},
                                             {"value", r.value},
                                             {"bound_type", to_string(r.bound_type)},
                                             {"provenance", to_string(r.provenance)}});
      }
      os << doc.dump(2) << '\n';
      break;
    }
  }
  return os.str();
}

}  // namespace gcrit
