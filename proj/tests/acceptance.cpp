// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes, or when the only failing
// cells are reference values that exact arithmetic (square_well_exact.hpp,
// exponential_exact.hpp) shows to be inconsistent: the computed value agrees
// with the exact one while the printed one does not.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gcrit/classic_bounds.hpp"
#include "gcrit/errors.hpp"
#include "gcrit/jost.hpp"
#include "gcrit/kernel.hpp"
#include "gcrit/oracle.hpp"
#include "gcrit/sequences.hpp"
#include "gcrit/tables.hpp"
#include "exponential_exact.hpp"
#include "square_well_exact.hpp"

using namespace gcrit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  /// Failures fully explained by reference values that exact arithmetic contradicts.
  bool excused = false;
};

void note(Outcome& o, const std::string& line) {
  if (!o.detail.empty()) o.detail += "\n";
  o.detail += "    " + line;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<PotentialShape> shapes() { return {make_exponential(), make_r_exponential(), make_square_well()}; }

const std::vector<TableSpec>& fixture() {
  static const auto tables = load_fixture(default_fixture_path());
  return tables;
}

// Exact value of a table cell, where an exact reference covers it.
std::optional<double> exact_cell(int table, const RowSpec& row, const ColumnSpec& column) {
  if (table == 3 && row.potential == "E" && row.ell == 0 && column.quantity == "rayleigh") {
    return exp_exact::minimum(column.iterations).first;
  }
  if (row.potential != "SW" || column.n < 1) return std::nullopt;
  const sw_exact::Ladder ladder(row.ell, 2 * column.n + 2);
  if (table == 1 && column.quantity == "kellogg") return ladder.gamma(column.n);
  if (table == 2 && column.quantity == "kolomy") return ladder.beta(column.n);
  return std::nullopt;
}

Outcome table_criterion(int number, double time_limit = 0.0) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto result = reproduce_table(find_table(fixture(), number));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int cells = 0;
  int failures = 0;
  int confirmed = 0;
  for (std::size_t r = 0; r < result.rows.size(); ++r) {
    for (std::size_t c = 0; c < result.rows[r].cells.size(); ++c) {
      const auto& cell = result.rows[r].cells[c];
      ++cells;
      if (cell.pass) continue;
      ++failures;
      const auto& row = result.spec.rows[r];
      const auto& column = result.spec.columns[c];
      const double printed = std::stod(cell.expected);
      std::string line = row.potential + " l=" + std::to_string(row.ell) + " " + column.label + ": printed " +
                         cell.expected + ", computed " + cell.rendered;
      if (const auto exact = exact_cell(number, row, column)) {
        const bool agrees = std::abs(cell.computed - *exact) <= 1e-9 * *exact;
        const bool inconsistent = std::abs(printed - *exact) > cell.tolerance;
        line += fmt(", exact %.10f", *exact);
        if (agrees && inconsistent) {
          ++confirmed;
          line += " (reference inconsistent with exact value)";
        }
      }
      note(o, line);
    }
  }
  o.pass = failures == 0;
  o.excused = failures > 0 && confirmed == failures;
  note(o, std::to_string(cells - failures) + "/" + std::to_string(cells) + " cells match" +
              fmt(", %.2f s", seconds));
  if (time_limit > 0.0 && seconds >= time_limit) {
    o.pass = false;
    o.excused = false;
    note(o, fmt("runtime %.2f s exceeds %.0f s", seconds, time_limit));
  }
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  double worst = 0.0;
  for (int l = 0; l <= 5; ++l) {
    const double e = std::abs(critical_g(make_square_well(), AngularMomentum(l)) / square_well_closed_form(AngularMomentum(l)) - 1.0);
    worst = std::max(worst, e);
  }
  worst = std::max(worst, std::abs(critical_g(make_exponential(), AngularMomentum(0)) / exponential_closed_form() - 1.0));
  o.pass = worst < 1e-8;
  note(o, fmt("largest relative difference %.2e", worst));
  return o;
}

SequenceOptions fixed_length(int n) {
  SequenceOptions s;
  s.n_max = n;
  s.stop_tolerance = 0.0;
  return s;
}

Outcome sandwich() {
  Outcome o;
  double worst = 0.0;
  for (const auto& shape : shapes()) {
    for (int l = 0; l <= 5; ++l) {
      const AngularMomentum ell(l);
      const double gc = critical_g(shape, ell);
      const auto s = fixed_length(8);
      const BirmanSchwingerOperator op(shape, ell);
      const auto ao = alpha_omega(shape, ell, s);
      const auto k = kellogg_sequence(op, s);
      const auto b = kolomy_sequence(op, s);
      const auto p = power_sequence(op, s);
      for (int n = 1; n <= 8; ++n) {
        const double upper = std::min({ao.omega.bound(n), k.bound(n), b.bound(n), p.bound(n - 1)});
        const double slack = std::min(gc - ao.alpha.bound(n), upper - gc) / gc;
        worst = std::min(worst, slack);
        if (slack < -1e-8) note(o, shape.label() + " l=" + std::to_string(l) + fmt(" n=%.0f slack %.2e", n, slack));
      }
    }
  }
  o.pass = worst >= -1e-8;
  note(o, fmt("most negative relative slack %.2e", worst));
  return o;
}

Outcome monotonicity() {
  Outcome o;
  const double allowed = 100.0 * QuadratureScheme{}.rel_tolerance;
  double worst = 0.0;
  for (const auto& shape : shapes()) {
    for (int l = 0; l <= 5; ++l) {
      const AngularMomentum ell(l);
      const auto s = fixed_length(10);
      const BirmanSchwingerOperator op(shape, ell);
      const auto ao = alpha_omega(shape, ell, s);
      for (const auto& seq : {kellogg_sequence(op, s), kolomy_sequence(op, s), power_sequence(op, s), ao.omega, ao.alpha}) {
        const double sign = seq.direction == BoundDirection::upper ? 1.0 : -1.0;
        for (int n = seq.first_index + 1; n <= seq.last_index(); ++n) {
          const double rise = sign * (seq.bound(n) - seq.bound(n - 1)) / seq.bound(n);
          worst = std::max(worst, rise);
        }
      }
    }
  }
  o.pass = worst <= allowed;
  note(o, fmt("largest relative violation %.2e (allowed %.0e)", worst, allowed));
  return o;
}

Outcome identities() {
  Outcome o;
  double worst_identity = 0.0;
  double worst_convolution = 0.0;
  double worst_concavity = 0.0;
  for (const auto& shape : shapes()) {
    for (int l = 0; l <= 5; ++l) {
      const AngularMomentum ell(l);
      const auto s = fixed_length(8);
      const BirmanSchwingerOperator op(shape, ell);
      const auto k = kellogg_sequence(op, fixed_length(4));
      const auto b = kolomy_sequence(op, fixed_length(4));
      const auto ao = alpha_omega(shape, ell, s);
      for (int n = 1; n <= 4; ++n) {
        const double w1 = ao.omega.iterate(2 * n - 1);
        const double w2 = ao.omega.iterate(2 * n);
        worst_identity = std::max(worst_identity, std::abs(b.bound(n) * w2 - 1.0));
        worst_identity = std::max(worst_identity, std::abs(k.bound(n) * k.bound(n) * w1 * w2 - 1.0));
      }
      const auto series = jost_series(shape, ell);
      const auto residuals = convolution_residuals(series);
      for (int n = 1; n <= series.order(); ++n) {
        worst_convolution = std::max(worst_convolution, residuals[n - 1] / series.M[n]);
      }
      for (std::size_t n = 0; n + 2 < series.M.size(); ++n) {
        const double excess = series.M[n + 2] * series.M[n] / (series.M[n + 1] * series.M[n + 1]) - 1.0;
        worst_concavity = std::max(worst_concavity, excess);
      }
    }
  }
  o.pass = worst_identity < 1e-8 && worst_convolution < 1e-9 && worst_concavity <= 0.0;
  note(o, fmt("identities %.2e, convolution %.2e, log-concavity excess %.2e", worst_identity, worst_convolution,
              worst_concavity));
  return o;
}

Outcome hand_values() {
  Outcome o;
  const auto sw = make_square_well();
  const auto a = jost_coefficients(sw, 2);
  const auto m = reciprocal_coefficients(sw, 2);
  const double t1 = trace_iterated(sw, AngularMomentum(0), 1);
  const double t2 = trace_iterated(sw, AngularMomentum(0), 2);
  const double errors[] = {a[2] - 1.0 / 24.0, m[2] - 5.0 / 24.0, t1 - 0.5, t2 - 1.0 / 6.0};
  double worst = 0.0;
  for (double e : errors) worst = std::max(worst, std::abs(e));
  o.pass = worst < 1e-10;
  note(o, fmt("a2 %.15f, M2 %.15f", a[2], m[2]) + fmt(", t1 %.15f, t2 %.15f", t1, t2));
  note(o, fmt("largest error %.2e", worst));
  return o;
}

Outcome reduction() {
  Outcome o;
  double worst = 0.0;
  for (const auto& shape : shapes()) {
    for (int l = 0; l <= 5; ++l) {
      const AngularMomentum ell(l);
      const double direct = critical_g(shape, ell);
      const double reduced = critical_g(reduce_to_s_wave(shape, ell), AngularMomentum(0));
      worst = std::max(worst, std::abs(reduced / direct - 1.0));
    }
  }
  o.pass = worst < 1e-6;
  note(o, fmt("largest relative difference %.2e", worst));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"table 1 (Kellogg) reproduction, under 10 s", [] { return table_criterion(1, 10.0); }},
      {"table 2 (Kolomy) reproduction", [] { return table_criterion(2); }},
      {"table 3 (Rayleigh) reproduction", [] { return table_criterion(3); }},
      {"table 4 (alpha/omega) reproduction", [] { return table_criterion(4); }},
      {"table 5 (classic limits) reproduction", [] { return table_criterion(5); }},
      {"shooting oracle vs closed forms", oracle_agreement},
      {"sandwich around the oracle", sandwich},
      {"monotone sequences", monotonicity},
      {"identities, convolution, log-concavity", identities},
      {"hand-computed values", hand_values},
      {"S-wave reduction consistency", reduction},
  };
  int failed = 0;
  int unexplained = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      note(o, std::string("error: ") + e.what());
    }
    std::printf("%s  %2zu  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name);
    if (!o.detail.empty()) std::printf("%s\n", o.detail.c_str());
    if (!o.pass) {
      ++failed;
      if (!o.excused) ++unexplained;
    }
  }
  std::printf("%zu/%zu criteria pass", criteria.size() - failed, criteria.size());
  if (failed > 0 && unexplained == 0) std::printf("; every failing cell is a reference value contradicted by exact arithmetic");
  std::printf("\n");
  return unexplained == 0 ? 0 : 1;
}
