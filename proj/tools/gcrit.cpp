// Command-line front end: bounds, table reproduction and the shooting oracle.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gcrit/cli.hpp"
#include "gcrit/errors.hpp"
#include "gcrit/tables.hpp"

namespace {

enum ExitStatus { ok = 0, usage = 1, numeric = 2, mismatch = 3 };

struct Flags {
  std::string potential = "sw";
  int ell = 0;
  std::string methods = "power,kellogg,kolomy,alpha,omega";
  int iters = 4;
  std::string format = "text";
  double tol = 0.0;
  int table = 0;
  std::string fixture = gcrit::default_fixture_path();
};

gcrit::RunRequest make_request(const Flags& f, bool with_methods) {
  gcrit::RunRequest r;
  r.potential = f.potential;
  r.ell = f.ell;
  if (with_methods) r.methods = gcrit::parse_methods(f.methods);
  r.n_max = f.iters;
  r.format = gcrit::parse_format(f.format);
  if (f.tol != 0.0) r.tolerance = f.tol;
  r.validate();
  return r;
}

std::string csv_cells(const gcrit::TableResult& result) {
  std::string out = "table,potential,ell,column,reference,computed,tolerance,status\n";
  char buf[512];
  for (const auto& row : result.rows) {
    for (std::size_t c = 0; c < row.cells.size(); ++c) {
      const auto& cell = row.cells[c];
      std::snprintf(buf, sizeof buf, "%d,%s,%d,%s,%s,%.17g,%.3g,%s\n", result.spec.number, row.potential.c_str(), row.ell,
                    result.spec.columns[c].label.c_str(), cell.expected.c_str(), cell.computed, cell.tolerance,
                    cell.pass ? "pass" : "fail");
      out += buf;
    }
  }
  return out;
}

int run_reproduce(const Flags& f) {
  if (f.table < 1 || f.table > 5) {
    std::cerr << "error: --table must be between 1 and 5\n";
    return usage;
  }
  const auto format = gcrit::parse_format(f.format);
  auto scheme = gcrit::scheme_from_environment();
  if (f.tol != 0.0) scheme.rel_tolerance = f.tol;
  const auto tables = gcrit::load_fixture(f.fixture);
  const auto result = gcrit::reproduce_table(gcrit::find_table(tables, f.table), scheme);
  if (format == gcrit::OutputFormat::text) {
    std::cout << gcrit::render_table(result);
  } else if (format == gcrit::OutputFormat::csv) {
    std::cout << csv_cells(result);
  } else {
    std::cout << "[\n";
    bool first = true;
    char buf[512];
    for (const auto& row : result.rows) {
      for (std::size_t c = 0; c < row.cells.size(); ++c) {
        const auto& cell = row.cells[c];
        std::snprintf(buf, sizeof buf,
                      "%s  {\"table\": %d, \"potential\": \"%s\", \"ell\": %d, \"column\": \"%s\", \"reference\": \"%s\", "
                      "\"computed\": %.17g, \"tolerance\": %.3g, \"pass\": %s}",
                      first ? "" : ",\n", result.spec.number, row.potential.c_str(), row.ell,
                      result.spec.columns[c].label.c_str(), cell.expected.c_str(), cell.computed, cell.tolerance,
                      cell.pass ? "true" : "false");
        std::cout << buf;
        first = false;
      }
    }
    std::cout << "\n]\n";
  }
  return result.pass() ? ok : mismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brackets for the critical coupling of attractive central potentials"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&f](CLI::App* cmd) {
    cmd->add_option("--potential", f.potential, "sw, exp, pe or file:PATH");
    cmd->add_option("--ell", f.ell, "partial wave");
    cmd->add_option("--format", f.format, "text, csv or json");
    cmd->add_option("--tol", f.tol, "quadrature relative tolerance (overrides GCRIT_TOL)");
  };
  auto* bounds = app.add_subcommand("bounds", "bounds from the requested methods and the best bracket");
  add_common(bounds);
  bounds->add_option("--method", f.methods,
                     "comma-separated list of power,kellogg,kolomy,alpha,omega,glaser,calogero1,calogero2,"
                     "variational,rayleigh,chadan");
  bounds->add_option("--iters", f.iters, "number of iterations");

  auto* oracle = app.add_subcommand("oracle", "critical coupling by zero-energy shooting");
  add_common(oracle);

  auto* reproduce = app.add_subcommand("reproduce", "recompute a reference table and compare cell by cell");
  reproduce->add_option("--table", f.table, "table number 1..5")->required();
  reproduce->add_option("--format", f.format, "text, csv or json");
  reproduce->add_option("--tol", f.tol, "quadrature relative tolerance");
  reproduce->add_option("--fixture", f.fixture, "reference table file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*bounds) {
      const auto request = make_request(f, true);
      std::cout << gcrit::format_records(gcrit::cmd_bounds(request), request.format);
      return ok;
    }
    if (*oracle) {
      const auto request = make_request(f, false);
      const auto records = gcrit::cmd_oracle(request);
      std::cout << gcrit::format_records(records, request.format);
      if (request.format == gcrit::OutputFormat::text && records.size() == 2) {
        std::printf("relative difference %.3e\n", std::abs(records[0].value - records[1].value) / records[1].value);
      }
      return ok;
    }
    return run_reproduce(f);
  } catch (const gcrit::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const gcrit::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return numeric;
  }
}
