#pragma once

#include <string>
#include <vector>

#include "gcrit/parallel.hpp"
#include "gcrit/quadrature.hpp"

namespace gcrit {

/// What a column holds: quantity is one of kellogg, kolomy, power, alpha,
/// omega (member n), rayleigh (after `iterations` operator applications),
/// glaser, calogero1, calogero2, variational, chadan, exact.
struct ColumnSpec {
  std::string label;
  std::string quantity;
  int n = 0;
  int iterations = 0;
};

struct RowSpec {
  std::string potential;
  int ell = 0;
  /// Trial family for rayleigh columns: power or exponential.
  std::string trial;
  /// Reference values as printed, so the precision travels with them.
  std::vector<std::string> cells;
};

struct TableSpec {
  int number = 0;
  std::string title;
  std::vector<ColumnSpec> columns;
  std::vector<RowSpec> rows;
};

std::vector<TableSpec> load_fixture(const std::string& path);
const TableSpec& find_table(const std::vector<TableSpec>& tables, int number);
std::string default_fixture_path();

/// Digits after the decimal point of a printed value.
int printed_decimals(const std::string& cell);
/// 1.5 units of the last printed digit.
double printed_tolerance(const std::string& cell);

struct CellResult {
  std::string expected;
  double computed = 0.0;
  /// computed at the expected cell's precision.
  std::string rendered;
  double tolerance = 0.0;
  bool pass = false;
};

struct RowResult {
  std::string potential;
  int ell = 0;
  std::vector<CellResult> cells;
};

struct TableResult {
  TableSpec spec;
  std::vector<RowResult> rows;

  int failures() const;
  bool pass() const { return failures() == 0; }
};

/// Computes every cell of the table. Rows are independent and run
/// concurrently under Execution::parallel; the result does not depend on it.
TableResult reproduce_table(const TableSpec& spec, const QuadratureScheme& scheme = {},
                            Execution exec = Execution::parallel);

/// Fixed-width text rendering with a per-cell mark and a summary line.
std::string render_table(const TableResult& result);

}  // namespace gcrit
