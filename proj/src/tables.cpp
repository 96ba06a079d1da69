#include "gcrit/tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "gcrit/classic_bounds.hpp"
#include "gcrit/cli.hpp"
#include "gcrit/errors.hpp"
#include "gcrit/kernel.hpp"
#include "gcrit/oracle.hpp"
#include "gcrit/sequences.hpp"

#ifndef GCRIT_DEFAULT_FIXTURE
#define GCRIT_DEFAULT_FIXTURE "data/reference_tables.json"
#endif

namespace gcrit {

std::string default_fixture_path() { return GCRIT_DEFAULT_FIXTURE; }

std::vector<TableSpec> load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open fixture " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidArgument, "malformed fixture " + path + ": " + e.what());
  }
  std::vector<TableSpec> tables;
  for (const auto& t : doc.at("tables")) {
    TableSpec spec;
    spec.number = t.at("number").get<int>();
    spec.title = t.value("title", "");
    for (const auto& c : t.at("columns")) {
      spec.columns.push_back(ColumnSpec{c.at("label").get<std::string>(), c.at("quantity").get<std::string>(),
                                        c.value("n", 0), c.value("iterations", 0)});
    }
    for (const auto& r : t.at("rows")) {
      RowSpec row{r.at("potential").get<std::string>(), r.at("ell").get<int>(), r.value("trial", ""),
                  r.at("cells").get<std::vector<std::string>>()};
      if (row.cells.size() != spec.columns.size()) {
        fail(ErrorKind::InvalidArgument, "table " + std::to_string(spec.number) + " row " + row.potential +
                                             " has " + std::to_string(row.cells.size()) + " cells");
      }
      spec.rows.push_back(std::move(row));
    }
    tables.push_back(std::move(spec));
  }
  return tables;
}

const TableSpec& find_table(const std::vector<TableSpec>& tables, int number) {
  for (const auto& t : tables) {
    if (t.number == number) return t;
  }
  throw UsageError(UsageError::Kind::InvalidValue, "no table " + std::to_string(number) + " in the fixture");
}

int printed_decimals(const std::string& cell) {
  const auto dot = cell.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(cell.size() - dot - 1);
}

double printed_tolerance(const std::string& cell) { return 1.5 * std::pow(10.0, -printed_decimals(cell)); }

int TableResult::failures() const {
  int count = 0;
  for (const auto& row : rows) {
    count += static_cast<int>(std::count_if(row.cells.begin(), row.cells.end(), [](const CellResult& c) { return !c.pass; }));
  }
  return count;
}

namespace {

// Lazily computed quantities of one (potential, ell) row.
class RowContext {
 public:
  RowContext(const RowSpec& row, int n_max, const QuadratureScheme& scheme)
      : shape_(select_potential(row.potential)), ell_(row.ell), trial_(row.trial), n_max_(n_max), scheme_(scheme) {}

  double value(const ColumnSpec& column) {
    const auto& q = column.quantity;
    if (q == "kellogg") return sequence(kellogg_, kellogg_sequence).bound(column.n);
    if (q == "kolomy") return sequence(kolomy_, kolomy_sequence).bound(column.n);
    if (q == "power") return sequence(power_, power_sequence).bound(column.n);
    if (q == "alpha") return ladder().alpha.bound(column.n);
    if (q == "omega") return ladder().omega.bound(column.n);
    if (q == "exact") return critical_g(shape_, ell_);
    if (q == "glaser") return glaser_lower(shape_, ell_, with_scheme(glaser_config())).value;
    if (q == "calogero1") return calogero_upper_linear(shape_, ell_, with_scheme(scale_config())).value;
    if (q == "calogero2") return calogero_upper_nonlinear(shape_, ell_, with_scheme(scale_config())).value;
    if (q == "variational") return variational_upper_closed(shape_, ell_, with_scheme(variational_config())).value;
    if (q == "chadan") return chadan_upper(shape_, ell_, scheme_);
    if (q == "rayleigh") {
      TrialFunctionSpec trial;
      const std::string family = !trial_.empty() ? trial_ : (shape_.support_cutoff() ? "power" : "exponential");
      if (family == "power") {
        trial.family = TrialFamily::power;
      } else if (family == "exponential") {
        trial.family = TrialFamily::exponential;
      } else {
        fail(ErrorKind::InvalidArgument, "unknown trial family " + family);
      }
      trial.iterations = column.iterations;
      return rayleigh_upper(op(), trial, with_scheme(scale_config())).value;
    }
    fail(ErrorKind::InvalidArgument, "unknown table quantity " + q);
  }

 private:
  OptimizerConfig with_scheme(OptimizerConfig c) const {
    c.scheme = scheme_;
    c.execution = Execution::serial;
    return c;
  }

  SequenceOptions options() const {
    SequenceOptions o;
    o.n_max = n_max_;
    o.stop_tolerance = 0.0;
    o.scheme = scheme_;
    return o;
  }

  const BirmanSchwingerOperator& op() {
    if (!op_) op_.emplace(shape_, ell_, scheme_);
    return *op_;
  }

  using SequenceFn = BoundSequence (*)(const BirmanSchwingerOperator&, const SequenceOptions&);

  const BoundSequence& sequence(std::optional<BoundSequence>& slot, SequenceFn method) {
    if (!slot) slot = method(op(), options());
    return *slot;
  }

  const AlphaOmega& ladder() {
    if (!ladder_) ladder_ = alpha_omega(shape_, ell_, options());
    return *ladder_;
  }

  PotentialShape shape_;
  AngularMomentum ell_;
  std::string trial_;
  int n_max_;
  QuadratureScheme scheme_;
  std::optional<BirmanSchwingerOperator> op_;
  std::optional<BoundSequence> power_, kellogg_, kolomy_;
  std::optional<AlphaOmega> ladder_;
};

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

}  // namespace

TableResult reproduce_table(const TableSpec& spec, const QuadratureScheme& scheme, Execution exec) {
  int n_max = 1;
  for (const auto& c : spec.columns) n_max = std::max(n_max, c.n);
  TableResult result;
  result.spec = spec;
  result.rows = map_indices(
      spec.rows.size(),
      [&](std::size_t r) {
        const auto& row = spec.rows[r];
        RowContext context(row, n_max, scheme);
        RowResult out{row.potential, row.ell, {}};
        for (std::size_t c = 0; c < spec.columns.size(); ++c) {
          CellResult cell;
          cell.expected = row.cells[c];
          cell.computed = context.value(spec.columns[c]);
          cell.rendered = fixed(cell.computed, printed_decimals(cell.expected));
          cell.tolerance = printed_tolerance(cell.expected);
          cell.pass = std::abs(cell.computed - std::stod(cell.expected)) <= cell.tolerance;
          out.cells.push_back(std::move(cell));
        }
        return out;
      },
      exec);
  return result;
}

std::string render_table(const TableResult& result) {
  std::ostringstream os;
  os << "Table " << result.spec.number << ": " << result.spec.title << "\n";
  auto row_label = [](const RowResult& row) { return row.potential + " (l=" + std::to_string(row.ell) + ")"; };
  std::size_t first = 10;
  for (const auto& row : result.rows) first = std::max(first, row_label(row).size() + 1);
  std::vector<std::size_t> width;
  for (std::size_t c = 0; c < result.spec.columns.size(); ++c) {
    std::size_t w = result.spec.columns[c].label.size();
    for (const auto& row : result.rows) w = std::max(w, row.cells[c].rendered.size() + 1);
    width.push_back(w + 2);
  }
  auto pad = [&os](const std::string& s, std::size_t w) { os << std::string(w > s.size() ? w - s.size() : 0, ' ') << s; };
  os << "potential" << std::string(first - 9, ' ');
  for (std::size_t c = 0; c < width.size(); ++c) pad(result.spec.columns[c].label, width[c]);
  os << "\n";
  for (const auto& row : result.rows) {
    const auto label = row_label(row);
    os << label << std::string(first - label.size(), ' ');
    for (std::size_t c = 0; c < width.size(); ++c) pad(row.cells[c].rendered + (row.cells[c].pass ? " " : "*"), width[c]);
    os << "\n";
  }
  int total = 0;
  for (const auto& row : result.rows) {
    for (std::size_t c = 0; c < row.cells.size(); ++c) {
      ++total;
      const auto& cell = row.cells[c];
      if (cell.pass) continue;
      os << "mismatch " << row_label(row) << " " << result.spec.columns[c].label << ": computed " << cell.rendered
         << ", reference " << cell.expected << ", tolerance " << fixed(cell.tolerance, printed_decimals(cell.expected) + 1)
         << "\n";
    }
  }
  os << "table " << result.spec.number << ": " << (total - result.failures()) << "/" << total << " cells match\n";
  return os.str();
}

}  // namespace gcrit
