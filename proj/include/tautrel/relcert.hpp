#pragma once

#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "tautrel/integrals.hpp"
#include "tautrel/rational.hpp"
#include "tautrel/taut_class.hpp"

namespace tautrel {

/// Intersection pairing of the degree-d basis against the complementary basis
/// of M_{g,n}; rows and columns are indices into basis(g, n, .).
struct PairingMatrix {
  int g = 0, n = 0, d = 0;
  std::vector<int> row_ids, col_ids;
  /// Nonzero entries only.
  std::map<std::pair<int, int>, Rational> entries;

  int rows() const { return static_cast<int>(row_ids.size()); }
  int cols() const { return static_cast<int>(col_ids.size()); }
  Rational at(int i, int j) const;
  std::vector<std::vector<Rational>> dense() const;

  /// "<rows> <cols>" then one "i j p/q" line per nonzero entry, row-major.
  std::string to_sparse_text() const;
  /// Reads the sparse text back (g, n, d and ids are not part of the format).
  static PairingMatrix parse_sparse(const std::string& text);
};

PairingMatrix pairing_matrix(int g, int n, int d);

/// Rows of the degree-d pairing matrix kept for repeated certification: the
/// pairings of a class are a sparse vector-matrix product.
class PairingTable {
 public:
  PairingTable(int g, int n, int d);

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  /// Same result as certify_zero(x, d).
  Certification<Rational> certify(const TautClass& x) const;

 private:
  int g_, n_, d_, cols_;
  std::vector<std::vector<std::pair<int, Rational>>> rows_;
};

/// Rank over Q by fraction-free elimination after clearing denominators.
int exact_rank(const std::vector<std::vector<Rational>>& m);
int exact_rank(const PairingMatrix& m);

struct BatchEntry {
  int g = 0, n = 0, d = 0;
  std::vector<int> a;
  bool certified = false;
  std::size_t terms = 0;
  double seconds = 0;
  /// "CERTIFIED g n d A=..." or "FAILED g n d A=... basis=<i>".
  std::string line;
};

struct BatchReport {
  int budget = 0;
  std::vector<BatchEntry> entries;
  /// Set when the run stopped at a failure: the relation record and pairings.
  std::optional<std::string> counterexample;
  /// True when the wall-clock cap ended the run early.
  bool truncated = false;
  double seconds = 0;

  bool ok() const { return !counterexample; }
  /// One line per entry; deterministic for a given budget.
  std::string log() const;
  /// JSON summary with per-type counts and timings.
  std::string summary_json() const;
};

/// (g, n) with 2g - 2 + n > 0 and 3g - 3 + n <= budget, in increasing dimension.
std::vector<std::pair<int, int>> types_within(int budget);

struct BatchOptions {
  int budget = 0;
  /// Further (g, n, A, d) relations to certify after the budget sweep.
  std::vector<std::tuple<int, int, std::vector<int>, int>> extra;
  std::optional<double> wall_clock_seconds;
  std::function<void(const BatchEntry&)> progress;
};

/// certify_zero on every relation of ptilde_enumerate(g, n) for the types
/// within the budget, then on the extras; stops at the first failure.
BatchReport batch_certify(const BatchOptions& options);

}  // namespace tautrel
