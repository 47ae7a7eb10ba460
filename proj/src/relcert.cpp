#include "tautrel/relcert.hpp"

#include <json.hpp>

#include <chrono>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "tautrel/integrals.hpp"
#include "tautrel/spin3.hpp"
#include "tautrel/strata.hpp"

namespace tautrel {

Rational PairingMatrix::at(int i, int j) const {
  auto it = entries.find({i, j});
  return it == entries.end() ? Rational(0) : it->second;
}

std::vector<std::vector<Rational>> PairingMatrix::dense() const {
  std::vector<std::vector<Rational>> out(static_cast<std::size_t>(rows()),
                                         std::vector<Rational>(static_cast<std::size_t>(cols()), Rational(0)));
  for (const auto& [ij, v] : entries) out[ij.first][ij.second] = v;
  return out;
}

std::string PairingMatrix::to_sparse_text() const {
  std::ostringstream os;
  os << rows() << ' ' << cols() << '\n';
  for (const auto& [ij, v] : entries) os << ij.first << ' ' << ij.second << ' ' << v.get_str() << '\n';
  return os.str();
}

PairingMatrix PairingMatrix::parse_sparse(const std::string& text) {
  std::istringstream is(text);
  PairingMatrix m;
  int r = -1, c = -1;
  if (!(is >> r >> c) || r < 0 || c < 0) throw std::invalid_argument("sparse matrix: bad header");
  for (int i = 0; i < r; ++i) m.row_ids.push_back(i);
  for (int j = 0; j < c; ++j) m.col_ids.push_back(j);
  int i = 0, j = 0;
  std::string v;
  while (is >> i >> j >> v) {
    if (i < 0 || i >= r || j < 0 || j >= c) throw std::invalid_argument("sparse matrix: index out of range");
    const Rational x = parse_rational(v);
    if (!is_zero(x)) m.entries[{i, j}] = x;
  }
  if (!is.eof()) throw std::invalid_argument("sparse matrix: malformed entry");
  return m;
}

PairingMatrix pairing_matrix(int g, int n, int d) {
  const int dim = 3 * g - 3 + n;
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) throw std::invalid_argument("unstable type (g, n)");
  if (d < 0 || d > dim) throw std::invalid_argument("degree out of range");
  PairingMatrix m;
  m.g = g;
  m.n = n;
  m.d = d;
  const auto& rows = basis(g, n, d);
  const auto& cols = basis(g, n, dim - d);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row_ids.push_back(static_cast<int>(i));
  for (std::size_t j = 0; j < cols.size(); ++j) m.col_ids.push_back(static_cast<int>(j));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      Rational v = pair_basic(rows[i], cols[j]);
      if (!is_zero(v)) m.entries[{static_cast<int>(i), static_cast<int>(j)}] = std::move(v);
    }
  return m;
}

PairingTable::PairingTable(int g, int n, int d) : g_(g), n_(n), d_(d) {
  const int dim = 3 * g - 3 + n;
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) throw std::invalid_argument("unstable type (g, n)");
  if (d < 0 || d > dim) throw std::invalid_argument("degree out of range");
  const auto& rows = basis(g, n, d);
  const auto& cols = basis(g, n, dim - d);
  cols_ = static_cast<int>(cols.size());
  rows_.resize(rows.size());
  // The pairing is symmetric, so the larger degree is filled from the smaller one.
  const bool flip = d > dim - d;
  const auto& outer = flip ? cols : rows;
  const auto& inner = flip ? rows : cols;
  for (std::size_t i = 0; i < outer.size(); ++i)
    for (std::size_t j = 0; j < inner.size(); ++j) {
      Rational v = pair_basic(outer[i], inner[j]);
      if (is_zero(v)) continue;
      if (flip) rows_[j].emplace_back(static_cast<int>(i), std::move(v));
      else rows_[i].emplace_back(static_cast<int>(j), std::move(v));
    }
}

Certification<Rational> PairingTable::certify(const TautClass& x) const {
  if (x.genus() != g_ || x.num_markings() != n_) throw std::invalid_argument("class of the wrong type");
  Certification<Rational> out;
  out.g = g_;
  out.n = n_;
  out.d = d_;
  out.pairings.assign(static_cast<std::size_t>(cols_), Rational(0));
  for (const auto& [k, e] : x.terms()) {
    if (e.graph.degree() != d_) throw std::invalid_argument("certify needs a homogeneous class");
    const int i = basis_index(e.graph);
    if (i < 0) throw std::logic_error("class term is not a basis element");
    for (const auto& [j, v] : rows_[i]) out.pairings[j] += e.coeff * v;
  }
  for (int j = 0; j < cols_; ++j)
    if (!is_zero(out.pairings[j])) {
      out.certified = false;
      out.first_failure = j;
      break;
    }
  return out;
}

int exact_rank(const std::vector<std::vector<Rational>>& m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::vector<std::vector<mpz_class>> a;
  for (const auto& row : m) {
    if (row.size() != cols) throw std::invalid_argument("ragged matrix");
    mpz_class l = 1;
    for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> r;
    for (const auto& x : row) r.push_back(x.get_num() * (l / x.get_den()));
    a.push_back(std::move(r));
  }
  // Bareiss: after step k every entry below the pivot rows is a k x k minor.
  int rank = 0;
  mpz_class prev = 1;
  const std::size_t rows = a.size();
  for (std::size_t col = 0; col < cols && static_cast<std::size_t>(rank) < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const mpz_class p = a[rank][col];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        a[i][j] = a[i][j] * p - a[i][col] * a[rank][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

int exact_rank(const PairingMatrix& m) { return exact_rank(m.dense()); }

std::vector<std::pair<int, int>> types_within(int budget) {
  std::vector<std::pair<int, int>> out;
  for (int dim = 0; dim <= budget; ++dim)
    for (int g = 0; 3 * g - 3 <= dim; ++g) {
      const int n = dim - 3 * g + 3;
      if (2 * g - 2 + n > 0) out.emplace_back(g, n);
    }
  return out;
}

namespace {

std::string a_text(const std::vector<int>& a) {
  std::string s = "A=";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s;
}

}  // namespace

BatchReport batch_certify(const BatchOptions& options) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  BatchReport report;
  report.budget = options.budget;
  std::vector<std::tuple<int, int, std::vector<int>, int>> work;
  for (const auto& [g, n] : types_within(options.budget))
    for (const auto& [a, d] : ptilde_enumerate(g, n)) work.emplace_back(g, n, a, d);
  work.insert(work.end(), options.extra.begin(), options.extra.end());
  std::map<std::pair<std::pair<int, int>, int>, PairingTable> tables;
  for (const auto& [g, n, a, d] : work) {
    const double elapsed = std::chrono::duration<double>(clock::now() - start).count();
    if (options.wall_clock_seconds && elapsed > *options.wall_clock_seconds) {
      report.truncated = true;
      break;
    }
    const auto t0 = clock::now();
    const TautClass r = relation_class(g, n, a, d);
    // Tables are only kept for the current type.
    if (!tables.empty() && std::get<0>(tables.begin()->first) != std::pair(g, n)) tables.clear();
    Certification<Rational> cert;
    if (r.is_zero()) {
      cert = certify_zero(r, d);
    } else {
      auto it = tables.find({{g, n}, d});
      if (it == tables.end()) it = tables.emplace(std::pair(std::pair(g, n), d), PairingTable(g, n, d)).first;
      cert = it->second.certify(r);
    }
    BatchEntry e;
    e.g = g;
    e.n = n;
    e.d = d;
    e.a = a;
    e.certified = cert.certified;
    e.terms = r.terms().size();
    e.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    e.line = cert.summary(a_text(a));
    report.entries.push_back(e);
    if (options.progress) options.progress(e);
    if (!cert.certified) {
      std::ostringstream os;
      os << relation_record(g, n, a, d, r) << "pairings";
      for (const auto& p : cert.pairings) os << ' ' << p.get_str();
      os << '\n';
      report.counterexample = os.str();
      break;
    }
  }
  report.seconds = std::chrono::duration<double>(clock::now() - start).count();
  return report;
}

std::string BatchReport::log() const {
  std::string out;
  for (const auto& e : entries) out += e.line + '\n';
  return out;
}

std::string BatchReport::summary_json() const {
  nlohmann::ordered_json j;
  j["budget"] = budget;
  j["relations"] = entries.size();
  std::size_t certified = 0;
  std::map<std::pair<int, int>, std::tuple<int, int, double>> per_type;
  for (const auto& e : entries) {
    certified += e.certified;
    auto& [count, ok, secs] = per_type[{e.g, e.n}];
    ++count;
    ok += e.certified;
    secs += e.seconds;
  }
  j["certified"] = certified;
  j["ok"] = ok();
  j["truncated"] = truncated;
  j["seconds"] = seconds;
  auto types = nlohmann::ordered_json::array();
  for (const auto& [gn, v] : per_type)
    types.push_back({{"g", gn.first}, {"n", gn.second}, {"relations", std::get<0>(v)}, {"certified", std::get<1>(v)},
                     {"seconds", std::get<2>(v)}});
  j["types"] = types;
  if (counterexample) j["counterexample"] = *counterexample;
  return j.dump(2);
}

}  // namespace tautrel
