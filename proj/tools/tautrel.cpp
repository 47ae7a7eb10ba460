#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tautrel/enumerate.hpp"
#include "tautrel/integrals.hpp"
#include "tautrel/relcert.hpp"
#include "tautrel/spin3.hpp"

using namespace tautrel;

namespace {

enum Exit { kOk = 0, kUsage = 1, kFailed = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int order = -1;
  std::string phi;
  int budget = -1;
  int jobs = 1;
  std::string out;
};

std::vector<int> parse_list(const std::string& text) {
  std::vector<int> out;
  if (text.empty() || text == "-") return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError("malformed list entry '" + item + "'");
    }
    if (used != item.size() || v < 0) throw UsageError("malformed list entry '" + item + "'");
    out.push_back(v);
  }
  return out;
}

void require_stable(int g, int n) {
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) throw UsageError("unstable type (g, n) = (" + std::to_string(g) + ", " + std::to_string(n) + ")");
}

std::vector<int> parse_a(const std::string& text, int n, bool extended) {
  const auto a = parse_list(text);
  if (static_cast<int>(a.size()) != n) throw UsageError("A must have n = " + std::to_string(n) + " entries");
  for (int x : a)
    if (extended ? x % 3 == 2 : x > 1) throw UsageError(extended ? "entries of A must be 0 or 1 mod 3" : "entries of A must be 0 or 1");
  return a;
}

std::string list_text(const std::vector<int>& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s;
}

void emit(const Config& cfg, const std::string& name, const std::string& text) {
  std::cout << text;
  if (cfg.out.empty()) return;
  std::filesystem::create_directories(cfg.out);
  std::ofstream f(std::filesystem::path(cfg.out) / name);
  if (!f) throw std::runtime_error("cannot write " + name);
  f << text;
}

int cmd_graphs(const Config& cfg, int g, int n, int edges) {
  require_stable(g, n);
  std::vector<StableGraph> list;
  for (const auto& c : stable_graph_classes(g, n))
    if (edges < 0 || c.graph.num_edges() == edges) list.push_back(c.graph);
  std::ostringstream os;
  os << list.size() << '\n';
  for (const auto& x : list) os << x.to_text() << '\n';
  emit(cfg, "graphs.txt", os.str());
  return kOk;
}

TautClass relation_from(int g, int n, int d, const std::string& a_text, const std::string& sigma_text) {
  require_stable(g, n);
  const auto sigma = parse_list(sigma_text);
  const auto a = parse_a(a_text, n, true);
  bool plain = sigma.empty();
  for (int x : a) plain = plain && x <= 1;
  for (int s : sigma)
    if (s % 3 == 2) throw UsageError("parts of sigma must be 0 or 1 mod 3");
  if (d < 0) throw UsageError("degree must be nonnegative");
  return plain ? relation_class(g, n, a, d) : extended_relation(g, n, a, sigma, d);
}

int cmd_relation(const Config& cfg, int g, int n, int d, const std::string& a_text, const std::string& sigma) {
  const auto r = relation_from(g, n, d, a_text, sigma);
  emit(cfg, "relation.txt", relation_record(g, n, parse_list(a_text), d, r));
  return kOk;
}

int cmd_witten(const Config& cfg, int g, int n, const std::string& a_text) {
  require_stable(g, n);
  const auto a = parse_a(a_text, n, false);
  const int dim = 3 * g - 3 + n;
  std::ostringstream os;
  os << "W g=" << g << " n=" << n << " A=" << list_text(a) << '\n';
  if (cfg.phi.empty()) {
    os << witten_class(g, a).to_text();
  } else {
    const int order = cfg.order < 0 ? dim + 1 : cfg.order;
    if (order < dim) throw UsageError("--order must be at least 3g - 3 + n");
    const PhiTautClass w = shifted_witten_action(std::max(order, dim + 1))->evaluate(g, a);
    if (cfg.phi == "symbolic") {
      os << w.to_text();
    } else {
      Rational phi;
      try {
        phi = parse_rational(cfg.phi);
      } catch (const std::exception&) {
        throw UsageError("--phi takes p/q or 'symbolic'");
      }
      if (sgn(phi) <= 0) throw UsageError("--phi must be positive");
      TautClass x(g, n);
      for (const auto& [k, e] : w.terms()) {
        const auto v = e.coeff.specialize(phi);
        if (!v) throw UsageError("phi^(1/4) powers are irrational at this --phi");
        x.add(e.graph, *v);
      }
      os << x.to_text();
    }
  }
  emit(cfg, "witten.txt", os.str());
  return kOk;
}

int cmd_certify_one(const Config& cfg, int g, int n, int d, const std::string& a_text, const std::string& sigma) {
  const auto r = relation_from(g, n, d, a_text, sigma);
  // Forgetting sigma lowers the degree, so take it from the class when possible.
  const auto c = r.is_zero() ? certify_zero(r, d) : certify_zero(r);
  std::string id = "A=" + list_text(parse_list(a_text));
  if (!sigma.empty()) id += " sigma=" + sigma;
  emit(cfg, "certify.txt", c.summary(id) + '\n');
  return c.certified ? kOk : kFailed;
}

int cmd_certify_batch(const Config& cfg) {
  BatchOptions o;
  o.budget = cfg.budget;
  o.progress = [](const BatchEntry& e) { std::cout << e.line << std::endl; };
  const auto report = batch_certify(o);
  if (!cfg.out.empty()) {
    std::filesystem::create_directories(cfg.out);
    std::ofstream(std::filesystem::path(cfg.out) / "batch.log") << report.log();
    std::ofstream(std::filesystem::path(cfg.out) / "summary.json") << report.summary_json() << '\n';
  }
  if (report.counterexample) {
    std::cout << *report.counterexample;
    return kFailed;
  }
  std::cout << "certified " << report.entries.size() << " relations\n";
  return kOk;
}

int cmd_rank(const Config& cfg, int g, int n, int d) {
  require_stable(g, n);
  if (d < 0 || d > 3 * g - 3 + n) throw UsageError("degree out of range");
  const auto m = pairing_matrix(g, n, d);
  const int r = exact_rank(m);
  std::cout << "g=" << g << " n=" << n << " d=" << d << " rows=" << m.rows() << " cols=" << m.cols() << " rank=" << r
            << " relations=" << m.rows() - r << '\n';
  if (!cfg.out.empty()) {
    std::filesystem::create_directories(cfg.out);
    std::ofstream(std::filesystem::path(cfg.out) / ("pairing_" + std::to_string(g) + "_" + std::to_string(n) + "_" +
                                                   std::to_string(d) + ".txt"))
        << m.to_sparse_text();
  }
  return kOk;
}

int cmd_integral(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  // The type comes from a record header or from the first graph.
  static const std::regex type_re(R"(g=(\d+) n=(\d+))");
  std::smatch m;
  if (!std::regex_search(text, m, type_re)) throw UsageError("input has no class");
  const int g = std::stoi(m[1]), n = std::stoi(m[2]);
  std::string body;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);)
    if (line.find(" * G ") != std::string::npos) body += line + '\n';
  const bool symbolic = body.find("phi") != std::string::npos;
  const int dim = 3 * g - 3 + n;
  if (symbolic) {
    const auto x = PhiTautClass::parse(body, g, n).part(dim);
    std::cout << integrate(x).to_string() << '\n';
  } else {
    const auto x = TautClass::parse(body, g, n).part(dim);
    std::cout << integrate(x).get_str() << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tautological relations from the 3-spin theory"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--order", cfg.order, "R-matrix truncation order");
  app.add_option("--phi", cfg.phi, "evaluate the shifted class at phi = p/q, or 'symbolic'");
  app.add_option("--budget", cfg.budget, "max 3g - 3 + n for batch certification");
  app.add_option("--jobs", cfg.jobs, "worker count")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "also write results into this directory");

  int g = 0, n = 0, d = 0, edges = -1;
  std::string a, sigma, path;

  auto* graphs = app.add_subcommand("graphs", "stable graphs of type (g, n)");
  graphs->add_option("g", g)->required();
  graphs->add_option("n", n)->required();
  graphs->add_option("--edges", edges, "only graphs with this many edges");

  auto* relation = app.add_subcommand("relation", "the relation R^d_{g,A}");
  relation->add_option("g", g)->required();
  relation->add_option("n", n)->required();
  relation->add_option("d", d)->required();
  relation->add_option("A", a, "comma-separated entries")->required();
  relation->add_option("--sigma", sigma, "parts appended and forgotten");

  auto* witten = app.add_subcommand("witten", "Witten's 3-spin class W_{g,n}(A)");
  witten->add_option("g", g)->required();
  witten->add_option("n", n)->required();
  witten->add_option("A", a)->required();

  auto* certify = app.add_subcommand("certify", "certify a relation, or all relations within --budget");
  certify->add_option("g", g);
  certify->add_option("n", n);
  certify->add_option("d", d);
  certify->add_option("A", a);
  certify->add_option("--sigma", sigma);

  auto* rank = app.add_subcommand("rank", "rank of the pairing matrix in degree d");
  rank->add_option("g", g)->required();
  rank->add_option("n", n)->required();
  rank->add_option("d", d)->required();

  auto* integral = app.add_subcommand("integral", "integral of the top-degree part of a class");
  integral->add_option("file", path, "class text (default: standard input)");

  for (auto* cmd : {graphs, relation, witten, certify, rank, integral}) cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*graphs) return cmd_graphs(cfg, g, n, edges);
    if (*relation) return cmd_relation(cfg, g, n, d, a, sigma);
    if (*witten) return cmd_witten(cfg, g, n, a);
    if (*certify) {
      if (certify->count("A")) return cmd_certify_one(cfg, g, n, d, a, sigma);
      if (cfg.budget < 0) throw UsageError("certify needs g n d A or --budget");
      return cmd_certify_batch(cfg);
    }
    if (*rank) return cmd_rank(cfg, g, n, d);
    if (*integral) return cmd_integral(path);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
