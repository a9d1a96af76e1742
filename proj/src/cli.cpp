#include "extremal/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "extremal/constructions.hpp"
#include "extremal/errors.hpp"
#include "extremal/graph6.hpp"
#include "extremal/permanent.hpp"
#include "extremal/search.hpp"

namespace extremal::cli {
namespace {

std::string format_exact_or_log(const FactorialPowerProduct& exact, bool require_integer) {
  if (auto c = exact.to_count()) return c->str();
  if (require_integer) throw PreconditionError("--exact: the value is not an integer");
  return format_log_value(exact.to_log_value());
}

void print_pair(std::ostream& out, const std::pair<LogValue, LogValue>& b) {
  out << "bound,value\n"
      << "lower," << format_log_value(b.first) << '\n'
      << "upper," << format_log_value(b.second) << '\n';
}

/// First whitespace-separated token of every non-empty line.
std::vector<std::string> read_codes(std::istream& in) {
  std::vector<std::string> codes;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream tokens(line);
    std::string code;
    if (tokens >> code) codes.push_back(code);
  }
  return codes;
}

std::vector<std::string> gather_codes(const std::vector<std::string>& inline_codes, const std::string& file,
                                      std::istream& in) {
  std::vector<std::string> codes = inline_codes;
  if (!file.empty()) {
    std::ifstream f(file);
    if (!f) throw PreconditionError("cannot open input file " + file);
    auto more = read_codes(f);
    codes.insert(codes.end(), more.begin(), more.end());
  }
  if (inline_codes.empty() && file.empty()) codes = read_codes(in);
  return codes;
}

ZeroOneMatrix matrix_of(const std::string& code) {
  if (looks_like_digraph6(code)) return parse_digraph6(code).adjacency_matrix();
  const Graph g = parse_graph6(code);
  Digraph d(g.num_vertices());
  for (int u = 0; u < g.num_vertices(); ++u) {
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (g.has_edge(u, v)) d.add_arc(u, v);
    }
  }
  return d.adjacency_matrix();
}

Count count_one(const std::string& what, const std::string& code) {
  if (what == "matchings") {
    if (looks_like_digraph6(code)) throw PreconditionError("matchings expects graph6 input");
    return count_perfect_matchings(parse_graph6(code));
  }
  if (what == "2factors" && looks_like_digraph6(code)) return count_2factors(parse_digraph6(code));
  return permanent(matrix_of(code));
}

std::optional<std::filesystem::path> resolve_cache(const std::string& flag) {
  if (!flag.empty()) return std::filesystem::path(flag);
  return cache_dir_from_env();
}

SweepConfig make_config(int workers, const std::string& cache) {
  if (workers < 1) throw PreconditionError("--workers must be at least 1");
  SweepConfig c;
  c.max_vertices = kMaxSparseEnumerationOrder;
  c.worker_count = workers;
  c.cache_path = resolve_cache(cache);
  return c;
}

void print_record(std::ostream& out, const ExtremalRecord& r) {
  out << r.n_vertices << ',' << r.m_edges << ',' << r.max_count << ',' << r.marker() << ',';
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) out << (i ? " " : "") << r.witnesses[i];
  out << '\n';
}

constexpr const char* kRecordHeader = "n,m,max,marker,witnesses\n";

long long pairs(int n) { return static_cast<long long>(n) * (n - 1) / 2; }

void run_table2(std::ostream& out, std::vector<int> orders, const SweepConfig& config) {
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  for (int n : orders) {
    if (n < 2 || n % 2) throw PreconditionError("table2 orders must be even and at least 2");
    if (n > kMaxEnumerationOrder) throw SizeLimitError("table2 order " + std::to_string(n) + " exceeds " + std::to_string(kMaxEnumerationOrder));
  }
  long long last = 0;
  for (int n : orders) last = std::max(last, pairs(n));
  out << 'm';
  for (int n : orders) out << ',' << n;
  out << '\n';
  for (long long m = 1; m <= last; ++m) {
    std::vector<std::string> cells;
    bool any = false;
    for (int n : orders) {
      std::string cell;
      if (2 * m >= n && m <= pairs(n)) {
        const ExtremalRecord r = sweep_mu(n, m, config);
        if (r.max_count != 0) cell = r.cell();
      }
      any = any || !cell.empty();
      cells.push_back(cell);
    }
    if (!any) continue;
    out << m;
    for (const auto& c : cells) out << ',' << c;
    out << '\n';
  }
}

void run_figure(std::ostream& out, const std::string& kind, int n, long long max_m, bool compute,
                const SweepConfig& config) {
  if (n < 2 || n % 2) throw PreconditionError("figure order must be even and at least 2");
  if (n > kMaxEnumerationOrder) throw SizeLimitError("figure order " + std::to_string(n) + " exceeds " + std::to_string(kMaxEnumerationOrder));
  const long long lo = n / 2;
  const long long hi = max_m > 0 ? std::min(max_m, pairs(n)) : pairs(n);
  std::vector<ExtremalRecord> records;
  if (compute) {
    for (long long m = lo; m <= hi; ++m) records.push_back(sweep_mu(n, m, config));
  } else {
    const std::string hint = "run `extremal sweep mu --n " + std::to_string(n) + " --cache DIR` first";
    if (!config.cache_path) throw PreconditionError("no cache directory (--cache or EXTREMAL_CACHE_DIR); " + hint);
    const ResultCache cache(*config.cache_path, "mu");
    for (long long m = lo; m <= hi; ++m) {
      auto r = cache.lookup(n, m);
      if (!r) throw PreconditionError("cache has no entry for n=" + std::to_string(n) + ", m=" + std::to_string(m) + "; " + hint);
      records.push_back(*r);
    }
  }
  if (kind == "mu") {
    out << "m,mu\n";
    for (const auto& r : records) out << r.m_edges << ',' << r.max_count << '\n';
    return;
  }
  out << "m,ratio\n";
  for (const auto& r : records) {
    const double log_ratio = omega(n, r.m_edges).log() - log_count(r.max_count);
    std::ostringstream cell;
    cell << std::fixed << std::setprecision(6) << std::exp(log_ratio);
    out << r.m_edges << ',' << cell.str() << '\n';
  }
}

}  // namespace

std::string format_log_value(const LogValue& v) {
  std::ostringstream s;
  if (v.is_zero()) return "0";
  if (v.log() < std::log(1e15)) {
    s << std::fixed << std::setprecision(6) << v.value();
  } else {
    const double exponent = std::floor(v.log() / std::log(10.0));
    const double mantissa = std::exp(v.log() - exponent * std::log(10.0));
    s << std::fixed << std::setprecision(9) << mantissa << 'e' << static_cast<long long>(exponent);
  }
  return s.str();
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal counts of perfect matchings, permanents and 2-factors"};
  app.name("extremal");
  app.require_subcommand(1);

  int workers = 1;
  std::string cache;
  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--cache", cache, "Result cache directory (default: $EXTREMAL_CACHE_DIR)");
  };

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Evaluate upper and lower bounds");
  bounds->require_subcommand(1);
  bool exact = false;
  int vertices = 0, n = 0, k = 0, p = 0;
  long long edges = 0, total = 0;
  std::string code;
  auto* b_omega = bounds->add_subcommand("omega", "Upper bound on perfect matchings for given vertices and edges");
  b_omega->add_option("--vertices", vertices)->required();
  b_omega->add_option("--edges", edges)->required();
  b_omega->add_flag("--exact", exact, "Require an exact integer value");
  auto* b_theta = bounds->add_subcommand("theta", "Balanced factorial-root product for k parts of total M");
  b_theta->add_option("--k", k)->required();
  b_theta->add_option("--total", total)->required();
  b_theta->add_flag("--exact", exact);
  auto* b_af = bounds->add_subcommand("af", "Degree bound on the perfect matchings of a graph6 graph");
  b_af->add_option("graph6", code)->required();
  b_af->add_flag("--exact", exact);
  auto* b_bregman = bounds->add_subcommand("bregman", "Row-sum bound on the permanent of a (di)graph6 adjacency matrix");
  b_bregman->add_option("code", code)->required();
  b_bregman->add_flag("--exact", exact);
  auto* b_tau = bounds->add_subcommand("tau", "Bounds on the maximum tournament permanent");
  b_tau->add_option("--n", n)->required();
  auto* b_rho = bounds->add_subcommand("rho", "Bounds on the maximum 2-factor count of orientations of K_{n,n}");
  b_rho->add_option("--n", n)->required();
  b_rho->add_flag("--exact", exact, "Print the lower bound as an exact integer");
  auto* b_vdw = bounds->add_subcommand("vdw", "Lower bound (k/e)^n for k-regular bipartite graphs");
  b_vdw->add_option("--n", n)->required();
  b_vdw->add_option("--k", k)->required();
  auto* b_ratio = bounds->add_subcommand("ratio", "a_p = (p!)^(1/p) / ((p+1)!)^(1/(p+1))");
  b_ratio->add_option("--p", p)->required();
  auto* b_stirling = bounds->add_subcommand("stirling", "Stirling bracket around p!");
  b_stirling->add_option("--p", p)->required();

  // count
  auto* count = app.add_subcommand("count", "Exact counts for graph6/digraph6 input (arguments, --file, or stdin)");
  std::string what;
  std::vector<std::string> codes;
  std::string file;
  count->add_option("what", what, "matchings, permanent or 2factors")
      ->required()
      ->check(CLI::IsMember({"matchings", "permanent", "2factors"}));
  count->add_option("codes", codes, "Encoded graphs");
  count->add_option("--file", file, "File with one code per line");

  // construct
  auto* construct = app.add_subcommand("construct", "Emit a construction and its exact count");
  std::string family;
  construct->add_option("family", family, "extremal, bt0, bt1, bt2 or tournament")
      ->required()
      ->check(CLI::IsMember({"extremal", "bt0", "bt1", "bt2", "tournament"}));
  construct->add_option("--vertices", vertices);
  construct->add_option("--edges", edges);
  construct->add_option("--n", n);

  // tables and figures
  auto* table1 = app.add_subcommand("table1", "Maximum tournament permanents with reference bounds (CSV)");
  int min_n = 3, max_n = 9;
  table1->add_option("--min-n", min_n);
  table1->add_option("--max-n", max_n);
  add_run_flags(table1);
  auto* table2 = app.add_subcommand("table2", "Maximum perfect matching counts by vertices and edges (CSV)");
  std::vector<int> orders{4, 6, 8};
  table2->add_option("--vertices", orders, "Even vertex counts (columns)")->delimiter(',');
  add_run_flags(table2);
  auto* figure = app.add_subcommand("figure", "Plot data: `mu` gives (m, mu), `ratio` gives (m, omega/mu)");
  std::string figure_kind;
  long long max_m = 0;
  bool compute = false;
  figure->add_option("kind", figure_kind)->required()->check(CLI::IsMember({"mu", "ratio"}));
  figure->add_option("--n", n)->required();
  figure->add_option("--max-m", max_m, "Last edge count (default: all)");
  figure->add_flag("--compute", compute, "Run missing sweeps instead of failing");
  add_run_flags(figure);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Exhaustive searches (CSV records)");
  sweep->require_subcommand(1);
  long long min_edges = -1, max_edges = -1;
  auto* s_mu = sweep->add_subcommand("mu", "Maximum perfect matchings over graphs of one order");
  s_mu->add_option("--n", n);
  s_mu->add_option("--m", edges, "Single edge count");
  s_mu->add_option("--min-m", min_edges);
  s_mu->add_option("--max-m", max_edges);
  s_mu->add_option("--graph6", file, "Search a graph6 list instead (file, or - for stdin)");
  add_run_flags(s_mu);
  auto* s_tau = sweep->add_subcommand("tau", "Maximum tournament permanent");
  s_tau->add_option("--n", n)->required();
  add_run_flags(s_tau);
  auto* s_rho = sweep->add_subcommand("rho", "Maximum 2-factors over orientations of K_{n,n}");
  s_rho->add_option("--n", n)->required();
  add_run_flags(s_rho);
  auto* s_sparse = sweep->add_subcommand("sparse", "Maximizers on 6+2k vertices with 6+k edges");
  s_sparse->add_option("--k", k)->required();
  add_run_flags(s_sparse);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitPrecondition;
  }

  try {
    if (bounds->parsed()) {
      if (b_omega->parsed()) {
        out << format_exact_or_log(omega_exact(vertices, edges), exact) << '\n';
      } else if (b_theta->parsed()) {
        out << format_exact_or_log(theta_exact(k, total), exact) << '\n';
      } else if (b_af->parsed()) {
        out << format_exact_or_log(alon_friedland_exact(parse_graph6(code)), exact) << '\n';
      } else if (b_bregman->parsed()) {
        out << format_exact_or_log(minc_bregman_exact(matrix_of(code)), exact) << '\n';
      } else if (b_tau->parsed()) {
        print_pair(out, tau_bounds(n));
      } else if (b_rho->parsed()) {
        const auto b = rho_bounds(n);
        out << "bound,value\n"
            << "lower," << (exact ? rho_lower_exact(n).str() : format_log_value(b.first)) << '\n'
            << "upper," << format_log_value(b.second) << '\n';
      } else if (b_vdw->parsed()) {
        out << format_log_value(vdw_lower_bounds(n, k)) << '\n';
      } else if (b_ratio->parsed()) {
        if (p < 1) throw PreconditionError("ratio requires p >= 1");
        std::ostringstream s;
        s << std::setprecision(15) << fundamental_ratio(p).value();
        out << s.str() << '\n';
      } else if (b_stirling->parsed()) {
        print_pair(out, stirling_interval(p));
      }
    } else if (count->parsed()) {
      for (const auto& c : gather_codes(codes, file, in)) out << count_one(what, c) << '\n';
    } else if (construct->parsed()) {
      if (family == "extremal") {
        if (vertices < 2 || vertices % 2) throw PreconditionError("--vertices must be even and at least 2");
        const auto d = extremal_decomposition(vertices / 2, edges);
        if (!d) {
          throw PreconditionError("no disjoint union of K_{a,a} and K_{a+1,a+1} has " + std::to_string(vertices) +
                                  " vertices and " + std::to_string(edges) + " edges");
        }
        const Graph g = build_extremal_graph(*d);
        out << emit_graph6(g) << ' ' << count_perfect_matchings(g) << '\n';
      } else if (family == "tournament") {
        const Digraph t = build_near_regular_tournament(n);
        out << emit_digraph6(t) << ' ' << permanent(t.adjacency_matrix()) << '\n';
      } else {
        const Digraph d = family == "bt0" ? build_bt0(n) : family == "bt1" ? build_bt1(n) : build_bt2(n);
        out << emit_digraph6(d) << ' ' << count_2factors(d) << '\n';
      }
    } else if (table1->parsed()) {
      if (min_n < 3 || max_n < min_n) throw PreconditionError("table1 requires 3 <= --min-n <= --max-n");
      if (max_n > kMaxEnumerationOrder) throw SizeLimitError("--max-n exceeds " + std::to_string(kMaxEnumerationOrder));
      const SweepConfig config = make_config(workers, cache);
      out << "n,tau,lower,upper\n";
      for (int order = min_n; order <= max_n; ++order) {
        const auto r = sweep_tau(order, config);
        const auto [lo, hi] = tau_bounds(order);
        out << order << ',' << r.max_count << ',' << format_log_value(lo) << ',' << format_log_value(hi) << '\n';
      }
    } else if (table2->parsed()) {
      run_table2(out, orders, make_config(workers, cache));
    } else if (figure->parsed()) {
      run_figure(out, figure_kind, n, max_m, compute, make_config(workers, cache));
    } else if (sweep->parsed()) {
      const SweepConfig base = make_config(workers, cache);
      std::vector<ExtremalRecord> records;
      if (s_mu->parsed()) {
        if (!file.empty()) {
          if (file == "-") {
            records.push_back(sweep_mu_graph6(in));
          } else {
            std::ifstream f(file);
            if (!f) throw PreconditionError("cannot open input file " + file);
            records.push_back(sweep_mu_graph6(f));
          }
        } else {
          if (n < 1) throw PreconditionError("sweep mu requires --n or --graph6");
          SweepConfig config = base;
          if (s_mu->count("--m")) {
            records.push_back(sweep_mu(n, edges, config));
          } else {
            config.edge_range = std::make_pair(std::max(min_edges, 0LL), max_edges < 0 ? pairs(n) : max_edges);
            records = sweep_mu_range(n, config);
          }
        }
      } else if (s_tau->parsed()) {
        records.push_back(sweep_tau(n, base));
      } else if (s_rho->parsed()) {
        records.push_back(sweep_rho(n, base));
      } else if (s_sparse->parsed()) {
        const auto report = sparse_family_report(k, base);
        out << "k,max,marker,exhaustive,six_vertex_based,other\n"
            << report.k << ',' << report.record.max_count << ',' << report.record.marker() << ','
            << (report.exhaustive ? "yes" : "no") << ',' << report.from_six_vertex.size() << ','
            << report.other.size() << '\n';
      }
      if (!s_sparse->parsed()) {
        out << kRecordHeader;
        for (const auto& r : records) print_record(out, r);
      }
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const SizeLimitError& e) {
    err << "size limit: " << e.what() << '\n';
    return kExitSizeLimit;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::invalid_argument& e) {
    err << "precondition: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return kExitOk;
}

}  // namespace extremal::cli
