#include "resmatch/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "resmatch/generators.hpp"
#include "resmatch/oracle.hpp"
#include "resmatch/solver.hpp"

namespace resmatch {

namespace {

Graph read_graph(const std::string& path, std::istream& in) {
  if (path == "-") return parse_edge_list(in);
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  return parse_edge_list(f);
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  auto to_int = [&](const std::string& s) {
    try {
      size_t pos = 0;
      int v = std::stoi(s, &pos);
      if (pos != s.size() || v < 1) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw InputError("bad size list: " + text);
    }
  };
  if (auto dots = text.find(".."); dots != std::string::npos) {
    int a = to_int(text.substr(0, dots)), b = to_int(text.substr(dots + 2));
    if (a > b) throw InputError("bad size range: " + text);
    for (int n = a; n <= b; ++n) out.push_back(n);
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(to_int(tok));
  if (out.empty()) throw InputError("empty size list");
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

std::string achieved_set(const std::vector<int>& a) {
  std::string s = "{";
  for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + "}";
}

struct Config {
  std::string input = "-";
  std::string objective;
  std::vector<int> edge;
  int guard = 18;
  uint64_t seed = 1;
  std::string sizes = "4..14";
  int per_size = 20;
  std::string format = "human";
  bool timing = false;
  bool trace = false;
  std::string family;
  std::string break_rule;
  int legs = 3, leg_len = 3, n = 10, k = 1;
  std::vector<int> pattern;
};

int cmd_solve(const Config& c, std::istream& in, std::ostream& out) {
  Tree t = validate_tree(read_graph(c.input, in));
  SolveOptions opt;
  opt.trace = c.trace || c.format == "structured";
  SolveReport r;
  if (c.objective == "min") {
    if (!c.edge.empty()) throw InputError("--edge applies to --objective max only");
    r = minmax(t, opt);
  } else {
    std::optional<Edge> e;
    if (!c.edge.empty()) e = Edge(c.edge[0], c.edge[1]);
    r = maxmax(t, e, opt);
  }
  if (c.format == "structured") {
    out << serialize(r, c.timing);
    return 0;
  }
  out << "value " << r.value << '\n';
  for (const auto& e : r.witness.edges) out << e.a << ' ' << e.b << '\n';
  if (c.trace)
    for (const auto& line : r.trace) out << "# " << line << '\n';
  if (c.timing) out << "# elapsed_ms " << r.stats.elapsed_ms << '\n';
  return 0;
}

int cmd_oracle(const Config& c, std::istream& in, std::ostream& out) {
  Graph g = read_graph(c.input, in);
  OracleGuard guard;
  guard.tree_vertices = c.guard;
  guard.general_vertices = std::min(c.guard, guard.general_vertices);
  auto sp = spectrum(g, guard);
  auto report = property_suite(g, guard);
  if (c.format == "structured") {
    out << "l " << sp.l << "\nL " << sp.L << "\ncount " << sp.count << "\nachieved " << achieved_set(sp.achieved)
        << "\nproperties " << report.size() << '\n';
  } else {
    out << "l=" << sp.l << " L=" << sp.L << " |M|=" << sp.count << " achieved=" << achieved_set(sp.achieved) << '\n';
  }
  out << format_report(report);
  bool bad = std::any_of(report.begin(), report.end(), [](const PropertyLine& p) { return p.status == "fail"; });
  return bad ? 1 : 0;
}

int cmd_verify(const Config& c, std::ostream& out) {
  auto sizes = parse_sizes(c.sizes);
  if (c.per_size < 1) throw InputError("--per-size must be positive");
  SolveOptions opt;
  opt.oracle_fallback = true;
  opt.guard.tree_vertices = c.guard;
  opt.broken_rule = c.break_rule;
  long mismatches = 0, fallbacks = 0;
  std::ostringstream dump;
  for (int n : sizes) {
    std::vector<double> tmin, tmax;
    long size_mismatch = 0;
    for (int i = 0; i < c.per_size; ++i) {
      Tree t = random_tree(n, instance_seed(c.seed, n, i));
      for (Objective obj : {Objective::Min, Objective::Max}) {
        std::string reason;
        try {
          SolveReport r = obj == Objective::Min ? minmax(t, opt) : maxmax(t, std::nullopt, opt);
          (obj == Objective::Min ? tmin : tmax).push_back(r.stats.elapsed_ms);
          fallbacks += r.stats.fallbacks;
          auto cert = verify(t, r, opt.guard);
          if (!cert.ok) reason = cert.failures.front();
        } catch (const DefectError& e) {
          reason = e.what();
        }
        if (!reason.empty()) {
          ++size_mismatch;
          if (mismatches + size_mismatch <= 5)
            dump << "# mismatch n=" << n << " index=" << i << " objective=" << objective_name(obj) << ": " << reason
                 << '\n'
                 << to_edge_list(t.graph());
        }
      }
    }
    mismatches += size_mismatch;
    out << "n=" << n << " trees=" << c.per_size << " mismatches=" << size_mismatch;
    if (c.timing) out << " median_ms_min=" << median(tmin) << " median_ms_max=" << median(tmax);
    out << '\n';
  }
  out << "fallbacks " << fallbacks << '\n';
  out << mismatches << " mismatches\n";
  if (mismatches) {
    out << dump.str();
    return 1;
  }
  return 0;
}

int cmd_gen(const Config& c, std::ostream& out) {
  const std::string& f = c.family;
  Graph g;
  if (f == "path") g = make_path(c.n).graph();
  else if (f == "star") g = make_star(c.n).graph();
  else if (f == "spider") g = make_spider(c.legs, c.leg_len).graph();
  else if (f == "caterpillar") g = make_caterpillar(c.n, c.pattern).graph();
  else if (f == "broom") g = make_broom(c.n, c.k).graph();
  else if (f == "random") g = random_tree(c.n, c.seed).graph();
  else if (f == "2.1" || f == "2.2" || f == "2.3" || f == "2.4") g = example_family(f, c.k).graph;
  else throw InputError("unknown family " + f);
  out << to_edge_list(g);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Residual matching number of trees: minimum and maximum over maximum matchings", "resmatch"};
  app.require_subcommand(1);
  Config c;

  auto* solve = app.add_subcommand("solve", "Solve min or max for a tree edge list");
  solve->add_option("input", c.input, "Edge list file, - for stdin");
  solve->add_option("--objective", c.objective)->required()->check(CLI::IsMember({"min", "max"}));
  solve->add_option("--edge", c.edge, "Pendant edge U V the max witness must contain")->expected(2);
  solve->add_option("--format", c.format)->check(CLI::IsMember({"human", "structured"}));
  solve->add_flag("--trace", c.trace, "Print the reduction trace");
  solve->add_flag("--timing", c.timing);

  auto* oracle = app.add_subcommand("oracle", "Brute-force spectrum and property suite");
  oracle->add_option("input", c.input);
  oracle->add_option("--guard", c.guard, "Largest vertex count enumerated")->check(CLI::PositiveNumber);
  oracle->add_option("--format", c.format)->check(CLI::IsMember({"human", "structured"}));

  auto* verify_cmd = app.add_subcommand("verify", "Differential campaign on random trees");
  verify_cmd->add_option("--sizes", c.sizes, "A..B or a,b,c");
  verify_cmd->add_option("--per-size", c.per_size);
  verify_cmd->add_option("--seed", c.seed);
  verify_cmd->add_option("--guard", c.guard)->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--timing", c.timing);
  verify_cmd->add_option("--break-rule", c.break_rule)->group("");

  auto* gen = app.add_subcommand("gen", "Emit a generated tree as an edge list");
  gen->add_option("--family", c.family)->required();
  gen->add_option("--n", c.n);
  gen->add_option("--k", c.k);
  gen->add_option("--legs", c.legs);
  gen->add_option("--leg-len", c.leg_len);
  gen->add_option("--pattern", c.pattern)->delimiter(',');
  gen->add_option("--seed", c.seed);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*solve) return cmd_solve(c, in, out);
    if (*oracle) return cmd_oracle(c, in, out);
    if (*verify_cmd) return cmd_verify(c, out);
    if (*gen) return cmd_gen(c, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const GuardExceeded& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const DefectError& e) {
    err << "defect: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace resmatch
