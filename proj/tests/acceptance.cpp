// One PASS/FAIL line per acceptance criterion; exit status 1 if any line fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "resmatch/elementary.hpp"
#include "resmatch/generators.hpp"
#include "resmatch/oracle.hpp"
#include "resmatch/solver.hpp"
#include "support.hpp"

using namespace resmatch;
using namespace resmatch::testing;
using Clock = std::chrono::steady_clock;

namespace {

constexpr uint64_t kCorpusSeed = 7;
constexpr int kCorpusPerSize = 200;
constexpr int kCorpusMin = 3, kCorpusMax = 16;
constexpr double kCorpusLimitSec = 300.0;
constexpr int kElementaryTrees = 1000;
constexpr int kElementaryMaxVertices = 40;
constexpr int kLipschitzMaxN = 12;
constexpr int kLambdaMaxN = 14;
constexpr int kTimingPerSize = 5;
constexpr int kTimingSizes[] = {250, 500, 1000, 2000, 4000};
constexpr int kTimingProbe = 2000;
constexpr double kTimingMedianLimitSec = 10.0;
constexpr double kTimingSlopeLimit = 3.5;

int failures = 0;

void report(int id, const std::string& status, const std::string& what) {
  if (status == "FAIL") ++failures;
  std::printf("criterion %d %s %s\n", id, status.c_str(), what.c_str());
  std::fflush(stdout);
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Instance {
  Tree t;
  Spectrum sp;
};

std::vector<Instance> corpus() {
  std::vector<Instance> out;
  for (int n = kCorpusMin; n <= kCorpusMax; ++n)
    for (int i = 0; i < kCorpusPerSize; ++i) {
      Tree t = random_tree(n, instance_seed(kCorpusSeed, n, i));
      out.push_back({t, spectrum(t.graph())});
    }
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) mx += std::log(x[i]), my += std::log(y[i]);
  mx /= x.size();
  my /= y.size();
  double num = 0, den = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    num += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    den += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return num / den;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void oracle_equivalence_and_witnesses(const std::vector<Instance>& cs) {
  auto t0 = Clock::now();
  long mismatch = 0, side = 0;
  for (const auto& in : cs) {
    auto mn = minmax(in.t);
    if (mn.value != in.sp.l) ++mismatch;
    Matching gamma = build_gamma(in.t);
    bool ok = true;
    for (auto e : gamma.edges) ok = ok && mn.witness.contains(e);
    int pendant = 0;
    for (auto e : mn.witness.edges) pendant += in.t.deg(e.a) == 1 || in.t.deg(e.b) == 1;
    if (!ok || pendant != static_cast<int>(gamma.size())) ++side;
    for (auto v : leaves(in.t.graph())) {
      Edge e(v, in.t.adj(v)[0]);
      auto mx = maxmax(in.t, e);
      if (mx.value != in.sp.L) ++mismatch;
      if (!mx.witness.contains(e)) ++side;
    }
  }
  double sec = seconds_since(t0);
  report(1, mismatch == 0 && sec < kCorpusLimitSec ? "PASS" : "FAIL",
         "oracle equivalence: " + std::to_string(cs.size()) + " trees, " + std::to_string(mismatch) +
             " mismatches, " + fmt("%.1f", sec) + " s (limit " + fmt("%.0f", kCorpusLimitSec) + " s)");
  report(2, side == 0 ? "PASS" : "FAIL",
         "witness side conditions: " + std::to_string(side) + " violations (min: gamma contained and eta pendant "
         "edges; max: every pendant edge requested in turn)");
}

void elementary_counts() {
  std::mt19937_64 rng(kCorpusSeed);
  OracleGuard guard;
  guard.tree_vertices = kElementaryMaxVertices;
  long bad = 0, bound = 0;
  for (int i = 0; i < kElementaryTrees; ++i) {
    int spine = 1 + static_cast<int>(rng() % 25);
    std::vector<int> hang;
    int n = spine + 1;
    for (int v = 1; v < spine && n + 2 <= kElementaryMaxVertices; ++v)
      if (rng() % 2) hang.push_back(v), n += 2;
    Tree t = elementary_tree(spine, hang);
    auto d = is_elementary(t);
    if (!d) {
      ++bad;
      continue;
    }
    long c = count_maximum_matchings(*d);
    if (c != static_cast<long>(enumerate_maximum_matchings(t.graph(), guard).size())) ++bad;
    if (2 * c > t.n() + 1) ++bound;
  }
  long p7 = count_maximum_matchings(*is_elementary(make_path(7)));
  long s7 = count_maximum_matchings(*is_elementary(spider7()));
  bool ok = bad == 0 && bound == 0 && p7 == 4 && s7 == 4;
  report(3, ok ? "PASS" : "FAIL",
         "elementary counts: " + std::to_string(kElementaryTrees) + " trees, " + std::to_string(bad) +
             " count mismatches, " + std::to_string(bound) + " bound violations, P7=" + std::to_string(p7) +
             " spider7=" + std::to_string(s7));
}

void spectrum_interval(const std::vector<Instance>& cs) {
  long bad = 0;
  for (const auto& in : cs) {
    std::vector<int> want;
    for (int q = in.sp.l; q <= in.sp.L; ++q) want.push_back(q);
    if (in.sp.achieved != want) ++bad;
  }
  report(4, bad == 0 ? "PASS" : "FAIL", "spectrum interval: " + std::to_string(bad) + " trees with gaps");
}

void global_inequalities(const std::vector<Instance>& cs) {
  long dbl = 0, lip = 0, pairs = 0;
  for (const auto& in : cs) {
    if (in.sp.L > 2 * in.sp.l) ++dbl;
    if (in.t.n() > kLipschitzMaxN) continue;
    auto all = enumerate_maximum_matchings(in.t.graph());
    std::vector<int> val;
    for (const auto& f : all) val.push_back(beta_value(remove_matching(in.t.graph(), f)));
    for (size_t a = 0; a < all.size(); ++a)
      for (size_t b = a + 1; b < all.size(); ++b) {
        ++pairs;
        if (std::abs(val[a] - val[b]) > rho(all[a], all[b])) ++lip;
      }
  }
  report(5, dbl == 0 && lip == 0 ? "PASS" : "FAIL",
         "global inequalities: " + std::to_string(dbl) + " violations of L<=2l, " + std::to_string(lip) +
             " Lipschitz violations over " + std::to_string(pairs) + " matching pairs (n<=" +
             std::to_string(kLipschitzMaxN) + ")");
}

void lambda_identities(const std::vector<Instance>& cs) {
  long bad = 0, checked = 0;
  for (const auto& in : cs) {
    if (in.t.n() > kLambdaMaxN) continue;
    const Graph& g = in.t.graph();
    auto [theta, bar] = edge_partition(g);
    auto [border, deep] = border_and_deep(g);
    std::optional<int> min_chi, max_pt;
    for (auto e : in.t.edges()) {
      if (!in_pi(in.t, e)) continue;
      auto sp = split_at_edge(in.t, e);
      auto s1 = spectrum(sp.side1.graph()), s2 = spectrum(sp.side2.graph());
      int lam = s1.l + s2.l, Lam = s1.L + s2.L;
      if (Lam > in.sp.L) ++bad;
      if (std::binary_search(deep.begin(), deep.end(), e)) min_chi = min_chi ? std::min(*min_chi, lam) : lam;
      if (std::binary_search(theta.begin(), theta.end(), e)) max_pt = max_pt ? std::max(*max_pt, Lam) : Lam;
    }
    if (min_chi) ++checked, bad += *min_chi != in.sp.l;
    if (max_pt) ++checked, bad += *max_pt != in.sp.L;
  }
  report(6, bad == 0 ? "PASS" : "FAIL",
         "lambda identities: " + std::to_string(checked) + " identities checked (n<=" + std::to_string(kLambdaMaxN) +
             "), " + std::to_string(bad) + " violations");
}

void desk_anchors() {
  struct Row {
    const char* name;
    Tree t;
    int l, L;
  };
  // oracle values, frozen
  std::vector<Row> rows = {{"P7", make_path(7), 2, 3},   {"spider7", spider7(), 1, 2},
                           {"spider10", spider10(), 3, 4}, {"P4", make_path(4), 1, 1},
                           {"K13", make_star(3), 1, 1},   {"K2", make_path(2), 0, 0}};
  std::string detail;
  bool ok = true;
  for (const auto& r : rows) {
    auto sp = spectrum(r.t.graph());
    int l = minmax(r.t).value, L = maxmax(r.t).value;
    ok = ok && sp.l == r.l && sp.L == r.L && l == r.l && L == r.L;
    detail += std::string(" ") + r.name + "=(" + std::to_string(l) + "," + std::to_string(L) + ")";
  }
  const size_t m7 = spectrum(make_path(7).graph()).count, ms7 = spectrum(spider7().graph()).count;
  ok = ok && m7 == 4 && ms7 == 4;
  report(7, ok ? "PASS" : "FAIL",
         "desk anchors:" + detail + " |M(P7)|=" + std::to_string(m7) + " |M(spider7)|=" + std::to_string(ms7));
}

void timing() {
  std::vector<double> xs, med_min, med_max;
  std::string detail;
  bool done = true;
  for (int n : kTimingSizes) {
    std::vector<double> tmin, tmax;
    for (int i = 0; i < kTimingPerSize; ++i) {
      Tree t = random_tree(n, instance_seed(kCorpusSeed, n, i));
      try {
        auto t0 = Clock::now();
        auto a = minmax(t);
        tmin.push_back(seconds_since(t0));
        t0 = Clock::now();
        auto b = maxmax(t);
        tmax.push_back(seconds_since(t0));
        auto [lo, hi] = dp_min_max(t.graph());
        done = done && a.value == lo && b.value == hi;
      } catch (const std::exception&) {
        done = false;
      }
    }
    if (tmin.empty() || tmax.empty()) continue;
    xs.push_back(n);
    med_min.push_back(std::max(median(tmin), 1e-6));
    med_max.push_back(std::max(median(tmax), 1e-6));
    detail += " n=" + std::to_string(n) + ":" + fmt("%.3f", med_min.back()) + "/" + fmt("%.3f", med_max.back());
  }
  double probe_min = 0, probe_max = 0;
  for (size_t i = 0; i < xs.size(); ++i)
    if (xs[i] == kTimingProbe) probe_min = med_min[i], probe_max = med_max[i];
  double smin = loglog_slope(xs, med_min), smax = loglog_slope(xs, med_max);
  bool ok = done && probe_min < kTimingMedianLimitSec && probe_max < kTimingMedianLimitSec &&
            smin <= kTimingSlopeLimit && smax <= kTimingSlopeLimit;
  report(8, ok ? "PASS" : "FAIL",
         "timing median s min/max:" + detail + "; slope min " + fmt("%.2f", smin) + " max " + fmt("%.2f", smax) +
             " (limits " + fmt("%.0f", kTimingMedianLimitSec) + " s at n=" + std::to_string(kTimingProbe) +
             ", slope " + fmt("%.1f", kTimingSlopeLimit) + ")");
}

void example_families() {
  std::string missing;
  for (const char* name : {"2.1", "2.2", "2.4"}) {
    try {
      example_family(name, 3);
    } catch (const InputError& e) {
      missing += std::string(" ") + name + ": " + e.what() + ";";
      continue;
    } catch (const DefectError& e) {
      report(9, "FAIL", std::string("example family ") + name + ": " + e.what());
      return;
    }
  }
  if (missing.empty())
    report(9, "PASS", "example families confirmed by the oracle");
  else
    report(9, "WAIVED", "example families unregistered:" + missing);
}

}  // namespace

int main() {
  auto cs = corpus();
  oracle_equivalence_and_witnesses(cs);
  elementary_counts();
  spectrum_interval(cs);
  global_inequalities(cs);
  lambda_identities(cs);
  desk_anchors();
  timing();
  example_families();
  return failures ? 1 : 0;
}
