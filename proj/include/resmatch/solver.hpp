#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resmatch/oracle.hpp"
#include "resmatch/reductions.hpp"

namespace resmatch {

struct SolveOptions {
  bool trace = false;
  // Answer a NonExhaustiveCaseAnalysis from the oracle when the subtree is within its guard.
  bool oracle_fallback = false;
  OracleGuard guard;
  std::vector<std::string> prefer_rules;  // tried before the default order
  std::string broken_rule;                 // test fixture: this rule reports value + 1
};

struct SolveStats {
  long calls = 0;
  long memo_hits = 0;
  long value_queries = 0;
  long fallbacks = 0;
  double elapsed_ms = 0;
};

struct OracleCertificate {
  int oracle_value = 0;
  bool match = false;
};

struct SolveReport {
  Objective objective = Objective::Min;
  int n = 0;
  int value = 0;
  Matching witness;
  std::optional<Edge> requested;  // MAX: the pendant edge contained in the witness
  std::vector<std::string> trace;
  SolveStats stats;
  std::optional<OracleCertificate> oracle_certificate;
};

SolveReport minmax(const Tree& t, const SolveOptions& opt = {});
// `e` must be a pendant edge; default is the pendant edge with the smallest leaf id.
SolveReport maxmax(const Tree& t, std::optional<Edge> e = std::nullopt, const SolveOptions& opt = {});

// Forests are evaluated per component and summed.
int min_value(const Graph& forest);
int max_value(const Graph& forest);

Edge default_pendant_edge(const Graph& t);

// Swap along the alternating path from the leaf of e; keeps beta(t \ f).
Matching force_edge(const Graph& t, const Matching& f, Edge e);

struct Certificate {
  bool ok = true;
  bool oracle_checked = false;
  std::optional<int> oracle_value;
  std::vector<std::string> failures;
};

Certificate verify(const Tree& t, const SolveReport& r, const OracleGuard& guard = {});

std::string objective_name(Objective o);
// Fixed field order: objective, n, value, witness, trace, stats.
std::string serialize(const SolveReport& r, bool with_timing = false);

}  // namespace resmatch
