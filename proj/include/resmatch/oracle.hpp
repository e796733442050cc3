#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resmatch/matching.hpp"

namespace resmatch {

struct OracleGuard {
  int tree_vertices = 18;
  int general_vertices = 14;
};

struct Spectrum {
  int l = 0;
  int L = 0;
  std::map<int, Matching> witness;  // q -> one F with beta(G \ F) = q
  std::vector<int> achieved;
  size_t count = 0;  // |M(G)|
};

struct PendantProfile {
  int eta = 0;
  Matching gamma_witness;
  std::optional<bool> m_prime_nonempty;  // unset when beyond the guard
};

struct PropertyLine {
  std::string id;
  std::string status;  // pass | fail | n/a | flag
  std::string witness;
};

bool is_tree(const Graph& g);

std::vector<Matching> enumerate_maximum_matchings(const Graph& g, const OracleGuard& guard = {});
Spectrum spectrum(const Graph& g, const OracleGuard& guard = {});
PendantProfile pendant_profile(const Tree& t, const OracleGuard& guard = {});

int lambda_min(const Tree& t, Edge e, const OracleGuard& guard = {});
int lambda_max(const Tree& t, Edge e, const OracleGuard& guard = {});

bool prec1(const Graph& g, const Matching& f, const Matching& f2);

std::vector<PropertyLine> property_suite(const Graph& g, const OracleGuard& guard = {});
std::string format_report(const std::vector<PropertyLine>& report);

std::string format_edges(const EdgeList& edges);

}  // namespace resmatch
