#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resmatch/graph.hpp"

namespace resmatch {

Tree make_path(int n);
Tree make_star(int leaves);                   // K_{1,leaves}, center 0
Tree make_spider(int legs, int leg_len);      // center 0, legs numbered outward
Tree make_caterpillar(int spine, const std::vector<int>& leaf_pattern);  // leaf_pattern[i] leaves on spine vertex i
Tree make_broom(int handle, int bristles);    // path 0..handle-1, bristles on the last handle vertex

// Uniform labeled tree via a Pruefer sequence.
Tree random_tree(int n, uint64_t seed);

// Deterministic per-instance seed for campaigns.
uint64_t instance_seed(uint64_t seed, int n, int index);

// AHU canonical string of an unlabeled tree (rooted at its center or centers).
std::string canonical_form(const Graph& t);

struct FamilyInstance {
  Graph graph;
  std::map<std::string, long> claims;  // l, L, beta, perfect_matchings
};

using FamilyBuilder = std::function<FamilyInstance(int k)>;

// Registered builders are checked against the oracle on every retrieval.
void register_family(const std::string& name, FamilyBuilder builder);
bool family_registered(const std::string& name);
// Throws InputError("unavailable: figure missing") when nothing is registered,
// DefectError when a claim fails the oracle.
FamilyInstance example_family(const std::string& name, int k);

}  // namespace resmatch
