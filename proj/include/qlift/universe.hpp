#pragma once

#include <nlohmann/json.hpp>

#include "qlift/lifting.hpp"
#include "qlift/oracles.hpp"

namespace qlift {

using ordered_json = nlohmann::ordered_json;

struct UniverseConfig {
  int max_order = 16;
  int closure_depth = 2;
  int subgroup_max_generators = 3;
  std::vector<GroupSpec> seeds;  // empty = default seed set for max_order
  bool include_inclusions = true;
  bool include_quotients = true;
  bool include_diagonals = true;
  int sample_homs_per_pair = 0;
  std::vector<int> primes;  // empty = all primes <= max_order
};

enum class MorphismKind { standard, inclusion, quotient_projection, diagonal, sampled };

const char* morphism_kind_name(MorphismKind k);

struct PoolEntry {
  Morphism m;
  MorphismKind kind;
  std::string provenance;
};

/// The finite stand-in for the category of finite groups: a deduplicated
/// catalog of groups (trivial group first, ids canonical and reproducible)
/// plus a pool of distinguished morphisms with stable ids.
struct Universe {
  UniverseConfig config;
  StandardObjects std_objects;
  std::vector<FiniteGroupPtr> groups;
  std::vector<std::string> group_provenance;
  std::vector<std::vector<long long>> fingerprints;  // parallel to groups
  std::vector<PoolEntry> morphisms;
  std::vector<std::string> notes;  // informational (skipped products etc.), not serialized

  const FiniteGroupPtr& trivial_group() const { return groups.front(); }
  /// Catalog id of the entry isomorphic to g, or -1.
  int find_isomorphic_id(const FiniteGroup& g) const;
  std::vector<int> prime_list() const;
  std::vector<Morphism> morphism_table() const;
};

std::vector<GroupSpec> default_seeds(int max_order);
std::vector<int> primes_up_to(int n);

/// Seeds, then `closure_depth` rounds of subgroups and quotients, then
/// isomorphism dedup and canonical id assignment (sorted by order, invariant
/// fingerprint, construction order). Deterministic for a fixed config.
Universe build_universe(UniverseConfig config);

/// Augment with the distinguished morphisms: trivial morphisms 0 -> G and
/// G -> 0 for every object, the standard presented-object morphisms and the
/// abelianization, subgroup inclusions (source = the catalog representative
/// of the subgroup, embedded), quotient projections (target = catalog
/// representative), diagonals G -> GxG within bound, and an optional
/// deterministic hom sample. Appends any subgroup/quotient/product class
/// missing from the catalog.
void morphism_pool(Universe& u);

ordered_json universe_to_json(const Universe& u);
Universe universe_from_json(const ordered_json& j);
void save_universe(const Universe& u, const std::string& path);
Universe load_universe(const std::string& path);
/// FNV-1a over the canonical serialization.
std::string universe_digest(const Universe& u);

ordered_json morphism_to_json(const Morphism& m, const Universe& u);

}  // namespace qlift
