#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qlift/errors.hpp"

namespace qlift {

class FiniteGroup;
using FiniteGroupPtr = std::shared_ptr<const FiniteGroup>;

constexpr int kGroupCoreMaxOrder = 200;

/// A finite group stored as a full multiplication table. Elements are the
/// indices 0..order-1; the identity is always computed from the table.
/// Immutable after construction (the lazily built generator/factorization
/// caches are guarded and do not change observable state).
class FiniteGroup {
public:
  FiniteGroup(std::string name, int order, std::vector<int> table);

  int order() const { return order_; }
  int mul(int a, int b) const { return table_[a * order_ + b]; }
  int inverse(int a) const { return inverse_[a]; }
  int identity() const { return identity_; }
  int conjugate(int g, int x) const { return mul(mul(g, x), inverse_[g]); }
  int element_order(int a) const { return element_orders_[a]; }
  const std::vector<int>& element_orders() const { return element_orders_; }
  const std::vector<int>& table() const { return table_; }
  const std::string& name() const { return name_; }
  std::uint64_t uid() const { return uid_; }

  /// Cached greedy generating set: repeatedly add the element that grows the
  /// closure most, lowest index on ties. Empty for the trivial group.
  const std::vector<int>& generators() const;

  /// Express an element as a word in generators() (signed, 1-based letters).
  std::vector<int> factor_element(int a) const;

private:
  void ensure_generator_data() const;

  std::string name_;
  int order_;
  std::vector<int> table_;
  int identity_;
  std::vector<int> inverse_;
  std::vector<int> element_orders_;
  std::uint64_t uid_;

  mutable std::once_flag gen_once_;
  mutable std::vector<int> generators_;
  // BFS tree over the Cayley graph: element -> (parent element, generator).
  mutable std::vector<int> bfs_parent_;
  mutable std::vector<int> bfs_gen_;
};

/// Full axiom check (Latin square, associativity, identity, inverses,
/// generators generate). O(n^3); intended for tests and loaded data.
void verify_axioms(const FiniteGroup& g);

/// Constructor expressions for the named groups.
struct GroupSpec {
  enum class Kind { cyclic, symmetric, alternating, dihedral, dicyclic, named, product };

  Kind kind = Kind::cyclic;
  int n = 1;               // cyclic n / symmetric n / alternating n / dihedral, dicyclic: order
  std::string which;       // named: F21, He3, F55
  std::shared_ptr<GroupSpec> left, right;  // product

  static GroupSpec cyclic(int n);
  static GroupSpec symmetric(int n);
  static GroupSpec alternating(int n);
  static GroupSpec dihedral(int order);
  static GroupSpec dicyclic(int order);
  static GroupSpec quaternion8() { return dicyclic(8); }
  static GroupSpec named(std::string which);
  static GroupSpec product(GroupSpec a, GroupSpec b);

  std::string display() const;
};

FiniteGroupPtr build_group(const GroupSpec& spec, int max_order = kGroupCoreMaxOrder);

/// Product table only; see morphism.hpp for the version with projections.
FiniteGroupPtr direct_product_group(const FiniteGroupPtr& g, const FiniteGroupPtr& h,
                                    int max_order = kGroupCoreMaxOrder);

/// A subgroup of a fixed parent, stored as a membership set.
class Subgroup {
public:
  Subgroup(FiniteGroupPtr parent, std::vector<char> membership);

  const FiniteGroupPtr& parent() const { return parent_; }
  int size() const { return static_cast<int>(elements_.size()); }
  bool contains(int a) const { return membership_[a] != 0; }
  const std::vector<int>& elements() const { return elements_; }
  const std::vector<char>& membership() const { return membership_; }
  bool is_whole_group() const { return size() == parent_->order(); }
  bool is_trivial() const { return size() == 1; }

  bool operator==(const Subgroup& o) const {
    return parent_->uid() == o.parent_->uid() && elements_ == o.elements_;
  }

private:
  FiniteGroupPtr parent_;
  std::vector<char> membership_;
  std::vector<int> elements_;
};

Subgroup trivial_subgroup(const FiniteGroupPtr& g);
Subgroup whole_subgroup(const FiniteGroupPtr& g);
Subgroup subgroup_generated(const FiniteGroupPtr& g, std::span<const int> seed);
Subgroup normal_closure(const FiniteGroupPtr& g, std::span<const int> seed);
/// Normal closure of `seed` inside the subgroup `ambient` (conjugation only
/// by elements of `ambient`).
Subgroup normal_closure_in(const Subgroup& ambient, std::span<const int> seed);
Subgroup commutator_subgroup(const FiniteGroupPtr& g);
/// [A,B]: subgroup generated by commutators of the two subgroups. Normal in
/// the parent whenever both arguments are.
Subgroup commutator(const Subgroup& a, const Subgroup& b);
bool is_normal(const Subgroup& n);

/// All subgroups found by closing generator sets of at most `max_generators`
/// elements, plus the whole group. Complete for every group whose proper
/// subgroups need that few generators. Sorted by (size, elements).
std::vector<Subgroup> all_subgroups(const FiniteGroupPtr& g, int max_generators = 3);
std::vector<Subgroup> normal_subgroups(const FiniteGroupPtr& g, int max_generators = 3);

struct QuotientTable {
  FiniteGroupPtr group;
  std::vector<int> projection;  // parent element -> coset index
};
/// Cosets are indexed by ascending minimal representative, so the identity
/// coset is element 0. Throws NotNormal.
QuotientTable quotient_table(const FiniteGroupPtr& g, const Subgroup& n);

bool is_isomorphic(const FiniteGroup& g, const FiniteGroup& h);
/// Full element map g -> h when the groups are isomorphic.
std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h);

/// Cheap isomorphism-invariant fingerprint used for screening and canonical
/// catalog ordering: order, abelian flag, element order histogram, conjugacy
/// class size multiset, center size, derived subgroup size.
std::vector<long long> invariant_fingerprint(const FiniteGroup& g);

namespace detail {
/// Extend generator images to a full map by BFS over the source's Cayley
/// graph, checking every edge. Empty result on conflict. A conflict-free
/// extension is automatically a homomorphism.
std::vector<int> extend_generator_images(const FiniteGroup& src, std::span<const int> gens,
                                         const FiniteGroup& tgt, std::span<const int> images);
}  // namespace detail

}  // namespace qlift
