#pragma once

#include <optional>

#include "qlift/group.hpp"

namespace qlift {

/// A subgroup series. For derived/lower_central the terms descend from the
/// whole group, repeating a term once iff the series stalls before reaching
/// the trivial subgroup; `stabilized` reports exactly that visible stall.
/// For subnormal_chain the terms ascend D = G0 < G1 < ... < Gn = G with each
/// term normal in the next, and `stabilized` is true.
struct SeriesReport {
  enum class Kind { derived, lower_central, subnormal_chain };
  Kind kind;
  std::vector<Subgroup> terms;
  bool stabilized = false;

  std::vector<int> term_orders() const {
    std::vector<int> v;
    v.reserve(terms.size());
    for (const auto& t : terms) v.push_back(t.size());
    return v;
  }
};

SeriesReport derived_series(const FiniteGroupPtr& g);
SeriesReport lower_central_series(const FiniteGroupPtr& g);

bool is_solvable(const FiniteGroupPtr& g);
bool is_perfect(const FiniteGroupPtr& g);
bool is_nilpotent(const FiniteGroupPtr& g);
bool is_abelian(const FiniteGroup& g);
bool has_odd_order(const FiniteGroup& g);
bool is_p_group(const FiniteGroup& g, int p);
bool order_coprime_to(const FiniteGroup& g, int p);

/// The stabilized term of the derived series (trivial iff solvable); it is
/// always a perfect subgroup.
Subgroup perfect_core(const FiniteGroupPtr& g);

/// Chain D = G0 < G1 < ... < Gn = G witnessing subnormality, or absent.
/// Decided by normal-closure descent: H0 = G, H_{i+1} = ncl of D inside H_i.
std::optional<SeriesReport> subnormal_oracle(const Subgroup& d);

/// The stabilized term of the descent when D is not subnormal: the smallest
/// member of the descent chain, itself subnormal, in which D's normal
/// closure is everything. Throws AlreadySubnormal.
Subgroup minimal_subnormal_over(const Subgroup& d);

}  // namespace qlift
