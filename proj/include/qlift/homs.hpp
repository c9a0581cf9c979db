#pragma once

#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>

#include "qlift/morphism.hpp"

namespace qlift {

/// Node counter shared across the searches of one operation. Exceeding the
/// limit raises SearchBudgetExceeded; results are never silently truncated.
struct SearchBudget {
  long long limit = 100'000'000;
  long long used = 0;

  explicit SearchBudget(long long lim = 100'000'000) : limit(lim) {}

  void charge(long long n = 1) {
    used += n;
    if (used > limit)
      throw Error(ErrorKind::search_budget_exceeded,
                  "search budget of " + std::to_string(limit) + " nodes exceeded");
  }
};

/// Visit every homomorphism source -> target in canonical order (lexicographic
/// in the generator images). The callback returns false to stop early; the
/// function returns false iff it was stopped.
bool for_each_hom(const GroupObject& source, const FiniteGroupPtr& target, SearchBudget& budget,
                  const std::function<bool(const Morphism&)>& cb);

/// The complete, duplicate-free hom-set in canonical order.
std::vector<Morphism> enumerate_homs(const GroupObject& source, const FiniteGroupPtr& target,
                                     SearchBudget& budget);

/// True iff some homomorphism has a non-trivial image; early-exits.
bool exists_nontrivial_hom(const GroupObject& source, const FiniteGroupPtr& target,
                           SearchBudget& budget);

namespace detail {
/// Test hook: enumerate with a permuted candidate ordering. The resulting SET
/// of homomorphisms must not depend on the ordering; only output order does.
bool for_each_hom_ordered(const GroupObject& source, const FiniteGroupPtr& target,
                          SearchBudget& budget, const std::function<bool(const Morphism&)>& cb,
                          const std::vector<int>* candidate_order);
}  // namespace detail

/// Thread-safe memo of materialized hom-sets, keyed by the endpoint uids.
/// Sets larger than the entry cap are remembered as "too big" and callers
/// fall back to streaming enumeration.
class HomCache {
public:
  explicit HomCache(std::size_t max_homs_per_entry = 200'000)
      : cap_(max_homs_per_entry) {}

  /// nullptr means the set exceeds the cap (stream instead).
  std::shared_ptr<const std::vector<Morphism>> get(const GroupObject& source,
                                                   const FiniteGroupPtr& target,
                                                   SearchBudget& budget);

private:
  using Entry = std::shared_ptr<const std::vector<Morphism>>;
  std::size_t cap_;
  std::mutex mu_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::shared_future<Entry>> map_;
};

}  // namespace qlift
