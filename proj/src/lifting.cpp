#include "qlift/lifting.hpp"

#include <algorithm>
#include <unordered_map>

namespace qlift {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b9;
      h *= 1099511628211ull;
    }
    return h;
  }
};

using Buckets = std::unordered_map<std::vector<int>, std::vector<int>, VecHash>;

void require_enumerable(const Morphism& f, const Morphism& g) {
  if (!g.source.is_finite() || !g.target.is_finite())
    throw Error(ErrorKind::unsupported_square,
                "right-hand morphism must have finite source and target, got " + g.describe());
  (void)f;
}

// Hom-sets into X are materialized for bucketing; only Hom(B, Y) is
// streamed. A hard cap turns a pathological materialization into the
// documented budget error instead of exhausting memory.
constexpr std::size_t kMaterializeCap = 2'000'000;

std::vector<Morphism> materialize_homs(const GroupObject& src, const FiniteGroupPtr& tgt,
                                       SearchBudget& budget) {
  std::vector<Morphism> out;
  for_each_hom(src, tgt, budget, [&](const Morphism& m) {
    if (out.size() >= kMaterializeCap)
      throw Error(ErrorKind::search_budget_exceeded,
                  "Hom(" + src.name() + ", " + tgt->name() + ") is too large to materialize");
    out.push_back(m);
    return true;
  });
  return out;
}

}  // namespace

bool square_commutes(const LiftingSquare& sq) {
  const int k = sq.f.source.generator_count();
  for (int t = 0; t < k; ++t) {
    int via_bottom = sq.f.map_gen_then(t, sq.j);        // A -> B -> Y
    int via_top = sq.g.elem_map[sq.i.gen_images[t]];    // A -> X -> Y
    if (via_bottom != via_top) return false;
  }
  return true;
}

std::optional<Morphism> find_lift(const LiftingSquare& sq, SearchBudget& budget) {
  require_enumerable(sq.f, sq.g);
  if (!square_commutes(sq))
    throw Error(ErrorKind::invalid_spec, "find_lift requires a commutative square");
  const auto& X = sq.g.source.finite();
  const int kA = sq.f.source.generator_count();
  const int kB = sq.f.target.generator_count();

  std::optional<Morphism> found;
  for_each_hom(sq.f.target, X, budget, [&](const Morphism& cand) {
    for (int t = 0; t < kA; ++t)
      if (sq.f.map_gen_then(t, cand) != sq.i.gen_images[t]) return true;
    for (int t = 0; t < kB; ++t)
      if (cand.map_gen_then(t, sq.g) != sq.j.gen_images[t]) return true;
    found = cand;
    return false;
  });
  return found;
}

LiftResult lifts(const Morphism& f, const Morphism& g, SearchBudget& budget, HomCache* cache) {
  require_enumerable(f, g);
  const auto& X = g.source.finite();
  const auto& Y = g.target.finite();
  const GroupObject& A = f.source;
  const GroupObject& B = f.target;
  const int kA = A.generator_count();
  const int kB = B.generator_count();

  // Hom(A, X), bucketed by the composite with g on A's generators.
  std::shared_ptr<const std::vector<Morphism>> homAX_cached;
  std::vector<Morphism> homAX_local;
  if (cache) homAX_cached = cache->get(A, X, budget);
  if (!homAX_cached) homAX_local = materialize_homs(A, X, budget);
  const std::vector<Morphism>& homAX = homAX_cached ? *homAX_cached : homAX_local;
  Buckets top_by_composite;
  for (std::size_t idx = 0; idx < homAX.size(); ++idx) {
    std::vector<int> sig(kA);
    const Morphism& i = homAX[idx];
    for (int t = 0; t < kA; ++t) sig[t] = g.elem_map[i.gen_images[t]];
    top_by_composite[sig].push_back(static_cast<int>(idx));
  }

  // Hom(B, X), bucketed by both triangle signatures.
  std::shared_ptr<const std::vector<Morphism>> homBX_cached;
  std::vector<Morphism> homBX_local;
  if (cache) homBX_cached = cache->get(B, X, budget);
  if (!homBX_cached) homBX_local = materialize_homs(B, X, budget);
  const std::vector<Morphism>& homBX = homBX_cached ? *homBX_cached : homBX_local;
  Buckets lift_by_sig;
  for (std::size_t idx = 0; idx < homBX.size(); ++idx) {
    const Morphism& cand = homBX[idx];
    std::vector<int> key(kA + kB);
    for (int t = 0; t < kA; ++t) key[t] = f.map_gen_then(t, cand);      // = i's images
    for (int t = 0; t < kB; ++t) key[kA + t] = cand.map_gen_then(t, g); // = j's images
    lift_by_sig[key].push_back(static_cast<int>(idx));
  }

  LiftResult result;
  result.holds = true;

  std::vector<int> key(kA + kB);
  for_each_hom(B, Y, budget, [&](const Morphism& j) {
    budget.charge();
    std::vector<int> r(kA);
    for (int t = 0; t < kA; ++t) r[t] = f.map_gen_then(t, j);
    auto bucket = top_by_composite.find(r);
    if (bucket == top_by_composite.end()) return true;  // no commuting i for this j
    for (int i_idx : bucket->second) {
      const Morphism& i = homAX[i_idx];
      for (int t = 0; t < kA; ++t) key[t] = i.gen_images[t];
      for (int t = 0; t < kB; ++t) key[kA + t] = j.gen_images[t];
      auto hit = lift_by_sig.find(key);
      if (hit == lift_by_sig.end()) {
        result.holds = false;
        result.counterexample = LiftingSquare{f, g, i, j};
        result.witness_lift.reset();
        return false;
      }
      result.witness_lift = homBX[hit->second.front()];
    }
    return true;
  });
  return result;
}

std::vector<int> negation_class(std::span<const int> p_ids, Side side,
                                std::span<const int> universe_ids,
                                std::span<const Morphism> pool, long long budget_per_pair,
                                HomCache* cache) {
  std::vector<int> out;
  for (int u : universe_ids) {
    bool all = true;
    for (int q : p_ids) {
      const Morphism& left = side == Side::right ? pool[q] : pool[u];
      const Morphism& right = side == Side::right ? pool[u] : pool[q];
      SearchBudget budget(budget_per_pair);
      try {
        if (!lifts(left, right, budget, cache).holds) {
          all = false;
          break;
        }
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::search_budget_exceeded)
          throw Error(ErrorKind::search_budget_exceeded,
                      std::string(e.what()) + " while checking pair (" +
                          std::to_string(q) + ", " + std::to_string(u) + ")");
        throw;
      }
    }
    if (all) out.push_back(u);
  }
  return out;
}

std::vector<int> restrict_to_terminal(std::span<const int> ids, TerminalMode mode,
                                      std::span<const Morphism> pool) {
  std::vector<int> out;
  for (int id : ids) {
    const Morphism& m = pool[id];
    const GroupObject& end = mode == TerminalMode::from_zero ? m.source : m.target;
    if (end.is_trivial()) out.push_back(id);
  }
  return out;
}

}  // namespace qlift
