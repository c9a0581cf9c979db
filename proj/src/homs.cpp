#include "qlift/homs.hpp"

#include <algorithm>

namespace qlift {

namespace {

// Backtracking over generator images with order-divisibility pruning and
// Cayley-graph extension at the leaves (finite sources), or relator pruning
// (presented sources). Candidates per generator are visited in the order
// given by `order` (ascending element index by default).
class HomSearch {
public:
  HomSearch(const GroupObject& source, const FiniteGroupPtr& target, SearchBudget& budget,
            const std::function<bool(const Morphism&)>& cb, const std::vector<int>* order)
      : source_(source), target_(target), budget_(budget), cb_(cb) {
    const int n = target_->order();
    base_order_.resize(n);
    for (int i = 0; i < n; ++i) base_order_[i] = i;
    if (order) {
      if (static_cast<int>(order->size()) != n)
        throw Error(ErrorKind::invalid_spec, "candidate order has wrong size");
      base_order_ = *order;
    }
  }

  bool run() {
    if (source_.is_finite()) return run_finite();
    return run_presented();
  }

private:
  bool run_finite() {
    const auto& src = source_.finite();
    const auto& gens = src->generators();
    const int k = static_cast<int>(gens.size());
    const auto& tgt = *target_;

    if (k == 0) {
      Morphism m = trivial_morphism(source_, GroupObject(target_));
      budget_.charge();
      return cb_(m);
    }

    std::vector<std::vector<int>> candidates(k);
    for (int t = 0; t < k; ++t) {
      int od = src->element_order(gens[t]);
      for (int x : base_order_)
        if (od % tgt.element_order(x) == 0) candidates[t].push_back(x);
    }

    std::vector<int> images(k), pos(k, 0);
    std::vector<int> img(src->order());
    std::vector<int> queue(src->order());
    int depth = 0;
    while (depth >= 0) {
      if (pos[depth] >= static_cast<int>(candidates[depth].size())) {
        pos[depth] = 0;
        --depth;
        if (depth >= 0) ++pos[depth];
        continue;
      }
      budget_.charge();
      images[depth] = candidates[depth][pos[depth]];
      if (depth + 1 < k) {
        ++depth;
        continue;
      }
      if (extend(*src, gens, tgt, images, img, queue)) {
        Morphism m{source_, GroupObject(target_), images, {}, img, ""};
        if (!cb_(m)) return false;
      }
      ++pos[depth];
    }
    return true;
  }

  bool run_presented() {
    const auto& src = source_.presented();
    const int k = src->arity();
    const auto& tgt = *target_;

    if (k == 0) {
      Morphism m = trivial_morphism(source_, GroupObject(target_));
      budget_.charge();
      return cb_(m);
    }

    // relators grouped by the highest generator they mention
    std::vector<std::vector<const Word*>> by_depth(k);
    for (const auto& rel : src->relators()) {
      int top = 0;
      for (int letter : rel.letters) top = std::max(top, letter > 0 ? letter : -letter);
      by_depth[top == 0 ? 0 : top - 1].push_back(&rel);
    }

    std::vector<int> images(k), pos(k, 0);
    int depth = 0;
    while (depth >= 0) {
      if (pos[depth] >= static_cast<int>(base_order_.size())) {
        pos[depth] = 0;
        --depth;
        if (depth >= 0) ++pos[depth];
        continue;
      }
      budget_.charge();
      images[depth] = base_order_[pos[depth]];
      bool ok = true;
      for (const Word* rel : by_depth[depth])
        if (eval_word(*rel, images, tgt) != tgt.identity()) {
          ok = false;
          break;
        }
      if (ok && depth + 1 < k) {
        ++depth;
        continue;
      }
      if (ok) {
        Morphism m{source_, GroupObject(target_), images, {}, {}, ""};
        if (!cb_(m)) return false;
      }
      ++pos[depth];
    }
    return true;
  }

  static bool extend(const FiniteGroup& src, const std::vector<int>& gens,
                     const FiniteGroup& tgt, const std::vector<int>& images,
                     std::vector<int>& img, std::vector<int>& queue) {
    const int k = static_cast<int>(gens.size());
    std::fill(img.begin(), img.end(), -1);
    img[src.identity()] = tgt.identity();
    queue[0] = src.identity();
    int head = 0, tail = 1;
    while (head < tail) {
      int a = queue[head++];
      for (int t = 0; t < k; ++t) {
        int b = src.mul(a, gens[t]);
        int y = tgt.mul(img[a], images[t]);
        if (img[b] < 0) {
          img[b] = y;
          queue[tail++] = b;
        } else if (img[b] != y) {
          return false;
        }
      }
    }
    return true;
  }

  GroupObject source_;
  FiniteGroupPtr target_;
  SearchBudget& budget_;
  const std::function<bool(const Morphism&)>& cb_;
  std::vector<int> base_order_;
};

}  // namespace

bool for_each_hom(const GroupObject& source, const FiniteGroupPtr& target, SearchBudget& budget,
                  const std::function<bool(const Morphism&)>& cb) {
  return detail::for_each_hom_ordered(source, target, budget, cb, nullptr);
}

namespace detail {
bool for_each_hom_ordered(const GroupObject& source, const FiniteGroupPtr& target,
                          SearchBudget& budget, const std::function<bool(const Morphism&)>& cb,
                          const std::vector<int>* candidate_order) {
  HomSearch search(source, target, budget, cb, candidate_order);
  return search.run();
}
}  // namespace detail

std::vector<Morphism> enumerate_homs(const GroupObject& source, const FiniteGroupPtr& target,
                                     SearchBudget& budget) {
  std::vector<Morphism> out;
  for_each_hom(source, target, budget, [&](const Morphism& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

bool exists_nontrivial_hom(const GroupObject& source, const FiniteGroupPtr& target,
                           SearchBudget& budget) {
  bool found = false;
  for_each_hom(source, target, budget, [&](const Morphism& m) {
    if (!is_trivial_morphism(m)) {
      found = true;
      return false;
    }
    return true;
  });
  return found;
}

std::shared_ptr<const std::vector<Morphism>> HomCache::get(const GroupObject& source,
                                                           const FiniteGroupPtr& target,
                                                           SearchBudget& budget) {
  const std::pair<std::uint64_t, std::uint64_t> key{source.uid(), target->uid()};
  std::shared_future<Entry> fut;
  std::promise<Entry> mine;
  bool compute = false;
  {
    std::lock_guard lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) {
      fut = mine.get_future().share();
      map_.emplace(key, fut);
      compute = true;
    } else {
      fut = it->second;
    }
  }
  if (compute) {
    try {
      auto vec = std::make_shared<std::vector<Morphism>>();
      bool small = for_each_hom(source, target, budget, [&](const Morphism& m) {
        if (vec->size() >= cap_) return false;
        vec->push_back(m);
        return true;
      });
      if (!small) {
        mine.set_value(nullptr);  // too big to cache
      } else {
        mine.set_value(std::shared_ptr<const std::vector<Morphism>>(std::move(vec)));
      }
    } catch (...) {
      // do not poison the cache with a budget failure
      {
        std::lock_guard lock(mu_);
        map_.erase(key);
      }
      mine.set_exception(std::current_exception());
      throw;
    }
  }
  return fut.get();
}

}  // namespace qlift
