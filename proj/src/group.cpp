#include "qlift/group.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace qlift {

namespace {

std::atomic<std::uint64_t> g_next_uid{1};

std::string spec_error(const std::string& what) { return "invalid group spec: " + what; }

}  // namespace

FiniteGroup::FiniteGroup(std::string name, int order, std::vector<int> table)
    : name_(std::move(name)), order_(order), table_(std::move(table)),
      uid_(g_next_uid.fetch_add(1)) {
  if (order_ <= 0 || static_cast<int>(table_.size()) != order_ * order_)
    throw Error(ErrorKind::invariant_violation, "multiplication table has wrong size");
  for (int v : table_)
    if (v < 0 || v >= order_)
      throw Error(ErrorKind::invariant_violation, "table entry out of range");

  identity_ = -1;
  for (int e = 0; e < order_; ++e) {
    bool ok = true;
    for (int a = 0; a < order_ && ok; ++a)
      ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) {
      identity_ = e;
      break;
    }
  }
  if (identity_ < 0)
    throw Error(ErrorKind::invariant_violation, "table has no identity element");

  inverse_.assign(order_, -1);
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      if (mul(a, b) == identity_ && mul(b, a) == identity_) {
        inverse_[a] = b;
        break;
      }
    }
    if (inverse_[a] < 0)
      throw Error(ErrorKind::invariant_violation, "element without inverse");
  }

  element_orders_.assign(order_, 0);
  for (int a = 0; a < order_; ++a) {
    int x = a, k = 1;
    while (x != identity_) {
      x = mul(x, a);
      ++k;
    }
    element_orders_[a] = k;
  }
}

void FiniteGroup::ensure_generator_data() const {
  std::call_once(gen_once_, [this] {
    // Greedy generating set.
    std::vector<char> closure(order_, 0);
    std::vector<int> closure_elems;
    closure[identity_] = 1;
    closure_elems.push_back(identity_);
    std::vector<int> gens;

    auto closure_with = [this](const std::vector<int>& base, int extra,
                               std::vector<char>& mem_out) {
      mem_out.assign(order_, 0);
      std::vector<int> elems = base;
      for (int e : elems) mem_out[e] = 1;
      if (!mem_out[extra]) {
        mem_out[extra] = 1;
        elems.push_back(extra);
      }
      for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = 0; j < elems.size(); ++j) {
          int p = mul(elems[i], elems[j]);
          if (!mem_out[p]) {
            mem_out[p] = 1;
            elems.push_back(p);
          }
          int q = mul(elems[j], elems[i]);
          if (!mem_out[q]) {
            mem_out[q] = 1;
            elems.push_back(q);
          }
        }
      }
      return elems;
    };

    while (static_cast<int>(closure_elems.size()) < order_) {
      int best = -1;
      std::size_t best_size = closure_elems.size();
      std::vector<int> best_elems;
      std::vector<char> scratch;
      for (int x = 0; x < order_; ++x) {
        if (closure[x]) continue;
        auto elems = closure_with(closure_elems, x, scratch);
        if (elems.size() > best_size) {
          best = x;
          best_size = elems.size();
          best_elems = std::move(elems);
          if (static_cast<int>(best_size) == order_) break;
        }
      }
      gens.push_back(best);
      closure_elems = std::move(best_elems);
      closure.assign(order_, 0);
      for (int e : closure_elems) closure[e] = 1;
    }

    // BFS tree from the identity along right multiplication by generators.
    bfs_parent_.assign(order_, -1);
    bfs_gen_.assign(order_, 0);
    bfs_parent_[identity_] = identity_;
    std::queue<int> q;
    q.push(identity_);
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      for (std::size_t t = 0; t < gens.size(); ++t) {
        int b = mul(a, gens[t]);
        if (bfs_parent_[b] < 0) {
          bfs_parent_[b] = a;
          bfs_gen_[b] = static_cast<int>(t) + 1;
          q.push(b);
        }
        int c = mul(a, inverse_[gens[t]]);
        if (bfs_parent_[c] < 0) {
          bfs_parent_[c] = a;
          bfs_gen_[c] = -(static_cast<int>(t) + 1);
          q.push(c);
        }
      }
    }
    generators_ = std::move(gens);
  });
}

const std::vector<int>& FiniteGroup::generators() const {
  ensure_generator_data();
  return generators_;
}

std::vector<int> FiniteGroup::factor_element(int a) const {
  ensure_generator_data();
  std::vector<int> letters;
  int x = a;
  while (x != identity_) {
    letters.push_back(bfs_gen_[x]);
    x = bfs_parent_[x];
  }
  std::reverse(letters.begin(), letters.end());
  return letters;
}

void verify_axioms(const FiniteGroup& g) {
  const int n = g.order();
  // Latin square
  for (int a = 0; a < n; ++a) {
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (int b = 0; b < n; ++b) {
      if (seen_row[g.mul(a, b)]++)
        throw Error(ErrorKind::invariant_violation, "row is not a permutation");
      if (seen_col[g.mul(b, a)]++)
        throw Error(ErrorKind::invariant_violation, "column is not a permutation");
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw Error(ErrorKind::invariant_violation, "associativity fails");
  for (int a = 0; a < n; ++a) {
    if (g.mul(g.identity(), a) != a || g.mul(a, g.identity()) != a)
      throw Error(ErrorKind::invariant_violation, "identity fails");
    if (g.mul(a, g.inverse(a)) != g.identity())
      throw Error(ErrorKind::invariant_violation, "inverse fails");
  }
  auto closure = subgroup_generated(
      std::make_shared<FiniteGroup>(g.name(), n, g.table()), g.generators());
  if (closure.size() != n)
    throw Error(ErrorKind::invariant_violation, "generators do not generate");
}

GroupSpec GroupSpec::cyclic(int n) {
  GroupSpec s;
  s.kind = Kind::cyclic;
  s.n = n;
  return s;
}
GroupSpec GroupSpec::symmetric(int n) {
  GroupSpec s;
  s.kind = Kind::symmetric;
  s.n = n;
  return s;
}
GroupSpec GroupSpec::alternating(int n) {
  GroupSpec s;
  s.kind = Kind::alternating;
  s.n = n;
  return s;
}
GroupSpec GroupSpec::dihedral(int order) {
  GroupSpec s;
  s.kind = Kind::dihedral;
  s.n = order;
  return s;
}
GroupSpec GroupSpec::dicyclic(int order) {
  GroupSpec s;
  s.kind = Kind::dicyclic;
  s.n = order;
  return s;
}
GroupSpec GroupSpec::named(std::string which) {
  GroupSpec s;
  s.kind = Kind::named;
  s.which = std::move(which);
  return s;
}
GroupSpec GroupSpec::product(GroupSpec a, GroupSpec b) {
  GroupSpec s;
  s.kind = Kind::product;
  s.left = std::make_shared<GroupSpec>(std::move(a));
  s.right = std::make_shared<GroupSpec>(std::move(b));
  return s;
}

std::string GroupSpec::display() const {
  switch (kind) {
    case Kind::cyclic: return "C" + std::to_string(n);
    case Kind::symmetric: return "S" + std::to_string(n);
    case Kind::alternating: return "A" + std::to_string(n);
    case Kind::dihedral: return "D" + std::to_string(n / 2);
    case Kind::dicyclic: return n == 8 ? "Q8" : "Dic" + std::to_string(n / 4);
    case Kind::named: return which;
    case Kind::product: return left->display() + "x" + right->display();
  }
  return "?";
}

namespace {

FiniteGroupPtr cyclic_group(int n) {
  std::vector<int> table(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      table[a * n + b] = (a + b) % n;
  return std::make_shared<FiniteGroup>("C" + std::to_string(n), n, std::move(table));
}

FiniteGroupPtr group_from_permutations(const std::string& name, int degree,
                                       std::vector<std::vector<int>> perms) {
  // Close the given permutations under composition, sort lexicographically
  // (identity first), and build the table.
  std::vector<std::vector<int>> elems;
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  elems.push_back(id);
  auto contains = [&](const std::vector<int>& p) {
    return std::find(elems.begin(), elems.end(), p) != elems.end();
  };
  for (auto& p : perms)
    if (!contains(p)) elems.push_back(p);
  auto compose_perm = [degree](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r(degree);
    for (int x = 0; x < degree; ++x) r[x] = a[b[x]];
    return r;
  };
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) {
      auto p = compose_perm(elems[i], elems[j]);
      if (!contains(p)) elems.push_back(p);
    }
  std::sort(elems.begin(), elems.end());
  const int n = static_cast<int>(elems.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) index[elems[i]] = i;
  std::vector<int> table(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      table[a * n + b] = index.at(compose_perm(elems[a], elems[b]));
  return std::make_shared<FiniteGroup>(name, n, std::move(table));
}

FiniteGroupPtr symmetric_group(int n, bool even_only) {
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> elems;
  std::vector<int> p = base;
  do {
    if (even_only) {
      int inversions = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (p[i] > p[j]) ++inversions;
      if (inversions % 2) continue;
    }
    elems.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  // already lexicographically sorted by next_permutation
  const int m = static_cast<int>(elems.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < m; ++i) index[elems[i]] = i;
  std::vector<int> table(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::vector<int> r(n);
      for (int x = 0; x < n; ++x) r[x] = elems[a][elems[b][x]];
      table[a * m + b] = index.at(r);
    }
  std::string name = (even_only ? "A" : "S") + std::to_string(n);
  return std::make_shared<FiniteGroup>(name, m, std::move(table));
}

FiniteGroupPtr dihedral_group(int order) {
  const int k = order / 2;
  // element (i, f) acts as x -> i + (-1)^f x mod k; index = f*k + i
  const int n = order;
  std::vector<int> table(n * n);
  for (int f1 = 0; f1 < 2; ++f1)
    for (int i1 = 0; i1 < k; ++i1)
      for (int f2 = 0; f2 < 2; ++f2)
        for (int i2 = 0; i2 < k; ++i2) {
          int i = (i1 + (f1 ? k - i2 % k : i2)) % k;
          int f = f1 ^ f2;
          table[(f1 * k + i1) * n + (f2 * k + i2)] = f * k + i;
        }
  return std::make_shared<FiniteGroup>("D" + std::to_string(k), n, std::move(table));
}

FiniteGroupPtr dicyclic_group(int order) {
  const int k = order / 4;     // a^(2k)=e, b^2=a^k, b a b^-1 = a^-1
  const int m = 2 * k;
  const int n = order;
  std::vector<int> table(n * n);
  auto idx = [m](int i, int j) { return j * m + i; };
  for (int j1 = 0; j1 < 2; ++j1)
    for (int i1 = 0; i1 < m; ++i1)
      for (int j2 = 0; j2 < 2; ++j2)
        for (int i2 = 0; i2 < m; ++i2) {
          // (a^i1 b^j1)(a^i2 b^j2)
          int i = j1 ? (i1 - i2 % m + m) % m : (i1 + i2) % m;
          int j = j1 + j2;
          if (j == 2) {
            i = (i + k) % m;
            j = 0;
          }
          table[idx(i1, j1) * n + idx(i2, j2)] = idx(i, j);
        }
  std::string name = order == 8 ? "Q8" : "Dic" + std::to_string(k);
  return std::make_shared<FiniteGroup>(name, n, std::move(table));
}

FiniteGroupPtr heisenberg3() {
  // Upper unitriangular 3x3 matrices over F3: (a,b,c)*(a',b',c') =
  // (a+a', b+b', c+c'+a*b'). Order 27, exponent 3.
  const int n = 27;
  auto idx = [](int a, int b, int c) { return a * 9 + b * 3 + c; };
  std::vector<int> table(n * n);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int a2 = 0; a2 < 3; ++a2)
          for (int b2 = 0; b2 < 3; ++b2)
            for (int c2 = 0; c2 < 3; ++c2)
              table[idx(a, b, c) * n + idx(a2, b2, c2)] =
                  idx((a + a2) % 3, (b + b2) % 3, (c + c2 + a * b2) % 3);
  return std::make_shared<FiniteGroup>("He3", n, std::move(table));
}

FiniteGroupPtr frobenius_group(const std::string& name, int p, int mult, int order) {
  // <p-cycle, x -> mult*x mod p>; mult has the right multiplicative order.
  std::vector<int> cycle(p), scale(p);
  for (int x = 0; x < p; ++x) {
    cycle[x] = (x + 1) % p;
    scale[x] = (x * mult) % p;
  }
  auto g = group_from_permutations(name, p, {cycle, scale});
  if (g->order() != order)
    throw Error(ErrorKind::invariant_violation, "frobenius closure has wrong order");
  return g;
}

FiniteGroupPtr named_group(const std::string& which) {
  if (which == "F21") return frobenius_group("F21", 7, 2, 21);
  if (which == "He3") return heisenberg3();
  if (which == "F55") return frobenius_group("F55", 11, 3, 55);
  throw Error(ErrorKind::invalid_spec, spec_error("unknown named group " + which));
}

long long spec_order(const GroupSpec& s) {
  switch (s.kind) {
    case GroupSpec::Kind::cyclic: return s.n;
    case GroupSpec::Kind::symmetric: {
      long long f = 1;
      for (int i = 2; i <= s.n; ++i) f *= i;
      return f;
    }
    case GroupSpec::Kind::alternating: {
      long long f = 1;
      for (int i = 2; i <= s.n; ++i) f *= i;
      return s.n >= 2 ? f / 2 : 1;
    }
    case GroupSpec::Kind::dihedral: return s.n;
    case GroupSpec::Kind::dicyclic: return s.n;
    case GroupSpec::Kind::named:
      return s.which == "F21" ? 21 : s.which == "He3" ? 27 : s.which == "F55" ? 55 : 0;
    case GroupSpec::Kind::product: return spec_order(*s.left) * spec_order(*s.right);
  }
  return 0;
}

}  // namespace

FiniteGroupPtr build_group(const GroupSpec& spec, int max_order) {
  switch (spec.kind) {
    case GroupSpec::Kind::cyclic:
      if (spec.n < 1) throw Error(ErrorKind::invalid_spec, spec_error("Cyclic needs n >= 1"));
      break;
    case GroupSpec::Kind::symmetric:
      if (spec.n < 2) throw Error(ErrorKind::invalid_spec, spec_error("Symmetric needs n >= 2"));
      break;
    case GroupSpec::Kind::alternating:
      if (spec.n < 2) throw Error(ErrorKind::invalid_spec, spec_error("Alternating needs n >= 2"));
      break;
    case GroupSpec::Kind::dihedral:
      if (spec.n < 2 || spec.n % 2)
        throw Error(ErrorKind::invalid_spec, spec_error("Dihedral needs an even order >= 2"));
      break;
    case GroupSpec::Kind::dicyclic:
      if (spec.n < 8 || spec.n % 4)
        throw Error(ErrorKind::invalid_spec,
                    spec_error("Dicyclic needs an order divisible by 4, >= 8"));
      break;
    default: break;
  }
  long long ord = spec_order(spec);
  if (ord > max_order)
    throw Error(ErrorKind::order_bound_exceeded,
                spec.display() + " has order " + std::to_string(ord) + " > max_order " +
                    std::to_string(max_order));

  switch (spec.kind) {
    case GroupSpec::Kind::cyclic: return cyclic_group(spec.n);
    case GroupSpec::Kind::symmetric: return symmetric_group(spec.n, false);
    case GroupSpec::Kind::alternating: return symmetric_group(spec.n, true);
    case GroupSpec::Kind::dihedral: return dihedral_group(spec.n);
    case GroupSpec::Kind::dicyclic: return dicyclic_group(spec.n);
    case GroupSpec::Kind::named: return named_group(spec.which);
    case GroupSpec::Kind::product:
      return direct_product_group(build_group(*spec.left, max_order),
                                  build_group(*spec.right, max_order), max_order);
  }
  throw Error(ErrorKind::invalid_spec, spec_error("unknown kind"));
}

FiniteGroupPtr direct_product_group(const FiniteGroupPtr& g, const FiniteGroupPtr& h,
                                    int max_order) {
  long long n = static_cast<long long>(g->order()) * h->order();
  if (n > max_order)
    throw Error(ErrorKind::order_bound_exceeded,
                "product order " + std::to_string(n) + " > max_order " +
                    std::to_string(max_order));
  const int nh = h->order(), m = static_cast<int>(n);
  std::vector<int> table(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int p = g->mul(a / nh, b / nh);
      int q = h->mul(a % nh, b % nh);
      table[a * m + b] = p * nh + q;
    }
  return std::make_shared<FiniteGroup>(g->name() + "x" + h->name(), m, std::move(table));
}

Subgroup::Subgroup(FiniteGroupPtr parent, std::vector<char> membership)
    : parent_(std::move(parent)), membership_(std::move(membership)) {
  for (int i = 0; i < parent_->order(); ++i)
    if (membership_[i]) elements_.push_back(i);
}

Subgroup trivial_subgroup(const FiniteGroupPtr& g) {
  std::vector<char> mem(g->order(), 0);
  mem[g->identity()] = 1;
  return Subgroup(g, std::move(mem));
}

Subgroup whole_subgroup(const FiniteGroupPtr& g) {
  return Subgroup(g, std::vector<char>(g->order(), 1));
}

Subgroup subgroup_generated(const FiniteGroupPtr& g, std::span<const int> seed) {
  std::vector<char> mem(g->order(), 0);
  std::vector<int> elems;
  mem[g->identity()] = 1;
  elems.push_back(g->identity());
  for (int s : seed)
    if (!mem[s]) {
      mem[s] = 1;
      elems.push_back(s);
    }
  // closure under multiplication suffices in a finite group
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) {
      int p = g->mul(elems[i], elems[j]);
      if (!mem[p]) {
        mem[p] = 1;
        elems.push_back(p);
      }
    }
  return Subgroup(g, std::move(mem));
}

Subgroup normal_closure(const FiniteGroupPtr& g, std::span<const int> seed) {
  std::vector<int> conjugates;
  std::vector<char> seen(g->order(), 0);
  for (int s : seed)
    for (int x = 0; x < g->order(); ++x) {
      int c = g->conjugate(x, s);
      if (!seen[c]) {
        seen[c] = 1;
        conjugates.push_back(c);
      }
    }
  return subgroup_generated(g, conjugates);
}

Subgroup normal_closure_in(const Subgroup& ambient, std::span<const int> seed) {
  const auto& g = ambient.parent();
  std::vector<int> conjugates;
  std::vector<char> seen(g->order(), 0);
  for (int s : seed)
    for (int x : ambient.elements()) {
      int c = g->conjugate(x, s);
      if (!seen[c]) {
        seen[c] = 1;
        conjugates.push_back(c);
      }
    }
  return subgroup_generated(g, conjugates);
}

Subgroup commutator_subgroup(const FiniteGroupPtr& g) {
  return commutator(whole_subgroup(g), whole_subgroup(g));
}

Subgroup commutator(const Subgroup& a, const Subgroup& b) {
  const auto& g = a.parent();
  std::vector<int> comms;
  std::vector<char> seen(g->order(), 0);
  for (int x : a.elements())
    for (int y : b.elements()) {
      int c = g->mul(g->mul(x, y), g->mul(g->inverse(x), g->inverse(y)));
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  // the commutator set of two normal subgroups is conjugation-closed, so the
  // generated subgroup is already normal
  return subgroup_generated(g, comms);
}

bool is_normal(const Subgroup& n) {
  const auto& g = n.parent();
  for (int x = 0; x < g->order(); ++x)
    for (int a : n.elements())
      if (!n.contains(g->conjugate(x, a))) return false;
  return true;
}

std::vector<Subgroup> all_subgroups(const FiniteGroupPtr& g, int max_generators) {
  std::vector<std::vector<int>> layers_elem_sets;  // element lists, deduped
  std::map<std::vector<int>, int> seen;            // element list -> index
  auto add = [&](const Subgroup& s) -> bool {
    auto [it, inserted] = seen.emplace(s.elements(), static_cast<int>(seen.size()));
    if (inserted) layers_elem_sets.push_back(s.elements());
    return inserted;
  };
  add(trivial_subgroup(g));
  std::vector<std::vector<int>> frontier = {{}};
  for (int depth = 1; depth <= max_generators; ++depth) {
    std::vector<std::vector<int>> next_frontier;
    for (const auto& base : frontier) {
      for (int x = 0; x < g->order(); ++x) {
        std::vector<int> gens = base;
        gens.push_back(x);
        auto s = subgroup_generated(g, gens);
        if (add(s)) next_frontier.push_back(s.elements());
      }
    }
    frontier = std::move(next_frontier);
    if (frontier.empty()) break;
  }
  // the whole group is always a subgroup of itself
  add(whole_subgroup(g));

  std::vector<Subgroup> out;
  out.reserve(layers_elem_sets.size());
  for (auto& elems : layers_elem_sets) {
    std::vector<char> mem(g->order(), 0);
    for (int e : elems) mem[e] = 1;
    out.emplace_back(g, std::move(mem));
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
  });
  return out;
}

std::vector<Subgroup> normal_subgroups(const FiniteGroupPtr& g, int max_generators) {
  std::vector<Subgroup> out;
  for (auto& s : all_subgroups(g, max_generators))
    if (is_normal(s)) out.push_back(std::move(s));
  return out;
}

QuotientTable quotient_table(const FiniteGroupPtr& g, const Subgroup& n) {
  if (!is_normal(n))
    throw Error(ErrorKind::not_normal, "subgroup is not normal in " + g->name());
  const int ord = g->order();
  std::vector<int> coset_min(ord, -1);  // element -> minimal element of its coset
  for (int a = 0; a < ord; ++a) {
    if (coset_min[a] >= 0) continue;
    int mn = a;
    std::vector<int> members;
    for (int h : n.elements()) members.push_back(g->mul(a, h));
    for (int m : members) mn = std::min(mn, m);
    for (int m : members) coset_min[m] = mn;
  }
  std::vector<int> reps;
  for (int a = 0; a < ord; ++a)
    if (coset_min[a] == a) reps.push_back(a);
  std::vector<int> rep_index(ord, -1);
  for (std::size_t i = 0; i < reps.size(); ++i) rep_index[reps[i]] = static_cast<int>(i);
  const int m = static_cast<int>(reps.size());
  std::vector<int> table(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      table[i * m + j] = rep_index[coset_min[g->mul(reps[i], reps[j])]];
  std::vector<int> projection(ord);
  for (int a = 0; a < ord; ++a) projection[a] = rep_index[coset_min[a]];
  auto q = std::make_shared<FiniteGroup>(g->name() + "/N" + std::to_string(n.size()), m,
                                         std::move(table));
  return {std::move(q), std::move(projection)};
}

namespace {

std::vector<int> conjugacy_class_sizes(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<char> done(n, 0);
  std::vector<int> sizes;
  for (int a = 0; a < n; ++a) {
    if (done[a]) continue;
    int count = 0;
    for (int x = 0; x < n; ++x) {
      int c = g.conjugate(x, a);
      if (!done[c]) {
        done[c] = 1;
        ++count;
      }
    }
    sizes.push_back(count);
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

bool group_is_abelian(const FiniteGroup& g) {
  for (int a = 0; a < g.order(); ++a)
    for (int b = a + 1; b < g.order(); ++b)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

int center_size(const FiniteGroup& g) {
  int count = 0;
  for (int a = 0; a < g.order(); ++a) {
    bool central = true;
    for (int b = 0; b < g.order() && central; ++b)
      central = g.mul(a, b) == g.mul(b, a);
    if (central) ++count;
  }
  return count;
}

}  // namespace

namespace detail {

std::vector<int> extend_generator_images(const FiniteGroup& src, std::span<const int> gens,
                                         const FiniteGroup& tgt, std::span<const int> images) {
  std::vector<int> img(src.order(), -1);
  img[src.identity()] = tgt.identity();
  std::vector<int> queue;
  queue.reserve(src.order());
  queue.push_back(src.identity());
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int a = queue[qi];
    for (std::size_t t = 0; t < gens.size(); ++t) {
      int b = src.mul(a, gens[t]);
      int y = tgt.mul(img[a], images[t]);
      if (img[b] < 0) {
        img[b] = y;
        queue.push_back(b);
      } else if (img[b] != y) {
        return {};
      }
    }
  }
  return img;
}

}  // namespace detail

std::vector<long long> invariant_fingerprint(const FiniteGroup& g) {
  std::vector<long long> v;
  v.push_back(g.order());
  v.push_back(group_is_abelian(g) ? 1 : 0);
  std::vector<int> hist(g.order() + 1, 0);
  for (int a = 0; a < g.order(); ++a) ++hist[g.element_order(a)];
  for (int d = 1; d <= g.order(); ++d)
    if (hist[d]) {
      v.push_back(d);
      v.push_back(hist[d]);
    }
  v.push_back(-1);
  for (int s : conjugacy_class_sizes(g)) v.push_back(s);
  v.push_back(-2);
  v.push_back(center_size(g));
  auto self = std::make_shared<FiniteGroup>(g.name(), g.order(), g.table());
  v.push_back(commutator_subgroup(self).size());
  return v;
}

std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order()) return std::nullopt;
  if (invariant_fingerprint(g) != invariant_fingerprint(h)) return std::nullopt;

  auto gp = std::make_shared<FiniteGroup>(g.name(), g.order(), g.table());
  const auto& gens = gp->generators();
  const int k = static_cast<int>(gens.size());
  if (k == 0) return std::vector<int>{h.identity()};

  std::vector<std::vector<int>> candidates(k);
  for (int t = 0; t < k; ++t) {
    int od = g.element_order(gens[t]);
    for (int x = 0; x < h.order(); ++x)
      if (h.element_order(x) == od) candidates[t].push_back(x);
  }

  long long nodes = 0;
  const long long node_cap = 50'000'000;
  std::vector<int> images(k, -1);
  std::vector<int> pos(k, 0);
  int depth = 0;
  while (depth >= 0) {
    if (pos[depth] >= static_cast<int>(candidates[depth].size())) {
      pos[depth] = 0;
      --depth;
      if (depth >= 0) ++pos[depth];
      continue;
    }
    if (++nodes > node_cap)
      throw Error(ErrorKind::search_budget_exceeded, "isomorphism search too large");
    images[depth] = candidates[depth][pos[depth]];
    if (depth + 1 < k) {
      ++depth;
      continue;
    }
    auto full = detail::extend_generator_images(*gp, gens, h, images);
    if (!full.empty()) {
      std::vector<char> hit(h.order(), 0);
      bool bijective = true;
      for (int v : full) {
        if (hit[v]) {
          bijective = false;
          break;
        }
        hit[v] = 1;
      }
      if (bijective) return full;
    }
    ++pos[depth];
  }
  return std::nullopt;
}

bool is_isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
  return find_isomorphism(g, h).has_value();
}

}  // namespace qlift
