#include "qlift/universe.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "qlift/expr.hpp"

namespace qlift {

const char* morphism_kind_name(MorphismKind k) {
  switch (k) {
    case MorphismKind::standard: return "standard";
    case MorphismKind::inclusion: return "inclusion";
    case MorphismKind::quotient_projection: return "quotient";
    case MorphismKind::diagonal: return "diagonal";
    case MorphismKind::sampled: return "sampled";
  }
  return "?";
}

std::vector<int> primes_up_to(int n) {
  std::vector<int> out;
  std::vector<char> sieve(std::max(n + 1, 2), 1);
  for (int p = 2; p <= n; ++p) {
    if (!sieve[p]) continue;
    out.push_back(p);
    for (int q = 2 * p; q <= n; q += p) sieve[q] = 0;
  }
  return out;
}

int Universe::find_isomorphic_id(const FiniteGroup& g) const {
  auto fp = invariant_fingerprint(g);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (fingerprints[i] != fp) continue;
    if (is_isomorphic(*groups[i], g)) return static_cast<int>(i);
  }
  return -1;
}

std::vector<int> Universe::prime_list() const {
  return config.primes.empty() ? primes_up_to(config.max_order) : config.primes;
}

std::vector<Morphism> Universe::morphism_table() const {
  std::vector<Morphism> out;
  out.reserve(morphisms.size());
  for (const auto& e : morphisms) out.push_back(e.m);
  return out;
}

std::vector<GroupSpec> default_seeds(int max_order) {
  std::vector<GroupSpec> seeds;
  for (int n = 1; n <= max_order; ++n) seeds.push_back(GroupSpec::cyclic(n));
  for (int m = 4; m <= max_order; m += 2) seeds.push_back(GroupSpec::dihedral(m));
  for (int m = 8; m <= max_order; m += 4) seeds.push_back(GroupSpec::dicyclic(m));
  if (max_order >= 6) seeds.push_back(GroupSpec::symmetric(3));
  if (max_order >= 24) seeds.push_back(GroupSpec::symmetric(4));
  if (max_order >= 12) seeds.push_back(GroupSpec::alternating(4));
  if (max_order >= 60) seeds.push_back(GroupSpec::alternating(5));
  if (max_order >= 21) seeds.push_back(GroupSpec::named("F21"));
  if (max_order >= 27) seeds.push_back(GroupSpec::named("He3"));
  if (max_order >= 55) seeds.push_back(GroupSpec::named("F55"));

  // every abelian group in bound: products of cyclic factors >= 2,
  // non-increasing, at least two factors
  std::vector<std::vector<int>> abelian;
  std::function<void(std::vector<int>&, int, long long)> rec =
      [&](std::vector<int>& factors, int max_factor, long long prod) {
        if (factors.size() >= 2) abelian.push_back(factors);
        for (int f = std::min<long long>(max_factor, max_order / prod); f >= 2; --f) {
          factors.push_back(f);
          rec(factors, f, prod * f);
          factors.pop_back();
        }
      };
  std::vector<int> factors;
  rec(factors, max_order, 1);
  std::sort(abelian.begin(), abelian.end());
  for (const auto& fs : abelian) {
    GroupSpec s = GroupSpec::cyclic(fs[0]);
    for (std::size_t i = 1; i < fs.size(); ++i)
      s = GroupSpec::product(std::move(s), GroupSpec::cyclic(fs[i]));
    seeds.push_back(std::move(s));
  }

  // binary products of the non-cyclic seeds with anything named, in bound
  std::vector<GroupSpec> noncyclic;
  for (int m = 6; m <= max_order; m += 2) noncyclic.push_back(GroupSpec::dihedral(m));
  for (int m = 8; m <= max_order; m += 4) noncyclic.push_back(GroupSpec::dicyclic(m));
  if (max_order >= 6) noncyclic.push_back(GroupSpec::symmetric(3));
  if (max_order >= 24) noncyclic.push_back(GroupSpec::symmetric(4));
  if (max_order >= 12) noncyclic.push_back(GroupSpec::alternating(4));
  if (max_order >= 60) noncyclic.push_back(GroupSpec::alternating(5));
  auto order_of = [](const GroupSpec& s) -> long long {
    switch (s.kind) {
      case GroupSpec::Kind::cyclic: return s.n;
      case GroupSpec::Kind::dihedral:
      case GroupSpec::Kind::dicyclic: return s.n;
      case GroupSpec::Kind::symmetric: return s.n == 3 ? 6 : 24;
      case GroupSpec::Kind::alternating: return s.n == 4 ? 12 : 60;
      default: return 1;
    }
  };
  for (const auto& a : noncyclic) {
    for (int c = 2; order_of(a) * c <= max_order; ++c)
      seeds.push_back(GroupSpec::product(a, GroupSpec::cyclic(c)));
    for (const auto& b : noncyclic)
      if (order_of(a) * order_of(b) <= max_order)
        seeds.push_back(GroupSpec::product(a, b));
  }
  return seeds;
}

namespace {

struct CatalogBuilder {
  int max_order;
  std::vector<FiniteGroupPtr> groups;
  std::vector<std::string> provenance;
  std::vector<std::vector<long long>> fingerprints;
  std::map<long long, std::vector<int>> by_order;  // coarse index

  // Returns the catalog index; adds the group if its class is new.
  int add(const FiniteGroupPtr& g, const std::string& prov) {
    auto fp = invariant_fingerprint(*g);
    auto& bucket = by_order[g->order()];
    for (int idx : bucket) {
      if (fingerprints[idx] != fp) continue;
      if (is_isomorphic(*groups[idx], *g)) return idx;
    }
    int idx = static_cast<int>(groups.size());
    groups.push_back(g);
    provenance.push_back(prov);
    fingerprints.push_back(std::move(fp));
    bucket.push_back(idx);
    return idx;
  }

  bool contains(const FiniteGroup& g) {
    auto fp = invariant_fingerprint(g);
    for (int idx : by_order[g.order()]) {
      if (fingerprints[idx] != fp) continue;
      if (is_isomorphic(*groups[idx], g)) return true;
    }
    return false;
  }
};

}  // namespace

Universe build_universe(UniverseConfig config) {
  if (config.max_order < 1 || config.max_order > kGroupCoreMaxOrder)
    throw Error(ErrorKind::order_bound_exceeded,
                "universe max_order must be within 1.." + std::to_string(kGroupCoreMaxOrder));

  CatalogBuilder builder;
  builder.max_order = config.max_order;

  auto seeds = config.seeds.empty() ? default_seeds(config.max_order) : config.seeds;
  builder.add(build_group(GroupSpec::cyclic(1), config.max_order), "seed C1");
  for (const auto& spec : seeds)
    builder.add(build_group(spec, config.max_order), "seed " + spec.display());

  std::size_t processed = 0;
  for (int round = 0; round < config.closure_depth; ++round) {
    std::size_t upto = builder.groups.size();
    for (std::size_t gi = processed; gi < upto; ++gi) {
      auto g = builder.groups[gi];
      std::string base = builder.groups[gi]->name();
      auto subs = all_subgroups(g, config.subgroup_max_generators);
      for (const auto& s : subs) {
        if (s.is_trivial() || s.is_whole_group()) continue;
        auto mat = materialize_subgroup(s);
        builder.add(mat.group, "subgroup of " + base);
      }
      for (const auto& n : subs) {
        if (!is_normal(n) || n.is_trivial() || n.is_whole_group()) continue;
        auto q = quotient_table(g, n);
        builder.add(q.group, "quotient of " + base);
      }
    }
    processed = upto;
  }

  // canonical ids: order, then invariant fingerprint, then construction order
  std::vector<int> perm(builder.groups.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    if (builder.groups[a]->order() != builder.groups[b]->order())
      return builder.groups[a]->order() < builder.groups[b]->order();
    if (builder.fingerprints[a] != builder.fingerprints[b])
      return builder.fingerprints[a] < builder.fingerprints[b];
    return a < b;
  });

  Universe u;
  u.config = std::move(config);
  for (int idx : perm) {
    u.groups.push_back(builder.groups[idx]);
    u.group_provenance.push_back(builder.provenance[idx]);
    u.fingerprints.push_back(builder.fingerprints[idx]);
  }
  auto primes = u.prime_list();
  u.std_objects = standard_objects(primes);
  return u;
}

namespace {

// Embedding of the catalog representative of a subgroup into the parent.
Morphism inclusion_from_subgroup(const Universe& u, int rep_id, const Subgroup& s,
                                 const MaterializedSubgroup& mat) {
  const auto& rep = u.groups[rep_id];
  auto iso = find_isomorphism(*rep, *mat.group);
  if (!iso)
    throw Error(ErrorKind::invariant_violation, "catalog representative is not isomorphic");
  std::vector<int> emap(rep->order());
  for (int a = 0; a < rep->order(); ++a) emap[a] = mat.to_parent[(*iso)[a]];
  return morphism_from_elem_map(rep, s.parent(), std::move(emap),
                                rep->name() + ">->" + s.parent()->name());
}

}  // namespace

void morphism_pool(Universe& u) {
  u.morphisms.clear();
  std::vector<PoolEntry> staged;
  auto stage = [&](Morphism m, MorphismKind kind, std::string prov) {
    staged.push_back(PoolEntry{std::move(m), kind, std::move(prov)});
  };
  auto ensure_in_catalog = [&](const FiniteGroupPtr& g, const std::string& prov) -> int {
    int id = u.find_isomorphic_id(*g);
    if (id >= 0) return id;
    u.groups.push_back(g);
    u.group_provenance.push_back(prov);
    u.fingerprints.push_back(invariant_fingerprint(*g));
    return static_cast<int>(u.groups.size()) - 1;
  };

  // inclusions, quotient projections, diagonals; missing endpoint classes
  // are appended to the catalog first so every endpoint is a catalog entry
  const int group_count = static_cast<int>(u.groups.size());
  for (int gid = 0; gid < group_count; ++gid) {
    const auto& g = u.groups[gid];
    std::vector<Subgroup> subs;
    if (u.config.include_inclusions || u.config.include_quotients)
      subs = all_subgroups(g, u.config.subgroup_max_generators);
    if (u.config.include_inclusions) {
      int k = 0;
      for (const auto& s : subs) {
        auto mat = materialize_subgroup(s);
        int rep = ensure_in_catalog(mat.group, "subgroup-closure completion");
        auto m = inclusion_from_subgroup(u, rep, s, mat);
        stage(std::move(m), MorphismKind::inclusion,
              "subgroup #" + std::to_string(k) + " of " + g->name());
        ++k;
      }
    }
    if (u.config.include_quotients) {
      int k = 0;
      for (const auto& n : subs) {
        if (!is_normal(n)) continue;
        auto q = quotient(g, n);
        int rep = ensure_in_catalog(q.group, "quotient-closure completion");
        auto iso = find_isomorphism(*q.group, *u.groups[rep]);
        if (!iso)
          throw Error(ErrorKind::invariant_violation, "quotient representative mismatch");
        std::vector<int> emap(g->order());
        for (int a = 0; a < g->order(); ++a) emap[a] = (*iso)[q.projection.elem_map[a]];
        stage(morphism_from_elem_map(g, u.groups[rep], std::move(emap),
                                     g->name() + "->>" + u.groups[rep]->name()),
              MorphismKind::quotient_projection,
              "quotient by N" + std::to_string(n.size()) + " #" + std::to_string(k) + " of " +
                  g->name());
        ++k;
      }
    }
    if (u.config.include_diagonals) {
      long long sq = static_cast<long long>(g->order()) * g->order();
      if (sq <= u.config.max_order) {
        auto prod = direct_product(g, g, u.config.max_order);
        int rep = ensure_in_catalog(prod.group, "product-closure completion");
        auto iso = find_isomorphism(*prod.group, *u.groups[rep]);
        if (!iso)
          throw Error(ErrorKind::invariant_violation, "product representative mismatch");
        std::vector<int> emap(g->order());
        for (int a = 0; a < g->order(); ++a) emap[a] = (*iso)[a * g->order() + a];
        stage(morphism_from_elem_map(g, u.groups[rep], std::move(emap), "diag:" + g->name()),
              MorphismKind::diagonal, "diagonal of " + g->name());
      } else {
        u.notes.push_back("diagonal of " + g->name() + " skipped: product order " +
                          std::to_string(sq) + " exceeds max_order");
      }
    }
  }

  // trivial morphisms for every object, including completion entries
  const auto& zero = u.trivial_group();
  for (const auto& g : u.groups) {
    auto in = trivial_morphism(GroupObject(zero), GroupObject(g));
    in.label = "0->" + g->name();
    u.morphisms.push_back(PoolEntry{std::move(in), MorphismKind::standard, "0 -> " + g->name()});
    auto out = trivial_morphism(GroupObject(g), GroupObject(zero));
    out.label = g->name() + "->0";
    u.morphisms.push_back(
        PoolEntry{std::move(out), MorphismKind::standard, g->name() + " -> 0"});
  }
  auto p0 = u.std_objects.trivial;
  std::vector<PresentedGroupPtr> presented = {u.std_objects.z, u.std_objects.z2,
                                              u.std_objects.f2};
  for (const auto& [p, obj] : u.std_objects.z_mod_p) presented.push_back(obj);
  for (const auto& obj : presented) {
    auto in = trivial_morphism(GroupObject(p0), GroupObject(obj));
    in.label = "0->" + obj->name();
    u.morphisms.push_back(
        PoolEntry{std::move(in), MorphismKind::standard, "0 -> " + obj->name()});
    auto out = trivial_morphism(GroupObject(obj), GroupObject(p0));
    out.label = obj->name() + "->0";
    u.morphisms.push_back(
        PoolEntry{std::move(out), MorphismKind::standard, obj->name() + " -> 0"});
  }
  u.morphisms.push_back(PoolEntry{abelianization_morphism(), MorphismKind::standard,
                                  "abelianization F2 -> ZxZ"});

  for (auto& e : staged) u.morphisms.push_back(std::move(e));

  if (u.config.sample_homs_per_pair > 0) {
    SearchBudget budget;
    for (int a = 0; a < group_count; ++a)
      for (int b = 0; b < group_count; ++b) {
        auto homs = enumerate_homs(GroupObject(u.groups[a]), u.groups[b], budget);
        int take =
            std::min<int>(u.config.sample_homs_per_pair, static_cast<int>(homs.size()));
        if (take == 0) continue;
        std::size_t stride = std::max<std::size_t>(1, homs.size() / take);
        int added = 0;
        for (std::size_t i = 0; i < homs.size() && added < take; i += stride, ++added)
          u.morphisms.push_back(PoolEntry{
              homs[i], MorphismKind::sampled,
              "sampled hom " + u.groups[a]->name() + " -> " + u.groups[b]->name()});
      }
  }
}

ordered_json universe_to_json(const Universe& u) {
  ordered_json j;
  j["format"] = "qlift-universe";
  j["version"] = 1;
  ordered_json cfg;
  cfg["max_order"] = u.config.max_order;
  cfg["closure_depth"] = u.config.closure_depth;
  cfg["subgroup_max_generators"] = u.config.subgroup_max_generators;
  cfg["include_inclusions"] = u.config.include_inclusions;
  cfg["include_quotients"] = u.config.include_quotients;
  cfg["include_diagonals"] = u.config.include_diagonals;
  cfg["sample_homs_per_pair"] = u.config.sample_homs_per_pair;
  cfg["primes"] = u.prime_list();
  ordered_json seed_list = ordered_json::array();
  for (const auto& s : u.config.seeds) seed_list.push_back(s.display());
  cfg["seeds"] = std::move(seed_list);
  j["config"] = std::move(cfg);

  ordered_json groups = ordered_json::array();
  for (std::size_t i = 0; i < u.groups.size(); ++i) {
    ordered_json g;
    g["id"] = i;
    g["name"] = u.groups[i]->name();
    g["order"] = u.groups[i]->order();
    g["table"] = u.groups[i]->table();
    g["provenance"] = u.group_provenance[i];
    groups.push_back(std::move(g));
  }
  j["groups"] = std::move(groups);

  ordered_json morphisms = ordered_json::array();
  for (std::size_t i = 0; i < u.morphisms.size(); ++i) {
    ordered_json m = morphism_to_json(u.morphisms[i].m, u);
    m["id"] = i;
    m["kind"] = morphism_kind_name(u.morphisms[i].kind);
    m["provenance"] = u.morphisms[i].provenance;
    morphisms.push_back(std::move(m));
  }
  j["morphisms"] = std::move(morphisms);
  return j;
}

namespace {

// -1 when the object is not a catalog group
int object_group_id(const GroupObject& obj, const Universe& u) {
  if (!obj.is_finite()) return -1;
  for (std::size_t i = 0; i < u.groups.size(); ++i)
    if (u.groups[i]->uid() == obj.uid()) return static_cast<int>(i);
  return -1;
}

ordered_json object_ref(const GroupObject& obj, const Universe& u) {
  ordered_json j;
  if (obj.is_finite()) {
    int id = object_group_id(obj, u);
    if (id < 0)
      throw Error(ErrorKind::io_error,
                  "cannot serialize a morphism whose endpoint is not in the catalog: " +
                      obj.name());
    j["finite"] = id;
  } else {
    j["presented"] = obj.presented()->name();
  }
  return j;
}

GroupObject object_from_ref(const ordered_json& j, const Universe& u) {
  if (j.contains("finite")) return GroupObject(u.groups.at(j["finite"].get<int>()));
  std::string name = j["presented"].get<std::string>();
  if (name == "0") return GroupObject(presented_trivial());
  if (name == "Z") return GroupObject(presented_z());
  if (name == "ZxZ") return GroupObject(presented_z2());
  if (name == "F2") return GroupObject(presented_f2());
  if (name.rfind("Z/", 0) == 0) return GroupObject(presented_z_mod(std::stoi(name.substr(2))));
  throw Error(ErrorKind::io_error, "unknown presented object " + name);
}

}  // namespace

ordered_json morphism_to_json(const Morphism& m, const Universe& u) {
  ordered_json j;
  j["label"] = m.label;
  j["source"] = object_ref(m.source, u);
  j["target"] = object_ref(m.target, u);
  if (m.target.is_finite()) {
    j["gen_images"] = m.gen_images;
  } else {
    ordered_json words = ordered_json::array();
    for (const auto& w : m.word_images) words.push_back(w.letters);
    j["word_images"] = std::move(words);
  }
  return j;
}

namespace {

Morphism morphism_from_json(const ordered_json& j, const Universe& u) {
  GroupObject source = object_from_ref(j["source"], u);
  GroupObject target = object_from_ref(j["target"], u);
  std::string label = j.value("label", std::string{});
  if (target.is_finite()) {
    std::vector<int> gen_images = j["gen_images"].get<std::vector<int>>();
    if (source.is_finite())
      return morphism_from_gen_images(source.finite(), target.finite(), std::move(gen_images),
                                      label);
    return presented_morphism(source.presented(), target.finite(), std::move(gen_images), label);
  }
  std::vector<Word> words;
  for (const auto& w : j["word_images"]) words.push_back(Word{w.get<std::vector<int>>()});
  if (source.is_finite()) {
    Morphism m{source, target, {}, std::move(words), {}, label};
    validate_morphism(m);
    return m;
  }
  return presented_to_presented(source.presented(), target.presented(), std::move(words), label);
}

}  // namespace

Universe universe_from_json(const ordered_json& j) {
  if (j.value("format", std::string{}) != "qlift-universe" || j.value("version", 0) != 1)
    throw Error(ErrorKind::io_error, "not a version-1 universe file");
  Universe u;
  const auto& cfg = j.at("config");
  u.config.max_order = cfg.at("max_order").get<int>();
  u.config.closure_depth = cfg.at("closure_depth").get<int>();
  u.config.subgroup_max_generators = cfg.at("subgroup_max_generators").get<int>();
  u.config.include_inclusions = cfg.at("include_inclusions").get<bool>();
  u.config.include_quotients = cfg.at("include_quotients").get<bool>();
  u.config.include_diagonals = cfg.at("include_diagonals").get<bool>();
  u.config.sample_homs_per_pair = cfg.at("sample_homs_per_pair").get<int>();
  u.config.primes = cfg.at("primes").get<std::vector<int>>();
  for (const auto& s : cfg.at("seeds"))
    u.config.seeds.push_back(parse_group_spec(s.get<std::string>()));

  for (const auto& g : j.at("groups")) {
    u.groups.push_back(std::make_shared<FiniteGroup>(
        g.at("name").get<std::string>(), g.at("order").get<int>(),
        g.at("table").get<std::vector<int>>()));
    u.group_provenance.push_back(g.value("provenance", std::string{}));
    u.fingerprints.push_back(invariant_fingerprint(*u.groups.back()));
  }
  u.std_objects = standard_objects(u.config.primes);
  for (const auto& m : j.at("morphisms")) {
    PoolEntry e{morphism_from_json(m, u), MorphismKind::standard,
                m.value("provenance", std::string{})};
    std::string kind = m.value("kind", std::string{"standard"});
    if (kind == "inclusion") e.kind = MorphismKind::inclusion;
    else if (kind == "quotient") e.kind = MorphismKind::quotient_projection;
    else if (kind == "diagonal") e.kind = MorphismKind::diagonal;
    else if (kind == "sampled") e.kind = MorphismKind::sampled;
    u.morphisms.push_back(std::move(e));
  }
  return u;
}

void save_universe(const Universe& u, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io_error, "cannot open " + path + " for writing");
  out << universe_to_json(u).dump(1) << "\n";
}

Universe load_universe(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io_error, "cannot open " + path);
  ordered_json j;
  in >> j;
  return universe_from_json(j);
}

std::string universe_digest(const Universe& u) {
  std::string bytes = universe_to_json(u).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace qlift
