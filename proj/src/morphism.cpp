#include "qlift/morphism.hpp"

#include <algorithm>
#include <sstream>

namespace qlift {

namespace {

Word substitute_word(const Word& w, const std::vector<Word>& images) {
  Word out;
  for (int letter : w.letters) {
    const Word& piece = letter > 0 ? images[letter - 1] : images[-letter - 1];
    if (letter > 0) {
      out.letters.insert(out.letters.end(), piece.letters.begin(), piece.letters.end());
    } else {
      Word inv = piece.inverse();
      out.letters.insert(out.letters.end(), inv.letters.begin(), inv.letters.end());
    }
  }
  return out;
}

// Image word of an arbitrary element of a finite source under a morphism
// with a presented target.
Word element_word_image(const Morphism& f, int a) {
  const auto& src = *f.source.finite();
  Word out;
  for (int letter : src.factor_element(a)) {
    const Word& piece = letter > 0 ? f.word_images[letter - 1] : f.word_images[-letter - 1];
    if (letter > 0) {
      out.letters.insert(out.letters.end(), piece.letters.begin(), piece.letters.end());
    } else {
      Word inv = piece.inverse();
      out.letters.insert(out.letters.end(), inv.letters.begin(), inv.letters.end());
    }
  }
  return out;
}

}  // namespace

bool Morphism::is_identity_shape() const {
  if (!finite_ends()) return false;
  if (!source.same_object(target)) return false;
  for (int a = 0; a < source.finite()->order(); ++a)
    if (elem_map[a] != a) return false;
  return true;
}

std::string Morphism::describe() const {
  std::ostringstream os;
  os << source.name() << " -> " << target.name();
  if (!label.empty()) os << " [" << label << "]";
  os << " (";
  if (target.is_finite()) {
    for (std::size_t k = 0; k < gen_images.size(); ++k)
      os << (k ? "," : "") << gen_images[k];
  } else {
    for (std::size_t k = 0; k < word_images.size(); ++k) {
      os << (k ? "," : "") << "w" << word_images[k].letters.size();
    }
  }
  os << ")";
  return os.str();
}

int Morphism::map_gen_then(int k, const Morphism& then) const {
  const auto& tgt = *then.target.finite();
  if (target.is_finite()) {
    int b = gen_images[k];
    return then.elem_map[b];
  }
  return eval_word(word_images[k], then.gen_images, tgt);
}

void validate_morphism(const Morphism& f) {
  const int k = f.source.generator_count();
  if (f.target.is_finite()) {
    if (static_cast<int>(f.gen_images.size()) != k)
      throw Error(ErrorKind::invariant_violation, "wrong number of generator images");
    const auto& tgt = *f.target.finite();
    if (!f.source.is_finite()) {
      for (const auto& rel : f.source.presented()->relators())
        if (eval_word(rel, f.gen_images, tgt) != tgt.identity())
          throw Error(ErrorKind::invariant_violation,
                      "relator does not map to identity under " + f.describe());
    } else {
      const auto& src = *f.source.finite();
      if (static_cast<int>(f.elem_map.size()) != src.order())
        throw Error(ErrorKind::invariant_violation, "missing element map");
      auto ext = detail::extend_generator_images(src, src.generators(), tgt, f.gen_images);
      if (ext.empty() || ext != f.elem_map)
        throw Error(ErrorKind::invariant_violation,
                    "element map is not the extension of the generator images");
    }
  } else {
    if (static_cast<int>(f.word_images.size()) != k)
      throw Error(ErrorKind::invariant_violation, "wrong number of word images");
    int arity = f.target.presented()->arity();
    for (const auto& w : f.word_images)
      for (int letter : w.letters) {
        int idx = letter > 0 ? letter - 1 : -letter - 1;
        if (letter == 0 || idx >= arity)
          throw Error(ErrorKind::invariant_violation, "word image out of target arity");
      }
  }
}

Morphism identity_morphism(const FiniteGroupPtr& g) {
  Morphism m{GroupObject(g), GroupObject(g), {}, {}, {}, "id"};
  m.gen_images = g->generators();
  m.elem_map.resize(g->order());
  for (int a = 0; a < g->order(); ++a) m.elem_map[a] = a;
  return m;
}

Morphism trivial_morphism(GroupObject source, GroupObject target) {
  Morphism m{std::move(source), std::move(target), {}, {}, {}, ""};
  const int k = m.source.generator_count();
  if (m.target.is_finite()) {
    m.gen_images.assign(k, m.target.finite()->identity());
    if (m.source.is_finite())
      m.elem_map.assign(m.source.finite()->order(), m.target.finite()->identity());
  } else {
    m.word_images.assign(k, Word{});
  }
  return m;
}

Morphism morphism_from_gen_images(const FiniteGroupPtr& source, const FiniteGroupPtr& target,
                                  std::vector<int> gen_images, std::string label) {
  auto ext = detail::extend_generator_images(*source, source->generators(), *target, gen_images);
  if (ext.empty())
    throw Error(ErrorKind::invariant_violation,
                "generator images do not define a homomorphism " + source->name() + " -> " +
                    target->name());
  Morphism m{GroupObject(source), GroupObject(target), std::move(gen_images), {}, std::move(ext),
             std::move(label)};
  return m;
}

Morphism morphism_from_elem_map(const FiniteGroupPtr& source, const FiniteGroupPtr& target,
                                std::vector<int> elem_map, std::string label) {
  std::vector<int> gen_images;
  gen_images.reserve(source->generators().size());
  for (int g : source->generators()) gen_images.push_back(elem_map[g]);
  auto ext = detail::extend_generator_images(*source, source->generators(), *target, gen_images);
  if (ext.empty() || ext != elem_map)
    throw Error(ErrorKind::invariant_violation,
                "element map is not a homomorphism " + source->name() + " -> " + target->name());
  Morphism m{GroupObject(source), GroupObject(target), std::move(gen_images), {},
             std::move(elem_map), std::move(label)};
  return m;
}

Morphism presented_morphism(const PresentedGroupPtr& source, const FiniteGroupPtr& target,
                            std::vector<int> gen_images, std::string label) {
  Morphism m{GroupObject(source), GroupObject(target), std::move(gen_images), {}, {},
             std::move(label)};
  validate_morphism(m);
  return m;
}

Morphism presented_to_presented(const PresentedGroupPtr& source, const PresentedGroupPtr& target,
                                std::vector<Word> word_images, std::string label) {
  Morphism m{GroupObject(source), GroupObject(target), {}, std::move(word_images), {},
             std::move(label)};
  validate_morphism(m);
  return m;
}

Morphism abelianization_morphism() {
  return presented_to_presented(presented_f2(), presented_z2(), {Word{{1}}, Word{{2}}}, "ab");
}

Morphism compose(const Morphism& f, const Morphism& g) {
  if (!f.target.same_object(g.source))
    throw Error(ErrorKind::source_target_mismatch,
                "cannot compose " + f.describe() + " with " + g.describe());
  Morphism out{f.source, g.target, {}, {}, {}, ""};
  const int k = f.source.generator_count();

  if (g.target.is_finite()) {
    out.gen_images.resize(k);
    for (int t = 0; t < k; ++t) out.gen_images[t] = f.map_gen_then(t, g);
    if (f.source.is_finite()) {
      const auto& src = *f.source.finite();
      out.elem_map.resize(src.order());
      if (f.target.is_finite()) {
        for (int a = 0; a < src.order(); ++a) out.elem_map[a] = g.elem_map[f.elem_map[a]];
      } else {
        const auto& tgt = *g.target.finite();
        for (int a = 0; a < src.order(); ++a)
          out.elem_map[a] = eval_word(element_word_image(f, a), g.gen_images, tgt);
      }
    }
  } else {
    out.word_images.resize(k);
    for (int t = 0; t < k; ++t) {
      if (f.target.is_finite()) {
        out.word_images[t] = substitute_word(Word{f.target.finite()->factor_element(
                                                 f.gen_images[t])},
                                             g.word_images);
      } else {
        out.word_images[t] = substitute_word(f.word_images[t], g.word_images);
      }
    }
  }
  return out;
}

HomFlags classify_hom(const Morphism& f) {
  if (!f.finite_ends())
    throw Error(ErrorKind::unsupported_square, "classify_hom needs finite source and target");
  const auto& src = *f.source.finite();
  const auto& tgt = *f.target.finite();
  HomFlags flags;
  int kernel = 0;
  std::vector<char> hit(tgt.order(), 0);
  int image = 0;
  for (int a = 0; a < src.order(); ++a) {
    if (f.elem_map[a] == tgt.identity()) ++kernel;
    if (!hit[f.elem_map[a]]) {
      hit[f.elem_map[a]] = 1;
      ++image;
    }
  }
  flags.injective = kernel == 1;
  flags.surjective = image == tgt.order();
  flags.trivial = image == 1;
  return flags;
}

bool is_trivial_morphism(const Morphism& f) {
  if (f.target.is_finite()) {
    int e = f.target.finite()->identity();
    return std::all_of(f.gen_images.begin(), f.gen_images.end(),
                       [e](int x) { return x == e; });
  }
  return std::all_of(f.word_images.begin(), f.word_images.end(),
                     [](const Word& w) { return w.empty(); });
}

ProductMorphisms direct_product(const FiniteGroupPtr& g, const FiniteGroupPtr& h, int max_order) {
  ProductMorphisms out;
  out.group = direct_product_group(g, h, max_order);
  const int nh = h->order();
  std::vector<int> pl(out.group->order()), pr(out.group->order());
  for (int a = 0; a < out.group->order(); ++a) {
    pl[a] = a / nh;
    pr[a] = a % nh;
  }
  out.proj_left = morphism_from_elem_map(out.group, g, std::move(pl), "proj1");
  out.proj_right = morphism_from_elem_map(out.group, h, std::move(pr), "proj2");
  if (g->table() == h->table()) {
    std::vector<int> diag(g->order());
    for (int a = 0; a < g->order(); ++a) diag[a] = a * nh + a;
    out.diagonal = morphism_from_elem_map(g, out.group, std::move(diag), "diag");
  }
  return out;
}

MaterializedSubgroup materialize_subgroup(const Subgroup& s, std::string name) {
  const auto& parent = s.parent();
  const auto& elems = s.elements();
  const int n = s.size();
  if (name.empty()) name = parent->name() + "{" + std::to_string(n) + "}";
  std::vector<int> from_parent(parent->order(), -1);
  for (int i = 0; i < n; ++i) from_parent[elems[i]] = i;
  std::vector<int> table(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int p = parent->mul(elems[i], elems[j]);
      table[i * n + j] = from_parent[p];
    }
  auto grp = std::make_shared<FiniteGroup>(std::move(name), n, std::move(table));
  MaterializedSubgroup out;
  out.inclusion = morphism_from_elem_map(grp, parent, elems, "incl");
  out.group = std::move(grp);
  out.to_parent = elems;
  out.from_parent = std::move(from_parent);
  return out;
}

QuotientMorphism quotient(const FiniteGroupPtr& g, const Subgroup& n) {
  auto qt = quotient_table(g, n);
  QuotientMorphism out;
  out.projection = morphism_from_elem_map(g, qt.group, std::move(qt.projection), "proj");
  out.group = std::move(qt.group);
  return out;
}

Subgroup image_subgroup(const Morphism& f) {
  if (!f.finite_ends())
    throw Error(ErrorKind::unsupported_square, "image_subgroup needs finite ends");
  const auto& tgt = f.target.finite();
  std::vector<char> mem(tgt->order(), 0);
  for (int v : f.elem_map) mem[v] = 1;
  return Subgroup(tgt, std::move(mem));
}

}  // namespace qlift
