#include "qlift/expr.hpp"

#include <algorithm>
#include <cctype>

#include "qlift/homs.hpp"

namespace qlift {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::parse_error, msg); }

std::string strip(std::string_view text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

int parse_int(std::string_view s, const std::string& what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      }))
    fail("expected a number after " + what + ", got '" + std::string(s) + "'");
  return std::stoi(std::string(s));
}

GroupSpec parse_atom_spec(std::string_view t) {
  if (t == "Q8") return GroupSpec::quaternion8();
  if (t == "F21" || t == "He3" || t == "F55") return GroupSpec::named(std::string(t));
  if (t.rfind("Dic", 0) == 0) return GroupSpec::dicyclic(4 * parse_int(t.substr(3), "Dic"));
  if (t.size() >= 2) {
    char head = t[0];
    if (head == 'C') return GroupSpec::cyclic(parse_int(t.substr(1), "C"));
    if (head == 'S') return GroupSpec::symmetric(parse_int(t.substr(1), "S"));
    if (head == 'A') return GroupSpec::alternating(parse_int(t.substr(1), "A"));
    if (head == 'D') return GroupSpec::dihedral(2 * parse_int(t.substr(1), "D"));
  }
  fail("unknown group '" + std::string(t) + "'");
}

// Presentation words: letters a..z are generators, A..Z their inverses,
// '^' takes integer powers, parentheses group, '=' splits an equation.
class WordParser {
public:
  WordParser(std::string_view text, const std::string& gens) : text_(text), gens_(gens) {}

  Word parse() {
    Word w = parse_sequence();
    if (pos_ != text_.size()) fail("trailing characters in word '" + std::string(text_) + "'");
    return w;
  }

private:
  Word parse_sequence() {
    Word out;
    while (pos_ < text_.size() && text_[pos_] != ')') {
      Word factor = parse_factor();
      out = out.concat(factor);
    }
    return out;
  }

  Word parse_factor() {
    Word atom;
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      atom = parse_sequence();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')' in word");
      ++pos_;
    } else if (std::islower(static_cast<unsigned char>(c))) {
      atom.letters.push_back(gen_index(c) + 1);
      ++pos_;
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      atom.letters.push_back(-(gen_index(std::tolower(c)) + 1));
      ++pos_;
    } else {
      fail(std::string("unexpected character '") + c + "' in word");
    }
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      bool neg = pos_ < text_.size() && text_[pos_] == '-';
      if (neg) ++pos_;
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      int e = parse_int(text_.substr(start, pos_ - start), "^");
      Word powered;
      Word base = neg ? atom.inverse() : atom;
      for (int r = 0; r < e; ++r) powered = powered.concat(base);
      return powered;
    }
    return atom;
  }

  int gen_index(char c) {
    auto at = gens_.find(c);
    if (at == std::string::npos) fail(std::string("unknown generator '") + c + "'");
    return static_cast<int>(at);
  }

  std::string_view text_;
  std::string gens_;
  std::size_t pos_ = 0;
};

PresentedGroupPtr parse_presentation(std::string_view t) {
  // <a,b|relator,relator,...>
  if (t.size() < 2 || t.front() != '<' || t.back() != '>') fail("presentation must be <...>");
  std::string body(t.substr(1, t.size() - 2));
  auto bar = body.find('|');
  std::string gens_part = bar == std::string::npos ? body : body.substr(0, bar);
  std::string rel_part = bar == std::string::npos ? "" : body.substr(bar + 1);

  std::string gens;
  for (std::size_t i = 0; i < gens_part.size(); ++i) {
    char c = gens_part[i];
    if (c == ',') continue;
    if (!std::islower(static_cast<unsigned char>(c)))
      fail("generators must be lowercase letters");
    if (gens.find(c) != std::string::npos) fail("duplicate generator");
    gens.push_back(c);
  }
  if (gens.empty() && !gens_part.empty()) fail("empty generator list");

  std::vector<Word> relators;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= rel_part.size(); ++i) {
    if (i < rel_part.size() && rel_part[i] == '(') ++depth;
    if (i < rel_part.size() && rel_part[i] == ')') --depth;
    if (i == rel_part.size() || (rel_part[i] == ',' && depth == 0)) {
      std::string piece = rel_part.substr(start, i - start);
      start = i + 1;
      if (piece.empty()) continue;
      auto eq = piece.find('=');
      if (eq == std::string::npos) {
        relators.push_back(WordParser(piece, gens).parse());
      } else {
        Word lhs = WordParser(piece.substr(0, eq), gens).parse();
        Word rhs = WordParser(piece.substr(eq + 1), gens).parse();
        relators.push_back(lhs.concat(rhs.inverse()));
      }
    }
  }
  return std::make_shared<PresentedGroup>(std::string(t), static_cast<int>(gens.size()),
                                          std::move(relators));
}

Morphism unique_hom_or_fail(const GroupObject& src, const FiniteGroupPtr& tgt) {
  SearchBudget budget;
  auto homs = enumerate_homs(src, tgt, budget);
  if (homs.size() == 1) return homs.front();
  throw Error(ErrorKind::unsupported_square,
              "'" + src.name() + "->" + tgt->name() + "' is ambiguous (" +
                  std::to_string(homs.size()) + " homomorphisms); use >->, ->> or 0->");
}

}  // namespace

GroupSpec parse_group_spec(std::string_view text) {
  std::string t = strip(text);
  if (t.empty()) fail("empty group expression");
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= t.size(); ++i) {
    if (i == t.size() || t[i] == 'x') {
      parts.push_back(t.substr(start, i - start));
      start = i + 1;
    }
  }
  GroupSpec spec = parse_atom_spec(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i)
    spec = GroupSpec::product(std::move(spec), parse_atom_spec(parts[i]));
  return spec;
}

GroupObject parse_group_object(std::string_view text, int max_order) {
  std::string t = strip(text);
  if (t.empty()) fail("empty group expression");
  if (t == "0") return GroupObject(presented_trivial());
  if (t == "Z") return GroupObject(presented_z());
  if (t == "ZxZ" || t == "Z^2") return GroupObject(presented_z2());
  if (t == "F2") return GroupObject(presented_f2());
  if (t.rfind("Z/", 0) == 0) return GroupObject(presented_z_mod(parse_int(t.substr(2), "Z/")));
  if (t.front() == '<') return GroupObject(parse_presentation(t));
  return GroupObject(build_group(parse_group_spec(t), max_order));
}

Morphism parse_morphism_expr(std::string_view text, int max_order) {
  std::string t = strip(text);
  if (t == "F2->Z2ab") return abelianization_morphism();
  if (t.rfind("diag:", 0) == 0) {
    auto g = build_group(parse_group_spec(t.substr(5)), max_order);
    auto prod = direct_product(g, g, std::max(max_order, g->order() * g->order()));
    return *prod.diagonal;
  }

  // optional display label after the target
  std::string label;
  if (auto colon = t.rfind(':'); colon != std::string::npos && t.find('<') == std::string::npos) {
    label = t.substr(colon + 1);
    t = t.substr(0, colon);
  }

  if (auto at = t.find("->>"); at != std::string::npos) {
    auto g = build_group(parse_group_spec(t.substr(0, at)), max_order);
    auto h = build_group(parse_group_spec(t.substr(at + 3)), max_order);
    for (const auto& n : normal_subgroups(g)) {
      auto q = quotient(g, n);
      auto iso = find_isomorphism(*q.group, *h);
      if (!iso) continue;
      std::vector<int> emap(g->order());
      for (int a = 0; a < g->order(); ++a) emap[a] = (*iso)[q.projection.elem_map[a]];
      return morphism_from_elem_map(g, h, std::move(emap),
                                    label.empty() ? g->name() + "->>" + h->name() : label);
    }
    fail("no quotient of " + g->name() + " is isomorphic to " + h->name());
  }
  if (auto at = t.find(">->"); at != std::string::npos) {
    auto h = build_group(parse_group_spec(t.substr(0, at)), max_order);
    auto g = build_group(parse_group_spec(t.substr(at + 3)), max_order);
    for (const auto& s : all_subgroups(g)) {
      if (s.size() != h->order()) continue;
      auto mat = materialize_subgroup(s);
      auto iso = find_isomorphism(*h, *mat.group);
      if (!iso) continue;
      std::vector<int> emap(h->order());
      for (int a = 0; a < h->order(); ++a) emap[a] = mat.to_parent[(*iso)[a]];
      return morphism_from_elem_map(h, g, std::move(emap),
                                    label.empty() ? h->name() + ">->" + g->name() : label);
    }
    fail("no subgroup of " + g->name() + " is isomorphic to " + h->name());
  }

  auto arrow = t.find("->");
  if (arrow == std::string::npos) fail("morphism expression needs '->': " + t);
  std::string lhs = t.substr(0, arrow), rhs = t.substr(arrow + 2);
  GroupObject target = parse_group_object(rhs, max_order);
  if (lhs == "0") {
    GroupObject source = target.is_finite()
                             ? GroupObject(build_group(GroupSpec::cyclic(1), max_order))
                             : GroupObject(presented_trivial());
    auto m = trivial_morphism(source, target);
    m.label = label.empty() ? "0->" + target.name() : label;
    return m;
  }
  GroupObject source = parse_group_object(lhs, max_order);
  if (rhs == "0") {
    GroupObject tgt = source.is_finite()
                          ? GroupObject(build_group(GroupSpec::cyclic(1), max_order))
                          : GroupObject(presented_trivial());
    auto m = trivial_morphism(source, tgt);
    m.label = label.empty() ? source.name() + "->0" : label;
    return m;
  }
  if (!target.is_finite())
    throw Error(ErrorKind::unsupported_square,
                "only '0->" + target.name() + "' and the abelianization have presented targets");
  auto m = unique_hom_or_fail(source, target.finite());
  if (!label.empty()) m.label = label;
  return m;
}

}  // namespace qlift
