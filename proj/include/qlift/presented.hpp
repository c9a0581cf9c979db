#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qlift/group.hpp"

namespace qlift {

/// A word over the generators of a presentation: signed 1-based letters,
/// +k for generator k-1, -k for its inverse. Stored unreduced.
struct Word {
  std::vector<int> letters;

  bool empty() const { return letters.empty(); }
  Word concat(const Word& other) const;
  Word inverse() const;
  bool operator==(const Word&) const = default;
};

/// Evaluate a word in a finite group under the given generator images.
int eval_word(const Word& w, std::span<const int> images, const FiniteGroup& g);

/// A finitely presented group, used only as a homomorphism source. Never
/// materialized as an element set.
class PresentedGroup {
public:
  PresentedGroup(std::string name, int arity, std::vector<Word> relators);

  int arity() const { return arity_; }
  const std::vector<Word>& relators() const { return relators_; }
  const std::string& name() const { return name_; }
  std::uint64_t uid() const { return uid_; }

private:
  std::string name_;
  int arity_;
  std::vector<Word> relators_;
  std::uint64_t uid_;
};

using PresentedGroupPtr = std::shared_ptr<const PresentedGroup>;

PresentedGroupPtr presented_trivial();

/// Either end of a morphism: a finite group or a presented one.
class GroupObject {
public:
  GroupObject() : v_(presented_trivial()) {}
  GroupObject(FiniteGroupPtr g) : v_(std::move(g)) {}
  GroupObject(PresentedGroupPtr p) : v_(std::move(p)) {}

  bool is_finite() const { return std::holds_alternative<FiniteGroupPtr>(v_); }
  const FiniteGroupPtr& finite() const;
  const PresentedGroupPtr& presented() const;

  int generator_count() const;
  const std::string& name() const;
  std::uint64_t uid() const;
  /// Finite of order 1, or presented with no generators.
  bool is_trivial() const;
  /// Same underlying object (by uid) or structurally identical.
  bool same_object(const GroupObject& o) const;

private:
  std::variant<FiniteGroupPtr, PresentedGroupPtr> v_;
};

/// The fixed presented objects of the standard diagrams.
struct StandardObjects {
  PresentedGroupPtr trivial;   // no generators
  PresentedGroupPtr z;         // <a>
  PresentedGroupPtr z2;        // <a,b | [a,b]>  (Z x Z)
  PresentedGroupPtr f2;        // <a,b>
  std::vector<std::pair<int, PresentedGroupPtr>> z_mod_p;  // <a | a^p>
};

StandardObjects standard_objects(std::span<const int> primes);
PresentedGroupPtr presented_z();
PresentedGroupPtr presented_z2();
PresentedGroupPtr presented_f2();
PresentedGroupPtr presented_z_mod(int p);

}  // namespace qlift
