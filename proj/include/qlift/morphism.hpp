#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qlift/presented.hpp"

namespace qlift {

/// A group homomorphism stored by generator images. For finite targets the
/// images are element indices; for presented targets they are words in the
/// target's generators. When both ends are finite the full element map is
/// present and is the unique extension of the generator images.
struct Morphism {
  GroupObject source;
  GroupObject target;
  std::vector<int> gen_images;   // finite target
  std::vector<Word> word_images; // presented target
  std::vector<int> elem_map;     // finite source and target
  std::string label;

  bool finite_ends() const { return source.is_finite() && target.is_finite(); }
  bool is_identity_shape() const;
  std::string describe() const;

  /// Image of source generator k through this morphism followed by `then`,
  /// which must have a finite target.
  int map_gen_then(int k, const Morphism& then) const;
};

/// Check the Morphism invariants: relators map to identity, and (finite
/// source) the element map is the valid extension of the generator images.
/// Throws InvariantViolation.
void validate_morphism(const Morphism& f);

Morphism identity_morphism(const FiniteGroupPtr& g);
Morphism trivial_morphism(GroupObject source, GroupObject target);

/// Finite-source morphism from generator images; extends and validates.
Morphism morphism_from_gen_images(const FiniteGroupPtr& source, const FiniteGroupPtr& target,
                                  std::vector<int> gen_images, std::string label = {});
/// Finite-to-finite morphism from a full element map.
Morphism morphism_from_elem_map(const FiniteGroupPtr& source, const FiniteGroupPtr& target,
                                std::vector<int> elem_map, std::string label = {});
/// Presented-source morphism into a finite target.
Morphism presented_morphism(const PresentedGroupPtr& source, const FiniteGroupPtr& target,
                            std::vector<int> gen_images, std::string label = {});
/// Presented-to-presented morphism given word images.
Morphism presented_to_presented(const PresentedGroupPtr& source, const PresentedGroupPtr& target,
                                std::vector<Word> word_images, std::string label = {});
/// The abelianization F2 -> ZxZ (generator to generator).
Morphism abelianization_morphism();

/// Diagram-order composition: source of the result is f's source, target is
/// g's target ("f then g"). Requires target(f) = source(g).
Morphism compose(const Morphism& f, const Morphism& g);

struct HomFlags {
  bool injective = false;
  bool surjective = false;
  bool trivial = false;
};
/// Requires finite ends.
HomFlags classify_hom(const Morphism& f);

/// Image = identity. For presented targets this means all image words empty.
bool is_trivial_morphism(const Morphism& f);

struct ProductMorphisms {
  FiniteGroupPtr group;
  Morphism proj_left;
  Morphism proj_right;
  std::optional<Morphism> diagonal;  // present when both factors are the same group
};
ProductMorphisms direct_product(const FiniteGroupPtr& g, const FiniteGroupPtr& h,
                                int max_order = kGroupCoreMaxOrder);

struct MaterializedSubgroup {
  FiniteGroupPtr group;
  Morphism inclusion;           // group -> parent
  std::vector<int> to_parent;   // element index -> parent element
  std::vector<int> from_parent; // parent element -> element index or -1
};
MaterializedSubgroup materialize_subgroup(const Subgroup& s, std::string name = {});

struct QuotientMorphism {
  FiniteGroupPtr group;
  Morphism projection;  // parent -> quotient, surjective, kernel = n
};
QuotientMorphism quotient(const FiniteGroupPtr& g, const Subgroup& n);

/// Image of a finite-to-finite morphism as a subgroup of the target.
Subgroup image_subgroup(const Morphism& f);

}  // namespace qlift
