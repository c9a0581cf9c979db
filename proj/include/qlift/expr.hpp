#pragma once

#include <string_view>

#include "qlift/morphism.hpp"

namespace qlift {

/// Grammar: "C"n | "S"n | "A"n | "D"n (order 2n) | "Q8" | "Dic"k (order 4k)
/// | F21 | He3 | F55 | spec "x" spec
GroupSpec parse_group_spec(std::string_view text);

/// Group spec, one of the fixed presented objects (0, Z, ZxZ, F2, Z/p), or a
/// presentation "<a,b|a^2,(ab)^3,ab=ba>".
GroupObject parse_group_object(std::string_view text, int max_order = kGroupCoreMaxOrder);

/// Morphism expressions:
///   "0->G", "G->0"            trivial morphisms
///   "H>->G"                   first subgroup of G isomorphic to H, embedded
///   "G->>H[:label]"           first canonical quotient of G isomorphic to H
///   "F2->Z2ab"                the abelianization
///   "diag:G"                  diagonal G -> GxG
///   "A->B"                    the unique homomorphism, when there is exactly one
Morphism parse_morphism_expr(std::string_view text, int max_order = kGroupCoreMaxOrder);

}  // namespace qlift
