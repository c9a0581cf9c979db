#pragma once

#include <span>

#include "qlift/homs.hpp"

namespace qlift {

/// A commutative square: f on the left (A -> B), g on the right (X -> Y),
/// i across the top (A -> X), j across the bottom (B -> Y).
struct LiftingSquare {
  Morphism f, g, i, j;
};

/// Equality of compose(f, j) and compose(i, g) as maps on A's generators.
bool square_commutes(const LiftingSquare& sq);

struct LiftResult {
  bool holds = false;
  std::optional<LiftingSquare> counterexample;  // first failing square, canonical order
  std::optional<Morphism> witness_lift;         // lift of the last square checked
};

/// A diagonal B -> X with compose(f, lift) = i and compose(lift, g) = j, or
/// absent. The square must commute; X and Y must be finite.
std::optional<Morphism> find_lift(const LiftingSquare& sq, SearchBudget& budget);

/// Decide f lifts against g: every commutative square built from
/// Hom(A, X) x Hom(B, Y) admits a diagonal. Squares are enumerated j-outer,
/// i-inner so the reported counterexample is canonical.
LiftResult lifts(const Morphism& f, const Morphism& g, SearchBudget& budget,
                 HomCache* cache = nullptr);

enum class Side { left, right };
enum class TerminalMode { from_zero, to_zero };

/// Quillen negation restricted to a finite pool: ids of pool members lifting
/// on the given side against every member of `p_ids`. Budget failures are
/// rethrown tagged with the offending pair.
std::vector<int> negation_class(std::span<const int> p_ids, Side side,
                                std::span<const int> universe_ids,
                                std::span<const Morphism> pool, long long budget_per_pair,
                                HomCache* cache = nullptr);

/// Filter to morphisms whose source (from_zero) or target (to_zero) is the
/// trivial group.
std::vector<int> restrict_to_terminal(std::span<const int> ids, TerminalMode mode,
                                      std::span<const Morphism> pool);

}  // namespace qlift
