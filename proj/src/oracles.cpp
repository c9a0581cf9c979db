#include "qlift/oracles.hpp"

namespace qlift {

namespace {

SeriesReport descending_series(const FiniteGroupPtr& g, SeriesReport::Kind kind) {
  SeriesReport report;
  report.kind = kind;
  report.terms.push_back(whole_subgroup(g));
  const Subgroup whole = whole_subgroup(g);
  while (true) {
    const Subgroup& last = report.terms.back();
    Subgroup next = kind == SeriesReport::Kind::derived ? commutator(last, last)
                                                        : commutator(whole, last);
    if (next == last) {
      // witness a non-trivial stall once; reaching the trivial subgroup
      // needs no repeat
      if (!last.is_trivial()) report.terms.push_back(std::move(next));
      break;
    }
    report.terms.push_back(std::move(next));
  }
  report.stabilized = report.terms.size() >= 2 &&
                      report.terms[report.terms.size() - 1] ==
                          report.terms[report.terms.size() - 2];
  return report;
}

}  // namespace

SeriesReport derived_series(const FiniteGroupPtr& g) {
  return descending_series(g, SeriesReport::Kind::derived);
}

SeriesReport lower_central_series(const FiniteGroupPtr& g) {
  return descending_series(g, SeriesReport::Kind::lower_central);
}

bool is_solvable(const FiniteGroupPtr& g) {
  return derived_series(g).terms.back().is_trivial();
}

bool is_perfect(const FiniteGroupPtr& g) {
  return commutator_subgroup(g).is_whole_group();
}

bool is_nilpotent(const FiniteGroupPtr& g) {
  return lower_central_series(g).terms.back().is_trivial();
}

bool is_abelian(const FiniteGroup& g) {
  for (int a = 0; a < g.order(); ++a)
    for (int b = a + 1; b < g.order(); ++b)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

bool has_odd_order(const FiniteGroup& g) { return g.order() % 2 == 1; }

bool is_p_group(const FiniteGroup& g, int p) {
  int n = g.order();
  while (n % p == 0) n /= p;
  return n == 1;
}

bool order_coprime_to(const FiniteGroup& g, int p) { return g.order() % p != 0; }

Subgroup perfect_core(const FiniteGroupPtr& g) {
  Subgroup term = whole_subgroup(g);
  while (true) {
    Subgroup next = commutator(term, term);
    if (next == term) return term;
    term = std::move(next);
  }
}

std::optional<SeriesReport> subnormal_oracle(const Subgroup& d) {
  const auto& g = d.parent();
  std::vector<Subgroup> descent;  // G = H0 > H1 > ... > H*
  descent.push_back(whole_subgroup(g));
  while (true) {
    Subgroup next = normal_closure_in(descent.back(), d.elements());
    if (next == descent.back()) break;
    descent.push_back(std::move(next));
  }
  if (!(descent.back() == d)) return std::nullopt;
  SeriesReport report;
  report.kind = SeriesReport::Kind::subnormal_chain;
  report.stabilized = true;
  report.terms.assign(descent.rbegin(), descent.rend());
  return report;
}

Subgroup minimal_subnormal_over(const Subgroup& d) {
  const auto& g = d.parent();
  Subgroup current = whole_subgroup(g);
  while (true) {
    Subgroup next = normal_closure_in(current, d.elements());
    if (next == current) break;
    current = std::move(next);
  }
  if (current == d)
    throw Error(ErrorKind::already_subnormal,
                "subgroup is already subnormal in " + g->name());
  return current;
}

}  // namespace qlift
