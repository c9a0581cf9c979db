#include "qlift/presented.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>

namespace qlift {

namespace {
std::atomic<std::uint64_t> g_next_uid{1u << 20};
}

Word Word::concat(const Word& other) const {
  Word w;
  w.letters = letters;
  w.letters.insert(w.letters.end(), other.letters.begin(), other.letters.end());
  return w;
}

Word Word::inverse() const {
  Word w;
  w.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back(-*it);
  return w;
}

int eval_word(const Word& w, std::span<const int> images, const FiniteGroup& g) {
  int acc = g.identity();
  for (int letter : w.letters) {
    int idx = letter > 0 ? letter - 1 : -letter - 1;
    int x = images[idx];
    if (letter < 0) x = g.inverse(x);
    acc = g.mul(acc, x);
  }
  return acc;
}

PresentedGroup::PresentedGroup(std::string name, int arity, std::vector<Word> relators)
    : name_(std::move(name)), arity_(arity), relators_(std::move(relators)),
      uid_(g_next_uid.fetch_add(1)) {
  if (arity_ < 0) throw Error(ErrorKind::invalid_spec, "negative arity");
  for (const auto& r : relators_)
    for (int letter : r.letters) {
      int idx = letter > 0 ? letter - 1 : -letter - 1;
      if (letter == 0 || idx >= arity_)
        throw Error(ErrorKind::invalid_spec, "relator letter out of range in " + name_);
    }
}

const FiniteGroupPtr& GroupObject::finite() const {
  if (!is_finite())
    throw Error(ErrorKind::arity_mismatch, "expected a finite group, got " + name());
  return std::get<FiniteGroupPtr>(v_);
}

const PresentedGroupPtr& GroupObject::presented() const {
  if (is_finite())
    throw Error(ErrorKind::arity_mismatch, "expected a presented group, got " + name());
  return std::get<PresentedGroupPtr>(v_);
}

int GroupObject::generator_count() const {
  return is_finite() ? static_cast<int>(std::get<FiniteGroupPtr>(v_)->generators().size())
                     : std::get<PresentedGroupPtr>(v_)->arity();
}

const std::string& GroupObject::name() const {
  return is_finite() ? std::get<FiniteGroupPtr>(v_)->name()
                     : std::get<PresentedGroupPtr>(v_)->name();
}

std::uint64_t GroupObject::uid() const {
  return is_finite() ? std::get<FiniteGroupPtr>(v_)->uid()
                     : std::get<PresentedGroupPtr>(v_)->uid();
}

bool GroupObject::is_trivial() const {
  return is_finite() ? std::get<FiniteGroupPtr>(v_)->order() == 1
                     : std::get<PresentedGroupPtr>(v_)->arity() == 0;
}

bool GroupObject::same_object(const GroupObject& o) const {
  if (is_finite() != o.is_finite()) return false;
  if (uid() == o.uid()) return true;
  if (is_finite()) {
    const auto& a = *std::get<FiniteGroupPtr>(v_);
    const auto& b = *std::get<FiniteGroupPtr>(o.v_);
    return a.order() == b.order() && a.table() == b.table();
  }
  const auto& a = *std::get<PresentedGroupPtr>(v_);
  const auto& b = *std::get<PresentedGroupPtr>(o.v_);
  return a.arity() == b.arity() && a.relators() == b.relators();
}

PresentedGroupPtr presented_trivial() {
  static PresentedGroupPtr p = std::make_shared<PresentedGroup>("0", 0, std::vector<Word>{});
  return p;
}

PresentedGroupPtr presented_z() {
  static PresentedGroupPtr p = std::make_shared<PresentedGroup>("Z", 1, std::vector<Word>{});
  return p;
}

PresentedGroupPtr presented_z2() {
  static PresentedGroupPtr p = std::make_shared<PresentedGroup>(
      "ZxZ", 2, std::vector<Word>{Word{{1, 2, -1, -2}}});
  return p;
}

PresentedGroupPtr presented_f2() {
  static PresentedGroupPtr p = std::make_shared<PresentedGroup>("F2", 2, std::vector<Word>{});
  return p;
}

PresentedGroupPtr presented_z_mod(int p) {
  if (p < 1) throw Error(ErrorKind::invalid_spec, "Z/p needs p >= 1");
  static std::mutex mu;
  static std::map<int, PresentedGroupPtr> memo;
  std::lock_guard lock(mu);
  auto it = memo.find(p);
  if (it != memo.end()) return it->second;
  Word rel;
  rel.letters.assign(static_cast<std::size_t>(p), 1);
  auto ptr = std::make_shared<PresentedGroup>("Z/" + std::to_string(p), 1,
                                              std::vector<Word>{std::move(rel)});
  memo.emplace(p, ptr);
  return ptr;
}

StandardObjects standard_objects(std::span<const int> primes) {
  StandardObjects s;
  s.trivial = presented_trivial();
  s.z = presented_z();
  s.z2 = presented_z2();
  s.f2 = presented_f2();
  for (int p : primes) s.z_mod_p.emplace_back(p, presented_z_mod(p));
  std::sort(s.z_mod_p.begin(), s.z_mod_p.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return s;
}

}  // namespace qlift
