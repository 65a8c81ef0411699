#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nomega {

/// A symbol of the unbounded alphabet. Names are opaque tokens compared by
/// equality; any token over [A-Za-z0-9_#] is a valid name.
struct Name {
  std::string token;

  auto operator<=>(const Name&) const = default;
};

using Word = std::vector<Name>;

/// True iff `s` is a nonempty string over [A-Za-z0-9_#].
bool is_valid_token(std::string_view s);

/// The ultimately periodic word u·v^ω. The period v must be nonempty.
struct UPWord {
  Word prefix;  // u, possibly empty
  Word period;  // v, nonempty

  auto operator<=>(const UPWord&) const = default;
};

/// A finite-kernel permutation of names: a bijection given on a finite
/// domain, the identity everywhere else. The finite mapping must be injective
/// and must map its domain onto itself.
class NamePermutation {
 public:
  NamePermutation() = default;  // identity

  /// Throws std::invalid_argument if the pairs are not injective on their
  /// domain or the image is not the domain itself.
  static NamePermutation from_pairs(const std::vector<std::pair<Name, Name>>& pairs);

  Name apply(const Name& a) const;
  const std::map<Name, Name>& mapping() const { return map_; }

 private:
  std::map<Name, Name> map_;
};

/// Applies the permutation pointwise to both components of the word.
UPWord permute_word(const UPWord& w, const NamePermutation& pi);
Word permute_word(const Word& w, const NamePermutation& pi);

/// Deterministic source of fresh names: emits #0, #1, ... skipping an avoid
/// set. Every emitted name joins the avoid set, so a single generator never
/// repeats itself.
class FreshNameGenerator {
 public:
  FreshNameGenerator() = default;
  explicit FreshNameGenerator(std::set<Name> avoid) : avoid_(std::move(avoid)) {}

  void avoid(const Name& a) { avoid_.insert(a); }
  void avoid_all(const std::vector<Name>& names);

  Name next();

  const std::set<Name>& avoided() const { return avoid_; }

 private:
  std::set<Name> avoid_;
  std::size_t counter_ = 0;
};

}  // namespace nomega
