#include "nomega/names.hpp"

#include <stdexcept>

namespace nomega {

bool is_valid_token(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '#';
    if (!ok) return false;
  }
  return true;
}

NamePermutation NamePermutation::from_pairs(const std::vector<std::pair<Name, Name>>& pairs) {
  NamePermutation pi;
  std::set<Name> image;
  for (const auto& [from, to] : pairs) {
    if (!pi.map_.emplace(from, to).second)
      throw std::invalid_argument("permutation maps '" + from.token + "' twice");
    if (!image.insert(to).second)
      throw std::invalid_argument("permutation not injective at '" + to.token + "'");
  }
  for (const Name& b : image) {
    if (!pi.map_.count(b))
      throw std::invalid_argument("permutation image '" + b.token +
                                  "' is outside its domain; not a bijection");
  }
  return pi;
}

Name NamePermutation::apply(const Name& a) const {
  auto it = map_.find(a);
  return it == map_.end() ? a : it->second;
}

Word permute_word(const Word& w, const NamePermutation& pi) {
  Word out;
  out.reserve(w.size());
  for (const Name& a : w) out.push_back(pi.apply(a));
  return out;
}

UPWord permute_word(const UPWord& w, const NamePermutation& pi) {
  return UPWord{permute_word(w.prefix, pi), permute_word(w.period, pi)};
}

void FreshNameGenerator::avoid_all(const std::vector<Name>& names) {
  avoid_.insert(names.begin(), names.end());
}

Name FreshNameGenerator::next() {
  for (;;) {
    Name candidate{"#" + std::to_string(counter_++)};
    if (avoid_.insert(candidate).second) return candidate;
  }
}

}  // namespace nomega
