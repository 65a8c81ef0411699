#include "nomega/product.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace nomega {

bool is_valid_relation(const RegRelation& rel) {
  std::set<RegId> lefts, rights;
  for (const auto& [x, y] : rel) {
    if (!lefts.insert(x).second) return false;
    if (!rights.insert(y).second) return false;
  }
  return true;
}

namespace {

struct NamedClass {
  QuotientClass cls;
  std::vector<std::string> member_tokens;  // sorted, for canonical ordering
};

std::vector<NamedClass> named_classes(const Automaton& a1, const Automaton& a2,
                                      const ProductStateKey& s) {
  if (!is_valid_relation(s.rel))
    throw std::invalid_argument("register relation is not functional and injective");
  const auto& left_regs = a1.states[s.left].registers;
  const auto& right_regs = a2.states[s.right].registers;

  std::vector<NamedClass> classes;
  std::vector<bool> right_used(right_regs.size(), false);
  for (RegId x = 0; x < left_regs.size(); ++x) {
    QuotientClass c{x, std::nullopt};
    for (const auto& [rx, ry] : s.rel) {
      if (rx == x) {
        c.right = ry;
        right_used[ry] = true;
        break;
      }
    }
    std::vector<std::string> tokens{left_regs[x]};
    if (c.right) tokens.push_back(right_regs[*c.right]);
    std::sort(tokens.begin(), tokens.end());
    classes.push_back({c, std::move(tokens)});
  }
  for (RegId y = 0; y < right_regs.size(); ++y) {
    if (right_used[y]) continue;
    classes.push_back({QuotientClass{std::nullopt, y}, {right_regs[y]}});
  }

  std::sort(classes.begin(), classes.end(), [](const NamedClass& a, const NamedClass& b) {
    if (a.member_tokens != b.member_tokens) return a.member_tokens < b.member_tokens;
    auto key = [](const NamedClass& c) {
      return std::pair(c.cls.left ? *c.cls.left : SIZE_MAX,
                       c.cls.right ? *c.cls.right : SIZE_MAX);
    };
    return key(a) < key(b);
  });
  return classes;
}

// Canonical register tokens: sorted member tokens joined by '_', suffixed
// with #2, #3, ... when that collides within the state.
std::vector<std::string> class_tokens(const std::vector<NamedClass>& classes) {
  std::vector<std::string> out;
  std::set<std::string> taken;
  for (const NamedClass& c : classes) {
    std::string base;
    for (std::size_t i = 0; i < c.member_tokens.size(); ++i) {
      if (i) base += "_";
      base += c.member_tokens[i];
    }
    std::string name = base;
    for (int k = 2; !taken.insert(name).second; ++k) name = base + "#" + std::to_string(k);
    out.push_back(std::move(name));
  }
  return out;
}

std::vector<QuotientClass> strip_names(const std::vector<NamedClass>& classes) {
  std::vector<QuotientClass> out;
  out.reserve(classes.size());
  for (const NamedClass& c : classes) out.push_back(c.cls);
  return out;
}

// Per-side register -> class index maps.
struct ClassIndex {
  std::vector<std::optional<std::size_t>> left;
  std::vector<std::optional<std::size_t>> right;
};

ClassIndex index_classes(const Automaton& a1, const Automaton& a2, const ProductStateKey& s,
                         const std::vector<QuotientClass>& classes) {
  ClassIndex idx;
  idx.left.assign(a1.states[s.left].registers.size(), std::nullopt);
  idx.right.assign(a2.states[s.right].registers.size(), std::nullopt);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].left) idx.left[*classes[i].left] = i;
    if (classes[i].right) idx.right[*classes[i].right] = i;
  }
  return idx;
}

}  // namespace

std::vector<QuotientClass> quotient_classes(const Automaton& a1, const Automaton& a2,
                                            const ProductStateKey& s) {
  return strip_names(named_classes(a1, a2, s));
}

InitialProduct initial_product_state(const Automaton& a1, const Automaton& a2) {
  InitialProduct out;
  out.state.left = a1.initial_state;
  out.state.right = a2.initial_state;
  for (RegId x = 0; x < a1.initial_assignment.size(); ++x)
    for (RegId y = 0; y < a2.initial_assignment.size(); ++y)
      if (a1.initial_assignment[x] == a2.initial_assignment[y])
        out.state.rel.emplace_back(x, y);
  std::sort(out.state.rel.begin(), out.state.rel.end());
  // Injectivity of the factor assignments makes the relation functional and
  // injective.
  if (!is_valid_relation(out.state.rel))
    throw std::logic_error("initial relation is not in Reg(q0,q0)");

  out.classes = quotient_classes(a1, a2, out.state);
  std::set<Name> used;
  for (const QuotientClass& c : out.classes) {
    Name v = c.left ? a1.initial_assignment[*c.left] : a2.initial_assignment[*c.right];
    if (c.left && c.right && a1.initial_assignment[*c.left] != a2.initial_assignment[*c.right])
      throw std::logic_error("initial quotient assignment is ill-defined");
    if (!used.insert(v).second)
      throw std::logic_error("initial quotient assignment is not injective");
    out.assignment.push_back(v);
  }
  return out;
}

ProductStep product_transition(const Automaton& a1, const Automaton& a2,
                               const ProductStateKey& s,
                               std::optional<std::size_t> label_class) {
  std::vector<QuotientClass> classes = quotient_classes(a1, a2, s);

  // The quotient label determines both factor labels: a two-sided class
  // fires both registers, a singleton fires one register against the other
  // side's ⋆, and ⋆ fires ⋆ on both sides.
  Label l1 = Label::star();
  Label l2 = Label::star();
  if (label_class) {
    if (*label_class >= classes.size())
      throw std::invalid_argument("label class out of range");
    const QuotientClass& c = classes[*label_class];
    if (c.left) l1 = Label::reg(*c.left);
    if (c.right) l2 = Label::reg(*c.right);
  }
  const bool alloc = !label_class;

  const Transition& t1 = a1.transition_for(s.left, l1);
  const Transition& t2 = a2.transition_for(s.right, l2);

  // S = σ2⁻¹ ∘ (R ∪ {(l1,l2)}) ∘ σ1, over the target register sets.
  auto matches = [](const std::optional<RegId>& src, const Label& l) {
    return l.is_star() ? !src.has_value() : (src.has_value() && *src == l.reg_index());
  };
  RegRelation srel;
  for (RegId x = 0; x < t1.history.size(); ++x) {
    for (RegId y = 0; y < t2.history.size(); ++y) {
      const auto& s1 = t1.history[x];
      const auto& s2 = t2.history[y];
      bool related = false;
      if (s1 && s2 &&
          std::find(s.rel.begin(), s.rel.end(), std::pair(*s1, *s2)) != s.rel.end())
        related = true;
      else if (matches(s1, l1) && matches(s2, l2))
        related = true;
      if (related) srel.emplace_back(x, y);
    }
  }
  std::sort(srel.begin(), srel.end());
  if (!is_valid_relation(srel))
    throw std::logic_error("derived relation is not functional and injective");

  ProductStep step;
  step.target = {t1.target, t2.target, std::move(srel)};
  step.target_classes = quotient_classes(a1, a2, step.target);

  ClassIndex source_index = index_classes(a1, a2, s, classes);

  auto left_class = [&source_index](RegId r) -> std::size_t {
    if (!source_index.left[r])
      throw std::logic_error("source register is not in any class");
    return *source_index.left[r];
  };
  auto right_class = [&source_index](RegId r) -> std::size_t {
    if (!source_index.right[r])
      throw std::logic_error("source register is not in any class");
    return *source_index.right[r];
  };

  // History over quotient classes. For a member whose factor history reads a
  // register, the source is that register's class; for a member fed by the
  // factor's fresh marker the source is ⋆ under (Alloc) and the other
  // factor's label class under the one-sided (Reg) case. Members of a
  // two-sided class must agree.
  step.history.assign(step.target_classes.size(), std::nullopt);
  std::set<std::size_t> used_sources;
  bool used_star = false;
  for (std::size_t j = 0; j < step.target_classes.size(); ++j) {
    const QuotientClass& c = step.target_classes[j];
    bool computed = false;
    std::optional<std::size_t> source;  // nullopt = ⋆ once computed
    auto merge = [&](std::optional<std::size_t> v) {
      if (computed && source != v)
        throw std::logic_error("product history disagrees across class members");
      source = v;
      computed = true;
    };
    if (c.left) {
      const auto& s1 = t1.history[*c.left];
      if (s1) {
        merge(left_class(*s1));
      } else if (alloc) {
        merge(std::nullopt);
      } else {
        // One-sided (Reg): this member consumed the other factor's register value.
        if (l2.is_star())
          throw std::logic_error("fresh history entry with no register label on either side");
        merge(right_class(l2.reg_index()));
      }
    }
    if (c.right) {
      const auto& s2 = t2.history[*c.right];
      if (s2) {
        merge(right_class(*s2));
      } else if (alloc) {
        merge(std::nullopt);
      } else {
        if (l1.is_star())
          throw std::logic_error("fresh history entry with no register label on either side");
        merge(left_class(l1.reg_index()));
      }
    }
    if (!computed) throw std::logic_error("empty quotient class");
    step.history[j] = source;
    bool fresh_entry = !source;
    if (fresh_entry ? std::exchange(used_star, true) : !used_sources.insert(*source).second)
      throw std::logic_error("product history is not injective");
  }
  return step;
}

ProductAutomaton build_product(const Automaton& a1, const Automaton& a2) {
  InitialProduct init = initial_product_state(a1, a2);

  std::map<ProductStateKey, StateId> ids;
  std::vector<ProductStateInfo> infos;
  std::vector<std::vector<std::string>> reg_names;
  RawAutomaton raw;
  raw.name = a1.name + "_x_" + a2.name;
  if (!is_valid_token(raw.name)) raw.name = "product";

  std::set<std::string> state_names_taken;
  auto add_state = [&](const ProductStateKey& key) {
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    StateId id = infos.size();
    ids.emplace(key, id);
    std::vector<NamedClass> classes = named_classes(a1, a2, key);
    infos.push_back({key, strip_names(classes)});
    reg_names.push_back(class_tokens(classes));

    std::string base = a1.states[key.left].name + "_" + a2.states[key.right].name;
    std::string name = base;
    for (int k = 2; !state_names_taken.insert(name).second; ++k)
      name = base + "#" + std::to_string(k);
    raw.states.push_back({name, reg_names.back()});
    return id;
  };

  StateId start = add_state(init.state);
  std::deque<StateId> queue{start};
  std::set<StateId> expanded;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    if (!expanded.insert(s).second) continue;
    const ProductStateKey key = infos[s].key;  // copy: infos grows below
    const std::size_t class_count = infos[s].classes.size();

    std::vector<std::optional<std::size_t>> labels;
    for (std::size_t ci = 0; ci < class_count; ++ci) labels.emplace_back(ci);
    labels.emplace_back(std::nullopt);

    for (const auto& label : labels) {
      ProductStep step = product_transition(a1, a2, key, label);
      StateId t = add_state(step.target);
      if (!expanded.count(t)) queue.push_back(t);

      RawTransition rt;
      rt.source = raw.states[s].name;
      rt.label = label ? reg_names[s][*label] : "*";
      rt.target = raw.states[t].name;
      for (std::size_t j = 0; j < step.history.size(); ++j)
        rt.history.emplace_back(reg_names[t][j],
                                step.history[j] ? reg_names[s][*step.history[j]]
                                                : std::string("*"));
      raw.transitions.push_back(std::move(rt));
    }
  }

  raw.initial_state = raw.states[start].name;
  for (std::size_t i = 0; i < init.assignment.size(); ++i)
    raw.initial_assignment.emplace_back(reg_names[start][i], init.assignment[i]);

  ProductAutomaton out;
  out.automaton = validate_or_throw(raw);
  out.info = std::move(infos);
  return out;
}

Configuration project(const ProductAutomaton& p, const Configuration& c, int side) {
  if (side != 1 && side != 2) throw std::invalid_argument("side must be 1 or 2");
  const ProductStateInfo& info = p.info[c.state];
  Configuration out;
  out.state = side == 1 ? info.key.left : info.key.right;
  std::size_t reg_count = 0;
  for (const QuotientClass& cls : info.classes)
    if (side == 1 ? cls.left.has_value() : cls.right.has_value()) ++reg_count;
  out.assignment.resize(reg_count);
  for (std::size_t i = 0; i < info.classes.size(); ++i) {
    const auto& member = side == 1 ? info.classes[i].left : info.classes[i].right;
    if (member) out.assignment[*member] = c.assignment[i];
  }
  return out;
}

StateSet project_states(const ProductAutomaton& p, const StateSet& states, int side) {
  StateSet out;
  for (StateId s : states)
    out.insert(side == 1 ? p.info[s].key.left : p.info[s].key.right);
  return out;
}

}  // namespace nomega
