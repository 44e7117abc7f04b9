#ifndef INFODIST_SET_MODEL_HPP
#define INFODIST_SET_MODEL_HPP

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "infodist/boolexpr.hpp"
#include "infodist/length.hpp"
#include "infodist/monoid.hpp"

namespace infodist {

/// A finite measured space with a union-closed family of subsets: the one
/// instance family where the distance candidates are metrics in closed form,
/// used as the exact oracle for everything else. Sets are bitmasks over the
/// weighted points.
template <class V>
struct SetInstance {
  std::vector<std::string> point_names;
  std::vector<V> weights;
  std::vector<std::uint32_t> family;  // union-closed, contains 0, parallel to monoid elements
  Monoid monoid;
  LengthFn<V> length;  // the measure

  V measure(std::uint32_t mask) const {
    V s = NumTraits<V>::zero();
    for (std::size_t p = 0; p < weights.size(); ++p)
      if (mask & (1u << p)) s += weights[p];
    return s;
  }

  Elem elem_of(std::uint32_t mask) const {
    const auto it = std::lower_bound(family.begin(), family.end(), mask);
    if (it == family.end() || *it != mask)
      throw std::out_of_range("set not in the instance family");
    return static_cast<Elem>(it - family.begin());
  }
};

/// Builds the instance from generating sets: the family is closed under
/// union and the empty set is added, so the induced structure is always a
/// valid monoid with join = union and the measure as a monotone length.
template <class V>
SetInstance<V> build_set_instance(const std::vector<std::vector<std::string>>& sets,
                                  const std::vector<std::pair<std::string, V>>& weighted_points) {
  SetInstance<V> inst;
  for (const auto& [name, w] : weighted_points) {
    if (w < NumTraits<V>::zero())
      throw std::invalid_argument("build_set_instance: negative weight at point '" + name + "'");
    inst.point_names.push_back(name);
    inst.weights.push_back(w);
  }
  if (inst.point_names.size() > 20)
    throw std::invalid_argument("build_set_instance: more than 20 points");
  auto point_index = [&](const std::string& name) -> std::size_t {
    for (std::size_t p = 0; p < inst.point_names.size(); ++p)
      if (inst.point_names[p] == name) return p;
    throw std::invalid_argument("build_set_instance: unknown point '" + name + "'");
  };

  std::set<std::uint32_t> closed = {0u};
  std::vector<std::uint32_t> gens;
  for (const auto& s : sets) {
    std::uint32_t mask = 0;
    for (const auto& name : s) mask |= 1u << point_index(name);
    gens.push_back(mask);
  }
  for (std::uint32_t g : gens) {
    std::vector<std::uint32_t> frontier = {g};
    while (!frontier.empty()) {
      const std::uint32_t mk = frontier.back();
      frontier.pop_back();
      if (!closed.insert(mk).second) continue;
      for (std::uint32_t c : closed)
        if (!closed.count(mk | c)) frontier.push_back(mk | c);
    }
  }
  inst.family.assign(closed.begin(), closed.end());

  inst.monoid = detail::monoid_from_masks(inst.family, inst.point_names);
  std::vector<V> lv(inst.family.size());
  for (std::size_t i = 0; i < inst.family.size(); ++i) lv[i] = inst.measure(inst.family[i]);
  inst.length = LengthFn<V>{LengthMode::monotone, std::move(lv)};
  return inst;
}

/// Closed-form distances from set differences:
/// d = max of the two one-sided difference measures, sigma = their sum.
template <class V>
V oracle_d(const SetInstance<V>& inst, Elem a, Elem b) {
  const std::uint32_t A = inst.family.at(a), B = inst.family.at(b);
  return vmax(inst.measure(A & ~B), inst.measure(B & ~A));
}

template <class V>
V oracle_sigma(const SetInstance<V>& inst, Elem a, Elem b) {
  const std::uint32_t A = inst.family.at(a), B = inst.family.at(b);
  return inst.measure(A & ~B) + inst.measure(B & ~A);
}

/// Realizes a complement-free expression (differences allowed) as an actual
/// subset of the universe and measures it. Bare complements and the constant
/// 1 have no distinguished realization in this model and are rejected.
template <class V>
V oracle_zeta(const SetInstance<V>& inst, const BoolExpr& e) {
  auto realize = [&](auto&& self, const BoolExpr& node) -> std::uint32_t {
    using K = BoolExpr::Kind;
    switch (node.kind) {
      case K::atom: return inst.family.at(node.atom_elem);
      case K::zero: return 0u;
      case K::set_union: {
        std::uint32_t m = 0;
        for (const auto& c : node.children) m |= self(self, c);
        return m;
      }
      case K::intersection: {
        if (node.children.empty())
          throw std::invalid_argument("oracle_zeta: empty intersection means the constant 1");
        std::uint32_t m = ~0u;
        for (const auto& c : node.children) m &= self(self, c);
        return m;
      }
      case K::difference:
        return self(self, node.children[0]) & ~self(self, node.children[1]);
      case K::one:
      case K::complement:
        throw std::invalid_argument(
            "oracle_zeta: complements have no set realization in this model");
    }
    return 0u;
  };
  return inst.measure(realize(realize, e));
}

template <class V>
V oracle_zeta(const SetInstance<V>& inst, std::string_view text) {
  return oracle_zeta(inst, parse_bool_expr(text, inst.monoid));
}

/// Whether the oracle supports this expression (no complement / constant 1).
inline bool oracle_supports(const BoolExpr& e) {
  if (e.kind == BoolExpr::Kind::one || e.kind == BoolExpr::Kind::complement) return false;
  for (const auto& c : e.children)
    if (!oracle_supports(c)) return false;
  return true;
}

}  // namespace infodist

#endif  // INFODIST_SET_MODEL_HPP
