#ifndef INFODIST_CLOSURES_HPP
#define INFODIST_CLOSURES_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "infodist/length.hpp"
#include "infodist/monoid.hpp"
#include "infodist/rational.hpp"

namespace infodist {

namespace detail {

template <class V>
void require_metric_candidate(const DistanceTable<V>& t, const char* op) {
  if (!table_violations(t).empty())
    throw std::invalid_argument(std::string(op) +
                                ": input table must be positive, symmetric, nilpotent");
}

}  // namespace detail

/// Largest function below t satisfying the triangle inequality: the infimum
/// of summed t-values over chains of intermediate points. With nonnegative
/// entries, chains with repeated points never help, so an all-pairs
/// shortest-path relaxation computes it exactly.
template <class V>
DistanceTable<V> delta_closure(const DistanceTable<V>& t) {
  detail::require_metric_candidate(t, "delta_closure");
  DistanceTable<V> r = t;
  r.kind = DistKind::closed_delta;
  const std::size_t n = r.n;
  for (Elem k = 0; k < n; ++k)
    for (Elem i = 0; i < n; ++i) {
      const V& ik = r.at(i, k);
      for (Elem j = 0; j < n; ++j) {
        const V via = ik + r.at(k, j);
        if (via < r.at(i, j)) r.cells[i * n + j] = via;
      }
    }
  return r;
}

/// Largest function below t satisfying the join-compatibility inequality:
/// the infimum of sums t(x_i, y_i) over simultaneous join decompositions of
/// x and y. Any multi-part decomposition factors into binary joins and
/// duplicate parts only add nonnegative cost, so iterating the binary
/// relaxation
///     cand(x1 v x2, y1 v y2) <- min(cand, v(x1,y1) + v(x2,y2))
/// until stable reaches the infimum; values are minima over a finite set of
/// subset sums, so the sweep terminates.
template <class V>
DistanceTable<V> nabla_closure(const Monoid& m, const DistanceTable<V>& t) {
  detail::require_metric_candidate(t, "nabla_closure");
  if (t.n != m.size()) throw std::invalid_argument("nabla_closure: table/monoid size mismatch");
  DistanceTable<V> r = t;
  r.kind = DistKind::closed_nabla;
  const std::size_t n = r.n;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Elem x1 = 0; x1 < n; ++x1)
      for (Elem y1 = 0; y1 < n; ++y1) {
        const V& base = r.at(x1, y1);
        for (Elem x2 = 0; x2 < n; ++x2) {
          const Elem jx = m.join(x1, x2);
          for (Elem y2 = 0; y2 < n; ++y2) {
            const V cand = base + r.at(x2, y2);
            const Elem jy = m.join(y1, y2);
            if (cand < r.at(jx, jy)) {
              r.set(jx, jy, cand);
              changed = true;
            }
          }
        }
      }
  }
  return r;
}

/// Projection onto pseudometrics satisfying the join-compatibility
/// inequality: join closure first, then triangle closure (the triangle
/// closure preserves join compatibility, so the result satisfies both).
/// Idempotent: applying it to its own output changes nothing.
template <class V>
DistanceTable<V> delta_nabla_closure(const Monoid& m, const DistanceTable<V>& t) {
  DistanceTable<V> r = delta_closure(nabla_closure(m, t));
  r.kind = DistKind::closed_both;
  return r;
}

/// Diagnostic variant with the composition order swapped (triangle first).
/// The result need not satisfy the triangle inequality any more and is not
/// the canonical projection.
template <class V>
DistanceTable<V> delta_first_closure(const Monoid& m, const DistanceTable<V>& t) {
  DistanceTable<V> r = nabla_closure(m, delta_closure(t));
  r.kind = DistKind::custom;
  return r;
}

/// Length extracted from a table: the distance to the neutral element.
template <class V>
std::vector<V> extracted_length(const Monoid& m, const DistanceTable<V>& t) {
  std::vector<V> l(t.n);
  for (Elem x = 0; x < t.n; ++x) l[x] = t.at(x, m.neutral());
  return l;
}

// ---------------------------------------------------------------------------
// Brute-force oracles. Same definitions computed by explicit enumeration,
// independent of the relaxation algorithms above. Exponential; intended for
// instances of at most ~6 elements.
// ---------------------------------------------------------------------------

inline constexpr std::size_t kBruteForceMaxElements = 8;

/// Minimum over chains x, a_1, ..., a_k, y (distinct intermediate points,
/// k <= max_chain) of the summed table values.
template <class V>
DistanceTable<V> brute_force_delta_closure(const DistanceTable<V>& t, std::size_t max_chain) {
  detail::require_metric_candidate(t, "brute_force_delta_closure");
  const std::size_t n = t.n;
  if (n > kBruteForceMaxElements)
    throw std::invalid_argument("brute_force_delta_closure: instance too large");
  if (max_chain > n) max_chain = n;
  DistanceTable<V> r = t;
  r.kind = DistKind::closed_delta;

  std::vector<Elem> chain;
  std::vector<bool> used(n, false);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      V best = t.at(x, y);
      auto extend = [&](auto&& self, Elem last, const V& cost) -> void {
        {
          const V total = cost + t.at(last, y);
          if (total < best) best = total;
        }
        if (chain.size() >= max_chain) return;
        for (Elem a = 0; a < n; ++a) {
          if (used[a]) continue;
          used[a] = true;
          chain.push_back(a);
          self(self, a, cost + t.at(last, a));
          chain.pop_back();
          used[a] = false;
        }
      };
      extend(extend, x, NumTraits<V>::zero());
      r.set(x, y, best);
    }
  return r;
}

/// Minimum over sets of distinct pairs {(x_i, y_i)} whose coordinatewise
/// joins give x and y, of the summed table values. Parts are necessarily
/// below x and y respectively, which prunes the search.
template <class V>
DistanceTable<V> brute_force_nabla_closure(const Monoid& m, const DistanceTable<V>& t,
                                           std::size_t max_parts) {
  detail::require_metric_candidate(t, "brute_force_nabla_closure");
  const std::size_t n = t.n;
  if (n != m.size())
    throw std::invalid_argument("brute_force_nabla_closure: table/monoid size mismatch");
  if (n > kBruteForceMaxElements)
    throw std::invalid_argument("brute_force_nabla_closure: instance too large");
  DistanceTable<V> r = t;
  r.kind = DistKind::closed_nabla;

  for (Elem x = 0; x < n; ++x)
    for (Elem y = x; y < n; ++y) {
      std::vector<std::pair<Elem, Elem>> cand;
      for (Elem a = 0; a < n; ++a) {
        if (!m.leq(a, x)) continue;
        for (Elem b = 0; b < n; ++b)
          if (m.leq(b, y)) cand.emplace_back(a, b);
      }
      V best = t.at(x, y);
      auto search = [&](auto&& self, std::size_t i, Elem ja, Elem jb, std::size_t parts,
                        const V& cost) -> void {
        if (!(cost < best)) return;
        if (ja == x && jb == y && parts > 0) best = cost;
        if (i == cand.size() || parts == max_parts) return;
        self(self, i + 1, ja, jb, parts, cost);
        const auto [a, b] = cand[i];
        // a pair below the accumulated joins adds cost without progress, so
        // minimal decompositions never contain one
        if (m.leq(a, ja) && m.leq(b, jb)) return;
        self(self, i + 1, m.join(ja, a), m.join(jb, b), parts + 1, cost + t.at(a, b));
      };
      search(search, 0, m.neutral(), m.neutral(), 0, NumTraits<V>::zero());
      r.set(x, y, best);
    }
  return r;
}

/// Both brute-force closures in one call.
template <class V>
std::pair<DistanceTable<V>, DistanceTable<V>> brute_force_closures(const Monoid& m,
                                                                   const DistanceTable<V>& t,
                                                                   std::size_t max_chain,
                                                                   std::size_t max_parts) {
  return {brute_force_delta_closure(t, max_chain), brute_force_nabla_closure(m, t, max_parts)};
}

}  // namespace infodist

#endif  // INFODIST_CLOSURES_HPP
