#ifndef INFODIST_QUOTIENT_HPP
#define INFODIST_QUOTIENT_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "infodist/checks.hpp"
#include "infodist/length.hpp"
#include "infodist/monoid.hpp"

namespace infodist {

/// Metric quotient of a monoid by a pseudometric satisfying the
/// join-compatibility inequality: elements at distance zero are merged, the
/// join descends to classes, and the descended table is a faithful metric.
template <class V>
struct QuotientResult {
  std::vector<Elem> class_of;        // element -> class index
  std::vector<Elem> representative;  // class -> lexicographically least member
  Monoid quotient;
  DistanceTable<V> metric;           // faithful, on classes
  LengthFn<V> induced_length;        // distance of a class to the neutral class
};

struct QuotientViolation {
  enum class Kind { NotPseudometric, NoNablaInequality, BadTable };
  Kind kind;
  std::vector<Elem> witness;
  std::string message;
};

/// Both preconditions are verified before anything is merged: the triangle
/// inequality makes distance-zero an equivalence, the join-compatibility
/// inequality makes the join well-defined on classes.
template <class V>
Validated<QuotientResult<V>, QuotientViolation> quotient(const Monoid& m,
                                                         const DistanceTable<V>& t) {
  using Kind = QuotientViolation::Kind;
  Validated<QuotientResult<V>, QuotientViolation> out;
  if (t.n != m.size() || !table_violations(t).empty()) {
    out.violations.push_back(
        {Kind::BadTable, {}, "input must be a positive, symmetric, nilpotent table"});
    return out;
  }
  const V tol = NumTraits<V>::check_tol();
  if (IneqFlag f = check_delta_table(t, tol); f.fails()) {
    out.violations.push_back(
        {Kind::NotPseudometric, f.witness, "triangle inequality fails"});
    return out;
  }
  if (IneqFlag f = check_nabla_table(m, t, tol); f.fails()) {
    out.violations.push_back(
        {Kind::NoNablaInequality, f.witness, "join-compatibility inequality fails"});
    return out;
  }

  const std::size_t n = m.size();
  const V zero = NumTraits<V>::zero();
  auto close = [&](const V& v) { return !(tol < vabs(v)); };

  QuotientResult<V> q;
  q.class_of.assign(n, 0);
  std::vector<bool> assigned(n, false);
  // Group by scanning in label order so that each class's first member is
  // its lexicographically least label, which becomes the representative.
  std::vector<Elem> order(n);
  for (Elem i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](Elem a, Elem b) { return m.label(a) < m.label(b); });
  for (Elem seed : order) {
    if (assigned[seed]) continue;
    const Elem cls = static_cast<Elem>(q.representative.size());
    q.representative.push_back(seed);
    for (Elem x : order)
      if (!assigned[x] && close(t.at(seed, x))) {
        assigned[x] = true;
        q.class_of[x] = cls;
      }
  }

  const std::size_t k = q.representative.size();
  std::vector<std::string> labels(k);
  for (Elem c = 0; c < k; ++c) labels[c] = m.label(q.representative[c]);
  std::vector<Elem> table(k * k);
  for (Elem a = 0; a < k; ++a)
    for (Elem b = 0; b < k; ++b)
      table[a * k + b] = q.class_of[m.join(q.representative[a], q.representative[b])];
  q.quotient = Monoid::from_validated_parts(std::move(labels),
                                            q.class_of[m.neutral()], std::move(table));

  q.metric = DistanceTable<V>::zeros(k, t.kind);
  for (Elem a = 0; a < k; ++a)
    for (Elem b = a + 1; b < k; ++b)
      q.metric.set(a, b, t.at(q.representative[a], q.representative[b]));

  std::vector<V> lv(k, zero);
  const Elem neutral_cls = q.quotient.neutral();
  for (Elem c = 0; c < k; ++c) lv[c] = q.metric.at(c, neutral_cls);
  // Monotone whenever the input was a length-derived table; measured rather
  // than assumed, since an arbitrary table only guarantees subadditivity.
  bool mono = true;
  for (Elem a = 0; a < k && mono; ++a)
    for (Elem b = 0; b < k && mono; ++b)
      if (lv[q.quotient.join(a, b)] < lv[a]) mono = false;
  q.induced_length =
      LengthFn<V>{mono ? LengthMode::monotone : LengthMode::nonmonotone, std::move(lv)};

  out.value = std::move(q);
  return out;
}

}  // namespace infodist

#endif  // INFODIST_QUOTIENT_HPP
