#ifndef INFODIST_LENGTH_HPP
#define INFODIST_LENGTH_HPP

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "infodist/monoid.hpp"
#include "infodist/rational.hpp"

namespace infodist {

/// Whether a length function is required (and known) to be nondecreasing
/// under joins. Nonmonotone mode keeps subadditivity and positivity but
/// drops that requirement, and switches the distance candidates to the
/// absolute-difference forms that stay positive without it.
enum class LengthMode { monotone, nonmonotone };

/// Per-element information content: nonnegative, zero on the neutral
/// element, subadditive over joins. Values are index-parallel to the
/// monoid's elements.
template <class V>
struct LengthFn {
  LengthMode mode = LengthMode::monotone;
  std::vector<V> values;

  const V& at(Elem e) const { return values.at(e); }
};

struct LengthViolation {
  enum class Kind { WrongArity, Negative, NeutralNonzero, NotSubadditive, NotMonotone };
  Kind kind;
  std::vector<std::string> witness;
  std::string message;
};

template <class V>
Validated<LengthFn<V>, LengthViolation> validate_length(const Monoid& m,
                                                        std::vector<V> values,
                                                        LengthMode mode) {
  using Kind = LengthViolation::Kind;
  Validated<LengthFn<V>, LengthViolation> out;
  const std::size_t n = m.size();
  if (values.size() != n) {
    out.violations.push_back({Kind::WrongArity, {}, "need one value per element"});
    return out;
  }
  const V zero = NumTraits<V>::zero();
  const V tol = NumTraits<V>::check_tol();  // 0 for exact scalars
  for (Elem x = 0; x < n; ++x)
    if (values[x] + tol < zero) {
      out.violations.push_back({Kind::Negative, {m.label(x)}, "negative value"});
      break;
    }
  if (tol < vabs(values[m.neutral()]))
    out.violations.push_back(
        {Kind::NeutralNonzero, {m.label(m.neutral())}, "neutral element must have length 0"});
  bool subadd_ok = true;
  for (Elem x = 0; x < n && subadd_ok; ++x)
    for (Elem y = x; y < n && subadd_ok; ++y)
      if (values[x] + values[y] + tol < values[m.join(x, y)]) {
        subadd_ok = false;
        out.violations.push_back({Kind::NotSubadditive,
                                  {m.label(x), m.label(y)},
                                  "value(join) exceeds value(x)+value(y)"});
      }
  if (mode == LengthMode::monotone) {
    bool mono_ok = true;
    for (Elem x = 0; x < n && mono_ok; ++x)
      for (Elem y = 0; y < n && mono_ok; ++y)
        if (values[m.join(x, y)] + tol < values[x]) {
          mono_ok = false;
          out.violations.push_back(
              {Kind::NotMonotone, {m.label(x), m.label(y)}, "value decreases under join"});
        }
  }
  if (out.violations.empty()) out.value = LengthFn<V>{mode, std::move(values)};
  return out;
}

/// d(x,y): length of the united element minus the shorter input. In
/// nonmonotone mode the positive variant max(|l(xy)-l(x)|, |l(xy)-l(y)|) is
/// used; both agree whenever the length is monotone.
template <class V>
V d_of(const Monoid& m, const LengthFn<V>& l, Elem x, Elem y) {
  const V& lj = l.values[m.join(x, y)];
  if (l.mode == LengthMode::monotone) return lj - vmin(l.values[x], l.values[y]);
  return vmax(vabs(lj - l.values[x]), vabs(lj - l.values[y]));
}

/// sigma(x,y) = 2*l(xy) - l(x) - l(y), the l1-flavoured companion of d.
template <class V>
V sigma_of(const Monoid& m, const LengthFn<V>& l, Elem x, Elem y) {
  const V& lj = l.values[m.join(x, y)];
  if (l.mode == LengthMode::monotone) return lj + lj - l.values[x] - l.values[y];
  return vabs(lj - l.values[x]) + vabs(lj - l.values[y]);
}

/// General p-norm variant (|l(xy)-l(x)|^p + |l(xy)-l(y)|^p)^(1/p), p >= 1.
/// Irrational for p != 1, hence always a double.
template <class V>
double sigma_p_of(const Monoid& m, const LengthFn<V>& l, Elem x, Elem y, double p) {
  if (p < 1.0) throw std::invalid_argument("sigma_p_of: p must be >= 1");
  const double lj = NumTraits<V>::to_double(l.values[m.join(x, y)]);
  const double a = std::fabs(lj - NumTraits<V>::to_double(l.values[x]));
  const double b = std::fabs(lj - NumTraits<V>::to_double(l.values[y]));
  if (p == 1.0) return a + b;
  return std::pow(std::pow(a, p) + std::pow(b, p), 1.0 / p);
}

/// delta_y(x) = l(x) - l(x joined y); never positive for monotone lengths.
template <class V>
V delta_fn(const Monoid& m, const LengthFn<V>& l, Elem y, Elem x) {
  return l.values[x] - l.values[m.join(x, y)];
}

enum class DistKind { d, sigma, sigma_p, closed_delta, closed_nabla, closed_both, custom };

inline const char* to_string(DistKind k) {
  switch (k) {
    case DistKind::d: return "d";
    case DistKind::sigma: return "sigma";
    case DistKind::sigma_p: return "sigma_p";
    case DistKind::closed_delta: return "closed-delta";
    case DistKind::closed_nabla: return "closed-nabla";
    case DistKind::closed_both: return "closed-both";
    case DistKind::custom: return "custom";
  }
  return "?";
}

/// Symmetric pairwise table with zero diagonal; the raw material the closure
/// and fixpoint machinery works on.
template <class V>
struct DistanceTable {
  DistKind kind = DistKind::custom;
  std::size_t n = 0;
  std::vector<V> cells;  // row-major n*n

  static DistanceTable zeros(std::size_t n, DistKind kind = DistKind::custom) {
    DistanceTable t;
    t.kind = kind;
    t.n = n;
    t.cells.assign(n * n, NumTraits<V>::zero());
    return t;
  }

  const V& at(Elem i, Elem j) const { return cells[i * n + j]; }
  void set(Elem i, Elem j, const V& v) {
    cells[i * n + j] = v;
    cells[j * n + i] = v;
  }

  friend bool operator==(const DistanceTable& a, const DistanceTable& b) {
    return a.n == b.n && a.cells == b.cells;
  }
};

struct TableViolation {
  enum class Kind { WrongShape, Negative, NotSymmetric, DiagonalNonzero };
  Kind kind;
  Elem i = 0, j = 0;
};

/// Verifies positive / symmetric / nilpotent; the precondition of every
/// closure operation.
template <class V>
std::vector<TableViolation> table_violations(const DistanceTable<V>& t) {
  std::vector<TableViolation> out;
  using Kind = TableViolation::Kind;
  if (t.cells.size() != t.n * t.n) {
    out.push_back({Kind::WrongShape, 0, 0});
    return out;
  }
  const V zero = NumTraits<V>::zero();
  for (Elem i = 0; i < t.n && out.empty(); ++i)
    if (!(t.at(i, i) == zero)) out.push_back({Kind::DiagonalNonzero, i, i});
  for (Elem i = 0; i < t.n && out.empty(); ++i)
    for (Elem j = 0; j < t.n && out.empty(); ++j) {
      if (t.at(i, j) < zero) out.push_back({Kind::Negative, i, j});
      else if (!(t.at(i, j) == t.at(j, i))) out.push_back({Kind::NotSymmetric, i, j});
    }
  return out;
}

/// Materializes the full d or sigma table of a length function.
template <class V>
DistanceTable<V> distance_table(const Monoid& m, const LengthFn<V>& l, DistKind kind) {
  if (kind != DistKind::d && kind != DistKind::sigma)
    throw std::invalid_argument("distance_table: kind must be d or sigma");
  DistanceTable<V> t = DistanceTable<V>::zeros(m.size(), kind);
  for (Elem i = 0; i < m.size(); ++i)
    for (Elem j = i + 1; j < m.size(); ++j)
      t.set(i, j, kind == DistKind::d ? d_of(m, l, i, j) : sigma_of(m, l, i, j));
  return t;
}

/// Double-valued sigma_p table for p != 1 (and p == 1, where it reproduces
/// sigma in floating point).
template <class V>
DistanceTable<double> sigma_p_table(const Monoid& m, const LengthFn<V>& l, double p) {
  DistanceTable<double> t = DistanceTable<double>::zeros(m.size(), DistKind::sigma_p);
  for (Elem i = 0; i < m.size(); ++i)
    for (Elem j = i + 1; j < m.size(); ++j) t.set(i, j, sigma_p_of(m, l, i, j, p));
  return t;
}

/// Monotone envelope: x maps to the minimum length over everything above x.
/// Fixes any nonnegative value map into a monotone one and leaves monotone
/// inputs untouched.
template <class V>
std::vector<V> monotone_envelope_values(const Monoid& m, const std::vector<V>& values) {
  std::vector<V> out(values.size());
  for (Elem x = 0; x < m.size(); ++x) {
    V best = values[x];  // z = neutral
    for (Elem z = 0; z < m.size(); ++z) {
      const V& cand = values[m.join(x, z)];
      if (cand < best) best = cand;
    }
    out[x] = best;
  }
  return out;
}

template <class V>
LengthFn<V> monotone_envelope(const Monoid& m, const LengthFn<V>& l) {
  return LengthFn<V>{LengthMode::monotone, monotone_envelope_values(m, l.values)};
}

/// Seeded random monotone length function with small integer values: draw
/// nonnegative integers, force subadditivity by repeated tightening, then
/// take the monotone envelope. Deterministic for a fixed seed.
inline LengthFn<Rat> random_length_fn(const Monoid& m, std::uint64_t seed,
                                      std::int64_t max_value = 8) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(0, max_value);
  std::vector<Rat> v(m.size());
  for (Elem x = 0; x < m.size(); ++x) v[x] = Rat(dist(rng));
  v[m.neutral()] = Rat(0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Elem x = 0; x < m.size(); ++x)
      for (Elem y = 0; y < m.size(); ++y) {
        const Elem j = m.join(x, y);
        const Rat s = v[x] + v[y];
        if (s < v[j]) {
          v[j] = s;
          changed = true;
        }
      }
  }
  auto res = validate_length(m, monotone_envelope_values(m, v), LengthMode::monotone);
  if (!res.ok()) throw std::logic_error("random_length_fn produced an invalid length");
  return *res;
}

}  // namespace infodist

#endif  // INFODIST_LENGTH_HPP
