#ifndef INFODIST_HOM_HPP
#define INFODIST_HOM_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "infodist/length.hpp"
#include "infodist/monoid.hpp"
#include "infodist/rational.hpp"

namespace infodist {

/// Join-preserving map between monoids. Not required to send neutral to
/// neutral; constant maps and join-with-a-fixed-element maps are legitimate
/// non-unital homomorphisms.
struct Hom {
  std::vector<Elem> map;  // index-parallel to the source elements
  bool unital = false;

  Elem operator()(Elem x) const { return map[x]; }

  friend bool operator==(const Hom& a, const Hom& b) { return a.map == b.map; }
  friend bool operator<(const Hom& a, const Hom& b) { return a.map < b.map; }
};

struct HomViolation {
  enum class Kind { WrongArity, BadTarget, NotJoinPreserving };
  Kind kind;
  std::vector<std::string> witness;
  std::string message;
};

template <class T>
using HomValidated = Validated<T, HomViolation>;

inline HomValidated<Hom> validate_hom(const Monoid& src, const Monoid& dst,
                                      std::vector<Elem> map) {
  using Kind = HomViolation::Kind;
  HomValidated<Hom> out;
  if (map.size() != src.size()) {
    out.violations.push_back({Kind::WrongArity, {}, "need one image per source element"});
    return out;
  }
  for (Elem x = 0; x < src.size(); ++x)
    if (map[x] >= dst.size()) {
      out.violations.push_back({Kind::BadTarget, {src.label(x)}, "image out of range"});
      return out;
    }
  for (Elem x = 0; x < src.size(); ++x)
    for (Elem y = x; y < src.size(); ++y)
      if (map[src.join(x, y)] != dst.join(map[x], map[y])) {
        out.violations.push_back({Kind::NotJoinPreserving,
                                  {src.label(x), src.label(y)},
                                  "T(x v y) != Tx v Ty"});
        return out;
      }
  Hom h;
  h.unital = map[src.neutral()] == dst.neutral();
  h.map = std::move(map);
  out.value = std::move(h);
  return out;
}

/// Pointwise join of two parallel homomorphisms.
inline Hom hom_join(const Monoid& dst, const Hom& u, const Hom& v) {
  if (u.map.size() != v.map.size()) throw std::invalid_argument("hom_join: source mismatch");
  Hom r;
  r.map.resize(u.map.size());
  for (std::size_t x = 0; x < u.map.size(); ++x) r.map[x] = dst.join(u.map[x], v.map[x]);
  r.unital = u.unital && v.unital;
  return r;
}

/// compose(u, v) applies v first: x -> u(v(x)).
inline Hom compose(const Hom& u, const Hom& v) {
  Hom r;
  r.map.resize(v.map.size());
  for (std::size_t x = 0; x < v.map.size(); ++x) {
    if (v.map[x] >= u.map.size()) throw std::invalid_argument("compose: not composable");
    r.map[x] = u.map[v.map[x]];
  }
  r.unital = false;  // recomputed by callers that know the monoids
  return r;
}

inline Hom identity_hom(const Monoid& m) {
  Hom h;
  h.map.resize(m.size());
  for (Elem x = 0; x < m.size(); ++x) h.map[x] = x;
  h.unital = true;
  return h;
}

inline Hom constant_hom(const Monoid& src, const Monoid& dst, Elem value) {
  Hom h;
  h.map.assign(src.size(), value);
  h.unital = value == dst.neutral();
  return h;
}

/// All join-preserving maps from src to dst, in lexicographic map order.
/// Exhaustive over |dst|^|src| candidates; refuses blow-ups beyond `limit`.
inline std::vector<Hom> enumerate_homs(const Monoid& src, const Monoid& dst,
                                       std::uint64_t limit = 1000000) {
  double candidates = 1.0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    candidates *= static_cast<double>(dst.size());
    if (candidates > static_cast<double>(limit))
      throw std::invalid_argument("enumerate_homs: candidate map count exceeds limit");
  }
  std::vector<Hom> out;
  std::vector<Elem> map(src.size(), 0);
  while (true) {
    bool ok = true;
    for (Elem x = 0; x < src.size() && ok; ++x)
      for (Elem y = x; y < src.size() && ok; ++y)
        if (map[src.join(x, y)] != dst.join(map[x], map[y])) ok = false;
    if (ok) {
      Hom h;
      h.map = map;
      h.unital = map[src.neutral()] == dst.neutral();
      out.push_back(std::move(h));
    }
    // odometer increment; full wrap means every map was visited
    std::size_t i = map.size();
    bool wrapped = true;
    while (i > 0) {
      --i;
      if (++map[i] < dst.size()) {
        wrapped = false;
        break;
      }
      map[i] = 0;
    }
    if (wrapped) return out;
  }
}

/// Least Lipschitz-style constant: the smallest M with
/// d_dst(Ux, Uy) <= M * d_src(x, y) for all pairs, computed as the maximum
/// ratio with 0/0 counting as 0 and positive/0 as infinity. An infinite
/// value means "not uniformly continuous".
template <class V>
Ext<V> ell_prime(const Monoid& src, const Monoid& dst, const Hom& u,
                 const DistanceTable<V>& d_src, const DistanceTable<V>& d_dst) {
  if (d_src.n != src.size() || d_dst.n != dst.size())
    throw std::invalid_argument("ell_prime: table size mismatch");
  const V zero = NumTraits<V>::zero();
  Ext<V> best(zero);
  for (Elem x = 0; x < src.size(); ++x)
    for (Elem y = x + 1; y < src.size(); ++y) {
      const V& num = d_dst.at(u(x), u(y));
      const V& den = d_src.at(x, y);
      if (den == zero) {
        if (!(num == zero)) return Ext<V>::inf();
      } else {
        const Ext<V> ratio(num / den);
        if (best < ratio) best = ratio;
      }
    }
  return best;
}

/// Length on a finite join-closed hom set: the monotone envelope of a raw
/// value map under pointwise join, min over V of raw(U v V). The homs vector
/// must be closed under hom_join.
template <class V>
std::vector<V> hom_length(const Monoid& dst, const std::vector<Hom>& homs,
                          const std::vector<V>& raw) {
  if (homs.size() != raw.size()) throw std::invalid_argument("hom_length: arity mismatch");
  auto find_index = [&](const Hom& h) -> std::size_t {
    for (std::size_t i = 0; i < homs.size(); ++i)
      if (homs[i] == h) return i;
    throw std::invalid_argument("hom_length: hom set not closed under joins");
  };
  std::vector<V> out(raw.size());
  for (std::size_t u = 0; u < homs.size(); ++u) {
    V best = raw[u];  // v = u gives u itself by idempotence
    for (std::size_t v = 0; v < homs.size(); ++v) {
      const V& cand = raw[find_index(hom_join(dst, homs[u], homs[v]))];
      if (cand < best) best = cand;
    }
    out[u] = best;
  }
  return out;
}

}  // namespace infodist

#endif  // INFODIST_HOM_HPP
