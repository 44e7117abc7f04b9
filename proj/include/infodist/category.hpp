#ifndef INFODIST_CATEGORY_HPP
#define INFODIST_CATEGORY_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "infodist/checks.hpp"
#include "infodist/closures.hpp"
#include "infodist/fixpoint.hpp"
#include "infodist/hom.hpp"
#include "infodist/length.hpp"
#include "infodist/monoid.hpp"
#include "infodist/rational.hpp"

namespace infodist {

/// One morphism set of a category: its homs (lexicographically sorted), the
/// induced monoid under pointwise join (labels "h0", "h1", ...), a length
/// function and a metric candidate on it.
template <class V>
struct HomSet {
  std::vector<Hom> homs;
  Monoid hom_monoid;
  std::size_t neutral_hom = 0;  // constant-to-neutral map
  std::vector<V> ell;
  DistanceTable<V> dist;

  std::optional<std::size_t> find(const Hom& h) const {
    const auto it = std::lower_bound(homs.begin(), homs.end(), h);
    if (it == homs.end() || !(*it == h)) return std::nullopt;
    return static_cast<std::size_t>(it - homs.begin());
  }
};

/// A small category of monoids: every ordered object pair carries a hom set
/// closed under pointwise join and under composition across sets, with the
/// constant-neutral hom everywhere and identities on the diagonal.
template <class V>
class Category {
 public:
  Category(std::vector<Monoid> objects, std::vector<HomSet<V>> sets)
      : objects_(std::move(objects)), sets_(std::move(sets)) {
    if (sets_.size() != objects_.size() * objects_.size())
      throw std::invalid_argument("Category: need one hom set per ordered object pair");
  }

  std::size_t object_count() const { return objects_.size(); }
  const Monoid& object(std::size_t i) const { return objects_.at(i); }
  const HomSet<V>& homset(std::size_t src, std::size_t dst) const {
    return sets_.at(src * objects_.size() + dst);
  }
  HomSet<V>& homset(std::size_t src, std::size_t dst) {
    return sets_.at(src * objects_.size() + dst);
  }
  std::size_t set_index(std::size_t src, std::size_t dst) const {
    return src * objects_.size() + dst;
  }
  std::size_t set_count() const { return sets_.size(); }
  const HomSet<V>& set_at(std::size_t idx) const { return sets_.at(idx); }

  /// Index of (second after first) in homset(src, far); throws if the
  /// category is not composition-closed.
  std::size_t compose_index(std::size_t src, std::size_t mid, std::size_t far,
                            std::size_t first, std::size_t second) const {
    const Hom c = compose(homset(mid, far).homs[second], homset(src, mid).homs[first]);
    const auto idx = homset(src, far).find(c);
    if (!idx) throw std::logic_error("Category: missing composite morphism");
    return *idx;
  }

 private:
  std::vector<Monoid> objects_;
  std::vector<HomSet<V>> sets_;
};

namespace detail {

inline Monoid build_hom_monoid(const Monoid& dst, const std::vector<Hom>& homs) {
  const std::size_t h = homs.size();
  std::vector<std::string> labels(h);
  for (std::size_t i = 0; i < h; ++i) labels[i] = "h" + std::to_string(i);
  auto index_of = [&](const Hom& hm) -> Elem {
    const auto it = std::lower_bound(homs.begin(), homs.end(), hm);
    if (it == homs.end() || !(*it == hm))
      throw std::invalid_argument("hom set is not closed under pointwise joins");
    return static_cast<Elem>(it - homs.begin());
  };
  std::vector<Elem> table(h * h);
  Elem neutral = 0;
  bool have_neutral = false;
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) table[i * h + j] = index_of(hom_join(dst, homs[i], homs[j]));
  for (std::size_t i = 0; i < h; ++i) {
    bool is_neutral = true;
    for (std::size_t x = 0; x < homs[i].map.size() && is_neutral; ++x)
      if (homs[i].map[x] != dst.neutral()) is_neutral = false;
    if (is_neutral) {
      neutral = static_cast<Elem>(i);
      have_neutral = true;
      break;
    }
  }
  if (!have_neutral)
    throw std::invalid_argument("hom set is missing the constant-neutral hom");
  return Monoid::from_validated_parts(std::move(labels), neutral, std::move(table));
}

}  // namespace detail

/// Builds a fully enumerated category over small objects. Each object comes
/// with a metric candidate satisfying the join-compatibility inequality (the
/// zero table is allowed and admits every hom); a hom enters the category
/// only if its least Lipschitz constant against those tables is finite. Hom
/// set lengths are the monotone envelopes of those constants, distances the
/// induced d tables.
template <class V>
Category<V> make_auto_category(std::vector<Monoid> objects,
                               std::vector<DistanceTable<V>> object_tables,
                               std::uint64_t hom_limit = 1000000) {
  if (objects.size() != object_tables.size())
    throw std::invalid_argument("make_auto_category: one table per object");
  const V tol = NumTraits<V>::check_tol();
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (object_tables[i].n != objects[i].size() || !table_violations(object_tables[i]).empty())
      throw std::invalid_argument("make_auto_category: bad object table");
    if (!check_nabla_table(objects[i], object_tables[i], tol).holds())
      throw std::invalid_argument(
          "make_auto_category: object table violates the join-compatibility inequality");
  }

  const std::size_t k = objects.size();
  std::vector<HomSet<V>> sets;
  sets.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      HomSet<V> hs;
      std::vector<Hom> all = enumerate_homs(objects[i], objects[j], hom_limit);
      std::vector<V> lip;
      for (Hom& h : all) {
        const Ext<V> lp = ell_prime(objects[i], objects[j], h, object_tables[i], object_tables[j]);
        if (lp.infinite) continue;
        hs.homs.push_back(std::move(h));
        lip.push_back(lp.value);
      }
      hs.hom_monoid = detail::build_hom_monoid(objects[j], hs.homs);
      hs.neutral_hom = hs.hom_monoid.neutral();
      hs.ell = hom_length(objects[j], hs.homs, lip);
      const LengthFn<V> lf{LengthMode::monotone, hs.ell};
      hs.dist = distance_table(hs.hom_monoid, lf, DistKind::d);
      sets.push_back(std::move(hs));
    }
  return Category<V>(std::move(objects), std::move(sets));
}

struct CategoryViolation {
  std::string where;
  std::string message;
};

/// Structural validation: homs valid and sorted, join- and composition-
/// closure, identities and constant-neutral homs present, lengths monotone
/// length functions on the hom monoids, distance tables metric candidates.
template <class V>
std::vector<CategoryViolation> validate_category(const Category<V>& cat) {
  std::vector<CategoryViolation> out;
  const std::size_t k = cat.object_count();
  auto where = [&](std::size_t i, std::size_t j) {
    return "hom(" + std::to_string(i) + "->" + std::to_string(j) + ")";
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const HomSet<V>& hs = cat.homset(i, j);
      for (const Hom& h : hs.homs) {
        auto val = validate_hom(cat.object(i), cat.object(j), h.map);
        if (!val.ok()) {
          out.push_back({where(i, j), "morphism is not join-preserving"});
          break;
        }
      }
      if (!std::is_sorted(hs.homs.begin(), hs.homs.end()))
        out.push_back({where(i, j), "morphisms not in canonical order"});
      for (std::size_t a = 0; a < hs.homs.size(); ++a)
        for (std::size_t b = a; b < hs.homs.size(); ++b)
          if (!hs.find(hom_join(cat.object(j), hs.homs[a], hs.homs[b]))) {
            out.push_back({where(i, j), "not closed under pointwise join"});
            a = hs.homs.size();
            break;
          }
      if (!hs.find(constant_hom(cat.object(i), cat.object(j), cat.object(j).neutral())))
        out.push_back({where(i, j), "constant-neutral hom missing"});
      if (i == j && !hs.find(identity_hom(cat.object(i))))
        out.push_back({where(i, j), "identity missing"});
      if (hs.ell.size() != hs.homs.size() || hs.dist.n != hs.homs.size()) {
        out.push_back({where(i, j), "length/distance arity mismatch"});
        continue;
      }
      if (!validate_length(hs.hom_monoid, hs.ell, LengthMode::monotone).ok())
        out.push_back({where(i, j), "hom length is not a monotone length function"});
      if (!table_violations(hs.dist).empty())
        out.push_back({where(i, j), "hom distance is not positive/symmetric/nilpotent"});
    }
  for (std::size_t i = 0; i < k && out.empty(); ++i)
    for (std::size_t j = 0; j < k && out.empty(); ++j)
      for (std::size_t l = 0; l < k && out.empty(); ++l)
        for (std::size_t a = 0; a < cat.homset(i, j).homs.size() && out.empty(); ++a)
          for (std::size_t b = 0; b < cat.homset(j, l).homs.size(); ++b) {
            const Hom c = compose(cat.homset(j, l).homs[b], cat.homset(i, j).homs[a]);
            if (!cat.homset(i, l).find(c)) {
              out.push_back({where(i, l), "not closed under composition"});
              break;
            }
          }
  return out;
}

/// Forces the product inequality: per-cell infimum over factorizations of
/// both morphisms through shared outer factors, of the product of outer
/// lengths with one inner distance.
///
/// Computed by single-factor relaxation over "cells" (ordered pairs of
/// parallel morphisms). Factor cycles with product below 1 drive the infimum
/// of every cell they reach to exactly 0; they are caught by the parent-
/// forest argument: any improving relaxation whose source is a descendant of
/// its target certifies such a cycle, and the whole cycle is then pinned to
/// 0. Afterwards only simple improving paths remain and the sweep settles.
template <class V>
std::vector<DistanceTable<V>> product_closure_tables(const Category<V>& cat,
                                                     const std::vector<DistanceTable<V>>& dists,
                                                     const std::vector<std::vector<V>>& ells) {
  const std::size_t k = cat.object_count();
  if (dists.size() != cat.set_count() || ells.size() != cat.set_count())
    throw std::invalid_argument("product_closure_tables: arity mismatch");
  for (std::size_t s = 0; s < cat.set_count(); ++s)
    if (dists[s].n != cat.set_at(s).homs.size() || ells[s].size() != cat.set_at(s).homs.size())
      throw std::invalid_argument("product_closure_tables: table arity mismatch");

  std::vector<DistanceTable<V>> t = dists;
  const V zero = NumTraits<V>::zero();

  // composition index tables: comp[(i,j,l)][u * |hom(j,l)| + a] = index of
  // (a after u) in hom(i,l)
  std::vector<std::vector<std::size_t>> comp(k * k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) {
        const std::size_t nu = cat.homset(i, j).homs.size();
        const std::size_t na = cat.homset(j, l).homs.size();
        auto& tbl = comp[(i * k + j) * k + l];
        tbl.resize(nu * na);
        for (std::size_t u = 0; u < nu; ++u)
          for (std::size_t a = 0; a < na; ++a)
            tbl[u * na + a] = cat.compose_index(i, j, l, u, a);
      }

  // global ordered-cell ids for the parent forest
  std::vector<std::size_t> offset(cat.set_count() + 1, 0);
  for (std::size_t s = 0; s < cat.set_count(); ++s)
    offset[s + 1] = offset[s] + t[s].cells.size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(offset.back(), kNone);

  auto zero_out_cycle = [&](std::size_t from, std::size_t to) {
    // The improving edge (from -> to) closed a cycle to -> ... -> from in the
    // parent forest; every cell on it has infimum 0.
    std::size_t c = from;
    while (true) {
      const std::size_t s =
          static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), c) -
                                   offset.begin()) - 1;
      const std::size_t local = c - offset[s];
      const std::size_t ii = local / t[s].n, jj = local % t[s].n;
      t[s].set(static_cast<Elem>(ii), static_cast<Elem>(jj), zero);
      const std::size_t up = parent[c];
      parent[c] = kNone;
      parent[offset[s] + jj * t[s].n + ii] = kNone;
      if (c == to || up == kNone) break;
      c = up;
    }
  };

  std::vector<std::size_t>* record = nullptr;
  auto update = [&](std::size_t set, std::size_t u, std::size_t v, const V& cand,
                    std::size_t src_cell) -> bool {
    auto& tab = t[set];
    if (!(cand < tab.at(static_cast<Elem>(u), static_cast<Elem>(v)))) return false;
    const std::size_t cell = offset[set] + u * tab.n + v;
    const std::size_t mirror = offset[set] + v * tab.n + u;
    if (record) record->push_back(cell);
    // ancestor walk: does src_cell descend from the cell we improve?
    for (std::size_t c = src_cell; c != kNone; c = parent[c])
      if (c == cell || c == mirror) {
        zero_out_cycle(src_cell, c);
        return true;
      }
    tab.set(static_cast<Elem>(u), static_cast<Elem>(v), cand);
    parent[cell] = src_cell;
    parent[mirror] = src_cell;
    return true;
  };

  auto sweep = [&]() -> bool {
    bool any = false;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t mid_idx = cat.set_index(i, j);
        const std::size_t nm = cat.homset(i, j).homs.size();
        for (std::size_t l = 0; l < k; ++l) {
          // left factor A in hom(j,l): (U,V) -> (A U, A V)
          const std::size_t out_idx = cat.set_index(i, l);
          const std::size_t na = cat.homset(j, l).homs.size();
          const auto& cl = comp[(i * k + j) * k + l];
          for (std::size_t a = 0; a < na; ++a) {
            const V& la = ells[cat.set_index(j, l)][a];
            for (std::size_t u = 0; u < nm; ++u) {
              const std::size_t au = cl[u * na + a];
              for (std::size_t v = u; v < nm; ++v) {
                const V& base = t[mid_idx].at(static_cast<Elem>(u), static_cast<Elem>(v));
                any |= update(out_idx, cl[v * na + a], au, la * base,
                              offset[mid_idx] + u * nm + v);
              }
            }
          }
          // right factor B in hom(l,i): (U,V) -> (U B, V B)
          const std::size_t out2_idx = cat.set_index(l, j);
          const std::size_t nb = cat.homset(l, i).homs.size();
          const auto& cr = comp[(l * k + i) * k + j];
          for (std::size_t b = 0; b < nb; ++b) {
            const V& lb = ells[cat.set_index(l, i)][b];
            for (std::size_t u = 0; u < nm; ++u) {
              const std::size_t ub = cr[b * nm + u];
              for (std::size_t v = u; v < nm; ++v) {
                const V& base = t[mid_idx].at(static_cast<Elem>(u), static_cast<Elem>(v));
                any |= update(out2_idx, ub, cr[b * nm + v], base * lb,
                              offset[mid_idx] + u * nm + v);
              }
            }
          }
        }
      }
    return any;
  };

  // With cycles pinned to zero on sight, the remaining improvements follow
  // simple paths and the sweep settles quickly. Should a shrinking cycle
  // evade the parent forest (cross-updates can re-root it), fall back to the
  // blunt rule: past the pass bound, any cell that still moves is pumped or
  // downstream of a pumped cell, so its exact value is 0.
  bool stable = false;
  const std::size_t pass_bound = 2 * offset.back() + 64;
  for (std::size_t pass = 0; pass < pass_bound && !stable; ++pass) stable = !sweep();
  while (!stable) {
    std::vector<std::size_t> moved;
    record = &moved;
    stable = !sweep();
    record = nullptr;
    for (std::size_t c : moved) {
      const std::size_t s =
          static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), c) -
                                   offset.begin()) - 1;
      const std::size_t local = c - offset[s];
      t[s].set(static_cast<Elem>(local / t[s].n), static_cast<Elem>(local % t[s].n), zero);
    }
  }

  for (auto& tab : t) tab.kind = DistKind::custom;
  return t;
}

template <class V>
std::vector<DistanceTable<V>> product_closure(const Category<V>& cat) {
  std::vector<DistanceTable<V>> dists;
  std::vector<std::vector<V>> ells;
  for (std::size_t s = 0; s < cat.set_count(); ++s) {
    dists.push_back(cat.set_at(s).dist);
    ells.push_back(cat.set_at(s).ell);
  }
  return product_closure_tables(cat, dists, ells);
}

/// Reference evaluation of the factorization infimum with at most
/// `max_factors` outer factors in total, enumerated forward: first the
/// cheapest way to write each morphism as a chain of exactly p factors
/// (a small dynamic program on the category), then every split
/// X = L U R, Y = L V R with the chain costs of L and R adding up to the
/// factor budget. Independent of the relaxation path in product_closure.
template <class V>
std::vector<DistanceTable<V>> brute_force_product_closure(
    const Category<V>& cat, const std::vector<DistanceTable<V>>& dists,
    const std::vector<std::vector<V>>& ells, std::size_t max_factors) {
  const std::size_t k = cat.object_count();
  using CostRow = std::vector<std::optional<V>>;  // per morphism of one hom set

  // chain[p][set][f]: cheapest product of exactly p lengths whose
  // composition is morphism f (p = 0 only for identities, cost 1)
  std::vector<std::vector<CostRow>> chain(max_factors + 1);
  for (std::size_t p = 0; p <= max_factors; ++p) {
    chain[p].resize(cat.set_count());
    for (std::size_t s = 0; s < cat.set_count(); ++s)
      chain[p][s].assign(cat.set_at(s).homs.size(), std::nullopt);
  }
  for (std::size_t i = 0; i < k; ++i) {
    const auto id = cat.homset(i, i).find(identity_hom(cat.object(i)));
    if (id) chain[0][cat.set_index(i, i)][*id] = V(1);
  }
  if (max_factors >= 1)
    for (std::size_t s = 0; s < cat.set_count(); ++s)
      for (std::size_t f = 0; f < ells[s].size(); ++f) chain[1][s][f] = ells[s][f];
  for (std::size_t p = 2; p <= max_factors; ++p)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t l = 0; l < k; ++l) {
          // one factor A: j->l in front of a (p-1)-chain g: i->j
          const std::size_t gs = cat.set_index(i, j);
          for (std::size_t a = 0; a < cat.homset(j, l).homs.size(); ++a) {
            const V& la = ells[cat.set_index(j, l)][a];
            for (std::size_t g = 0; g < cat.homset(i, j).homs.size(); ++g) {
              if (!chain[p - 1][gs][g]) continue;
              const std::size_t c = cat.compose_index(i, j, l, g, a);
              const V cand = la * *chain[p - 1][gs][g];
              auto& slot = chain[p][cat.set_index(i, l)][c];
              if (!slot || cand < *slot) slot = cand;
            }
          }
        }

  std::vector<DistanceTable<V>> out = dists;
  for (std::size_t src = 0; src < k; ++src)
    for (std::size_t dst = 0; dst < k; ++dst) {
      auto& table = out[cat.set_index(src, dst)];
      // X = L U R with L: a->dst, U,V: b->a, R: src->b
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
          const auto& lset = cat.homset(a, dst);
          const auto& rset = cat.homset(src, b);
          const auto& midset = cat.homset(b, a);
          const std::size_t mid_idx = cat.set_index(b, a);
          for (std::size_t L = 0; L < lset.homs.size(); ++L)
            for (std::size_t R = 0; R < rset.homs.size(); ++R) {
              // cheapest chain-cost split of the factor budget
              std::optional<V> best_split;
              for (std::size_t p = 0; p <= max_factors; ++p) {
                if (!chain[p][cat.set_index(a, dst)][L]) continue;
                for (std::size_t q = 0; p + q <= max_factors; ++q) {
                  if (!chain[q][cat.set_index(src, b)][R]) continue;
                  const V cand = *chain[p][cat.set_index(a, dst)][L] *
                                 *chain[q][cat.set_index(src, b)][R];
                  if (!best_split || cand < *best_split) best_split = cand;
                }
              }
              if (!best_split) continue;
              for (std::size_t u = 0; u < midset.homs.size(); ++u) {
                const std::size_t ru = cat.compose_index(src, b, a, R, u);
                const std::size_t lru = cat.compose_index(src, a, dst, ru, L);
                for (std::size_t v = 0; v < midset.homs.size(); ++v) {
                  const std::size_t rv = cat.compose_index(src, b, a, R, v);
                  const std::size_t lrv = cat.compose_index(src, a, dst, rv, L);
                  const V cand =
                      *best_split * dists[mid_idx].at(static_cast<Elem>(u), static_cast<Elem>(v));
                  if (cand < table.at(static_cast<Elem>(lru), static_cast<Elem>(lrv)))
                    table.set(static_cast<Elem>(lru), static_cast<Elem>(lrv), cand);
                }
              }
            }
        }
    }
  return out;
}

/// The coupled fixpoint on all hom sets at once: product closure with the
/// current lengths, then both metric closures per hom set, extraction at the
/// constant-neutral hom, monotone envelope, and rebuilt d tables, iterated
/// until nothing changes. The limits satisfy the triangle, join- and
/// product-inequalities.
template <class V>
struct HomFixpointResult {
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<std::vector<V>> ell;        // per hom set
  std::vector<DistanceTable<V>> dist;     // d of ell, per hom set
  std::vector<V> step_changes;            // max change per round
};

template <class V>
HomFixpointResult<V> hom_ideal_length(const Category<V>& cat,
                                      const FixpointOptions<V>& opt = {}) {
  HomFixpointResult<V> res;
  std::vector<std::vector<V>> ells;
  std::vector<DistanceTable<V>> dists;
  for (std::size_t s = 0; s < cat.set_count(); ++s) {
    ells.push_back(cat.set_at(s).ell);
    dists.push_back(cat.set_at(s).dist);
  }

  for (std::size_t n = 1; n <= opt.max_iter; ++n) {
    const std::vector<DistanceTable<V>> dotted = product_closure_tables(cat, dists, ells);
    std::vector<std::vector<V>> next_ells(cat.set_count());
    std::vector<DistanceTable<V>> next_dists(cat.set_count());
    for (std::size_t s = 0; s < cat.set_count(); ++s) {
      const HomSet<V>& hs = cat.set_at(s);
      const DistanceTable<V> closed = delta_nabla_closure(hs.hom_monoid, dotted[s]);
      std::vector<V> extracted(closed.n);
      for (Elem x = 0; x < closed.n; ++x)
        extracted[x] = closed.at(x, static_cast<Elem>(hs.neutral_hom));
      next_ells[s] = monotone_envelope_values(hs.hom_monoid, extracted);
      const LengthFn<V> lf{LengthMode::monotone, next_ells[s]};
      next_dists[s] = distance_table(hs.hom_monoid, lf, DistKind::d);
    }

    V change = NumTraits<V>::zero();
    bool repeated = true;
    for (std::size_t s = 0; s < cat.set_count(); ++s) {
      const V c1 = detail::max_entry_change(next_ells[s], ells[s]);
      const V c2 = detail::max_entry_change(next_dists[s].cells, dists[s].cells);
      if (change < c1) change = c1;
      if (change < c2) change = c2;
      if (!(next_ells[s] == ells[s]) || !(next_dists[s].cells == dists[s].cells))
        repeated = false;
    }
    res.iterations = n;
    res.step_changes.push_back(change);
    ells = std::move(next_ells);
    dists = std::move(next_dists);
    if (repeated || change < opt.tol) {
      res.converged = true;
      break;
    }
  }
  res.ell = std::move(ells);
  res.dist = std::move(dists);
  return res;
}

/// Multiplicative Banach-Mazur value between two objects: the infimum of
/// ell(phi) * ell(phi inverse) over isomorphisms listed in the category,
/// infinite when none exist. The logarithmic distance is log of this.
template <class V>
Ext<V> banach_mazur_product(const Category<V>& cat, std::size_t i, std::size_t j,
                            const std::vector<std::vector<V>>* ells = nullptr) {
  const HomSet<V>& fwd = cat.homset(i, j);
  const HomSet<V>& bwd = cat.homset(j, i);
  auto ell_of = [&](std::size_t set, std::size_t h) -> const V& {
    return ells ? (*ells)[set][h] : cat.set_at(set).ell[h];
  };
  Ext<V> best = Ext<V>::inf();
  if (cat.object(i).size() != cat.object(j).size()) return best;
  const std::size_t n = cat.object(i).size();
  for (std::size_t f = 0; f < fwd.homs.size(); ++f) {
    const Hom& phi = fwd.homs[f];
    std::vector<Elem> inv(n, n);
    bool bij = true;
    for (Elem x = 0; x < n && bij; ++x) {
      if (inv[phi(x)] != n) bij = false;
      else inv[phi(x)] = x;
    }
    if (!bij) continue;
    Hom phi_inv;
    phi_inv.map = std::move(inv);
    const auto g = bwd.find(phi_inv);
    if (!g) continue;  // inverse not listed; this phi is not an iso of the category
    const Ext<V> cand(ell_of(cat.set_index(i, j), f) * ell_of(cat.set_index(j, i), *g));
    if (cand < best) best = cand;
  }
  return best;
}

template <class V>
double banach_mazur(const Category<V>& cat, std::size_t i, std::size_t j,
                    const std::vector<std::vector<V>>* ells = nullptr) {
  const Ext<V> p = banach_mazur_product(cat, i, j, ells);
  if (p.infinite) return std::numeric_limits<double>::infinity();
  return std::log(NumTraits<V>::to_double(p.value));
}

/// Bound propagation from comparable pairs to all pairs and through the
/// closures: if d_dst(Ua, Ub) <= M d_src(a, b) whenever a <= b, the same
/// bound holds for every pair and for the fully closed tables. All three
/// statements are re-verified exhaustively rather than trusted.
template <class V>
struct LiftReport {
  bool premise_holds = false;       // comparable pairs only
  bool all_pairs_hold = false;
  bool closed_tables_hold = false;
  std::vector<Elem> witness;        // first failing pair, if any
};

template <class V>
LiftReport<V> uniform_continuity_lift(const Monoid& src, const Monoid& dst, const Hom& u,
                                      const V& bound, const DistanceTable<V>& d_src,
                                      const DistanceTable<V>& d_dst) {
  LiftReport<V> rep;
  const V tol = NumTraits<V>::check_tol();
  auto scan = [&](const DistanceTable<V>& ts, const DistanceTable<V>& td, bool only_comparable,
                  std::vector<Elem>& witness) {
    for (Elem a = 0; a < src.size(); ++a)
      for (Elem b = 0; b < src.size(); ++b) {
        if (only_comparable && !src.leq(a, b)) continue;
        if (bound * ts.at(a, b) + tol < td.at(u(a), u(b))) {
          witness = {a, b};
          return false;
        }
      }
    return true;
  };
  std::vector<Elem> w;
  rep.premise_holds = scan(d_src, d_dst, true, w);
  if (!rep.premise_holds) {
    rep.witness = w;
    return rep;
  }
  rep.all_pairs_hold = scan(d_src, d_dst, false, w);
  if (!rep.all_pairs_hold) {
    rep.witness = w;
    return rep;
  }
  const DistanceTable<V> cs = delta_nabla_closure(src, d_src);
  const DistanceTable<V> cd = delta_nabla_closure(dst, d_dst);
  rep.closed_tables_hold = scan(cs, cd, false, w);
  if (!rep.closed_tables_hold) rep.witness = w;
  return rep;
}

}  // namespace infodist

#endif  // INFODIST_CATEGORY_HPP
