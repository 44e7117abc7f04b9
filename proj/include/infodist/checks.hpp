#ifndef INFODIST_CHECKS_HPP
#define INFODIST_CHECKS_HPP

#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "infodist/length.hpp"
#include "infodist/monoid.hpp"
#include "infodist/rational.hpp"

namespace infodist {

enum class FlagState { holds, fails, skipped };

/// Outcome of one inequality scan. A failing flag always carries a witness
/// tuple of element indices that re-evaluates to a violation.
struct IneqFlag {
  FlagState state = FlagState::skipped;
  std::vector<Elem> witness;

  bool holds() const { return state == FlagState::holds; }
  bool fails() const { return state == FlagState::fails; }
};

struct CheckOptions {
  // Above this element count the scans switch from exhaustive to sampled.
  std::size_t exhaustive_threshold = 64;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  int jobs = 1;
};

namespace detail {

template <class F>
void parallel_ranges(std::size_t n, int jobs, F&& body) {
  if (jobs <= 1 || n < 2) {
    body(0, 0, n);
    return;
  }
  const std::size_t k = std::min<std::size_t>(jobs, n);
  std::vector<std::thread> threads;
  threads.reserve(k);
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t b = n * c / k, e = n * (c + 1) / k;
    threads.emplace_back([&body, c, b, e] { body(c, b, e); });
  }
  for (auto& t : threads) t.join();
}

// Runs `scan(first_x, last_x, out_witness)` over chunks of the leading index
// and merges to the lexicographically first witness, so results do not
// depend on the job count.
template <class Scan>
IneqFlag chunked_scan(std::size_t n, int jobs, Scan&& scan) {
  const std::size_t k = (jobs <= 1 || n < 2) ? 1 : std::min<std::size_t>(jobs, n);
  std::vector<std::vector<Elem>> found(k);
  parallel_ranges(n, static_cast<int>(k), [&](std::size_t c, std::size_t b, std::size_t e) {
    scan(static_cast<Elem>(b), static_cast<Elem>(e), found[c]);
  });
  for (auto& w : found)
    if (!w.empty()) return IneqFlag{FlagState::fails, std::move(w)};
  return IneqFlag{FlagState::holds, {}};
}

}  // namespace detail

/// Triangle inequality t(x,z) <= t(x,y) + t(y,z) over all triples.
template <class V>
IneqFlag check_delta_table(const DistanceTable<V>& t, const V& tol = NumTraits<V>::check_tol(),
                           int jobs = 1) {
  return detail::chunked_scan(t.n, jobs, [&](Elem b, Elem e, std::vector<Elem>& w) {
    for (Elem x = b; x < e; ++x)
      for (Elem y = 0; y < t.n; ++y)
        for (Elem z = 0; z < t.n; ++z)
          if (t.at(x, y) + t.at(y, z) + tol < t.at(x, z)) {
            w = {x, y, z};
            return;
          }
  });
}

/// Second triangle inequality |t(x,z) - t(z,y)| <= t(x,y).
template <class V>
IneqFlag check_second_delta_table(const DistanceTable<V>& t,
                                  const V& tol = NumTraits<V>::check_tol(), int jobs = 1) {
  return detail::chunked_scan(t.n, jobs, [&](Elem b, Elem e, std::vector<Elem>& w) {
    for (Elem x = b; x < e; ++x)
      for (Elem y = 0; y < t.n; ++y)
        for (Elem z = 0; z < t.n; ++z)
          if (t.at(x, y) + tol < vabs(t.at(x, z) - t.at(z, y))) {
            w = {x, y, z};
            return;
          }
  });
}

/// Join-compatibility t(xy, ab) <= t(x,a) + t(y,b) over all quadruples.
template <class V>
IneqFlag check_nabla_table(const Monoid& m, const DistanceTable<V>& t,
                           const V& tol = NumTraits<V>::check_tol(), int jobs = 1) {
  return detail::chunked_scan(t.n, jobs, [&](Elem b, Elem e, std::vector<Elem>& w) {
    for (Elem x = b; x < e; ++x)
      for (Elem y = 0; y < t.n; ++y) {
        const Elem xy = m.join(x, y);
        for (Elem a = 0; a < t.n; ++a)
          for (Elem bb = 0; bb < t.n; ++bb)
            if (t.at(x, a) + t.at(y, bb) + tol < t.at(xy, m.join(a, bb))) {
              w = {x, y, a, bb};
              return;
            }
      }
  });
}

/// Weak form: t(xz, yz) <= t(x,y) for all x, y, z.
template <class V>
IneqFlag check_weak_nabla_table(const Monoid& m, const DistanceTable<V>& t,
                                const V& tol = NumTraits<V>::check_tol(), int jobs = 1) {
  return detail::chunked_scan(t.n, jobs, [&](Elem b, Elem e, std::vector<Elem>& w) {
    for (Elem x = b; x < e; ++x)
      for (Elem y = 0; y < t.n; ++y)
        for (Elem z = 0; z < t.n; ++z)
          if (t.at(x, y) + tol < t.at(m.join(x, z), m.join(y, z))) {
            w = {x, y, z};
            return;
          }
  });
}

/// Very weak form: the weak inequality restricted to comparable x <= y.
template <class V>
IneqFlag check_very_weak_nabla_table(const Monoid& m, const DistanceTable<V>& t,
                                     const V& tol = NumTraits<V>::check_tol(), int jobs = 1) {
  return detail::chunked_scan(t.n, jobs, [&](Elem b, Elem e, std::vector<Elem>& w) {
    for (Elem x = b; x < e; ++x)
      for (Elem y = 0; y < t.n; ++y) {
        if (!m.leq(x, y)) continue;
        for (Elem z = 0; z < t.n; ++z)
          if (t.at(x, y) + tol < t.at(m.join(x, z), m.join(y, z))) {
            w = {x, y, z};
            return;
          }
      }
  });
}

/// The full diagnostic battery for a length function. Flags are evaluated
/// exhaustively below the size threshold and on seeded random tuples above
/// it. For a nonmonotone length only the raw metric-candidate flags are
/// computed; the four monotonicity-dependent flags are reported as skipped
/// instead of being silently evaluated under a failed hypothesis.
template <class V>
struct InequalityReport {
  bool sampled = false;

  IneqFlag delta_d, second_delta_d, nabla_d, weak_nabla_d;
  IneqFlag very_weak_nabla_d;       // (a)
  IneqFlag very_weak_nabla_sigma;   // (b)
  IneqFlag delta_increasing;        // (c)
  IneqFlag intersection_increasing; // (d)
  IneqFlag delta_sigma;             // (e)
  IneqFlag nabla_sigma;             // (f)

  std::vector<const IneqFlag*> six_flags() const {
    return {&very_weak_nabla_d, &very_weak_nabla_sigma, &delta_increasing,
            &intersection_increasing, &delta_sigma, &nabla_sigma};
  }
  bool all_six_hold() const {
    for (const IneqFlag* f : six_flags())
      if (!f->holds()) return false;
    return true;
  }
  bool all_six_fail() const {
    for (const IneqFlag* f : six_flags())
      if (!f->fails()) return false;
    return true;
  }
};

namespace detail {

// delta_y(a) <= delta_y(x) for all a <= x and every y.
template <class V>
IneqFlag check_delta_increasing(const Monoid& m, const LengthFn<V>& l, const V& tol, int jobs) {
  return chunked_scan(m.size(), jobs, [&](Elem b, Elem e, std::vector<Elem>& w) {
    for (Elem a = b; a < e; ++a)
      for (Elem x = 0; x < m.size(); ++x) {
        if (!m.leq(a, x)) continue;
        for (Elem y = 0; y < m.size(); ++y)
          if (delta_fn(m, l, y, x) + tol < delta_fn(m, l, y, a)) {
            w = {a, x, y};
            return;
          }
      }
  });
}

// Overlap measure l(u)+l(v)-l(uv) nondecreasing in both arguments.
template <class V>
IneqFlag check_intersection_increasing(const Monoid& m, const LengthFn<V>& l, const V& tol,
                                       int jobs) {
  auto overlap = [&](Elem u, Elem v) {
    return l.values[u] + l.values[v] - l.values[m.join(u, v)];
  };
  return chunked_scan(m.size(), jobs, [&](Elem b, Elem e, std::vector<Elem>& w) {
    for (Elem a = b; a < e; ++a)
      for (Elem x = 0; x < m.size(); ++x) {
        if (!m.leq(a, x)) continue;
        for (Elem bb = 0; bb < m.size(); ++bb)
          for (Elem y = 0; y < m.size(); ++y) {
            if (!m.leq(bb, y)) continue;
            if (overlap(x, y) + tol < overlap(a, bb)) {
              w = {a, bb, x, y};
              return;
            }
          }
      }
  });
}

template <class V>
InequalityReport<V> check_inequalities_sampled(const Monoid& m, const LengthFn<V>& l,
                                               const CheckOptions& opt) {
  InequalityReport<V> rep;
  rep.sampled = true;
  const V tol = NumTraits<V>::check_tol();
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(m.size() - 1));
  const bool mono = l.mode == LengthMode::monotone;

  auto dd = [&](Elem x, Elem y) { return d_of(m, l, x, y); };
  auto ss = [&](Elem x, Elem y) { return sigma_of(m, l, x, y); };
  auto overlap = [&](Elem u, Elem v) {
    return l.values[u] + l.values[v] - l.values[m.join(u, v)];
  };

  auto run = [&](IneqFlag& flag, auto probe) {
    flag.state = FlagState::holds;
    for (std::size_t s = 0; s < opt.samples; ++s) {
      std::vector<Elem> w = probe();
      if (!w.empty()) {
        flag = IneqFlag{FlagState::fails, std::move(w)};
        return;
      }
    }
  };

  run(rep.delta_d, [&]() -> std::vector<Elem> {
    Elem x = pick(rng), y = pick(rng), z = pick(rng);
    if (dd(x, y) + dd(y, z) + tol < dd(x, z)) return {x, y, z};
    return {};
  });
  run(rep.second_delta_d, [&]() -> std::vector<Elem> {
    Elem x = pick(rng), y = pick(rng), z = pick(rng);
    if (dd(x, y) + tol < vabs(dd(x, z) - dd(z, y))) return {x, y, z};
    return {};
  });
  run(rep.nabla_d, [&]() -> std::vector<Elem> {
    Elem x = pick(rng), y = pick(rng), a = pick(rng), b = pick(rng);
    if (dd(x, a) + dd(y, b) + tol < dd(m.join(x, y), m.join(a, b))) return {x, y, a, b};
    return {};
  });
  run(rep.weak_nabla_d, [&]() -> std::vector<Elem> {
    Elem x = pick(rng), y = pick(rng), z = pick(rng);
    if (dd(x, y) + tol < dd(m.join(x, z), m.join(y, z))) return {x, y, z};
    return {};
  });
  run(rep.very_weak_nabla_d, [&]() -> std::vector<Elem> {
    Elem x = pick(rng), y = m.join(x, pick(rng)), z = pick(rng);
    if (dd(x, y) + tol < dd(m.join(x, z), m.join(y, z))) return {x, y, z};
    return {};
  });
  run(rep.very_weak_nabla_sigma, [&]() -> std::vector<Elem> {
    Elem x = pick(rng), y = m.join(x, pick(rng)), z = pick(rng);
    if (ss(x, y) + tol < ss(m.join(x, z), m.join(y, z))) return {x, y, z};
    return {};
  });
  if (mono) {
    run(rep.delta_sigma, [&]() -> std::vector<Elem> {
      Elem x = pick(rng), y = pick(rng), z = pick(rng);
      if (ss(x, y) + ss(y, z) + tol < ss(x, z)) return {x, y, z};
      return {};
    });
    run(rep.nabla_sigma, [&]() -> std::vector<Elem> {
      Elem x = pick(rng), y = pick(rng), a = pick(rng), b = pick(rng);
      if (ss(x, a) + ss(y, b) + tol < ss(m.join(x, y), m.join(a, b))) return {x, y, a, b};
      return {};
    });
    run(rep.delta_increasing, [&]() -> std::vector<Elem> {
      Elem a = pick(rng), x = m.join(a, pick(rng)), y = pick(rng);
      if (delta_fn(m, l, y, x) + tol < delta_fn(m, l, y, a)) return {a, x, y};
      return {};
    });
    run(rep.intersection_increasing, [&]() -> std::vector<Elem> {
      Elem a = pick(rng), x = m.join(a, pick(rng));
      Elem b = pick(rng), y = m.join(b, pick(rng));
      if (overlap(x, y) + tol < overlap(a, b)) return {a, b, x, y};
      return {};
    });
  }
  return rep;
}

}  // namespace detail

template <class V>
InequalityReport<V> check_inequalities(const Monoid& m, const LengthFn<V>& l,
                                       const CheckOptions& opt = {}) {
  if (m.size() > opt.exhaustive_threshold)
    return detail::check_inequalities_sampled(m, l, opt);

  InequalityReport<V> rep;
  const V tol = NumTraits<V>::check_tol();
  const DistanceTable<V> d = distance_table(m, l, DistKind::d);
  const DistanceTable<V> s = distance_table(m, l, DistKind::sigma);

  rep.delta_d = check_delta_table(d, tol, opt.jobs);
  rep.second_delta_d = check_second_delta_table(d, tol, opt.jobs);
  rep.nabla_d = check_nabla_table(m, d, tol, opt.jobs);
  rep.weak_nabla_d = check_weak_nabla_table(m, d, tol, opt.jobs);
  rep.very_weak_nabla_d = check_very_weak_nabla_table(m, d, tol, opt.jobs);
  rep.very_weak_nabla_sigma = check_very_weak_nabla_table(m, s, tol, opt.jobs);
  if (l.mode == LengthMode::monotone) {
    rep.delta_sigma = check_delta_table(s, tol, opt.jobs);
    rep.nabla_sigma = check_nabla_table(m, s, tol, opt.jobs);
    rep.delta_increasing = detail::check_delta_increasing(m, l, tol, opt.jobs);
    rep.intersection_increasing = detail::check_intersection_increasing(m, l, tol, opt.jobs);
  }
  return rep;
}

}  // namespace infodist

#endif  // INFODIST_CHECKS_HPP
