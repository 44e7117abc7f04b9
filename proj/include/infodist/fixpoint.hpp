#ifndef INFODIST_FIXPOINT_HPP
#define INFODIST_FIXPOINT_HPP

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "infodist/checks.hpp"
#include "infodist/closures.hpp"
#include "infodist/length.hpp"
#include "infodist/monoid.hpp"

namespace infodist {

enum class FixVariant { d, sigma, nonmono };

inline const char* to_string(FixVariant v) {
  switch (v) {
    case FixVariant::d: return "d";
    case FixVariant::sigma: return "sigma";
    case FixVariant::nonmono: return "nonmono";
  }
  return "?";
}

/// One iteration snapshot. `closed` is the delta/nabla closure of `dist`,
/// `closed_length` its extraction at the neutral element; the next step's
/// length is its monotone envelope (or the extraction itself in the
/// nonmonotone variant).
template <class V>
struct FixpointStep {
  std::optional<LengthFn<V>> length;  // absent only for a raw-table start
  DistanceTable<V> dist;
  DistanceTable<V> closed;
  std::vector<V> closed_length;
  V max_change = NumTraits<V>::zero();  // vs. the previous step; zero at the start
  // Whether `closed` happens to equal the distance table of its own
  // extracted length. Recorded as data; no claim either way.
  bool closed_is_dist_of_extraction = false;
};

template <class V>
struct FixpointTrace {
  FixVariant variant = FixVariant::d;
  std::size_t iterations = 0;          // closure/extraction rounds performed
  std::size_t first_recorded = 1;      // 1-based index of steps.front()
  bool converged = false;
  std::vector<FixpointStep<V>> steps;  // consecutive window, ends at the limit
};

template <class V>
struct FixpointOptions {
  // Change < tol stops the iteration. The exact default (0) relies on exact
  // repetition alone; the floating default adds the usual absolute slack.
  V tol = NumTraits<V>::check_tol();
  std::size_t max_iter = 10000;
  std::size_t trace_cap = 1000;
};

template <class V>
struct FixpointResult {
  bool converged = false;
  LengthFn<V> length;      // the ideal length function
  DistanceTable<V> dist;   // its d (or sigma) table
  FixpointTrace<V> trace;
  // How far the projection shrank the start length: min and mean of
  // final/initial ratios over elements with positive initial length.
  std::optional<V> min_shrink_ratio;
  double mean_shrink_ratio = 1.0;
};

namespace detail {

template <class V>
DistanceTable<V> variant_table(const Monoid& m, const LengthFn<V>& l, FixVariant variant) {
  return distance_table(m, l, variant == FixVariant::sigma ? DistKind::sigma : DistKind::d);
}

template <class V>
V max_entry_change(const std::vector<V>& a, const std::vector<V>& b) {
  V mx = NumTraits<V>::zero();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const V c = vabs(a[i] - b[i]);
    if (mx < c) mx = c;
  }
  return mx;
}

template <class V>
FixpointResult<V> run_fixpoint(const Monoid& m, std::optional<LengthFn<V>> start_length,
                               DistanceTable<V> start_dist, FixVariant variant,
                               const FixpointOptions<V>& opt) {
  if (!table_violations(start_dist).empty())
    throw std::invalid_argument("ideal_length: start table must be positive, symmetric, nilpotent");
  if (start_dist.n != m.size())
    throw std::invalid_argument("ideal_length: table/monoid size mismatch");
  if (start_length && variant != FixVariant::nonmono &&
      start_length->mode != LengthMode::monotone)
    throw std::invalid_argument(
        "ideal_length: d/sigma variants need a monotone start; use the nonmono variant");

  const LengthMode out_mode =
      variant == FixVariant::nonmono ? LengthMode::nonmonotone : LengthMode::monotone;

  FixpointResult<V> res;
  res.trace.variant = variant;

  std::optional<LengthFn<V>> cur_length = std::move(start_length);
  DistanceTable<V> cur_dist = std::move(start_dist);

  auto push_step = [&](FixpointStep<V> step) {
    auto& steps = res.trace.steps;
    steps.push_back(std::move(step));
    if (steps.size() > opt.trace_cap) {
      steps.erase(steps.begin());
      ++res.trace.first_recorded;
    }
  };

  for (std::size_t n = 1; n <= opt.max_iter; ++n) {
    FixpointStep<V> step;
    step.length = cur_length;
    step.dist = cur_dist;
    step.closed = delta_nabla_closure(m, cur_dist);
    step.closed_length = extracted_length(m, step.closed);
    {
      LengthFn<V> probe{out_mode, step.closed_length};
      step.closed_is_dist_of_extraction = variant_table(m, probe, variant) == step.closed;
    }

    LengthFn<V> next_length{out_mode, variant == FixVariant::nonmono
                                          ? step.closed_length
                                          : monotone_envelope_values(m, step.closed_length)};
    DistanceTable<V> next_dist = variant_table(m, next_length, variant);

    V change = max_entry_change(next_dist.cells, cur_dist.cells);
    if (cur_length) {
      const V lc = max_entry_change(next_length.values, cur_length->values);
      if (change < lc) change = lc;
    }
    const bool repeated =
        next_dist.cells == cur_dist.cells && cur_length && next_length.values == cur_length->values;

    res.trace.iterations = n;
    push_step(std::move(step));

    cur_length = std::move(next_length);
    cur_dist = std::move(next_dist);

    if (repeated || change < opt.tol) {
      res.converged = true;
      break;
    }
  }

  // Final snapshot, with its own closure so limit-level bounds can be read
  // straight off the trace.
  {
    FixpointStep<V> last;
    last.length = cur_length;
    last.dist = cur_dist;
    last.closed = delta_nabla_closure(m, cur_dist);
    last.closed_length = extracted_length(m, last.closed);
    {
      LengthFn<V> probe{out_mode, last.closed_length};
      last.closed_is_dist_of_extraction = variant_table(m, probe, variant) == last.closed;
    }
    if (!res.trace.steps.empty()) {
      const auto& prev = res.trace.steps.back();
      last.max_change = max_entry_change(last.dist.cells, prev.dist.cells);
      if (prev.length) {
        const V lc = max_entry_change(cur_length->values, prev.length->values);
        if (last.max_change < lc) last.max_change = lc;
      }
    }
    push_step(std::move(last));
  }

  res.trace.converged = res.converged;
  res.length = std::move(*cur_length);
  res.dist = std::move(cur_dist);

  const auto& first = res.trace.steps.front();
  if (res.trace.first_recorded == 1 && first.length) {
    std::optional<V> mn;
    double sum = 0.0;
    std::size_t cnt = 0;
    for (Elem x = 0; x < m.size(); ++x) {
      const V& l0 = first.length->values[x];
      if (!(NumTraits<V>::zero() < l0)) continue;
      const V ratio = res.length.values[x] / l0;
      if (!mn || ratio < *mn) mn = ratio;
      sum += NumTraits<V>::to_double(ratio);
      ++cnt;
    }
    res.min_shrink_ratio = mn;
    res.mean_shrink_ratio = cnt ? sum / static_cast<double>(cnt) : 1.0;
  }
  return res;
}

}  // namespace detail

/// Iterates close -> extract -> monotone-envelope -> rebuild-distance until
/// the length function stops changing. The limit's distance table satisfies
/// both the triangle and the join-compatibility inequality; on exact grids
/// the iteration terminates by exact repetition without any tolerance.
template <class V>
FixpointResult<V> ideal_length(const Monoid& m, const LengthFn<V>& start, FixVariant variant,
                               const FixpointOptions<V>& opt = {}) {
  return detail::run_fixpoint<V>(m, start, detail::variant_table(m, start, variant), variant, opt);
}

/// Same iteration started from an arbitrary positive symmetric nilpotent
/// table instead of a length function.
template <class V>
FixpointResult<V> ideal_length(const Monoid& m, DistanceTable<V> start, FixVariant variant,
                               const FixpointOptions<V>& opt = {}) {
  return detail::run_fixpoint<V>(m, std::nullopt, std::move(start), variant, opt);
}

/// Three equivalent characterizations of "already ideal", all evaluated:
/// the d table satisfies both inequalities; the closure projection leaves it
/// unchanged; the iteration returns the length unchanged.
struct FixedPointDiagnosis {
  bool inequalities_hold = false;
  bool closure_fixed = false;
  bool iteration_fixed = false;

  bool consistent() const {
    return inequalities_hold == closure_fixed && closure_fixed == iteration_fixed;
  }
  bool is_fixed() const { return inequalities_hold && closure_fixed && iteration_fixed; }
};

template <class V>
FixedPointDiagnosis is_fixed_point(const Monoid& m, const LengthFn<V>& l) {
  if (l.mode != LengthMode::monotone)
    throw std::invalid_argument("is_fixed_point: needs a monotone length function");
  FixedPointDiagnosis diag;
  const DistanceTable<V> d = distance_table(m, l, DistKind::d);
  const V tol = NumTraits<V>::check_tol();
  diag.inequalities_hold =
      check_delta_table(d, tol).holds() && check_nabla_table(m, d, tol).holds();
  diag.closure_fixed = delta_nabla_closure(m, d) == d;
  const auto fix = ideal_length(m, l, FixVariant::d);
  diag.iteration_fixed = fix.converged && fix.length.values == l.values;
  return diag;
}

/// Verifies the sandwich bounds of the sigma-variant iteration:
/// at every step, half of the next sigma table is below the closed table,
/// which is below the current sigma table; and the same sandwich at the
/// attained limit.
struct SigmaBoundViolation {
  std::size_t step;  // 1-based iteration index
  Elem i, j;
  int side;  // 0: lower bound failed, 1: upper bound failed
};

struct SigmaBoundsReport {
  bool ok = true;
  std::vector<SigmaBoundViolation> violations;
};

template <class V>
SigmaBoundsReport sigma_variant_bounds(const FixpointTrace<V>& trace) {
  if (trace.variant != FixVariant::sigma)
    throw std::invalid_argument("sigma_variant_bounds: trace is not from the sigma variant");
  SigmaBoundsReport rep;
  auto check_pair = [&](const DistanceTable<V>& next_sigma, const DistanceTable<V>& closed,
                        const DistanceTable<V>& sigma, std::size_t idx) {
    for (Elem i = 0; i < sigma.n; ++i)
      for (Elem j = 0; j < sigma.n; ++j) {
        if (closed.at(i, j) + closed.at(i, j) < next_sigma.at(i, j)) {
          rep.ok = false;
          rep.violations.push_back({idx, i, j, 0});
        }
        if (sigma.at(i, j) < closed.at(i, j)) {
          rep.ok = false;
          rep.violations.push_back({idx, i, j, 1});
        }
      }
  };
  for (std::size_t k = 0; k + 1 < trace.steps.size(); ++k)
    check_pair(trace.steps[k + 1].dist, trace.steps[k].closed, trace.steps[k].dist,
               trace.first_recorded + k);
  if (!trace.steps.empty() && trace.converged) {
    const auto& last = trace.steps.back();
    check_pair(last.dist, last.closed, last.dist, trace.first_recorded + trace.steps.size() - 1);
  }
  return rep;
}

}  // namespace infodist

#endif  // INFODIST_FIXPOINT_HPP
