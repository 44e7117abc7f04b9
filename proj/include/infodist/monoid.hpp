#ifndef INFODIST_MONOID_HPP
#define INFODIST_MONOID_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace infodist {

using Elem = std::uint32_t;

/// A finite abelian idempotent monoid: a join-semilattice with least element.
///
/// Elements are opaque string labels mapped to dense indices; the join is a
/// total n-by-n index table so that join(x, y) is one lookup and the axiom
/// checks stay exhaustive and cheap. Instances are immutable once built and
/// safe to share across threads.
class Monoid {
 public:
  static constexpr std::size_t kDefaultMaxElements = 4096;

  Monoid() = default;  // empty placeholder; real instances come from factories

  std::size_t size() const { return labels_.size(); }
  Elem neutral() const { return neutral_; }
  const std::string& label(Elem e) const { return labels_.at(e); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<Elem> find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Throwing lookup for callers that treat an unknown label as misuse.
  Elem elem(const std::string& label) const {
    auto e = find(label);
    if (!e) throw std::out_of_range("unknown element '" + label + "'");
    return *e;
  }

  Elem join(Elem a, Elem b) const { return table_[a * size() + b]; }

  /// The join-induced partial order: x <= y iff x joined with y is y.
  bool leq(Elem a, Elem b) const { return join(a, b) == b; }

  template <class It>
  Elem join_all(It first, It last) const {
    Elem acc = neutral_;
    for (; first != last; ++first) acc = join(acc, *first);
    return acc;
  }

  /// Trusted constructor for generators whose output is closed by
  /// construction (powersets, quotients, hom monoids). Untrusted data goes
  /// through validate_monoid instead.
  static Monoid from_validated_parts(std::vector<std::string> labels,
                                     Elem neutral, std::vector<Elem> table) {
    Monoid m;
    m.labels_ = std::move(labels);
    m.neutral_ = neutral;
    m.table_ = std::move(table);
    for (Elem i = 0; i < m.labels_.size(); ++i) m.index_[m.labels_[i]] = i;
    if (m.index_.size() != m.labels_.size())
      throw std::invalid_argument("duplicate element labels");
    return m;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Elem> index_;
  Elem neutral_ = 0;
  std::vector<Elem> table_;  // row-major, size() * size()
};

/// Raw, unvalidated monoid data as it arrives from a file or caller.
struct MonoidSpec {
  std::vector<std::string> elements;
  std::string neutral;
  std::vector<std::vector<std::string>> join;  // labels, n rows of n entries
};

struct MonoidViolation {
  enum class Kind {
    BadTable,        // wrong shape, unknown label, duplicate element
    NotCommutative,  // witness (x, y)
    NotAssociative,  // witness (x, y, z)
    NotIdempotent,   // witness (x)
    BadNeutral,      // witness (x) with join(x, neutral) != x
    TooLarge,
  };
  Kind kind;
  std::vector<std::string> witness;
  std::string message;
};

template <class T, class Viol>
struct Validated {
  std::optional<T> value;
  std::vector<Viol> violations;

  bool ok() const { return value.has_value() && violations.empty(); }
  const T& operator*() const { return *value; }
  T& operator*() { return *value; }
  const T* operator->() const { return &*value; }
  T* operator->() { return &*value; }
};

/// Checks all four monoid axioms exhaustively (commutativity and idempotence
/// over all pairs, associativity over all triples, neutrality over all
/// elements) and reports one witness per violated axiom.
inline Validated<Monoid, MonoidViolation> validate_monoid(
    const MonoidSpec& spec, std::size_t max_elements = Monoid::kDefaultMaxElements) {
  using Kind = MonoidViolation::Kind;
  Validated<Monoid, MonoidViolation> out;
  const std::size_t n = spec.elements.size();
  if (n == 0) {
    out.violations.push_back({Kind::BadTable, {}, "no elements declared"});
    return out;
  }
  if (n > max_elements) {
    out.violations.push_back(
        {Kind::TooLarge, {}, "instance has " + std::to_string(n) +
                                 " elements, cap is " + std::to_string(max_elements)});
    return out;
  }

  std::unordered_map<std::string, Elem> index;
  for (Elem i = 0; i < n; ++i) {
    if (!index.emplace(spec.elements[i], i).second) {
      out.violations.push_back({Kind::BadTable,
                                {spec.elements[i]},
                                "duplicate element label '" + spec.elements[i] + "'"});
      return out;
    }
  }
  auto nit = index.find(spec.neutral);
  if (nit == index.end()) {
    out.violations.push_back(
        {Kind::BadTable, {spec.neutral}, "neutral '" + spec.neutral + "' not an element"});
    return out;
  }
  const Elem neutral = nit->second;

  if (spec.join.size() != n) {
    out.violations.push_back({Kind::BadTable, {}, "join table must have one row per element"});
    return out;
  }
  std::vector<Elem> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.join[i].size() != n) {
      out.violations.push_back(
          {Kind::BadTable, {spec.elements[i]}, "join row has wrong length"});
      return out;
    }
    for (std::size_t j = 0; j < n; ++j) {
      auto it = index.find(spec.join[i][j]);
      if (it == index.end()) {
        out.violations.push_back({Kind::BadTable,
                                  {spec.elements[i], spec.elements[j], spec.join[i][j]},
                                  "join entry '" + spec.join[i][j] + "' not an element"});
        return out;
      }
      table[i * n + j] = it->second;
    }
  }

  auto jn = [&](Elem a, Elem b) { return table[a * n + b]; };
  bool comm_ok = true, assoc_ok = true, idem_ok = true, neutral_ok = true;
  for (Elem x = 0; x < n && idem_ok; ++x)
    if (jn(x, x) != x) {
      idem_ok = false;
      out.violations.push_back({Kind::NotIdempotent, {spec.elements[x]}, "join(x,x) != x"});
    }
  for (Elem x = 0; x < n && neutral_ok; ++x)
    if (jn(x, neutral) != x) {
      neutral_ok = false;
      out.violations.push_back({Kind::BadNeutral, {spec.elements[x]}, "join(x,neutral) != x"});
    }
  for (Elem x = 0; x < n && comm_ok; ++x)
    for (Elem y = x + 1; y < n && comm_ok; ++y)
      if (jn(x, y) != jn(y, x)) {
        comm_ok = false;
        out.violations.push_back(
            {Kind::NotCommutative, {spec.elements[x], spec.elements[y]}, "join(x,y) != join(y,x)"});
      }
  for (Elem x = 0; x < n && assoc_ok; ++x)
    for (Elem y = 0; y < n && assoc_ok; ++y)
      for (Elem z = 0; z < n && assoc_ok; ++z)
        if (jn(x, jn(y, z)) != jn(jn(x, y), z)) {
          assoc_ok = false;
          out.violations.push_back(
              {Kind::NotAssociative,
               {spec.elements[x], spec.elements[y], spec.elements[z]},
               "join(x,join(y,z)) != join(join(x,y),z)"});
        }

  if (out.violations.empty())
    out.value = Monoid::from_validated_parts(spec.elements, neutral, std::move(table));
  return out;
}

/// Raw data of an existing monoid, for serialization and re-validation.
inline MonoidSpec spec_of(const Monoid& m) {
  MonoidSpec s;
  s.elements = m.labels();
  s.neutral = m.label(m.neutral());
  s.join.resize(m.size());
  for (Elem i = 0; i < m.size(); ++i) {
    s.join[i].reserve(m.size());
    for (Elem j = 0; j < m.size(); ++j) s.join[i].push_back(m.label(m.join(i, j)));
  }
  return s;
}

namespace detail {

inline std::string subset_label(std::uint32_t mask,
                                const std::vector<std::string>& gen_names) {
  std::string s = "{";
  bool first = true;
  for (std::size_t g = 0; g < gen_names.size(); ++g) {
    if (mask & (1u << g)) {
      if (!first) s += ",";
      s += gen_names[g];
      first = false;
    }
  }
  return s + "}";
}

/// Builds the monoid whose elements are the given union-closed set of masks
/// (must contain 0), with join = bitwise or. Shared by the powerset, random
/// submonoid, and set-model constructors.
inline Monoid monoid_from_masks(const std::vector<std::uint32_t>& masks,
                                const std::vector<std::string>& gen_names) {
  const std::size_t n = masks.size();
  std::unordered_map<std::uint32_t, Elem> pos;
  for (Elem i = 0; i < n; ++i) pos[masks[i]] = i;
  std::vector<std::string> labels(n);
  for (Elem i = 0; i < n; ++i) labels[i] = subset_label(masks[i], gen_names);
  std::vector<Elem> table(n * n);
  for (Elem i = 0; i < n; ++i)
    for (Elem j = 0; j < n; ++j) {
      auto it = pos.find(masks[i] | masks[j]);
      if (it == pos.end()) throw std::logic_error("mask family not union-closed");
      table[i * n + j] = it->second;
    }
  return Monoid::from_validated_parts(std::move(labels), pos.at(0), std::move(table));
}

inline std::vector<std::string> default_generator_names(int n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (int g = 1; g <= n; ++g) names.push_back(std::to_string(g));
  return names;
}

}  // namespace detail

/// The powerset of n generators under union; neutral element "{}". Labels
/// follow the subset notation "{1,3}" with generators named 1..n.
inline Monoid free_semilattice(int n_generators,
                               std::size_t max_elements = Monoid::kDefaultMaxElements) {
  if (n_generators < 1 || n_generators > 16)
    throw std::invalid_argument("free_semilattice: generator count must be in 1..16");
  const std::size_t n = std::size_t{1} << n_generators;
  if (n > max_elements)
    throw std::invalid_argument("free_semilattice: 2^" + std::to_string(n_generators) +
                                " elements exceeds cap " + std::to_string(max_elements));
  std::vector<std::uint32_t> masks(n);
  for (std::size_t i = 0; i < n; ++i) masks[i] = static_cast<std::uint32_t>(i);
  return detail::monoid_from_masks(masks, detail::default_generator_names(n_generators));
}

/// Deterministic random join-closed subset of the free semilattice on
/// n_generators, grown until it holds at least n_keep elements (clamped to
/// 2^n_generators). Closure under union is maintained incrementally, so the
/// result is a monoid by construction.
inline Monoid random_submonoid(int n_generators, std::size_t n_keep, std::uint64_t seed) {
  if (n_generators < 1 || n_generators > 16)
    throw std::invalid_argument("random_submonoid: generator count must be in 1..16");
  if (n_keep < 1) throw std::invalid_argument("random_submonoid: n_keep must be >= 1");
  const std::uint32_t full = (1u << n_generators) - 1u;
  const std::size_t reachable = std::size_t{1} << n_generators;
  const std::size_t target = n_keep < reachable ? n_keep : reachable;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> dist(0, full);
  std::set<std::uint32_t> closed = {0u};
  while (closed.size() < target) {
    const std::uint32_t fresh = dist(rng);
    std::vector<std::uint32_t> frontier = {fresh};
    while (!frontier.empty()) {
      const std::uint32_t m = frontier.back();
      frontier.pop_back();
      if (!closed.insert(m).second) continue;
      for (std::uint32_t c : closed)
        if (!closed.count(m | c)) frontier.push_back(m | c);
    }
  }
  std::vector<std::uint32_t> masks(closed.begin(), closed.end());
  return detail::monoid_from_masks(masks, detail::default_generator_names(n_generators));
}

}  // namespace infodist

#endif  // INFODIST_MONOID_HPP
