#ifndef INFODIST_BOOLEXPR_HPP
#define INFODIST_BOOLEXPR_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infodist/length.hpp"
#include "infodist/monoid.hpp"

namespace infodist {

/// Expression in the free Boolean algebra generated by the monoid elements.
/// Atoms are elements; the algebra also has constants 0 and 1, complement,
/// n-ary union/intersection and binary difference.
struct BoolExpr {
  enum class Kind { atom, zero, one, complement, set_union, intersection, difference };

  Kind kind = Kind::zero;
  Elem atom_elem = 0;
  std::vector<BoolExpr> children;

  static BoolExpr atom(Elem e) {
    BoolExpr b;
    b.kind = Kind::atom;
    b.atom_elem = e;
    return b;
  }
  static BoolExpr zero() { return BoolExpr{}; }
  static BoolExpr one() {
    BoolExpr b;
    b.kind = Kind::one;
    return b;
  }
  static BoolExpr complement(BoolExpr c) {
    BoolExpr b;
    b.kind = Kind::complement;
    b.children.push_back(std::move(c));
    return b;
  }
  static BoolExpr make(Kind k, std::vector<BoolExpr> cs) {
    BoolExpr b;
    b.kind = k;
    b.children = std::move(cs);
    return b;
  }
  static BoolExpr set_union(BoolExpr a, BoolExpr b) {
    return make(Kind::set_union, {std::move(a), std::move(b)});
  }
  static BoolExpr intersection(BoolExpr a, BoolExpr b) {
    return make(Kind::intersection, {std::move(a), std::move(b)});
  }
  static BoolExpr difference(BoolExpr a, BoolExpr b) {
    return make(Kind::difference, {std::move(a), std::move(b)});
  }
};

class ExprError : public std::runtime_error {
 public:
  enum class Kind { syntax, unknown_element, too_many_atoms };

  ExprError(Kind k, std::size_t pos, std::string detail)
      : std::runtime_error(detail), kind(k), position(pos) {}

  Kind kind;
  std::size_t position;
};

namespace detail {

// Grammar, loosest to tightest: union '|', difference '\', intersection '&',
// complement '~'. Atoms are maximal runs of characters outside the operator
// set; the bare tokens 0 and 1 are the Boolean constants.
class ExprParser {
 public:
  ExprParser(std::string_view text, const Monoid& m) : text_(text), m_(m) {}

  BoolExpr parse() {
    BoolExpr e = parse_union();
    skip_ws();
    if (pos_ != text_.size())
      throw ExprError(ExprError::Kind::syntax, pos_, "unexpected trailing input");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  BoolExpr parse_union() {
    BoolExpr e = parse_difference();
    while (eat('|')) e = BoolExpr::set_union(std::move(e), parse_difference());
    return e;
  }
  BoolExpr parse_difference() {
    BoolExpr e = parse_intersection();
    while (eat('\\')) e = BoolExpr::difference(std::move(e), parse_intersection());
    return e;
  }
  BoolExpr parse_intersection() {
    BoolExpr e = parse_unary();
    while (eat('&')) e = BoolExpr::intersection(std::move(e), parse_unary());
    return e;
  }
  BoolExpr parse_unary() {
    if (eat('~')) return BoolExpr::complement(parse_unary());
    return parse_primary();
  }
  BoolExpr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size())
      throw ExprError(ExprError::Kind::syntax, pos_, "unexpected end of expression");
    if (eat('(')) {
      BoolExpr e = parse_union();
      if (!eat(')')) throw ExprError(ExprError::Kind::syntax, pos_, "expected ')'");
      return e;
    }
    const std::size_t start = pos_;
    auto is_op = [](char c) {
      return c == '(' || c == ')' || c == '&' || c == '|' || c == '\\' || c == '~';
    };
    while (pos_ < text_.size() && !is_op(text_[pos_]) &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) throw ExprError(ExprError::Kind::syntax, pos_, "expected an atom");
    const std::string label(text_.substr(start, pos_ - start));
    if (label == "0") return BoolExpr::zero();
    if (label == "1") return BoolExpr::one();
    auto e = m_.find(label);
    if (!e)
      throw ExprError(ExprError::Kind::unknown_element, start,
                      "unknown element '" + label + "'");
    return BoolExpr::atom(*e);
  }

  std::string_view text_;
  const Monoid& m_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline BoolExpr parse_bool_expr(std::string_view text, const Monoid& m) {
  return detail::ExprParser(text, m).parse();
}

/// Distinct atoms in order of first appearance. Two occurrences of the same
/// element are the same Boolean generator.
inline std::vector<Elem> expr_atoms(const BoolExpr& e) {
  std::vector<Elem> atoms;
  auto walk = [&](auto&& self, const BoolExpr& node) -> void {
    if (node.kind == BoolExpr::Kind::atom) {
      if (std::find(atoms.begin(), atoms.end(), node.atom_elem) == atoms.end())
        atoms.push_back(node.atom_elem);
    }
    for (const auto& c : node.children) self(self, c);
  };
  walk(walk, e);
  return atoms;
}

namespace detail {

inline bool eval_truth(const BoolExpr& e, const std::vector<Elem>& atoms, std::uint32_t mask) {
  switch (e.kind) {
    case BoolExpr::Kind::atom: {
      const auto it = std::find(atoms.begin(), atoms.end(), e.atom_elem);
      return (mask >> (it - atoms.begin())) & 1u;
    }
    case BoolExpr::Kind::zero: return false;
    case BoolExpr::Kind::one: return true;
    case BoolExpr::Kind::complement: return !eval_truth(e.children[0], atoms, mask);
    case BoolExpr::Kind::set_union:
      for (const auto& c : e.children)
        if (eval_truth(c, atoms, mask)) return true;
      return false;
    case BoolExpr::Kind::intersection:
      for (const auto& c : e.children)
        if (!eval_truth(c, atoms, mask)) return false;
      return true;
    case BoolExpr::Kind::difference:
      return eval_truth(e.children[0], atoms, mask) && !eval_truth(e.children[1], atoms, mask);
  }
  return false;
}

}  // namespace detail

inline constexpr std::size_t kMaxZetaAtoms = 16;

/// One product of literals: the intersection of the positive atoms and the
/// complements of the negative atoms.
struct DisjointTerm {
  std::vector<Elem> positives;
  std::vector<Elem> negatives;
};

/// Full-minterm normal form over the expression's own atom set: one term per
/// satisfying truth assignment. Terms are pairwise disjoint by construction
/// and their disjunction is Boolean-equal to the input.
inline std::vector<DisjointTerm> disjoint_normal_form(const BoolExpr& e) {
  const std::vector<Elem> atoms = expr_atoms(e);
  if (atoms.size() > kMaxZetaAtoms)
    throw ExprError(ExprError::Kind::too_many_atoms, 0,
                    "expression uses more than " + std::to_string(kMaxZetaAtoms) +
                        " distinct atoms");
  std::vector<DisjointTerm> terms;
  const std::uint32_t count = 1u << atoms.size();
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    if (!detail::eval_truth(e, atoms, mask)) continue;
    DisjointTerm t;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      ((mask >> i) & 1u ? t.positives : t.negatives).push_back(atoms[i]);
    terms.push_back(std::move(t));
  }
  return terms;
}

/// Signed measure of a pure literal product by inclusion-exclusion: with
/// y the join of the negative atoms,
///   zeta = sum over subsets S of the positives of (-1)^(|S|+1) l(y v S).
template <class V>
V zeta_literal_term(const Monoid& m, const LengthFn<V>& l, const DisjointTerm& t) {
  const Elem y = m.join_all(t.negatives.begin(), t.negatives.end());
  const std::size_t k = t.positives.size();
  V total = NumTraits<V>::zero();
  for (std::uint32_t sub = 0; sub < (1u << k); ++sub) {
    Elem j = y;
    int bits = 0;
    for (std::size_t i = 0; i < k; ++i)
      if ((sub >> i) & 1u) {
        j = m.join(j, t.positives[i]);
        ++bits;
      }
    if (bits % 2 == 1) total += l.values[j];
    else total -= l.values[j];
  }
  return total;
}

/// The signed measure of a Boolean expression: normalize to disjoint literal
/// products and add up their inclusion-exclusion values. Note zeta(1) = 0 by
/// definition, so complements are measured relative to nothing: zeta(~y) is
/// -zeta(y), not the measure of a complement set.
template <class V>
V zeta(const Monoid& m, const LengthFn<V>& l, const BoolExpr& e) {
  V total = NumTraits<V>::zero();
  for (const DisjointTerm& t : disjoint_normal_form(e)) total += zeta_literal_term(m, l, t);
  return total;
}

template <class V>
V zeta(const Monoid& m, const LengthFn<V>& l, std::string_view text) {
  return zeta(m, l, parse_bool_expr(text, m));
}

namespace detail {

// Applies the constant rules to a node whose children are already folded.
inline BoolExpr fold_node(BoolExpr out) {
  using K = BoolExpr::Kind;
  auto is = [](const BoolExpr& x, K k) { return x.kind == k; };
  switch (out.kind) {
    case K::complement:
      if (is(out.children[0], K::zero)) return BoolExpr::one();
      if (is(out.children[0], K::one)) return BoolExpr::zero();
      return out;
    case K::set_union: {
      std::vector<BoolExpr> kept;
      for (auto& c : out.children) {
        if (is(c, K::one)) return BoolExpr::one();
        if (!is(c, K::zero)) kept.push_back(std::move(c));
      }
      if (kept.empty()) return BoolExpr::zero();
      if (kept.size() == 1) return kept[0];
      return BoolExpr::make(K::set_union, std::move(kept));
    }
    case K::intersection: {
      std::vector<BoolExpr> kept;
      for (auto& c : out.children) {
        if (is(c, K::zero)) return BoolExpr::zero();
        if (!is(c, K::one)) kept.push_back(std::move(c));
      }
      if (kept.empty()) return BoolExpr::one();
      if (kept.size() == 1) return kept[0];
      return BoolExpr::make(K::intersection, std::move(kept));
    }
    case K::difference:
      if (is(out.children[0], K::zero) || is(out.children[1], K::one)) return BoolExpr::zero();
      if (is(out.children[1], K::zero)) return out.children[0];
      return out;
    default: return out;
  }
}

inline BoolExpr simplify(const BoolExpr& e) {
  using K = BoolExpr::Kind;
  if (e.kind == K::atom || e.kind == K::zero || e.kind == K::one) return e;
  BoolExpr out;
  out.kind = e.kind;
  out.children.reserve(e.children.size());
  for (const auto& c : e.children) out.children.push_back(simplify(c));
  return fold_node(std::move(out));
}

inline BoolExpr substitute(const BoolExpr& e, Elem target, bool value) {
  using K = BoolExpr::Kind;
  switch (e.kind) {
    case K::atom:
      if (e.atom_elem == target) return value ? BoolExpr::one() : BoolExpr::zero();
      return e;
    case K::zero:
    case K::one: return e;
    default: break;
  }
  BoolExpr out;
  out.kind = e.kind;
  out.children.reserve(e.children.size());
  for (const auto& c : e.children) out.children.push_back(substitute(c, target, value));
  return fold_node(std::move(out));
}

}  // namespace detail

/// Independent evaluation route used to cross-check zeta: Shannon expansion
/// over the atom list, pruned at constant cofactors, which yields a coarser
/// disjoint cover by partial literal products instead of full minterms.
template <class V>
V zeta_by_cofactors(const Monoid& m, const LengthFn<V>& l, const BoolExpr& e) {
  const std::vector<Elem> atoms = expr_atoms(e);
  if (atoms.size() > kMaxZetaAtoms)
    throw ExprError(ExprError::Kind::too_many_atoms, 0, "expression uses too many atoms");

  V total = NumTraits<V>::zero();
  DisjointTerm literals;
  auto expand = [&](auto&& self, const BoolExpr& node, std::size_t idx) -> void {
    // node arrives constant-folded, so a non-constant node still has an
    // unsubstituted atom below it
    if (node.kind == BoolExpr::Kind::zero) return;
    if (node.kind == BoolExpr::Kind::one) {
      total += zeta_literal_term(m, l, literals);
      return;
    }
    if (idx >= atoms.size())
      throw std::logic_error("cofactor expansion left a non-constant residue");
    const Elem a = atoms[idx];
    literals.positives.push_back(a);
    self(self, detail::substitute(node, a, true), idx + 1);
    literals.positives.pop_back();
    literals.negatives.push_back(a);
    self(self, detail::substitute(node, a, false), idx + 1);
    literals.negatives.pop_back();
  };
  expand(expand, detail::simplify(e), 0);
  return total;
}

/// Spot-checks the signed-measure identities on concrete expressions built
/// from the given atoms: modularity, complement negation, the difference
/// identity, idempotence, and invariance under inserting a redundant atom.
struct SignedMeasureReport {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

template <class V>
SignedMeasureReport check_signed_measure(const Monoid& m, const LengthFn<V>& l,
                                         std::vector<Elem> sample_atoms = {}) {
  if (sample_atoms.empty())
    for (Elem e = 0; e < std::min<std::size_t>(m.size(), 6); ++e) sample_atoms.push_back(e);

  SignedMeasureReport rep;
  auto expect = [&](bool cond, const std::string& what) {
    ++rep.checked;
    if (!cond) {
      rep.ok = false;
      rep.failures.push_back(what);
    }
  };
  auto modular = [&](const BoolExpr& x, const BoolExpr& y, const std::string& tag) {
    const V zx = zeta(m, l, x), zy = zeta(m, l, y);
    const V zi = zeta(m, l, BoolExpr::intersection(x, y));
    const V zu = zeta(m, l, BoolExpr::set_union(x, y));
    const V zd = zeta(m, l, BoolExpr::difference(x, y));
    expect(zi == zx + zy - zu, tag + ": intersection != x + y - union");
    expect(zd == zu - zy, tag + ": difference != union - y");
  };

  for (Elem a : sample_atoms) {
    const BoolExpr x = BoolExpr::atom(a);
    expect(zeta(m, l, BoolExpr::complement(x)) == -zeta(m, l, x),
           "complement of " + m.label(a));
    expect(zeta(m, l, BoolExpr::set_union(x, x)) == zeta(m, l, x),
           "union idempotence at " + m.label(a));
    for (Elem b : sample_atoms) {
      modular(x, BoolExpr::atom(b), m.label(a) + "," + m.label(b));
      // redundant fresh atom: e == e & (c | ~c)
      for (Elem c : sample_atoms) {
        if (c == a || c == b) continue;
        const BoolExpr e = BoolExpr::intersection(x, BoolExpr::atom(b));
        const BoolExpr padded = BoolExpr::intersection(
            e, BoolExpr::set_union(BoolExpr::atom(c),
                                   BoolExpr::complement(BoolExpr::atom(c))));
        expect(zeta(m, l, padded) == zeta(m, l, e),
               "redundant atom " + m.label(c) + " changed zeta");
        break;  // one padding atom per pair is enough
      }
    }
  }
  // compound operands
  if (sample_atoms.size() >= 3) {
    const BoolExpr a = BoolExpr::atom(sample_atoms[0]);
    const BoolExpr b = BoolExpr::atom(sample_atoms[1]);
    const BoolExpr c = BoolExpr::atom(sample_atoms[2]);
    modular(BoolExpr::set_union(a, b), BoolExpr::intersection(b, c), "compound u/i");
    modular(BoolExpr::difference(a, b), BoolExpr::complement(c), "compound d/c");
  }
  return rep;
}

}  // namespace infodist

#endif  // INFODIST_BOOLEXPR_HPP
