#ifndef INFODIST_IO_HPP
#define INFODIST_IO_HPP

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "infodist/category.hpp"
#include "infodist/hom.hpp"
#include "infodist/length.hpp"
#include "infodist/monoid.hpp"
#include "infodist/rational.hpp"
#include "infodist/set_model.hpp"

namespace infodist {

using Json = nlohmann::json;

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// All numbers in instance files are exact rationals: JSON integers or
// strings like "3/4". Floating literals are rejected so that files stay
// bit-exact.
inline Rat rat_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Rat::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      throw IoError(where + ": " + e.what());
    }
  }
  throw IoError(where + ": expected an integer or a rational string like \"3/4\"");
}

inline Json rat_to_json(const Rat& r) { return Json(r.to_string()); }

/// A fully loaded instance: validated monoid and length, plus the measured-
/// space view when the file used the "sets" constructor.
struct LoadedInstance {
  Monoid monoid;
  LengthFn<Rat> length;
  std::optional<SetInstance<Rat>> set_model;
};

struct InstanceViolation {
  std::string where;  // "monoid", "length", "schema"
  std::string message;
};

namespace detail {

inline LengthMode mode_from_json(const Json& j) {
  if (!j.contains("mode")) return LengthMode::monotone;
  const std::string m = j.at("mode").get<std::string>();
  if (m == "monotone") return LengthMode::monotone;
  if (m == "nonmonotone") return LengthMode::nonmonotone;
  throw IoError("mode must be \"monotone\" or \"nonmonotone\"");
}

inline std::string describe(const MonoidViolation& v) {
  std::string s = v.message;
  if (!v.witness.empty()) {
    s += " [witness:";
    for (const auto& w : v.witness) s += " " + w;
    s += "]";
  }
  return s;
}

inline std::string describe(const LengthViolation& v) {
  std::string s = v.message;
  if (!v.witness.empty()) {
    s += " [witness:";
    for (const auto& w : v.witness) s += " " + w;
    s += "]";
  }
  return s;
}

}  // namespace detail

/// Parses and validates an instance document. The "join" section is either
/// an explicit label matrix, {"powerset": n}, or {"sets": {...}}; the
/// "length" section may be omitted only for "sets", where the measure is the
/// default. Axioms are checked on every path that takes raw user data.
inline Validated<LoadedInstance, InstanceViolation> load_instance(const Json& j) {
  Validated<LoadedInstance, InstanceViolation> out;
  auto fail = [&](const std::string& where, const std::string& msg) {
    out.violations.push_back({where, msg});
  };
  try {
    if (!j.is_object() || !j.contains("join")) {
      fail("schema", "instance needs a \"join\" section");
      return out;
    }
    const Json& join = j.at("join");
    const LengthMode mode = detail::mode_from_json(j);

    std::optional<Monoid> monoid;
    std::optional<SetInstance<Rat>> set_model;

    if (join.is_object() && join.contains("powerset")) {
      monoid = free_semilattice(join.at("powerset").get<int>());
    } else if (join.is_object() && join.contains("sets")) {
      const Json& sj = join.at("sets");
      std::vector<std::pair<std::string, Rat>> points;
      for (const auto& [name, w] : sj.at("points").items())
        points.emplace_back(name, rat_from_json(w, "weight of point " + name));
      std::vector<std::vector<std::string>> family;
      for (const auto& s : sj.at("family")) family.push_back(s.get<std::vector<std::string>>());
      set_model = build_set_instance<Rat>(family, points);
      monoid = set_model->monoid;
    } else if (join.is_array()) {
      MonoidSpec spec;
      if (!j.contains("elements") || !j.contains("neutral")) {
        fail("schema", "explicit join tables need \"elements\" and \"neutral\"");
        return out;
      }
      spec.elements = j.at("elements").get<std::vector<std::string>>();
      spec.neutral = j.at("neutral").get<std::string>();
      for (const auto& row : join) spec.join.push_back(row.get<std::vector<std::string>>());
      auto res = validate_monoid(spec);
      if (!res.ok()) {
        for (const auto& v : res.violations) fail("monoid", detail::describe(v));
        return out;
      }
      monoid = std::move(*res.value);
    } else {
      fail("schema", "\"join\" must be a matrix, {\"powerset\": n} or {\"sets\": {...}}");
      return out;
    }

    std::vector<Rat> values;
    if (j.contains("length")) {
      const Json& lj = j.at("length");
      values.assign(monoid->size(), Rat(0));
      std::vector<bool> seen(monoid->size(), false);
      for (const auto& [label, v] : lj.items()) {
        const auto e = monoid->find(label);
        if (!e) {
          fail("length", "length names unknown element '" + label + "'");
          return out;
        }
        values[*e] = rat_from_json(v, "length of " + label);
        seen[*e] = true;
      }
      for (Elem e = 0; e < monoid->size(); ++e)
        if (!seen[e]) {
          fail("length", "missing length for element '" + monoid->label(e) + "'");
          return out;
        }
    } else if (set_model) {
      values = set_model->length.values;
    } else {
      fail("schema", "instance needs a \"length\" section");
      return out;
    }

    auto lres = validate_length(*monoid, std::move(values), mode);
    if (!lres.ok()) {
      for (const auto& v : lres.violations) fail("length", detail::describe(v));
      return out;
    }

    out.value = LoadedInstance{std::move(*monoid), std::move(*lres.value), std::move(set_model)};
  } catch (const Json::exception& e) {
    fail("schema", e.what());
  } catch (const IoError& e) {
    fail("schema", e.what());
  } catch (const std::exception& e) {
    fail("schema", e.what());
  }
  return out;
}

inline Validated<LoadedInstance, InstanceViolation> load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    Validated<LoadedInstance, InstanceViolation> out;
    out.violations.push_back({"schema", "cannot open '" + path + "'"});
    return out;
  }
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    Validated<LoadedInstance, InstanceViolation> out;
    out.violations.push_back({"schema", std::string("json parse error: ") + e.what()});
    return out;
  }
  return load_instance(j);
}

/// Serializes in explicit form (element list, neutral, full join matrix,
/// length, mode) regardless of how the instance was constructed.
inline Json instance_to_json(const Monoid& m, const LengthFn<Rat>& l) {
  Json j;
  j["elements"] = m.labels();
  j["neutral"] = m.label(m.neutral());
  Json rows = Json::array();
  for (Elem i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (Elem k = 0; k < m.size(); ++k) row.push_back(m.label(m.join(i, k)));
    rows.push_back(std::move(row));
  }
  j["join"] = std::move(rows);
  Json lj = Json::object();
  for (Elem e = 0; e < m.size(); ++e) lj[m.label(e)] = rat_to_json(l.values[e]);
  j["length"] = std::move(lj);
  j["mode"] = l.mode == LengthMode::monotone ? "monotone" : "nonmonotone";
  return j;
}

/// Semantic identity up to element order: same labels, same joins by label,
/// same lengths by label, same mode.
inline bool semantically_equal(const Monoid& ma, const LengthFn<Rat>& la, const Monoid& mb,
                               const LengthFn<Rat>& lb) {
  if (ma.size() != mb.size() || la.mode != lb.mode) return false;
  for (Elem a = 0; a < ma.size(); ++a) {
    const auto b = mb.find(ma.label(a));
    if (!b) return false;
    if (!(la.values[a] == lb.values[*b])) return false;
  }
  if (mb.label(mb.neutral()) != ma.label(ma.neutral())) return false;
  for (Elem x = 0; x < ma.size(); ++x)
    for (Elem y = 0; y < ma.size(); ++y) {
      const auto bx = mb.find(ma.label(x)), by = mb.find(ma.label(y));
      if (ma.label(ma.join(x, y)) != mb.label(mb.join(*bx, *by))) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Category files
// ---------------------------------------------------------------------------

struct LoadedCategory {
  Category<Rat> category;
  std::vector<LoadedInstance> objects;
};

/// Category document: "objects" is a list of inline instances or
/// {"file": path}; "morphisms" is "enumerate" (default) or per-pair explicit
/// map lists keyed "i->j"; "lengths" is "derive" (default: least Lipschitz
/// constants against the objects' own d tables) or per-pair overrides
/// {"i->j": {"ell": [...], "dist": [[...]]}} in canonical hom order.
inline Validated<LoadedCategory, InstanceViolation> load_category(const Json& j,
                                                                  const std::string& base_dir) {
  Validated<LoadedCategory, InstanceViolation> out;
  auto fail = [&](const std::string& where, const std::string& msg) {
    out.violations.push_back({where, msg});
  };
  try {
    if (!j.is_object() || !j.contains("objects")) {
      fail("schema", "category needs an \"objects\" list");
      return out;
    }
    std::vector<LoadedInstance> objects;
    for (const Json& oj : j.at("objects")) {
      Validated<LoadedInstance, InstanceViolation> res =
          oj.is_object() && oj.contains("file")
              ? load_instance_file(base_dir + oj.at("file").get<std::string>())
              : load_instance(oj);
      if (!res.ok()) {
        for (const auto& v : res.violations)
          fail("objects[" + std::to_string(objects.size()) + "]." + v.where, v.message);
        return out;
      }
      objects.push_back(std::move(*res.value));
    }
    const std::size_t k = objects.size();
    if (k == 0) {
      fail("schema", "category needs at least one object");
      return out;
    }

    // object-level tables: d of each object's length, verified to satisfy
    // the join-compatibility inequality (reject otherwise)
    std::vector<Monoid> monoids;
    std::vector<DistanceTable<Rat>> tables;
    for (std::size_t i = 0; i < k; ++i) {
      monoids.push_back(objects[i].monoid);
      tables.push_back(distance_table(objects[i].monoid, objects[i].length, DistKind::d));
      if (!check_nabla_table(objects[i].monoid, tables.back(), Rat(0)).holds()) {
        fail("objects[" + std::to_string(i) + "]",
             "object d table violates the join-compatibility inequality; project it first "
             "(fixpoint) or supply per-homset overrides");
        return out;
      }
    }

    const bool enumerate =
        !j.contains("morphisms") ||
        (j.at("morphisms").is_string() && j.at("morphisms").get<std::string>() == "enumerate");

    std::optional<Category<Rat>> cat;
    if (enumerate) {
      cat = make_auto_category<Rat>(monoids, tables);
    } else {
      const Json& mj = j.at("morphisms");
      std::vector<HomSet<Rat>> sets(k * k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l) {
          const std::string key = std::to_string(i) + "->" + std::to_string(l);
          HomSet<Rat>& hs = sets[i * k + l];
          std::vector<Hom> homs;
          // constant-neutral hom is always required
          homs.push_back(constant_hom(monoids[i], monoids[l], monoids[l].neutral()));
          if (i == l) homs.push_back(identity_hom(monoids[i]));
          if (mj.contains(key))
            for (const Json& mapj : mj.at(key)) {
              std::vector<Elem> map;
              for (const auto& lbl : mapj) {
                const auto e = monoids[l].find(lbl.get<std::string>());
                if (!e) {
                  fail("morphisms." + key, "unknown target element '" + lbl.get<std::string>() + "'");
                  return out;
                }
                map.push_back(*e);
              }
              auto hv = validate_hom(monoids[i], monoids[l], std::move(map));
              if (!hv.ok()) {
                fail("morphisms." + key, "map is not join-preserving");
                return out;
              }
              homs.push_back(std::move(*hv.value));
            }
          std::sort(homs.begin(), homs.end());
          homs.erase(std::unique(homs.begin(), homs.end()), homs.end());
          hs.homs = std::move(homs);
          hs.hom_monoid = detail::build_hom_monoid(monoids[l], hs.homs);
          hs.neutral_hom = hs.hom_monoid.neutral();
          // default lengths: least Lipschitz constants, enveloped
          std::vector<Rat> lip;
          for (const Hom& h : hs.homs) {
            const Ext<Rat> lp = ell_prime(monoids[i], monoids[l], h, tables[i], tables[l]);
            if (lp.infinite) {
              fail("morphisms." + key, "a listed morphism is not uniformly continuous");
              return out;
            }
            lip.push_back(lp.value);
          }
          hs.ell = hom_length(monoids[l], hs.homs, lip);
          hs.dist = distance_table(hs.hom_monoid, LengthFn<Rat>{LengthMode::monotone, hs.ell},
                                   DistKind::d);
        }
      cat.emplace(monoids, std::move(sets));
    }

    // per-homset overrides
    if (j.contains("lengths") && j.at("lengths").is_object()) {
      for (const auto& [key, ov] : j.at("lengths").items()) {
        const auto arrow = key.find("->");
        if (arrow == std::string::npos) {
          fail("lengths", "keys look like \"0->1\"");
          return out;
        }
        const std::size_t i = std::stoul(key.substr(0, arrow));
        const std::size_t l = std::stoul(key.substr(arrow + 2));
        if (i >= k || l >= k) {
          fail("lengths." + key, "object index out of range");
          return out;
        }
        HomSet<Rat>& hs = cat->homset(i, l);
        if (ov.contains("ell")) {
          std::vector<Rat> ell;
          for (const auto& v : ov.at("ell")) ell.push_back(rat_from_json(v, "lengths." + key));
          if (ell.size() != hs.homs.size()) {
            fail("lengths." + key, "\"ell\" needs one value per morphism (canonical order)");
            return out;
          }
          auto lv = validate_length(hs.hom_monoid, ell, LengthMode::monotone);
          if (!lv.ok()) {
            fail("lengths." + key, "override is not a monotone length function on the hom set");
            return out;
          }
          hs.ell = std::move(ell);
          hs.dist = distance_table(hs.hom_monoid, LengthFn<Rat>{LengthMode::monotone, hs.ell},
                                   DistKind::d);
        }
        if (ov.contains("dist")) {
          DistanceTable<Rat> d = DistanceTable<Rat>::zeros(hs.homs.size());
          const Json& rows = ov.at("dist");
          if (rows.size() != hs.homs.size()) {
            fail("lengths." + key, "\"dist\" must be a square matrix over the morphisms");
            return out;
          }
          for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < rows.size(); ++c)
              d.cells[r * d.n + c] = rat_from_json(rows[r][c], "lengths." + key);
          if (!table_violations(d).empty()) {
            fail("lengths." + key, "\"dist\" must be positive, symmetric, nilpotent");
            return out;
          }
          hs.dist = std::move(d);
        }
      }
    }

    auto errs = validate_category(*cat);
    for (const auto& e : errs) fail(e.where, e.message);
    if (!out.violations.empty()) return out;

    out.value = LoadedCategory{std::move(*cat), std::move(objects)};
  } catch (const Json::exception& e) {
    fail("schema", e.what());
  } catch (const std::exception& e) {
    fail("schema", e.what());
  }
  return out;
}

inline Validated<LoadedCategory, InstanceViolation> load_category_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    Validated<LoadedCategory, InstanceViolation> out;
    out.violations.push_back({"schema", "cannot open '" + path + "'"});
    return out;
  }
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    Validated<LoadedCategory, InstanceViolation> out;
    out.violations.push_back({"schema", std::string("json parse error: ") + e.what()});
    return out;
  }
  const auto slash = path.find_last_of('/');
  const std::string base = slash == std::string::npos ? "" : path.substr(0, slash + 1);
  return load_category(j, base);
}

}  // namespace infodist

#endif  // INFODIST_IO_HPP
