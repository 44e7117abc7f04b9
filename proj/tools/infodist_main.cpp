// Command-line front end: validation, distance tables, the inequality
// battery, closures, fixpoints, Boolean measures, quotients, hom-set
// machinery and the Banach-Mazur-like distance, over JSON instance files.
// Machine-readable JSON goes to stdout, a short human summary to stderr.
// Exit codes: 0 success, 1 validation/computation failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "infodist/boolexpr.hpp"
#include "infodist/category.hpp"
#include "infodist/checks.hpp"
#include "infodist/closures.hpp"
#include "infodist/fixpoint.hpp"
#include "infodist/io.hpp"
#include "infodist/quotient.hpp"
#include "infodist/set_model.hpp"

namespace {

using namespace infodist;

bool g_float = false;

Json num(const Rat& r) {
  if (g_float) return Json(r.to_double());
  return rat_to_json(r);
}

Json table_json(const Monoid& m, const DistanceTable<Rat>& t) {
  Json rows = Json::array();
  for (Elem i = 0; i < t.n; ++i) {
    Json row = Json::array();
    for (Elem j = 0; j < t.n; ++j) row.push_back(num(t.at(i, j)));
    rows.push_back(std::move(row));
  }
  Json out;
  out["kind"] = to_string(t.kind);
  out["elements"] = m.labels();
  out["values"] = std::move(rows);
  return out;
}

Json length_json(const Monoid& m, const std::vector<Rat>& values) {
  Json out = Json::object();
  for (Elem e = 0; e < m.size(); ++e) out[m.label(e)] = num(values[e]);
  return out;
}

Json flag_json(const Monoid& m, const IneqFlag& f) {
  Json out;
  switch (f.state) {
    case FlagState::holds: out["holds"] = true; break;
    case FlagState::fails: out["holds"] = false; break;
    case FlagState::skipped: out["holds"] = nullptr; break;
  }
  if (f.fails()) {
    Json w = Json::array();
    for (Elem e : f.witness) w.push_back(m.label(e));
    out["witness"] = std::move(w);
  }
  return out;
}

Json report_json(const Monoid& m, const InequalityReport<Rat>& rep) {
  Json out;
  out["sampled"] = rep.sampled;
  out["delta_d"] = flag_json(m, rep.delta_d);
  out["second_delta_d"] = flag_json(m, rep.second_delta_d);
  out["nabla_d"] = flag_json(m, rep.nabla_d);
  out["weak_nabla_d"] = flag_json(m, rep.weak_nabla_d);
  out["very_weak_nabla_d"] = flag_json(m, rep.very_weak_nabla_d);
  out["very_weak_nabla_sigma"] = flag_json(m, rep.very_weak_nabla_sigma);
  out["delta_increasing"] = flag_json(m, rep.delta_increasing);
  out["intersection_increasing"] = flag_json(m, rep.intersection_increasing);
  out["delta_sigma"] = flag_json(m, rep.delta_sigma);
  out["nabla_sigma"] = flag_json(m, rep.nabla_sigma);
  return out;
}

void emit(const Json& j, const std::string& summary) {
  std::cout << j.dump(2) << std::endl;
  std::cerr << summary << std::endl;
}

LoadedInstance load_or_exit(const std::string& path) {
  auto res = load_instance_file(path);
  if (!res.ok()) {
    Json out;
    out["ok"] = false;
    Json v = Json::array();
    for (const auto& viol : res.violations) v.push_back({{"where", viol.where}, {"message", viol.message}});
    out["violations"] = std::move(v);
    std::cout << out.dump(2) << std::endl;
    std::cerr << "invalid instance '" << path << "'";
    for (const auto& viol : res.violations)
      std::cerr << "\n  " << viol.where << ": " << viol.message;
    std::cerr << std::endl;
    std::exit(1);
  }
  return std::move(*res.value);
}

LoadedCategory load_category_or_exit(const std::string& path) {
  auto res = load_category_file(path);
  if (!res.ok()) {
    Json out;
    out["ok"] = false;
    Json v = Json::array();
    for (const auto& viol : res.violations) v.push_back({{"where", viol.where}, {"message", viol.message}});
    out["violations"] = std::move(v);
    std::cout << out.dump(2) << std::endl;
    std::cerr << "invalid category '" << path << "'";
    for (const auto& viol : res.violations)
      std::cerr << "\n  " << viol.where << ": " << viol.message;
    std::cerr << std::endl;
    std::exit(1);
  }
  return std::move(*res.value);
}

int cmd_validate(const std::string& path) {
  const LoadedInstance inst = load_or_exit(path);
  Json out;
  out["ok"] = true;
  out["elements"] = inst.monoid.size();
  out["neutral"] = inst.monoid.label(inst.monoid.neutral());
  out["mode"] = inst.length.mode == LengthMode::monotone ? "monotone" : "nonmonotone";
  out["set_model"] = inst.set_model.has_value();
  emit(out, "monoid OK, length OK (" + std::string(out["mode"].get<std::string>()) + "), " +
                std::to_string(inst.monoid.size()) + " elements");
  return 0;
}

int cmd_distances(const std::string& path, const std::string& kind, const std::string& p) {
  const LoadedInstance inst = load_or_exit(path);
  Json out;
  if (kind == "sigma_p") {
    const double pd = Rat::parse(p).to_double();
    const DistanceTable<double> t = sigma_p_table(inst.monoid, inst.length, pd);
    Json rows = Json::array();
    for (Elem i = 0; i < t.n; ++i) {
      Json row = Json::array();
      for (Elem j = 0; j < t.n; ++j) row.push_back(t.at(i, j));
      rows.push_back(std::move(row));
    }
    out["kind"] = "sigma_p";
    out["p"] = pd;
    out["elements"] = inst.monoid.labels();
    out["values"] = std::move(rows);
  } else {
    const DistKind dk = kind == "sigma" ? DistKind::sigma : DistKind::d;
    out = table_json(inst.monoid, distance_table(inst.monoid, inst.length, dk));
  }
  emit(out, kind + " table over " + std::to_string(inst.monoid.size()) + " elements");
  return 0;
}

int cmd_check(const std::string& path, int jobs, std::uint64_t seed, std::size_t samples) {
  const LoadedInstance inst = load_or_exit(path);
  CheckOptions opt;
  opt.jobs = jobs;
  opt.seed = seed;
  opt.samples = samples;
  const InequalityReport<Rat> rep = check_inequalities(inst.monoid, inst.length, opt);
  Json out = report_json(inst.monoid, rep);
  std::string s = "flags:";
  auto word = [](const IneqFlag& f) {
    return f.holds() ? "true" : (f.fails() ? "false" : "skipped");
  };
  s += std::string(" delta_d=") + word(rep.delta_d) + " nabla_d=" + word(rep.nabla_d) +
       " delta_sigma=" + word(rep.delta_sigma) + " nabla_sigma=" + word(rep.nabla_sigma);
  emit(out, s);
  return 0;
}

int cmd_close(const std::string& path, const std::string& what, const std::string& kind) {
  const LoadedInstance inst = load_or_exit(path);
  const DistKind dk = kind == "sigma" ? DistKind::sigma : DistKind::d;
  const DistanceTable<Rat> t = distance_table(inst.monoid, inst.length, dk);
  DistanceTable<Rat> closed;
  if (what == "delta") closed = delta_closure(t);
  else if (what == "nabla") closed = nabla_closure(inst.monoid, t);
  else if (what == "delta-first") closed = delta_first_closure(inst.monoid, t);
  else closed = delta_nabla_closure(inst.monoid, t);
  Json out;
  out["input"] = table_json(inst.monoid, t);
  out["closed"] = table_json(inst.monoid, closed);
  out["unchanged"] = closed.cells == t.cells;
  out["delta_holds"] = check_delta_table(closed, Rat(0)).holds();
  out["nabla_holds"] = check_nabla_table(inst.monoid, closed, Rat(0)).holds();
  emit(out, what + " closure of " + kind + (closed.cells == t.cells ? " (unchanged)" : " (shrunk)"));
  return 0;
}

int cmd_fixpoint(const std::string& path, const std::string& variant, const std::string& tol,
                 std::size_t max_iter) {
  const LoadedInstance inst = load_or_exit(path);
  FixVariant v = FixVariant::d;
  if (variant == "sigma") v = FixVariant::sigma;
  else if (variant == "nonmono") v = FixVariant::nonmono;
  FixpointOptions<Rat> opt;
  opt.tol = Rat::parse(tol);
  opt.max_iter = max_iter;
  const FixpointResult<Rat> res = ideal_length(inst.monoid, inst.length, v, opt);
  Json out;
  out["variant"] = variant;
  out["converged"] = res.converged;
  out["iterations"] = res.trace.iterations;
  out["length_inf"] = length_json(inst.monoid, res.length.values);
  out["dist_inf"] = table_json(inst.monoid, res.dist);
  out["delta_holds"] = check_delta_table(res.dist, Rat(0)).holds();
  out["nabla_holds"] = check_nabla_table(inst.monoid, res.dist, Rat(0)).holds();
  if (res.min_shrink_ratio) {
    out["min_shrink_ratio"] = num(*res.min_shrink_ratio);
    out["mean_shrink_ratio"] = res.mean_shrink_ratio;
  }
  if (v == FixVariant::sigma) {
    const SigmaBoundsReport b = sigma_variant_bounds(res.trace);
    out["sigma_bounds_hold"] = b.ok;
  }
  emit(out, "fixpoint (" + variant + "): " + (res.converged ? "converged" : "NOT converged") +
                " after " + std::to_string(res.trace.iterations) + " iteration(s)");
  return res.converged ? 0 : 1;
}

int cmd_zeta(const std::string& path, const std::string& expr) {
  const LoadedInstance inst = load_or_exit(path);
  try {
    const BoolExpr e = parse_bool_expr(expr, inst.monoid);
    const Rat z = zeta(inst.monoid, inst.length, e);
    Json out;
    out["expr"] = expr;
    out["zeta"] = num(z);
    emit(out, "zeta(" + expr + ") = " + z.to_string());
    return 0;
  } catch (const ExprError& e) {
    Json out;
    out["ok"] = false;
    out["error"] = e.what();
    out["position"] = e.position;
    std::cout << out.dump(2) << std::endl;
    std::cerr << "expression error at " << e.position << ": " << e.what() << std::endl;
    return 1;
  }
}

int cmd_quotient(const std::string& path, bool ideal) {
  const LoadedInstance inst = load_or_exit(path);
  DistanceTable<Rat> t = distance_table(inst.monoid, inst.length, DistKind::d);
  if (ideal) t = ideal_length(inst.monoid, inst.length, FixVariant::d).dist;
  auto q = quotient(inst.monoid, t);
  if (!q.ok()) {
    Json out;
    out["ok"] = false;
    Json v = Json::array();
    for (const auto& viol : q.violations) {
      Json w = Json::array();
      for (Elem e : viol.witness) w.push_back(inst.monoid.label(e));
      v.push_back({{"kind", viol.message}, {"witness", std::move(w)}});
    }
    out["violations"] = std::move(v);
    std::cout << out.dump(2) << std::endl;
    std::cerr << "quotient rejected: " << q.violations.front().message
              << (ideal ? "" : " (hint: --ideal projects the table first)") << std::endl;
    return 1;
  }
  const QuotientResult<Rat>& r = *q.value;
  Json out;
  out["ok"] = true;
  out["classes"] = r.quotient.size();
  Json classes = Json::array();
  for (Elem c = 0; c < r.quotient.size(); ++c) {
    Json members = Json::array();
    for (Elem x = 0; x < inst.monoid.size(); ++x)
      if (r.class_of[x] == c) members.push_back(inst.monoid.label(x));
    classes.push_back(std::move(members));
  }
  out["members"] = std::move(classes);
  out["metric"] = table_json(r.quotient, r.metric);
  out["induced_length"] = length_json(r.quotient, r.induced_length.values);
  emit(out, "quotient has " + std::to_string(r.quotient.size()) + " classes (from " +
                std::to_string(inst.monoid.size()) + " elements)");
  return 0;
}

int cmd_hom(const std::string& path, bool run_fixpoint, const std::string& tol,
            std::size_t max_iter) {
  const LoadedCategory lc = load_category_or_exit(path);
  const Category<Rat>& cat = lc.category;
  Json out;
  out["objects"] = cat.object_count();
  Json sets = Json::array();
  for (std::size_t i = 0; i < cat.object_count(); ++i)
    for (std::size_t j = 0; j < cat.object_count(); ++j) {
      const HomSet<Rat>& hs = cat.homset(i, j);
      Json hj;
      hj["src"] = i;
      hj["dst"] = j;
      hj["count"] = hs.homs.size();
      Json maps = Json::array();
      for (const Hom& h : hs.homs) {
        Json mp = Json::array();
        for (Elem x = 0; x < cat.object(i).size(); ++x)
          mp.push_back(cat.object(j).label(h(x)));
        maps.push_back(std::move(mp));
      }
      hj["maps"] = std::move(maps);
      Json ell = Json::array();
      for (const Rat& v : hs.ell) ell.push_back(num(v));
      hj["ell"] = std::move(ell);
      sets.push_back(std::move(hj));
    }
  out["homsets"] = std::move(sets);

  if (run_fixpoint) {
    FixpointOptions<Rat> opt;
    opt.tol = Rat::parse(tol);
    opt.max_iter = max_iter;
    const HomFixpointResult<Rat> res = hom_ideal_length(cat, opt);
    Json fj;
    fj["converged"] = res.converged;
    fj["iterations"] = res.iterations;
    Json limits = Json::array();
    for (std::size_t i = 0; i < cat.object_count(); ++i)
      for (std::size_t j = 0; j < cat.object_count(); ++j) {
        const std::size_t s = cat.set_index(i, j);
        Json lj;
        lj["src"] = i;
        lj["dst"] = j;
        Json ell = Json::array();
        for (const Rat& v : res.ell[s]) ell.push_back(num(v));
        lj["ell_inf"] = std::move(ell);
        limits.push_back(std::move(lj));
      }
    fj["limits"] = std::move(limits);
    out["fixpoint"] = std::move(fj);
    emit(out, "category: " + std::to_string(cat.object_count()) + " objects; hom fixpoint " +
                  (res.converged ? "converged" : "NOT converged") + " after " +
                  std::to_string(res.iterations) + " iteration(s)");
    return res.converged ? 0 : 1;
  }
  emit(out, "category: " + std::to_string(cat.object_count()) + " objects");
  return 0;
}

int cmd_banach_mazur(const std::string& path, bool use_fixpoint) {
  const LoadedCategory lc = load_category_or_exit(path);
  const Category<Rat>& cat = lc.category;
  std::optional<HomFixpointResult<Rat>> fix;
  if (use_fixpoint) fix = hom_ideal_length(cat);
  const std::vector<std::vector<Rat>>* ells = fix ? &fix->ell : nullptr;
  Json out;
  Json rows = Json::array();
  for (std::size_t i = 0; i < cat.object_count(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < cat.object_count(); ++j) {
      const Ext<Rat> p = banach_mazur_product(cat, i, j, ells);
      Json cell;
      cell["product"] = p.infinite ? Json("inf") : num(p.value);
      cell["log"] = p.infinite ? Json("inf") : Json(banach_mazur(cat, i, j, ells));
      row.push_back(std::move(cell));
    }
    rows.push_back(std::move(row));
  }
  out["pairs"] = std::move(rows);
  out["length"] = use_fixpoint ? "ideal" : "category";
  emit(out, "banach-mazur matrix over " + std::to_string(cat.object_count()) + " objects");
  return 0;
}

int cmd_random(int generators, std::size_t keep, std::uint64_t seed, std::int64_t max_len,
               const std::string& out_path) {
  const Monoid m = random_submonoid(generators, keep, seed);
  const LengthFn<Rat> l = random_length_fn(m, seed + 0x9e3779b97f4a7c15ull, max_len);
  const Json j = instance_to_json(m, l);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "cannot write '" << out_path << "'" << std::endl;
      return 1;
    }
    f << j.dump(2) << std::endl;
    std::cerr << "wrote " << m.size() << "-element instance to " << out_path << std::endl;
  } else {
    emit(j, "random instance: " + std::to_string(m.size()) + " elements, seed " +
                std::to_string(seed));
  }
  return 0;
}

int cmd_oracle(const std::string& path, const std::string& expr) {
  const LoadedInstance inst = load_or_exit(path);
  if (!inst.set_model) {
    Json out;
    out["ok"] = false;
    out["error"] = "oracle needs a set-model instance (join given as {\"sets\": ...})";
    std::cout << out.dump(2) << std::endl;
    std::cerr << "not a set-model instance" << std::endl;
    return 1;
  }
  const SetInstance<Rat>& sm = *inst.set_model;
  Json out;
  const std::size_t n = sm.monoid.size();
  Json dd = Json::array(), ss = Json::array();
  for (Elem i = 0; i < n; ++i) {
    Json drow = Json::array(), srow = Json::array();
    for (Elem j = 0; j < n; ++j) {
      drow.push_back(num(oracle_d(sm, i, j)));
      srow.push_back(num(oracle_sigma(sm, i, j)));
    }
    dd.push_back(std::move(drow));
    ss.push_back(std::move(srow));
  }
  out["elements"] = sm.monoid.labels();
  out["oracle_d"] = std::move(dd);
  out["oracle_sigma"] = std::move(ss);
  if (!expr.empty()) {
    try {
      out["expr"] = expr;
      out["oracle_zeta"] = num(oracle_zeta(sm, expr));
    } catch (const std::exception& e) {
      out["expr_error"] = e.what();
      std::cout << out.dump(2) << std::endl;
      std::cerr << "oracle: " << e.what() << std::endl;
      return 1;
    }
  }
  emit(out, "set-model oracle over " + std::to_string(n) + " sets");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"algebraic information distances on finite idempotent monoids"};
  app.require_subcommand(1);
  app.add_flag("--float", g_float, "render values as decimals instead of exact rationals");

  std::string path, kind = "d", p = "2", what = "both", variant = "d", expr, out_path;
  std::string tol = "0";
  std::size_t max_iter = 10000, samples = 100000;
  int jobs = 1, generators = 3;
  std::size_t keep = 4;
  std::int64_t max_len = 8;
  std::uint64_t seed = 1;
  bool ideal = false, run_fix = false, use_fix = false;

  auto* validate = app.add_subcommand("validate", "check monoid and length axioms");
  validate->add_option("file", path)->required();

  auto* distances = app.add_subcommand("distances", "materialize a distance table");
  distances->add_option("file", path)->required();
  distances->add_option("--kind", kind)->check(CLI::IsMember({"d", "sigma", "sigma_p"}));
  distances->add_option("--p", p, "exponent for sigma_p (rational >= 1)");

  auto* check = app.add_subcommand("check", "run the inequality battery");
  check->add_option("file", path)->required();
  check->add_option("--jobs", jobs);
  check->add_option("--seed", seed, "seed for sampled mode");
  check->add_option("--samples", samples);

  auto* close = app.add_subcommand("close", "force the triangle/join inequalities");
  close->add_option("file", path)->required();
  close->add_option("--what", what)->check(CLI::IsMember({"delta", "nabla", "both", "delta-first"}));
  close->add_option("--kind", kind)->check(CLI::IsMember({"d", "sigma"}));

  auto* fixpoint = app.add_subcommand("fixpoint", "project to an ideal length function");
  fixpoint->add_option("file", path)->required();
  fixpoint->add_option("--variant", variant)->check(CLI::IsMember({"d", "sigma", "nonmono"}));
  fixpoint->add_option("--tol", tol, "stop when the largest change is below this (rational)");
  fixpoint->add_option("--max-iter", max_iter);

  auto* zeta_cmd = app.add_subcommand("zeta", "signed measure of a Boolean expression");
  zeta_cmd->add_option("file", path)->required();
  zeta_cmd->add_option("--expr", expr)->required();

  auto* quot = app.add_subcommand("quotient", "metric quotient of the d table");
  quot->add_option("file", path)->required();
  quot->add_flag("--ideal", ideal, "project to the ideal length function first");

  auto* hom = app.add_subcommand("hom", "hom-set report for a category file");
  hom->add_option("file", path)->required();
  hom->add_flag("--fixpoint", run_fix, "also run the hom-set fixpoint");
  hom->add_option("--tol", tol);
  hom->add_option("--max-iter", max_iter);

  auto* bm = app.add_subcommand("banach-mazur", "pairwise Banach-Mazur-like distances");
  bm->add_option("file", path)->required();
  bm->add_flag("--fixpoint", use_fix, "use ideal hom lengths instead of the category's");

  auto* random = app.add_subcommand("random", "emit a seeded random instance");
  random->add_option("--generators", generators)->required();
  random->add_option("--keep", keep, "minimum element count")->required();
  random->add_option("--seed", seed)->required();
  random->add_option("--max-length", max_len);
  random->add_option("-o,--out", out_path);

  auto* oracle = app.add_subcommand("oracle", "closed-form values on a set-model instance");
  oracle->add_option("file", path)->required();
  oracle->add_option("--expr", expr, "expression for the set-realization measure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(path);
    if (distances->parsed()) return cmd_distances(path, kind, p);
    if (check->parsed()) return cmd_check(path, jobs, seed, samples);
    if (close->parsed()) return cmd_close(path, what, kind);
    if (fixpoint->parsed()) return cmd_fixpoint(path, variant, tol, max_iter);
    if (zeta_cmd->parsed()) return cmd_zeta(path, expr);
    if (quot->parsed()) return cmd_quotient(path, ideal);
    if (hom->parsed()) return cmd_hom(path, run_fix, tol, max_iter);
    if (bm->parsed()) return cmd_banach_mazur(path, use_fix);
    if (random->parsed()) return cmd_random(generators, keep, seed, max_len, out_path);
    if (oracle->parsed()) return cmd_oracle(path, expr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 2;
}
