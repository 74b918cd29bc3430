#pragma once

#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "octanorm/octanorm.hpp"
#include "report_json.hpp"

namespace octanorm::cli {

inline constexpr const char* kVersion = "0.1.0";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Args {
  std::string norm, space, x_space, y_space;
  std::string point, functional, points, direction, weights, xs, ys;
  std::string json_path, csv_path, tie = "smallest";
  std::uint64_t seed = 0;
  std::optional<std::size_t> budget, samples, grid, k, pairs;
  std::optional<double> tol, a, b, p, eps, alpha, lambda;
  bool timing = false;
};

struct Outcome {
  json inputs = json::object();
  json results = json::object();
  bool failed = false;
  std::string csv;
};

struct Context {
  const Args& args;
  Tolerances tol;
  Outcome& out;
};

namespace detail {

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required option ") + flag);
  return *v;
}

inline const std::string& need(const std::string& v, const char* flag) {
  if (v.empty()) throw UsageError(std::string("missing required option ") + flag);
  return v;
}

inline double parse_double(std::string_view s, const char* what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw UsageError(std::string("cannot read a number from ") + what);
  return v;
}

inline Vec2 parse_pair(const std::string& s, const char* what) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError(std::string(what) + " must be written as x,y");
  return {parse_double(std::string_view(s).substr(0, comma), what),
          parse_double(std::string_view(s).substr(comma + 1), what)};
}

inline json pair_json(Vec2 v) { return json::array({num(v.x), num(v.y)}); }

inline SpaceVec vec_from_json(const json& j, const SpaceExpr& s) {
  if (!j.is_array()) throw UsageError("a vector is a JSON list with one {index: value} map per leaf");
  if (j.size() != s.leaf_count()) throw StructuralError("vector does not match the space's leaf count");
  SpaceVec v;
  for (const auto& leaf : j) {
    if (!leaf.is_object()) throw UsageError("each leaf of a vector is a JSON object");
    SparseVec sv;
    for (auto it = leaf.begin(); it != leaf.end(); ++it) {
      const std::string& key = it.key();
      std::size_t idx = 0;
      auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), idx);
      if (ec != std::errc() || ptr != key.data() + key.size()) throw UsageError("vector index '" + key + "' is not a non-negative integer");
      if (!it.value().is_number()) throw UsageError("vector entries must be numbers");
      sv.set(idx, it.value().get<double>());
    }
    v.leaves.push_back(std::move(sv));
  }
  return v;
}

inline std::vector<SpaceVec> vecs_from_json(const std::string& text, const SpaceExpr& s, const char* flag) {
  const json j = json::parse(need(text, flag));
  if (!j.is_array()) throw UsageError(std::string(flag) + " takes a JSON list of vectors");
  std::vector<SpaceVec> out;
  for (const auto& v : j) out.push_back(vec_from_json(v, s));
  return out;
}

inline json vec_json(const SpaceVec& v) {
  json arr = json::array();
  for (const auto& leaf : v.leaves) {
    json obj = json::object();
    for (const auto& [i, x] : leaf.entries()) obj[std::to_string(i)] = num(x);
    arr.push_back(std::move(obj));
  }
  return arr;
}

inline json vecs_json(const std::vector<SpaceVec>& vs) {
  json arr = json::array();
  for (const auto& v : vs) arr.push_back(vec_json(v));
  return arr;
}

inline json verdict_json(const PropertyVerdict& v) {
  return {{"property", v.property == Property::PosOH ? "pos-oh" : "pos-sd2p"},
          {"verdict", v.verdict},
          {"witness", v.witness ? pair_json(*v.witness) : json(nullptr)},
          {"residual", num(v.residual)},
          {"method", v.method == Method::Exact ? "exact" : "numeric"}};
}

inline json intervals_json(const std::vector<Interval>& is) {
  json arr = json::array();
  for (const auto& i : is)
    arr.push_back({{"lo", num(i.lo)}, {"hi", num(i.hi)}, {"lo_closed", i.lo_closed}, {"hi_closed", i.hi_closed}});
  return arr;
}

inline json bracket_json(const RoughnessBracket& b) {
  return {{"lower", num(b.lower)},
          {"lower_direction", vec_json(b.lower_direction)},
          {"upper", b.upper ? num(*b.upper) : json(nullptr)},
          {"upper_source", b.upper_source}};
}

inline json opt_num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

inline AbsNorm2 norm_input(Context& c) {
  AbsNorm2 n = parse_norm(need(c.args.norm, "--norm"));
  c.out.inputs["norm"] = to_spec(n);
  return n;
}

inline SpaceExpr space_input(Context& c, const std::string& text, const char* flag, const char* key) {
  SpaceExpr s = parse_space(need(text, flag));
  c.out.inputs[key] = to_spec(s);
  return s;
}

inline std::size_t size_input(Context& c, const std::optional<std::size_t>& v, std::size_t fallback,
                              const char* key) {
  const std::size_t r = v.value_or(fallback);
  c.out.inputs[key] = r;
  return r;
}

inline double real_input(Context& c, const std::optional<double>& v, const char* flag, const char* key) {
  const double r = need(v, flag);
  c.out.inputs[key] = num(r);
  return r;
}

inline double real_input(Context& c, const std::optional<double>& v, double fallback, const char* key) {
  const double r = v.value_or(fallback);
  c.out.inputs[key] = num(r);
  return r;
}

// ---- norm ----

inline void norm_eval(Context& c) {
  const AbsNorm2 n = norm_input(c);
  const Vec2 v = parse_pair(need(c.args.point, "--point"), "--point");
  c.out.inputs["point"] = pair_json(v);
  c.out.results["value"] = num(eval(n, v));
}

inline void norm_dual(Context& c) {
  const AbsNorm2 n = norm_input(c);
  const AbsNorm2 d = AbsNorm2::dual_of(n);
  c.out.results["dual"] = to_spec(d);
  c.out.results["kernel"] = n.is_polygonal() ? to_spec(AbsNorm2::polygon(n.lowered_dual()))
                                             : to_spec(AbsNorm2::lp(octanorm::detail::dual_exponent(n.smooth_exponent())));
  if (!c.args.functional.empty()) {
    const Vec2 f = parse_pair(c.args.functional, "--functional");
    c.out.inputs["functional"] = pair_json(f);
    c.out.results["value"] = num(dual_eval(n, {f.x, f.y}));
    c.out.results["value_golden"] = num(dual_eval_golden(n, {f.x, f.y}, c.tol));
  }
}

inline void norm_validate(Context& c) {
  const AbsNorm2 n = norm_input(c);
  const std::size_t samples = size_input(c, c.args.samples, 1000, "samples");
  c.out.inputs["seed"] = c.args.seed;
  const auto v = validate(n, samples, c.args.seed, c.tol);
  c.out.results = {{"normalization", num(v.normalization)},   {"absoluteness", num(v.absoluteness)},
                   {"monotonicity", num(v.monotonicity)},     {"triangle", num(v.triangle)},
                   {"sandwich_lower", num(v.sandwich_lower)}, {"sandwich_upper", num(v.sandwich_upper)},
                   {"tolerance", num(v.tolerance)},           {"worst", num(v.worst())},
                   {"passed", v.passed()}};
  c.out.failed = !v.passed();
}

inline void norm_gamma(Context& c) {
  const AbsNorm2 n = norm_input(c);
  c.out.results["gamma"] = num(gamma_inf(n));
  c.out.results["n11"] = num(eval(n, {1.0, 1.0}));
}

inline void norm_modulus(Context& c) {
  const AbsNorm2 n = norm_input(c);
  const double eps = real_input(c, c.args.eps, "--eps", "eps");
  c.out.results["modulus"] = num(exposedness_modulus(n, eps, c.tol));
}

// ---- check ----

inline void check_oh(Context& c) { c.out.results = verdict_json(check_pos_oh(norm_input(c), c.tol)); }

inline void check_sd2p(Context& c) { c.out.results = verdict_json(check_pos_sd2p(norm_input(c), c.tol)); }

inline void check_dual(Context& c) {
  const auto r = check_duality(norm_input(c), c.tol);
  c.out.results = {{"sd2p", verdict_json(r.sd2p)},
                   {"dual_pos_oh", verdict_json(r.dual_oh)},
                   {"consistent", r.consistent},
                   {"witness_norms_midpoint", r.witness_norms_midpoint},
                   {"ok", r.ok()}};
  c.out.failed = !r.ok();
}

// ---- window ----

inline void window_compute(Context& c) {
  const double a = real_input(c, c.args.a, "--a", "a");
  const double b = real_input(c, c.args.b, "--b", "b");
  const auto w = lambda_window(a, b);
  c.out.results = {{"lo", num(w.lo)},
                   {"hi", num(w.hi)},
                   {"t1", num(w.t1)},
                   {"t2", num(w.t2)},
                   {"feasible", intervals_json(w.feasible)},
                   {"positive", intervals_json(w.positive)}};
  if (c.args.lambda) {
    c.out.inputs["lambda"] = num(*c.args.lambda);
    c.out.results["gap"] = num(dsd2p_gap(a, b, *c.args.lambda));
  }
}

inline json window_verification_json(const WindowVerification& v) {
  return {{"a", num(v.a)},
          {"b", num(v.b)},
          {"grid", v.grid},
          {"checked", v.checked},
          {"skipped_boundary", v.skipped_boundary},
          {"gap_mismatches", v.gap_mismatches},
          {"feasible_not_positive", v.feasible_not_positive},
          {"max_term_mismatches", v.max_term_mismatches},
          {"strict_mismatches", v.strict_mismatches},
          {"passed", v.passed()}};
}

inline void window_verify(Context& c) {
  const std::size_t grid = size_input(c, c.args.grid, 100000, "grid");
  std::vector<std::pair<double, double>> pairs;
  if (c.args.pairs) {
    c.out.inputs["pairs"] = *c.args.pairs;
    c.out.inputs["seed"] = c.args.seed;
    std::mt19937_64 rng(c.args.seed);
    std::uniform_real_distribution<double> u(0.0, 0.99);
    while (pairs.size() < *c.args.pairs) {
      const double a = u(rng), b = u(rng);
      if (a > 0.0 || b > 0.0) pairs.emplace_back(a, b);
    }
  } else {
    pairs.emplace_back(real_input(c, c.args.a, "--a", "a"), real_input(c, c.args.b, "--b", "b"));
  }
  json list = json::array();
  std::size_t mismatches = 0;
  for (const auto& [a, b] : pairs) {
    const auto v = verify_window(a, b, grid);
    mismatches += v.mismatches();
    list.push_back(window_verification_json(v));
  }
  c.out.results = {{"runs", list}, {"mismatches", mismatches}, {"passed", mismatches == 0}};
  c.out.failed = mismatches != 0;
}

// ---- rough ----

inline WitnessSet witness_input(Context& c) {
  const SpaceExpr s = space_input(c, c.args.space, "--space", "space");
  auto pts = vecs_from_json(c.args.points, s, "--points");
  c.out.inputs["points"] = vecs_json(pts);
  std::vector<double> weights;
  if (!c.args.weights.empty()) {
    weights = json::parse(c.args.weights).get<std::vector<double>>();
    json w = json::array();
    for (double x : weights) w.push_back(num(x));
    c.out.inputs["weights"] = w;
  }
  return make_witness_set(s, std::move(pts), std::move(weights), c.tol);
}

inline void rough_witness(Context& c) {
  const WitnessSet w = witness_input(c);
  const SpaceVec y = vec_from_json(json::parse(need(c.args.direction, "--direction")), w.space);
  c.out.inputs["direction"] = vec_json(y);
  c.out.results["value"] = num(witness_value(w, y));
}

inline void rough_search(Context& c) {
  const WitnessSet w = witness_input(c);
  const std::size_t budget = size_input(c, c.args.budget, 200, "budget");
  c.out.inputs["seed"] = c.args.seed;
  c.out.results = bracket_json(direction_search(w, budget, c.args.seed));
}

inline void rough_theorem_sum(Context& c) {
  const AbsNorm2 n = norm_input(c);
  const SpaceExpr xs_space = space_input(c, c.args.x_space, "--x-space", "x_space");
  const SpaceExpr ys_space = space_input(c, c.args.y_space, "--y-space", "y_space");
  const auto xs = vecs_from_json(c.args.xs, xs_space, "--xs");
  const auto ys = vecs_from_json(c.args.ys, ys_space, "--ys");
  c.out.inputs["xs"] = vecs_json(xs);
  c.out.inputs["ys"] = vecs_json(ys);
  const double eps = real_input(c, c.args.eps, 1.0, "eps");
  const std::size_t budget = size_input(c, c.args.budget, 200, "budget");
  c.out.inputs["seed"] = c.args.seed;
  if (c.args.tie != "smallest" && c.args.tie != "largest") throw UsageError("--tie must be smallest or largest");
  c.out.inputs["tie"] = c.args.tie;
  const auto r = theorem_sum_direction(n, xs_space, ys_space, xs, ys, eps, budget, c.args.seed,
                                       c.args.tie == "smallest" ? TieBreak::SmallestC : TieBreak::LargestC, c.tol);
  const bool holds = r.achieved >= r.predicted - 1e-6;
  c.out.results = {{"direction", vec_json(r.direction)},
                   {"achieved", num(r.achieved)},
                   {"predicted", num(r.predicted)},
                   {"gamma", num(r.gamma)},
                   {"delta_x", opt_num(r.delta_x)},
                   {"delta_y", opt_num(r.delta_y)},
                   {"c", num(r.c)},
                   {"d", num(r.d)},
                   {"branch", r.branch},
                   {"holds", holds}};
  c.out.failed = !holds;
}

inline void rough_exact_delta(Context& c) {
  const double p = real_input(c, c.args.p, "--p", "p");
  const double tol = real_input(c, c.args.tol, 1e-3, "tol");
  const std::size_t budget = size_input(c, c.args.budget, 200, "budget");
  c.out.inputs["seed"] = c.args.seed;
  const auto r = exact_delta_report(p, tol, budget, c.args.seed);
  c.out.results = {{"bracket", bracket_json(r.bracket)}, {"width", num(r.width)}, {"passed", r.passed()}};
  c.out.failed = !r.passed();
}

inline void rough_fbound(Context& c) {
  const double p = real_input(c, c.args.p, "--p", "p");
  const double eps = real_input(c, c.args.eps, "--eps", "eps");
  c.out.results["f_eps"] = num(f_eps(p, eps));
  c.out.results["coefficient"] = num(std::pow(2.0, 1.0 - 1.0 / p) + f_eps(p, eps));
  const std::size_t samples = size_input(c, c.args.samples, 0, "samples");
  if (samples > 0) {
    c.out.inputs["seed"] = c.args.seed;
    const auto r = check_upper_inequality(p, eps, samples, c.args.seed);
    c.out.results["inequality"] = {{"samples", r.samples},
                                   {"violations", r.violations},
                                   {"max_excess", num(r.max_excess)},
                                   {"passed", r.passed()}};
    c.out.failed = !r.passed();
  }
}

// ---- slices ----

inline std::string functionals_cell(const std::vector<Vec2>& fs) {
  std::string s;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) s += ";";
    s += format_number(fs[i].x) + " " + format_number(fs[i].y);
  }
  return s;
}

inline json functionals_json(const std::vector<Vec2>& fs) {
  json arr = json::array();
  for (const auto& f : fs) arr.push_back(pair_json(f));
  return arr;
}

inline void slices_min_diameter(Context& c) {
  const AbsNorm2 n = norm_input(c);
  const std::size_t k = size_input(c, c.args.k, 2, "k");
  const double alpha = real_input(c, c.args.alpha, 1e-3, "alpha");
  const std::size_t grid = size_input(c, c.args.grid, 256, "grid");
  std::string csv;
  std::function<void(const std::vector<Vec2>&, double)> visit;
  if (!c.args.csv_path.empty()) {
    csv = "functionals,alpha,lambda,diameter\n";
    visit = [&](const std::vector<Vec2>& fs, double d) {
      csv += "\"" + functionals_cell(fs) + "\"," + format_number(alpha) + "," +
             format_number(1.0 / static_cast<double>(fs.size())) + "," + format_number(d) + "\n";
    };
  }
  const auto r = min_combo_diameter(n, k, alpha, grid, visit);
  c.out.results = {{"min_diameter", num(r.min_diameter)},
                   {"functionals", functionals_json(r.functionals)},
                   {"combos", r.combos}};
  c.out.csv = std::move(csv);
}

inline void slices_deville(Context& c) {
  const AbsNorm2 n = norm_input(c);
  const std::size_t k = size_input(c, c.args.k, 2, "k");
  const double alpha = real_input(c, c.args.alpha, 1e-3, "alpha");
  const std::size_t grid = size_input(c, c.args.grid, 256, "grid");
  const std::size_t budget = size_input(c, c.args.budget, 64, "budget");
  const double tol = real_input(c, c.args.tol, 0.05, "tol");
  c.out.inputs["seed"] = c.args.seed;
  const auto r = deville_check(n, k, alpha, grid, budget, c.args.seed, tol);
  json by_size = json::array();
  for (double v : r.roughness.best_by_size) by_size.push_back(num(v));
  c.out.results = {
      {"slice_min_diameter", num(r.slice_min)},
      {"slice_functionals", functionals_json(r.combo.functionals)},
      {"dual_roughness_min", num(r.roughness_min)},
      {"dual_roughness_lower", num(r.roughness.lower)},
      {"dual_witness", functionals_json(r.roughness.witness)},
      {"dual_roughness_by_size", by_size},
      {"difference", num(r.difference)},
      {"passed", r.passed()},
      {"note",
       "both sides are matched-budget upper estimates of infima that coincide by the slice/roughness duality; "
       "this is a heuristic desk-scale comparison"}};
  c.out.failed = !r.passed();
}

}  // namespace detail

/// Parses argv, runs one subcommand and writes its report_v1 JSON to `out`
/// (and to --json/--csv files). Exit codes: 0 success, 1 failing
/// verification, 2 bad input.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Absolute norms on the plane, average roughness and slice geometry", "octanorm"};
  app.require_subcommand(1);
  Args a;
  app.add_option("--norm", a.norm, "norm spec: lp:<p|inf>, ab:<a>,<b>, poly:[(x,y),...], dual(<spec>)");
  app.add_option("--space", a.space, "space spec: leaf:<p|inf> or sum(<norm>; <space>; <space>)");
  app.add_option("--x-space", a.x_space, "space spec of the first factor");
  app.add_option("--y-space", a.y_space, "space spec of the second factor");
  app.add_option("--point", a.point, "point x,y");
  app.add_option("--functional", a.functional, "functional c,d");
  app.add_option("--points", a.points, "JSON list of vectors, each a list of {index: value} maps per leaf");
  app.add_option("--direction", a.direction, "JSON vector");
  app.add_option("--weights", a.weights, "JSON list of witness weights");
  app.add_option("--xs", a.xs, "JSON list of first-factor vectors");
  app.add_option("--ys", a.ys, "JSON list of second-factor vectors");
  app.add_option("--tie", a.tie, "norming functional tie-break: smallest or largest");
  app.add_option("--seed", a.seed, "random seed (default 0)");
  app.add_option("--budget", a.budget, "search budget");
  app.add_option("--samples", a.samples, "sample count");
  app.add_option("--grid", a.grid, "grid size");
  app.add_option("--k", a.k, "number of slices / witness points");
  app.add_option("--pairs", a.pairs, "number of seeded (a,b) pairs");
  app.add_option("--tol", a.tol, "acceptance tolerance");
  app.add_option("--a", a.a, "parameter a");
  app.add_option("--b", a.b, "parameter b");
  app.add_option("--p", a.p, "exponent p");
  app.add_option("--eps", a.eps, "epsilon");
  app.add_option("--alpha", a.alpha, "slice depth alpha");
  app.add_option("--lambda", a.lambda, "lambda");
  app.add_option("--json", a.json_path, "also write the report to this file");
  app.add_option("--csv", a.csv_path, "write bulk grid rows to this file");
  app.add_flag("--timing", a.timing, "include wall-clock timing in the report");

  std::string command;
  std::function<void(Context&)> handler;
  auto group = [&](const char* name, const char* desc) {
    auto* g = app.add_subcommand(name, desc);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };
  auto leaf = [&](CLI::App* g, const std::string& name, const char* desc, std::function<void(Context&)> fn) {
    auto* s = g->add_subcommand(name, desc);
    s->fallthrough();
    const std::string full = g->get_name() + " " + name;
    s->callback([&command, &handler, full, fn] {
      command = full;
      handler = fn;
    });
  };
  auto* norm_cmd = group("norm", "evaluate and inspect a norm");
  leaf(norm_cmd, "eval", "N at --point", detail::norm_eval);
  leaf(norm_cmd, "dual", "dual norm (and N* at --functional)", detail::norm_dual);
  leaf(norm_cmd, "validate", "sampled norm axioms", detail::norm_validate);
  leaf(norm_cmd, "gamma", "1 / N(1,1)", detail::norm_gamma);
  leaf(norm_cmd, "modulus", "exposedness modulus of (1,0) at --eps", detail::norm_modulus);
  auto* check_cmd = group("check", "positive octahedrality and positive SD2P");
  leaf(check_cmd, "pos-oh", "positive octahedrality", detail::check_oh);
  leaf(check_cmd, "pos-sd2p", "positive strong diameter 2 property", detail::check_sd2p);
  leaf(check_cmd, "duality", "pos-SD2P of N against pos-OH of N*", detail::check_dual);
  auto* window_cmd = group("window", "lambda window of the two-parameter family");
  leaf(window_cmd, "compute", "closed-form window", detail::window_compute);
  leaf(window_cmd, "verify", "grid verification of the window", detail::window_verify);
  auto* rough_cmd = group("rough", "average roughness");
  leaf(rough_cmd, "witness", "weighted roughness quotient of --direction", detail::rough_witness);
  leaf(rough_cmd, "search", "direction search for a lower bound", detail::rough_search);
  leaf(rough_cmd, "theorem-sum", "absolute-sum direction from factor directions", detail::rough_theorem_sum);
  leaf(rough_cmd, "exact-delta", "two-sided bracket for l1 (+)_p l1", detail::rough_exact_delta);
  leaf(rough_cmd, "fbound", "f(eps) and the l_p-sum upper inequality", detail::rough_fbound);
  auto* slices_cmd = group("slices", "slice geometry in the plane");
  leaf(slices_cmd, "min-diameter", "smallest diameter of slice combinations", detail::slices_min_diameter);
  leaf(slices_cmd, "deville", "slice diameters against dual roughness", detail::slices_deville);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Outcome outcome;
  json report;
  try {
    Context ctx{a, Tolerances::from_env(), outcome};
    const auto start = std::chrono::steady_clock::now();
    handler(ctx);
    const auto stop = std::chrono::steady_clock::now();
    report = {{"schema", "report_v1"},
              {"command", command},
              {"inputs", outcome.inputs},
              {"results", outcome.results},
              {"provenance",
               {{"version", kVersion},
                {"seed", a.seed},
                {"tolerances",
                 {{"sphere", num(ctx.tol.sphere)},
                  {"bisection", num(ctx.tol.bisection)},
                  {"golden", num(ctx.tol.golden)},
                  {"verdict", num(ctx.tol.verdict)}}}}}};
    if (a.timing) report["timing"] = {{"wall_ms", num(std::chrono::duration<double, std::milli>(stop - start).count())}};
  } catch (const ParseError& e) {
    err << "octanorm: parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "octanorm: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "octanorm: bad JSON input: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "octanorm: " << e.what() << "\n";
    return 2;
  }

  const std::string text = dump(report) + "\n";
  if (!a.json_path.empty()) {
    std::ofstream f(a.json_path, std::ios::binary);
    if (!(f << text)) {
      err << "octanorm: cannot write " << a.json_path << "\n";
      return 2;
    }
  }
  if (!a.csv_path.empty()) {
    std::ofstream f(a.csv_path, std::ios::binary);
    if (!(f << outcome.csv)) {
      err << "octanorm: cannot write " << a.csv_path << "\n";
      return 2;
    }
  }
  out << text;
  return outcome.failed ? 1 : 0;
}

}  // namespace octanorm::cli
