// Command-line front end: bodies, measures, mixed measures, inequality checks, searches
// and the named reproductions.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wbm/convexfn.hpp"
#include "wbm/errors.hpp"
#include "wbm/inequalities.hpp"
#include "wbm/io.hpp"
#include "wbm/repro.hpp"

using namespace wbm;
using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 0x5eed2024ULL;
  std::string out;
  std::string format = "csv";
  int budget = -1;
  double tolerance_scale = 1.0;
};

std::string slurp_if_file(const std::string& s) {
  if (!std::filesystem::is_regular_file(s)) return s;
  std::ifstream in(s);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MeasureSpec measure_arg(const std::string& text, int dim) {
  std::string t = slurp_if_file(text);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  return parse_measure(t, dim);
}

std::vector<double> numbers(const std::string& csv) {
  std::vector<double> v;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ParseError("not a number: '" + item + "'");
    }
  }
  return v;
}

Vec vec_arg(const std::string& csv) {
  const auto v = numbers(csv);
  Vec x(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) x[static_cast<int>(i)] = v[i];
  return x;
}

MixedPath path_arg(const std::string& p) {
  if (p == "fd") return MixedPath::fd;
  if (p == "formula") return MixedPath::formula;
  if (p == "auto" || p == "automatic") return MixedPath::automatic;
  throw ParseError("unknown path '" + p + "'");
}

GenConfig gen_arg(const std::string& kind, const std::vector<double>& scale) {
  GenConfig g{gen_kind_from_string(kind)};
  if (!scale.empty()) {
    if (scale.size() != 2 || !(scale[0] > 0) || scale[1] < scale[0]) throw ParseError("--scale expects lo,hi with 0 < lo <= hi");
    g.scale_lo = scale[0];
    g.scale_hi = scale[1];
  }
  return g;
}

ReportRow row_from(const std::string& claim, const InequalityReport& r) { return ReportRow::from_report(claim, r); }

InequalityReport inconclusive_report(const std::string& name, const std::string& mu, const std::string& why) {
  InequalityReport r;
  r.name = name;
  r.measure = mu;
  r.verdict = Verdict::inconclusive;
  r.margin = std::numeric_limits<double>::quiet_NaN();
  r.note = why;
  return r;
}

/// Runs a single checker on explicit bodies.
std::vector<InequalityReport> check_bodies(const std::string& name, const MeasureSpec& mu, const std::vector<Body>& b,
                                           const std::optional<FConcavity>& F, const std::optional<double>& s,
                                           const CheckOptions& opt, const EvalOptions& eo) {
  auto need = [&](std::size_t k) {
    if (b.size() != k) throw UnsupportedConfiguration(name + " takes " + std::to_string(k) + " bodies");
  };
  auto profile = [&] {
    if (!F) throw UnsupportedConfiguration(name + " needs --F");
    return *F;
  };
  if (name == "f_concavity") return need(2), std::vector{check_f_concavity(mu, profile(), b[0], b[1], opt)};
  if (name == "minkowski_first") return need(2), std::vector{minkowski_first(mu, profile(), b[0], b[1], opt)};
  if (name == "minkowski_second") return need(2), std::vector{minkowski_second(mu, profile(), b[0], b[1], opt)};
  if (name == "surface_monotonicity") return need(2), std::vector{surface_monotonicity(mu, b[0], b[1])};
  need(3);
  if (name == "reverse_quadratic") return {reverse_quadratic(mu, profile(), b[0], b[1], b[2], opt)};
  if (name == "fenchel") {
    if (!s) throw UnsupportedConfiguration("fenchel needs --s");
    return fenchel_bounds(mu, *s, b[0], b[1], b[2], opt);
  }
  if (name == "supermod_global") return {supermod_global(mu, b[0], b[1], b[2], Modularity::super, eo)};
  if (name == "submod_global") return {supermod_global(mu, b[0], b[1], b[2], Modularity::sub, eo)};
  if (name == "supermod_local2") return {supermod_local2(mu, b[0], b[1], b[2], opt)};
  if (name == "supermod_local3") return {supermod_local3(mu, b[0], b[1], b[2], opt)};
  if (name == "supermod_all") {
    std::vector<InequalityReport> out{supermod_global(mu, b[0], b[1], b[2], Modularity::super, eo),
                                      supermod_local2(mu, b[0], b[1], b[2], opt),
                                      supermod_local3(mu, b[0], b[1], b[2], opt)};
    out.push_back(supermod_consistency(out));
    return out;
  }
  if (name == "log_submodularity") return {log_submodularity(mu, b[0], b[1], b[2], eo)};
  if (name == "log_submod_local") return {log_submod_local(mu, b[0], b[1], b[2], opt)};
  if (name == "bm_constant") {
    auto r = report_le("bm_constant", bm_constant(b[0], b[1], b[2]), EvalResult::exact(1.0));
    r.measure = MeasureSpec::lebesgue(b[0].dim()).name();
    return {r};
  }
  throw UnsupportedConfiguration("unknown inequality '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Brunn-Minkowski toolkit: mixed measures and inequality checks"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "seed for every stochastic step")->capture_default_str();
  app.add_option("--out", g.out, "output file (default: standard output)");
  app.add_option("--format", g.format, "csv, json or structured-text")->capture_default_str();
  app.add_option("--budget", g.budget, "instance budget for sweeps, searches and repro");
  app.add_option("--tolerance-scale", g.tolerance_scale, "multiplier on every verdict threshold")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string measure_text = "lebesgue", path = "auto", mixed_path = "fd", inequality, generator = "polygon", second, fname, mode = "check";
  std::vector<std::string> body_files;
  std::string bodyA, bodyB, bodyC, with_file, direction;
  std::vector<double> scale;
  double dilate_t = 1.0;
  int order = 1, sweep_n = -1;
  bool qmc = false, list_claims = false;
  std::optional<double> s_param;
  std::string xs, ys, claim;
  double alpha = 0.0, a = 0.0, b = 1.0, lambda = 1.0, eps = 0.1;
  int alpha_exp = 1, beta_exp = 1, count = 1;

  auto* body = app.add_subcommand("body", "describe a body, optionally summed with another");
  body->add_option("--body", body_files, "body spec file")->required()->check(CLI::ExistingFile);
  body->add_option("--with", with_file, "add this body")->check(CLI::ExistingFile);
  body->add_option("--dilate", dilate_t, "scale factor applied last");
  body->add_option("--direction", direction, "support function direction, comma separated");

  auto* meas = app.add_subcommand("measure", "mu(K) for one or more bodies");
  meas->add_option("--measure", measure_text, "measure name, JSON text or file")->capture_default_str();
  meas->add_option("--body", body_files, "body spec files")->required()->check(CLI::ExistingFile);
  meas->add_flag("--qmc", qmc, "force the quasi-Monte-Carlo path");

  auto* surf = app.add_subcommand("surface", "weighted surface area and surface measure");
  surf->add_option("--measure", measure_text)->capture_default_str();
  surf->add_option("--body", body_files)->required()->check(CLI::ExistingFile);

  auto* mixed = app.add_subcommand("mixed", "first or second mixed measure");
  mixed->add_option("--measure", measure_text)->capture_default_str();
  mixed->add_option("--bodyA", bodyA)->required()->check(CLI::ExistingFile);
  mixed->add_option("--bodyB", bodyB)->required()->check(CLI::ExistingFile);
  mixed->add_option("--bodyC", bodyC)->check(CLI::ExistingFile);
  mixed->add_option("--order", order)->check(CLI::IsMember({1, 2}))->capture_default_str();
  mixed->add_option("--path", mixed_path, "fd, formula or both")->capture_default_str();

  auto add_check_flags = [&](CLI::App* sc) {
    sc->add_option("--measure", measure_text)->capture_default_str();
    sc->add_option("--F", fname, "concavity profile: log, normal_inv, power:<s>");
    sc->add_option("--s", s_param, "s for the Fenchel bounds");
    sc->add_option("--path", path, "fd, formula or auto")->capture_default_str();
    sc->add_option("--generator", generator, "body generator kind")->capture_default_str();
    sc->add_option("--second", second, "generator of the second operand");
    sc->add_option("--scale", scale, "log-uniform scale range lo,hi")->delimiter(',');
  };
  auto* check = app.add_subcommand("check", "check one inequality on given bodies or a generated sweep");
  check->add_option("--inequality", inequality)->required();
  check->add_option("--bodies", body_files, "body spec files (omit to sweep the generator)")->check(CLI::ExistingFile);
  check->add_option("--sweep", sweep_n, "number of generated instances");
  add_check_flags(check);

  auto* search = app.add_subcommand("search", "counterexample search");
  search->add_option("--target", inequality)->required();
  add_check_flags(search);

  auto* cfn = app.add_subcommand("convexfn", "one-dimensional convex function inequalities");
  cfn->add_option("--mode", mode, "check, equality, optimized, naz or random")->capture_default_str();
  cfn->add_option("--x", xs, "breakpoints, comma separated");
  cfn->add_option("--y", ys, "values, comma separated");
  cfn->add_option("--alpha", alpha, "slope of the equality family");
  cfn->add_option("-a,--a", a);
  cfn->add_option("-b,--b", b);
  cfn->add_option("--alpha-exp", alpha_exp)->capture_default_str();
  cfn->add_option("--beta-exp", beta_exp)->capture_default_str();
  cfn->add_option("--lambda", lambda)->capture_default_str();
  cfn->add_option("--eps", eps)->capture_default_str();
  cfn->add_option("--count", count, "instances for random mode")->capture_default_str();

  auto* repro = app.add_subcommand("repro", "run a named reproduction; exit 1 on mismatch");
  repro->add_option("claim", claim, "claim id or alias");
  repro->add_flag("--list", list_claims, "list claims");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunConfig cfg;
  std::vector<ReportRow> rows;
  int status = 0;
  try {
    cfg.seed = g.seed;
    cfg.out = g.out;
    cfg.format = output_format_from_string(g.format);
    if (g.budget >= 0) cfg.budget = g.budget;
    cfg.tolerance_scale = g.tolerance_scale;
    set_tolerance_scale(g.tolerance_scale);
    EvalOptions eo;
    eo.seed = g.seed;
    eo.force_qmc = qmc;

    std::vector<Body> bodies;
    for (const auto& f : body_files) bodies.push_back(load_body(f));
    const int dim = bodies.empty() ? 2 : bodies.front().dim();
    json& args = cfg.args;

    if (*body) {
      cfg.subcommand = "body";
      Body K = bodies.front();
      args["body"] = body_files.front();
      if (!with_file.empty()) {
        K = minkowski_sum(K, load_body(with_file));
        args["with"] = with_file;
      }
      if (dilate_t != 1.0) {
        if (!(dilate_t >= 0)) throw InvalidBody("--dilate must be nonnegative");
        K = dilate(K, dilate_t);
        args["dilate"] = dilate_t;
      }
      const std::string id = describe(K);
      auto flag = [](bool v) { return EvalResult::exact(v ? 1.0 : 0.0); };
      const std::string leb = MeasureSpec::lebesgue(K.dim()).name();
      rows.push_back(ReportRow::value("body", "dimension", "-", id, EvalResult::exact(K.dim())));
      rows.push_back(ReportRow::value("body", "full_dimensional", "-", id, flag(full_dimensional(K))));
      rows.push_back(ReportRow::value("body", "contains_origin", "-", id, flag(contains_origin(K))));
      rows.push_back(ReportRow::value("body", "volume", leb, id, measure(MeasureSpec::lebesgue(K.dim()), K, eo)));
      if (K.polytopal()) {
        rows.push_back(ReportRow::value("body", "vertex_count", "-", id,
                                        EvalResult::exact(static_cast<double>(vertices_of(K).size()))));
      }
      if (!direction.empty()) {
        const Vec u = vec_arg(direction);
        if (u.size() != K.dim()) throw DimensionMismatch("direction has the wrong dimension");
        args["direction"] = direction;
        rows.push_back(ReportRow::value("body", "support", "-", id, EvalResult::exact(support(K, u))));
      }
      rows.back().note = body_to_json(K).dump();
    } else if (*meas) {
      cfg.subcommand = "measure";
      const MeasureSpec mu = measure_arg(measure_text, dim);
      args["measure"] = measure_to_json(mu);
      args["bodies"] = body_files;
      args["qmc"] = qmc;
      for (std::size_t i = 0; i < bodies.size(); ++i) {
        rows.push_back(ReportRow::value("measure", "measure", mu.name(), body_files[i], measure(mu, bodies[i], eo)));
      }
    } else if (*surf) {
      cfg.subcommand = "surface";
      const MeasureSpec mu = measure_arg(measure_text, dim);
      args["measure"] = measure_to_json(mu);
      args["bodies"] = body_files;
      for (std::size_t i = 0; i < bodies.size(); ++i) {
        rows.push_back(
            ReportRow::value("surface", "weighted_surface_area", mu.name(), body_files[i], weighted_surface_area(mu, bodies[i])));
        const SphericalMeasure S = weighted_surface_measure(mu, bodies[i]);
        for (const auto& at : S.atoms()) {
          std::ostringstream u;
          u << body_files[i] << ";u=(";
          for (int k = 0; k < at.u.size(); ++k) u << (k ? "," : "") << format_double(at.u[k]);
          u << ")";
          rows.push_back(ReportRow::value("surface", "surface_measure_atom", mu.name(), u.str(),
                                          at.err > 0 ? EvalResult::approx(at.w, at.err, Method::quadrature)
                                                     : EvalResult::exact(at.w)));
        }
        if (!S.arcs.empty() || !S.sphere.empty()) {
          auto row = ReportRow::value("surface", "surface_measure_total", mu.name(), body_files[i], S.total_mass());
          row.note = spherical_measure_to_json(S).dump();
          rows.push_back(row);
        }
      }
    } else if (*mixed) {
      cfg.subcommand = "mixed";
      const Body A = load_body(bodyA), B = load_body(bodyB);
      const MeasureSpec mu = measure_arg(measure_text, A.dim());
      if (order == 2 && bodyC.empty()) throw UnsupportedConfiguration("--order 2 needs --bodyC");
      if (mixed_path != "fd" && mixed_path != "formula" && mixed_path != "both") throw ParseError("--path must be fd, formula or both");
      args = {{"measure", measure_to_json(mu)}, {"bodyA", bodyA}, {"bodyB", bodyB}, {"order", order}, {"path", mixed_path}};
      if (!bodyC.empty()) args["bodyC"] = bodyC;
      const std::string ids = order == 1 ? bodyA + ";" + bodyB : bodyA + ";" + bodyB + ";" + bodyC;
      const std::string q = order == 1 ? "mixed1" : "mixed2";
      MixedOptions mo;
      mo.eval = eo;
      std::optional<EvalResult> fd, formula;
      std::string fd_note;
      if (mixed_path != "formula") {
        try {
          if (order == 1) fd = mixed1_fd(mu, A, B, mo);
          else fd = mixed2_fd(mu, A, B, load_body(bodyC), mo);
          rows.push_back(ReportRow::value("mixed", q + "_fd", mu.name(), ids, *fd));
        } catch (const Inconclusive& e) {
          fd_note = e.what();
          rows.push_back(row_from("mixed", inconclusive_report(q + "_fd", mu.name(), e.what())));
        }
      }
      if (mixed_path != "fd") {
        formula = order == 1 ? mixed1_formula(mu, A, B) : mixed2_formula(mu, A, B, load_body(bodyC));
        rows.push_back(ReportRow::value("mixed", q + "_formula", mu.name(), ids, *formula));
      }
      if (fd && formula) {
        const double tol = std::max(1e-3 * std::abs(fd->value), 3 * (fd->abs_error + formula->abs_error));
        auto r = report_eq(q + "_agreement", *formula, *fd, tol);
        r.measure = mu.name();
        r.bodies = ids;
        rows.push_back(row_from("mixed", r));
      }
    } else if (*check || *search) {
      cfg.subcommand = *check ? "check" : "search";
      const MeasureSpec mu = measure_arg(measure_text, dim);
      CheckOptions opt;
      opt.path = path_arg(path);
      opt.mixed.eval = eo;
      std::optional<FConcavity> F;
      if (!fname.empty()) F = f_concavity_from_string(fname);
      args = {{"inequality", inequality}, {"measure", measure_to_json(mu)}, {"path", path}};
      if (F) args["F"] = F->name();
      if (s_param) args["s"] = *s_param;
      if (*check && !bodies.empty()) {
        args["bodies"] = body_files;
        std::string ids;
        for (const auto& f : body_files) ids += (ids.empty() ? "" : ";") + f;
        std::vector<InequalityReport> reps;
        try {
          reps = check_bodies(inequality, mu, bodies, F, s_param, opt, eo);
        } catch (const Inconclusive& e) {
          reps = {inconclusive_report(inequality, mu.name(), e.what())};
        }
        for (auto& r : reps) {
          r.bodies = ids;
          rows.push_back(row_from("check", r));
        }
      } else {
        SearchConfig sc;
        sc.target = inequality;
        sc.measure = mu;
        sc.bodies = gen_arg(generator, scale);
        if (!second.empty()) sc.second = gen_arg(second, scale);
        sc.budget = sweep_n >= 0 ? sweep_n : g.budget >= 0 ? g.budget : (*check ? 100 : 500);
        sc.seed = g.seed;
        sc.F = F;
        sc.s = s_param;
        sc.check = opt;
        args["generator"] = generator;
        if (!second.empty()) args["second"] = second;
        if (!scale.empty()) args["scale"] = scale;
        args["instances"] = sc.budget;
        if (*check) {
          for (const auto& r : sweep(sc).all) rows.push_back(row_from("check", r));
        } else {
          try {
            const auto res = counterexample_search(sc);
            for (const auto& r : res.violated) rows.push_back(row_from("search", r));
          } catch (const BudgetExhausted& e) {
            std::cerr << "search: " << e.what() << "\n";
          }
        }
      }
    } else if (*cfn) {
      cfg.subcommand = "convexfn";
      args["mode"] = mode;
      auto add = [&](const std::vector<InequalityReport>& reps) {
        for (const auto& r : reps) rows.push_back(row_from("convexfn", r));
      };
      if (mode == "check" || mode == "optimized") {
        const ConvexPL h(numbers(xs), numbers(ys), mode == "check");
        args["x"] = xs;
        args["y"] = ys;
        add(mode == "check" ? appendixB_check(h) : optimized_form_check(h));
      } else if (mode == "equality") {
        args.update({{"alpha", alpha}, {"a", a}, {"b", b}});
        add(appendixB_check(equality_family(alpha, a, b)));
      } else if (mode == "naz") {
        args.update({{"alpha_exp", alpha_exp}, {"beta_exp", beta_exp}, {"lambda", lambda}, {"eps", eps}});
        add({naz_probe(alpha_exp, beta_exp, lambda, eps)});
      } else if (mode == "random") {
        if (count < 1) throw UnsupportedConfiguration("--count must be positive");
        args["count"] = count;
        std::mt19937_64 rng(g.seed);
        for (int i = 0; i < count; ++i) {
          auto reps = appendixB_check(random_convex_pl(rng, true, false));
          for (auto& r : reps) r.bodies = "#" + std::to_string(i);
          add(reps);
        }
      } else {
        throw ParseError("unknown convexfn mode '" + mode + "'");
      }
    } else if (*repro) {
      cfg.subcommand = "repro";
      if (list_claims) {
        for (const auto& c : claim_registry()) {
          std::cout << c.id;
          for (const auto& al : c.aliases) std::cout << " (" << al << ")";
          std::cout << "  " << c.title << " -- expect: " << c.expectation << "\n";
        }
        return 0;
      }
      if (claim.empty()) throw ParseError("repro needs a claim id (see --list)");
      ReproOptions ro;
      ro.seed = g.seed;
      if (g.budget >= 0) ro.budget = g.budget;
      args["claim"] = claim;
      const ClaimOutcome outcome = run_claim(claim, ro);
      rows = outcome.rows;
      for (const auto& line : outcome.checks) std::cerr << outcome.id << ": " << line << "\n";
      std::cerr << outcome.id << ": " << (outcome.passed ? "PASS" : "FAIL") << " (" << outcome.seconds << " s)\n";
      status = outcome.passed ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 2;
  }

  if (cfg.out.empty()) {
    write_rows(std::cout, cfg, rows);
  } else {
    std::ofstream os(cfg.out);
    if (!os) {
      std::cerr << "error: IOError: cannot open " << cfg.out << "\n";
      return 2;
    }
    write_rows(os, cfg, rows);
  }
  return status;
}
