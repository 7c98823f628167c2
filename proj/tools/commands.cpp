#include "commands.hpp"

#include <functional>
#include <utility>

#include "shadowdyn/cantor.hpp"
#include "shadowdyn/chain_recurrence.hpp"
#include "shadowdyn/expansivity.hpp"
#include "shadowdyn/serialize.hpp"
#include "shadowdyn/shadowing.hpp"

namespace shadowdyn::cli {

namespace {

using CatNs = Product<ToralAutomorphism, NorthSouth>;

struct Outcome {
  bool pass = true;
  Json result = Json::object();
  std::vector<std::pair<std::string, std::string>> files;
};

template <class F>
Outcome with_system(const RunConfig& cfg, F&& f) {
  if (cfg.system == "cat") return f(ToralAutomorphism::cat());
  if (cfg.system == "shift") {
    if (cfg.alphabet < 2 || cfg.alphabet > 255) throw std::invalid_argument("alphabet must lie in [2, 255]");
    return f(FullShift(cfg.alphabet));
  }
  if (cfg.system == "cube") return f(CubeShift());
  if (cfg.system == "ns") return f(NorthSouth());
  if (cfg.system == "rotation") return f(CircleRotation(cfg.angle));
  if (cfg.system == "product") return f(CatNs(ToralAutomorphism::cat(), NorthSouth()));
  throw std::invalid_argument("unknown system '" + cfg.system + "' (cat, shift, cube, ns, rotation, product)");
}

TorusPoint default_point(const ToralAutomorphism&, const RunConfig&) { return {}; }
SymbolSeq default_point(const FullShift& s, const RunConfig&) { return SymbolSeq::constant(0, s.alphabet()); }
CubeSeq default_point(const CubeShift&, const RunConfig&) { return CubeSeq::constant(0.5); }
CirclePoint default_point(const NorthSouth&, const RunConfig&) { return {0.0}; }
CirclePoint default_point(const CircleRotation&, const RunConfig&) { return {0.0}; }
PointOf<CatNs> default_point(const CatNs&, const RunConfig&) { return {TorusPoint{}, CirclePoint{0.0}}; }

template <DynamicalSystem S>
PointOf<S> parse_point(const S& sys, const std::string& text) {
  std::vector<std::string> f;
  for (auto& s : split(text, ',')) {
    const auto b = s.find_first_not_of(' ');
    const auto e = s.find_last_not_of(' ');
    f.push_back(b == std::string::npos ? std::string() : s.substr(b, e - b + 1));
  }
  std::size_t pos = 0;
  PointOf<S> p = [&] {
    if constexpr (std::is_same_v<S, FullShift>) return PointCodec<SymbolSeq>::from_csv(f, pos, sys.alphabet());
    else return PointCodec<PointOf<S>>::from_csv(f, pos);
  }();
  if (pos != f.size()) throw std::invalid_argument("point '" + text + "' has extra fields");
  return p;
}

template <DynamicalSystem S>
PointOf<S> point_or_default(const S& sys, const RunConfig& cfg) {
  return cfg.point.empty() ? default_point(sys, cfg) : parse_point(sys, cfg.point);
}

template <class P>
std::vector<std::string> coords_header() {
  return PointCodec<P>::csv_header();
}

Direction parse_direction(const std::string& d) {
  if (d == "unstable") return Direction::UNSTABLE;
  if (d == "stable") return Direction::STABLE;
  throw std::invalid_argument("direction must be 'unstable' or 'stable'");
}

int finish(const RunConfig& cfg, const std::function<Outcome()>& run) {
  Json summary = {{"command", cfg.command}, {"config", cfg.to_json()}};
  int code = 0;
  try {
    Outcome o = run();
    summary["status"] = o.pass ? "pass" : "failed";
    summary["result"] = std::move(o.result);
    for (const auto& [name, content] : o.files) write_file(cfg.out, name, content);
    code = o.pass ? 0 : 2;
  } catch (const DynamicsError& e) {
    summary["status"] = "failed";
    summary["result"] = {{"error", e.what()}, {"certificate", e.certificate().to_json()}};
    code = 2;
  }
  write_file(cfg.out, "summary.json", summary.dump(2) + "\n");
  return code;
}

template <DynamicalSystem S>
Outcome run_shadow(const S& sys, const RunConfig& cfg) {
  PseudoOrbit<S> po = [&] {
    if (!cfg.input.empty()) return pseudo_orbit_from_csv(sys, read_file(cfg.input));
    if (cfg.length < 1) throw std::invalid_argument("shadow: --length must be positive");
    Rng rng(cfg.require_seed(), streams::kPseudoOrbit, 0);
    const PointOf<S> x = cfg.point.empty() ? sys.sample(rng) : parse_point(sys, cfg.point);
    if (!cfg.delta) return true_orbit(sys, x, 0, cfg.length);
    if (!(*cfg.delta > 0)) throw std::invalid_argument("shadow: --delta must be positive");
    return perturbed_orbit(sys, x, 0, cfg.length, *cfg.delta, rng);
  }();
  const double eps = cfg.eps ? cfg.require_eps() : kNoBound;
  Outcome o;
  const double def = defect(po);
  o.result["pseudo_orbit"] = {{"lo", po.lo()}, {"hi", po.hi()}, {"defect", def}, {"source", cfg.input.empty() ? "generated" : "file"}};
  if (cfg.eps) {
    const auto m = modulus(sys, eps, cfg.seed.value_or(0));
    o.result["modulus"] = m.to_json();
    o.result["defect_below_modulus"] = def < m.delta;
  }
  const auto r = shadow(po, eps);
  const auto cert = verify_shadowing(po, r.point, eps, po.hi() - po.lo());
  o.pass = cert.pass;
  o.result["shadow"] = {{"point", point_to_json(r.point)}, {"achieved_eps", r.achieved_eps}, {"lo", r.lo}, {"hi", r.hi},
                        {"tail_bound", r.tail_bound}, {"details", r.details}};
  o.result["certificate"] = cert.to_json();
  o.files.emplace_back("pseudo_orbit.csv", pseudo_orbit_to_csv(po));
  o.files.emplace_back("shadow_orbit.csv", pseudo_orbit_to_csv(true_orbit(sys, r.point, po.lo(), po.hi())));
  return o;
}

template <DynamicalSystem S>
Outcome cantor_outcome(const CantorApprox<S>& c, const std::string& csv_name) {
  Outcome o;
  o.pass = c.membership.pass;
  o.result["cantor"] = cantor_to_json(c);
  o.result["points"] = c.points.size();
  o.files.emplace_back(csv_name, cantor_to_csv(c));
  return o;
}

template <DynamicalSystem S>
Outcome run_cantor(const S& sys, const RunConfig& cfg) {
  const auto c = build(sys, point_or_default(sys, cfg), cfg.require_eps(), cfg.kmax, cfg.horizon, cfg.require_seed(),
                       parse_direction(cfg.direction), cfg.threads);
  return cantor_outcome(c, "cantor.csv");
}

template <DynamicalSystem S>
Outcome run_refute(const S& sys, const RunConfig& cfg) {
  const auto c = countable_expansivity_refuter(sys, point_or_default(sys, cfg), cfg.require_eps(), cfg.kmax, cfg.horizon,
                                               cfg.require_seed(), cfg.threads);
  return cantor_outcome(c, "refute.csv");
}

template <DynamicalSystem S>
Outcome run_chainrec(const S& sys, const RunConfig& cfg) {
  if constexpr (!Gridded<S>) {
    throw std::invalid_argument("chainrec: system '" + cfg.system + "' has no box grid (use cat, ns, rotation or product)");
  } else {
    const BoxGrid grid(parse_resolution(cfg.resolution, GridTraits<S>::dimension));
    GraphOptions opt;
    opt.delta = cfg.delta.value_or(0.0);
    opt.samples_per_box = cfg.samples.value_or(9);
    opt.seed = cfg.require_seed();
    opt.edge_budget = cfg.edge_budget;
    opt.threads = cfg.threads;
    const auto g = build_graph(sys, grid, opt);
    const auto classes = chain_classes(g);
    Outcome o;
    o.result["grid"] = grid.to_json();
    o.result["graph"] = {{"nodes", g.node_count()}, {"edges", g.edge_count()}, {"delta", g.delta()}, {"scheme", g.scheme()}};
    o.result["classes"] = classes.summary();
    o.files.emplace_back("graph.txt", graph_edge_list(g, cfg.system));
    o.files.emplace_back("classes.csv", classes_csv(classes));
    const auto pts = split_points(cfg.points);
    if (!pts.empty()) {
      const ClassProjector proj(grid, classes);
      Json basins = Json::array();
      std::vector<std::string> head{"point", "index"};
      for (auto& h : coords_header<PointOf<S>>()) head.push_back(h);
      head.push_back("defect");
      std::string csv = csv_line(head);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto r = basin_assign(sys, proj, parse_point(sys, pts[i]), cfg.horizon);
        basins.push_back({{"point", pts[i]}, {"class_id", r.class_id}, {"entry_index", r.entry_index}, {"certificate", r.certificate.to_json()}});
        const auto& lp = r.projected;
        for (std::size_t k = 0; k < lp.points.size(); ++k) {
          std::vector<std::string> row{std::to_string(i), std::to_string(k)};
          for (auto& f : PointCodec<PointOf<S>>::csv_fields(lp.points[k])) row.push_back(f);
          row.push_back(k < lp.decay.size() ? format_double(lp.decay[k]) : "");
          csv += csv_line(row);
        }
      }
      o.result["basins"] = basins;
      o.files.emplace_back("basins.csv", csv);
    }
    return o;
  }
}

template <DynamicalSystem S>
Outcome run_sensitivity(const S& sys, const RunConfig& cfg) {
  const std::uint64_t seed = cfg.require_seed();
  const int n = cfg.samples.value_or(64);
  if (n < 1) throw std::invalid_argument("sensitivity: --samples must be positive");
  const std::vector<double> radii = !cfg.radii.empty() ? cfg.radii : std::vector<double>{cfg.delta.value_or(1e-3)};
  std::vector<PointOf<S>> bases;
  for (int i = 0; i < n; ++i) {
    Rng rng(seed, streams::kSampling, static_cast<std::uint64_t>(i));
    bases.push_back(sys.sample(rng));
  }
  const auto est = sensitivity_lower_bound(sys, bases, radii, cfg.horizon, cfg.threads);
  Outcome o;
  o.result["estimate"] = est.to_json();
  if (cfg.eps) o.result["equicontinuity"] = equicontinuity_probe(sys, cfg.require_eps(), cfg.horizon, bases, seed, 1e-6, cfg.threads).to_json();
  std::vector<std::string> head{"sample"};
  for (auto& h : coords_header<PointOf<S>>()) head.push_back(h);
  head.push_back("growth");
  std::string csv = csv_line(head);
  for (std::size_t i = 0; i < bases.size(); ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (auto& f : PointCodec<PointOf<S>>::csv_fields(bases[i])) row.push_back(f);
    row.push_back(format_double(est.per_sample[i]));
    csv += csv_line(row);
  }
  o.files.emplace_back("sensitivity.csv", csv);
  return o;
}

template <DynamicalSystem S>
ContinuumWitness<PointOf<S>> make_witness(const S& sys, const RunConfig& cfg, double eps) {
  if constexpr (std::is_same_v<S, CubeShift>) {
    return cube_box_witness(point_or_default(sys, cfg), eps, cfg.horizon, cfg.span, cfg.step);
  } else if constexpr (std::is_same_v<S, ToralAutomorphism>) {
    return torus_segment_witness(point_or_default(sys, cfg), {1.0, 0.0}, cfg.arc_length, eps, cfg.horizon, cfg.step);
  } else if constexpr (std::is_same_v<S, CatNs>) {
    return product_arc_witness(point_or_default(sys, cfg).left, cfg.arc_center, cfg.arc_length, eps, cfg.horizon, cfg.step);
  } else if constexpr (std::is_same_v<PointOf<S>, CirclePoint>) {
    ContinuumWitness<CirclePoint> w;
    w.center = {wrap01(cfg.arc_center)};
    w.members = circle_arc(cfg.arc_center, cfg.arc_length, cfg.step);
    w.parameter_step = cfg.step;
    w.construction = "arc";
    w.eps = eps;
    w.horizon = cfg.horizon;
    w.params = {{"arc_center", cfg.arc_center}, {"arc_length", cfg.arc_length}};
    return w;
  } else {
    throw std::invalid_argument("cwx: the full shift is totally disconnected and carries no continua");
  }
}

template <DynamicalSystem S>
Outcome run_cwx(const S& sys, const RunConfig& cfg) {
  const auto w = make_witness(sys, cfg, cfg.require_eps());
  const auto cert = cw_witness_check(sys, w, cfg.threads);
  Outcome o;
  o.pass = cert.pass;
  o.result["certificate"] = cert.to_json();
  std::vector<std::string> head{"parameter"};
  for (auto& h : coords_header<PointOf<S>>()) head.push_back(h);
  std::string csv = csv_line(head);
  for (std::size_t i = 0; i < w.members.size(); ++i) {
    std::vector<std::string> row{format_double(static_cast<double>(i) / static_cast<double>(w.members.size() - 1))};
    for (auto& f : PointCodec<PointOf<S>>::csv_fields(w.members[i])) row.push_back(f);
    csv += csv_line(row);
  }
  o.files.emplace_back("witness.csv", csv);
  return o;
}

}  // namespace

int cmd_shadow(const RunConfig& cfg) {
  return finish(cfg, [&] { return with_system(cfg, [&](const auto& s) { return run_shadow(s, cfg); }); });
}
int cmd_cantor(const RunConfig& cfg) {
  return finish(cfg, [&] { return with_system(cfg, [&](const auto& s) { return run_cantor(s, cfg); }); });
}
int cmd_chainrec(const RunConfig& cfg) {
  return finish(cfg, [&] { return with_system(cfg, [&](const auto& s) { return run_chainrec(s, cfg); }); });
}
int cmd_sensitivity(const RunConfig& cfg) {
  return finish(cfg, [&] { return with_system(cfg, [&](const auto& s) { return run_sensitivity(s, cfg); }); });
}
int cmd_cwx(const RunConfig& cfg) {
  return finish(cfg, [&] { return with_system(cfg, [&](const auto& s) { return run_cwx(s, cfg); }); });
}
int cmd_refute(const RunConfig& cfg) {
  return finish(cfg, [&] { return with_system(cfg, [&](const auto& s) { return run_refute(s, cfg); }); });
}

}  // namespace shadowdyn::cli
