// dialnet: command-line front end.
//
// Exit codes: 0 pass, 1 property failure (witness in the report),
// 2 input error, 3 resource limit.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dialnet/dialectica.hpp"
#include "dialnet/fnets.hpp"
#include "dialnet/io.hpp"
#include "dialnet/laws.hpp"
#include "dialnet/simulator.hpp"
#include "dialnet/toposys.hpp"

namespace {

using namespace dialnet;
using io::Json;

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_input = 2;
constexpr int exit_resource = 3;

struct Options {
  std::vector<std::string> files;
  std::optional<std::string> out;
  std::optional<std::size_t> cap;
  bool all_subsets = false;

  // laws
  std::uint64_t seed = 0;
  std::size_t max_size = 2;
  std::string grid = "0,1/2,1";
  std::string mode = "exhaustive";
  std::size_t samples = 300;

  // run
  std::optional<std::string> schedule;
  std::optional<std::size_t> explore;
  std::string threshold = "0";
};

void emit(const Json& j, const Options& opt) {
  if (opt.out) {
    io::write_file(*opt.out, j);
  } else {
    std::cout << io::dump(j);
  }
}

bool is_net(const Json& j) { return j.is_object() && j.contains("events"); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

Json key_json(const FinSet& s, std::size_t i) { return io::element_to_json(s.element(i)); }

void require_files(const Options& opt, std::size_t n, const char* usage) {
  if (opt.files.size() != n) throw ParseError(std::string("expected ") + usage);
}

// ---------------------------------------------------------------- check

int check_object(const Options& opt) {
  require_files(opt, 1, "OBJECT");
  const auto a = io::object_from_json(io::read_file(opt.files[0]));
  Json rep{{"kind", "object"}, {"status", "pass"}, {"U", a.left().size()}, {"X", a.right().size()},
           {"orientation", std::string(to_string(a.orientation()))}};
  emit(rep, opt);
  return exit_pass;
}

int check_morphism_cmd(const Options& opt) {
  require_files(opt, 3, "SOURCE TARGET MORPHISM");
  const auto a = io::object_from_json(io::read_file(opt.files[0]));
  const auto b = io::object_from_json(io::read_file(opt.files[1]));
  const auto [f, g] = io::morphism_maps_from_json(io::read_file(opt.files[2]), a, b);
  const auto v = check_morphism(a, b, f, g);
  Json rep{{"kind", "morphism"}, {"status", v ? "pass" : "fail"}};
  if (!v) {
    const auto& w = v.witness();
    rep["witness"] = Json{{"u", key_json(a.left(), w.u)},
                          {"y", key_json(b.right(), w.y)},
                          {"alpha(u,g(y))", a(w.u, g(w.y)).str()},
                          {"beta(f(u),y)", b(f(w.u), w.y).str()}};
  }
  emit(rep, opt);
  return v ? exit_pass : exit_fail;
}

Json axiom_witness(const io::RawSystem& s, const AxiomWitness& w) {
  Json subset = Json::array();
  for (auto a : w.subset) subset.push_back(key_json(s.frame.elements(), a));
  return Json{{"point", key_json(s.points, w.point)},
              {"clause", w.clause == AxiomClause::meet ? "meet" : "join"},
              {"subset", subset}};
}

int check_system_cmd(const Options& opt, const char* kind) {
  require_files(opt, 1, "SYSTEM");
  const auto s = io::raw_system_from_json(io::read_file(opt.files[0]));
  const auto mode = opt.all_subsets ? AxiomMode::all_subsets : AxiomMode::binary;
  const auto v = check_axioms(s.points, s.frame, s.sat, mode);
  Json rep{{"kind", kind}, {"mode", opt.all_subsets ? "all-subsets" : "binary"}, {"status", v ? "pass" : "fail"}};
  if (!v) {
    rep["witness"] = axiom_witness(s, v.witness());
  } else {
    bool top_positive = true, bottom_zero = true;
    const std::size_t n = s.frame.size();
    for (std::size_t x = 0; x < s.points.size(); ++x) {
      top_positive = top_positive && s.sat[x * n + s.frame.top()].positive();
      bottom_zero = bottom_zero && s.sat[x * n + s.frame.bottom()].is_zero();
    }
    rep["top_positive"] = top_positive;
    rep["bottom_zero"] = bottom_zero;
  }
  emit(rep, opt);
  return v ? exit_pass : exit_fail;
}

int check_net(const Options& opt) {
  require_files(opt, 1, "NET");
  const auto n = io::net_from_json(io::read_file(opt.files[0]));
  emit(Json{{"kind", "net"},
            {"status", "pass"},
            {"events", n.events().size()},
            {"conditions", n.conditions().size()},
            {"crisp", n.is_crisp()}},
       opt);
  return exit_pass;
}

int check_simulation_cmd(const Options& opt) {
  require_files(opt, 3, "SOURCE TARGET SIMULATION");
  const auto n = io::net_from_json(io::read_file(opt.files[0]));
  const auto m = io::net_from_json(io::read_file(opt.files[1]));
  const auto [f, big_f] = io::simulation_maps_from_json(io::read_file(opt.files[2]), n, m);
  const auto v = check_simulation(n, m, f, big_f);
  Json rep{{"kind", "simulation"}, {"status", v ? "pass" : "fail"}};
  if (!v) {
    const auto& w = v.witness();
    const bool pre = w.fibre == Fibre::pre;
    rep["witness"] = Json{{"e", key_json(n.events(), w.e)},
                          {"b'", key_json(m.conditions(), w.b)},
                          {"fibre", std::string(to_string(w.fibre))},
                          {"source", (pre ? n.pre(w.e, big_f(w.b)) : n.post(w.e, big_f(w.b))).str()},
                          {"target", (pre ? m.pre(f(w.e), w.b) : m.post(f(w.e), w.b)).str()}};
  }
  emit(rep, opt);
  return v ? exit_pass : exit_fail;
}

// ---------------------------------------------------------------- build

int build_binary(const Options& opt, const std::string& what) {
  require_files(opt, 2, "A B");
  const Json ja = io::read_file(opt.files[0]), jb = io::read_file(opt.files[1]);
  if (is_net(ja) != is_net(jb)) throw ParseError("cannot combine a net with a Dialectica object");
  if (is_net(ja)) {
    const auto a = io::net_from_json(ja), b = io::net_from_json(jb);
    const FuzzyNet r = what == "tensor"  ? net_tensor(a, b)
                       : what == "hom"   ? net_hom(a, b)
                       : what == "product" ? net_product(a, b)
                                           : net_coproduct(a, b);
    emit(io::net_to_json(r), opt);
  } else {
    const auto a = io::object_from_json(ja), b = io::object_from_json(jb);
    const DialObject r = what == "tensor"    ? tensor(a, b)
                         : what == "hom"     ? internal_hom(a, b)
                         : what == "product" ? product(a, b)
                                             : coproduct(a, b);
    emit(io::object_to_json(r), opt);
  }
  return exit_pass;
}

// curry A B C M, M : A (x) B -> C, writes A -> (B -o C).
// uncurry A B C N, N : A -> (B -o C), writes A (x) B -> C.
int build_closure(const Options& opt, bool curry_dir) {
  require_files(opt, 4, "A B C MORPHISM");
  const Json ja = io::read_file(opt.files[0]), jb = io::read_file(opt.files[1]), jc = io::read_file(opt.files[2]);
  const Json jm = io::read_file(opt.files[3]);
  if (is_net(ja)) {
    const auto a = io::net_from_json(ja), b = io::net_from_json(jb), c = io::net_from_json(jc);
    if (curry_dir) {
      const auto ab = net_tensor(a, b);
      const auto [f, g] = io::simulation_maps_from_json(jm, ab, c);
      emit(io::simulation_to_json(net_curry(a, b, NetMorphism::create(ab, c, f, g))), opt);
    } else {
      const auto bc = net_hom(b, c);
      const auto [f, g] = io::simulation_maps_from_json(jm, a, bc);
      emit(io::simulation_to_json(net_uncurry(b, c, NetMorphism::create(a, bc, f, g))), opt);
    }
  } else {
    const auto a = io::object_from_json(ja), b = io::object_from_json(jb), c = io::object_from_json(jc);
    if (curry_dir) {
      const auto ab = tensor(a, b);
      const auto [f, g] = io::morphism_maps_from_json(jm, ab, c);
      emit(io::morphism_to_json(curry(a, b, DialMorphism::create(ab, c, f, g))), opt);
    } else {
      const auto bc = internal_hom(b, c);
      const auto [f, g] = io::morphism_maps_from_json(jm, a, bc);
      emit(io::morphism_to_json(uncurry(b, c, DialMorphism::create(a, bc, f, g))), opt);
    }
  }
  return exit_pass;
}

// ---------------------------------------------------------------- laws

int laws_cmd(const Options& opt) {
  LawSuiteConfig cfg;
  cfg.max_carrier_size = opt.max_size;
  cfg.seed = opt.seed;
  cfg.samples = opt.samples;
  cfg.cap = opt.cap.value_or(limits().cap.load());
  if (opt.mode == "exhaustive") {
    cfg.mode = LawMode::exhaustive;
  } else if (opt.mode == "randomized") {
    cfg.mode = LawMode::randomized;
  } else {
    throw ParseError("--mode must be exhaustive or randomized");
  }
  cfg.grid.clear();
  for (const auto& g : split(opt.grid, ',')) cfg.grid.push_back(Degree::parse(g));
  if (cfg.grid.empty()) throw ParseError("--grid needs at least one degree");
  const auto rep = run_law_suite(cfg);
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
  emit(to_json(rep), opt);
  return rep.passed() ? exit_pass : exit_fail;
}

// ---------------------------------------------------------------- run

int run_cmd(const Options& opt) {
  require_files(opt, 2, "NET MARKING");
  const auto n = io::net_from_json(io::read_file(opt.files[0]));
  const auto m0 = io::marking_from_json(io::read_file(opt.files[1]), n.conditions());
  const Degree theta = Degree::parse(opt.threshold);
  std::ostringstream out;
  auto line = [&](const Json& j) { out << j.dump() << "\n"; };
  auto flush = [&] {
    if (opt.out) {
      std::ofstream f(*opt.out, std::ios::binary);
      if (!f) throw ParseError(*opt.out + ": cannot write file");
      f << out.str();
    } else {
      std::cout << out.str();
    }
  };
  if (opt.explore) {
    if (opt.schedule) throw ParseError("--schedule and --explore are exclusive");
    const auto g = explore(n, m0, *opt.explore, theta);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      line(Json{{"node", i}, {"depth", g.depth[i]}, {"marking", io::marking_to_json(g.nodes[i])}});
    }
    for (const auto& e : g.edges) {
      line(Json{{"from", e.from},
                {"event", key_json(n.events(), e.event)},
                {"enabledness", e.enabledness.str()},
                {"to", e.to}});
    }
    flush();
    return exit_pass;
  }
  std::vector<std::size_t> schedule;
  for (const auto& key : split(opt.schedule.value_or(""), ',')) {
    schedule.push_back(event_index(n, Element::atom(key)));
  }
  Marking current = m0;
  for (std::size_t step = 0; step < schedule.size(); ++step) {
    try {
      const auto trace = run(n, current, {schedule[step]}, theta);
      current = trace[0].marking_after;
      line(io::trace_step_to_json(step, n, trace[0]));
    } catch (const NotEnabled& e) {
      line(Json{{"error", "NotEnabled"},
                {"step", step},
                {"event", key_json(n.events(), e.event)},
                {"enabledness", e.enabledness.str()},
                {"threshold", e.threshold.str()}});
      flush();
      std::cerr << "error: event '" << n.events().element(e.event).key() << "' not enabled at step " << step
                << " (enabledness " << e.enabledness.str() << ", threshold " << e.threshold.str() << ")\n";
      return exit_fail;
    }
  }
  flush();
  return exit_pass;
}

// ---------------------------------------------------------------- topo

Json closure_json(const ClosureWitness& w, const FuzzyTopSystem& s) {
  return Json{{"a", key_json(s.opens().elements(), w.a)},
              {"b", key_json(s.opens().elements(), w.b)},
              {"point", key_json(s.points(), w.point)},
              {"clause", w.clause == AxiomClause::meet ? "meet" : "join"},
              {"pointwise", w.expected.str()},
              {"extent", w.actual.str()}};
}

int topo_extent(const Options& opt, bool closure_table) {
  require_files(opt, 1, "SYSTEM");
  const auto s = io::system_from_json(io::read_file(opt.files[0]));
  const auto rep = check_extent_topology(s);
  Json j{{"kind", closure_table ? "closure" : "extent"},
         {"verdict", std::string(to_string(rep.verdict))},
         {"bottom_is_empty", rep.bottom_is_empty},
         {"top_is_positive", rep.top_is_positive},
         {"contains_whole", rep.contains_whole}};
  if (rep.first_exact_failure) j["first_exact_failure"] = closure_json(*rep.first_exact_failure, s);
  if (rep.first_support_failure) j["first_support_failure"] = closure_json(*rep.first_support_failure, s);
  if (closure_table) {
    Json pairs = Json::array();
    for (const auto& p : rep.pairs) {
      pairs.push_back(Json{{"a", key_json(s.opens().elements(), p.a)},
                           {"b", key_json(s.opens().elements(), p.b)},
                           {"meet_exact", p.meet_exact},
                           {"meet_support", p.meet_support},
                           {"join_exact", p.join_exact},
                           {"join_support", p.join_support}});
    }
    j["pairs"] = pairs;
  }
  emit(j, opt);
  return rep.verdict == ExtentClass::fails ? exit_fail : exit_pass;
}

int topo_continuity(const Options& opt) {
  require_files(opt, 3, "SYSTEM1 SYSTEM2 MAP");
  const auto s1 = io::system_from_json(io::read_file(opt.files[0]));
  const auto s2 = io::system_from_json(io::read_file(opt.files[1]));
  const Json jm = io::read_file(opt.files[2]);
  const auto f = io::map_from_json(io::detail::field(jm, "f", ""), s1.points(), s2.points(), "/f");
  const auto phi = io::map_from_json(io::detail::field(jm, "phi", ""), s2.opens().elements(),
                                     s1.opens().elements(), "/phi");
  const auto rep = check_continuity(s1, s2, f, phi);
  auto pair_json = [&](const Verdict<PairWitness>& v) {
    Json j{{"status", v ? "pass" : "fail"}};
    if (!v) {
      j["point"] = key_json(s1.points(), v.witness().u);
      j["open"] = key_json(s2.opens().elements(), v.witness().y);
    }
    return j;
  };
  Json hom{{"status", rep.frame_hom ? "pass" : "fail"}};
  if (!rep.frame_hom) {
    hom["law"] = rep.frame_hom.witness().law;
    hom["a"] = key_json(s2.opens().elements(), rep.frame_hom.witness().a);
    hom["b"] = key_json(s2.opens().elements(), rep.frame_hom.witness().b);
  }
  const bool ok = rep.dial && rep.frame_hom;
  emit(Json{{"kind", "continuity"},
            {"status", ok ? "pass" : "fail"},
            {"dial", pair_json(rep.dial)},
            {"frame_hom", hom},
            {"support", pair_json(rep.support)}},
       opt);
  return ok ? exit_pass : exit_fail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dialnet: Dialectica categories, fuzzy Petri nets and fuzzy topological systems"};
  app.require_subcommand(1);
  Options opt;
  std::size_t cap_flag = 0;
  app.add_option("--cap", cap_flag, "Cap on materialized carrier sizes (overrides DIALNET_CAP)");

  auto files = [&](CLI::App* sub, const char* desc) { sub->add_option("files", opt.files, desc)->required(); };
  auto out = [&](CLI::App* sub) {
    sub->add_option_function<std::string>("--out", [&](const std::string& s) { opt.out = s; }, "Write to FILE");
  };

  std::function<int()> action;

  auto* check = app.add_subcommand("check", "Validate an artifact")->require_subcommand(1);
  auto* c_obj = check->add_subcommand("object", "Dialectica object");
  files(c_obj, "OBJECT");
  c_obj->callback([&] { action = [&] { return check_object(opt); }; });
  auto* c_mor = check->add_subcommand("morphism", "Dialectica morphism");
  files(c_mor, "SOURCE TARGET MORPHISM");
  c_mor->callback([&] { action = [&] { return check_morphism_cmd(opt); }; });
  auto* c_sys = check->add_subcommand("system", "Fuzzy topological system axioms");
  files(c_sys, "SYSTEM");
  c_sys->add_flag("--all-subsets", opt.all_subsets, "Check every subset instead of empty set and pairs");
  c_sys->callback([&] { action = [&] { return check_system_cmd(opt, "system"); }; });
  auto* c_net = check->add_subcommand("net", "Fuzzy Petri net");
  files(c_net, "NET");
  c_net->callback([&] { action = [&] { return check_net(opt); }; });
  auto* c_sim = check->add_subcommand("simulation", "Net simulation");
  files(c_sim, "SOURCE TARGET SIMULATION");
  c_sim->callback([&] { action = [&] { return check_simulation_cmd(opt); }; });
  for (auto* s : {c_obj, c_mor, c_sys, c_net, c_sim}) out(s);

  auto* build = app.add_subcommand("build", "Construct an object, net or morphism")->require_subcommand(1);
  for (const char* what : {"tensor", "hom", "product", "coproduct"}) {
    auto* b = build->add_subcommand(what, std::string(what) + " of two objects or two nets");
    files(b, "A B");
    out(b);
    const std::string w = what;
    b->callback([&, w] { action = [&, w] { return build_binary(opt, w); }; });
  }
  auto* b_curry = build->add_subcommand("curry", "A B C M with M : A (x) B -> C");
  auto* b_uncurry = build->add_subcommand("uncurry", "A B C N with N : A -> (B -o C)");
  for (auto* b : {b_curry, b_uncurry}) {
    files(b, "A B C MORPHISM");
    out(b);
  }
  b_curry->callback([&] { action = [&] { return build_closure(opt, true); }; });
  b_uncurry->callback([&] { action = [&] { return build_closure(opt, false); }; });

  auto* laws = app.add_subcommand("laws", "Run the law-verification suite");
  laws->add_option("--seed", opt.seed, "Seed for the random instances");
  laws->add_option("--max-size", opt.max_size, "Largest carrier size");
  laws->add_option("--grid", opt.grid, "Comma-separated degrees");
  laws->add_option("--mode", opt.mode, "exhaustive or randomized");
  laws->add_option("--samples", opt.samples, "Random instances per law");
  out(laws);
  laws->callback([&] { action = [&] { return laws_cmd(opt); }; });

  auto* runc = app.add_subcommand("run", "Play the token game");
  files(runc, "NET MARKING");
  runc->add_option_function<std::string>("--schedule", [&](const std::string& s) { opt.schedule = s; },
                                         "Comma-separated events");
  runc->add_option_function<std::size_t>("--explore", [&](std::size_t k) { opt.explore = k; },
                                         "Explore all firing sequences up to depth K");
  runc->add_option("--threshold", opt.threshold, "Fire only when enabledness exceeds this degree");
  out(runc);
  runc->callback([&] { action = [&] { return run_cmd(opt); }; });

  auto* topo = app.add_subcommand("topo", "Fuzzy topological systems")->require_subcommand(1);
  auto* t_ax = topo->add_subcommand("axioms", "Satisfaction axioms");
  files(t_ax, "SYSTEM");
  t_ax->add_flag("--all-subsets", opt.all_subsets, "Check every subset instead of empty set and pairs");
  t_ax->callback([&] { action = [&] { return check_system_cmd(opt, "axioms"); }; });
  auto* t_ext = topo->add_subcommand("extent", "Classify the extents");
  files(t_ext, "SYSTEM");
  t_ext->callback([&] { action = [&] { return topo_extent(opt, false); }; });
  auto* t_clo = topo->add_subcommand("closure", "Per-pair closure of the extents");
  files(t_clo, "SYSTEM");
  t_clo->callback([&] { action = [&] { return topo_extent(opt, true); }; });
  auto* t_con = topo->add_subcommand("continuity", "Check a map of systems");
  files(t_con, "SYSTEM1 SYSTEM2 MAP");
  t_con->callback([&] { action = [&] { return topo_continuity(opt); }; });
  for (auto* s : {t_ax, t_ext, t_clo, t_con}) out(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_input;
  }

  limits().on_warning = [](std::string_view msg) { std::cerr << "warning: " << msg << "\n"; };
  try {
    if (const char* env = std::getenv("DIALNET_CAP")) {
      const std::string s = env;
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("DIALNET_CAP must be a non-negative integer, got '" + s + "'");
      }
      limits().cap = std::stoull(s);
    }
    if (app.count("--cap")) {
      opt.cap = cap_flag;
      limits().cap = cap_flag;
    }
    return action();
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return exit_resource;
  } catch (const Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  }
}
