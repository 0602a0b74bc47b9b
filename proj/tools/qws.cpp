// Command-line front end: graph construction, symmetry analysis, reduction,
// evolution, schedule search, gamma scans, and reduced-vs-full verification.
//
// Exit codes: 0 success, 1 bad input or config, 2 numeric or resource
// failure, 3 verification failure.
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qws/bigint.hpp"
#include "qws/dynamics.hpp"
#include "qws/errors.hpp"
#include "qws/graph.hpp"
#include "qws/io.hpp"
#include "qws/reduction.hpp"
#include "qws/search.hpp"
#include "qws/symmetry.hpp"

namespace {

using OptMap = std::map<std::string, std::string>;

std::optional<std::string> opt_str(const OptMap& o, const std::string& key) {
  const auto it = o.find(key);
  if (it == o.end()) return std::nullopt;
  return it->second;
}

std::string req_str(const OptMap& o, const std::string& key) {
  const auto v = opt_str(o, key);
  if (!v) throw qws::InvalidParameter("missing required key '" + key + "'");
  return *v;
}

int parse_int(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw qws::InvalidParameter("key '" + key + "' needs an integer, got '" +
                                s + "'");
  }
}

long long parse_ll(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw qws::InvalidParameter("key '" + key + "' needs an integer, got '" +
                                s + "'");
  }
}

double parse_dbl(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw qws::InvalidParameter("key '" + key + "' needs a number, got '" + s +
                                "'");
  }
}

int req_int(const OptMap& o, const std::string& key) {
  return parse_int(req_str(o, key), key);
}

int opt_int(const OptMap& o, const std::string& key, int def) {
  const auto v = opt_str(o, key);
  return v ? parse_int(*v, key) : def;
}

long long opt_ll(const OptMap& o, const std::string& key, long long def) {
  const auto v = opt_str(o, key);
  return v ? parse_ll(*v, key) : def;
}

double req_dbl(const OptMap& o, const std::string& key) {
  return parse_dbl(req_str(o, key), key);
}

double opt_dbl(const OptMap& o, const std::string& key, double def) {
  const auto v = opt_str(o, key);
  return v ? parse_dbl(*v, key) : def;
}

qws::Graph make_graph(const OptMap& o) {
  const std::string fam = req_str(o, "graph.family");
  if (fam == "complete") return qws::build_complete(req_int(o, "graph.n"));
  if (fam == "tree")
    return qws::build_balanced_tree(req_int(o, "graph.r"),
                                    req_int(o, "graph.m"));
  if (fam == "simplex")
    return qws::build_truncated_simplex(req_int(o, "graph.order"),
                                        req_int(o, "graph.m"));
  if (fam == "custom") return qws::load_edge_list_file(req_str(o, "graph.edges"));
  throw qws::InvalidParameter("unknown graph.family '" + fam +
                              "' (complete|tree|simplex|custom)");
}

int marked_of(const OptMap& o, const qws::Graph& g) {
  const auto v = opt_str(o, "marked");
  return v ? parse_int(*v, "marked") : g.default_marked();
}

qws::MatrixKind kind_of(const OptMap& o) {
  const std::string k = opt_str(o, "matrix").value_or("laplacian");
  if (k == "laplacian") return qws::MatrixKind::Laplacian;
  if (k == "adjacency") return qws::MatrixKind::Adjacency;
  throw qws::InvalidParameter("unknown matrix '" + k +
                              "' (laplacian|adjacency)");
}

qws::Schedule parse_schedule(const std::string& text) {
  std::vector<qws::Stage> stages;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw qws::InvalidParameter(
          "schedule stages are 'gamma:duration', got '" + item + "'");
    qws::Stage st;
    st.gamma = parse_dbl(item.substr(0, colon), "schedule");
    st.duration = parse_dbl(item.substr(colon + 1), "schedule");
    stages.push_back(st);
  }
  return qws::Schedule::make(std::move(stages));
}

qws::Schedule schedule_of(const OptMap& o, const qws::Graph& g) {
  const auto text = opt_str(o, "schedule");
  if (text) return parse_schedule(*text);
  return qws::predicted_schedule(g);
}

qws::AutomorphismOptions aut_opts(const OptMap& o, std::optional<int> marked) {
  qws::AutomorphismOptions a;
  a.max_vertices = opt_int(o, "cap.search", a.max_vertices);
  a.node_budget = opt_ll(o, "cap.budget", a.node_budget);
  a.marked = marked;
  return a;
}

std::string symmetry_source(const OptMap& o, const qws::Graph& g) {
  std::string source = opt_str(o, "symmetry.source")
                           .value_or(opt_str(o, "symmetry.file") ? "file"
                                                                 : "auto");
  if (source == "auto") {
    const qws::Family kind = g.family().kind;
    source = (kind == qws::Family::Complete ||
              kind == qws::Family::BalancedTree)
                 ? "family"
                 : "search";
  }
  return source;
}

qws::GeneratorSet load_generator_file(const OptMap& o) {
  const std::string path = req_str(o, "symmetry.file");
  std::ifstream in(path);
  if (!in)
    throw qws::InvalidParameter("cannot open generator file '" + path + "'");
  return qws::load_generators(in);
}

qws::GeneratorSet full_gens(const OptMap& o, const qws::Graph& g) {
  const std::string source = symmetry_source(o, g);
  if (source == "family") return qws::family_generators(g);
  if (source == "search")
    return qws::find_automorphisms(g, aut_opts(o, std::nullopt));
  if (source == "file") return load_generator_file(o);
  throw qws::InvalidParameter("unknown symmetry.source '" + source +
                              "' (auto|family|search|file)");
}

qws::GeneratorSet stab_gens(const OptMap& o, const qws::Graph& g, int w) {
  const std::string source = symmetry_source(o, g);
  if (source == "search") return qws::find_automorphisms(g, aut_opts(o, w));
  qws::GeneratorSet gens =
      source == "family" ? qws::family_generators(g) : load_generator_file(o);
  if (gens.claims == qws::GeneratorClaims::StabilizerOf) {
    if (gens.fixed_vertex != w)
      throw qws::InvalidParameter(
          "generator file stabilizes vertex " +
          std::to_string(gens.fixed_vertex) + ", not the marked vertex " +
          std::to_string(w));
    return gens;
  }
  return qws::stabilizer(gens, w);
}

qws::ReducedBasis basis_of(const OptMap& o, const qws::Graph& g, int w,
                           bool unmarked) {
  if (unmarked)
    return qws::ReducedBasis::from_orbits(qws::orbits(full_gens(o, g)), g,
                                          std::nullopt);
  return qws::ReducedBasis::from_orbits(qws::orbits(stab_gens(o, g, w)), g, w);
}

void write_output(const OptMap& o, const std::string& key,
                  const std::string& content) {
  const auto path = opt_str(o, key);
  if (!path) {
    std::cout << content;
    return;
  }
  std::ofstream out(*path);
  if (!out)
    throw qws::InvalidParameter("cannot open output file '" + *path + "'");
  out << content;
}

std::string stage_path(const std::string& base, std::size_t stage) {
  const std::size_t dot = base.find_last_of('.');
  const std::size_t slash = base.find_last_of('/');
  const std::string tag = ".stage" + std::to_string(stage);
  if (dot == std::string::npos ||
      (slash != std::string::npos && dot < slash))
    return base + tag;
  return base.substr(0, dot) + tag + base.substr(dot);
}

std::string sizes_line(const std::vector<int>& sizes) {
  std::string out = "[";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sizes[i]);
  }
  out += ']';
  return out;
}

std::vector<double> uniform_grid(double tmax, int steps) {
  if (steps < 2)
    throw qws::InvalidParameter("time.steps must be at least 2");
  std::vector<double> t(steps);
  for (int i = 0; i < steps; ++i)
    t[i] = tmax * static_cast<double>(i) / (steps - 1);
  return t;
}

// ---------------------------------------------------------------------------

int cmd_build(const OptMap& o) {
  const qws::Graph g = make_graph(o);
  std::cout << "family=" << qws::family_name(g.family().kind) << '\n'
            << "n=" << g.n() << '\n'
            << "m=" << g.m() << '\n'
            << "degree_min=" << g.min_degree() << '\n'
            << "degree_max=" << g.max_degree() << '\n'
            << "regular=" << (g.is_regular() ? "yes" : "no") << '\n'
            << "marked=" << marked_of(o, g) << '\n';
  if (const auto path = opt_str(o, "out.edges")) {
    std::ofstream out(*path);
    if (!out)
      throw qws::InvalidParameter("cannot open output file '" + *path + "'");
    qws::save_edge_list(g, out);
  }
  return 0;
}

int cmd_symmetry(const OptMap& o, bool want_stabilizer) {
  const qws::Graph g = make_graph(o);
  const qws::GeneratorSet gens = want_stabilizer
                                     ? stab_gens(o, g, marked_of(o, g))
                                     : full_gens(o, g);
  const qws::OrbitPartition parts = qws::orbits(gens);
  qws::GroupOrderOptions go;
  go.max_stored_images = opt_ll(o, "cap.images", go.max_stored_images);
  std::cout << "claims=" << gens.claims_string() << '\n'
            << "generators=" << gens.gens.size() << '\n'
            << "group_order=" << qws::group_order(gens, go).to_string() << '\n'
            << "orbit_classes=" << parts.count() << '\n'
            << "orbit_sizes=" << sizes_line(parts.sizes()) << '\n';
  if (const auto path = opt_str(o, "out.generators")) {
    std::ofstream out(*path);
    if (!out)
      throw qws::InvalidParameter("cannot open output file '" + *path + "'");
    qws::save_generators(gens, out);
  }
  return 0;
}

int cmd_reduce(const OptMap& o) {
  const qws::Graph g = make_graph(o);
  const int w = marked_of(o, g);
  const qws::MatrixKind kind = kind_of(o);
  const double gamma = opt_dbl(o, "gamma", 1.0);
  const qws::ReducedBasis basis = basis_of(o, g, w, false);
  const qws::SymMatrix h = qws::search_hamiltonian(g, {kind, gamma, w});
  const qws::ReducedHamiltonian rh = qws::reduce(h, basis, {kind, gamma, w});

  qws::JsonValue doc = qws::JsonValue::object();
  doc.set("family", qws::JsonValue::string(qws::family_name(g.family().kind)));
  doc.set("n", qws::JsonValue::integer(g.n()));
  doc.set("marked", qws::JsonValue::integer(w));
  doc.set("matrix", qws::JsonValue::string(qws::matrix_kind_name(kind)));
  doc.set("gamma", qws::JsonValue::number(gamma));
  qws::JsonValue classes = qws::JsonValue::array();
  for (int a = 0; a < basis.dim(); ++a) {
    qws::JsonValue c = qws::JsonValue::object();
    c.set("label", qws::JsonValue::string(basis.labels[a]));
    c.set("size", qws::JsonValue::integer(basis.sizes[a]));
    classes.push(std::move(c));
  }
  doc.set("classes", std::move(classes));
  qws::JsonValue rows = qws::JsonValue::array();
  for (int a = 0; a < basis.dim(); ++a) {
    qws::JsonValue row = qws::JsonValue::array();
    for (int b = 0; b < basis.dim(); ++b)
      row.push(qws::JsonValue::number(rh.matrix(a, b)));
    rows.push(std::move(row));
  }
  doc.set("matrix_elements", std::move(rows));
  doc.set("invariance_residual",
          qws::JsonValue::number(qws::invariance_residual(h, basis)));
  write_output(o, "out.json", doc.dump());
  return 0;
}

int cmd_evolve(const OptMap& o, bool full_space) {
  const qws::Graph g = make_graph(o);
  const int w = marked_of(o, g);
  const qws::MatrixKind kind = kind_of(o);
  const double gamma = opt_dbl(o, "gamma", 1.0);
  const double tmax = req_dbl(o, "time.tmax");
  const int steps = opt_int(o, "time.steps", 1001);
  const std::vector<double> times = uniform_grid(tmax, steps);
  const qws::SymMatrix h = qws::search_hamiltonian(g, {kind, gamma, w});

  qws::EvolutionTrace trace;
  if (full_space) {
    const int cap = opt_int(o, "cap.full", 2048);
    if (g.n() > cap)
      throw qws::ResourceLimit("full-space evolution capped at dimension " +
                               std::to_string(cap));
    qws::TraceMeta meta;
    for (int i = 0; i < g.n(); ++i) meta.labels.push_back(g.label(i));
    trace = qws::evolve(qws::eigendecompose(h), qws::uniform_state_c(g.n()),
                        times, meta);
  } else {
    const qws::ReducedBasis basis = basis_of(o, g, w, false);
    const qws::ReducedHamiltonian rh = qws::reduce(h, basis, {kind, gamma, w});
    trace = qws::evolve(
        qws::eigendecompose(rh.matrix),
        qws::project_state(qws::uniform_state_c(g.n()), basis), times,
        qws::TraceMeta{qws::BasisKind::Reduced, basis.sizes, basis.labels});
  }
  std::ostringstream csv;
  qws::write_trace_csv(trace, csv);
  write_output(o, "out.csv", csv.str());
  return 0;
}

int cmd_search(const OptMap& o, bool full_space, bool verify_full) {
  const qws::Graph g = make_graph(o);
  const int w = marked_of(o, g);
  const qws::MatrixKind kind = kind_of(o);
  const qws::Schedule sched = schedule_of(o, g);
  qws::SearchOptions sopts;
  sopts.steps = opt_int(o, "time.steps", sopts.steps);

  std::optional<qws::ReducedBasis> basis;
  if (!full_space) basis = basis_of(o, g, w, false);
  if (full_space) {
    const int cap = opt_int(o, "cap.full", 2048);
    if (g.n() > cap)
      throw qws::ResourceLimit("full-space search capped at dimension " +
                               std::to_string(cap));
  }
  const qws::SearchReport rep = qws::run_schedule(
      g, kind, w, sched, basis ? &*basis : nullptr, sopts);

  std::optional<double> deviation;
  if (verify_full) {
    if (!basis)
      throw qws::InvalidParameter(
          "--verify-full needs the reduced space (drop --full)");
    qws::VerifyOptions vopts;
    vopts.steps = opt_int(o, "verify.steps", 201);
    vopts.max_full_dim = opt_int(o, "cap.full", vopts.max_full_dim);
    deviation = qws::verify_reduced_vs_full(g, kind, w, sched, *basis, vopts);
  }

  qws::JsonValue doc = qws::JsonValue::object();
  doc.set("family", qws::JsonValue::string(qws::family_name(g.family().kind)));
  doc.set("n", qws::JsonValue::integer(g.n()));
  doc.set("marked", qws::JsonValue::integer(w));
  doc.set("matrix", qws::JsonValue::string(qws::matrix_kind_name(kind)));
  doc.set("space",
          qws::JsonValue::string(full_space ? "full" : "reduced"));
  doc.set("final_success", qws::JsonValue::number(rep.final_success));
  qws::JsonValue stages = qws::JsonValue::array();
  for (const auto& st : rep.stages) {
    qws::JsonValue s = qws::JsonValue::object();
    s.set("gamma", qws::JsonValue::number(st.gamma));
    s.set("duration", qws::JsonValue::number(st.duration));
    s.set("gap", qws::JsonValue::number(st.gap));
    s.set("target_label",
          qws::JsonValue::string(st.trace.labels[st.target]));
    s.set("peak_time", qws::JsonValue::number(st.measured_peak_time));
    s.set("peak_value", qws::JsonValue::number(st.peak_value));
    stages.push(std::move(s));
  }
  doc.set("stages", std::move(stages));
  if (deviation)
    doc.set("reduced_full_deviation", qws::JsonValue::number(*deviation));
  write_output(o, "out.json", doc.dump());

  if (const auto csv_base = opt_str(o, "out.csv")) {
    for (std::size_t k = 0; k < rep.stages.size(); ++k) {
      const std::string path = stage_path(*csv_base, k);
      std::ofstream out(path);
      if (!out)
        throw qws::InvalidParameter("cannot open output file '" + path + "'");
      qws::write_trace_csv(rep.stages[k].trace, out);
    }
  }

  if (deviation) {
    const double tol = opt_dbl(o, "tol.reduced", 1e-8);
    if (!(*deviation <= tol)) {
      std::cerr << "verification failed: reduced_full_deviation="
                << qws::fmt_json(*deviation) << " tol=" << qws::fmt_json(tol)
                << '\n';
      return 3;
    }
  }
  return 0;
}

int cmd_scan(const OptMap& o) {
  const qws::Graph g = make_graph(o);
  const int w = marked_of(o, g);
  const qws::MatrixKind kind = kind_of(o);
  const qws::ReducedBasis basis = basis_of(o, g, w, false);

  std::vector<double> gammas;
  if (const auto text = opt_str(o, "scan.gammas")) {
    std::istringstream in(*text);
    std::string item;
    while (std::getline(in, item, ','))
      gammas.push_back(parse_dbl(item, "scan.gammas"));
  }
  double horizon = opt_dbl(o, "scan.horizon", 0.0);
  if (gammas.empty() || horizon <= 0.0) {
    const qws::Schedule pred = qws::predicted_schedule(g);
    if (gammas.empty())
      gammas = qws::default_gamma_grid(pred.stages.back().gamma);
    if (horizon <= 0.0) horizon = 1.5 * pred.stages.back().duration;
  }
  const int steps = opt_int(o, "time.steps", 1001);

  const auto points = qws::scan_gamma(g, kind, w, basis, gammas, horizon,
                                      steps);
  std::ostringstream csv;
  csv << "gamma,gap,max_success,argmax_time\n";
  for (const auto& pt : points)
    csv << qws::fmt_csv(pt.gamma) << ',' << qws::fmt_csv(pt.gap) << ','
        << qws::fmt_csv(pt.max_success) << ',' << qws::fmt_csv(pt.argmax_time)
        << '\n';
  write_output(o, "out.csv", csv.str());
  return 0;
}

int cmd_verify(const OptMap& o, bool unmarked_basis) {
  const qws::Graph g = make_graph(o);
  const int w = marked_of(o, g);
  const qws::MatrixKind kind = kind_of(o);
  const qws::Schedule sched = schedule_of(o, g);
  const qws::ReducedBasis basis = basis_of(o, g, w, unmarked_basis);

  const double tol_inv = opt_dbl(o, "tol.invariance", 1e-12);
  const double tol_orb = opt_dbl(o, "tol.orbit", 1e-10);
  const double tol_red = opt_dbl(o, "tol.reduced", 1e-8);
  const double tol_uni = opt_dbl(o, "tol.unitary", 1e-9);
  const int cap_full = opt_int(o, "cap.full", 2048);
  if (g.n() > cap_full)
    throw qws::ResourceLimit("verification needs the full space; capped at " +
                             std::to_string(cap_full));

  double inv = 0.0;
  for (const auto& st : sched.stages)
    inv = std::max(inv, qws::invariance_residual(
                            qws::search_hamiltonian(g, {kind, st.gamma, w}),
                            basis));

  double orb_dev = 0.0, uni_dev = 0.0;
  {
    qws::CplxVec psi = qws::uniform_state_c(g.n());
    for (const auto& st : sched.stages) {
      const qws::Spectrum spec = qws::eigendecompose(
          qws::search_hamiltonian(g, {kind, st.gamma, w}));
      const std::vector<double> times = uniform_grid(
          st.duration > 0.0 ? st.duration : 1.0, 100);
      const qws::EvolutionTrace tr = qws::evolve(spec, psi, times);
      for (int t = 0; t < tr.steps(); ++t) {
        double nrm2 = 0.0;
        for (int i = 0; i < g.n(); ++i) nrm2 += tr.probability(t, i);
        uni_dev = std::max(uni_dev, std::abs(std::sqrt(nrm2) - 1.0));
        for (const auto& cls : basis.classes) {
          const qws::Cplx first = tr.amplitude(t, cls.front());
          for (int mem : cls)
            orb_dev =
                std::max(orb_dev, std::abs(tr.amplitude(t, mem) - first));
        }
      }
      psi = qws::evolve_state(spec, psi, st.duration);
    }
  }

  qws::VerifyOptions vopts;
  vopts.steps = opt_int(o, "verify.steps", 201);
  vopts.max_full_dim = cap_full;
  const double red_dev =
      qws::verify_reduced_vs_full(g, kind, w, sched, basis, vopts);

  int passed = 0;
  auto report = [&passed](const char* name, double value, double tol) {
    const bool ok = value <= tol;
    if (ok) ++passed;
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name
              << " value=" << qws::fmt_json(value)
              << " tol=" << qws::fmt_json(tol) << '\n';
    return ok;
  };
  bool all = true;
  all &= report("invariance_residual", inv, tol_inv);
  all &= report("orbit_uniformity", orb_dev, tol_orb);
  all &= report("reduced_vs_full", red_dev, tol_red);
  all &= report("unitarity", uni_dev, tol_uni);
  std::cout << "verify: " << (all ? "PASS" : "FAIL") << " (" << passed
            << "/4)\n";
  return all ? 0 : 3;
}

int cmd_lanczos(const OptMap& o) {
  const qws::Graph g = make_graph(o);
  const int w = marked_of(o, g);
  const qws::MatrixKind kind = kind_of(o);
  const double gamma = opt_dbl(o, "gamma", 1.0);
  const int k = opt_int(o, "lanczos.k", 8);
  const int cap = opt_int(o, "cap.full", 2048);
  if (g.n() > cap)
    throw qws::ResourceLimit("Krylov construction capped at dimension " +
                             std::to_string(cap));
  const qws::SymMatrix h = qws::search_hamiltonian(g, {kind, gamma, w});
  qws::RealVec start(g.n(), 0.0);
  start[w] = 1.0;
  const auto vectors =
      qws::lanczos_basis(h, start, k, opt_dbl(o, "tol.deflation", 1e-10));

  qws::JsonValue doc = qws::JsonValue::object();
  doc.set("family", qws::JsonValue::string(qws::family_name(g.family().kind)));
  doc.set("n", qws::JsonValue::integer(g.n()));
  doc.set("marked", qws::JsonValue::integer(w));
  doc.set("gamma", qws::JsonValue::number(gamma));
  doc.set("k", qws::JsonValue::integer(k));
  doc.set("dim", qws::JsonValue::integer(static_cast<long long>(vectors.size())));
  qws::JsonValue arr = qws::JsonValue::array();
  for (const auto& v : vectors) {
    qws::JsonValue row = qws::JsonValue::array();
    for (double x : v) row.push(qws::JsonValue::number(x));
    arr.push(std::move(row));
  }
  doc.set("vectors", std::move(arr));
  write_output(o, "out.json", doc.dump());
  return 0;
}

struct CliState {
  std::string config_path;
  std::vector<std::string> sets;
  std::optional<std::string> family, edges, matrix, schedule, symmetry,
      symmetry_file, out_json, out_csv, out_edges, out_generators;
  std::optional<int> n, r, m, order, marked, steps, k;
  std::optional<double> gamma, tmax, horizon;
  std::optional<std::string> scan_gammas;
  bool full = false;
  bool verify_full = false;
  bool unmarked_basis = false;
  bool want_stabilizer = false;
};

void add_common(CLI::App* sub, CliState& c) {
  sub->add_option("--config", c.config_path, "config file of key = value lines");
  sub->add_option("--set", c.sets, "override a config key (KEY=VALUE)")
      ->type_name("KEY=VALUE");
  sub->add_option("--family", c.family, "complete|tree|simplex|custom");
  sub->add_option("--n", c.n, "vertex count (complete)");
  sub->add_option("--r", c.r, "tree height");
  sub->add_option("--m", c.m, "branching factor");
  sub->add_option("--order", c.order, "simplex truncation order");
  sub->add_option("--edges", c.edges, "edge list file (custom)");
  sub->add_option("--marked", c.marked, "marked vertex");
  sub->add_option("--matrix", c.matrix, "laplacian|adjacency");
  sub->add_option("--gamma", c.gamma, "jumping rate");
  sub->add_option("--schedule", c.schedule,
                  "stages as gamma:duration,gamma:duration,...");
  sub->add_option("--tmax", c.tmax, "trace horizon");
  sub->add_option("--steps", c.steps, "trace points");
  sub->add_option("--symmetry", c.symmetry, "auto|family|search|file");
  sub->add_option("--symmetry-file", c.symmetry_file, "generator file");
  sub->add_option("--json", c.out_json, "JSON output path (default stdout)");
  sub->add_option("--csv", c.out_csv, "CSV output path (default stdout)");
}

OptMap assemble(const CliState& c) {
  OptMap o;
  if (!c.config_path.empty()) o = qws::parse_config_file(c.config_path);
  for (const std::string& kv : c.sets) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw qws::InvalidParameter("--set needs KEY=VALUE, got '" + kv + "'");
    o[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  auto put_s = [&o](const char* key, const std::optional<std::string>& v) {
    if (v) o[key] = *v;
  };
  auto put_i = [&o](const char* key, const std::optional<int>& v) {
    if (v) o[key] = std::to_string(*v);
  };
  auto put_d = [&o](const char* key, const std::optional<double>& v) {
    if (v) o[key] = qws::format_double(*v, 17);
  };
  put_s("graph.family", c.family);
  put_i("graph.n", c.n);
  put_i("graph.r", c.r);
  put_i("graph.m", c.m);
  put_i("graph.order", c.order);
  put_s("graph.edges", c.edges);
  put_i("marked", c.marked);
  put_s("matrix", c.matrix);
  put_d("gamma", c.gamma);
  put_s("schedule", c.schedule);
  put_d("time.tmax", c.tmax);
  put_i("time.steps", c.steps);
  put_s("symmetry.source", c.symmetry);
  put_s("symmetry.file", c.symmetry_file);
  put_s("out.json", c.out_json);
  put_s("out.csv", c.out_csv);
  put_s("out.edges", c.out_edges);
  put_s("out.generators", c.out_generators);
  put_i("lanczos.k", c.k);
  put_d("scan.horizon", c.horizon);
  put_s("scan.gammas", c.scan_gammas);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum walk search on symmetric graphs"};
  app.require_subcommand(1);
  CliState c;

  CLI::App* sub_build = app.add_subcommand("build", "construct a graph");
  add_common(sub_build, c);
  sub_build->add_option("--out-edges", c.out_edges, "save the edge list here");

  CLI::App* sub_sym =
      app.add_subcommand("symmetry", "generators, group order, orbits");
  add_common(sub_sym, c);
  sub_sym->add_flag("--stabilizer", c.want_stabilizer,
                    "restrict to the marked-vertex stabilizer");
  sub_sym->add_option("--save", c.out_generators, "save generators here");

  CLI::App* sub_reduce =
      app.add_subcommand("reduce", "reduced search Hamiltonian (JSON)");
  add_common(sub_reduce, c);

  CLI::App* sub_evolve =
      app.add_subcommand("evolve", "probability trace at fixed gamma (CSV)");
  add_common(sub_evolve, c);
  sub_evolve->add_flag("--full", c.full, "evolve in the full vertex space");

  CLI::App* sub_search =
      app.add_subcommand("search", "run a multi-stage schedule (JSON)");
  add_common(sub_search, c);
  sub_search->add_flag("--full", c.full, "run in the full vertex space");
  sub_search->add_flag("--verify-full", c.verify_full,
                       "cross-check reduced dynamics against the full space");

  CLI::App* sub_scan =
      app.add_subcommand("scan", "gap and peak success per gamma (CSV)");
  add_common(sub_scan, c);
  sub_scan->add_option("--gammas", c.scan_gammas,
                       "comma-separated gamma values");
  sub_scan->add_option("--horizon", c.horizon, "scan trace horizon");

  CLI::App* sub_verify =
      app.add_subcommand("verify", "invariance, uniformity, cross-checks");
  add_common(sub_verify, c);
  sub_verify->add_flag("--unmarked-basis", c.unmarked_basis,
                       "use the unmarked orbit basis (expected to fail)");

  CLI::App* sub_lanczos =
      app.add_subcommand("lanczos", "Krylov basis from the marked vertex");
  add_common(sub_lanczos, c);
  sub_lanczos->add_option("--k", c.k, "Krylov dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const OptMap o = assemble(c);
    if (sub_build->parsed()) return cmd_build(o);
    if (sub_sym->parsed()) return cmd_symmetry(o, c.want_stabilizer);
    if (sub_reduce->parsed()) return cmd_reduce(o);
    if (sub_evolve->parsed()) return cmd_evolve(o, c.full);
    if (sub_search->parsed()) return cmd_search(o, c.full, c.verify_full);
    if (sub_scan->parsed()) return cmd_scan(o);
    if (sub_verify->parsed()) return cmd_verify(o, c.unmarked_basis);
    if (sub_lanczos->parsed()) return cmd_lanczos(o);
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const qws::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const qws::InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const qws::NumericFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const qws::ResourceLimit& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const qws::PartialResult& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
