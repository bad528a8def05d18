#pragma once

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "chyp/chyp.hpp"

namespace chyp::cli {

/// Exit codes shared by every command.
enum ExitCode : int {
  kOk = 0,          // bound satisfied / inconclusive
  kEvidence = 3,    // violation or evidence found
  kInputError = 2,
  kUnavailable = 4, // ModeUnavailable, SearchExhausted
  kBudget = 5,      // state budget exhausted, partial output written
};

inline constexpr const char* kConfigEnv = "CHYP_CONFIG";

struct RunConfig {
  ToleranceConfig tol;
  NormKind norm = NormKind::Operator;
  PowerSide power_side = PowerSide::Second;
  std::uint64_t seed = 1;
  int depth = 6;
  int max_depth = 12;
  double epsilon = 0.05;
  std::size_t max_states = 1'000'000;
  unsigned threads = 0;
  int k_max = 200;
  std::string out_path;
  bool json = false;

  ExplorerOptions explorer() const {
    ExplorerOptions o;
    o.max_states = max_states;
    o.threads = threads;
    o.k_max = k_max;
    return o;
  }
  JorgensenOptions jorgensen() const { return {norm, power_side}; }
};

namespace detail {

inline double snap(double x) { return std::abs(x) < 1e-12 ? 0.0 : x; }

inline std::string fmt(double x, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << snap(x);
  return os.str();
}

inline std::string fixed(double x, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << snap(x);
  return os.str();
}

inline std::string fmt(Complexd z) {
  const double re = snap(z.real()), im = snap(z.imag());
  if (std::abs(im) < 5e-7) return fmt(re);
  if (std::abs(re) < 5e-7) return fmt(im) + "i";
  return fmt(re) + (im < 0 ? "-" : "+") + fmt(std::abs(im)) + "i";
}

inline std::string fmt(const BallPoint& p) {
  if (p.at_infinity()) return "inf";
  if (p.dim_n() == 1) return fmt(p.affine()(0));
  std::string s = "(";
  for (int i = 0; i < p.dim_n(); ++i) s += (i ? ", " : "") + fmt(p.affine()(i));
  return s + ")";
}

inline nlohmann::json point_json(const BallPoint& p) {
  nlohmann::json coords = nlohmann::json::array();
  for (int i = 0; i < p.dim_n(); ++i) coords.push_back({p.affine()(i).real(), p.affine()(i).imag()});
  return coords;
}

inline std::vector<Complexd> parse_coords(const std::vector<double>& reals, int n, const std::string& what) {
  if (int(reals.size()) != 2 * n)
    throw InputError(what + " needs " + std::to_string(2 * n) + " real numbers (re, im per coordinate)");
  std::vector<Complexd> out;
  for (int i = 0; i < n; ++i) out.emplace_back(reals[std::size_t(2 * i)], reals[std::size_t(2 * i + 1)]);
  return out;
}

inline CVector to_vector(const std::vector<Complexd>& v) {
  CVector out(Eigen::Index(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(Eigen::Index(i)) = v[i];
  return out;
}

/// Rescales every element with det != 1 by the principal root, warning once per element.
inline void canonicalize(std::vector<NamedIsometry>& list, std::ostream& err) {
  for (auto& g : list) {
    const Complexd det = g.element.matrix().determinant();
    if (std::abs(det - 1.0) > 1e-9) {
      err << "warning: '" << g.name << "' has det " << fmt(det) << "; rescaled to det 1 (principal root)\n";
      g.element = det_one_representative(g.element, 0.0);
    }
  }
}

inline GroupFile load(const std::string& path, const RunConfig& rc, std::ostream& err) {
  GroupFile f = load_group_file(path, rc.tol);
  canonicalize(f.group.generators, err);
  canonicalize(f.elements, err);
  return f;
}

inline const NamedIsometry& lookup(const GroupFile& f, const std::string& name) {
  const NamedIsometry* g = f.find(name);
  if (!g) throw InputError("no element named '" + name + "' in the group file");
  return *g;
}

inline nlohmann::json header_json(const std::string& command, const RunConfig& rc) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"config", to_json(rc.tol, rc.norm)},
          {"elliptic_power_side", rc.power_side == PowerSide::Second ? "g" : "f"},
          {"seed", rc.seed}};
}

inline std::string header_line(const std::string& command, const RunConfig& rc) {
  std::ostringstream os;
  os << "# chyp " << command << " | tol_unitary=" << shortest(rc.tol.tol_unitary)
     << " tol_null=" << shortest(rc.tol.tol_null) << " tol_eig=" << shortest(rc.tol.tol_eig)
     << " tol_identity=" << shortest(rc.tol.tol_identity)
     << " norm=" << to_string(rc.norm) << " elliptic_power_side=" << (rc.power_side == PowerSide::Second ? "g" : "f")
     << " seed=" << rc.seed;
  return os.str();
}

/// Writes the machine-readable dump to --out when given, and to `out` under --json.
inline void emit_json(const nlohmann::json& doc, const RunConfig& rc, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (!rc.out_path.empty()) {
    std::ofstream f(rc.out_path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + rc.out_path + "'");
    f << text;
  }
  if (rc.json) out << text;
}

inline void print_certificate(const Certificate& c, const std::vector<std::string>& names, std::ostream& out,
                              const std::string& indent = "") {
  out << indent << to_string(c.kind) << ": " << c.narrative << "\n";
  for (const auto& w : c.witnesses) {
    out << indent << "  " << w.role << " = " << w.word.to_string(names);
    if (!w.values.empty()) {
      out << "  [";
      for (std::size_t i = 0; i < w.values.size(); ++i) out << (i ? ", " : "") << fmt(w.values[i], 10);
      out << "]";
    }
    out << "\n";
  }
  for (const auto& a : c.assumptions) out << indent << "  assumes: " << a << "\n";
}

inline void load_config_file(const std::string& path, RunConfig& rc, std::string& norm, std::string& side,
                             const CLI::App& app) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed config file: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file must be a JSON object");
  const auto given = [&](const char* flag) {
    for (const CLI::App* a = &app; a; a = a->get_parent())
      if (const auto* o = a->get_option_no_throw(flag); o && o->count() > 0) return true;
    for (const auto* sub : app.get_subcommands())
      if (const auto* o = sub->get_option_no_throw(flag); o && o->count() > 0) return true;
    return false;
  };
  const auto take = [&](const char* key, const char* flag, auto& field) {
    if (doc.contains(key) && !given(flag)) field = doc[key].get<std::remove_reference_t<decltype(field)>>();
  };
  try {
    take("tol_unitary", "--tol-unitary", rc.tol.tol_unitary);
    take("tol_null", "--tol-null", rc.tol.tol_null);
    take("tol_eig", "--tol-eig", rc.tol.tol_eig);
    take("tol_identity", "--tol-identity", rc.tol.tol_identity);
    take("depth", "--depth", rc.depth);
    take("max_depth", "--max-depth", rc.max_depth);
    take("epsilon", "--epsilon", rc.epsilon);
    take("max_states", "--max-states", rc.max_states);
    take("threads", "--threads", rc.threads);
    take("k_max", "--k-max", rc.k_max);
    take("seed", "--seed", rc.seed);
    if (doc.contains("norm") && !given("--norm")) {
      const auto s = doc["norm"].get<std::string>();
      if (s != "operator" && s != "frobenius") throw ConfigError("config: norm must be operator or frobenius");
      norm = s;
    }
    if (doc.contains("elliptic_power_side") && !given("--elliptic-power-side")) {
      const auto s = doc["elliptic_power_side"].get<std::string>();
      if (s != "g" && s != "f") throw ConfigError("config: elliptic_power_side must be g or f");
      side = s;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config file: ") + e.what());
  }
}

inline int exit_for(const Certificate& c) { return c.conclusive() ? kEvidence : kOk; }

// ---- commands ----

inline int cmd_classify(const std::string& file, const std::string& name, const RunConfig& rc, std::ostream& out,
                        std::ostream& err) {
  const GroupFile gf = load(file, rc, err);
  const NamedIsometry& g = lookup(gf, name);
  const double n_value = norm_n_projective(g.element, rc.norm);
  const auto order = finite_order(g.element, rc.k_max, rc.tol);
  nlohmann::json doc = header_json("classify", rc);
  doc["element"] = name;
  doc["N"] = n_value;
  doc["finite_order"] = order ? nlohmann::json(*order) : nlohmann::json(nullptr);
  if (!rc.json) out << header_line("classify", rc) << "\n";
  try {
    const IsometryClass c = classify_isometry(g.element, rc.tol);
    if (!rc.json) {
      out << to_string(c.tag);
      if (c.tag != IsometryTag::Identity) {
        if (!c.boundary_fixed.empty()) {
          out << ", fixed ";
          for (std::size_t i = 0; i < c.boundary_fixed.size(); ++i) out << (i ? ", " : "") << fmt(c.boundary_fixed[i]);
        }
        out << ", N=" << fixed(n_value);
      }
      out << "\n";
      out << "eigenvalues:";
      for (const auto& z : c.eigenvalues) out << " " << fmt(z);
      out << "\n";
      if (c.attracting) out << "attracting: " << fmt(*c.attracting) << "\nrepelling: " << fmt(*c.repelling) << "\n";
      out << "interior fixed point: " << (c.interior_fixed_exists ? "yes" : "no") << "\n";
      out << "boundary fixed set: " << to_string(c.fixed_cardinality) << "\n";
      out << "finite order (k <= " << rc.k_max << "): " << (order ? std::to_string(*order) : "none") << "\n";
    }
    doc["tag"] = to_string(c.tag);
    nlohmann::json eig = nlohmann::json::array(), pts = nlohmann::json::array();
    for (const auto& z : c.eigenvalues) eig.push_back({z.real(), z.imag()});
    for (const auto& p : c.boundary_fixed) pts.push_back(point_json(p));
    doc["eigenvalues"] = eig;
    doc["boundary_fixed"] = pts;
    doc["interior_fixed_exists"] = c.interior_fixed_exists;
    doc["fixed_cardinality"] = to_string(c.fixed_cardinality);
  } catch (const NumericallyAmbiguous& e) {
    std::vector<std::string> tags;
    for (auto t : e.candidates()) tags.push_back(to_string(t));
    if (!rc.json) {
      out << "NumericallyAmbiguous: " << e.what() << "\nN=" << fixed(n_value) << "\n";
      out << "finite order (k <= " << rc.k_max << "): " << (order ? std::to_string(*order) : "none") << "\n";
    }
    doc["tag"] = "NumericallyAmbiguous";
    doc["candidates"] = tags;
  }
  emit_json(doc, rc, out);
  return kOk;
}

inline int cmd_jorgensen(const std::string& file, const std::string& fname, const std::string& gname,
                         const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const GroupFile gf = load(file, rc, err);
  GroupInput pair{gf.group.dim_n, {lookup(gf, fname), lookup(gf, gname)}};
  const JorgensenOutcome o = jorgensen_statistic(pair.generators[0].element, pair.generators[1].element, rc.tol,
                                                 rc.jorgensen());
  const Certificate cert = jorgensen_test(pair.generators[0].element, pair.generators[1].element, rc.tol,
                                          rc.jorgensen(), Word(std::vector<Letter>{{0, 1}}),
                                          Word(std::vector<Letter>{{1, 1}}));
  if (!rc.json) {
    out << header_line("jorgensen", rc) << "\n";
    out << "f = " << fname << ", g = " << gname << "\n";
    out << "branch: " << to_string(o.branch) << (o.branch_assumed ? " (assumed: f ambiguous)" : "") << "\n";
    out << "N(f) = " << fmt(o.norm_f, 10) << "\n";
    for (std::size_t i = 0; i < o.commutator_norms.size(); ++i) {
      const std::string p = std::to_string(i + 1);
      const std::string label = o.branch == JorgensenBranch::NonElliptic ? "N([f,g])"
                                : rc.power_side == PowerSide::Second ? "N([f,g^" + p + "])"
                                                                     : "N([f^" + p + ",g])";
      out << label << " = " << fmt(o.commutator_norms[i], 10) << "\n";
    }
    out << "statistic = " << fmt(o.statistic, 10) << "\nthreshold = " << fmt(o.threshold, 10) << "\n";
    out << "verdict: " << to_string(o.verdict) << "\n";
    print_certificate(cert, pair.names(), out);
  }
  nlohmann::json doc = header_json("jorgensen", rc);
  doc["statistic"] = o.statistic;
  doc["threshold"] = o.threshold;
  doc["branch"] = to_string(o.branch);
  doc["branch_assumed"] = o.branch_assumed;
  doc["verdict"] = to_string(o.verdict);
  doc["norm_f"] = o.norm_f;
  doc["commutator_norms"] = o.commutator_norms;
  doc["certificate"] = to_json(cert, pair.names());
  emit_json(doc, rc, out);
  return o.verdict == JorgensenVerdict::Violation ? kEvidence : kOk;
}

struct AnalyzeArgs {
  std::string mode = "test-map";
  std::string test_map;
  std::string test_map_file;
  std::optional<double> condition_a_epsilon;
};

inline int cmd_analyze(const std::string& file, const AnalyzeArgs& a, const RunConfig& rc, std::ostream& out,
                       std::ostream& err) {
  const GroupFile gf = load(file, rc, err);
  ReportOptions opts;
  opts.mode = a.mode == "test-map"         ? AnalysisMode::TestMap
              : a.mode == "two-loxodromic" ? AnalysisMode::TwoLoxodromic
                                           : AnalysisMode::Stabilizer;
  opts.depth = rc.depth;
  opts.max_depth = rc.max_depth;
  opts.epsilon = rc.epsilon;
  if (a.condition_a_epsilon) opts.condition_a_epsilon = *a.condition_a_epsilon;
  opts.jorgensen = rc.jorgensen();
  opts.explorer = rc.explorer();
  if (opts.mode == AnalysisMode::TestMap) {
    if (!a.test_map_file.empty()) {
      GroupFile tf = load_group_file(a.test_map_file, rc.tol);
      canonicalize(tf.group.generators, err);
      canonicalize(tf.elements, err);
      if (tf.group.dim_n != gf.group.dim_n) throw DimensionError("test-map file has a different dimension");
      opts.test_map = a.test_map.empty() ? (!tf.group.generators.empty() ? tf.group.generators.front()
                                            : !tf.elements.empty()        ? tf.elements.front()
                                                                          : throw InputError("test-map file is empty"))
                                         : lookup(tf, a.test_map);
    } else {
      if (a.test_map.empty()) throw InputError("test-map mode needs --test-map NAME or --test-map-file PATH");
      opts.test_map = lookup(gf, a.test_map);
    }
  }

  const DiscretenessReport rep = discreteness_report(gf.group, opts, rc.tol);
  if (!rc.json) {
    out << header_line("analyze", rc) << "\n";
    out << "mode: " << to_string(rep.mode) << ", depth " << opts.depth << ", epsilon " << fmt(opts.epsilon) << "\n";
    if (rep.experimental) out << "*** EXPERIMENTAL ***\n";
    out << "result: ";
    print_certificate(rep.certificate, rep.alphabet, out);
    out << "findings:\n";
    for (const auto& c : rep.findings) {
      if (c.kind == rep.certificate.kind)
        out << "  " << to_string(c.kind) << " (shown above)\n";
      else
        print_certificate(c, rep.alphabet, out, "  ");
    }
    out << "stats: " << rep.stats.classes_explored << " classes, " << rep.stats.words_examined << " words examined, "
        << rep.stats.pair_tests << " pair tests, " << rep.stats.loxodromic_found << " loxodromic";
    if (rep.stats.min_n)
      out << ", min N = " << fixed(*rep.stats.min_n) << " at " << rep.stats.min_n_word.to_string(rep.alphabet);
    out << "\n";
    if (rep.stats.budget_exceeded) out << "budget of " << rc.max_states << " states exceeded; partial results\n";
    for (const auto& n : rep.notes) out << "note: " << n << "\n";
  }
  nlohmann::json doc = header_json("analyze", rc);
  doc["depth"] = opts.depth;
  doc["epsilon"] = opts.epsilon;
  doc["condition_a_epsilon"] = opts.condition_a_epsilon;
  doc["report"] = to_json(rep);
  emit_json(doc, rc, out);
  if (rep.certificate.conclusive()) return kEvidence;
  return rep.stats.budget_exceeded ? kBudget : kOk;
}

inline int cmd_limitset(const std::string& file, const std::vector<double>& basepoint, const RunConfig& rc,
                        std::ostream& out, std::ostream& err) {
  const GroupFile gf = load(file, rc, err);
  const int n = gf.group.dim_n;
  const BallPoint p = basepoint.empty() ? BallPoint(CVector::Zero(n), rc.tol.tol_null)
                                        : BallPoint(to_vector(parse_coords(basepoint, n, "--basepoint")), rc.tol.tol_null);
  if (p.region() != Region::Interior) throw PreconditionError("--basepoint must lie inside the ball");
  const Enumeration e = explore(gf.group, rc.depth, rc.explorer(), rc.tol);
  const auto pts = limit_set_sample(e, p, rc.explorer(), rc.tol);

  std::ostringstream table;
  for (int i = 1; i <= n; ++i) table << (i > 1 ? " " : "") << "re" << i << " im" << i;
  table << "\n" << std::setprecision(17);
  for (const auto& q : pts) {
    for (int i = 0; i < n; ++i) table << (i ? " " : "") << q.affine()(i).real() << " " << q.affine()(i).imag();
    table << "\n";
  }
  if (rc.out_path.empty()) {
    out << table.str();
  } else {
    std::ofstream f(rc.out_path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + rc.out_path + "'");
    f << table.str();
    out << header_line("limitset", rc) << "\n"
        << pts.size() << " boundary samples from " << e.size() << " classes written to " << rc.out_path << "\n";
  }
  if (e.budget_exceeded()) {
    err << "budget of " << rc.max_states << " states exceeded; partial sample\n";
    return kBudget;
  }
  return kOk;
}

struct TransportArgs {
  std::string p, q, f;
  std::vector<double> o1, o2;
  double radius = 0.1;
  int m_max = 64, r_max = 64, n_max = 64;
};

inline int cmd_transport(const std::string& file, const TransportArgs& a, const RunConfig& rc, std::ostream& out,
                         std::ostream& err) {
  const GroupFile gf = load(file, rc, err);
  const int n = gf.group.dim_n;
  const BoundaryBall o1(BallPoint(to_vector(parse_coords(a.o1, n, "--o1")), rc.tol.tol_null), a.radius);
  const BoundaryBall o2(BallPoint(to_vector(parse_coords(a.o2, n, "--o2")), rc.tol.tol_null), a.radius);
  const TransportResult res = transport_loxodromic(lookup(gf, a.p).element, lookup(gf, a.q).element,
                                                   lookup(gf, a.f).element, o1, o2, a.m_max, a.r_max, a.n_max,
                                                   rc.tol, rc.explorer().point_tol);
  if (!rc.json) {
    out << header_line("transport", rc) << "\n";
    out << "found " << a.q << "^" << res.r << " (" << a.p << "^" << res.m << " " << a.f << " " << a.p << "^-" << res.m
        << ")^" << res.n << ": " << to_string(res.classification.tag) << ", attracting "
        << fmt(*res.classification.attracting) << ", repelling " << fmt(*res.classification.repelling) << "\n";
  }
  nlohmann::json doc = header_json("transport", rc);
  doc["m"] = res.m;
  doc["r"] = res.r;
  doc["n"] = res.n;
  doc["tag"] = to_string(res.classification.tag);
  doc["attracting"] = point_json(*res.classification.attracting);
  doc["repelling"] = point_json(*res.classification.repelling);
  doc["matrix"] = chyp::detail::matrix_to_json(res.element.matrix());
  emit_json(doc, rc, out);
  return kOk;
}

inline int cmd_stability(const std::string& file, const std::string& name, double delta, int trials,
                         const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const GroupFile gf = load(file, rc, err);
  const double frac = perturbation_stability(lookup(gf, name).element, delta, trials, rc.seed, rc.tol);
  if (!rc.json) {
    out << header_line("stability", rc) << "\n";
    out << "fraction loxodromic = " << fmt(frac, 10) << " (" << trials << " trials, delta " << fmt(delta) << ")\n";
  }
  nlohmann::json doc = header_json("stability", rc);
  doc["element"] = name;
  doc["delta"] = delta;
  doc["trials"] = trials;
  doc["fraction_loxodromic"] = frac;
  emit_json(doc, rc, out);
  return kOk;
}

inline int cmd_conditiona(const std::string& file, const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const GroupFile gf = load(file, rc, err);
  if (rc.depth > rc.max_depth) throw PreconditionError("depth exceeds --max-depth");
  const Enumeration e = explore(gf.group, rc.depth, rc.explorer(), rc.tol);
  std::vector<ConditionACandidate> cands;
  for (std::size_t i = 0; i < e.size(); ++i) cands.push_back({e.word(i), e.element(i)});
  const Certificate c = condition_a_scan(cands, rc.epsilon, rc.k_max, rc.tol);
  const auto names = gf.group.names();
  if (!rc.json) {
    out << header_line("conditiona", rc) << "\n";
    print_certificate(c, names, out);
  }
  nlohmann::json doc = header_json("conditiona", rc);
  doc["depth"] = rc.depth;
  doc["epsilon"] = rc.epsilon;
  doc["certificate"] = to_json(c, names);
  emit_json(doc, rc, out);
  if (c.conclusive()) return kEvidence;
  return e.budget_exceeded() ? kBudget : kOk;
}

}  // namespace detail

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complex hyperbolic isometries: classification, Jorgensen tests and discreteness searches"};
  app.require_subcommand(1);
  RunConfig rc;
  std::string config_path;
  if (const char* env = std::getenv(kConfigEnv)) config_path = env;
  std::string norm = "operator", side = "g";

  app.add_option("--config", config_path, std::string("JSON config file (default: $") + kConfigEnv + ")");
  app.add_option("--tol-unitary", rc.tol.tol_unitary, "unitarity tolerance")->check(CLI::Range(0.0, 1.0));
  app.add_option("--tol-null", rc.tol.tol_null, "null-vector tolerance")->check(CLI::Range(0.0, 1.0));
  app.add_option("--tol-eig", rc.tol.tol_eig, "eigenvalue clustering tolerance")->check(CLI::Range(0.0, 1.0));
  app.add_option("--tol-identity", rc.tol.tol_identity, "PU-equality tolerance")->check(CLI::Range(0.0, 1.0));
  app.add_option("--norm", norm, "matrix norm for N(f)")->check(CLI::IsMember({"operator", "frobenius"}));
  app.add_option("--elliptic-power-side", side, "power g^i (g) or f^i (f) in the elliptic branch")
      ->check(CLI::IsMember({"g", "f"}));
  app.add_option("--seed", rc.seed, "random seed");
  app.add_option("--out", rc.out_path, "output path");
  app.add_flag("--json", rc.json, "print the machine-readable dump instead of the text report");
  app.add_option("--depth", rc.depth, "maximum word length")->check(CLI::PositiveNumber);
  app.add_option("--max-depth", rc.max_depth, "upper bound accepted for --depth")->check(CLI::PositiveNumber);
  app.add_option("--epsilon", rc.epsilon, "near-identity threshold")->check(CLI::PositiveNumber);
  app.add_option("--max-states", rc.max_states, "enumeration state budget")->check(CLI::PositiveNumber);
  app.add_option("--threads", rc.threads, "explorer threads (0 = all cores)");
  app.add_option("--k-max", rc.k_max, "largest torsion order searched")->check(CLI::PositiveNumber);
  app.fallthrough();

  std::string file, name, fname, gname;
  auto* classify = app.add_subcommand("classify", "classify one element of a group file");
  classify->add_option("file", file, "group file")->required();
  classify->add_option("element", name, "element name")->required();

  auto* jorg = app.add_subcommand("jorgensen", "Jorgensen statistic of a pair");
  jorg->add_option("file", file, "group file")->required();
  jorg->add_option("f", fname, "element f")->required();
  jorg->add_option("g", gname, "element g")->required();

  detail::AnalyzeArgs aa;
  double cae = 0.0;
  auto* analyze = app.add_subcommand("analyze", "discreteness report");
  analyze->add_option("file", file, "group file")->required();
  analyze->add_option("--mode", aa.mode, "analysis mode")
      ->check(CLI::IsMember({"test-map", "two-loxodromic", "stabilizer"}));
  analyze->add_option("--test-map", aa.test_map, "test map name (group file or --test-map-file)");
  analyze->add_option("--test-map-file", aa.test_map_file, "file holding the test map");
  auto* cae_opt = analyze->add_option("--condition-a-epsilon", cae, "norm bound for torsion in stabilizer mode")
                      ->check(CLI::PositiveNumber);

  std::vector<double> basepoint;
  auto* limitset = app.add_subcommand("limitset", "boundary samples of an orbit");
  limitset->add_option("file", file, "group file")->required();
  limitset->add_option("--basepoint", basepoint, "interior base point as re,im pairs")->delimiter(',');

  detail::TransportArgs ta;
  auto* transport = app.add_subcommand("transport", "loxodromic element with fixed points in two balls");
  transport->add_option("file", file, "group file")->required();
  transport->add_option("--p", ta.p, "loxodromic attracting into O1")->required();
  transport->add_option("--q", ta.q, "loxodromic attracting into O2")->required();
  transport->add_option("--f", ta.f, "loxodromic to transport")->required();
  transport->add_option("--o1", ta.o1, "center of O1 as re,im pairs")->delimiter(',')->required();
  transport->add_option("--o2", ta.o2, "center of O2 as re,im pairs")->delimiter(',')->required();
  transport->add_option("--radius", ta.radius, "chordal radius of both balls")->check(CLI::Range(0.0, 2.0));
  transport->add_option("--m-max", ta.m_max, "bound on m")->check(CLI::PositiveNumber);
  transport->add_option("--r-max", ta.r_max, "bound on r")->check(CLI::PositiveNumber);
  transport->add_option("--n-max", ta.n_max, "bound on n")->check(CLI::PositiveNumber);

  double delta = 0.01;
  int trials = 1000;
  auto* stability = app.add_subcommand("stability", "loxodromic fraction under random perturbation");
  stability->add_option("file", file, "group file")->required();
  stability->add_option("element", name, "element name")->required();
  stability->add_option("--delta", delta, "perturbation size")->check(CLI::NonNegativeNumber);
  stability->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);

  auto* conditiona = app.add_subcommand("conditiona", "torsion with infinite fixed sets near the identity");
  conditiona->add_option("file", file, "group file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (!config_path.empty()) detail::load_config_file(config_path, rc, norm, side, app);
    rc.norm = norm == "operator" ? NormKind::Operator : NormKind::Frobenius;
    rc.power_side = side == "g" ? PowerSide::Second : PowerSide::First;
    rc.tol.validate();
    if (rc.depth > rc.max_depth)
      throw ConfigError("--depth " + std::to_string(rc.depth) + " exceeds --max-depth " + std::to_string(rc.max_depth));
    if (*cae_opt) aa.condition_a_epsilon = cae;

    if (classify->parsed()) return detail::cmd_classify(file, name, rc, out, err);
    if (jorg->parsed()) return detail::cmd_jorgensen(file, fname, gname, rc, out, err);
    if (analyze->parsed()) return detail::cmd_analyze(file, aa, rc, out, err);
    if (limitset->parsed()) return detail::cmd_limitset(file, basepoint, rc, out, err);
    if (transport->parsed()) return detail::cmd_transport(file, ta, rc, out, err);
    if (stability->parsed()) return detail::cmd_stability(file, name, delta, trials, rc, out, err);
    if (conditiona->parsed()) return detail::cmd_conditiona(file, rc, out, err);
  } catch (const NotUnitaryError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ModeUnavailable& e) {
    err << "mode unavailable: " << e.what() << "\n";
    return kUnavailable;
  } catch (const SearchExhausted& e) {
    err << "search exhausted at stage " << e.stage() << ": " << e.what() << "\n";
    return kUnavailable;
  } catch (const BudgetExceeded& e) {
    err << e.what() << "; " << e.partial().size() << " classes found\n";
    return kBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace chyp::cli
