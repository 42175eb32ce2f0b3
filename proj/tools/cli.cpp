#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "nodal/constructions/constructions.hpp"
#include "nodal/core/fp.hpp"
#include "nodal/degeneration/degeneration.hpp"
#include "nodal/severi/severi.hpp"
#include "nodal/singularities/singularities.hpp"

#ifndef NODAL_VERSION
#define NODAL_VERSION "0.0.0"
#endif

namespace nodal::cli {

Json to_json(const RunManifest& m) {
  return {{"command", m.command},   {"arguments", m.arguments},       {"seed", m.seed},
          {"version", m.version},   {"wall_time_ms", m.wall_time_ms}, {"verdict", m.verdict}};
}

namespace {

struct Options {
  bool json = false;
  std::uint64_t seed = 0;
  std::optional<int> degree_cap;
  int retries = cons::kDefaultRetries;
};

// What a command hands back to the driver.
struct Outcome {
  Verdict verdict = Verdict::Certified;
  Json doc;          // JSON form, printed under --json
  std::string text;  // human form otherwise
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << body << '\n';
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string stage_line(const std::string& stage, Verdict v, const std::string& detail) {
  return "[" + to_string(v) + "] " + stage + (detail.empty() ? "" : ": " + detail) + "\n";
}

std::string verdict_lines(Verdict v, const std::string& failing) {
  std::string s = "verdict: " + to_string(v) + "\n";
  if (!failing.empty()) s += "failing stage: " + failing + "\n";
  return s;
}

std::uint64_t prime() { return prefilter_prime_from_env(); }

// ---------------------------------------------------------------------------
// Commands

Outcome cmd_bounds(const std::string& space, int d, std::optional<int> h) {
  severi::SystemSpec spec;
  if (space == "p3") {
    spec = severi::SystemSpec::p3(d);
  } else if (space == "p2") {
    spec = severi::SystemSpec::p2(d);
  } else {
    if (!h) throw CLI::ValidationError("--h", "required for --space ci4");
    spec = severi::SystemSpec::surface_in_p3(*h, d);
  }
  const long dim = severi::linear_system_dim(spec);
  const auto delta = severi::max_regular_delta(spec);
  const long floor = severi::heuristic_floor(spec);
  Outcome o;
  o.doc = {{"space", space}, {"d", d}, {"dim", dim}, {"heuristic", floor}};
  o.doc["delta_max"] = delta ? Json(*delta) : Json("n/a");
  if (h) o.doc["h"] = *h;
  std::ostringstream t;
  t << "space      " << space << "\n"
    << "d          " << d << "\n";
  if (h) t << "h          " << *h << "\n";
  t << "dim|L|     " << dim << "\n"
    << "delta_max  " << (delta ? std::to_string(*delta) : "n/a") << "\n"
    << "heuristic  " << floor << "\n";
  o.text = t.str();
  return o;
}

Outcome cmd_construct(int d, const Options& opt, const std::string& out_path) {
  const auto w = cons::theorem42_witness(d, opt.seed, opt.retries);
  Outcome o;
  o.doc = cons::witness_to_json(w);
  o.text = "witness d=" + std::to_string(d) + " seed=" + std::to_string(opt.seed) + ": " +
           std::to_string(w.arrangement.nodes.size()) + " nodes, chart " + std::string(1, "xyz"[w.chart_var]) + "\n";
  if (!out_path.empty()) o.text += "wrote " + out_path + "\n";
  return o;
}

Outcome cmd_certify(const std::string& path, const Options& opt) {
  const Json in = read_json_file(path);
  const auto w = cons::witness_from_json(in);
  cons::CertifyOptions co;
  co.degree_cap = opt.degree_cap;
  co.prefilter_prime = prime();
  const auto b = cons::certify_witness(w, co);
  Outcome o;
  o.verdict = b.verdict;
  o.doc = cons::witness_to_json(w);
  const Json bundle = cons::to_json(b);
  for (const auto& [k, v] : bundle.items()) o.doc[k] = v;
  for (const auto& st : b.stages) o.text += stage_line(st.stage, st.verdict, st.detail);
  o.text += verdict_lines(b.verdict, b.failing_stage);
  return o;
}

Outcome cmd_deform_check(const std::string& t_text, int sign) {
  const Rat t = Rat::parse(t_text);
  const auto c = degen::verify_t1_to_node(t, sign);
  Outcome o;
  o.verdict = c.verified ? Verdict::Certified : Verdict::Refuted;
  o.doc = degen::to_json(c);
  std::ostringstream s;
  s << "slice t = " << t.str() << ", alpha = " << c.slice.alpha.str() << "\n"
    << "chart (y, z, u): " << c.slice.surface_chart.to_string(std::vector<std::string>{"y", "z", "u"}) << " = 0\n"
    << "point (" << c.report.point[0].str() << ", " << c.report.point[1].str() << ", " << c.report.point[2].str()
    << "): " << sing::to_string(c.report.kind);
  if (c.report.witness.hessian_det) s << ", hessian det " << c.report.witness.hessian_det->str();
  s << "\n"
    << "tangent cone (Y = recentred y): "
    << c.tangent_cone.to_string(std::vector<std::string>{"Y", "z", "u"}) << "\n"
    << "expected cone: " << c.expected_cone.to_string(std::vector<std::string>{"Y", "z", "u"});
  if (c.cone_scalar) s << "  (scalar " << c.cone_scalar->str() << ")";
  s << "\n" << verdict_lines(o.verdict, c.verified ? "" : "deform-check");
  o.text = s.str();
  return o;
}

Outcome cmd_chow_f0() {
  Outcome o;
  std::ostringstream s;
  Json theta = Json::array();
  try {
    const auto r = degen::chow_f0_identities();
    o.doc = degen::to_json(r);
    for (const auto& line : r.transcript) s << line << "\n";
    s << "f.e = " << r.f_dot_e << ", e^2 = " << r.e_squared << "\n";
  } catch (const Error& e) {
    o.verdict = Verdict::Refuted;
    s << "identity check failed: " << e.what() << "\n";
    o.doc = {{"error", e.what()}};
  }
  for (long m = 0; m <= 2; ++m) {
    const auto tr = degen::theta_restriction_class(m);
    s << "m_F = " << m << ": Θ|_F = " << tr.fibre_coeff << " f + " << tr.e_coeff << " E  "
      << (tr.effective ? "effective" : "not effective") << "\n";
    theta.push_back({{"m_F", m}, {"fibre", tr.fibre_coeff}, {"E", tr.e_coeff}, {"effective", tr.effective}});
  }
  const long minimal = degen::minimal_effective_mF();
  s << "minimal effective m_F = " << minimal << "\n";
  o.doc["theta_restriction"] = theta;
  o.doc["minimal_effective_mF"] = minimal;
  s << verdict_lines(o.verdict, o.verdict == Verdict::Certified ? "" : "chow-f0");
  o.text = s.str();
  return o;
}

Outcome cmd_hessian_limit(const std::string& path) {
  const MultiPoly p = poly_from_json(read_json_file(path));
  const auto h = degen::hessian_limit_check(p);
  Outcome o;
  o.verdict = h.verified ? Verdict::Certified : Verdict::Refuted;
  o.doc = degen::to_json(h);
  std::ostringstream s;
  s << "B0:\n";
  for (std::size_t i = 0; i < h.b0.rows(); ++i) {
    s << "  [";
    for (std::size_t j = 0; j < h.b0.cols(); ++j) s << (j ? ", " : "") << h.b0(i, j).str();
    s << "]\n";
  }
  s << "det B0 = " << h.det_b0.str() << "\n"
    << "disc   = " << h.disc.str() << "   (" << degen::kDiscConvention << ")\n"
    << verdict_lines(o.verdict, h.verified ? "" : "hessian-limit");
  o.text = s.str();
  return o;
}

Outcome cmd_regularity(const std::string& system_path, const std::string& points_path) {
  const auto spec = severi::system_from_json(read_json_file(system_path));
  const auto pts = points_from_json(read_json_file(points_path));
  const auto cm = severi::condition_matrix(spec, pts);
  const auto r = severi::independence_rank(cm);
  Outcome o;
  o.verdict = r.regular ? Verdict::Certified : Verdict::Refuted;
  o.doc = severi::to_json(r, cm);
  o.doc["stage"] = "regularity";
  const std::string detail = "rank " + std::to_string(r.rank) + " of " + std::to_string(cm.points.size()) +
                             " conditions on " + std::to_string(cm.basis.size()) + " forms, regular " +
                             yes_no(r.regular) + ", tangent dim " + std::to_string(r.tangent_dim);
  o.text = stage_line("regularity", o.verdict, detail) + verdict_lines(o.verdict, r.regular ? "" : "regularity");
  return o;
}

Outcome cmd_certify_t1(const std::string& path) {
  const auto spec = sing::s0_spec_from_json(read_json_file(path));
  Outcome o;
  Json stages = Json::array();
  std::string failing;
  auto record = [&](const std::string& stage, Verdict v, const std::string& detail, Json data) {
    stages.push_back({{"stage", stage}, {"verdict", to_string(v)}, {"detail", detail}, {"data", std::move(data)}});
    o.text += stage_line(stage, v, detail);
    o.verdict = combine(o.verdict, v);
    if (failing.empty() && v != Verdict::Certified) failing = stage;
  };

  bool glued = true;
  try {
    sing::validate(spec);
    record("gluing", Verdict::Certified, "gA|R = lambda * gB|R", {{"lambda", sing::gluing_scalar(spec)->str()}});
  } catch (const sing::GluingMismatch& e) {
    glued = false;
    record("gluing", Verdict::Refuted, e.what(), Json::object());
  }
  if (glued) {
    Json reports = Json::array();
    std::string detail;
    Verdict v = Verdict::Certified;
    for (const auto& p : spec.claimed_T1) {
      const auto r = sing::certify_t1(spec, p);
      reports.push_back(sing::to_json(r));
      if (!r.is(sing::PointClass::T1) && v == Verdict::Certified) {
        v = Verdict::Refuted;
        detail = r.reason + " at (" + p[0].str() + ", " + p[1].str() + ")";
      }
    }
    if (v == Verdict::Certified) detail = std::to_string(spec.claimed_T1.size()) + " T1 points";
    record("T1", v, detail, {{"reports", reports}});
  } else {
    record("T1", Verdict::Inconclusive, "not run: gluing failed", Json::object());
  }
  // A Refuted stage outranks an earlier Inconclusive one when naming the failure.
  for (const auto& st : stages) {
    if (st.at("verdict") == "Refuted") {
      failing = st.at("stage").get<std::string>();
      break;
    }
  }
  o.doc = {{"spec", sing::s0_spec_to_json(spec)}, {"certificates", stages}, {"verdict", to_string(o.verdict)}};
  if (!failing.empty()) o.doc["failing_stage"] = failing;
  o.text += verdict_lines(o.verdict, failing);
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"Exact certificates for nodal surfaces and their degenerations", "nodal"};
  app.require_subcommand(1);
  // --h is a degree, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", NODAL_VERSION);

  Options opt;
  app.add_flag("--json", opt.json, "Print the machine-readable JSON document");
  app.add_option("--seed", opt.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--degree-cap", opt.degree_cap, "Degree cap for Groebner computations")->check(CLI::PositiveNumber);
  app.add_option("--retries", opt.retries, "Retry budget for generic constructions")->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  std::function<Outcome()> action;
  std::string out_path;

  auto* bounds = app.add_subcommand("bounds", "Dimension, maximal regular delta and heuristic floor");
  std::string space;
  int d = 0;
  std::optional<int> h;
  bounds->add_option("--space", space, "Ambient: p3, p2 or ci4")->required()->check(CLI::IsMember({"p3", "p2", "ci4"}));
  bounds->add_option("--d", d, "Degree")->required();
  bounds->add_option("--h", h, "Surface degree is h - 1 (ci4 only)");
  bounds->callback([&] { action = [&] { return cmd_bounds(space, d, h); }; });

  auto* construct = app.add_subcommand("construct", "Build a seeded nodal-degeneration witness");
  construct->add_option("--d", d, "Degree d >= 3")->required();
  construct->add_option("--out", out_path, "Witness file to write (stdout when absent)");
  construct->callback([&] { action = [&] { return cmd_construct(d, opt, out_path); }; });

  auto* certify = app.add_subcommand("certify", "Certify a witness file");
  std::string in_path;
  certify->add_option("file", in_path, "Witness JSON")->required();
  certify->add_option("--out", out_path, "Write the certificate bundle here");
  certify->callback([&] { action = [&] { return cmd_certify(in_path, opt); }; });

  auto* deform = app.add_subcommand("deform-check", "Node on the slice xy = t of the local family");
  std::string t_text;
  int sign = 1;
  deform->add_option("--t", t_text, "Nonzero rational t with -4t a square")->required();
  deform->add_option("--sign", sign, "Sign of alpha")->check(CLI::IsMember({-1, 1}));
  deform->callback([&] { action = [&] { return cmd_deform_check(t_text, sign); }; });

  auto* chow = app.add_subcommand("chow-f0", "Intersection identities on the exceptional quadric");
  chow->callback([&] { action = [] { return cmd_chow_f0(); }; });

  auto* hessian = app.add_subcommand("hessian-limit", "Limit Hessian determinant against the discriminant");
  std::string poly_path;
  hessian->add_option("--poly", poly_path, "Polynomial JSON in (x, y, z, u)")->required();
  hessian->callback([&] { action = [&] { return cmd_hessian_limit(poly_path); }; });

  auto* regularity = app.add_subcommand("regularity", "Rank of the conditions imposed by points");
  std::string system_path;
  std::string points_path;
  regularity->add_option("--system", system_path, "System JSON")->required();
  regularity->add_option("--points", points_path, "Points JSON")->required();
  regularity->callback([&] { action = [&] { return cmd_regularity(system_path, points_path); }; });

  auto* t1 = app.add_subcommand("certify-t1", "Gluing and T1 checks on a two-chart central fibre");
  std::string spec_path;
  t1->add_option("--spec", spec_path, "S0 JSON")->required();
  t1->callback([&] { action = [&] { return cmd_certify_t1(spec_path); }; });

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  RunManifest manifest;
  manifest.command = app.get_subcommands().front()->get_name();
  manifest.arguments = args;
  manifest.seed = opt.seed;
  manifest.version = NODAL_VERSION;

  Outcome o;
  try {
    o = action();
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const PreconditionError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitFormat;
  } catch (const ArityMismatch& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitFormat;
  } catch (const degen::NoRationalSlice& e) {
    err << "inconclusive: " << e.what() << "\n";
    return exit_code(Verdict::Inconclusive);
  } catch (const cons::GenericityFailure& e) {
    err << "inconclusive: " << e.what() << "\n";
    return exit_code(Verdict::Inconclusive);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(Verdict::Inconclusive);
  }

  manifest.verdict = to_string(o.verdict);
  manifest.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  o.doc["manifest"] = to_json(manifest);

  try {
    if (!out_path.empty()) write_file(out_path, o.doc.dump(2));
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kExitFormat;
  }
  if (opt.json || (manifest.command == "construct" && out_path.empty())) {
    out << o.doc.dump(2) << "\n";
  } else {
    out << o.text;
  }
  return exit_code(o.verdict);
}

}  // namespace nodal::cli
