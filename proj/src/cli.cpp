#include "caustics/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <regex>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "caustics/billiard.hpp"
#include "caustics/conjecture.hpp"
#include "caustics/curve.hpp"
#include "caustics/curve_io.hpp"
#include "caustics/polychain.hpp"
#include "caustics/svg.hpp"
#include "caustics/trigroots.hpp"

namespace caustics {

using nlohmann::json;

namespace {

enum class Format { Text, Structured, Delimited };

struct Options {
  Format format = Format::Text;
  double tol = kDefaultCausticTol;
  double drift_tol = 1e-8;
  int steps = 1000;
  int nmax = 50;
  unsigned seed = 1;
  int starts = 1000;
  std::string plot;
  std::string ledger = "certificates.ledger";
  double alpha0 = 0.0;
  int points = 1024;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string num(double v) { return fmt::format("{:.17g}", v); }

json envelope(const std::string& command, json inputs) {
  return {{"command", command},
          {"inputs", std::move(inputs)},
          {"results", json::array()},
          {"certificates", json::array()}};
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << body;
}

std::pair<int, int> parse_range(const std::string& text) {
  static const std::regex single(R"(\s*(\d+)\s*)");
  static const std::regex range(R"(\s*(\d+)\s*\.\.\s*(\d+)\s*)");
  std::smatch m;
  if (std::regex_match(text, m, range)) {
    return {std::stoi(m[1]), std::stoi(m[2])};
  }
  if (std::regex_match(text, m, single)) {
    const int n = std::stoi(m[1]);
    return {n, n};
  }
  throw UsageError("expected n or a..b, got '" + text + "'");
}

json roots_json(const std::vector<BracketedRoot>& roots) {
  json arr = json::array();
  for (const auto& r : roots) {
    arr.push_back({{"n", r.n},
                   {"k", r.k},
                   {"lo", r.lo},
                   {"hi", r.hi},
                   {"value", r.value},
                   {"residual", r.residual}});
  }
  return arr;
}

// ---------------------------------------------------------------- solve

int cmd_solve(const std::string& range, const Options& o, std::ostream& out) {
  const auto [from, to] = parse_range(range);
  if (from < 2 || to < from || to > kMaxChainIndex) {
    throw UsageError(fmt::format("solve needs 2 <= a <= b <= 2^20, got {}..{}",
                                 from, to));
  }
  json doc = envelope("solve", {{"from", from}, {"to", to}});
  if (o.format == Format::Delimited) out << "n,k,lo,hi,value,residual\n";
  for (int n = from; n <= to; ++n) {
    const auto roots = RootCache::shared().roots(n);
    const AngleSet an = RootCache::shared().angles(n);
    switch (o.format) {
      case Format::Text:
        if (roots->empty()) {
          out << fmt::format("B_{} is empty\n", n);
        }
        for (const auto& r : *roots) {
          out << fmt::format("n={} k={} bracket=({}, {}) root={} residual={:.3e}\n",
                             r.n, r.k, num(r.lo), num(r.hi), num(r.value),
                             r.residual);
        }
        break;
      case Format::Delimited:
        write_roots_delimited(out, *roots, false);
        break;
      case Format::Structured:
        doc["results"].push_back({{"n", n},
                                  {"count", roots->size()},
                                  {"roots", roots_json(*roots)},
                                  {"A_n", an.members}});
        break;
    }
  }
  if (o.format == Format::Structured) emit_json(out, doc);
  return kExitVerified;
}

// ---------------------------------------------------------------- table

int cmd_table(int n, double tau, const Options& o, std::ostream& out) {
  const FourierCurve curve = make_omega_n_tau(n, tau);
  const int count = o.points;
  if (count < 3) throw UsageError("--points must be at least 3");
  const double closure =
      distance(boundary_point(curve, 0.0), boundary_point(curve, kTwoPi));
  const AngleSet an = RootCache::shared().angles(n);
  if (!o.plot.empty()) write_file(o.plot, table_svg(curve, an.members));

  switch (o.format) {
    case Format::Text:
      out << fmt::format("# Omega_{{{},{}}} boundary, {} points, closure gap {:.3e}\n",
                         n, num(tau), count, closure);
      [[fallthrough]];
    case Format::Delimited:
      out << "index,alpha,x,y\n";
      for (int i = 0; i < count; ++i) {
        const double a = kTwoPi * i / count;
        const Point p = boundary_point(curve, a);
        out << fmt::format("{},{},{},{}\n", i, num(a), num(p.x), num(p.y));
      }
      break;
    case Format::Structured: {
      json doc = envelope("table", {{"n", n}, {"tau", tau}, {"points", count}});
      json pts = json::array();
      for (int i = 0; i < count; ++i) {
        const Point p = boundary_point(curve, kTwoPi * i / count);
        pts.push_back({p.x, p.y});
      }
      doc["results"] = {{"curve", curve_to_json(curve)},
                        {"closure_gap", closure},
                        {"caustic_angles", an.members},
                        {"polyline", std::move(pts)}};
      emit_json(out, doc);
      break;
    }
  }
  return kExitVerified;
}

// ------------------------------------------------------- verify-caustic

int cmd_verify(const std::string& curve_arg, const std::string& delta_text,
               const Options& o, std::ostream& out) {
  const FourierCurve curve = load_curve(curve_arg);
  const double delta = parse_angle(delta_text);
  const CausticReport rep = has_constant_caustic(curve, delta, o.tol);
  const double integral = caustic_residual(curve, delta);

  json doc = envelope("verify-caustic", {{"curve", curve_to_json(curve)},
                                          {"delta", delta},
                                          {"tol", o.tol},
                                          {"steps", o.steps},
                                          {"seed", o.seed}});
  json result = {{"exists", rep.exists},
                 {"kernel_residual", rep.residual},
                 {"integral_residual", integral},
                 {"offenders", rep.offenders}};
  if (rep.matched_n) result["matched_n"] = *rep.matched_n;

  bool ok = rep.exists;
  std::string text = fmt::format("delta = {}\ncaustic exists: {}\n", num(delta),
                                 rep.exists ? "yes" : "no");
  text += fmt::format("kernel residual: {:.3e}\nintegral residual: {:.3e}\n",
                      rep.residual, integral);
  if (rep.matched_n) text += fmt::format("matched n: {}\n", *rep.matched_n);
  if (!rep.offenders.empty()) {
    text += fmt::format("offending harmonics: [{}]\n",
                        fmt::join(rep.offenders, ", "));
  }
  if (rep.exists) {
    const OrbitSummary sum =
        iterate_on_caustic(curve, delta, o.steps, o.alpha0, o.tol);
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> uni(0.0, kTwoPi);
    double one_step = 0.0;
    for (int i = 0; i < o.starts; ++i) {
      const PhasePoint next = billiard_step(curve, {uni(rng), delta});
      one_step = std::max(one_step, std::fabs(next.theta - delta));
    }
    const double drift = std::max(sum.max_theta_drift, one_step);
    ok = drift <= o.drift_tol;
    result["orbit"] = {{"steps", sum.steps},
                       {"max_theta_drift", sum.max_theta_drift},
                       {"rotation_estimate", sum.rotation_estimate},
                       {"expected_rotation", delta / kPi},
                       {"random_starts", o.starts},
                       {"max_one_step_drift", one_step},
                       {"warnings", sum.warnings}};
    text += fmt::format(
        "orbit: {} steps, max theta drift {:.3e}, rotation {} (delta/pi = {})\n",
        sum.steps, sum.max_theta_drift, num(sum.rotation_estimate),
        num(delta / kPi));
    text += fmt::format("random starts: {}, max one-step drift {:.3e}\n",
                        o.starts, one_step);
    for (const auto& w : sum.warnings) text += "warning: " + w + "\n";
  }
  result["verified"] = ok;
  text += fmt::format("verified: {}\n", ok ? "yes" : "no");

  if (o.format == Format::Structured) {
    doc["results"] = result;
    emit_json(out, doc);
  } else if (o.format == Format::Delimited) {
    out << "delta,exists,kernel_residual,integral_residual,verified\n";
    out << fmt::format("{},{},{:.17g},{:.17g},{}\n", num(delta), rep.exists,
                       rep.residual, integral, ok);
  } else {
    out << text;
  }
  return ok ? kExitVerified : kExitNegative;
}

// ---------------------------------------------------------------- poly

int cmd_poly(const std::string& family_text, int n, const Options& o,
             std::ostream& out) {
  PolyFamily fam;
  try {
    fam = parse_family(family_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const int min_n = (fam == PolyFamily::P || fam == PolyFamily::Q) ? 1 : 2;
  if (n < min_n) {
    throw UsageError(fmt::format("family {} needs n >= {}", family_text, min_n));
  }
  const IntPolynomial p = family_poly(fam, n);
  switch (o.format) {
    case Format::Text:
      out << export_line(fam, n) << '\n';
      break;
    case Format::Delimited: {
      out << "family,n,degree,coefficient\n";
      for (int i = 0; i <= p.degree(); ++i) {
        out << fmt::format("{},{},{},{}\n", family_name(fam), n, i,
                           p.coeff(i).get_str());
      }
      break;
    }
    case Format::Structured: {
      json doc = envelope("poly", {{"family", family_name(fam)}, {"n", n}});
      std::vector<std::string> cs;
      for (const auto& c : p.coeffs()) cs.push_back(c.get_str());
      doc["results"].push_back({{"family", family_name(fam)},
                                {"n", n},
                                {"degree", p.degree()},
                                {"coefficients", cs}});
      emit_json(out, doc);
      break;
    }
  }
  return kExitVerified;
}

// ---------------------------------------------------------------- scan

int cmd_scan(int n_max, const Options& o, std::ostream& out) {
  if (n_max < 4) throw UsageError("scan needs n_max >= 4");
  const ScanSummary sum = scan_disjointness(n_max);
  if (!o.ledger.empty()) append_ledger(o.ledger, sum.certificates);
  const auto p4 = special_angle_exclusion(SpecialAngle::PiOver4, n_max);
  const auto p3 = special_angle_exclusion(SpecialAngle::PiOver3, n_max);

  std::vector<std::string> failing;
  for (const auto& c : sum.certificates) {
    if (c.verdict == Verdict::Shared) failing.push_back(fmt::format("({}, {})", c.m, c.n));
  }
  const std::string summary =
      sum.all_disjoint()
          ? fmt::format("all pairs disjoint up to n_max = {} ({} certificates)",
                        n_max, sum.certificates.size())
          : fmt::format("shared roots for pairs: {}", fmt::join(failing, " "));

  auto special_json = [](const SpecialAngleReport& r) {
    json cases = json::array();
    for (const auto& c : r.cases) {
      cases.push_back({{"modulus", c.modulus},
                       {"residue", c.residue},
                       {"holds", c.equation_holds},
                       {"reason", c.reason}});
    }
    return json{{"delta", r.delta},
                {"min_residual", r.min_residual},
                {"argmin_n", r.argmin_n},
                {"exact_exclusion", r.exact_exclusion},
                {"cases", cases}};
  };

  switch (o.format) {
    case Format::Text:
      for (const auto& c : sum.certificates) out << ledger_line(c) << '\n';
      out << fmt::format("special angle pi/4: min residual {:.6e} at n = {}, exact exclusion {}\n",
                         p4.min_residual, p4.argmin_n, p4.exact_exclusion ? "yes" : "no");
      out << fmt::format("special angle pi/3: min residual {:.6e} at n = {}, exact exclusion {}\n",
                         p3.min_residual, p3.argmin_n, p3.exact_exclusion ? "yes" : "no");
      out << summary << '\n';
      break;
    case Format::Delimited:
      out << "m,n,verdict,gcd_degree\n";
      for (const auto& c : sum.certificates) {
        out << fmt::format("{},{},{},{}\n", c.m, c.n, verdict_name(c.verdict),
                           c.gcd.degree());
      }
      break;
    case Format::Structured: {
      json doc = envelope("scan", {{"n_max", n_max}});
      for (const auto& c : sum.certificates) {
        doc["certificates"].push_back(certificate_to_json(c));
      }
      doc["results"] = {{"pairs", sum.certificates.size()},
                        {"disjoint", sum.disjoint},
                        {"shared", sum.shared},
                        {"all_disjoint", sum.all_disjoint()},
                        {"summary", summary},
                        {"special_angles", {special_json(p4), special_json(p3)}}};
      emit_json(out, doc);
      break;
    }
  }
  return sum.all_disjoint() ? kExitVerified : kExitNegative;
}

// ---------------------------------------------------------------- float

int cmd_float(const std::string& curve_arg, const Options& o,
              std::ostream& out) {
  const FourierCurve curve = load_curve(curve_arg);
  const FloatingReport fr = floating_report(curve, o.nmax, o.tol);
  const Classification cl = conditional_classification(curve, o.nmax);
  const bool positive = fr.all_angles || !fr.angles.empty();

  json angles = json::array();
  for (const auto& a : fr.angles) {
    angles.push_back({{"gamma", a.gamma}, {"delta", a.delta}, {"n", a.n}});
  }
  json cls = {{"class", class_name(cl.table_class)},
              {"condition", cl.condition},
              {"constant_width", cl.constant_width},
              {"covered", cl.covered},
              {"deltas", cl.deltas}};
  if (cl.table_class == TableClass::OmegaNTau) {
    cls["n"] = cl.n;
    cls["tau"] = cl.tau;
    cls["phase"] = cl.phase;
  }

  switch (o.format) {
    case Format::Text:
      if (fr.all_angles) {
        out << "contact angles: all angles\n";
      } else if (fr.angles.empty()) {
        out << fmt::format("contact angles: none up to n_max = {}\n", o.nmax);
      } else {
        out << "contact angles (gamma = pi - delta):\n";
        for (const auto& a : fr.angles) {
          out << fmt::format("  gamma = {}  delta = {}  n = {}\n", num(a.gamma),
                             num(a.delta), a.n);
        }
      }
      out << "class: " << class_name(cl.table_class);
      if (cl.table_class == TableClass::OmegaNTau) {
        out << fmt::format(" (n = {}, tau = {})", cl.n, num(cl.tau));
      }
      out << '\n' << cl.condition << '\n';
      for (const auto& c : cl.certificates) out << "certificate: " << ledger_line(c) << '\n';
      break;
    case Format::Delimited:
      out << "gamma,delta,n\n";
      for (const auto& a : fr.angles) {
        out << fmt::format("{},{},{}\n", num(a.gamma), num(a.delta), a.n);
      }
      break;
    case Format::Structured: {
      json doc = envelope("float", {{"curve", curve_to_json(curve)}, {"n_max", o.nmax}});
      doc["results"] = {{"all_angles", fr.all_angles},
                        {"contact_angles", angles},
                        {"classification", cls}};
      for (const auto& c : cl.certificates) {
        doc["certificates"].push_back(certificate_to_json(c));
      }
      emit_json(out, doc);
      break;
    }
  }
  return positive ? kExitVerified : kExitNegative;
}

// ----------------------------------------------------------- orbit-dump

int cmd_orbit(const std::string& curve_arg, const std::string& theta_text,
              const Options& o, std::ostream& out) {
  const FourierCurve curve = load_curve(curve_arg);
  const double theta = parse_angle(theta_text);
  const auto orbit = trace_orbit(curve, {o.alpha0, theta}, o.steps);
  if (!o.plot.empty()) write_file(o.plot, phase_portrait_svg(orbit));
  if (o.format == Format::Structured) {
    json doc = envelope("orbit-dump", {{"curve", curve_to_json(curve)},
                                        {"theta", theta},
                                        {"alpha0", o.alpha0},
                                        {"steps", o.steps}});
    for (const auto& r : orbit) {
      doc["results"].push_back({{"step", r.step},
                                {"alpha", r.alpha},
                                {"theta", r.theta},
                                {"x", r.x},
                                {"y", r.y}});
    }
    emit_json(out, doc);
  } else {
    write_orbit_dump(out, orbit);
  }
  return kExitVerified;
}

}  // namespace

double parse_angle(const std::string& text) {
  static const std::regex frac(
      R"(\s*(?:(\d+)\s*\*\s*)?pi(?:\s*/\s*(\d+))?\s*)");
  static const std::regex chain(R"(\s*([AB])\s*:\s*(\d+)\s*:\s*(\d+)\s*)");
  std::smatch m;
  if (std::regex_match(text, m, frac)) {
    const double p = m[1].matched ? std::stod(m[1]) : 1.0;
    const double q = m[2].matched ? std::stod(m[2]) : 1.0;
    if (q == 0.0) throw UsageError("division by zero in angle " + text);
    return p * kPi / q;
  }
  if (std::regex_match(text, m, chain)) {
    const int n = std::stoi(m[2]);
    const int k = std::stoi(m[3]);
    if (n < 2 || n > kMaxChainIndex) throw UsageError("bad chain index in " + text);
    if (m[1] == "B") {
      const auto roots = RootCache::shared().roots(n);
      if (k < 1 || k > static_cast<int>(roots->size())) {
        throw UsageError(fmt::format("B_{} has no root number {}", n, k));
      }
      return (*roots)[static_cast<std::size_t>(k - 1)].value;
    }
    const AngleSet an = RootCache::shared().angles(n);
    if (k < 1 || k > static_cast<int>(an.members.size())) {
      throw UsageError(fmt::format("A_{} has no member number {}", n, k));
    }
    return an.members[static_cast<std::size_t>(k - 1)];
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("cannot parse angle '" + text + "'");
  }
  if (used != text.size()) throw UsageError("cannot parse angle '" + text + "'");
  return v;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Constant-angle caustics of convex billiard tables and "
               "capillary floating in neutral equilibrium"};
  app.name("caustics");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "structured", "delimited"}));
  app.add_option("--tol", o.tol, "Caustic decision tolerance")
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for randomized checks")
      ->capture_default_str();

  std::string range;
  auto* solve = app.add_subcommand("solve", "Roots of tan(nx) = n tan(x) in (0, pi/2)");
  solve->add_option("n", range, "n or a..b")->required();

  int table_n = 0;
  double table_tau = 0.0;
  auto* table = app.add_subcommand("table", "Boundary of Omega_{n,tau}");
  table->add_option("n", table_n)->required();
  table->add_option("tau", table_tau)->required();
  table->add_option("--plot", o.plot, "SVG output path");
  table->add_option("--points", o.points, "Polyline size")->capture_default_str();

  std::string curve_arg;
  std::string angle_text;
  auto* verify = app.add_subcommand("verify-caustic", "Decide and simulate a constant-angle caustic");
  verify->add_option("curve", curve_arg, "curve file or omega:n,tau")->required();
  verify->add_option("delta", angle_text, "caustic angle")->required();
  verify->add_option("--steps", o.steps, "orbit length")->capture_default_str();
  verify->add_option("--starts", o.starts, "random one-step starts")->capture_default_str();
  verify->add_option("--drift-tol", o.drift_tol, "max admissible theta drift")->capture_default_str();
  verify->add_option("--alpha0", o.alpha0, "orbit start parameter");

  std::string family;
  int poly_n = 0;
  auto* poly = app.add_subcommand("poly", "Exact coefficients of P, Q, R, S, Sred");
  poly->add_option("family", family)->required();
  poly->add_option("n", poly_n)->required();

  int scan_n = 0;
  auto* scan = app.add_subcommand("scan", "Exact pairwise root-disjointness certificates");
  scan->add_option("n_max", scan_n)->required();
  scan->add_option("--ledger", o.ledger, "append-only certificate ledger ('' disables)")
      ->capture_default_str();

  auto* flt = app.add_subcommand("float", "Contact angles of neutral floating");
  flt->add_option("curve", curve_arg, "curve file or omega:n,tau")->required();
  flt->add_option("--nmax", o.nmax, "largest chain index scanned")->capture_default_str();

  auto* orbit = app.add_subcommand("orbit-dump", "Per-step billiard orbit records");
  orbit->add_option("curve", curve_arg, "curve file or omega:n,tau")->required();
  orbit->add_option("theta", angle_text, "initial outgoing angle")->required();
  orbit->add_option("--steps", o.steps, "number of bounces")->capture_default_str();
  orbit->add_option("--alpha0", o.alpha0, "start parameter");
  orbit->add_option("--plot", o.plot, "SVG phase portrait path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitVerified;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitVerified;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  o.format = format == "structured"  ? Format::Structured
             : format == "delimited" ? Format::Delimited
                                     : Format::Text;
  if (o.steps < 1) {
    err << "error: --steps must be >= 1\n";
    return kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(range, o, out);
    if (*table) return cmd_table(table_n, table_tau, o, out);
    if (*verify) return cmd_verify(curve_arg, angle_text, o, out);
    if (*poly) return cmd_poly(family, poly_n, o, out);
    if (*scan) return cmd_scan(scan_n, o, out);
    if (*flt) return cmd_float(curve_arg, o, out);
    if (*orbit) return cmd_orbit(curve_arg, angle_text, o, out);
  } catch (const std::logic_error& e) {
    // invalid_argument, out_of_range, domain_error and internal checks alike
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace caustics
