#include "torsion/cli.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "torsion/correction.hpp"
#include "torsion/io.hpp"
#include "torsion/linking.hpp"
#include "torsion/metabolizer.hpp"
#include "torsion/obstruction.hpp"

namespace torsion {
namespace {

struct Common {
  std::string format = "text";
  int jobs = 1;
  std::uint64_t seed = 0;  // accepted now so scripts stay stable; unused
};

void add_common(CLI::App* sub, Common* c) {
  sub->add_option("--format", c->format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--jobs", c->jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", c->seed, "reserved");
}

bool json_mode(const Common& c) { return c.format == "json"; }

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::string group_text(const FiniteAbelianGroup& g) {
  if (g.trivial()) return "0";
  std::string s;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (i) s += " + ";
    s += "Z/" + g.factors()[i].modulus().str();
  }
  return s;
}

std::string element_text(const FiniteAbelianGroup& g, const GroupElement& x) {
  return "(" + g.element_label(x) + ")";
}

Int parse_int(const std::string& text) {
  try {
    if (text.empty()) throw std::invalid_argument(text);
    return Int(text);
  } catch (const std::exception&) {
    throw ParseError("not an integer: '" + text + "'");
  }
}

// "sumK-unitU" (K copies of the unit-U form) or a comma separated unit list.
LinkingForm parse_form_spec(const std::string& spec, std::int64_t p, int n) {
  if (p == 0 || n == 0)
    throw ParseError("--form requires --p and --n");
  std::vector<Int> units;
  if (spec.rfind("sum", 0) == 0 && spec.find("-unit") != std::string::npos) {
    auto dash = spec.find("-unit");
    Int count = parse_int(spec.substr(3, dash - 3));
    Int unit = parse_int(spec.substr(dash + 5));
    if (count <= 0 || count > 64)
      throw ParseError("bad summand count in --form " + spec);
    for (Int i = 0; i < count; ++i) units.push_back(unit);
  } else {
    std::size_t start = 0;
    for (;;) {
      auto comma = spec.find(',', start);
      auto piece = comma == std::string::npos ? spec.substr(start)
                                              : spec.substr(start, comma - start);
      units.push_back(parse_int(piece));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  std::vector<LinkingForm> parts;
  parts.reserve(units.size());
  for (const Int& u : units) parts.push_back(standard_cyclic_form(p, n, u));
  return direct_sum(parts);
}

void print_verdict(std::ostream& out, const Verdict& v) {
  for (const auto& c : v.clauses) {
    out << "  [" << (c.ok ? "ok" : "FAIL") << "] " << c.clause;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  out << "conclusion: " << conclusion_name(v.conclusion) << "\n";
}

int verdict_exit(const Verdict& v) { return v.conclusive() ? 0 : 2; }

int run_rho_surgery(std::ostream& out, const Common& c, std::int64_t n) {
  RhoMap rho = rho_surgery(Int(n));
  if (json_mode(c)) {
    emit(out, rho_to_json(rho));
    return 0;
  }
  out << "surgery framing n = " << n << "\n";
  out << "h1: " << group_text(rho.group) << "\n";
  out << "rho0 = " << format_rational(rho.rho0.value()) << " (mod 2)\n";
  out << "refinement: " << (rho.refinement ? "present" : "absent") << "\n";
  for (std::size_t x = 0; x < rho.values.size(); ++x)
    out << "rho(t_" << x << ") = " << format_rational(rho.values[x].value())
        << "\n";
  return 0;
}

int run_analyze_presentation(std::ostream& out, const Common& c,
                             const std::string& file) {
  Json j = load_json_file(file);
  Mat a = matrix_from_json(j.is_object() && j.contains("matrix")
                               ? j.at("matrix")
                               : j);
  PresentationResult pres = linking_from_presentation(a);
  if (json_mode(c)) {
    emit(out, presentation_to_json(pres));
    return 0;
  }
  out << "h1: " << group_text(pres.group) << " (order "
      << pres.group.order().str() << ")\n";
  out << "nondegenerate: " << (is_nondegenerate(pres.form) ? "yes" : "no")
      << "\n";
  out << "linking matrix (mod 1):\n";
  for (const auto& row : pres.form.gram()) {
    out << " ";
    for (const auto& entry : row) out << " " << format_rational(entry.value());
    out << "\n";
  }
  for (std::size_t i = 0; i < pres.generator_lifts.size(); ++i) {
    out << "generator " << i << " lift:";
    for (const Int& v : pres.generator_lifts[i]) out << " " << v.str();
    out << "\n";
  }
  return 0;
}

int run_enumerate(std::ostream& out, const Common& c, const LinkingForm& form) {
  MetabolizerEnumeration e = enumerate_metabolizers(form, c.jobs);
  if (json_mode(c)) {
    emit(out, enumeration_to_json(e));
    return 0;
  }
  out << "group: " << group_text(form.group()) << "\n";
  if (!e.reason.empty()) {
    out << "metabolizers: 0 (" << e.reason << ")\n";
    out << "conclusion: obstructed_square\n";
    return 0;
  }
  out << "metabolizers: " << e.metabolizers.size() << "\n";
  for (std::size_t i = 0; i < e.metabolizers.size(); ++i) {
    const Metabolizer& m = e.metabolizers[i];
    out << "[" << i + 1 << "] order " << m.subgroup.order().str()
        << ", generators:";
    for (const auto& g : m.subgroup.generators())
      out << " " << element_text(form.group(), g);
    out << "\n";
  }
  return 0;
}

int run_verify_proposition(std::ostream& out, const Common& c, std::int64_t p,
                           int n, int m, const LinkingForm& form) {
  ForcedVanishingCertificate cert = certify_forced_vanishing(p, n, m, form,
                                                             c.jobs);
  if (json_mode(c)) {
    emit(out, certificate_to_json(cert));
    return cert.holds ? 0 : 2;
  }
  out << "p = " << cert.p << ", n = " << cert.n << ", m = " << cert.m
      << ", group order " << cert.group_order.str() << "\n";
  out << "metabolizers checked: " << cert.metabolizer_count << "\n";
  for (std::size_t i = 0; i < cert.records.size(); ++i) {
    const MetabolizerRecord& r = cert.records[i];
    out << "[" << i + 1 << "] generators:";
    for (const auto& g : r.generators) out << " " << element_text(form.group(), g);
    out << "; constraint rank " << r.constraint_rank << "; forced vanishing: "
        << (r.contained ? "yes" : "NO");
    if (!r.failing_reps.empty()) {
      out << "; failing reps:";
      for (const Int& t : r.failing_reps) out << " " << t.str();
    }
    out << "; refinement-compatible subset "
        << (r.compatibility_nonempty ? "nonempty" : "empty") << ", forced: "
        << (r.secondary_contained ? "yes" : "NO") << "\n";
  }
  out << "proposition holds: " << (cert.holds ? "yes" : "NO") << "\n";
  out << "secondary comparison holds: " << (cert.secondary_holds ? "yes" : "NO")
      << "\n";
  return cert.holds ? 0 : 2;
}

int run_check_surgery(std::ostream& out, const Common& c, std::int64_t n) {
  Verdict v = check_surgery_infinite_order(Int(n));
  if (json_mode(c)) {
    emit(out, verdict_to_json(v));
    return verdict_exit(v);
  }
  out << "surgery framing n = " << n << "\n";
  print_verdict(out, v);
  return verdict_exit(v);
}

int run_check_independence(std::ostream& out, const Common& c,
                           const std::string& file) {
  auto family = family_from_json(load_json_file(file));
  IndependenceCertificate cert = check_independence(family);
  if (json_mode(c)) {
    emit(out, independence_to_json(cert));
    return verdict_exit(cert.verdict);
  }
  for (const auto& a : cert.assignment)
    out << "assign p = " << a.p << " (n = " << a.n << ") to " << a.manifold
        << "\n";
  print_verdict(out, cert.verdict);
  return verdict_exit(cert.verdict);
}

int run_check_knots(std::ostream& out, const Common& c, const std::string& file,
                    bool has_m, std::int64_t m) {
  auto knots = knots_from_json(load_json_file(file));
  if (has_m) {
    if (knots.size() != 2)
      throw ParseError("--m compares exactly two knots; file has " +
                       std::to_string(knots.size()));
    if (m == 0) throw ParseError("--m must be nonzero");
    Verdict v = check_knot_pair(knots[0], knots[1], Int(m));
    if (json_mode(c)) {
      emit(out, verdict_to_json(v));
      return verdict_exit(v);
    }
    out << "comparing " << m << " * " << knots[0].name << " against "
        << knots[1].name << "\n";
    print_verdict(out, v);
    return verdict_exit(v);
  }
  IndependenceCertificate cert = check_knot_family(knots);
  if (json_mode(c)) {
    emit(out, independence_to_json(cert));
    return verdict_exit(cert.verdict);
  }
  for (const auto& a : cert.assignment)
    out << "assign p = " << a.p << " (n = " << a.n << ") to " << a.manifold
        << "\n";
  print_verdict(out, cert.verdict);
  return verdict_exit(cert.verdict);
}

int run_validate_dtable(std::ostream& out, const Common& c,
                        const std::string& file) {
  ManifoldDescriptor y = manifold_from_json(load_json_file(file));
  ValidationReport report = validate_d_axioms(y);
  if (json_mode(c)) {
    emit(out, report_to_json(report));
    return report.ok ? 0 : 2;
  }
  out << "manifold: " << y.name << "\n";
  if (report.ok) {
    out << "d-table: all axioms satisfied\n";
    return 0;
  }
  out << "violations (" << report.violations.size() << "):\n";
  for (const auto& v : report.violations) out << "  " << v << "\n";
  return 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact torsion linking form calculator"};
  app.require_subcommand(1);

  Common common;
  std::int64_t n_flag = 0;
  std::int64_t p_flag = 0;
  std::int64_t m_flag = 0;
  int rank_n = 0;
  int half_rank = 0;
  std::string form_spec;
  std::string file;

  CLI::App* rho = app.add_subcommand("rho-surgery",
                                     "rho invariants of n-surgery on the unknot");
  rho->add_option("--n", n_flag, "odd framing")->required();
  add_common(rho, &common);

  CLI::App* pres = app.add_subcommand(
      "analyze-presentation", "linking form of a symmetric presentation matrix");
  pres->add_option("--file", file, "JSON file with the matrix")->required();
  add_common(pres, &common);

  CLI::App* enumerate = app.add_subcommand("enumerate-metabolizers",
                                           "all metabolizers of a linking form");
  enumerate->add_option("--form", form_spec, "sumK-unitU or comma unit list");
  enumerate->add_option("--p", p_flag, "odd prime for --form");
  enumerate->add_option("--n", rank_n, "prime power exponent for --form");
  enumerate->add_option("--file", file, "JSON form description");
  add_common(enumerate, &common);

  CLI::App* verify = app.add_subcommand(
      "verify-proposition",
      "certify forced vanishing on every metabolizer of a rank-2m form");
  verify->add_option("--p", p_flag, "odd prime, 3 mod 4")->required();
  verify->add_option("--n", rank_n, "odd prime power exponent")->required();
  verify->add_option("--m", half_rank, "half the rank")->required();
  verify->add_option("--form", form_spec, "sumK-unitU or comma unit list");
  verify->add_option("--file", file, "JSON form description");
  add_common(verify, &common);

  CLI::App* surgery = app.add_subcommand(
      "check-surgery", "homology cobordism order obstruction for n-surgery");
  surgery->add_option("--n", n_flag, "odd framing")->required();
  add_common(surgery, &common);

  CLI::App* indep = app.add_subcommand(
      "check-independence", "linear independence certificate for a family");
  indep->add_option("--file", file, "JSON family description")->required();
  add_common(indep, &common);

  CLI::App* knots = app.add_subcommand("check-knots",
                                       "concordance obstructions from covers");
  knots->add_option("--file", file, "JSON knot list")->required();
  CLI::Option* m_opt = knots->add_option("--m", m_flag,
                                         "compare m*K1 against K2");
  add_common(knots, &common);

  CLI::App* dtable = app.add_subcommand("validate-dtable",
                                        "axiom checks for a correction table");
  dtable->add_option("--file", file, "JSON manifold with d_table")->required();
  add_common(dtable, &common);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("linkform");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    while (!target->get_subcommands().empty())
      target = target->get_subcommands().front();
    out << target->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (rho->parsed()) return run_rho_surgery(out, common, n_flag);
    if (pres->parsed()) return run_analyze_presentation(out, common, file);
    if (enumerate->parsed() || verify->parsed()) {
      LinkingForm form;
      if (!form_spec.empty() && !file.empty())
        throw ParseError("--form and --file are mutually exclusive");
      if (!file.empty()) {
        form = form_from_json(load_json_file(file));
      } else if (!form_spec.empty()) {
        form = parse_form_spec(form_spec, p_flag, rank_n);
      } else if (verify->parsed()) {
        form = parse_form_spec("sum" + std::to_string(2 * half_rank) + "-unit1",
                               p_flag, rank_n);
      } else {
        throw ParseError("need --form (with --p, --n) or --file");
      }
      if (verify->parsed()) {
        if (form.group().rank() != static_cast<std::size_t>(2 * half_rank))
          throw ParseError("--form rank must equal 2m");
        return run_verify_proposition(out, common, p_flag, rank_n, half_rank,
                                      form);
      }
      return run_enumerate(out, common, form);
    }
    if (surgery->parsed()) return run_check_surgery(out, common, n_flag);
    if (indep->parsed()) return run_check_independence(out, common, file);
    if (knots->parsed())
      return run_check_knots(out, common, file, m_opt->count() > 0, m_flag);
    if (dtable->parsed()) return run_validate_dtable(out, common, file);
    err << "error: no subcommand\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace torsion
