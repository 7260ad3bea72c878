#include "torsion/io.hpp"

#include <fstream>
#include <sstream>

namespace torsion {

namespace {

Int int_from_string(const std::string& s, const char* what) {
  try {
    return Int(s);
  } catch (const std::runtime_error&) {
    throw ParseError(std::string(what) + ": \"" + s + "\"");
  }
}

std::int64_t int_field(const Json& j, const char* field) {
  if (!j.contains(field))
    throw ParseError(std::string("missing field \"") + field + "\"");
  const Json& v = j.at(field);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_string())
    return to_i64(int_from_string(v.get<std::string>(), "bad integer field"));
  throw ParseError(std::string("field \"") + field + "\" must be an integer");
}

Json int_to_json(const Int& a) { return to_i64(a); }

}  // namespace

Json group_to_json(const FiniteAbelianGroup& g) {
  Json runs = Json::array();
  for (const auto& f : g.factors()) {
    if (!runs.empty() && runs.back()[0] == f.p && runs.back()[1] == f.e)
      runs.back()[2] = runs.back()[2].get<std::int64_t>() + 1;
    else
      runs.push_back(Json::array({f.p, f.e, 1}));
  }
  return runs;
}

FiniteAbelianGroup group_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("group must be an array of [p, e, mult]");
  std::vector<PrimePower> factors;
  for (const Json& run : j) {
    if (!run.is_array() || run.size() < 2 || run.size() > 3)
      throw ParseError("group factor must be [p, e] or [p, e, mult]");
    const auto p = run[0].get<std::int64_t>();
    const auto e = run[1].get<int>();
    const auto mult = run.size() == 3 ? run[2].get<std::int64_t>() : 1;
    if (mult < 0 || mult > kEnumerationCap) throw ParseError("bad multiplicity");
    for (std::int64_t i = 0; i < mult; ++i) factors.push_back({p, e});
  }
  return FiniteAbelianGroup(std::move(factors));
}

Json element_to_json(const GroupElement& x) {
  Json out = Json::array();
  for (const auto& c : x) out.push_back(int_to_json(c));
  return out;
}

Json form_to_json(const LinkingForm& f) {
  Json gram = Json::array();
  for (const auto& row : f.gram()) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(e.str());
    gram.push_back(std::move(r));
  }
  return Json{{"group", group_to_json(f.group())}, {"gram", std::move(gram)}};
}

Mat matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  Mat a;
  for (const Json& row : j) {
    if (!row.is_array()) throw ParseError("matrix row must be an array");
    std::vector<Int> r;
    for (const Json& e : row) {
      if (e.is_number_integer())
        r.emplace_back(e.get<std::int64_t>());
      else if (e.is_string())
        r.emplace_back(int_from_string(e.get<std::string>(), "bad matrix entry"));
      else
        throw ParseError("matrix entries must be integers");
    }
    a.push_back(std::move(r));
  }
  return a;
}

LinkingForm form_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw ParseError("form needs a \"type\" field");
  const std::string type = j.at("type").get<std::string>();
  if (type == "diagonal") {
    if (!j.contains("terms") || !j.at("terms").is_array())
      throw ParseError("diagonal form needs a \"terms\" array");
    std::vector<LinkingForm> terms;
    for (const Json& t : j.at("terms"))
      terms.push_back(standard_cyclic_form(int_field(t, "p"),
                                           static_cast<int>(int_field(t, "n")),
                                           Int(int_field(t, "unit"))));
    return direct_sum(terms);
  }
  if (type == "presentation") {
    if (!j.contains("matrix")) throw ParseError("presentation form needs a matrix");
    return linking_from_presentation(matrix_from_json(j.at("matrix"))).form;
  }
  throw ParseError("unknown form type \"" + type + "\"");
}

Json rho_to_json(const RhoMap& rho) {
  Json values = Json::object();
  for (std::size_t i = 0; i < rho.values.size(); ++i)
    values[std::to_string(i)] = rho.values[i].str();
  Json out{{"h1", group_to_json(rho.group)},
           {"order", int_to_json(rho.group.order())},
           {"rho0", rho.rho0.str()},
           {"values", std::move(values)}};
  return out;
}

Json presentation_to_json(const PresentationResult& pres) {
  Json lifts = Json::array();
  for (const auto& lift : pres.generator_lifts) {
    Json l = Json::array();
    for (const auto& c : lift) l.push_back(int_to_json(c));
    lifts.push_back(std::move(l));
  }
  return Json{{"h1", group_to_json(pres.group)},
              {"form", form_to_json(pres.form)},
              {"generator_lifts", std::move(lifts)},
              {"nondegenerate", is_nondegenerate(pres.form)}};
}

Json metabolizer_report(const Metabolizer& m) {
  Json generators = Json::array();
  for (const auto& g : m.subgroup.generators())
    generators.push_back(element_to_json(g));
  Json out{{"generators", std::move(generators)},
           {"order", int_to_json(m.subgroup.order())}};
  if (m.subgroup.ambient().homogeneous()) {
    EchelonProfile profile = echelon_profile(m);
    Json counts = Json::array();
    for (std::size_t c : profile.counts) counts.push_back(c);
    out["k_profile"] = std::move(counts);
    out["ell"] = profile.ell;
  }
  MetabolizerCertificate cert = check_metabolizer(m.ambient_form, m.subgroup);
  Json c{{"square_order", cert.square_order},
         {"isotropic", cert.isotropic},
         {"self_dual", cert.self_dual}};
  if (cert.witness)
    c["witness"] = Json::array({element_to_json(cert.witness->first),
                                element_to_json(cert.witness->second)});
  out["certificate"] = std::move(c);
  return out;
}

Json enumeration_to_json(const MetabolizerEnumeration& e) {
  Json list = Json::array();
  for (const auto& m : e.metabolizers) list.push_back(metabolizer_report(m));
  Json out{{"count", e.metabolizers.size()}, {"metabolizers", std::move(list)}};
  if (!e.reason.empty()) {
    out["reason"] = e.reason;
    out["conclusion"] = conclusion_name(Conclusion::ObstructedSquare);
  }
  return out;
}

Json certificate_to_json(const ForcedVanishingCertificate& cert) {
  Json records = Json::array();
  for (const auto& rec : cert.records) {
    Json gens = Json::array();
    for (const auto& g : rec.generators) gens.push_back(element_to_json(g));
    Json targets = Json::array();
    for (const auto& t : rec.target_reps) targets.push_back(int_to_json(t));
    Json failing = Json::array();
    for (const auto& t : rec.failing_reps) failing.push_back(int_to_json(t));
    records.push_back(Json{{"generators", std::move(gens)},
                           {"constraint_rank", rec.constraint_rank},
                           {"target_reps", std::move(targets)},
                           {"failing_reps", std::move(failing)},
                           {"contained", rec.contained},
                           {"compatibility_nonempty", rec.compatibility_nonempty},
                           {"secondary_contained", rec.secondary_contained}});
  }
  return Json{{"p", cert.p},
              {"n", cert.n},
              {"m", cert.m},
              {"group_order", int_to_json(cert.group_order)},
              {"metabolizer_count", cert.metabolizer_count},
              {"holds", cert.holds},
              {"secondary_holds", cert.secondary_holds},
              {"records", std::move(records)}};
}

Json verdict_to_json(const Verdict& v) {
  Json clauses = Json::array();
  for (const auto& c : v.clauses)
    clauses.push_back(Json{{"clause", c.clause}, {"ok", c.ok}, {"detail", c.detail}});
  return Json{{"conclusion", conclusion_name(v.conclusion)},
              {"clauses", std::move(clauses)}};
}

Json independence_to_json(const IndependenceCertificate& cert) {
  Json assignment = Json::array();
  for (const auto& a : cert.assignment)
    assignment.push_back(Json{{"manifold", a.manifold}, {"p", a.p}, {"n", a.n}});
  return Json{{"assignment", std::move(assignment)},
              {"verdict", verdict_to_json(cert.verdict)}};
}

Json report_to_json(const ValidationReport& report) {
  return Json{{"ok", report.ok}, {"violations", report.violations}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("rationals must be integers or strings like \"-1/2\"");
}

std::map<std::string, Rational> dtable_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("d table must be an object");
  std::map<std::string, Rational> table;
  for (const auto& [label, v] : j.items()) table[label] = rational_from_json(v);
  return table;
}

ManifoldDescriptor manifold_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("manifold must be an object");
  ManifoldDescriptor d;
  if (j.contains("surgery")) {
    d = surgery_descriptor(Int(int_field(j, "surgery")));
  } else if (j.contains("presentation")) {
    d = presentation_descriptor("", matrix_from_json(j.at("presentation")));
  } else if (j.contains("h1")) {
    d.h1 = group_from_json(j.at("h1"));
  } else {
    throw ParseError("manifold needs one of \"surgery\", \"presentation\", \"h1\"");
  }
  if (j.contains("name")) d.name = j.at("name").get<std::string>();
  if (j.contains("form")) {
    LinkingForm form = form_from_json(j.at("form"));
    if (!(form.group() == d.h1))
      throw ParseError("linking form group disagrees with h1");
    if (!is_nondegenerate(form)) throw ParseError("linking form is degenerate");
    d.linking = std::move(form);
  }
  if (j.contains("rho0")) d.rho0 = Residue(rational_from_json(j.at("rho0")), 2);
  if (j.contains("d_table")) d.d_table = dtable_from_json(j.at("d_table"));
  return d;
}

std::vector<ManifoldDescriptor> family_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("manifolds") || !j.at("manifolds").is_array())
    throw ParseError("family file needs a \"manifolds\" array");
  std::vector<ManifoldDescriptor> family;
  std::size_t k = 0;
  for (const Json& mj : j.at("manifolds")) {
    family.push_back(manifold_from_json(mj));
    ++k;
    if (family.back().name.empty())
      family.back().name = "M" + std::to_string(k);
  }
  return family;
}

KnotRecord knot_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("knot record must be an object");
  KnotRecord k;
  if (j.contains("name")) k.name = j.at("name").get<std::string>();
  if (j.contains("determinant")) k.determinant = Int(int_field(j, "determinant"));
  if (j.contains("cyclic")) k.cyclic = j.at("cyclic").get<bool>();
  if (j.contains("goeritz")) k.goeritz = matrix_from_json(j.at("goeritz"));
  if (j.contains("cover")) k.branched_cover = manifold_from_json(j.at("cover"));
  return k;
}

std::vector<KnotRecord> knots_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("knots") || !j.at("knots").is_array())
    throw ParseError("knot file needs a \"knots\" array");
  std::vector<KnotRecord> knots;
  std::size_t i = 0;
  for (const Json& kj : j.at("knots")) {
    knots.push_back(knot_from_json(kj));
    ++i;
    if (knots.back().name.empty()) knots.back().name = "K" + std::to_string(i);
  }
  return knots;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace torsion
