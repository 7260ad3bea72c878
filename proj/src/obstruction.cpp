#include "torsion/obstruction.hpp"

#include <algorithm>

namespace torsion {

std::string conclusion_name(Conclusion c) {
  switch (c) {
    case Conclusion::InfiniteOrder: return "infinite_order";
    case Conclusion::Nonzero: return "nonzero";
    case Conclusion::Independent: return "independent";
    case Conclusion::ObstructedSquare: return "obstructed_square";
    case Conclusion::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

bool square_order_test(const FiniteAbelianGroup& g) {
  const Int order = g.order();
  const Int root = sqrt(order);
  return root * root == order;
}

Verdict check_surgery_infinite_order(const Int& n) {
  if (n % 2 == 0)
    throw EvenFraming("the finite-order obstruction needs an odd framing");
  Verdict v;
  v.clauses.push_back({"odd framing", true, "n = " + n.str()});
  const Int a = abs(n);
  if (a == 1)
    v.clauses.push_back({"nontrivial first homology", false,
                         "framing " + n.str() + " gives trivial first homology"});
  RhoMap rho = rho_surgery(n);
  const bool rho_nonzero = !rho.rho0.is_zero();
  v.clauses.push_back({"spin rho value nonzero", rho_nonzero,
                       "rho(t0) = " + rho.rho0.str() + ", |n| = " + a.str() +
                           " is " + (rho_nonzero ? "not " : "") +
                           "1 mod 8"});
  v.conclusion = rho_nonzero && a != 1 ? Conclusion::InfiniteOrder
                                       : Conclusion::Inconclusive;
  return v;
}

namespace {

std::string group_string(const FiniteAbelianGroup& g) {
  if (g.trivial()) return "trivial";
  std::string s;
  for (const auto& f : g.factors()) {
    if (!s.empty()) s += " + ";
    s += "Z/" + f.modulus().str();
  }
  return s;
}

}  // namespace

Verdict check_theorem_main(const ManifoldDescriptor& y, const ManifoldDescriptor& nd,
                           const Int& m, std::int64_t p, int n) {
  Verdict v;
  auto add = [&](const std::string& clause, bool ok, const std::string& detail) {
    v.clauses.push_back({clause, ok, detail});
    return ok;
  };
  bool all = add("multiplicity nonzero", m != 0, "m = " + m.str());
  all &= add("odd order first homology", y.h1.order() % 2 != 0,
             "|H1(" + y.name + ")| = " + y.h1.order().str());
  all &= add("odd order second summand", nd.h1.order() % 2 != 0,
             "|H1(" + nd.name + ")| = " + nd.h1.order().str());
  const bool prime_ok = is_prime(p) && p % 4 == 3;
  all &= add("prime 3 mod 4", prime_ok, "p = " + std::to_string(p));
  all &= add("odd exponent", n >= 1 && n % 2 == 1, "n = " + std::to_string(n));
  bool cyclic_ok = false;
  std::string part_detail = "p not usable";
  if (prime_ok) {
    const auto part = primary_part(y.h1, p).part;
    cyclic_ok = part.factors().size() == 1 && part.factors().front().e == n;
    part_detail =
        std::to_string(p) + "-part of H1(" + y.name + ") is " + group_string(part);
  }
  all &= add("cyclic p-part of order p^n", cyclic_ok, part_detail);
  bool disjoint_ok = false;
  std::string disjoint_detail = "p not usable";
  if (prime_ok) {
    disjoint_ok = primary_part(nd.h1, p).part.trivial();
    disjoint_detail = std::to_string(p) + "-part of H1(" + nd.name + ") is " +
                      (disjoint_ok ? "trivial" : "nonzero");
  }
  all &= add("trivial p-part in the second summand", disjoint_ok, disjoint_detail);
  v.conclusion = all ? Conclusion::Nonzero : Conclusion::Inconclusive;
  return v;
}

IndependenceCertificate check_independence(const std::vector<ManifoldDescriptor>& family) {
  IndependenceCertificate cert;
  Verdict& v = cert.verdict;
  for (const auto& y : family)
    if (y.h1.order() % 2 == 0) {
      v.clauses.push_back({"odd order first homology", false,
                           "|H1(" + y.name + ")| = " + y.h1.order().str() +
                               " is even"});
      v.conclusion = Conclusion::Inconclusive;
      return cert;
    }
  v.clauses.push_back({"odd order first homology", true,
                       "every member is a Z/2Z-homology sphere"});

  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& y = family[i];
    std::optional<ClauseCheck> failure;
    bool assigned = false;
    for (auto [p, e] : factorize(to_i64(y.h1.order()))) {
      if (p % 4 != 3) {
        if (!failure)
          failure = ClauseCheck{"prime 3 mod 4", false,
                                std::to_string(p) + " divides |H1(" + y.name +
                                    ")| but is 1 mod 4"};
        continue;
      }
      const auto part = primary_part(y.h1, p).part;
      if (part.factors().size() != 1) {
        if (!failure)
          failure = ClauseCheck{"cyclic p-part", false,
                                std::to_string(p) + "-part of H1(" + y.name +
                                    ") is " + group_string(part) + ", not cyclic"};
        continue;
      }
      const int n = part.factors().front().e;
      if (n % 2 == 0) {
        if (!failure)
          failure = ClauseCheck{"odd exponent", false,
                                std::to_string(p) + "-part of H1(" + y.name +
                                    ") is Z/" + part.order().str() +
                                    ", exponent " + std::to_string(n) + " even"};
        continue;
      }
      bool disjoint = true;
      std::string offender;
      for (std::size_t j = 0; j < family.size() && disjoint; ++j)
        if (j != i && family[j].h1.order() % p == 0) {
          disjoint = false;
          offender = family[j].name;
        }
      if (!disjoint) {
        if (!failure)
          failure = ClauseCheck{"disjoint primes", false,
                                std::to_string(p) + "-primary part of " +
                                    offender + " nonzero"};
        continue;
      }
      cert.assignment.push_back({y.name, p, n});
      assigned = true;
      break;
    }
    if (!assigned) {
      if (!failure)
        failure = ClauseCheck{"prime 3 mod 4", false,
                              "no prime 3 mod 4 divides |H1(" + y.name +
                                  ")| = " + y.h1.order().str()};
      v.clauses.push_back(*failure);
      v.conclusion = Conclusion::Inconclusive;
      return cert;
    }
  }
  v.clauses.push_back({"prime assignment", true,
                       "distinct primes with cyclic odd-exponent parts assigned"});
  v.conclusion = Conclusion::Independent;
  return cert;
}

ManifoldDescriptor branched_cover_descriptor(const KnotRecord& k) {
  if (k.branched_cover) {
    if (k.determinant &&
        k.branched_cover->h1.order() != abs(*k.determinant))
      throw Error("determinant of " + k.name +
                  " disagrees with the branched cover homology");
    ManifoldDescriptor d = *k.branched_cover;
    if (d.name.empty()) d.name = "cover(" + k.name + ")";
    return d;
  }
  if (k.goeritz) {
    ManifoldDescriptor d = presentation_descriptor("cover(" + k.name + ")",
                                                   *k.goeritz);
    if (k.determinant && d.h1.order() != abs(*k.determinant))
      throw Error("determinant of " + k.name +
                  " disagrees with its goeritz presentation");
    return d;
  }
  if (k.determinant) {
    const Int det = *k.determinant;
    if (det == 0 || det % 2 == 0)
      throw Error("determinant of " + k.name + " must be odd and nonzero");
    if (!k.cyclic)
      throw MissingData("homology of the cover of " + k.name +
                        " is not determined by the determinant; assert cyclic "
                        "or supply cover data");
    ManifoldDescriptor d;
    d.name = "cover(" + k.name + ")";
    d.h1 = from_cyclic_orders({abs(det)});
    return d;
  }
  throw MissingData("knot record " + k.name +
                    " has neither determinant nor cover data");
}

IndependenceCertificate check_knot_family(const std::vector<KnotRecord>& knots) {
  std::vector<ManifoldDescriptor> covers;
  covers.reserve(knots.size());
  for (const auto& k : knots) covers.push_back(branched_cover_descriptor(k));
  return check_independence(covers);
}

Verdict check_knot_pair(const KnotRecord& k, const KnotRecord& j, const Int& m) {
  const ManifoldDescriptor yk = branched_cover_descriptor(k);
  const ManifoldDescriptor yj = branched_cover_descriptor(j);
  std::optional<Verdict> first;
  for (auto [p, e] : factorize(to_i64(yk.h1.order()))) {
    if (p % 4 != 3) continue;
    const auto part = primary_part(yk.h1, p).part;
    if (part.factors().size() != 1 || part.factors().front().e % 2 == 0) continue;
    Verdict v = check_theorem_main(yk, yj, m, p, part.factors().front().e);
    if (v.conclusion == Conclusion::Nonzero) return v;
    if (!first) first = std::move(v);
  }
  if (first) return *first;
  Verdict v;
  v.clauses.push_back({"cyclic odd p-part for some prime 3 mod 4", false,
                       "|H1(" + yk.name + ")| = " + yk.h1.order().str() +
                           " admits no usable prime"});
  v.conclusion = Conclusion::Inconclusive;
  return v;
}

ManifoldDescriptor connected_sum(const std::vector<ManifoldDescriptor>& pieces) {
  ManifoldDescriptor out;
  out.provenance.kind = Provenance::Kind::ConnectedSum;
  out.provenance.summands = pieces;
  std::vector<FiniteAbelianGroup> groups;
  bool all_linking = true, all_rho = true, all_d = true;
  for (const auto& y : pieces) {
    out.name += (out.name.empty() ? "" : " # ") + y.name;
    groups.push_back(y.h1);
    all_linking &= y.linking.has_value();
    all_rho &= y.rho0.has_value();
    all_d &= y.d_table.has_value();
  }
  if (pieces.empty()) out.name = "S3";
  DirectSumLayout layout = direct_sum_layout(groups);
  out.h1 = layout.total;
  if (all_linking) {
    std::vector<LinkingForm> forms;
    for (const auto& y : pieces) forms.push_back(*y.linking);
    out.linking = direct_sum(forms);
  }
  if (all_rho) {
    Residue total(0, 2);
    for (const auto& y : pieces) total = total + *y.rho0;
    out.rho0 = total;
  }
  if (all_d) {
    out.h1.checked_order(Int(kMaterializationCap));
    std::map<std::string, Rational> table;
    GroupElement x = out.h1.zero();
    do {
      Rational sum = 0;
      for (std::size_t s = 0; s < pieces.size(); ++s) {
        GroupElement part(layout.slots[s].size());
        for (std::size_t i = 0; i < part.size(); ++i)
          part[i] = x[layout.slots[s][i]];
        const std::string label = pieces[s].h1.element_label(part);
        auto it = pieces[s].d_table->find(label);
        if (it == pieces[s].d_table->end())
          throw Error("d table of " + pieces[s].name + " is missing label " +
                      label);
        sum += it->second;
      }
      table[out.h1.element_label(x)] = sum;
    } while (out.h1.increment(x));
    out.d_table = std::move(table);
  }
  return out;
}

ManifoldDescriptor reverse(const ManifoldDescriptor& y) {
  ManifoldDescriptor out;
  out.name = y.name.rfind('-', 0) == 0 ? y.name.substr(1) : "-" + y.name;
  out.h1 = y.h1;
  if (y.linking) out.linking = negate(*y.linking);
  if (y.rho0) out.rho0 = -*y.rho0;
  if (y.d_table) {
    std::map<std::string, Rational> table;
    for (const auto& [label, v] : *y.d_table) table[label] = -v;
    out.d_table = std::move(table);
  }
  out.provenance.kind = Provenance::Kind::Reversed;
  out.provenance.summands = {y};
  return out;
}

ManifoldDescriptor surgery_descriptor(const Int& n) {
  RhoMap rho = rho_surgery(n);
  ManifoldDescriptor d;
  d.name = "surgery(" + n.str() + ")";
  d.h1 = rho.group;
  d.linking = linking_from_presentation({{n}}).form;
  d.rho0 = rho.rho0;
  d.provenance.kind = Provenance::Kind::Surgery;
  d.provenance.surgery_n = n;
  return d;
}

ManifoldDescriptor presentation_descriptor(const std::string& name, const Mat& a) {
  PresentationResult pres = linking_from_presentation(a);
  ManifoldDescriptor d;
  d.name = name;
  d.h1 = pres.group;
  d.linking = std::move(pres.form);
  d.provenance.kind = Provenance::Kind::Presentation;
  d.provenance.presentation = a;
  return d;
}

ValidationReport validate_d_axioms(const ManifoldDescriptor& y) {
  if (!y.d_table) throw MissingData("descriptor carries no d table");
  ValidationReport report;
  auto flag = [&](std::string msg) {
    report.ok = false;
    report.violations.push_back(std::move(msg));
  };

  const Int order = y.h1.checked_order(Int(kMaterializationCap));
  std::vector<std::optional<Rational>> values(
      static_cast<std::size_t>(to_i64(order)));
  for (const auto& [label, v] : *y.d_table) {
    GroupElement x = y.h1.parse_element_label(label);
    auto idx = static_cast<std::size_t>(to_i64(y.h1.element_index(x)));
    if (values[idx] && *values[idx] != v)
      flag("conflicting values for element " + y.h1.element_label(x));
    values[idx] = v;
  }
  for (std::size_t idx = 0; idx < values.size(); ++idx)
    if (!values[idx])
      flag("missing value at " + y.h1.element_label(y.h1.element_at(Int(idx))));

  const std::size_t origin =
      static_cast<std::size_t>(to_i64(y.h1.element_index(y.h1.zero())));
  if (values[origin]) {
    const Rational d0 = *values[origin];
    if (y.rho0 && !(Residue(d0, 2) == *y.rho0))
      flag("origin value " + format_rational(d0) +
           " does not reduce to rho(t0) = " + y.rho0->str());
    if (y.h1.trivial() && !Residue(d0, 2).is_zero())
      flag("origin value " + format_rational(d0) +
           " must be even for trivial first homology");
  }

  // Conjugation symmetry.
  GroupElement x = y.h1.zero();
  do {
    const auto idx = static_cast<std::size_t>(to_i64(y.h1.element_index(x)));
    const GroupElement neg = y.h1.neg(x);
    const auto nidx = static_cast<std::size_t>(to_i64(y.h1.element_index(neg)));
    if (idx < nidx && values[idx] && values[nidx] && *values[idx] != *values[nidx])
      flag("values at " + y.h1.element_label(x) + " and " +
           y.h1.element_label(neg) + " differ");
  } while (y.h1.increment(x));

  // Mod-2 agreement with the refinement of the linking form.
  if (y.linking && y.h1.order() % 2 != 0 && values[origin]) {
    QuadraticRefinement q(*y.linking);
    const Rational d0 = *values[origin];
    x = y.h1.zero();
    do {
      const auto idx = static_cast<std::size_t>(to_i64(y.h1.element_index(x)));
      if (values[idx] && !(Residue(*values[idx] - d0, 2) == q.value(x)))
        flag("difference at " + y.h1.element_label(x) +
             " disagrees mod 2 with the refinement");
    } while (y.h1.increment(x));
  }

  // Additivity across connected sums.
  if (y.provenance.kind == Provenance::Kind::ConnectedSum) {
    bool all_d = true;
    std::vector<FiniteAbelianGroup> groups;
    for (const auto& piece : y.provenance.summands) {
      all_d &= piece.d_table.has_value();
      groups.push_back(piece.h1);
    }
    if (all_d) {
      DirectSumLayout layout = direct_sum_layout(groups);
      if (!(layout.total == y.h1)) {
        flag("summand groups do not assemble to the total homology");
      } else {
        x = y.h1.zero();
        do {
          const auto idx = static_cast<std::size_t>(to_i64(y.h1.element_index(x)));
          if (!values[idx]) continue;
          Rational expect = 0;
          bool known = true;
          for (std::size_t s = 0; s < groups.size() && known; ++s) {
            GroupElement part(layout.slots[s].size());
            for (std::size_t i = 0; i < part.size(); ++i)
              part[i] = x[layout.slots[s][i]];
            auto it = y.provenance.summands[s].d_table->find(
                groups[s].element_label(part));
            if (it == y.provenance.summands[s].d_table->end())
              known = false;
            else
              expect += it->second;
          }
          if (known && *values[idx] != expect)
            flag("value at " + y.h1.element_label(x) +
                 " is not the sum of the summand values");
        } while (y.h1.increment(x));
      }
    }
  }
  return report;
}

}  // namespace torsion
