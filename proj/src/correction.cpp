#include "torsion/correction.hpp"

#include <future>
#include <set>

#include "torsion/matrices.hpp"

namespace torsion {

CorrectionFunction::CorrectionFunction(std::int64_t p, int n) : p_(p), n_(n) {
  if (!is_prime(p) || p == 2) throw Error("domain must be Z/p^n for an odd prime");
  if (n < 1) throw Error("exponent must be positive");
  modulus_ = pow(Int(p), n);
  if (modulus_ > kEnumerationCap)
    throw CapacityError("domain of size " + modulus_.str() + " exceeds the cap");
  reps_.assign(static_cast<std::size_t>(to_i64((modulus_ + 1) / 2)), Rational(0));
}

CorrectionFunction CorrectionFunction::zero(std::int64_t p, int n) {
  return CorrectionFunction(p, n);
}

CorrectionFunction CorrectionFunction::from_table(
    std::int64_t p, int n, const std::map<std::string, Rational>& table) {
  CorrectionFunction f(p, n);
  FiniteAbelianGroup domain({PrimePower{p, n}});
  std::vector<char> seen(f.reps_.size(), 0);
  for (const auto& [label, v] : table) {
    Int g = domain.parse_element_label(label).front();
    Int rep = g <= f.modulus_ - g ? g : f.modulus_ - g;
    auto idx = static_cast<std::size_t>(to_i64(rep));
    if (rep == 0 && v != 0) throw Error("value at 0 must vanish");
    if (seen[idx] && f.reps_[idx] != v)
      throw Error("conflicting values at " + rep.str() + " and its negative");
    seen[idx] = 1;
    f.reps_[idx] = v;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw Error("missing value at " + std::to_string(i));
  return f;
}

CorrectionFunction CorrectionFunction::from_refinement(const QuadraticRefinement& q) {
  const auto& g = q.group();
  if (g.rank() != 1)
    throw Error("refinement domain is not a cyclic p-group");
  CorrectionFunction f(g.factors().front().p, g.factors().front().e);
  for (std::size_t i = 0; i < f.reps_.size(); ++i)
    f.reps_[i] = q.value({Int(i)}).value();
  return f;
}

const Rational& CorrectionFunction::value(const Int& g) const {
  Int c = mod_floor(g, modulus_);
  Int rep = c <= modulus_ - c ? c : modulus_ - c;
  return reps_[static_cast<std::size_t>(to_i64(rep))];
}

void CorrectionFunction::set(const Int& g, Rational v) {
  Int c = mod_floor(g, modulus_);
  Int rep = c <= modulus_ - c ? c : modulus_ - c;
  if (rep == 0 && v != 0) throw Error("value at 0 must vanish");
  reps_[static_cast<std::size_t>(to_i64(rep))] = std::move(v);
}

ValidationReport validate(const CorrectionFunction& f, const QuadraticRefinement& q) {
  const auto& g = q.group();
  if (g.rank() != 1 || g.order() != f.modulus() ||
      (!g.trivial() && g.factors().front().p != f.p()))
    throw Error("refinement lives on a different group");
  ValidationReport report;
  if (f.value(0) != 0) {
    report.ok = false;
    report.violations.push_back("f(0) = " + format_rational(f.value(0)));
  }
  for (Int x = 1; x < f.modulus(); ++x) {
    if (f.value(x) != f.value(-x)) {
      report.ok = false;
      report.violations.push_back("f not symmetric at " + x.str());
    }
    if (!(Residue(f.value(x), 2) == q.value({x}))) {
      report.ok = false;
      report.violations.push_back("f(" + x.str() + ") = " +
                                  format_rational(f.value(x)) +
                                  " differs mod 2 from the refinement value " +
                                  q.value({x}).str());
    }
  }
  return report;
}

Rational extended_value(const CorrectionFunction& f, const GroupElement& tuple) {
  Rational sum = 0;
  for (const auto& c : tuple) sum += f.value(c);
  return sum;
}

bool vanishes_on_metabolizer(const CorrectionFunction& f, int m, const Metabolizer& mb) {
  const auto& g = mb.subgroup.ambient();
  if (!g.homogeneous())
    throw NotHomogeneousAmbient("metabolizer ambient is not homogeneous");
  if (g.rank() != static_cast<std::size_t>(2 * m) ||
      (!g.trivial() && g.factors().front().modulus() != f.modulus()))
    throw Error("metabolizer ambient is not the 2m-fold sum of the domain");
  for (const auto& x : mb.subgroup.elements())
    if (extended_value(f, x) != 0) return false;
  return true;
}

bool conclusion_holds(const CorrectionFunction& f) {
  if (f.n() % 2 == 0)
    throw NOddRequired("the critical subgroup needs an odd exponent");
  const Int step = pow(Int(f.p()), (f.n() - 1) / 2);
  for (Int g = step; g < f.modulus(); g += step)
    if (f.value(g) != 0) return false;
  return true;
}

namespace {

// Representatives of the nonzero elements of the critical subgroup, as
// indices into the free values f(1..(p^n-1)/2).
std::vector<Int> critical_reps(std::int64_t p, int n, const Int& modulus) {
  const Int step = pow(Int(p), (n - 1) / 2);
  std::set<Int> reps;
  for (Int g = step; g < modulus; g += step)
    reps.insert(g <= modulus - g ? g : modulus - g);
  return {reps.begin(), reps.end()};
}

MetabolizerRecord analyze_metabolizer(const Metabolizer& mb, std::int64_t p, int n,
                                      const Int& modulus) {
  MetabolizerRecord rec;
  rec.generators = mb.subgroup.generators();
  const auto vars = static_cast<std::size_t>(to_i64((modulus - 1) / 2));

  Mat a;
  for (const auto& x : mb.subgroup.elements()) {
    std::vector<Int> row(vars, Int(0));
    for (const auto& coord : x) {
      Int rep = coord <= modulus - coord ? coord : modulus - coord;
      if (rep != 0) row[static_cast<std::size_t>(to_i64(rep)) - 1] += 1;
    }
    a.push_back(std::move(row));
  }

  RatMat reduced(a.size(), std::vector<Rational>(vars));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < vars; ++j) reduced[i][j] = a[i][j];
  rec.constraint_rank = rational_rref(reduced);

  rec.target_reps = critical_reps(p, n, modulus);
  rec.contained = true;
  for (const Int& t : rec.target_reps) {
    std::vector<Rational> unit(vars, Rational(0));
    unit[static_cast<std::size_t>(to_i64(t)) - 1] = 1;
    if (!in_row_span(reduced, std::move(unit))) {
      rec.contained = false;
      rec.failing_reps.push_back(t);
    }
  }

  // Compatibility coset: a single function can match every diagonal
  // refinement only if those refinements coincide.
  const auto& gram = mb.ambient_form.gram();
  const Int scale = mb.subgroup.ambient().trivial()
                        ? Int(2)
                        : mb.subgroup.ambient().exponent() + 1;
  auto diagonal_refinement = [&](std::size_t i, const Int& g) {
    return Residue(Rational(-scale) * gram[i][i].scaled(g * g).value(), 2);
  };
  bool agree = true;
  for (Int g = 1; agree && g <= (modulus - 1) / 2; ++g)
    for (std::size_t i = 1; i < gram.size(); ++i)
      if (!(diagonal_refinement(i, g) == diagonal_refinement(0, g))) {
        agree = false;
        break;
      }

  if (agree && !gram.empty()) {
    // Solve A h = -A v0 / 2 over the integers, where v0 lifts the refinement.
    std::vector<Rational> v0(vars);
    for (std::size_t j = 0; j < vars; ++j)
      v0[j] = diagonal_refinement(0, Int(j) + 1).value();
    std::vector<Rational> w(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < vars; ++j) w[i] += Rational(a[i][j]) * v0[j];
      w[i] = -w[i] / 2;
    }
    bool integral = true;
    for (const auto& wi : w)
      if (denominator(wi) != 1) integral = false;
    if (integral) {
      SmithDecomposition snf = smith_normal_form(a);
      std::vector<Int> uw(a.size(), Int(0));
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
          uw[i] += snf.u[i][j] * numerator(w[j]);
      bool solvable = true;
      for (std::size_t i = 0; i < a.size(); ++i) {
        Int d = i < vars ? snf.d[i][i] : Int(0);
        if (d == 0 ? uw[i] != 0 : uw[i] % d != 0) solvable = false;
      }
      rec.compatibility_nonempty = solvable;
    }
  }
  rec.secondary_contained = rec.contained || !rec.compatibility_nonempty;
  return rec;
}

}  // namespace

ForcedVanishingCertificate certify_forced_vanishing(std::int64_t p, int n, int m,
                                                    const LinkingForm& form,
                                                    int jobs) {
  if (!is_prime(p) || p % 4 != 3)
    throw Error("prime must be congruent to 3 mod 4");
  if (n < 1 || n % 2 == 0) throw NOddRequired("exponent must be odd");
  if (m < 1) throw Error("number of copies must be positive");
  const auto& g = form.group();
  if (!g.homogeneous() || g.rank() != static_cast<std::size_t>(2 * m) ||
      g.factors().front().p != p || g.factors().front().e != n)
    throw Error("form does not live on the 2m-fold sum of Z/p^n");

  ForcedVanishingCertificate cert;
  cert.p = p;
  cert.n = n;
  cert.m = m;
  cert.group_order = g.order();
  const Int modulus = pow(Int(p), n);

  MetabolizerEnumeration enumeration = enumerate_metabolizers(form, jobs);
  cert.metabolizer_count = enumeration.metabolizers.size();
  cert.records.resize(enumeration.metabolizers.size());

  const auto& mbs = enumeration.metabolizers;
  if (jobs < 2 || mbs.size() < 2) {
    for (std::size_t i = 0; i < mbs.size(); ++i)
      cert.records[i] = analyze_metabolizer(mbs[i], p, n, modulus);
  } else {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), mbs.size());
    std::vector<std::future<void>> futs;
    for (std::size_t w = 0; w < workers; ++w)
      futs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < mbs.size(); i += workers)
          cert.records[i] = analyze_metabolizer(mbs[i], p, n, modulus);
      }));
    for (auto& f : futs) f.get();
  }

  cert.holds = true;
  cert.secondary_holds = true;
  for (const auto& rec : cert.records) {
    cert.holds = cert.holds && rec.contained;
    cert.secondary_holds = cert.secondary_holds && rec.secondary_contained;
  }
  return cert;
}

}  // namespace torsion
