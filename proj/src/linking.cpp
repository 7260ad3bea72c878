#include "torsion/linking.hpp"

#include <algorithm>
#include <numeric>

namespace torsion {

LinkingForm::LinkingForm(FiniteAbelianGroup group,
                         std::vector<std::vector<Residue>> gram)
    : group_(std::move(group)), gram_(std::move(gram)) {
  const std::size_t k = group_.rank();
  const auto mods = group_.moduli();
  if (gram_.size() != k) throw Error("gram rank mismatch");
  for (std::size_t i = 0; i < k; ++i) {
    if (gram_[i].size() != k) throw Error("gram rank mismatch");
    for (std::size_t j = 0; j < k; ++j) {
      if (gram_[i][j].modulus() != 1) throw Error("gram entries live mod 1");
      if (!(gram_[i][j] == gram_[j][i])) throw Error("gram is not symmetric");
      if (!gram_[i][j].scaled(gcd(mods[i], mods[j])).is_zero())
        throw Error("gram entry not killed by the factor orders");
    }
  }
}

Residue LinkingForm::evaluate(const GroupElement& x, const GroupElement& y) const {
  GroupElement a = group_.reduce(x);
  GroupElement b = group_.reduce(y);
  Residue acc(0, 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      acc = acc + gram_[i][j].scaled(a[i] * b[j]);
    }
  }
  return acc;
}

LinkingForm standard_cyclic_form(std::int64_t p, int n, const Int& u) {
  if (!is_prime(p) || p == 2) throw Error("standard cyclic forms need an odd prime");
  if (n < 1) throw Error("exponent must be positive");
  FiniteAbelianGroup g({PrimePower{p, n}});
  if (gcd(u, Int(p)) != 1)
    throw NotAUnit("coefficient " + u.str() + " is not a unit mod " +
                   g.order().str());
  Residue entry(Rational(u, g.order()), 1);
  return LinkingForm(std::move(g), {{entry}});
}

DirectSumLayout direct_sum_layout(const std::vector<FiniteAbelianGroup>& parts) {
  struct Slot {
    PrimePower f;
    std::size_t summand, idx;
  };
  std::vector<Slot> all;
  for (std::size_t s = 0; s < parts.size(); ++s)
    for (std::size_t i = 0; i < parts[s].factors().size(); ++i)
      all.push_back({parts[s].factors()[i], s, i});
  std::stable_sort(all.begin(), all.end(),
                   [](const Slot& a, const Slot& b) { return a.f < b.f; });
  DirectSumLayout layout;
  layout.slots.resize(parts.size());
  for (std::size_t s = 0; s < parts.size(); ++s)
    layout.slots[s].resize(parts[s].rank());
  std::vector<PrimePower> factors;
  for (std::size_t pos = 0; pos < all.size(); ++pos) {
    factors.push_back(all[pos].f);
    layout.slots[all[pos].summand][all[pos].idx] = pos;
  }
  layout.total = FiniteAbelianGroup(std::move(factors));
  return layout;
}

GroupElement DirectSumLayout::embed(std::size_t summand, const GroupElement& x) const {
  if (summand >= slots.size() || x.size() != slots[summand].size())
    throw Error("direct sum embedding mismatch");
  GroupElement out = total.zero();
  for (std::size_t i = 0; i < x.size(); ++i) out[slots[summand][i]] = x[i];
  return total.reduce(out);
}

GroupElement DirectSumLayout::combine(const std::vector<GroupElement>& xs) const {
  if (xs.size() != slots.size()) throw Error("direct sum combination mismatch");
  GroupElement out = total.zero();
  for (std::size_t s = 0; s < xs.size(); ++s) {
    if (xs[s].size() != slots[s].size()) throw Error("direct sum combination mismatch");
    for (std::size_t i = 0; i < xs[s].size(); ++i) out[slots[s][i]] = xs[s][i];
  }
  return total.reduce(out);
}

LinkingForm direct_sum(const std::vector<LinkingForm>& forms) {
  std::vector<FiniteAbelianGroup> groups;
  groups.reserve(forms.size());
  for (const auto& f : forms) groups.push_back(f.group());
  DirectSumLayout layout = direct_sum_layout(groups);
  const std::size_t k = layout.total.rank();
  std::vector<std::vector<Residue>> gram(k, std::vector<Residue>(k, Residue(0, 1)));
  for (std::size_t s = 0; s < forms.size(); ++s) {
    const auto& g = forms[s].gram();
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        gram[layout.slots[s][i]][layout.slots[s][j]] = g[i][j];
  }
  return LinkingForm(layout.total, std::move(gram));
}

LinkingForm negate(const LinkingForm& form) {
  auto gram = form.gram();
  for (auto& row : gram)
    for (auto& e : row) e = -e;
  return LinkingForm(form.group(), std::move(gram));
}

bool is_nondegenerate(const LinkingForm& form) {
  const auto& g = form.group();
  std::vector<std::int64_t> primes;
  for (const auto& f : g.factors())
    if (primes.empty() || primes.back() != f.p) primes.push_back(f.p);

  for (std::int64_t p : primes) {
    PrimaryEmbedding emb = primary_part(g, p);
    const auto& part = emb.part;
    bool homogeneous = part.homogeneous();
    if (homogeneous) {
      // Unit-determinant test on the integer lift of the block gram.
      const Int pn = part.factors().front().modulus();
      Mat c(emb.coords.size(), std::vector<Int>(emb.coords.size()));
      for (std::size_t i = 0; i < emb.coords.size(); ++i)
        for (std::size_t j = 0; j < emb.coords.size(); ++j) {
          Rational lifted = form.gram()[emb.coords[i]][emb.coords[j]].value() *
                            Rational(pn);
          if (denominator(lifted) != 1)
            throw Error("gram block not killed by the block order");
          c[i][j] = numerator(lifted);
        }
      if (mat_det(c) % p == 0) return false;
    } else {
      // Mixed exponents: look for a nonzero radical element by exhaustion.
      part.checked_order(Int(kMaterializationCap));
      GroupElement x = part.zero();
      while (part.increment(x)) {
        bool pairs = false;
        for (std::size_t j = 0; j < emb.coords.size() && !pairs; ++j) {
          GroupElement unit = g.zero();
          unit[emb.coords[j]] = 1;
          if (!form.evaluate(emb.include(g, x), unit).is_zero()) pairs = true;
        }
        if (!pairs) return false;
      }
    }
  }
  return true;
}

QuadraticRefinement::QuadraticRefinement(LinkingForm form) : form_(std::move(form)) {
  const auto& g = form_.group();
  if (g.order() % 2 == 0)
    throw EvenOrderUnsupported("quadratic refinements need an odd-order group");
  Int count = g.checked_order(Int(kMaterializationCap));
  const Int scale = g.exponent() + 1;
  values_.reserve(static_cast<std::size_t>(to_i64(count)));
  GroupElement x = g.zero();
  do {
    Rational lift = form_.evaluate(x, x).value();
    values_.emplace_back(Rational(-scale) * lift, 2);
  } while (g.increment(x));
}

const Residue& QuadraticRefinement::value(const GroupElement& x) const {
  return values_[static_cast<std::size_t>(
      to_i64(form_.group().element_index(x)))];
}

QuadraticRefinement quadratic_refinement(const LinkingForm& form) {
  return QuadraticRefinement(form);
}

LinkingForm polarize(const QuadraticRefinement& q) {
  const auto& g = q.group();
  const std::size_t k = g.rank();
  std::vector<std::vector<Residue>> gram(k, std::vector<Residue>(k, Residue(0, 1)));
  for (std::size_t i = 0; i < k; ++i) {
    GroupElement ei = g.zero();
    ei[i] = 1;
    for (std::size_t j = 0; j < k; ++j) {
      GroupElement ej = g.zero();
      ej[j] = 1;
      Rational v = q.value(g.add(ei, ej)).value() - q.value(ei).value() -
                   q.value(ej).value();
      gram[i][j] = Residue(-v / 2, 1);
    }
  }
  return LinkingForm(g, std::move(gram));
}

bool refinement_vanishes_on(const QuadraticRefinement& q, const Subgroup& m) {
  if (!(m.ambient() == q.group()))
    throw NotASubgroup("subgroup has a different ambient group");
  for (const auto& x : m.elements())
    if (!q.value(x).is_zero()) return false;
  return true;
}

GroupElement RhoMap::element_of(const Int& x) const {
  // Coordinates of x times the surgery generator under the canonical
  // primary splitting of Z/|n|.
  GroupElement out;
  const Int a = group.order();
  for (const auto& f : group.factors()) {
    Int pe = f.modulus();
    out.push_back(mod_floor(x * mod_inverse(a / pe, pe), pe));
  }
  return out;
}

const Residue& RhoMap::value(const Int& x) const {
  return values[static_cast<std::size_t>(to_i64(mod_floor(x, group.order())))];
}

RhoMap rho_surgery(const Int& n) {
  if (n == 0) throw ZeroFraming("zero-framed surgery has indefinite first homology");
  const Int a = abs(n);
  const int sign = n > 0 ? 1 : -1;
  RhoMap rho;
  rho.group = from_cyclic_orders({a});
  rho.rho0 = Residue(Rational(n - sign, 4), 2);
  rho.values.reserve(static_cast<std::size_t>(to_i64(a)));
  for (Int x = 0; x < a; ++x) {
    // Divide rather than using the two-argument constructor: cpp_rational
    // rejects negative denominators there.
    Rational v = (Rational((2 * x + n) * (2 * x + n)) / n - sign) / 4;
    rho.values.emplace_back(v, 2);
  }
  if (a % 2 == 1) {
    Mat pres{{n}};
    rho.refinement = quadratic_refinement(linking_from_presentation(pres).form);
  }
  return rho;
}

PresentationResult linking_from_presentation(const Mat& a) {
  const std::size_t k = a.size();
  for (const auto& row : a)
    if (row.size() != k) throw Error("presentation matrix must be square");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (a[i][j] != a[j][i]) throw Error("presentation matrix must be symmetric");
  if (k > 0 && mat_det(a) == 0)
    throw SingularMatrix("presentation matrix is singular");

  SmithDecomposition snf = smith_normal_form(a);
  RatMat a_inv = k ? rational_inverse(a) : RatMat{};
  Mat u_inv = k ? unimodular_inverse(snf.u) : Mat{};

  struct Gen {
    PrimePower f;
    std::vector<Int> lift;
  };
  std::vector<Gen> gens;
  for (std::size_t i = 0; i < k; ++i) {
    const Int d = snf.d[i][i];
    if (d <= 1) continue;
    std::vector<Int> v(k);
    for (std::size_t r = 0; r < k; ++r) v[r] = u_inv[r][i];
    for (auto [p, e] : factorize(to_i64(d))) {
      Int cofactor = d;
      for (int t = 0; t < e; ++t) cofactor /= p;
      Gen gen{PrimePower{p, e}, v};
      for (auto& c : gen.lift) c *= cofactor;
      gens.push_back(std::move(gen));
    }
  }
  std::stable_sort(gens.begin(), gens.end(),
                   [](const Gen& x, const Gen& y) { return x.f < y.f; });

  PresentationResult out;
  std::vector<PrimePower> factors;
  for (const auto& g : gens) factors.push_back(g.f);
  out.group = FiniteAbelianGroup(std::move(factors));
  const std::size_t r = gens.size();
  std::vector<std::vector<Residue>> gram(r, std::vector<Residue>(r, Residue(0, 1)));
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t t = 0; t < r; ++t) {
      Rational pairing = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (gens[s].lift[i] == 0) continue;
        for (std::size_t j = 0; j < k; ++j)
          pairing += Rational(gens[s].lift[i] * gens[t].lift[j]) * a_inv[i][j];
      }
      gram[s][t] = Residue(-pairing, 1);
    }
  out.form = LinkingForm(out.group, std::move(gram));
  for (auto& g : gens) out.generator_lifts.push_back(std::move(g.lift));
  return out;
}

}  // namespace torsion
