#include "torsion/abelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace torsion {

Int PrimePower::modulus() const {
  Int m = 1;
  for (int i = 0; i < e; ++i) m *= p;
  return m;
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<PrimePower> factors)
    : factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    if (!is_prime(f.p)) throw Error("factor base is not prime");
    if (f.e < 1) throw Error("factor exponent must be positive");
  }
  std::sort(factors_.begin(), factors_.end());
}

Int FiniteAbelianGroup::order() const {
  Int n = 1;
  for (const auto& f : factors_) n *= f.modulus();
  return n;
}

Int FiniteAbelianGroup::exponent() const {
  // Factors of a fixed prime are sorted by exponent, so the last one wins.
  std::map<std::int64_t, Int> top;
  for (const auto& f : factors_) top[f.p] = f.modulus();
  Int n = 1;
  for (const auto& [p, m] : top) n *= m;
  return n;
}

std::vector<Int> FiniteAbelianGroup::moduli() const {
  std::vector<Int> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.modulus());
  return out;
}

bool FiniteAbelianGroup::homogeneous() const {
  for (const auto& f : factors_)
    if (!(f == factors_.front())) return false;
  return true;
}

GroupElement FiniteAbelianGroup::zero() const {
  return GroupElement(factors_.size(), 0);
}

GroupElement FiniteAbelianGroup::reduce(GroupElement x) const {
  if (x.size() != factors_.size()) throw Error("element rank mismatch");
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = mod_floor(x[i], factors_[i].modulus());
  return x;
}

GroupElement FiniteAbelianGroup::add(GroupElement a, const GroupElement& b) const {
  if (a.size() != b.size() || a.size() != factors_.size())
    throw Error("element rank mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = mod_floor(a[i] + b[i], factors_[i].modulus());
  return a;
}

GroupElement FiniteAbelianGroup::sub(GroupElement a, const GroupElement& b) const {
  if (a.size() != b.size() || a.size() != factors_.size())
    throw Error("element rank mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = mod_floor(a[i] - b[i], factors_[i].modulus());
  return a;
}

GroupElement FiniteAbelianGroup::neg(GroupElement a) const {
  if (a.size() != factors_.size()) throw Error("element rank mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = mod_floor(-a[i], factors_[i].modulus());
  return a;
}

GroupElement FiniteAbelianGroup::scale(const Int& c, GroupElement a) const {
  if (a.size() != factors_.size()) throw Error("element rank mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = mod_floor(c * a[i], factors_[i].modulus());
  return a;
}

bool FiniteAbelianGroup::is_zero(const GroupElement& a) const {
  if (a.size() != factors_.size()) throw Error("element rank mismatch");
  for (const auto& c : a)
    if (c != 0) return false;
  return true;
}

Int FiniteAbelianGroup::element_order(const GroupElement& a) const {
  if (a.size() != factors_.size()) throw Error("element rank mismatch");
  Int ord = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Int d = factors_[i].modulus();
    Int o = d / gcd(mod_floor(a[i], d), d);
    ord = lcm(ord, o);
  }
  return ord;
}

GroupElement FiniteAbelianGroup::element_at(Int index) const {
  if (index < 0 || index >= order()) throw RangeError("element index out of range");
  GroupElement x(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    Int d = factors_[i].modulus();
    x[i] = index % d;
    index /= d;
  }
  return x;
}

Int FiniteAbelianGroup::element_index(const GroupElement& a) const {
  if (a.size() != factors_.size()) throw Error("element rank mismatch");
  Int idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    idx = idx * factors_[i].modulus() + mod_floor(a[i], factors_[i].modulus());
  return idx;
}

bool FiniteAbelianGroup::increment(GroupElement& a) const {
  for (std::size_t i = a.size(); i-- > 0;) {
    a[i] += 1;
    if (a[i] < factors_[i].modulus()) return true;
    a[i] = 0;
  }
  return false;
}

Int FiniteAbelianGroup::checked_order(Int cap) const {
  Int n = order();
  if (n > cap)
    throw CapacityError("group of order " + n.str() +
                        " exceeds the enumeration capacity " + cap.str());
  return n;
}

std::string FiniteAbelianGroup::element_label(const GroupElement& a) const {
  if (a.size() != factors_.size()) throw Error("element rank mismatch");
  if (factors_.empty()) return "0";
  if (factors_.size() == 1) return mod_floor(a[0], factors_[0].modulus()).str();
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += mod_floor(a[i], factors_[i].modulus()).str();
  }
  return s + ")";
}

GroupElement FiniteAbelianGroup::parse_element_label(const std::string& label) const {
  std::vector<Int> coords;
  std::string body = label;
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')') throw ParseError("unbalanced element label: " + label);
    body = body.substr(1, body.size() - 2);
  }
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    std::string piece = body.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    Rational r = parse_rational(piece);
    if (denominator(r) != 1) throw ParseError("non-integer coordinate: " + piece);
    coords.push_back(numerator(r));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (factors_.empty() && coords.size() == 1 && coords[0] == 0) return {};
  if (coords.size() != factors_.size())
    throw ParseError("element label has wrong rank: " + label);
  return reduce(coords);
}

FiniteAbelianGroup from_cyclic_orders(const std::vector<Int>& orders) {
  std::vector<PrimePower> factors;
  for (const auto& d : orders) {
    if (d < 1) throw Error("cyclic order must be >= 1");
    for (auto [p, e] : factorize(to_i64(d))) factors.push_back({p, e});
  }
  return FiniteAbelianGroup(std::move(factors));
}

GroupElement PrimaryEmbedding::include(const FiniteAbelianGroup& parent,
                                       const GroupElement& x) const {
  if (x.size() != coords.size()) throw Error("element rank mismatch");
  GroupElement out = parent.zero();
  for (std::size_t i = 0; i < coords.size(); ++i) out[coords[i]] = x[i];
  return parent.reduce(out);
}

GroupElement PrimaryEmbedding::project(const GroupElement& x) const {
  GroupElement out;
  out.reserve(coords.size());
  for (std::size_t c : coords) {
    if (c >= x.size()) throw Error("element rank mismatch");
    out.push_back(x[c]);
  }
  return part.reduce(out);
}

PrimaryEmbedding primary_part(const FiniteAbelianGroup& g, std::int64_t p) {
  if (!is_prime(p)) throw Error("primary part requires a prime");
  PrimaryEmbedding e;
  std::vector<PrimePower> fs;
  for (std::size_t i = 0; i < g.factors().size(); ++i)
    if (g.factors()[i].p == p) {
      fs.push_back(g.factors()[i]);
      e.coords.push_back(i);
    }
  e.part = FiniteAbelianGroup(std::move(fs));
  return e;
}

Subgroup Subgroup::from_generators(const FiniteAbelianGroup& ambient,
                                   const std::vector<GroupElement>& gens) {
  Subgroup s;
  s.ambient_ = ambient;
  const auto mods = ambient.moduli();
  const std::size_t k = mods.size();
  Mat rows;
  rows.reserve(gens.size() + k);
  for (const auto& g : gens) rows.push_back(ambient.reduce(g));
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Int> r(k, 0);
    r[i] = mods[i];
    rows.push_back(std::move(r));
  }
  s.basis_ = hermite_normal_form(std::move(rows));
  if (s.basis_.size() != k) throw Error("subgroup lattice lost full rank");
  for (std::size_t i = 0; i < k; ++i)
    if (s.basis_[i][i] != mods[i]) s.generators_.push_back(s.basis_[i]);
  return s;
}

Subgroup Subgroup::trivial(const FiniteAbelianGroup& ambient) {
  return from_generators(ambient, {});
}

Subgroup Subgroup::full(const FiniteAbelianGroup& ambient) {
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < ambient.rank(); ++i) {
    GroupElement g = ambient.zero();
    g[i] = 1;
    gens.push_back(std::move(g));
  }
  return from_generators(ambient, gens);
}

Int Subgroup::order() const {
  const auto mods = ambient_.moduli();
  Int n = 1;
  for (std::size_t i = 0; i < mods.size(); ++i) n *= mods[i] / basis_[i][i];
  return n;
}

bool Subgroup::contains(const GroupElement& x) const {
  GroupElement v = ambient_.reduce(x);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (v[i] % basis_[i][i] != 0) return false;
    Int q = v[i] / basis_[i][i];
    for (std::size_t j = i; j < v.size(); ++j) v[j] -= q * basis_[i][j];
  }
  return true;
}

bool Subgroup::contains_subgroup(const Subgroup& other) const {
  if (!(ambient_ == other.ambient_)) throw NotASubgroup("ambient group mismatch");
  for (const auto& g : other.generators_)
    if (!contains(g)) return false;
  return true;
}

GroupElement Subgroup::coset_reduce(GroupElement x) const {
  x = ambient_.reduce(std::move(x));
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Int q = floor_div(x[i], basis_[i][i]);
    for (std::size_t j = i; j < x.size(); ++j) x[j] -= q * basis_[i][j];
  }
  return x;
}

std::vector<GroupElement> Subgroup::elements(Int cap) const {
  Int n = order();
  if (n > cap)
    throw CapacityError("subgroup of order " + n.str() +
                        " exceeds the enumeration capacity " + cap.str());
  const auto mods = ambient_.moduli();
  const std::size_t k = mods.size();
  std::vector<Int> counts(k);
  for (std::size_t i = 0; i < k; ++i) counts[i] = mods[i] / basis_[i][i];
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(to_i64(n)));
  std::vector<Int> c(k, 0);
  while (true) {
    GroupElement x = ambient_.zero();
    for (std::size_t i = 0; i < k; ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = i; j < k; ++j) x[j] += c[i] * basis_[i][j];
    }
    out.push_back(ambient_.reduce(std::move(x)));
    std::size_t i = k;
    while (i-- > 0) {
      c[i] += 1;
      if (c[i] < counts[i]) break;
      c[i] = 0;
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
}

std::vector<Int> Subgroup::invariants() const {
  // The subgroup is the lift lattice modulo the ambient relations; writing
  // the relation lattice in the basis of the lift lattice presents it.
  const std::size_t k = basis_.size();
  if (k == 0) return {};
  RatMat inv = rational_inverse(basis_);
  const auto mods = ambient_.moduli();
  Mat c(k, std::vector<Int>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Rational v = Rational(mods[i]) * inv[i][j];
      if (denominator(v) != 1) throw Error("relation lattice not integral");
      c[i][j] = numerator(v);
    }
  std::vector<Int> out;
  for (const Int& d : smith_normal_form(c).diagonal())
    if (d > 1) out.push_back(d);
  return out;
}

bool Subgroup::precedes(const Subgroup& other) const {
  if (!(ambient_ == other.ambient_)) throw Error("ambient group mismatch");
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = 0; j < basis_[i].size(); ++j) {
      if (basis_[i][j] != other.basis_[i][j])
        return basis_[i][j] < other.basis_[i][j];
    }
  return false;
}

namespace {

// All subgroups of the p-group with exponents exps[from..], of order p^s,
// returned as generator lists over those coordinates.  Subgroups are produced
// exactly once: the first coordinate's image determines a pivot valuation b,
// the kernel part is enumerated recursively, and the gluing element is chosen
// among coset representatives.
std::vector<std::vector<GroupElement>> p_subgroups(std::int64_t p,
                                                   const std::vector<int>& exps,
                                                   std::size_t from,
                                                   long long s) {
  if (s == 0) return {{}};
  if (from == exps.size()) return {};
  long long avail = 0;
  for (std::size_t i = from; i < exps.size(); ++i) avail += exps[i];
  if (s > avail) return {};

  const int e1 = exps[from];
  std::vector<PrimePower> tail_factors;
  for (std::size_t i = from + 1; i < exps.size(); ++i)
    tail_factors.push_back({p, exps[i]});
  FiniteAbelianGroup tail(tail_factors);
  tail.checked_order(Int(4000000));

  std::vector<std::vector<GroupElement>> out;

  // First coordinate not hit at all: recurse into the tail.
  for (auto& gens : p_subgroups(p, exps, from + 1, s)) {
    std::vector<GroupElement> lifted;
    for (auto& g : gens) {
      GroupElement x;
      x.reserve(g.size() + 1);
      x.push_back(0);
      x.insert(x.end(), g.begin(), g.end());
      lifted.push_back(std::move(x));
    }
    out.push_back(std::move(lifted));
  }

  for (int b = 0; b < e1; ++b) {
    long long s2 = s - (e1 - b);
    if (s2 < 0) continue;
    Int lead = 1;
    for (int i = 0; i < b; ++i) lead *= p;
    Int torsion = 1;
    for (int i = 0; i < e1 - b; ++i) torsion *= p;
    for (auto& gens2 : p_subgroups(p, exps, from + 1, s2)) {
      Subgroup kernel = Subgroup::from_generators(tail, gens2);
      std::set<GroupElement> reps;
      GroupElement w = tail.zero();
      do {
        if (kernel.contains(tail.scale(torsion, w)))
          reps.insert(kernel.coset_reduce(w));
      } while (tail.increment(w));
      for (const auto& rep : reps) {
        std::vector<GroupElement> gens;
        GroupElement head;
        head.reserve(rep.size() + 1);
        head.push_back(lead);
        head.insert(head.end(), rep.begin(), rep.end());
        gens.push_back(std::move(head));
        for (const auto& g : gens2) {
          GroupElement x;
          x.reserve(g.size() + 1);
          x.push_back(0);
          x.insert(x.end(), g.begin(), g.end());
          gens.push_back(std::move(x));
        }
        out.push_back(std::move(gens));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Subgroup> enumerate_subgroups_of_order(const FiniteAbelianGroup& g,
                                                   const Int& n) {
  if (n < 1 || g.order() % n != 0)
    throw OrderNotDividing("requested order " + n.str() +
                           " does not divide the group order " + g.order().str());
  g.checked_order();

  // Per-prime subgroup lists, then one combination per choice tuple.
  std::vector<std::vector<std::vector<GroupElement>>> per_prime;
  std::vector<PrimaryEmbedding> embeddings;
  for (auto [p, s] : factorize(to_i64(n))) {
    PrimaryEmbedding emb = primary_part(g, p);
    std::vector<int> exps;
    for (const auto& f : emb.part.factors()) exps.push_back(f.e);
    per_prime.push_back(p_subgroups(p, exps, 0, s));
    embeddings.push_back(std::move(emb));
  }

  std::vector<std::vector<GroupElement>> combos{{}};
  for (std::size_t t = 0; t < per_prime.size(); ++t) {
    std::vector<std::vector<GroupElement>> next;
    for (const auto& acc : combos)
      for (const auto& gens : per_prime[t]) {
        auto merged = acc;
        for (const auto& x : gens)
          merged.push_back(embeddings[t].include(g, x));
        next.push_back(std::move(merged));
      }
    combos = std::move(next);
  }

  std::vector<Subgroup> out;
  out.reserve(combos.size());
  for (const auto& gens : combos)
    out.push_back(Subgroup::from_generators(g, gens));
  std::sort(out.begin(), out.end(),
            [](const Subgroup& a, const Subgroup& b) { return a.precedes(b); });
  return out;
}

std::vector<Int> quotient_invariants(const FiniteAbelianGroup& g,
                                     const Subgroup& m) {
  if (!(m.ambient() == g)) throw NotASubgroup("subgroup has a different ambient group");
  std::vector<Int> out;
  for (const Int& d : smith_normal_form(m.lattice_basis()).diagonal())
    if (d > 1) out.push_back(d);
  return out;
}

bool is_isomorphic(const FiniteAbelianGroup& g, const FiniteAbelianGroup& h) {
  return g.factors() == h.factors();
}

EchelonProfile EchelonForm::profile() const {
  EchelonProfile pr;
  pr.exponents = a;
  pr.counts.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int ai : a) pr.counts[static_cast<std::size_t>(ai)] += 1;
  pr.ell = a.size();
  pr.counts[static_cast<std::size_t>(n)] = rank - pr.ell;
  pr.k = pr.counts[0];
  return pr;
}

EchelonForm echelon_generators(const FiniteAbelianGroup& ambient,
                               const std::vector<GroupElement>& gens) {
  if (!ambient.homogeneous())
    throw NotHomogeneousAmbient("echelon form needs a homogeneous ambient group");
  EchelonForm ef;
  ef.rank = ambient.rank();
  if (!ambient.trivial()) {
    ef.p = ambient.factors().front().p;
    ef.n = ambient.factors().front().e;
  }
  const Int modulus = ambient.trivial() ? Int(1) : ambient.factors().front().modulus();
  const Int p = ef.p;

  std::vector<GroupElement> rows;
  for (const auto& g : gens) {
    GroupElement r = ambient.reduce(g);
    if (!ambient.is_zero(r)) rows.push_back(std::move(r));
  }

  std::vector<bool> used(ef.rank, false);
  while (!rows.empty()) {
    // Global minimal-valuation pivot, ties to the smallest column then row.
    std::size_t best_r = rows.size(), best_c = 0;
    int best_v = ef.n;
    for (std::size_t c = 0; c < ef.rank; ++c) {
      if (used[c]) continue;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        int v = padic_valuation(rows[r][c], p);
        if (v < best_v || (v == best_v && best_r == rows.size())) {
          best_v = v;
          best_r = r;
          best_c = c;
          if (v == 0) break;
        }
      }
      if (best_r != rows.size() && best_v == 0) break;
    }
    if (best_r == rows.size()) break;

    GroupElement pivot_row = std::move(rows[best_r]);
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best_r));
    // Normalize: make the pivot entry exactly p^{a_i}.
    Int pv = 1;
    for (int i = 0; i < best_v; ++i) pv *= p;
    Int unit = pivot_row[best_c] / pv;
    Int unit_inv = mod_inverse(unit, modulus);
    pivot_row = ambient.scale(unit_inv, std::move(pivot_row));

    for (auto& r : rows) {
      if (r[best_c] == 0) continue;
      Int t = r[best_c] / pv;
      r = ambient.sub(std::move(r), ambient.scale(t, pivot_row));
    }
    std::erase_if(rows, [&](const GroupElement& r) { return ambient.is_zero(r); });

    ef.omegas.push_back(std::move(pivot_row));
    ef.pivot_cols.push_back(best_c);
    ef.a.push_back(best_v);
    used[best_c] = true;
  }

  ef.column_order = ef.pivot_cols;
  for (std::size_t c = 0; c < ef.rank; ++c)
    if (!used[c]) ef.column_order.push_back(c);
  return ef;
}

EchelonForm echelon_generators(const Subgroup& m) {
  return echelon_generators(m.ambient(), m.generators());
}

}  // namespace torsion
