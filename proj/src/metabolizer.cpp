#include "torsion/metabolizer.hpp"

#include <future>
#include <map>

namespace torsion {

MetabolizerCertificate check_metabolizer(const LinkingForm& form, const Subgroup& m) {
  if (!(m.ambient() == form.group()))
    throw NotASubgroup("subgroup has a different ambient group");
  MetabolizerCertificate cert;
  cert.square_order = m.order() * m.order() == form.group().order();

  auto elems = m.elements();
  cert.isotropic = true;
  for (std::size_t i = 0; i < elems.size() && cert.isotropic; ++i)
    for (std::size_t j = i; j < elems.size(); ++j)
      if (!form.evaluate(elems[i], elems[j]).is_zero()) {
        cert.isotropic = false;
        cert.witness = {elems[i], elems[j]};
        break;
      }

  cert.self_dual = quotient_invariants(form.group(), m) == m.invariants();
  return cert;
}

bool is_metabolizer(const LinkingForm& form, const Subgroup& m) {
  return check_metabolizer(form, m).ok();
}

MetabolizerEnumeration enumerate_metabolizers(const LinkingForm& form, int jobs) {
  MetabolizerEnumeration out;
  const Int order = form.group().order();
  const Int root = sqrt(order);
  if (root * root != order) {
    out.reason = "SquareObstruction";
    return out;
  }
  std::vector<Subgroup> candidates =
      enumerate_subgroups_of_order(form.group(), root);

  std::vector<char> keep(candidates.size(), 0);
  if (jobs < 2 || candidates.size() < 2) {
    for (std::size_t i = 0; i < candidates.size(); ++i)
      keep[i] = is_metabolizer(form, candidates[i]);
  } else {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), candidates.size());
    std::vector<std::future<void>> futs;
    for (std::size_t w = 0; w < workers; ++w)
      futs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < candidates.size(); i += workers)
          keep[i] = is_metabolizer(form, candidates[i]);
      }));
    for (auto& f : futs) f.get();
  }
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (keep[i]) out.metabolizers.push_back({std::move(candidates[i]), form});
  return out;
}

EchelonProfile echelon_profile(const Metabolizer& m) {
  EchelonProfile pr = echelon_generators(m.subgroup).profile();
  const std::size_t n = pr.counts.size() - 1;
  for (std::size_t j = 0; j <= n; ++j)
    if (pr.counts[j] != pr.counts[n - j])
      throw ProfileAsymmetry("exponent counts are not symmetric at index " +
                             std::to_string(j));
  return pr;
}

TorsionSeed build_torsion_seed(const EchelonForm& ef, int r) {
  if (2 * r < ef.n + 1 || r > ef.n)
    throw RangeError("seed exponent " + std::to_string(r) + " outside [" +
                     std::to_string((ef.n + 1 + 1) / 2) + ", " +
                     std::to_string(ef.n) + "]");
  TorsionSeed seed;
  seed.p = ef.p;
  seed.n = ef.n;
  seed.r = r;
  const Int pn = pow(Int(ef.p), ef.n);
  const Int torsion_mod = pow(Int(ef.p), ef.n - r + 1);

  std::size_t ell_bar = 0;
  while (ell_bar < ef.a.size() && ef.a[ell_bar] <= r - 1) ++ell_bar;
  seed.ell_bar = ell_bar;
  seed.k_bar = ef.column_order.size() - ell_bar;
  seed.pivot_cols.assign(ef.pivot_cols.begin(),
                         ef.pivot_cols.begin() + static_cast<long>(ell_bar));

  // Greedy choice of unit coefficients: the running pivot-column sum S is
  // steered to +-1 mod p^{n-r+1}, so each pivot coordinate of z is exactly
  // +-p^{r-1} mod p^n.  One of 1-S, -1-S is always a unit for odd p.
  seed.z.assign(ef.column_order.size(), Int(0));
  for (std::size_t i = 0; i < ell_bar; ++i) {
    Int s = 0;
    for (std::size_t k = 0; k < i; ++k)
      s += seed.unit_coeffs[k] *
           (ef.omegas[k][ef.pivot_cols[i]] / pow(Int(ef.p), ef.a[k]));
    Int u = mod_floor(1 - s, torsion_mod);
    if (u % ef.p == 0) u = mod_floor(-1 - s, torsion_mod);
    seed.unit_coeffs.push_back(u);
    const Int coeff = u * pow(Int(ef.p), r - 1 - ef.a[i]);
    for (std::size_t c = 0; c < seed.z.size(); ++c)
      seed.z[c] = mod_floor(seed.z[c] + coeff * ef.omegas[i][c], pn);
  }
  return seed;
}

TorsionSeed build_torsion_seed(const Metabolizer& m, int r) {
  return build_torsion_seed(echelon_generators(m.subgroup), r);
}

Int canonical_shift_generator(std::int64_t p, int e) {
  const Int modulus = pow(Int(p), e);
  const Int q_bar = pow(Int(p), e - 1) * (p - 1) / 2;
  for (Int a = 1;; ++a) {
    if (a % p == 0) continue;
    // Order of a in the units modulo {+-1}.
    Int t = 1;
    Int pw = mod_floor(a, modulus);
    while (pw != 1 && pw != modulus - 1) {
      pw = mod_floor(pw * a, modulus);
      ++t;
    }
    if (t == q_bar) return a;
  }
}

namespace {

std::int64_t q_bar_of(std::int64_t p, int n, int r) {
  Int q = pow(Int(p), n - r) * (p - 1) / 2;
  if (q > kMaterializationCap)
    throw CapacityError("class tally of size " + q.str() + " exceeds the cap");
  return to_i64(q);
}

// Residue mod p^n -> class index for the 2*q_bar units times p^{r-1}.
std::map<Int, std::size_t> class_table(std::int64_t p, int n, int r, const Int& a) {
  const Int pn = pow(Int(p), n);
  const Int lead = pow(Int(p), r - 1);
  const std::int64_t q_bar = q_bar_of(p, n, r);
  std::map<Int, std::size_t> table;
  Int pw = 1;
  for (std::int64_t i = 0; i < q_bar; ++i) {
    table[mod_floor(pw * lead, pn)] = static_cast<std::size_t>(i);
    table[mod_floor(-pw * lead, pn)] = static_cast<std::size_t>(i);
    pw = mod_floor(pw * a, pn);
  }
  return table;
}

}  // namespace

std::vector<std::int64_t> unit_class_counts(const GroupElement& x, std::int64_t p,
                                            int n, int r, const Int& a) {
  const Int pn = pow(Int(p), n);
  auto table = class_table(p, n, r, a);
  std::vector<std::int64_t> counts(
      static_cast<std::size_t>(q_bar_of(p, n, r)), 0);
  for (const auto& coord : x) {
    auto it = table.find(mod_floor(coord, pn));
    if (it != table.end()) counts[it->second] += 1;
  }
  return counts;
}

ClassPolynomial class_polynomial(const TorsionSeed& seed) {
  ClassPolynomial h;
  h.p = seed.p;
  h.n = seed.n;
  h.r = seed.r;
  h.q_bar = q_bar_of(seed.p, seed.n, seed.r);
  h.shift_generator = canonical_shift_generator(seed.p, seed.n - seed.r + 1);
  h.beta = unit_class_counts(seed.z, seed.p, seed.n, seed.r, h.shift_generator);
  std::int64_t tail = 0;
  for (std::size_t i = 1; i < h.beta.size(); ++i) tail += h.beta[i];
  h.chain_ok = h.beta[0] >= static_cast<std::int64_t>(seed.ell_bar) &&
               seed.ell_bar >= seed.k_bar &&
               static_cast<std::int64_t>(seed.k_bar) >= tail;
  return h;
}

namespace {

// Remainder of a by b in Q[t]; b nonzero, coefficients low-degree-first.
std::vector<Rational> poly_mod(std::vector<Rational> a,
                               const std::vector<Rational>& b) {
  while (a.size() >= b.size()) {
    Rational lead = a.back() / b.back();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[a.size() - b.size() + i] -= lead * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

}  // namespace

bool ideal_is_full(const ClassPolynomial& h) {
  std::vector<Rational> f;
  for (std::int64_t c : h.beta) f.emplace_back(c);
  while (!f.empty() && f.back() == 0) f.pop_back();
  // gcd(f, t^{q_bar} - 1) over Q.
  std::vector<Rational> g(static_cast<std::size_t>(h.q_bar) + 1, Rational(0));
  g.front() = -1;
  g.back() = 1;
  while (!f.empty()) {
    g = poly_mod(std::move(g), f);
    std::swap(f, g);
  }
  return g.size() == 1;
}

bool shift_equivariant(const Metabolizer& m, const Int& a, int r) {
  const FiniteAbelianGroup& g = m.subgroup.ambient();
  if (!g.homogeneous())
    throw NotHomogeneousAmbient("shift equivariance needs a homogeneous ambient");
  if (g.trivial()) return true;
  const std::int64_t p = g.factors().front().p;
  const int n = g.factors().front().e;
  if (2 * r < n + 1 || r > n)
    throw RangeError("seed exponent " + std::to_string(r) + " out of range");
  const Int torsion_mod = pow(Int(p), n - r + 1);
  const std::int64_t q_bar = q_bar_of(p, n, r);

  for (const auto& x : m.subgroup.elements()) {
    if (!g.is_zero(g.scale(torsion_mod, x))) continue;
    auto before = unit_class_counts(x, p, n, r, a);
    auto after = unit_class_counts(g.scale(a, x), p, n, r, a);
    for (std::int64_t i = 0; i < q_bar; ++i)
      if (after[static_cast<std::size_t>(i)] !=
          before[static_cast<std::size_t>((i - 1 + q_bar) % q_bar)])
        return false;
  }
  return true;
}

}  // namespace torsion
