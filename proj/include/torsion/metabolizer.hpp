#pragma once

// Metabolizer certification and enumeration, echelon profiles of metabolizers,
// and the seed-element / class-polynomial machinery behind the vanishing
// proposition.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torsion/abelian.hpp"
#include "torsion/linking.hpp"

namespace torsion {

struct Metabolizer {
  Subgroup subgroup;
  LinkingForm ambient_form;

  friend bool operator==(const Metabolizer&, const Metabolizer&) = default;
};

// All three defining conditions are checked independently; self-duality is
// implied by nondegeneracy but re-verifying it doubles as a consistency test.
struct MetabolizerCertificate {
  bool square_order = false;
  bool isotropic = false;
  bool self_dual = false;
  // First pair with nonzero pairing, when isotropy fails.
  std::optional<std::pair<GroupElement, GroupElement>> witness;

  bool ok() const { return square_order && isotropic && self_dual; }
};

MetabolizerCertificate check_metabolizer(const LinkingForm& form, const Subgroup& m);
bool is_metabolizer(const LinkingForm& form, const Subgroup& m);

struct MetabolizerEnumeration {
  std::vector<Metabolizer> metabolizers;
  std::string reason;  // "SquareObstruction" when |G| is not a perfect square
};

MetabolizerEnumeration enumerate_metabolizers(const LinkingForm& form, int jobs = 1);

// Profile of the canonical generators; asserts the symmetry k_j = k_{n-j}
// (which also encodes 2m = ell + k at j = 0) and throws ProfileAsymmetry on
// violation.
EchelonProfile echelon_profile(const Metabolizer& m);

// The inductive seed element: a combination of the echelon generators with
// exponent at most r-1, with unit coefficients chosen so every pivot
// coordinate lands in the class of +-p^{r-1} mod p^n.
struct TorsionSeed {
  std::int64_t p = 0;
  int n = 0;
  int r = 0;
  GroupElement z;
  std::size_t ell_bar = 0;  // generators used
  std::size_t k_bar = 0;    // 2m - ell_bar
  std::vector<std::size_t> pivot_cols;
  std::vector<Int> unit_coeffs;
};

TorsionSeed build_torsion_seed(const EchelonForm& ef, int r);
TorsionSeed build_torsion_seed(const Metabolizer& m, int r);

// Smallest positive integer generating the units of Z/p^e modulo {+-1}.
Int canonical_shift_generator(std::int64_t p, int e);

// Tally of the coordinates of x over the classes +-a^i p^{r-1} mod p^n,
// indexed by i = 0..q_bar-1.  Coordinates outside these classes (zero, or of
// valuation other than r-1) are not counted.
std::vector<std::int64_t> unit_class_counts(const GroupElement& x, std::int64_t p,
                                            int n, int r, const Int& a);

struct ClassPolynomial {
  std::vector<std::int64_t> beta;  // coefficients, size q_bar
  std::int64_t q_bar = 0;
  Int shift_generator;
  std::int64_t p = 0;
  int n = 0;
  int r = 0;
  // beta_0 >= ell_bar >= k_bar >= sum of the remaining coefficients.
  bool chain_ok = false;
};

ClassPolynomial class_polynomial(const TorsionSeed& seed);

// True iff h shares no root with t^{q_bar} - 1, i.e. the ideal it generates
// in Q[t]/(t^{q_bar} - 1) is everything.
bool ideal_is_full(const ClassPolynomial& h);

// Exhaustively verifies that the class tally intertwines multiplication by a
// on the p^{n-r+1}-torsion of M with the cyclic index shift.
bool shift_equivariant(const Metabolizer& m, const Int& a, int r);

}  // namespace torsion
