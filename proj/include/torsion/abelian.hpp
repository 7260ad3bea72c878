#pragma once

// Finite abelian groups in primary decomposition, their elements and
// subgroups, fixed-order subgroup enumeration, quotient invariants, and the
// echelon generator form used by the metabolizer machinery.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "torsion/exact.hpp"
#include "torsion/matrices.hpp"

namespace torsion {

inline constexpr std::int64_t kEnumerationCap = 100000000;  // 1e8 elements

struct PrimePower {
  std::int64_t p = 0;
  int e = 0;

  Int modulus() const;
  friend auto operator<=>(const PrimePower&, const PrimePower&) = default;
};

// Coordinates relative to the group's cyclic factors, each in [0, p_i^{e_i}).
using GroupElement = std::vector<Int>;

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<PrimePower> factors);

  const std::vector<PrimePower>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  bool trivial() const { return factors_.empty(); }
  Int order() const;
  Int exponent() const;
  std::vector<Int> moduli() const;

  // True when every factor is the same prime power (covers the trivial group).
  bool homogeneous() const;

  GroupElement zero() const;
  GroupElement reduce(GroupElement x) const;
  GroupElement add(GroupElement a, const GroupElement& b) const;
  GroupElement sub(GroupElement a, const GroupElement& b) const;
  GroupElement neg(GroupElement a) const;
  GroupElement scale(const Int& c, GroupElement a) const;
  bool is_zero(const GroupElement& a) const;
  Int element_order(const GroupElement& a) const;

  // Odometer enumeration, last coordinate fastest.  element_at/element_index
  // are mutually inverse on [0, order()).
  GroupElement element_at(Int index) const;
  Int element_index(const GroupElement& a) const;
  bool increment(GroupElement& a) const;  // false once a wraps back to zero
  Int checked_order(Int cap = Int(kEnumerationCap)) const;

  std::string element_label(const GroupElement& a) const;
  GroupElement parse_element_label(const std::string& label) const;

  friend bool operator==(const FiniteAbelianGroup&,
                         const FiniteAbelianGroup&) = default;

 private:
  std::vector<PrimePower> factors_;
};

FiniteAbelianGroup from_cyclic_orders(const std::vector<Int>& orders);

// A primary summand together with the coordinate positions it occupies in
// the parent group (factors of a fixed prime are contiguous and canonical).
struct PrimaryEmbedding {
  FiniteAbelianGroup part;
  std::vector<std::size_t> coords;

  GroupElement include(const FiniteAbelianGroup& parent,
                       const GroupElement& x) const;
  GroupElement project(const GroupElement& x) const;
};

PrimaryEmbedding primary_part(const FiniteAbelianGroup& g, std::int64_t p);

// Subgroups are stored canonically: the Hermite normal form of the lattice of
// integer lifts.  Two subgroups are equal iff their stored forms coincide,
// making equality and ordering syntactic.
class Subgroup {
 public:
  Subgroup() = default;

  static Subgroup from_generators(const FiniteAbelianGroup& ambient,
                                  const std::vector<GroupElement>& gens);
  static Subgroup trivial(const FiniteAbelianGroup& ambient);
  static Subgroup full(const FiniteAbelianGroup& ambient);

  const FiniteAbelianGroup& ambient() const { return ambient_; }

  // Canonical generators: echelon rows, reduced above pivots, with redundant
  // full-order rows dropped.  Unique per subgroup.
  const std::vector<GroupElement>& generators() const { return generators_; }

  Int order() const;
  bool contains(const GroupElement& x) const;
  bool contains_subgroup(const Subgroup& other) const;
  GroupElement coset_reduce(GroupElement x) const;
  std::vector<GroupElement> elements(Int cap = Int(kEnumerationCap)) const;

  // Invariant factors of the subgroup itself (nontrivial, divisibility chain).
  std::vector<Int> invariants() const;

  const Mat& lattice_basis() const { return basis_; }

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
  bool precedes(const Subgroup& other) const;  // canonical ordering

 private:
  FiniteAbelianGroup ambient_;
  Mat basis_;  // full-rank HNF of lift lattice, one row per coordinate
  std::vector<GroupElement> generators_;
};

std::vector<Subgroup> enumerate_subgroups_of_order(const FiniteAbelianGroup& g,
                                                   const Int& n);

// Invariant factors of g/m (nontrivial, divisibility chain).
std::vector<Int> quotient_invariants(const FiniteAbelianGroup& g,
                                     const Subgroup& m);

bool is_isomorphic(const FiniteAbelianGroup& g, const FiniteAbelianGroup& h);

// Exponent profile of an echelon form: a_i sorted non-decreasing, counts[j]
// the number of pivots with a_i = j for j < n, counts[n] the number of
// pivot-free columns, k = counts[0].
struct EchelonProfile {
  std::vector<int> exponents;
  std::vector<std::size_t> counts;
  std::size_t ell = 0;
  std::size_t k = 0;
};

// Row echelon form of a generating set inside (Z/p^n)^rank.  Rows keep the
// original coordinate order; pivots are exactly p^{a_i} with a_i
// non-decreasing, p^{a_i} divides every entry of row i, and pivot columns
// are strictly increasing after applying column_order (pivot columns first,
// then the rest ascending).
struct EchelonForm {
  std::int64_t p = 0;
  int n = 0;
  std::size_t rank = 0;
  std::vector<GroupElement> omegas;
  std::vector<std::size_t> pivot_cols;
  std::vector<int> a;
  std::vector<std::size_t> column_order;

  EchelonProfile profile() const;
};

EchelonForm echelon_generators(const FiniteAbelianGroup& ambient,
                               const std::vector<GroupElement>& gens);
EchelonForm echelon_generators(const Subgroup& m);

}  // namespace torsion
