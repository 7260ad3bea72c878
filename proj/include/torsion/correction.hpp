#pragma once

// Symmetric rational functions on Z/p^n vanishing at zero, their extensions
// to tuples, and the exhaustive certificate that every metabolizer forces
// such functions to vanish on the critical cyclic subgroup.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "torsion/linking.hpp"
#include "torsion/metabolizer.hpp"

namespace torsion {

// Stored on orbit representatives 0..(p^n-1)/2, so the symmetry f(-g) = f(g)
// is structural rather than checked.
class CorrectionFunction {
 public:
  CorrectionFunction() = default;

  static CorrectionFunction zero(std::int64_t p, int n);
  // Keys are canonical element labels of Z/p^n; a key may name either of g
  // and -g.  Conflicting values, or a nonzero value at 0, throw Error; every
  // representative must be covered.
  static CorrectionFunction from_table(std::int64_t p, int n,
                                       const std::map<std::string, Rational>& table);
  // Lift of a refinement on a cyclic p-group into [0, 2).
  static CorrectionFunction from_refinement(const QuadraticRefinement& q);

  std::int64_t p() const { return p_; }
  int n() const { return n_; }
  const Int& modulus() const { return modulus_; }
  std::size_t rep_count() const { return reps_.size(); }

  const Rational& value(const Int& g) const;
  void set(const Int& g, Rational v);

  friend bool operator==(const CorrectionFunction&,
                         const CorrectionFunction&) = default;

 private:
  CorrectionFunction(std::int64_t p, int n);

  std::int64_t p_ = 0;
  int n_ = 0;
  Int modulus_ = 1;
  std::vector<Rational> reps_;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// f(0) = 0, symmetry, and f(g) = q(g) mod 2 for every g.
ValidationReport validate(const CorrectionFunction& f, const QuadraticRefinement& q);

// Sum of f over the coordinates of the tuple.
Rational extended_value(const CorrectionFunction& f, const GroupElement& tuple);

// Exhaustive check that the 2m-fold extension vanishes on the metabolizer.
bool vanishes_on_metabolizer(const CorrectionFunction& f, int m, const Metabolizer& mb);

// True iff f vanishes on the subgroup generated by p^{(n-1)/2}.
bool conclusion_holds(const CorrectionFunction& f);

struct MetabolizerRecord {
  std::vector<GroupElement> generators;
  std::size_t constraint_rank = 0;
  std::vector<Int> target_reps;
  std::vector<Int> failing_reps;
  bool contained = false;
  // Whether the solution space meets the coset of functions whose mod-2
  // reduction matches the form's diagonal refinement.
  bool compatibility_nonempty = false;
  bool secondary_contained = false;
};

struct ForcedVanishingCertificate {
  std::int64_t p = 0;
  int n = 0;
  int m = 0;
  Int group_order;
  std::size_t metabolizer_count = 0;
  bool holds = false;            // every metabolizer forces the targets to 0
  bool secondary_holds = false;  // same, within the compatibility coset
  std::vector<MetabolizerRecord> records;
};

// For every metabolizer of the form on (Z/p^n)^{2m}: solve the exact linear
// system cutting out the functions whose extension vanishes on it, and certify
// the solution space forces f = 0 on the targets.
ForcedVanishingCertificate certify_forced_vanishing(std::int64_t p, int n, int m,
                                                    const LinkingForm& form,
                                                    int jobs = 1);

}  // namespace torsion
