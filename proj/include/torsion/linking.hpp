#pragma once

// Torsion linking forms on finite abelian groups, quadratic refinements
// modulo 2 for odd-order groups, rho-maps for surgeries, and ingestion of
// symmetric integer presentations.

#include <cstdint>
#include <optional>
#include <vector>

#include "torsion/abelian.hpp"
#include "torsion/exact.hpp"
#include "torsion/matrices.hpp"

namespace torsion {

inline constexpr std::int64_t kMaterializationCap = 1000000;

class LinkingForm {
 public:
  LinkingForm() = default;
  // gram[i][j] is the pairing of the i-th and j-th cyclic generators, a
  // residue mod 1 killed by gcd of the two factor orders.
  LinkingForm(FiniteAbelianGroup group, std::vector<std::vector<Residue>> gram);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<std::vector<Residue>>& gram() const { return gram_; }

  Residue evaluate(const GroupElement& x, const GroupElement& y) const;

  friend bool operator==(const LinkingForm&, const LinkingForm&) = default;

 private:
  FiniteAbelianGroup group_;
  std::vector<std::vector<Residue>> gram_;
};

// lambda(x, y) = u x y / p^n on Z/p^n, for an odd prime p and a unit u.
LinkingForm standard_cyclic_form(std::int64_t p, int n, const Int& u);

// Bookkeeping for block sums whose factors get resorted into canonical order.
struct DirectSumLayout {
  FiniteAbelianGroup total;
  std::vector<std::vector<std::size_t>> slots;  // slots[s][i]: position in total

  GroupElement embed(std::size_t summand, const GroupElement& x) const;
  GroupElement combine(const std::vector<GroupElement>& xs) const;
};

DirectSumLayout direct_sum_layout(const std::vector<FiniteAbelianGroup>& parts);

LinkingForm direct_sum(const std::vector<LinkingForm>& forms);
LinkingForm negate(const LinkingForm& form);
bool is_nondegenerate(const LinkingForm& form);

class QuadraticRefinement {
 public:
  QuadraticRefinement() = default;
  explicit QuadraticRefinement(LinkingForm form);  // odd order only

  const LinkingForm& form() const { return form_; }
  const FiniteAbelianGroup& group() const { return form_.group(); }
  const Residue& value(const GroupElement& x) const;  // residue mod 2

  friend bool operator==(const QuadraticRefinement&,
                         const QuadraticRefinement&) = default;

 private:
  LinkingForm form_;
  std::vector<Residue> values_;  // indexed by element_index
};

QuadraticRefinement quadratic_refinement(const LinkingForm& form);
LinkingForm polarize(const QuadraticRefinement& q);

bool refinement_vanishes_on(const QuadraticRefinement& q, const Subgroup& m);

// rho(t_x) for every spin-c label x in Z/|n|, with the origin value rho(t_0)
// split out.  The refinement is present exactly when the group has odd order,
// and then rho(t_x) = rho0 + q(element_of(x)).
struct RhoMap {
  FiniteAbelianGroup group;
  Residue rho0;                  // mod 2
  std::vector<Residue> values;   // mod 2, indexed by the integer label x
  std::optional<QuadraticRefinement> refinement;

  // Canonical coordinates of x times the distinguished generator.
  GroupElement element_of(const Int& x) const;
  const Residue& value(const Int& x) const;
};

RhoMap rho_surgery(const Int& n);

struct PresentationResult {
  FiniteAbelianGroup group;
  LinkingForm form;
  // Integer lifts realizing each canonical generator in the presentation's
  // coordinates; kept for cross-validation.
  std::vector<std::vector<Int>> generator_lifts;
};

PresentationResult linking_from_presentation(const Mat& a);

}  // namespace torsion
