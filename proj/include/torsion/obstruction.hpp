#pragma once

// Decision procedures for the homology-cobordism and concordance obstructions:
// hypothesis-driven theorem checkers over ingested manifold and knot data.
// Checkers certify that an obstruction applies; they never claim a converse.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torsion/abelian.hpp"
#include "torsion/correction.hpp"
#include "torsion/linking.hpp"
#include "torsion/matrices.hpp"

namespace torsion {

struct ManifoldDescriptor;

struct Provenance {
  enum class Kind { Abstract, Surgery, Presentation, ConnectedSum, Reversed };
  Kind kind = Kind::Abstract;
  std::optional<Int> surgery_n;
  std::optional<Mat> presentation;
  std::vector<ManifoldDescriptor> summands;  // pieces, or the reversed manifold
};

struct ManifoldDescriptor {
  std::string name;
  FiniteAbelianGroup h1;
  std::optional<LinkingForm> linking;
  std::optional<Residue> rho0;  // mod 2, at the spin structure
  // Raw d values keyed by canonical element labels of h1.
  std::optional<std::map<std::string, Rational>> d_table;
  Provenance provenance;
};

struct KnotRecord {
  std::string name;
  std::optional<Int> determinant;  // odd, nonzero
  // Asserts the double branched cover has cyclic first homology; the
  // determinant alone does not determine the group.
  bool cyclic = false;
  std::optional<Mat> goeritz;
  std::optional<ManifoldDescriptor> branched_cover;
};

enum class Conclusion {
  InfiniteOrder,
  Nonzero,
  Independent,
  ObstructedSquare,
  Inconclusive,
};

std::string conclusion_name(Conclusion c);

struct ClauseCheck {
  std::string clause;
  bool ok = false;
  std::string detail;
};

struct Verdict {
  Conclusion conclusion = Conclusion::Inconclusive;
  std::vector<ClauseCheck> clauses;

  bool conclusive() const { return conclusion != Conclusion::Inconclusive; }
};

struct IndependenceCertificate {
  struct Assignment {
    std::string manifold;
    std::int64_t p = 0;
    int n = 0;
  };
  std::vector<Assignment> assignment;
  Verdict verdict;
};

bool square_order_test(const FiniteAbelianGroup& g);

// Infinite order in the rational homology cobordism group for odd framings
// with |n| not congruent to 1 mod 8.
Verdict check_surgery_infinite_order(const Int& n);

// mY # N is nonzero when: m != 0, |H1(Y)| and |H1(N)| odd, p = 3 mod 4 prime,
// the p-part of H1(Y) is Z/p^n with n odd, and the p-part of H1(N) is trivial.
Verdict check_theorem_main(const ManifoldDescriptor& y, const ManifoldDescriptor& nd,
                           const Int& m, std::int64_t p, int n);

IndependenceCertificate check_independence(const std::vector<ManifoldDescriptor>& family);

// Branched double cover of a knot record, from whichever data is present.
ManifoldDescriptor branched_cover_descriptor(const KnotRecord& k);

IndependenceCertificate check_knot_family(const std::vector<KnotRecord>& knots);

// Concordance obstruction for mK # J via the covers.
Verdict check_knot_pair(const KnotRecord& k, const KnotRecord& j, const Int& m);

ManifoldDescriptor connected_sum(const std::vector<ManifoldDescriptor>& pieces);
ManifoldDescriptor reverse(const ManifoldDescriptor& y);
ManifoldDescriptor surgery_descriptor(const Int& n);
ManifoldDescriptor presentation_descriptor(const std::string& name, const Mat& a);

// Axioms for a raw d table: origin present, spin value matching rho0 (zero for
// trivial homology), conjugation symmetry, mod-2 agreement with the linking
// refinement, and additivity across connected sums when summand tables exist.
ValidationReport validate_d_axioms(const ManifoldDescriptor& y);

}  // namespace torsion
