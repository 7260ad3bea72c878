#pragma once

// JSON ingestion and report emission.  Keys are emitted in sorted order and
// all rationals in lowest terms, so identical inputs give byte-identical
// output.

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "torsion/correction.hpp"
#include "torsion/linking.hpp"
#include "torsion/metabolizer.hpp"
#include "torsion/obstruction.hpp"

namespace torsion {

using Json = nlohmann::json;

// Factor list as [p, e, multiplicity] runs.
Json group_to_json(const FiniteAbelianGroup& g);
FiniteAbelianGroup group_from_json(const Json& j);

Json element_to_json(const GroupElement& x);

Json form_to_json(const LinkingForm& f);
// {"type":"diagonal","terms":[{"p":…,"n":…,"unit":…}…]} or
// {"type":"presentation","matrix":[[…]…]}.
LinkingForm form_from_json(const Json& j);

Mat matrix_from_json(const Json& j);

Json rho_to_json(const RhoMap& rho);
Json presentation_to_json(const PresentationResult& pres);

// {"generators":…, "k_profile":…, "ell":…, "certificate":…}
Json metabolizer_report(const Metabolizer& m);
Json enumeration_to_json(const MetabolizerEnumeration& e);

Json certificate_to_json(const ForcedVanishingCertificate& cert);

Json verdict_to_json(const Verdict& v);
Json independence_to_json(const IndependenceCertificate& cert);
Json report_to_json(const ValidationReport& report);

ManifoldDescriptor manifold_from_json(const Json& j);
std::vector<ManifoldDescriptor> family_from_json(const Json& j);
KnotRecord knot_from_json(const Json& j);
std::vector<KnotRecord> knots_from_json(const Json& j);

Rational rational_from_json(const Json& j);
std::map<std::string, Rational> dtable_from_json(const Json& j);

// Reads and parses a JSON file; throws ParseError with diagnostics.
Json load_json_file(const std::string& path);

}  // namespace torsion
