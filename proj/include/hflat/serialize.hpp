#pragma once

#include "hflat/curvature.hpp"
#include "hflat/g2.hpp"
#include "hflat/variety.hpp"

#include <json.hpp>

namespace hflat {

using Json = nlohmann::ordered_json;

/// {"degree": k, "terms": [{"idx": [i, ...], "num": "p", "den": "q"}]}, indices 1-based.
Json form_to_json(const KForm& f);
KForm form_from_json(const Json& j);

/// Floating forms use "value" in place of num/den.
template <int N>
Json form_to_json(const Form<double, N>& f) {
  Json terms = Json::array();
  for (const auto& [m, c] : f.terms()) terms.push_back({{"idx", indices_of(m)}, {"value", c}});
  return {{"degree", f.degree()}, {"terms", terms}};
}

/// Array of the six images d(e¹), ..., d(e⁶).
Json ce_to_json(const CEOp& d);
CEOp ce_from_json(const Json& j);

Json bform_to_json(const BForm& f);
Json bform_to_json(const BFormD& f);

/// {"x": [x1, x2], "y": [y1, y2, y3]}
Json model_to_json(const Model& m);
Model model_from_json(const Json& j);

Json curvature_to_json(const CurvatureReport& r);

/// {t, phi_terms, starphi_terms, metric7}
Json g2_sample_to_json(const G2Sample& s);

}  // namespace hflat
