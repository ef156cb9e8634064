#include "hflat/serialize.hpp"

#include <stdexcept>

namespace hflat {

namespace {

Rational rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("rational must be a string or an integer");
}

Json matrix_to_json(const Matrix<double>& M) {
  Json rows = Json::array();
  for (int i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

Json form_to_json(const KForm& f) {
  Json terms = Json::array();
  for (const auto& [m, c] : f.terms())
    terms.push_back({{"idx", indices_of(m)}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  return {{"degree", f.degree()}, {"terms", terms}};
}

KForm form_from_json(const Json& j) {
  KForm f(j.at("degree").get<int>());
  for (const auto& t : j.at("terms")) {
    Mask m = 0;
    for (int i : t.at("idx").get<std::vector<int>>()) {
      if (i < 1 || i > 6) throw std::invalid_argument("form index out of range");
      m |= Mask(1) << (i - 1);
    }
    const Rational den = rational_from(t.at("den"));
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator");
    Rational c = rational_from(t.at("num")) / den;
    f.add(m, c);
  }
  return f;
}

Json ce_to_json(const CEOp& d) {
  Json out = Json::array();
  for (const auto& im : d.images) out.push_back(form_to_json(im));
  return out;
}

CEOp ce_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 6) throw std::invalid_argument("CE operator needs six images");
  std::array<KForm, 6> im;
  for (int i = 0; i < 6; ++i) im[i] = form_from_json(j[i]);
  return CEOp(im);
}

Json bform_to_json(const BForm& f) {
  Json out = Json::array();
  for (const auto& c : f.coeffs()) out.push_back(to_string(c));
  return out;
}

Json bform_to_json(const BFormD& f) { return f.coeffs(); }

Json model_to_json(const Model& m) { return {{"x", bform_to_json(m.x)}, {"y", bform_to_json(m.y)}}; }

Model model_from_json(const Json& j) {
  auto read = [](const Json& a, int degree) {
    if (!a.is_array() || static_cast<int>(a.size()) != degree + 1) throw std::invalid_argument("wrong coefficient count");
    BForm f(degree);
    for (int i = 0; i <= degree; ++i) f[i] = rational_from(a[i]);
    return f;
  };
  return {read(j.at("x"), 1), read(j.at("y"), 2)};
}

Json curvature_to_json(const CurvatureReport& r) {
  return {{"ricci", matrix_to_json(r.ricci)},
          {"scalar", r.scalar},
          {"ricci_traceless_norm", r.ricci_traceless_norm},
          {"weyl_norm", r.weyl_norm},
          {"bianchi_residual", r.bianchi_residual}};
}

Json g2_sample_to_json(const G2Sample& s) {
  return {{"t", s.t},
          {"s", s.s},
          {"phi_terms", form_to_json(s.phi)},
          {"starphi_terms", form_to_json(s.star_phi)},
          {"metric7", matrix_to_json(s.metric7)}};
}

}  // namespace hflat
