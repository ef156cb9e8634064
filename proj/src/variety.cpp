#include "hflat/variety.hpp"

#include <cmath>

namespace hflat {

std::string to_string(LieAlgebraClass c) {
  switch (c) {
    case LieAlgebraClass::SO3xSO3: return "SO3xSO3";
    case LieAlgebraClass::SO3C: return "SO3C";
    case LieAlgebraClass::SO3semidirectR3: return "SO3semidirectR3";
    case LieAlgebraClass::SO3directR3: return "SO3directR3";
    case LieAlgebraClass::Nilpotent: return "Nilpotent";
    case LieAlgebraClass::Abelian: return "Abelian";
  }
  return "unknown";
}

std::string algebra_name(LieAlgebraClass c) {
  switch (c) {
    case LieAlgebraClass::SO3xSO3: return "so(3)+so(3) = su(2)+su(2)";
    case LieAlgebraClass::SO3C: return "so(3,C) = sl(2,C)";
    case LieAlgebraClass::SO3semidirectR3: return "so(3) |x R^3";
    case LieAlgebraClass::SO3directR3: return "so(3) + R^3";
    case LieAlgebraClass::Nilpotent: return "nilpotent (0,0,0,12,13,23)";
    case LieAlgebraClass::Abelian: return "abelian R^6";
  }
  return "unknown";
}

namespace {

LieAlgebraClass from_signs(int delta_sign, bool r_zero) {
  if (delta_sign == 0 && r_zero) return LieAlgebraClass::Nilpotent;
  if (delta_sign == 0) return LieAlgebraClass::SO3semidirectR3;
  if (r_zero) return LieAlgebraClass::SO3directR3;
  return delta_sign > 0 ? LieAlgebraClass::SO3xSO3 : LieAlgebraClass::SO3C;
}

}  // namespace

LieAlgebraClass classify(const Model& m) {
  if (m.is_zero()) throw std::invalid_argument("zero model point");
  return from_signs(sgn(discriminant(m.y)), sgn(resultant(m.x, m.y)) == 0);
}

ClassifyReport classify(const ModelD& m, double tol) {
  if (m.is_zero()) throw std::invalid_argument("zero model point");
  const double sy = m.y.max_abs(), sx = m.x.max_abs();
  const double delta = discriminant(m.y), res = resultant(m.x, m.y);
  const bool dz = std::fabs(delta) <= tol * sy * sy;
  const bool rz = std::fabs(res) <= tol * sx * sx * sy;
  ClassifyReport out{from_signs(dz ? 0 : (delta > 0 ? 1 : -1), rz), delta, res, false};
  out.snapped = (dz && delta != 0.0) || (rz && res != 0.0);
  return out;
}

std::vector<std::pair<Model, LieAlgebraClass>> table_representatives() {
  const BForm u1{Rational(1), Rational(0)};
  auto quad = [](long a, long b, long c) { return BForm{Rational(a), Rational(b), Rational(c)}; };
  return {{{u1, quad(1, 0, -1)}, LieAlgebraClass::SO3xSO3},
          {{u1, quad(0, 0, 1)}, LieAlgebraClass::SO3semidirectR3},
          {{u1, quad(1, 0, 0)}, LieAlgebraClass::Nilpotent},
          {{u1, quad(0, 1, 0)}, LieAlgebraClass::SO3directR3},
          {{u1, quad(1, 0, 1)}, LieAlgebraClass::SO3C}};
}

}  // namespace hflat
