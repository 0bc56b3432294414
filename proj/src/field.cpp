#include "ctgeo/field.hpp"

#include <cstdio>

#include <Eigen/LU>

namespace ctgeo {

std::string format_point(const Point& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g, %.6g)", p[0], p[1], p[2]);
  return buf;
}

ScalarField ScalarField::constant(double c) {
  return ScalarField(
      [c](const std::array<double, 3>&, int order) {
        return Jet3::constant(c, order);
      },
      std::to_string(c));
}

ScalarField ScalarField::from_expr(Expr e) {
  std::string label = e.to_string();
  return ScalarField(
      [e = std::move(e)](const std::array<double, 3>& at, int order) {
        return eval_jet(e, at, order);
      },
      std::move(label));
}

ScalarField ScalarField::parse(std::string_view source,
                               const CoordNames& coords) {
  return from_expr(ctgeo::parse(source, coords));
}

Jet3 ScalarField::operator()(const Point& p, int order) const {
  try {
    return fn_({p[0], p[1], p[2]}, order);
  } catch (const DomainError& e) {
    throw e.with_context("at point " + format_point(p));
  }
}

Tensor<Jet3, 1, 0> evaluate(const VectorField& v, const Point& p, int order) {
  Tensor<Jet3, 1, 0> out;
  for (int i = 0; i < 3; ++i) out(i) = v[i](p, order);
  return out;
}

Tensor<Jet3, 0, 1> evaluate_form(const OneFormField& w, const Point& p,
                                 int order) {
  Tensor<Jet3, 0, 1> out;
  for (int i = 0; i < 3; ++i) out(i) = w[i](p, order);
  return out;
}

Tensor<Jet3, 1, 1> evaluate(const EndomorphismField& a, const Point& p,
                            int order) {
  Tensor<Jet3, 1, 1> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = a[i][j](p, order);
  return out;
}

VectorField parse_vector(const std::array<std::string, 3>& src,
                         const CoordNames& coords) {
  return {ScalarField::parse(src[0], coords), ScalarField::parse(src[1], coords),
          ScalarField::parse(src[2], coords)};
}

VectorField constant_vector(const Point& v) {
  return {ScalarField::constant(v[0]), ScalarField::constant(v[1]),
          ScalarField::constant(v[2])};
}

MetricField::MetricField(Chart chart, const std::array<ScalarField, 6>& upper)
    : chart_(std::move(chart)), upper_(upper) {}

const ScalarField& MetricField::component(int i, int j) const {
  return upper_[upper_index(i, j)];
}

Mat3<Jet3> MetricField::evaluate(const Point& p, int order) const {
  Mat3<Jet3> g;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) g(i, j) = g(j, i) = component(i, j)(p, order);
  const Eigen::Matrix3d v = values(g);
  const double m1 = v(0, 0);
  const double m2 = v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0);
  const double m3 = v.determinant();
  if (!(m1 > 0.0 && m2 > 0.0 && m3 > 0.0)) {
    throw DegeneracyError("metric not positive definite at " + format_point(p),
                          m3);
  }
  return g;
}

Eigen::Matrix3d MetricField::value(const Point& p) const {
  return values(evaluate(p, 0));
}

MetricField parse_metric(const Chart& chart,
                         const std::array<std::string, 6>& upper) {
  std::array<ScalarField, 6> f;
  for (int i = 0; i < 6; ++i) f[i] = ScalarField::parse(upper[i], chart.coords);
  return MetricField(chart, f);
}

}  // namespace ctgeo
