#include "ctgeo/riemann.hpp"

namespace ctgeo {

Geometry3 geometry_at(const MetricField& g, const Point& p) {
  return Geometry3::from_metric(g.evaluate(p, 3));
}

Tensor<Jet3, 1, 2> christoffel(const MetricField& g, const Point& p) {
  const auto m = g.evaluate(p, 3);
  return christoffel(m, inverse3(m));
}

Tensor<Jet3, 1, 3> riemann(const MetricField& g, const Point& p) {
  return riemann(christoffel(g, p));
}

Tensor<Jet3, 0, 2> ricci(const MetricField& g, const Point& p) {
  return ricci(riemann(g, p));
}

Jet3 scalar_curvature(const MetricField& g, const Point& p) {
  return geometry_at(g, p).scalar;
}

double sectional(const Geometry3& geo, const Point& u, const Point& v) {
  const Eigen::Matrix3d g = values(geo.g);
  const auto r = values(geo.riemann);
  const double uu = u.dot(g * u);
  const double vv = v.dot(g * v);
  const double uv = u.dot(g * v);
  const double denom = uu * vv - uv * uv;
  if (!(denom > 1e-12 * uu * vv)) {
    throw DegeneracyError("degenerate plane in sectional curvature", denom);
  }
  // g(R(u,v)v, u)
  double num = 0.0;
  for (int l = 0; l < 3; ++l) {
    double rl = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) rl += r(l, i, j, k) * u[i] * v[j] * v[k];
    for (int m = 0; m < 3; ++m) num += g(l, m) * rl * u[m];
  }
  return num / denom;
}

double sectional(const MetricField& g, const Point& p, const Point& u,
                 const Point& v) {
  return sectional(geometry_at(g, p), u, v);
}

}  // namespace ctgeo
