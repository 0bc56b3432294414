#pragma once

// Levi-Civita geometry of a coordinate metric at a point.
//
// Conventions:
//   R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z,  R(∂_i,∂_j)∂_k = R^l_ijk ∂_l
//   Ric_jk  = R^i_ijk
//   Δf      = −g^ij Hess_ij  (negative-trace sign; LaplacianSign::kAnalyst flips it)
//
// Every quantity is jet-valued; each derivative consumes one jet order, so a
// metric evaluated to order 3 yields Γ to order 2 and curvature to order 1.

#include <optional>

#include "ctgeo/field.hpp"
#include "ctgeo/tensor.hpp"

namespace ctgeo {

template <typename S>
Mat3<S> inverse3(const Mat3<S>& m) {
  Mat3<S> adj;
  adj(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  adj(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  adj(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  adj(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  adj(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  adj(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  adj(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  adj(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  adj(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const S det = m(0, 0) * adj(0, 0) + m(0, 1) * adj(1, 0) + m(0, 2) * adj(2, 0);
  if (value_of(det) == 0.0) throw DegeneracyError("singular matrix", 0.0);
  const S inv = S(1.0) / det;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) adj(i, j) = adj(i, j) * inv;
  return adj;
}

/// Γ^k_ij = ½ g^kl (∂_i g_jl + ∂_j g_il − ∂_l g_ij), stored gamma(k, i, j).
template <typename S>
Tensor<Jet<S>, 1, 2> christoffel(const Mat3<Jet<S>>& g,
                                 const Mat3<Jet<S>>& g_inv) {
  const auto dg = partial(as_tensor<0, 2>(g));  // dg(d, i, j) = ∂_d g_ij
  Tensor<Jet<S>, 0, 3> first;                    // Γ_lij
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        first(l, i, j) = first(l, j, i) =
            0.5 * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
  Tensor<Jet<S>, 1, 2> gamma;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        Jet<S> acc = g_inv(k, 0) * first(0, i, j);
        for (int l = 1; l < 3; ++l) acc += g_inv(k, l) * first(l, i, j);
        gamma(k, i, j) = gamma(k, j, i) = acc;
      }
  return gamma;
}

/// R^l_ijk = ∂_i Γ^l_jk − ∂_j Γ^l_ik + Γ^l_im Γ^m_jk − Γ^l_jm Γ^m_ik.
template <typename S>
Tensor<Jet<S>, 1, 3> riemann(const Tensor<Jet<S>, 1, 2>& gamma) {
  const auto dgamma = partial(gamma);  // dgamma(l, d, j, k) = ∂_d Γ^l_jk
  Tensor<Jet<S>, 1, 3> r;
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;  // antisymmetric pair; zero-initialised
        for (int k = 0; k < 3; ++k) {
          Jet<S> acc = dgamma(l, i, j, k) - dgamma(l, j, i, k);
          for (int m = 0; m < 3; ++m)
            acc += gamma(l, i, m) * gamma(m, j, k) -
                   gamma(l, j, m) * gamma(m, i, k);
          r(l, i, j, k) = acc;
        }
      }
  return r;
}

template <typename S>
Tensor<S, 0, 2> ricci(const Tensor<S, 1, 3>& r) {
  Tensor<S, 0, 2> ric;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      S acc = r(0, 0, j, k);
      for (int i = 1; i < 3; ++i) acc += r(i, i, j, k);
      ric(j, k) = acc;
    }
  return ric;
}

template <typename S>
S trace_with(const Mat3<S>& g_inv, const Tensor<S, 0, 2>& t) {
  S acc = g_inv(0, 0) * t(0, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i + j > 0) acc += g_inv(i, j) * t(i, j);
  return acc;
}

/// Lowers the first index: R_lijk = g_lm R^m_ijk.
template <typename S>
Tensor<S, 0, 4> lower_first(const Mat3<S>& g, const Tensor<S, 1, 3>& r) {
  Tensor<S, 0, 4> out;
  for (int n = 0; n < out.kSize; ++n) {
    auto idx = out.unflatten(n);
    const int l = idx[0];
    S acc(0.0);
    for (int m = 0; m < 3; ++m) {
      idx[0] = m;
      acc += g(l, m) * r[idx];
    }
    out.flat(n) = acc;
  }
  return out;
}

/// Curvature data of a metric at one point.
template <typename S>
struct Geometry {
  Mat3<Jet<S>> g;
  Mat3<Jet<S>> g_inv;
  Tensor<Jet<S>, 1, 2> gamma;
  Tensor<Jet<S>, 1, 3> riemann;
  Tensor<Jet<S>, 0, 2> ricci;
  Jet<S> scalar;

  static Geometry from_metric(const Mat3<Jet<S>>& metric) {
    Geometry geo;
    geo.g = metric;
    geo.g_inv = inverse3(metric);
    geo.gamma = christoffel(geo.g, geo.g_inv);
    geo.riemann = ctgeo::riemann(geo.gamma);
    geo.ricci = ctgeo::ricci(geo.riemann);
    geo.scalar = trace_with(geo.g_inv, geo.ricci);
    return geo;
  }

  Tensor<Jet<S>, 0, 2> metric_tensor() const { return as_tensor<0, 2>(g); }
};

using Geometry3 = Geometry<double>;

Geometry3 geometry_at(const MetricField& g, const Point& p);

Tensor<Jet3, 1, 2> christoffel(const MetricField& g, const Point& p);
Tensor<Jet3, 1, 3> riemann(const MetricField& g, const Point& p);
Tensor<Jet3, 0, 2> ricci(const MetricField& g, const Point& p);
Jet3 scalar_curvature(const MetricField& g, const Point& p);

/// Sectional curvature of the plane spanned by u and v.
double sectional(const Geometry3& geo, const Point& u, const Point& v);
double sectional(const MetricField& g, const Point& p, const Point& u,
                 const Point& v);

// ---------------------------------------------------------------------------
// Operators on scalar functions

enum class LaplacianSign { kGeometer, kAnalyst };

template <typename S>
Tensor<Jet<S>, 1, 0> grad(const Mat3<Jet<S>>& g_inv, const Jet<S>& f) {
  Tensor<Jet<S>, 1, 0> out;
  for (int i = 0; i < 3; ++i) {
    Jet<S> acc = g_inv(i, 0) * f.partial(0);
    for (int j = 1; j < 3; ++j) acc += g_inv(i, j) * f.partial(j);
    out(i) = acc;
  }
  return out;
}

/// Hess_ij = ∂_i∂_j f − Γ^k_ij ∂_k f; needs f to order ≥ 2.
template <typename S>
Tensor<Jet<S>, 0, 2> hess(const Tensor<Jet<S>, 1, 2>& gamma, const Jet<S>& f) {
  Tensor<Jet<S>, 0, 1> df;
  for (int i = 0; i < 3; ++i) df(i) = f.partial(i);
  return covariant_derivative(df, gamma);
}

template <typename S>
Jet<S> laplacian(const Mat3<Jet<S>>& g_inv, const Tensor<Jet<S>, 1, 2>& gamma,
                 const Jet<S>& f,
                 LaplacianSign sign = LaplacianSign::kGeometer) {
  const Jet<S> tr = trace_with(g_inv, hess(gamma, f));
  return sign == LaplacianSign::kGeometer ? -tr : tr;
}

// ---------------------------------------------------------------------------
// Lie derivatives of the connection and curvature

/// (L_V∇)^m_ij from g((L_V∇)(X,Y),Z) = ½(∇_X L_Vg)(Y,Z) + ½(∇_Y L_Vg)(Z,X)
///                                     − ½(∇_Z L_Vg)(X,Y).
template <typename S>
Tensor<Jet<S>, 1, 2> lie_connection(const Geometry<S>& geo,
                                    const Tensor<Jet<S>, 1, 0>& v) {
  const auto lg = lie_derivative(v, geo.metric_tensor());
  const auto dlg = covariant_derivative(lg, geo.gamma);  // dlg(d, a, b)
  Tensor<Jet<S>, 1, 2> out;
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        Jet<S> acc(0.0);
        for (int k = 0; k < 3; ++k)
          acc += geo.g_inv(m, k) *
                 (0.5 * (dlg(i, j, k) + dlg(j, k, i) - dlg(k, i, j)));
        out(m, i, j) = out(m, j, i) = acc;
      }
  return out;
}

/// (L_V R)(X,Y)Z = (∇_X L_V∇)(Y,Z) − (∇_Y L_V∇)(X,Z).
template <typename S>
Tensor<Jet<S>, 1, 3> lie_curvature(const Geometry<S>& geo,
                                   const Tensor<Jet<S>, 1, 0>& v) {
  const auto dc = covariant_derivative(lie_connection(geo, v), geo.gamma);
  Tensor<Jet<S>, 1, 3> out;
  for (int m = 0; m < 3; ++m)
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        for (int z = 0; z < 3; ++z)
          out(m, x, y, z) = dc(m, x, y, z) - dc(m, y, x, z);
  return out;
}

template <typename S>
Tensor<Jet<S>, 0, 2> lie_ricci(const Geometry<S>& geo,
                               const Tensor<Jet<S>, 1, 0>& v) {
  return ricci(lie_curvature(geo, v));
}

/// Metric inner product of two vectors given as coordinate components.
template <typename S, typename A, typename B>
S inner(const Mat3<S>& g, const A& u, const B& v) {
  S acc(0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += g(i, j) * u(i) * v(j);
  return acc;
}

}  // namespace ctgeo
