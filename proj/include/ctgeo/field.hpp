#pragma once

// Jet-valued fields over a single coordinate chart.

#include <array>
#include <functional>
#include <string>
#include <string_view>

#include "ctgeo/expr.hpp"
#include "ctgeo/jet.hpp"
#include "ctgeo/tensor.hpp"

namespace ctgeo {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

using DomainBox = std::array<Interval, 3>;

struct Chart {
  CoordNames coords = kDefaultCoords;
  DomainBox box{{{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}};

  bool contains(const Point& p) const {
    for (int i = 0; i < 3; ++i)
      if (p[i] < box[i].lo || p[i] > box[i].hi) return false;
    return true;
  }
};

std::string format_point(const Point& p);

/// A smooth scalar function of the chart coordinates, evaluated as a jet.
class ScalarField {
 public:
  using Fn = std::function<Jet3(const std::array<double, 3>&, int)>;

  ScalarField() : ScalarField(constant(0.0)) {}
  ScalarField(Fn fn, std::string label)
      : fn_(std::move(fn)), label_(std::move(label)) {}

  static ScalarField constant(double c);
  static ScalarField from_expr(Expr e);
  static ScalarField parse(std::string_view source,
                           const CoordNames& coords = kDefaultCoords);

  /// Jet of the field at p. Domain errors gain the point as context.
  Jet3 operator()(const Point& p, int order) const;
  double value(const Point& p) const { return (*this)(p, 0).value(); }

  const std::string& label() const { return label_; }

 private:
  Fn fn_;
  std::string label_;
};

using VectorField = std::array<ScalarField, 3>;
using OneFormField = std::array<ScalarField, 3>;
/// (1,1)-tensor field; entry [i][j] is the component A^i_j.
using EndomorphismField = std::array<std::array<ScalarField, 3>, 3>;

Tensor<Jet3, 1, 0> evaluate(const VectorField& v, const Point& p, int order);
Tensor<Jet3, 0, 1> evaluate_form(const OneFormField& w, const Point& p,
                                 int order);
Tensor<Jet3, 1, 1> evaluate(const EndomorphismField& a, const Point& p,
                            int order);

VectorField parse_vector(const std::array<std::string, 3>& src,
                         const CoordNames& coords = kDefaultCoords);
VectorField constant_vector(const Point& v);

/// Riemannian metric with symmetric components g_ij on a chart.
class MetricField {
 public:
  /// Upper-triangle components in the order xx, xy, xt, yy, yt, tt.
  MetricField(Chart chart, const std::array<ScalarField, 6>& upper);

  const Chart& chart() const { return chart_; }
  const ScalarField& component(int i, int j) const;

  /// Jet-valued matrix at p. Throws DegeneracyError unless positive definite.
  Mat3<Jet3> evaluate(const Point& p, int order = 3) const;
  Eigen::Matrix3d value(const Point& p) const;

 private:
  Chart chart_;
  std::array<ScalarField, 6> upper_;
};

MetricField parse_metric(const Chart& chart,
                         const std::array<std::string, 6>& upper);

/// Index into the packed upper triangle of a symmetric 3x3 matrix.
constexpr int upper_index(int i, int j) { return detail::kSym2[i][j]; }

}  // namespace ctgeo
