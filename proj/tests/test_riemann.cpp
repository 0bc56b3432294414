#include <doctest.h>

#include <Eigen/LU>

#include "ctgeo/atlas.hpp"
#include "ctgeo/forms.hpp"
#include "ctgeo/frame.hpp"
#include "ctgeo/probes.hpp"
#include "ctgeo/riemann.hpp"
#include "support/oracles.hpp"

using namespace ctgeo;

namespace {

const MetricField& metric_of(const char* name) { return builtin(name).structure.g; }

MetricField random_metric(oracle::FieldFactory& f) {
  const auto g = f.metric();
  return parse_metric(Chart{}, {g[0], g[1], g[2], g[3], g[4], g[5]});
}

MetricField half_plane_line() {
  Chart chart;
  chart.box = {{{-1, 1}, {0.5, 3}, {-1, 1}}};
  return parse_metric(chart, {"1/y^2", "0", "0", "1/y^2", "0", "1"});
}

std::vector<Point> probes(const MetricField& g, int n = 20) {
  return halton_grid(g.chart().box, n, 0, 1e-8).points;
}

}  // namespace

TEST_CASE("Christoffel symbols") {
  SUBCASE("flat") {
    const auto gamma = values(christoffel(metric_of("euclidean3"), Point(0.1, 0.2, 0.3)));
    CHECK(max_abs(gamma) == 0.0);
  }
  SUBCASE("half-plane times a line") {
    const MetricField g = half_plane_line();
    const Point p(0, 2, 0);
    const auto gamma = values(christoffel(g, p));
    CHECK(gamma(1, 0, 0) == doctest::Approx(0.5));
    CHECK(gamma(0, 0, 1) == doctest::Approx(-0.5));
    CHECK(gamma(0, 1, 0) == doctest::Approx(-0.5));
    CHECK(gamma(1, 1, 1) == doctest::Approx(-0.5));
    // Koszul formula with finite-difference metric derivatives.
    const Eigen::Matrix3d ginv = g.value(p).inverse();
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double ref = 0.0;
          for (int l = 0; l < 3; ++l) {
            auto comp = [&](int a, int b) {
              return oracle::Scalar3([&, a, b](const Point& q) { return g.value(q)(a, b); });
            };
            const double h = 1e-4;
            ref += 0.5 * ginv(k, l) *
                   (oracle::richardson(comp(j, l), p, {i}, h) +
                    oracle::richardson(comp(i, l), p, {j}, h) -
                    oracle::richardson(comp(i, j), p, {l}, h));
          }
          CHECK(std::abs(gamma(k, i, j) - ref) <= 1e-8);
        }
  }
  SUBCASE("cosh warp") {
    const auto gamma = values(christoffel(metric_of("paper_cosh_warp"), Point(0, 1, 0.3)));
    CHECK(gamma(2, 0, 0) == doctest::Approx(-std::cosh(0.3) * std::sinh(0.3)).epsilon(1e-13));
  }
  SUBCASE("symmetric in the lower pair") {
    oracle::FieldFactory f(41);
    const MetricField g = random_metric(f);
    const auto gamma = values(christoffel(g, f.point()));
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(gamma(k, i, j) == gamma(k, j, i));
  }
}

TEST_CASE("singular metrics are rejected") {
  const MetricField g = parse_metric(Chart{}, {"1", "0", "0", "1", "0", "x"});
  CHECK_THROWS_AS(g.evaluate(Point(0, 0, 0)), DegeneracyError);
  CHECK_THROWS_AS(geometry_at(g, Point(-0.5, 0, 0)), DegeneracyError);
  CHECK_NOTHROW(geometry_at(g, Point(0.5, 0, 0)));
}

TEST_CASE("Riemann tensor") {
  SUBCASE("flat") {
    CHECK(max_abs(values(riemann(metric_of("euclidean3"), Point(0.3, -0.2, 0.1)))) == 0.0);
  }
  SUBCASE("constant curvature -1 on the cosh warp") {
    const MetricField& g = metric_of("paper_cosh_warp");
    for (const Point& p : probes(g)) {
      const Geometry3 geo = geometry_at(g, p);
      const auto low = values(lower_first(geo.g, geo.riemann));
      const Eigen::Matrix3d m = values(geo.g);
      double worst = 0.0;
      for (int l = 0; l < 3; ++l)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
              // R(X,Y)Z = K(g(Y,Z)X − g(X,Z)Y) lowered, K = −1.
              const double ref = -(m(l, i) * m(j, k) - m(l, j) * m(i, k));
              worst = std::max(worst, std::abs(low(l, i, j, k) - ref));
            }
      CHECK(worst <= 1e-8);
    }
  }
  SUBCASE("symmetries and first Bianchi on random metrics") {
    oracle::FieldFactory f(97);
    for (int trial = 0; trial < 10; ++trial) {
      const MetricField g = random_metric(f);
      const Geometry3 geo = geometry_at(g, f.point());
      const auto r = values(geo.riemann);
      const auto low = values(lower_first(geo.g, geo.riemann));
      double anti = 0.0, pair = 0.0, bianchi = 0.0;
      for (int l = 0; l < 3; ++l)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
              anti = std::max(anti, std::abs(r(l, i, j, k) + r(l, j, i, k)));
              pair = std::max(pair, std::abs(low(l, i, j, k) - low(j, k, l, i)));
              bianchi = std::max(bianchi,
                                 std::abs(r(l, i, j, k) + r(l, j, k, i) + r(l, k, i, j)));
            }
      CHECK(anti <= 1e-9);
      CHECK(pair <= 1e-9);
      CHECK(bianchi <= 1e-9);
    }
  }
}

TEST_CASE("Ricci and scalar curvature") {
  SUBCASE("cosh warp is Einstein") {
    const MetricField& g = metric_of("paper_cosh_warp");
    for (const Point& p : probes(g)) {
      const Geometry3 geo = geometry_at(g, p);
      CHECK((as_matrix(values(geo.ricci)) + 2.0 * values(geo.g)).cwiseAbs().maxCoeff() <= 1e-8);
      CHECK(std::abs(geo.scalar.value() + 6.0) <= 1e-8);
    }
  }
  SUBCASE("exponential warp") {
    const MetricField& g = metric_of("paper_kenmotsu_exp");
    CHECK(scalar_curvature(g, Point(0, 1, 0)).value() == doctest::Approx(-8.0).epsilon(1e-12));
    CHECK(scalar_curvature(g, Point(0.3, 2, 1)).value() ==
          doctest::Approx(-6.0 - 2.0 * std::exp(-2.0)).epsilon(1e-12));
    // ∂_t R = 4e^{-2t}.
    CHECK(scalar_curvature(g, Point(0, 1.5, 0.5)).d1(2) ==
          doctest::Approx(4.0 * std::exp(-1.0)).epsilon(1e-10));
  }
  SUBCASE("flat") {
    const Geometry3 geo = geometry_at(metric_of("euclidean3"), Point(0.5, 0.5, 0.5));
    CHECK(max_abs(values(geo.ricci)) == 0.0);
    CHECK(geo.scalar.value() == 0.0);
  }
  SUBCASE("half-plane times a line") {
    // R of the half-plane times a line is −2 everywhere.
    const MetricField g = half_plane_line();
    CHECK(scalar_curvature(g, Point(0.2, 1.3, 0.4)).value() == doctest::Approx(-2.0));
  }
}

TEST_CASE("sectional curvature") {
  const Point ex(1, 0, 0), ey(0, 1, 0), et(0, 0, 1);
  CHECK(sectional(metric_of("paper_cosh_warp"), Point(0, 1, 0.5), ex, et) ==
        doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(sectional(metric_of("paper_kenmotsu_exp"), Point(0, 1, 0), ex, ey) ==
        doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(sectional(metric_of("paper_kenmotsu_exp"), Point(0, 1, 0.7), ex, ey) ==
        doctest::Approx(-1.0 - std::exp(-1.4)).epsilon(1e-10));
  CHECK(sectional(metric_of("euclidean3"), Point(0, 0, 0), ex, ey) == 0.0);
  CHECK_THROWS_AS(sectional(metric_of("euclidean3"), Point(0, 0, 0), ex, 2.0 * ex),
                  DegeneracyError);
}

TEST_CASE("gradient, Hessian and Laplacian") {
  const Geometry3 flat = geometry_at(metric_of("euclidean3"), Point(0.5, 0.2, -0.1));
  const Point p(0.5, 0.2, -0.1);
  SUBCASE("x squared") {
    const Jet3 f = eval_jet(parse("x^2"), {p[0], p[1], p[2]}, 3);
    const auto gr = values(grad(flat.g_inv, f));
    CHECK(gr(0) == doctest::Approx(1.0));
    CHECK(gr(1) == 0.0);
    CHECK(gr(2) == 0.0);
    const auto h = values(hess(flat.gamma, f));
    CHECK(h(0, 0) == doctest::Approx(2.0));
    CHECK(std::abs(h(1, 1)) + std::abs(h(2, 2)) + std::abs(h(0, 1)) == 0.0);
    CHECK(laplacian(flat.g_inv, flat.gamma, f).value() == doctest::Approx(-2.0));
  }
  SUBCASE("sign convention") {
    const Jet3 f = eval_jet(parse("x^2 + y^2"), {p[0], p[1], p[2]}, 3);
    CHECK(laplacian(flat.g_inv, flat.gamma, f).value() == -4.0);
    CHECK(laplacian(flat.g_inv, flat.gamma, f, LaplacianSign::kAnalyst).value() == 4.0);
  }
  SUBCASE("constants") {
    const Geometry3 geo = geometry_at(metric_of("paper_cosh_warp"), Point(0.1, 1.2, 0.3));
    const Jet3 c = Jet3::constant(3.0, 3);
    CHECK(max_abs(values(grad(geo.g_inv, c))) == 0.0);
    CHECK(max_abs(values(hess(geo.gamma, c))) == 0.0);
    CHECK(laplacian(geo.g_inv, geo.gamma, c).value() == 0.0);
  }
}

TEST_CASE("covariant derivative") {
  SUBCASE("metric compatibility on every builtin") {
    for (const auto& name : builtin_names()) {
      const MetricField& g = builtin(name).structure.g;
      double worst = 0.0;
      for (const Point& p : probes(g, 50)) {
        const Geometry3 geo = geometry_at(g, p);
        worst = std::max(worst, max_abs(values(covariant_derivative(geo.metric_tensor(), geo.gamma))));
      }
      CAPTURE(name);
      CHECK(worst <= 1e-9);
    }
  }
  SUBCASE("eta tensor eta along xi") {
    const auto& m = builtin("paper_kenmotsu_exp");
    const ContactJets c = contact_at(m.structure, Point(0.2, 1.4, 0.3));
    Tensor<Jet3, 0, 2> ee;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) ee(a, b) = c.eta(a) * c.eta(b);
    const auto d = values(covariant_derivative(ee, c.geo.gamma));
    const auto xi = values(c.xi);
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) acc += d(i, a, b) * xi(i) * xi(a) * xi(b);
    CHECK(std::abs(acc) <= 1e-12);
  }
  SUBCASE("nabla_xi of h' vanishes on the cosh warp") {
    const auto& m = builtin("paper_cosh_warp");
    const ContactJets c = contact_at(m.structure, Point(0.1, 1.1, 0.4));
    const HTensors h = h_tensors(c);
    const auto d = values(covariant_derivative(h.h_prime, c.geo.gamma));
    const auto xi = values(c.xi);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) acc += d(i, k, j) * xi(k);
        CHECK(std::abs(acc + 2.0 * h.h_prime(i, j).value()) <= 1e-10);
      }
  }
}

TEST_CASE("Lie derivatives of tensors") {
  SUBCASE("L_xi g on the exponential warp") {
    const auto& m = builtin("paper_kenmotsu_exp");
    const ContactJets c = contact_at(m.structure, Point(0, 1, 0));
    const auto lg = values(lie_derivative(c.xi, c.geo.metric_tensor()));
    CHECK(lg(0, 0) == doctest::Approx(2.0));
    CHECK(lg(1, 1) == doctest::Approx(2.0));
    CHECK(std::abs(lg(2, 2)) + std::abs(lg(0, 2)) + std::abs(lg(1, 2)) == 0.0);
    const auto g = values(c.geo.g);
    const auto eta = values(c.eta);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(lg(i, j) == doctest::Approx(2.0 * (g(i, j) - eta(i) * eta(j))));
  }
  SUBCASE("Killing field on x-independent metrics") {
    for (const char* name : {"paper_cosh_warp", "paper_kenmotsu_exp"}) {
      const MetricField& g = metric_of(name);
      const Point p(0.3, 1.7, -0.2);
      const auto v = evaluate(constant_vector(Point(1, 0, 0)), p, 3);
      const Geometry3 geo = geometry_at(g, p);
      CHECK(max_abs(values(lie_derivative(v, geo.metric_tensor()))) == 0.0);
      CHECK(max_abs(values(lie_connection(geo, v))) <= 1e-14);
      CHECK(max_abs(values(lie_curvature(geo, v))) <= 1e-13);
      CHECK(max_abs(values(lie_ricci(geo, v))) <= 1e-13);
    }
  }
  SUBCASE("L_xi phi vanishes on both warped builtins") {
    for (const char* name : {"paper_cosh_warp", "paper_kenmotsu_exp"}) {
      const ContactJets c = contact_at(builtin(name).structure, Point(0.3, 1.7, -0.2));
      CHECK(max_abs(values(lie_derivative(c.xi, c.phi))) <= 1e-14);
    }
  }
}

TEST_CASE("Lie derivative of the connection against the bracket definition") {
  oracle::FieldFactory f(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const MetricField g = random_metric(f);
    const VectorField v = parse_vector(f.vector());
    const Point p = f.point();
    const Geometry3 geo = geometry_at(g, p);
    const auto vj = evaluate(v, p, 3);
    const auto ours = values(lie_connection(geo, vj));
    const auto ref = oracle::lie_connection_bracket(geo.gamma, vj);
    worst = std::max(worst, max_abs(ours - ref));
  }
  CHECK(worst <= 1e-7);

  // ξ on the exponential warp with X = Y = ∂x.
  const auto& m = builtin("paper_kenmotsu_exp");
  const ContactJets c = contact_at(m.structure, Point(0, 1, 0));
  const auto ours = values(lie_connection(c.geo, c.xi));
  const auto ref = oracle::lie_connection_bracket(c.geo.gamma, c.xi);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(ours(k, 0, 0) - ref(k, 0, 0)) <= 1e-12);
}

TEST_CASE("Lie derivative of curvature against the direct formula") {
  oracle::FieldFactory f(77);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const MetricField g = random_metric(f);
    const VectorField v = parse_vector(f.vector());
    const Point p = f.point();
    const Geometry3 geo = geometry_at(g, p);
    const auto vj = evaluate(v, p, 3);
    const auto ours = values(lie_curvature(geo, vj));
    const auto ref = oracle::lie_of_riemann(geo.riemann, vj);
    worst = std::max(worst, max_abs(ours - ref));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("contraction commutes with the Lie derivative") {
  const MetricField& g = metric_of("paper_kenmotsu_exp");
  const VectorField v = parse_vector({"0", "0", "t^2"});
  for (const Point& p : probes(g)) {
    const Geometry3 geo = geometry_at(g, p);
    const auto vj = evaluate(v, p, 3);
    const auto traced = values(lie_ricci(geo, vj));
    const auto direct = values(lie_derivative(vj, geo.ricci));
    CHECK(max_abs(traced - direct) <= 1e-6);
  }
}

TEST_CASE("contracted second Bianchi identity") {
  for (const auto& name : builtin_names()) {
    const MetricField& g = builtin(name).structure.g;
    for (const Point& p : probes(g)) {
      const Geometry3 geo = geometry_at(g, p);
      const auto dric = values(covariant_derivative(geo.ricci, geo.gamma));
      const auto ginv = values(geo.g_inv);
      for (int k = 0; k < 3; ++k) {
        double lhs = 0.0;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) lhs += ginv(i, j) * dric(i, j, k);
        CHECK(std::abs(lhs - 0.5 * geo.scalar.d1(k)) <= 1e-6);
      }
    }
  }
}

TEST_CASE("exterior calculus") {
  SUBCASE("d of dt") {
    const auto& m = builtin("paper_kenmotsu_exp");
    const ContactJets c = contact_at(m.structure, Point(0.3, 1.2, 0.1));
    CHECK(max_abs(values(exterior_derivative(c.eta))) == 0.0);
  }
  SUBCASE("d squared is zero") {
    oracle::FieldFactory f(13);
    for (int trial = 0; trial < 20; ++trial) {
      const Point p = f.point();
      const ScalarField s = ScalarField::parse(f.wave(2.0) + " + " + f.polynomial(1.0) +
                                               " + exp(" + f.wave(0.5) + ")");
      const auto ddf = values(exterior_derivative(exterior_derivative(s(p, 3))));
      CHECK(max_abs(ddf) <= 1e-9);
      // And d∘d on a random 1-form.
      Tensor<Jet3, 0, 1> w;
      for (int i = 0; i < 3; ++i) w(i) = ScalarField::parse(f.wave(1.0))(p, 3);
      CHECK(max_abs(values(exterior_derivative(exterior_derivative(w)))) <= 1e-9);
    }
  }
  SUBCASE("d Phi = 2 eta wedge Phi on the exponential warp") {
    const auto& m = builtin("paper_kenmotsu_exp");
    for (const Point& p : probes(m.structure.g)) {
      const ContactJets c = contact_at(m.structure, p);
      const auto dphi = values(exterior_derivative(fundamental_form(c)));
      const auto rhs = values(wedge(c.eta, fundamental_form(c)));
      const double ref = -2.0 * std::exp(2 * p[2]) / (p[1] * p[1]);
      CHECK(dphi(2, 0, 1) == doctest::Approx(ref).epsilon(1e-12));
      CHECK(2.0 * rhs(2, 0, 1) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("orthonormal frames") {
  SUBCASE("flat coordinate frame") {
    const Eigen::Matrix3d e = orthonormal_frame<double>(Eigen::Matrix3d::Identity());
    CHECK((e - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("xi first on the cosh warp") {
    const Eigen::Matrix3d g = metric_of("paper_cosh_warp").value(Point(0, 1, 0));
    const Eigen::Matrix3d e = orthonormal_frame<double>(g, Eigen::Vector3d(0, 0, 1));
    CHECK((e.col(0) - Eigen::Vector3d(0, 0, 1)).norm() <= 1e-15);
    CHECK((e.col(1) - Eigen::Vector3d(1, 0, 0)).norm() <= 1e-15);
    CHECK((e.col(2) - Eigen::Vector3d(0, 1, 0)).norm() <= 1e-15);
  }
  SUBCASE("orthonormal on random metrics, and trace invariance") {
    oracle::FieldFactory f(5);
    for (int trial = 0; trial < 10; ++trial) {
      const MetricField g = random_metric(f);
      const Geometry3 geo = geometry_at(g, f.point());
      const Eigen::Matrix3d gm = values(geo.g);
      const Eigen::Matrix3d e = orthonormal_frame<double>(gm, Eigen::Vector3d(0.3, -1, 0.2));
      CHECK((e.transpose() * gm * e - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
      const Eigen::Matrix3d ric = as_matrix(values(geo.ricci));
      CHECK(std::abs(frame_form(e, ric).trace() - geo.scalar.value()) <= 1e-10);
    }
  }
  SUBCASE("trace invariance on builtins") {
    for (const auto& name : builtin_names()) {
      const MetricField& g = builtin(name).structure.g;
      for (const Point& p : probes(g)) {
        const Geometry3 geo = geometry_at(g, p);
        const Eigen::Matrix3d e = orthonormal_frame<double>(values(geo.g));
        CHECK(std::abs(frame_form(e, as_matrix(values(geo.ricci))).trace() -
                       geo.scalar.value()) <= 1e-10);
      }
    }
  }
  SUBCASE("degenerate preferred vector") {
    CHECK_THROWS_AS(orthonormal_frame<double>(Eigen::Matrix3d::Identity(), Eigen::Vector3d::Zero()),
                    DegeneracyError);
  }
}
