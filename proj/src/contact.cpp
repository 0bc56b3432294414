#include "ctgeo/contact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "ctgeo/forms.hpp"
#include "ctgeo/frame.hpp"

namespace ctgeo {

namespace {

using Eigen::Matrix3d;
using Eigen::Vector3d;

double max_abs(const Matrix3d& m) { return m.cwiseAbs().maxCoeff(); }
double max_abs(const Vector3d& v) { return v.cwiseAbs().maxCoeff(); }

/// Everything a residual needs, as plain values in one place.
struct Values {
  Matrix3d g;
  Matrix3d frame;
  Matrix3d phi;
  Vector3d xi;
  Vector3d eta;

  explicit Values(const ContactJets& c)
      : g(values(c.geo.g)),
        frame(values(c.frame())),
        phi(values(as_matrix(c.phi))),
        xi(values(as_vector(c.xi))),
        eta(values(as_vector(c.eta))) {}

  double endo(const Matrix3d& a) const {
    return max_abs(frame_endomorphism(frame, g, a));
  }
  double form(const Matrix3d& t) const { return max_abs(frame_form(frame, t)); }
  double vec(const Vector3d& v) const { return max_abs(frame_vector(frame, g, v)); }

  /// Max frame component of a (1,2) tensor t(k, i, j).
  double tensor12(const Tensor<double, 1, 2>& t) const {
    const Matrix3d lower = frame.transpose() * g;
    double m = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          double acc = 0.0;
          for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
              for (int j = 0; j < 3; ++j)
                acc += lower(a, k) * t(k, i, j) * frame(i, b) * frame(j, c);
          m = std::max(m, std::abs(acc));
        }
    return m;
  }
};

/// R(X,Y)ξ as a (1,2) tensor: rxi(l, i, j) = R^l_ijk ξ^k.
Tensor<Jet3, 1, 2> curvature_on_xi(const ContactJets& c) {
  Tensor<Jet3, 1, 2> out;
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Jet3 acc(0.0);
        for (int k = 0; k < 3; ++k) acc += c.geo.riemann(l, i, j, k) * c.xi(k);
        out(l, i, j) = acc;
      }
  return out;
}

Tensor<Jet3, 1, 1> product(const Tensor<Jet3, 1, 1>& a,
                           const Tensor<Jet3, 1, 1>& b) {
  return as_tensor<1, 1>(Mat3<Jet3>(as_matrix(a) * as_matrix(b)));
}

std::string range_note(const char* label, const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s in [%.17g, %.17g]", label, *lo, *hi);
  return buf;
}

/// Evaluates `per_point` on every probe and folds named residual columns into
/// reports. Evaluation errors turn every column into a failed report.
template <std::size_t N, typename F>
std::vector<CheckReport> fold(const AlmostContactStructure& acs,
                              const ProbeGrid& grid,
                              const std::array<const char*, N>& names,
                              F&& per_point) {
  std::array<std::vector<double>, N> columns;
  try {
    for (const auto& p : grid.points) {
      const auto r = per_point(contact_at(acs, p));
      for (std::size_t n = 0; n < N; ++n) columns[n].push_back(r[n]);
    }
  } catch (const Error& e) {
    std::vector<CheckReport> failed;
    for (const char* name : names)
      failed.push_back(failed_report(name, grid.tolerance, grid.seed, e.what()));
    return failed;
  }
  std::vector<CheckReport> out;
  for (std::size_t n = 0; n < N; ++n)
    out.push_back(make_report(names[n], columns[n], grid.tolerance, grid.seed));
  return out;
}

}  // namespace

Mat3<Jet3> ContactJets::frame() const {
  return orthonormal_frame<Jet3>(geo.g, Vec3<Jet3>(as_vector(xi)));
}

ContactJets contact_at(const AlmostContactStructure& acs, const Point& p) {
  ContactJets c;
  c.at = p;
  c.geo = geometry_at(acs.g, p);
  c.phi = evaluate(acs.phi, p, 3);
  c.xi = evaluate(acs.xi, p, 3);
  c.eta = evaluate_form(acs.eta, p, 3);
  return c;
}

// ---------------------------------------------------------------------------

std::array<double, 6> structure_residuals(const ContactJets& c) {
  const Values v(c);
  const Matrix3d id = Matrix3d::Identity();
  std::array<double, 6> r{};
  r[0] = v.endo(v.phi * v.phi + id - v.xi * v.eta.transpose());
  r[1] = std::abs(v.eta.dot(v.xi) - 1.0);
  r[2] = v.vec(v.phi * v.xi);
  r[3] = max_abs(Vector3d((v.eta.transpose() * v.phi * v.frame).transpose()));
  const Eigen::JacobiSVD<Matrix3d> svd(frame_endomorphism(v.frame, v.g, v.phi));
  const Vector3d sv = svd.singularValues();
  r[4] = sv[1] > 1e-6 * std::max(sv[0], 1e-300) ? sv[2] : 1.0;
  const Matrix3d compat =
      v.phi.transpose() * v.g * v.phi - v.g + v.eta * v.eta.transpose();
  r[5] = max_abs(compat);
  return r;
}

std::vector<CheckReport> validate_structure(const AlmostContactStructure& acs,
                                            const ProbeGrid& grid) {
  return fold<6>(acs, grid,
                 {"structure.phi_squared", "structure.eta_xi",
                  "structure.phi_xi", "structure.eta_phi", "structure.phi_rank",
                  "structure.compatibility"},
                 structure_residuals);
}

Tensor<Jet3, 0, 2> fundamental_form(const ContactJets& c) {
  return as_tensor<0, 2>(Mat3<Jet3>(c.geo.g * as_matrix(c.phi)));
}

std::array<double, 2> almost_kenmotsu_residuals(const ContactJets& c) {
  const auto d_eta = values(exterior_derivative(c.eta));
  const auto phi_form = fundamental_form(c);
  const auto d_phi = values(exterior_derivative(phi_form));
  const auto eta_phi = values(wedge(c.eta, phi_form));
  return {max_abs(d_eta), max_abs(d_phi - 2.0 * eta_phi)};
}

std::vector<CheckReport> almost_kenmotsu_check(const AlmostContactStructure& acs,
                                               const ProbeGrid& grid) {
  return fold<2>(acs, grid, {"kenmotsu.d_eta", "kenmotsu.d_Phi"},
                 almost_kenmotsu_residuals);
}

BetaFit beta_kenmotsu_fit(const ContactJets& c) {
  const auto dphi = values(covariant_derivative(c.phi, c.geo.gamma));
  const Values v(c);
  const Matrix3d gphi = v.g * v.phi;  // gphi(j, i) = g(∂_j, φ∂_i)
  double mm = 0.0, dm = 0.0;
  Tensor<double, 1, 2> model;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double m = gphi(j, i) * v.xi[k] - v.eta[j] * v.phi(k, i);
        model(k, i, j) = m;
        mm += m * m;
        dm += dphi(k, i, j) * m;
      }
  if (!(mm > 1e-24)) {
    throw DegeneracyError("beta fit undefined: model norm vanishes", mm);
  }
  BetaFit fit;
  fit.beta = dm / mm;
  double rr = 0.0;
  for (int n = 0; n < model.kSize; ++n) {
    const double d = dphi.flat(n) - fit.beta * model.flat(n);
    rr += d * d;
  }
  fit.residual = std::sqrt(rr);
  return fit;
}

BetaFitReport beta_kenmotsu_fit(const AlmostContactStructure& acs,
                                const ProbeGrid& grid) {
  BetaFitReport out;
  try {
    for (const auto& p : grid.points) {
      const auto fit = beta_kenmotsu_fit(contact_at(acs, p));
      out.beta.push_back(fit.beta);
      out.residual.push_back(fit.residual);
    }
  } catch (const Error& e) {
    out.report = failed_report("beta_kenmotsu.residual", grid.tolerance,
                               grid.seed, e.what());
    return out;
  }
  out.report = make_report("beta_kenmotsu.residual", out.residual,
                           grid.tolerance, grid.seed,
                           range_note("beta_hat", out.beta));
  return out;
}

ScalarField fitted_beta_field(const AlmostContactStructure& acs) {
  return ScalarField(
      [acs](const std::array<double, 3>& at, int order) {
        const Point p(at[0], at[1], at[2]);
        const int inner = std::min(order + 1, 3);
        const Mat3<Jet3> g = acs.g.evaluate(p, inner);
        const auto gamma = christoffel(g, inverse3(g));
        const auto phi = evaluate(acs.phi, p, inner);
        const auto xi = evaluate(acs.xi, p, inner);
        const auto eta = evaluate_form(acs.eta, p, inner);
        const auto dphi = covariant_derivative(phi, gamma);
        const Mat3<Jet3> gphi = g * as_matrix(phi);
        Jet3 mm(0.0), dm(0.0);
        for (int k = 0; k < 3; ++k)
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
              const Jet3 m = gphi(j, i) * xi(k) - eta(j) * phi(k, i);
              mm += m * m;
              dm += dphi(k, i, j) * m;
            }
        if (!(mm.value() > 1e-24)) {
          throw DegeneracyError("beta fit undefined: model norm vanishes",
                                mm.value());
        }
        return (dm / mm).truncated(std::min(order, 2));
      },
      "beta_hat");
}

// ---------------------------------------------------------------------------

HTensors h_tensors(const ContactJets& c) {
  HTensors t;
  t.h = 0.5 * lie_derivative(c.xi, c.phi);
  t.h_prime = product(t.h, c.phi);
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i) {
      Jet3 acc(0.0);
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          acc += c.geo.riemann(l, i, j, k) * c.xi(j) * c.xi(k);
      t.ell(l, i) = acc;
    }
  return t;
}

std::vector<CheckReport> identity_suite(const AlmostContactStructure& acs,
                                        const ProbeGrid& grid) {
  return fold<13>(
      acs, grid,
      {"identity.nabla_xi", "identity.phi_ell_phi", "identity.trace_ell",
       "identity.ricci_xi_xi", "identity.curvature_xi", "identity.h_symmetric",
       "identity.ell_symmetric", "identity.h_xi", "identity.ell_xi",
       "identity.trace_h", "identity.trace_h_phi", "identity.h_phi_anticommute",
       "identity.h_prime_square"},
      [](const ContactJets& c) {
        const Values v(c);
        const HTensors ht = h_tensors(c);
        const Matrix3d h = values(as_matrix(ht.h));
        const Matrix3d hp = values(as_matrix(ht.h_prime));
        const Matrix3d ell = values(as_matrix(ht.ell));
        const Matrix3d phi2 = v.phi * v.phi;
        const Matrix3d ric = values(as_matrix(c.geo.ricci));
        std::array<double, 13> r{};

        // ∇_X ξ = −φ²X + h'X
        const Matrix3d dxi =
            values(as_matrix(covariant_derivative(c.xi, c.geo.gamma)));
        r[0] = v.endo(dxi + phi2 - hp);
        r[1] = v.endo(v.phi * ell * v.phi - ell - 2.0 * (h * h - phi2));
        r[2] = std::abs(ell.trace() + 2.0 + (h * h).trace());
        r[3] = std::abs(v.xi.dot(ric * v.xi) - ell.trace());

        // R(X,Y)ξ = η(X)(Y − φhY) − η(Y)(X − φhX) + (∇_Y φh)X − (∇_X φh)Y
        const auto rxi = values(curvature_on_xi(c));
        const auto dphih =
            values(covariant_derivative(product(c.phi, ht.h), c.geo.gamma));
        const Matrix3d phih = v.phi * h;
        const Matrix3d id = Matrix3d::Identity();
        Tensor<double, 1, 2> diff;
        for (int k = 0; k < 3; ++k)
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              diff(k, i, j) = rxi(k, i, j) -
                              (v.eta[i] * (id(k, j) - phih(k, j)) -
                               v.eta[j] * (id(k, i) - phih(k, i)) +
                               dphih(k, j, i) - dphih(k, i, j));
        r[4] = v.tensor12(diff);

        const Matrix3d gh = v.g * h;
        const Matrix3d gl = v.g * ell;
        r[5] = v.form(gh - gh.transpose());
        r[6] = v.form(gl - gl.transpose());
        r[7] = v.vec(h * v.xi);
        r[8] = v.vec(ell * v.xi);
        r[9] = std::abs(h.trace());
        r[10] = std::abs((h * v.phi).trace());
        r[11] = v.endo(h * v.phi + v.phi * h);
        // h² = h'² holds for every almost contact metric structure (hφ = −φh).
        r[12] = v.endo(h * h - hp * hp);
        return r;
      });
}

std::vector<CheckReport> kenmotsu_reduction_checks(
    const AlmostContactStructure& acs, const ProbeGrid& grid) {
  return fold<3>(acs, grid,
                 {"kenmotsu.h_zero", "kenmotsu.h_prime_zero",
                  "kenmotsu.curvature_xi"},
                 [](const ContactJets& c) {
                   const Values v(c);
                   const HTensors ht = h_tensors(c);
                   const auto rxi = values(curvature_on_xi(c));
                   Tensor<double, 1, 2> diff;
                   for (int k = 0; k < 3; ++k)
                     for (int i = 0; i < 3; ++i)
                       for (int j = 0; j < 3; ++j)
                         diff(k, i, j) =
                             rxi(k, i, j) - (v.eta[i] * (j == k ? 1.0 : 0.0) -
                                             v.eta[j] * (i == k ? 1.0 : 0.0));
                   return std::array<double, 3>{
                       v.endo(values(as_matrix(ht.h))),
                       v.endo(values(as_matrix(ht.h_prime))), v.tensor12(diff)};
                 });
}

// ---------------------------------------------------------------------------

EtaEinsteinDecomposition eta_einstein_decompose(const ContactJets& c) {
  const Values v(c);
  const Matrix3d ric = frame_form(v.frame, values(as_matrix(c.geo.ricci)));
  const Vector3d eta_f = (v.eta.transpose() * v.frame).transpose();
  EtaEinsteinDecomposition d;
  d.alpha = ric(1, 1);
  d.beta = ric(0, 0) - d.alpha;
  d.residual = max_abs(Matrix3d(ric - d.alpha * Matrix3d::Identity() -
                                d.beta * eta_f * eta_f.transpose()));
  d.scalar = value_of(c.geo.scalar);
  d.kenmotsu_alpha_residual = std::abs(d.alpha - (1.0 + d.scalar / 2.0));
  d.kenmotsu_beta_residual = std::abs(d.beta + (3.0 + d.scalar / 2.0));
  return d;
}

NullityPoint nullity_at(const ContactJets& c) {
  const Mat3<Jet3> e = c.frame();
  const Mat3<Jet3> lower = e.transpose() * c.geo.g;
  const auto rxi = curvature_on_xi(c);

  // Frame components of A(X,Y) = R(X,Y)ξ and B(X,Y) = η(Y)X − η(X)Y.
  Vec3<Jet3> eta_f;
  for (int b = 0; b < 3; ++b) {
    Jet3 acc(0.0);
    for (int i = 0; i < 3; ++i) acc += c.eta(i) * e(i, b);
    eta_f(b) = acc;
  }
  Tensor<Jet3, 1, 2> a_f, b_f;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int cc = 0; cc < 3; ++cc) {
        Jet3 acc(0.0);
        for (int l = 0; l < 3; ++l) {
          Jet3 inner(0.0);
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) inner += rxi(l, i, j) * e(i, b) * e(j, cc);
          acc += lower(a, l) * inner;
        }
        a_f(a, b, cc) = acc;
        b_f(a, b, cc) = eta_f(cc) * (a == b ? 1.0 : 0.0) -
                        eta_f(b) * (a == cc ? 1.0 : 0.0);
      }
  Jet3 ab(0.0), bb(0.0);
  for (int n = 0; n < a_f.kSize; ++n) {
    ab += a_f.flat(n) * b_f.flat(n);
    bb += b_f.flat(n) * b_f.flat(n);
  }
  if (!(bb.value() > 1e-24)) {
    throw DegeneracyError("nullity fit undefined: model norm vanishes",
                          bb.value());
  }
  const Jet3 k = ab / bb;

  NullityPoint out;
  out.k = k.value();
  for (int n = 0; n < a_f.kSize; ++n)
    out.nullity_residual =
        std::max(out.nullity_residual,
                 std::abs(a_f.flat(n).value() - out.k * b_f.flat(n).value()));

  const Values v(c);
  const auto decomposition = eta_einstein_decompose(c);
  out.k_consistency = out.k - 0.5 * (decomposition.alpha + decomposition.beta);

  const HTensors ht = h_tensors(c);
  const Matrix3d h = values(as_matrix(ht.h));
  const Matrix3d hp = values(as_matrix(ht.h_prime));
  const Matrix3d phi2 = v.phi * v.phi;
  out.h_square_residual = v.endo(h * h - (out.k + 1.0) * phi2);
  out.h_prime_square_residual = v.endo(hp * hp - (out.k + 1.0) * phi2);

  const Matrix3d ric_op = v.g.inverse() * values(as_matrix(c.geo.ricci));
  out.ricci_xi_residual = v.vec(ric_op * v.xi - 2.0 * out.k * v.xi);
  // √ would turn fit roundoff in k ≈ −1 into ν ~ 1e−8; below kNuFloor it is k = −1.
  constexpr double kNuFloor = 1e-12;
  out.nu = -1.0 - out.k > kNuFloor ? std::sqrt(-1.0 - out.k) : 0.0;

  const Vector3d grad_k = values(as_vector(grad(c.geo.g_inv, k)));
  out.grad_k_residual = v.vec(grad_k + 4.0 * (out.k + 1.0) * v.xi);
  return out;
}

NullityDiagnostics nullity_diagnostics(const AlmostContactStructure& acs,
                                       const ProbeGrid& grid) {
  static constexpr std::array<const char*, 7> kNames = {
      "nullity.fit",      "nullity.k_bound",         "nullity.k_alpha_beta",
      "nullity.h_square", "nullity.h_prime_square", "nullity.ricci_xi",
      "nullity.grad_k"};
  NullityDiagnostics out;
  try {
    for (const auto& p : grid.points) out.probes.push_back(nullity_at(contact_at(acs, p)));
  } catch (const Error& e) {
    for (const char* name : kNames)
      out.reports.push_back(failed_report(name, grid.tolerance, grid.seed, e.what()));
    return out;
  }
  std::array<std::vector<double>, 7> cols;
  std::vector<double> ks, nus;
  for (const auto& n : out.probes) {
    cols[0].push_back(n.nullity_residual);
    cols[1].push_back(std::max(0.0, n.k + 1.0));
    cols[2].push_back(n.k_consistency);
    cols[3].push_back(n.h_square_residual);
    cols[4].push_back(n.h_prime_square_residual);
    cols[5].push_back(n.ricci_xi_residual);
    cols[6].push_back(n.grad_k_residual);
    ks.push_back(n.k);
    nus.push_back(n.nu);
  }
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    std::string note;
    if (i == 0) note = range_note("k_hat", ks) + "; " + range_note("nu", nus);
    out.reports.push_back(
        make_report(kNames[i], cols[i], grid.tolerance, grid.seed, note));
  }
  return out;
}

// ---------------------------------------------------------------------------

AlmostContactStructure d_homothetic(const AlmostContactStructure& acs, double a) {
  if (!(a > 0.0)) throw DomainError("d_homothetic gauge", a);
  AlmostContactStructure out = acs;
  std::array<ScalarField, 6> upper;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const ScalarField gij = acs.g.component(i, j);
      const ScalarField ei = acs.eta[i], ej = acs.eta[j];
      upper[upper_index(i, j)] = ScalarField(
          [a, gij, ei, ej](const std::array<double, 3>& at, int order) {
            const Point p(at[0], at[1], at[2]);
            return a * gij(p, order) + a * (a - 1.0) * ei(p, order) * ej(p, order);
          },
          "D_a(" + gij.label() + ")");
    }
  out.g = MetricField(acs.g.chart(), upper);
  for (int i = 0; i < 3; ++i) {
    const ScalarField xi = acs.xi[i], eta = acs.eta[i];
    out.xi[i] = ScalarField(
        [a, xi](const std::array<double, 3>& at, int order) {
          return xi(Point(at[0], at[1], at[2]), order) / Jet3(a);
        },
        xi.label() + "/a");
    out.eta[i] = ScalarField(
        [a, eta](const std::array<double, 3>& at, int order) {
          return a * eta(Point(at[0], at[1], at[2]), order);
        },
        "a*" + eta.label());
  }
  return out;
}

AlmostContactStructure d_homothetic(const AlmostContactStructure& acs,
                                    const ScalarField& sigma) {
  AlmostContactStructure out = acs;
  std::array<ScalarField, 6> upper;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const ScalarField gij = acs.g.component(i, j);
      const ScalarField ei = acs.eta[i], ej = acs.eta[j];
      upper[upper_index(i, j)] = ScalarField(
          [sigma, gij, ei, ej](const std::array<double, 3>& at, int order) {
            const Point p(at[0], at[1], at[2]);
            const Jet3 s = sigma(p, order);
            if (!(s.value() > 0.0)) {
              throw DomainError("d_homothetic gauge", s.value(),
                                "at point " + format_point(p));
            }
            return s * gij(p, order) +
                   (1.0 - s) * ei(p, order) * ej(p, order);
          },
          "D_sigma(" + gij.label() + ")");
    }
  out.g = MetricField(acs.g.chart(), upper);
  return out;
}

}  // namespace ctgeo
