#pragma once

// Almost contact metric structures (φ, ξ, η, g) and the identities that hold
// on almost Kenmotsu manifolds.

#include <optional>
#include <vector>

#include "ctgeo/field.hpp"
#include "ctgeo/probes.hpp"
#include "ctgeo/report.hpp"
#include "ctgeo/riemann.hpp"

namespace ctgeo {

struct AlmostContactStructure {
  MetricField g;
  EndomorphismField phi;
  VectorField xi;
  OneFormField eta;
};

/// Jets of the structure and of the curvature at one point.
struct ContactJets {
  Point at;
  Geometry3 geo;
  Tensor<Jet3, 1, 1> phi;
  Tensor<Jet3, 1, 0> xi;
  Tensor<Jet3, 0, 1> eta;

  /// Orthonormal frame with ξ/|ξ| first; columns are the frame vectors.
  Mat3<Jet3> frame() const;
};

ContactJets contact_at(const AlmostContactStructure& acs, const Point& p);

// --- structure axioms --------------------------------------------------------

/// Residuals of the structure axioms at one point, in the order
/// phi_squared, eta_xi, phi_xi, eta_phi, phi_rank, compatibility.
std::array<double, 6> structure_residuals(const ContactJets& c);
std::vector<CheckReport> validate_structure(const AlmostContactStructure& acs,
                                            const ProbeGrid& grid);

// --- almost Kenmotsu ---------------------------------------------------------

/// Φ(X,Y) = g(X, φY).
Tensor<Jet3, 0, 2> fundamental_form(const ContactJets& c);
/// Max |dη| and max |dΦ − 2η∧Φ| at one point.
std::array<double, 2> almost_kenmotsu_residuals(const ContactJets& c);
std::vector<CheckReport> almost_kenmotsu_check(const AlmostContactStructure& acs,
                                               const ProbeGrid& grid);

struct BetaFit {
  double beta = 0.0;
  double residual = 0.0;
};

/// Least-squares β in (∇_Xφ)Y = β[g(φX,Y)ξ − η(Y)φX] over coordinate pairs.
BetaFit beta_kenmotsu_fit(const ContactJets& c);

struct BetaFitReport {
  std::vector<double> beta;
  std::vector<double> residual;
  CheckReport report;
};
BetaFitReport beta_kenmotsu_fit(const AlmostContactStructure& acs,
                                const ProbeGrid& grid);

/// The fitted β as a field: an order-2 jet from jet-valued ∇φ and model.
ScalarField fitted_beta_field(const AlmostContactStructure& acs);

// --- h, h', ℓ and the identity block -----------------------------------------

struct HTensors {
  Tensor<Jet3, 1, 1> h;        // ½ L_ξ φ
  Tensor<Jet3, 1, 1> h_prime;  // h ∘ φ
  Tensor<Jet3, 1, 1> ell;      // R(·, ξ)ξ
};

HTensors h_tensors(const ContactJets& c);

std::vector<CheckReport> identity_suite(const AlmostContactStructure& acs,
                                        const ProbeGrid& grid);

/// Checks specific to k = −1: h = 0, h' = 0, R(X,Y)ξ = η(X)Y − η(Y)X.
std::vector<CheckReport> kenmotsu_reduction_checks(
    const AlmostContactStructure& acs, const ProbeGrid& grid);

// --- η-Einstein and k-nullity -------------------------------------------------

struct EtaEinsteinDecomposition {
  double alpha = 0.0;
  double beta = 0.0;
  double residual = 0.0;
  double scalar = 0.0;
  /// |α − (1 + R/2)| and |β + (3 + R/2)|, the Kenmotsu-form reconstruction.
  double kenmotsu_alpha_residual = 0.0;
  double kenmotsu_beta_residual = 0.0;
};

EtaEinsteinDecomposition eta_einstein_decompose(const ContactJets& c);

struct NullityPoint {
  double k = 0.0;
  double nullity_residual = 0.0;
  double k_consistency = 0.0;
  double h_square_residual = 0.0;
  double h_prime_square_residual = 0.0;
  double ricci_xi_residual = 0.0;
  double nu = 0.0;
  double grad_k_residual = 0.0;
};

NullityPoint nullity_at(const ContactJets& c);

struct NullityDiagnostics {
  std::vector<NullityPoint> probes;
  std::vector<CheckReport> reports;
};

NullityDiagnostics nullity_diagnostics(const AlmostContactStructure& acs,
                                       const ProbeGrid& grid);

// --- D-homothetic deformation -------------------------------------------------

/// η̄ = aη, φ̄ = φ, ξ̄ = ξ/a, ḡ = ag + a(a−1)η⊗η for a constant a > 0.
AlmostContactStructure d_homothetic(const AlmostContactStructure& acs, double a);

/// g* = σg + (1−σ)η⊗η with φ, ξ, η unchanged. σ must be positive wherever the
/// result is evaluated; a non-positive value raises DomainError.
AlmostContactStructure d_homothetic(const AlmostContactStructure& acs,
                                    const ScalarField& sigma);

}  // namespace ctgeo
