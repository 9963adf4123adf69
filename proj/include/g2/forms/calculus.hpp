#pragma once

#include "g2/forms/g2_profile.hpp"
#include "g2/forms/invariant_form.hpp"

namespace g2 {

/// Exterior product. Results past degree 7 are the zero 7-form with the
/// overflow flag set, or DegreeOverflow when `strict`.
InvariantForm wedge(const InvariantForm& a, const InvariantForm& b, bool strict = false);

/// Exterior derivative with the structure constants of `s`:
///   CY: all of omega, Omega, omega^2/2, vol6 closed;
///   NK: d omega = -3/2 (Omega + Omegabar), d Omega = 4i omega^2/2.
InvariantForm d(const InvariantForm& a, StructureKind s);

/// Hodge star of the metric G^2 dr^2 + h^2 g_6 with orientation dr ^ vol6.
InvariantForm star7(const InvariantForm& a, const G2Profile& g);

/// Contraction with s(r) d/dr.
InvariantForm interior_r(const InvariantForm& a, const Profile& s);

InvariantForm build_phi(const G2Profile& g);
InvariantForm build_psi(const G2Profile& g);

/// (-1)^k * d * on k-forms.
InvariantForm codifferential(const InvariantForm& a, const G2Profile& g);
/// d d* + d* d.
InvariantForm hodge_laplacian(const InvariantForm& a, const G2Profile& g);

/// sup over check points of |h'| (CY) or |h' - G cos 3 theta| (NK).
double coclosed_defect(const G2Profile& g);

inline constexpr double kConstraintTol = 1e-8;

/// -Laplacian(psi) computed as -d * d phi. Throws ConstraintViolated when the
/// coclosed constraint fails by more than `tol`.
InvariantForm hodge_laplacian_psi(const G2Profile& g, double tol = kConstraintTol);

/// The same quantity from the closed-form coefficients valid under the
/// constraint (A dr^Omega + conj(A) dr^Omegabar + B omega^2/2).
InvariantForm hodge_laplacian_psi_closed(const G2Profile& g);

/// d phi and d psi from their closed-form coefficient expressions in F.
InvariantForm dphi_closed(const G2Profile& g);
InvariantForm dpsi_closed(const G2Profile& g);

/// Re <a, b>, where <a, b> vol7 = a ^ *conj(b).
Profile pointwise_inner(const InvariantForm& a, const InvariantForm& b, const G2Profile& g);

/// Integral of <a, b> over the domain with vol(N) = 1.
double l2_inner(const InvariantForm& a, const InvariantForm& b, const G2Profile& g);

/// Integral of f G h^6 dr over the domain of g: sampled integrands use
/// mesh panel weights, closed forms open Gauss-Legendre.
double integrate_volume(const Profile& f, const G2Profile& g);

}  // namespace g2
