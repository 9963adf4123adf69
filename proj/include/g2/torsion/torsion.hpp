#pragma once

#include <utility>

#include "g2/forms/calculus.hpp"

namespace g2 {

/// tau0 as a function and tau1 as its dr-coefficient.
struct Tau01 {
  Profile tau0;
  Profile tau1;
};

/// tau0 = (1/7) *(phi ^ d phi), tau1 = (1/12) *(phi ^ *d phi), evaluated in
/// the form algebra.
Tau01 tau01_first_principles(const G2Profile& g);

/// CY: tau0 = 12 theta'/(7G), tau1 = h'/h.
/// NK: tau0 = (12/7)(theta'/G + 2 sin 3theta / h), tau1 = (h' - G cos 3theta)/h.
Tau01 tau01_closed(const G2Profile& g);

struct Tau23 {
  InvariantForm tau2;  ///< *d psi - 4 *(tau1 ^ psi); identically zero for the ansatz
  InvariantForm tau3;  ///< *d phi - tau0 phi - 3 *(tau1 ^ phi)
};

Tau23 tau2_tau3(const G2Profile& g);

struct TorsionReport {
  Profile tau0;
  Profile tau1_coeff;
  double tau2_norm = 0.0;          ///< sup of |tau2| over the check points
  InvariantForm tau3;
  double coclosed_residual = 0.0;  ///< sup of |tau1| = |tau1_coeff| / G
};

TorsionReport torsion_report(const G2Profile& g);

/// Pointwise sup of |<tau3, phi>| and |<tau3, d/dr -| psi>|: tau3 must be
/// orthogonal to the invariant parts of the 1- and 7-dimensional summands
/// of the 3-forms.
struct Tau3Purity {
  double against_phi = 0.0;
  double against_seven = 0.0;
};

Tau3Purity tau3_purity(const G2Profile& g, const InvariantForm& tau3);

}  // namespace g2
