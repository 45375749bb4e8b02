#pragma once

#include <vector>

namespace fracbessel::specfun {

// True when x is within tol of an integer. Orders that pass this test are
// treated as ordinary integer-order derivatives everywhere in the library.
bool is_integer(double x, double tol = 1e-12);

// Natural log of Gamma(x) for x > 0. Lanczos approximation (g = 7, 9 terms),
// relative error below 1e-13 on [1e-6, 1e6].
double ln_gamma(double x);

// 1/Gamma(x) on the whole real line. Exactly 0.0 at x = 0, -1, -2, ...,
// smooth elsewhere (the reciprocal gamma is entire).
double reciprocal_gamma(double x);

// Digamma psi(x). Negative non-integer arguments via reflection.
// Throws PoleError at nonpositive integers.
double digamma(double x);

// Polygamma psi^(m)(x), 1 <= m <= 8. Throws PoleError at nonpositive
// integers and UnsupportedOrderError for m outside [1, 8].
double polygamma(int m, double x);

// sin(pi*x) / cos(pi*x) with exact argument reduction: sin_pi returns
// exactly 0.0 at integers. Exposed because callers building reflection
// identities in tests need the same reduction the library uses.
double sin_pi(double x);
double cos_pi(double x);

// r = Gamma(1+gamma)/Gamma(1+gamma-alpha), alpha >= 0.
// Exactly 0 when 1+gamma-alpha is a nonpositive integer; for integer alpha
// this is the falling-factorial polynomial gamma*(gamma-1)*...*(gamma-k+1),
// evaluated as such (valid for every gamma, including the zeros).
// Throws DomainError when 1+gamma is a nonpositive integer.
double gamma_ratio(double gamma, double alpha);

// The ratio r together with its first K derivatives in gamma.
struct GammaRatioDerivs {
  double value = 0.0;
  std::vector<double> derivs;  // derivs[k-1] = d^k r / d gamma^k, k = 1..K

  double deriv(int k) const { return derivs.at(static_cast<size_t>(k) - 1); }
  // Psi_k = r^(k)/r; only meaningful away from zeros of r.
  double psi_factor(int k) const { return deriv(k) / value; }
};

// Derivatives computed by the Leibniz recursion
//   r^(k) = sum_{j=0}^{k-1} C(k-1,j) r^(j) h^(k-1-j),
//   h^(m) = psi^(m)(1+gamma) - psi^(m)(1+gamma-alpha),
// which follows from r' = r*h. Integer alpha takes the exact polynomial
// path instead, so the zeros of r get correct (finite) derivatives there.
// K up to 9 for fractional alpha (polygamma order cap).
// Throws PoleError when 1+gamma-alpha is a nonpositive integer and K >= 1
// with fractional alpha: the value is 0 but the psi chain has a pole.
GammaRatioDerivs gamma_ratio_derivs(double gamma, double alpha, int K);

}  // namespace fracbessel::specfun
