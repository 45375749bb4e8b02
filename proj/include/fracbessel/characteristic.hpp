#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracbessel/equation.hpp"

namespace fracbessel {

enum class RootStatus {
  Valid,
  RejectedBelowThreshold,  // gamma <= n_max - 1: Caputo derivative diverges
  RejectedDummy            // gamma + beta*n hits another root: c_n blows up
};

struct CharacteristicRoot {
  double gamma = 0.0;
  int multiplicity = 1;
  RootStatus status = RootStatus::Valid;
  std::string reject_info;  // empty for Valid roots
};

const char* to_string(RootStatus s);

// G(gamma) = sum_i d_i Gamma(1+gamma)/Gamma(1+gamma-alpha_i).
// The characteristic equation is G(gamma) = nu2. Requires gamma > -1.
double G(const EquationSpec& spec, double gamma);

// d^order G / d gamma^order, order >= 1.
double G_derivative(const EquationSpec& spec, double gamma, int order);

// Magnitude of the terms entering G at gamma; the scale against which the
// residual tolerances below are applied.
double G_scale(const EquationSpec& spec, double gamma);

// Existence threshold: G evaluated at the Caputo-existence floor of the
// highest-order term, Gamma(p) sum_i d_i / Gamma(p - alpha_i) with
// p = ceil(alpha_max). Integer terms of order p drop out through the
// reciprocal-gamma zero. Throws DomainError for integer-only equations
// (the threshold degenerates to 0 and is bypassed).
double nu2_min(const EquationSpec& spec);

struct ScanOptions {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1e-3;
  // extend the window right by doubling while F < 0 at the edge (capped at
  // gamma = 500); used by the CLI default scan
  bool auto_extend = false;
  int max_roots = 64;
};

// Window the CLI uses when no explicit bounds are given:
// [max(-1+1e-6, n_max-1-2), n_max-1+60] with auto-extension, step 1e-3.
// Integer-only equations scan [-1+1e-6, 60].
ScanOptions default_scan_options(const EquationSpec& spec);

// Finds and classifies all roots of G(gamma) = nu2 on the window:
//  - every sign change of F = G - nu2 is refined by bisection;
//  - every sign change of F' is refined, and a critical point with
//    |F| <= 1e-6 is an even-multiplicity root (tangency); simple roots
//    within the tangency cluster are absorbed into it;
//  - multiplicity j is the smallest l with |F^(l)| above 1e-6*(1+|F^(l+1)|),
//    re-centering on the zero of each vanishing derivative;
//  - roots at or below gamma = n_max-1 (when a fractional term exists) are
//    RejectedBelowThreshold; roots gamma_j with gamma_j + beta*n equal to a
//    larger root (within 1e-6, positive integer n) are RejectedDummy.
// Result is sorted by ascending gamma.
std::vector<CharacteristicRoot> find_roots(const EquationSpec& spec,
                                           const ScanOptions& options);
std::vector<CharacteristicRoot> find_roots(const EquationSpec& spec,
                                           double scan_lo, double scan_hi,
                                           double step = 1e-3);

enum class UniquenessClass {
  IntegerOnly,         // no fractional term: classical theory applies
  FractionalMaxUnique, // d_i > 0, nu2 >= nu2_min, fractional alpha_max
  IntegerMaxUnique,    // integer alpha_max with n_max >= alpha_max - 1
  PossiblyMultiple,    // n_max < alpha_max - 1 (or outside the theory)
  NoSeriesSolution     // no Valid root on the scanned window
};

const char* to_string(UniquenessClass c);

struct Diagnosis {
  std::optional<double> nu2_min;  // empty for integer-only equations
  bool nu2_satisfied = false;
  UniquenessClass uniqueness_class = UniquenessClass::NoSeriesSolution;
  double ivp_bound = 0.0;  // b1^beta + sum_i q_i |d_i| b1^(n_i), b1 = max(1,b)
  bool ivp_unique = false; // nu2 > ivp_bound
};

// Existence/uniqueness diagnostics for roots produced by find_roots.
// b parameterizes the initial-value-problem domain [0, b].
Diagnosis classify(const EquationSpec& spec,
                   const std::vector<CharacteristicRoot>& roots,
                   double b = 1.0);

}  // namespace fracbessel
