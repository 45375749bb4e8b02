#pragma once

#include <vector>

namespace fracbessel {

// One differential term d * x^alpha * D^alpha of the equation
//   sum_i d_i x^(alpha_i) D^(alpha_i) u(x) + (x^beta - nu2) u(x) = 0.
// Orders within 1e-12 of an integer are treated as ordinary derivatives.
struct Term {
  double d = 0.0;
  double alpha = 0.0;

  bool integer_order() const;
  // ceil(alpha), i.e. alpha for integer orders, the Caputo index otherwise
  int ceil_order() const;
};

// Validated equation with derived structural quantities. Immutable after
// validate(); freely shareable across threads.
struct EquationSpec {
  std::vector<Term> terms;  // ascending alpha, duplicate orders merged
  double beta = 0.0;
  double nu2 = 0.0;

  double alpha_max = 0.0;
  int p = 0;  // ceil(alpha_max)
  int fractional_count = 0;
  // ceilings over genuinely fractional orders; meaningful only when
  // fractional_count > 0 (integer-only mode otherwise)
  int n_max = 0;
  int n_min = 0;

  bool has_fractional() const { return fractional_count > 0; }
  bool all_coeffs_positive() const;
};

// Normalizes and checks a raw term list. Duplicate orders are merged by
// summing coefficients; the merge is order-independent. Throws
// ValidationError listing every violation (beta <= 0, empty terms,
// alpha <= 0, non-finite numbers).
EquationSpec validate(const std::vector<Term>& raw_terms, double beta,
                      double nu2);

}  // namespace fracbessel
