#include "fracbessel/equation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracbessel/errors.hpp"
#include "fracbessel/specfun.hpp"

namespace fracbessel {

bool Term::integer_order() const { return specfun::is_integer(alpha); }

int Term::ceil_order() const {
  if (integer_order()) return static_cast<int>(std::lround(alpha));
  return static_cast<int>(std::ceil(alpha));
}

bool EquationSpec::all_coeffs_positive() const {
  return std::all_of(terms.begin(), terms.end(),
                     [](const Term& t) { return t.d > 0.0; });
}

EquationSpec validate(const std::vector<Term>& raw_terms, double beta,
                      double nu2) {
  std::ostringstream problems;
  int count = 0;
  auto complain = [&](const std::string& msg) {
    if (count++) problems << "; ";
    problems << msg;
  };

  if (raw_terms.empty()) complain("terms must be nonempty");
  if (!std::isfinite(beta))
    complain("beta must be finite");
  else if (beta <= 0.0)
    complain("beta must be > 0");
  if (!std::isfinite(nu2)) complain("nu2 must be finite");
  for (size_t i = 0; i < raw_terms.size(); ++i) {
    const Term& t = raw_terms[i];
    if (!std::isfinite(t.d))
      complain("terms[" + std::to_string(i) + "].d must be finite");
    if (!std::isfinite(t.alpha))
      complain("terms[" + std::to_string(i) + "].alpha must be finite");
    else if (t.alpha <= 0.0)
      complain("terms[" + std::to_string(i) + "].alpha must be > 0");
  }
  if (count) throw ValidationError(problems.str());

  EquationSpec spec;
  spec.beta = beta;
  spec.nu2 = nu2;
  spec.terms = raw_terms;
  std::sort(spec.terms.begin(), spec.terms.end(),
            [](const Term& a, const Term& b) { return a.alpha < b.alpha; });
  // merge duplicate orders (within the integer-detection tolerance)
  std::vector<Term> merged;
  for (const Term& t : spec.terms) {
    if (!merged.empty() && std::fabs(merged.back().alpha - t.alpha) < 1e-12)
      merged.back().d += t.d;
    else
      merged.push_back(t);
  }
  spec.terms = std::move(merged);

  spec.alpha_max = spec.terms.back().alpha;
  spec.p = spec.terms.back().ceil_order();
  for (const Term& t : spec.terms) {
    if (t.integer_order()) continue;
    const int n = t.ceil_order();
    if (spec.fractional_count == 0) {
      spec.n_max = spec.n_min = n;
    } else {
      spec.n_max = std::max(spec.n_max, n);
      spec.n_min = std::min(spec.n_min, n);
    }
    ++spec.fractional_count;
  }
  return spec;
}

}  // namespace fracbessel
