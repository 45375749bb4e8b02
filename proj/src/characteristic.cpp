#include "fracbessel/characteristic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "fracbessel/errors.hpp"
#include "fracbessel/specfun.hpp"

namespace fracbessel {

namespace {

constexpr double kRootTol = 1e-10;      // on |F|, relative to G_scale
constexpr double kTangencyTol = 1e-6;   // |F| at a critical point of F
constexpr double kDerivTol = 1e-6;      // multiplicity promotion, scaled
constexpr double kSpacingTol = 1e-6;    // Remark-2.2 integer spacing test
constexpr int kBisectIters = 60;
constexpr int kMaxMultiplicity = 9;     // polygamma order cap is 8
constexpr double kAutoExtendCap = 500.0;

double F_of(const EquationSpec& spec, double gamma) {
  return G(spec, gamma) - spec.nu2;
}

// F and F' in one pass, sharing the ratio evaluation per term.
// F' is NaN at isolated points where a fractional term's digamma chain has
// a pole; the grid logic treats those cells as having no derivative data.
struct GridSample {
  double F;
  double Fp;
};

GridSample sample_F(const EquationSpec& spec, double gamma) {
  double f = -spec.nu2;
  double fp = 0.0;
  bool fp_ok = true;
  for (const Term& t : spec.terms) {
    if (t.integer_order()) {
      const auto d = specfun::gamma_ratio_derivs(gamma, t.alpha, 1);
      f += t.d * d.value;
      fp += t.d * d.deriv(1);
    } else {
      const double r = specfun::gamma_ratio(gamma, t.alpha);
      f += t.d * r;
      if (fp_ok) {
        try {
          const double h0 =
              specfun::digamma(1.0 + gamma) -
              specfun::digamma(1.0 + gamma - t.alpha);
          fp += t.d * r * h0;
        } catch (const PoleError&) {
          fp_ok = false;
        }
      }
    }
  }
  return {f, fp_ok ? fp : std::numeric_limits<double>::quiet_NaN()};
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double flo) {
  // flo = f(lo); bracket sign change assumed
  for (int i = 0; i < kBisectIters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at double resolution
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct RefinedRoot {
  double gamma;
  int multiplicity;
};

// Assigns multiplicity by testing successive derivatives, re-centering the
// candidate on the zero of each derivative that vanishes. Re-centering
// matters: rounding in the input coefficients shifts the F-root of a
// multiple root by far more than it shifts the critical point, and the
// derivative test is only clean at the critical point. A promotion is
// accepted only while F itself stays within the tangency tolerance at the
// re-centered point, so a simple root next to an ordinary extremum is left
// alone.
RefinedRoot classify_multiplicity(const EquationSpec& spec, double gamma0,
                                  double step) {
  const double f_budget =
      std::max(kTangencyTol * (1.0 + std::fabs(spec.nu2)),
               kRootTol * G_scale(spec, gamma0));
  double gamma = gamma0;
  int mult = 1;
  for (int level = 1; level <= kMaxMultiplicity; ++level) {
    auto dl = [&](double g) { return G_derivative(spec, g, level); };
    double centered = gamma;
    try {
      // re-center on a sign change of F^(level) near the candidate, if any
      const double a = gamma - 2.0 * step, b = gamma + 2.0 * step;
      const double fa = dl(a), fb = dl(b);
      if (std::isfinite(fa) && std::isfinite(fb) && fa * fb < 0.0) {
        const double g2 = bisect(dl, a, b, fa);
        if (std::fabs(F_of(spec, g2)) <= f_budget) centered = g2;
      }
      const double here = std::fabs(dl(centered));
      double next_mag = 0.0;
      if (level < kMaxMultiplicity)
        next_mag = std::fabs(G_derivative(spec, centered, level + 1));
      if (here > kDerivTol * (1.0 + next_mag)) break;
      if (std::fabs(F_of(spec, centered)) > f_budget) break;
    } catch (const PoleError&) {
      break;  // derivative chain unavailable here; keep what we have
    }
    mult = level + 1;
    gamma = centered;
    if (mult > kMaxMultiplicity)
      throw UnsupportedOrderError(
          "root multiplicity exceeds the supported maximum of 9 near "
          "gamma = " +
          std::to_string(gamma));
  }
  return {gamma, mult};
}

struct Candidate {
  double gamma;
  int multiplicity;
  bool from_tangency;
};

}  // namespace

const char* to_string(RootStatus s) {
  switch (s) {
    case RootStatus::Valid: return "valid";
    case RootStatus::RejectedBelowThreshold: return "below-threshold";
    case RootStatus::RejectedDummy: return "dummy";
  }
  return "?";
}

const char* to_string(UniquenessClass c) {
  switch (c) {
    case UniquenessClass::IntegerOnly: return "IntegerOnly";
    case UniquenessClass::FractionalMaxUnique: return "FractionalMaxUnique";
    case UniquenessClass::IntegerMaxUnique: return "IntegerMaxUnique";
    case UniquenessClass::PossiblyMultiple: return "PossiblyMultiple";
    case UniquenessClass::NoSeriesSolution: return "NoSeriesSolution";
  }
  return "?";
}

double G(const EquationSpec& spec, double gamma) {
  if (!(gamma > -1.0))
    throw DomainError("G requires gamma > -1, got " + std::to_string(gamma));
  double sum = 0.0;
  for (const Term& t : spec.terms)
    sum += t.d * specfun::gamma_ratio(gamma, t.alpha);
  return sum;
}

double G_derivative(const EquationSpec& spec, double gamma, int order) {
  if (order < 1) throw DomainError("G_derivative requires order >= 1");
  if (!(gamma > -1.0))
    throw DomainError("G_derivative requires gamma > -1");
  double sum = 0.0;
  for (const Term& t : spec.terms)
    sum += t.d * specfun::gamma_ratio_derivs(gamma, t.alpha, order).deriv(order);
  return sum;
}

double G_scale(const EquationSpec& spec, double gamma) {
  double scale = std::max(1.0, std::fabs(spec.nu2));
  for (const Term& t : spec.terms)
    scale = std::max(scale,
                     std::fabs(t.d * specfun::gamma_ratio(gamma, t.alpha)));
  return scale;
}

double nu2_min(const EquationSpec& spec) {
  if (!spec.has_fractional())
    throw DomainError(
        "nu2_min is not applicable to integer-only equations (the threshold "
        "degenerates to 0)");
  double sum = 0.0;
  for (const Term& t : spec.terms)
    sum += t.d * specfun::reciprocal_gamma(static_cast<double>(spec.p) -
                                           t.alpha);
  return std::exp(specfun::ln_gamma(static_cast<double>(spec.p))) * sum;
}

ScanOptions default_scan_options(const EquationSpec& spec) {
  ScanOptions opt;
  if (spec.has_fractional()) {
    const double floor = static_cast<double>(spec.n_max) - 1.0;
    opt.lo = std::max(-1.0 + 1e-6, floor - 2.0);
    opt.hi = floor + 60.0;
  } else {
    opt.lo = -1.0 + 1e-6;
    opt.hi = 60.0;
  }
  opt.auto_extend = true;
  return opt;
}

std::vector<CharacteristicRoot> find_roots(const EquationSpec& spec,
                                           double scan_lo, double scan_hi,
                                           double step) {
  ScanOptions opt;
  opt.lo = scan_lo;
  opt.hi = scan_hi;
  opt.step = step;
  return find_roots(spec, opt);
}

std::vector<CharacteristicRoot> find_roots(const EquationSpec& spec,
                                           const ScanOptions& options) {
  if (!(options.lo > -1.0))
    throw ScanError("scan window must start above gamma = -1");
  if (!(options.hi > options.lo)) throw ScanError("scan window is empty");
  if (!(options.step > 0.0)) throw ScanError("scan step must be positive");

  const double step = options.step;
  std::vector<Candidate> candidates;

  // raw bracket lists from the grid sweep
  std::vector<std::pair<double, double>> f_brackets;   // sign change of F
  std::vector<std::pair<double, double>> fp_brackets;  // sign change of F'

  double lo = options.lo;
  double hi = options.hi;
  GridSample right_edge{0.0, 0.0};
  GridSample prev{0.0, 0.0};
  double prev_x = lo;

  auto sweep = [&](double from, double to, bool include_from) {
    const auto n_cells =
        static_cast<long long>(std::ceil((to - from) / step - 1e-9));
    double x_prev = prev_x;
    GridSample s_prev = prev;
    if (include_from) {
      x_prev = from;
      s_prev = sample_F(spec, from);
    }
    for (long long k = 1; k <= n_cells; ++k) {
      const double x = (k == n_cells) ? to : from + static_cast<double>(k) * step;
      const GridSample s = sample_F(spec, x);
      if (s_prev.F == 0.0)
        f_brackets.emplace_back(x_prev, x_prev);
      else if (s.F != 0.0 && s_prev.F * s.F < 0.0)
        f_brackets.emplace_back(x_prev, x);
      if (std::isfinite(s_prev.Fp) && std::isfinite(s.Fp) &&
          s_prev.Fp * s.Fp < 0.0)
        fp_brackets.emplace_back(x_prev, x);
      x_prev = x;
      s_prev = s;
    }
    if (s_prev.F == 0.0) f_brackets.emplace_back(x_prev, x_prev);
    prev_x = x_prev;
    prev = s_prev;
    right_edge = s_prev;
  };

  sweep(lo, hi, true);
  if (options.auto_extend) {
    while (right_edge.F < 0.0 && hi < kAutoExtendCap) {
      const double new_hi = std::min(lo + 2.0 * (hi - lo), kAutoExtendCap);
      sweep(hi, new_hi, false);
      hi = new_hi;
      first_segment = false;
    }
  }
  (void)first_segment;

  if (static_cast<int>(f_brackets.size()) > options.max_roots)
    throw ScanError(
        "more than " + std::to_string(options.max_roots) +
        " sign changes found; reduce the scan step or narrow the window");

  // refine sign-change roots of F
  auto F = [&](double g) { return F_of(spec, g); };
  for (const auto& [a, b] : f_brackets) {
    double g = (a == b) ? a : bisect(F, a, b, F(a));
    const RefinedRoot rr = classify_multiplicity(spec, g, step);
    const double accept =
        (rr.multiplicity == 1) ? kRootTol * G_scale(spec, rr.gamma)
                               : kTangencyTol * (1.0 + std::fabs(spec.nu2));
    if (std::fabs(F(rr.gamma)) <= accept)
      candidates.push_back({rr.gamma, rr.multiplicity, false});
  }

  // refine critical points of F; a tangency (|F| small at F' = 0) is an
  // even-multiplicity root that produces no sign change in F
  auto Fp = [&](double g) { return G_derivative(spec, g, 1); };
  for (const auto& [a, b] : fp_brackets) {
    double fa;
    try {
      fa = Fp(a);
    } catch (const PoleError&) {
      continue;
    }
    const double gc = bisect(Fp, a, b, fa);
    if (std::fabs(F(gc)) > kTangencyTol * (1.0 + std::fabs(spec.nu2)))
      continue;
    const RefinedRoot rr = classify_multiplicity(spec, gc, step);
    if (rr.multiplicity < 2) continue;
    // absorb the near-tangent pair of simple roots this critical point may
    // have produced (the published nu2 of a double root is rarely exact)
    double fpp = 0.0;
    try {
      fpp = std::fabs(G_derivative(spec, rr.gamma, 2));
    } catch (const PoleError&) {
    }
    const double pair_halfwidth =
        2.0 * std::sqrt(2.0 * kTangencyTol * (1.0 + std::fabs(spec.nu2)) /
                        std::max(fpp, 1e-3));
    const double merge_w =
        std::min(std::max(2.0 * step, pair_halfwidth), 20.0 * step);
    std::erase_if(candidates, [&](const Candidate& c) {
      return c.multiplicity == 1 && std::fabs(c.gamma - rr.gamma) <= merge_w;
    });
    candidates.push_back({rr.gamma, rr.multiplicity, true});
  }

  // collapse duplicates (a multiple root is often reached from both the
  // F sweep and the F' sweep); keep the higher multiplicity
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return a.gamma < b.gamma;
            });
  std::vector<Candidate> unique;
  for (const Candidate& c : candidates) {
    if (!unique.empty() &&
        std::fabs(c.gamma - unique.back().gamma) <=
            1e-6 * (1.0 + std::fabs(c.gamma))) {
      if (c.multiplicity > unique.back().multiplicity) unique.back() = c;
    } else {
      unique.push_back(c);
    }
  }

  if (static_cast<int>(unique.size()) > options.max_roots)
    throw ScanError("more roots than the configured cap of " +
                    std::to_string(options.max_roots) +
                    "; reduce the scan step");

  // statuses: Caputo-existence threshold first, then dummy spacing
  std::vector<CharacteristicRoot> roots;
  roots.reserve(unique.size());
  for (const Candidate& c : unique) {
    CharacteristicRoot root;
    root.gamma = c.gamma;
    root.multiplicity = c.multiplicity;
    root.status = RootStatus::Valid;
    if (spec.has_fractional() &&
        c.gamma <= static_cast<double>(spec.n_max) - 1.0) {
      root.status = RootStatus::RejectedBelowThreshold;
      std::ostringstream os;
      os << "gamma <= n_max-1 = " << (spec.n_max - 1)
         << ": Caputo derivative of x^gamma diverges";
      root.reject_info = os.str();
    }
    roots.push_back(root);
  }
  for (size_t j = 0; j < roots.size(); ++j) {
    if (roots[j].status != RootStatus::Valid) continue;
    for (size_t i = j + 1; i < roots.size(); ++i) {
      const double gap = roots[i].gamma - roots[j].gamma;
      const double n_real = gap / spec.beta;
      const auto n = static_cast<long long>(std::llround(n_real));
      if (n >= 1 &&
          std::fabs(gap - spec.beta * static_cast<double>(n)) <= kSpacingTol) {
        roots[j].status = RootStatus::RejectedDummy;
        std::ostringstream os;
        os << "gamma + beta*" << n << " collides with the larger root "
           << roots[i].gamma << "; the recursion denominator vanishes";
        roots[j].reject_info = os.str();
        break;
      }
    }
  }
  return roots;
}

Diagnosis classify(const EquationSpec& spec,
                   const std::vector<CharacteristicRoot>& roots, double b) {
  Diagnosis d;

  const double b1 = std::max(1.0, b);
  double bound = std::pow(b1, spec.beta);
  for (const Term& t : spec.terms) {
    const int n = t.ceil_order();
    double q = 1.0;
    if (!t.integer_order()) {
      const double w = static_cast<double>(n) - t.alpha;
      q = specfun::reciprocal_gamma(w) / (w + 1.0);
    }
    bound += q * std::fabs(t.d) * std::pow(b1, n);
  }
  d.ivp_bound = bound;
  d.ivp_unique = spec.nu2 > bound;

  if (spec.has_fractional()) {
    d.nu2_min = nu2_min(spec);
    d.nu2_satisfied = spec.nu2 >= *d.nu2_min;
  } else {
    d.nu2_satisfied = true;  // classical case: threshold degenerates to 0
  }

  const bool any_valid =
      std::any_of(roots.begin(), roots.end(), [](const CharacteristicRoot& r) {
        return r.status == RootStatus::Valid;
      });

  if (!spec.has_fractional()) {
    d.uniqueness_class = UniquenessClass::IntegerOnly;
    return d;
  }
  if (!any_valid) {
    d.uniqueness_class = UniquenessClass::NoSeriesSolution;
    return d;
  }
  const bool alpha_max_integer = spec.terms.back().integer_order();
  if (spec.all_coeffs_positive() && d.nu2_satisfied) {
    if (!alpha_max_integer)
      d.uniqueness_class = UniquenessClass::FractionalMaxUnique;
    else if (spec.n_max >= static_cast<int>(std::lround(spec.alpha_max)) - 1)
      d.uniqueness_class = UniquenessClass::IntegerMaxUnique;
    else
      d.uniqueness_class = UniquenessClass::PossiblyMultiple;
  } else {
    // outside the positive-coefficient theory nothing is guaranteed
    d.uniqueness_class = UniquenessClass::PossiblyMultiple;
  }
  return d;
}

}  // namespace fracbessel
