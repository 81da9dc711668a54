#pragma once
#include <boost/rational.hpp>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "beam/norms.hpp"
#include "beam/propagator.hpp"

namespace beam {

using Rational = boost::rational<long long>;

// Lebesgue/Strichartz index in [1, inf], kept exact: either a positive rational
// or the infinity point. Reciprocals make the scaling-line algebra uniform
// (1/inf = 0), so admissibility reduces to rational equality tests.
class Exponent {
 public:
  Exponent() = default;                          // 2, the smallest admissible index
  Exponent(long long num, long long den = 1);    // ConfigError unless > 0
  explicit Exponent(const Rational& r);
  static Exponent infinite();
  static Exponent parse(std::string_view text);  // "4", "8/3", "2.5", "inf"

  bool finite() const { return finite_; }
  Rational value() const;       // ConfigError when infinite
  Rational reciprocal() const;  // 0 when infinite
  double as_double() const;     // +inf when infinite
  std::string str() const;

  friend bool operator==(const Exponent& a, const Exponent& b) = default;

 private:
  bool finite_ = true;
  Rational r_{2};
};

// "3", "-1/2", "0.25" -> exact rational; any sign, unlike Exponent::parse.
Rational parse_rational(std::string_view text);

// (p, q) on the Schrodinger line 2/p + n/q = n/2.
struct ExponentPair {
  Exponent p;
  Exponent q;
};

// (p, r) with s derivatives of gain: 2/p + n/r = n/2 - s, s >= 0.
struct ExponentTriple {
  Exponent p;
  Exponent r;
  Rational s{0};
};

// true iff 2 <= p,q <= inf, 2/p + n/q = n/2, n >= 1, and (p,q,n) != (2,inf,2).
bool is_schrodinger_admissible(const Exponent& p, const Exponent& q, int n);

// true iff s >= 0, 2 <= p,r <= inf, 2/p + n/r = n/2 - s, n >= 2, and (p,r,n) != (2,inf,2).
// At s = 0 this coincides with the Schrodinger predicate for n >= 2.
bool is_beam_admissible(const Exponent& p, const Exponent& r, const Rational& s, int n);

// s_c = n/2 - 4/(kappa-1), the index left invariant by the scaling symmetry.
// ConfigError for kappa <= 1.
double critical_exponent(int n, double kappa);
Rational critical_exponent_exact(int n, const Rational& kappa);

// b~ = n b' / (n + (2 - s) b'), the shifted index produced by Sobolev embedding
// on the dual side. Pure arithmetic; ConfigError when the denominator vanishes.
Rational sobolev_shift_exponent(int n, const Rational& b_prime, const Rational& s);

// The scaling symmetry f -> lambda^{-4/(kappa-1)} f(x/lambda),
// g -> lambda^{-4/(kappa-1)-2} g(x/lambda), realized by rescaling the box
// (L -> lambda L) while keeping the mode indices fixed, so no interpolation
// error enters: xi_k -> xi_k / lambda exactly. Any lambda > 0 is representable.
BeamState scale_state(const BeamState& state, double lambda, double kappa);

// One ensemble member's contribution to the Strichartz quotient scan.
struct QuotientSample {
  std::size_t index = 0;     // position in the ensemble
  double data_norm = 0.0;    // ||f||_{H^s.} + ||g||_{H^{s-2}.}, homogeneous norms at rhs_s
  double mixed_norm = 0.0;   // ||u||_{L^p_t L^r_x} over [0, window]
  double quotient = 0.0;
  double window = 0.0;       // per-sample validity horizon actually used
};

struct QuotientReport {
  double max_quotient = 0.0;
  std::vector<QuotientSample> table;
};

// Free-flow lower-bound probe of the Strichartz constant: each state evolves
// with F = 0 over window_fraction of its validity window, sampled at
// time_samples instants, and the mixed norm is divided by the data norm.
// The triple must be beam-admissible for the states' dimension (ConfigError),
// which restricts the probe to n >= 2. Zero-data members are excluded
// (no 0/0); an ensemble with no usable member is a ConfigError. Negative-order
// data norms (rhs_s < 2) require mean-free samples, enforced by the norm layer.
QuotientReport strichartz_quotient(const std::vector<BeamState>& ensemble,
                                   const ExponentTriple& triple, double rhs_s,
                                   int time_samples = 65, double window_fraction = 1.0);

// Energy class of kappa against the ceiling (n+4)/(n-4); the ceiling is
// undefined for n <= 4 and the class is reported as not_applicable there.
enum class EnergyClass { subcritical, critical, supercritical, not_applicable };

// Well-posedness routes for data at critical regularity, named by mechanism:
//   critical_strichartz   contraction in Strichartz spaces for homogeneous data,
//                         kappa in the stated window (8/n + 1, (n+4)/(n-4)]
//   derivative_count      homogeneous data, needs an integer l >= 1 with
//                         s_c - 2 <= l <= kappa - 1 for the chain-rule estimates
//   derivative_count_inhom  inhomogeneous-space variant, l >= 0 and l <= kappa
enum class RegimeRoute { critical_strichartz, derivative_count, derivative_count_inhom, none };

std::string route_name(RegimeRoute route);

struct HypothesisItem {
  std::string text;  // the condition in ASCII math, e.g. "8/n + 1 < kappa"
  bool holds = false;
};

struct RouteVerdict {
  RegimeRoute route = RegimeRoute::none;
  std::vector<HypothesisItem> checklist;
  bool applies = false;   // every item holds
  bool boundary = false;  // fails only where a strict inequality sits at equality
};

struct RegimeReport {
  int n = 0;
  double kappa = 0.0;
  double s = 0.0;
  SobolevFlavor space = SobolevFlavor::homogeneous;
  double s_c = 0.0;
  EnergyClass energy_class = EnergyClass::not_applicable;
  std::vector<RouteVerdict> routes;              // all routes evaluated for this space
  RegimeRoute selected = RegimeRoute::none;      // first applicable route
  bool boundary = false;                         // no route applies, some route is boundary
};

// Literal evaluation of each route's hypotheses at (n, kappa, s); pure.
// Homogeneous space offers critical_strichartz then derivative_count;
// inhomogeneous space offers derivative_count_inhom. ConfigError for kappa <= 1.
RegimeReport theorem_selector(int n, double kappa, double s, SobolevFlavor space);

std::string energy_class_name(EnergyClass c);

}  // namespace beam
