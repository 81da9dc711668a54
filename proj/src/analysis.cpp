#include "beam/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "beam/errors.hpp"

namespace beam {

Exponent::Exponent(long long num, long long den) {
  if (den == 0) throw ConfigError("exponent denominator must be nonzero");
  Rational r(num, den);
  if (r <= 0) throw ConfigError("exponent must be positive");
  r_ = r;
}

Exponent::Exponent(const Rational& r) : Exponent(r.numerator(), r.denominator()) {}

Exponent Exponent::infinite() {
  Exponent e;
  e.finite_ = false;
  return e;
}

Exponent Exponent::parse(std::string_view text) {
  const std::string_view original = text;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  if (text.empty()) throw ConfigError("empty exponent");

  std::string low(text);
  for (char& ch : low) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (low == "inf" || low == "infinity") return infinite();

  auto parse_ll = [&](std::string_view piece) -> long long {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (ec != std::errc{} || ptr != piece.data() + piece.size())
      throw ConfigError("cannot parse exponent '" + std::string(original) + "'");
    return v;
  };

  if (const auto slash = text.find('/'); slash != std::string_view::npos)
    return Exponent(parse_ll(text.substr(0, slash)), parse_ll(text.substr(slash + 1)));

  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 12) throw ConfigError("exponent has too many decimal digits");
    long long den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const long long whole = parse_ll(text.substr(0, dot));
    const long long part = frac.empty() ? 0 : parse_ll(frac);
    if (whole < 0 || part < 0) throw ConfigError("exponent must be positive");
    return Exponent(whole * den + part, den);
  }
  return Exponent(parse_ll(text));
}

Rational Exponent::value() const {
  if (!finite_) throw ConfigError("the infinite exponent has no finite value");
  return r_;
}

Rational Exponent::reciprocal() const {
  return finite_ ? Rational(r_.denominator(), r_.numerator()) : Rational(0);
}

double Exponent::as_double() const { return finite_ ? boost::rational_cast<double>(r_) : kInf; }

std::string Exponent::str() const {
  if (!finite_) return "inf";
  if (r_.denominator() == 1) return std::to_string(r_.numerator());
  return std::to_string(r_.numerator()) + "/" + std::to_string(r_.denominator());
}

Rational parse_rational(std::string_view text) {
  const std::string_view original = text;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  if (text.empty()) throw ConfigError("empty rational");

  auto parse_ll = [&](std::string_view piece) -> long long {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (ec != std::errc{} || ptr != piece.data() + piece.size())
      throw ConfigError("cannot parse rational '" + std::string(original) + "'");
    return v;
  };

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational mag;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const long long den = parse_ll(text.substr(slash + 1));
    if (den == 0) throw ConfigError("rational denominator must be nonzero");
    mag = Rational(parse_ll(text.substr(0, slash)), den);
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 12) throw ConfigError("rational has too many decimal digits");
    long long den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    mag = Rational(parse_ll(text.substr(0, dot)) * den + (frac.empty() ? 0 : parse_ll(frac)), den);
  } else {
    mag = Rational(parse_ll(text));
  }
  return negative ? -mag : mag;
}

bool is_schrodinger_admissible(const Exponent& p, const Exponent& q, int n) {
  if (n < 1) return false;
  const Rational half(1, 2);
  if (p.reciprocal() > half || q.reciprocal() > half) return false;  // below 2
  if (p == Exponent(2) && !q.finite() && n == 2) return false;      // excluded endpoint
  return 2 * p.reciprocal() + n * q.reciprocal() == Rational(n, 2);
}

bool is_beam_admissible(const Exponent& p, const Exponent& r, const Rational& s, int n) {
  if (n < 2 || s < 0) return false;
  const Rational half(1, 2);
  if (p.reciprocal() > half || r.reciprocal() > half) return false;
  if (p == Exponent(2) && !r.finite() && n == 2) return false;
  return 2 * p.reciprocal() + n * r.reciprocal() == Rational(n, 2) - s;
}

double critical_exponent(int n, double kappa) {
  if (n < 1) throw ConfigError("dimension must be at least 1");
  if (!(kappa > 1.0)) throw ConfigError("nonlinearity power must exceed 1");
  return 0.5 * n - 4.0 / (kappa - 1.0);
}

Rational critical_exponent_exact(int n, const Rational& kappa) {
  if (n < 1) throw ConfigError("dimension must be at least 1");
  if (kappa <= 1) throw ConfigError("nonlinearity power must exceed 1");
  return Rational(n, 2) - Rational(4) / (kappa - 1);
}

Rational sobolev_shift_exponent(int n, const Rational& b_prime, const Rational& s) {
  const Rational den = n + (2 - s) * b_prime;
  // compare through the numerator: mixed rational/int equality trips the C++20
  // rewritten-candidate recursion in boost::rational's operator== helpers
  if (den.numerator() == 0)
    throw ConfigError("shifted exponent is singular for these (n, b', s)");
  return n * b_prime / den;
}

BeamState scale_state(const BeamState& state, double lambda, double kappa) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ConfigError("scale factor must be positive and finite");
  if (!(kappa > 1.0)) throw ConfigError("nonlinearity power must exceed 1");

  // Stretching the box by lambda sends xi_k = 2 pi k / L to xi_k / lambda with
  // the coefficient array untouched, which realizes f(x/lambda) with no
  // resampling; only the amplitude prefactors differ between the components.
  const double amp_u = std::pow(lambda, -4.0 / (kappa - 1.0));
  const double amp_v = amp_u / (lambda * lambda);

  BeamState out = state;
  out.u.grid.L *= lambda;
  out.v.grid.L *= lambda;
  for (cplx& c : out.u.c) c *= amp_u;
  for (cplx& c : out.v.c) c *= amp_v;
  return out;
}

QuotientReport strichartz_quotient(const std::vector<BeamState>& ensemble,
                                   const ExponentTriple& triple, double rhs_s,
                                   int time_samples, double window_fraction) {
  if (ensemble.empty()) throw ConfigError("quotient probe needs a nonempty ensemble");
  if (time_samples < 2) throw ConfigError("quotient probe needs at least two time samples");
  if (!(window_fraction > 0.0) || !std::isfinite(window_fraction))
    throw ConfigError("window fraction must be positive");

  const double p = triple.p.as_double();
  const double r = triple.r.as_double();

  QuotientReport report;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const BeamState& state = ensemble[i];
    if (!is_beam_admissible(triple.p, triple.r, triple.s, state.u.grid.n))
      throw ConfigError("exponent triple (" + triple.p.str() + ", " + triple.r.str() +
                        ") is not beam-admissible in dimension " +
                        std::to_string(state.u.grid.n));

    const double data = sobolev_norm(state.u, {rhs_s, SobolevFlavor::homogeneous}) +
                        sobolev_norm(state.v, {rhs_s - 2.0, SobolevFlavor::homogeneous});
    if (data == 0.0) continue;  // zero data has no quotient

    const double window = validity_window(state) * window_fraction;
    std::vector<double> times(static_cast<std::size_t>(time_samples));
    std::vector<Field> fields;
    fields.reserve(times.size());
    for (int k = 0; k < time_samples; ++k) {
      times[static_cast<std::size_t>(k)] = window * k / (time_samples - 1);
      fields.push_back(from_spectrum(linear_evolve(state, times[static_cast<std::size_t>(k)]).u));
    }
    const double mixed = spacetime_norm(times, fields, p, r);
    report.table.push_back({i, data, mixed, mixed / data, window});
    report.max_quotient = std::max(report.max_quotient, mixed / data);
  }
  if (report.table.empty()) throw ConfigError("every ensemble member has zero data");
  return report;
}

namespace {

HypothesisItem item(std::string text, bool holds) { return {std::move(text), holds}; }

bool at_critical(double s, double s_c) {
  return std::abs(s - s_c) <= 1e-12 * std::max(1.0, std::abs(s_c));
}

}  // namespace

RegimeReport theorem_selector(int n, double kappa, double s, SobolevFlavor space) {
  RegimeReport rep;
  rep.n = n;
  rep.kappa = kappa;
  rep.s = s;
  rep.space = space;
  rep.s_c = critical_exponent(n, kappa);  // validates n and kappa

  if (n > 4) {
    // kappa against (n+4)/(n-4), multiplied out to keep the comparison exact
    const double lhs = kappa * (n - 4);
    rep.energy_class = lhs < n + 4.0   ? EnergyClass::subcritical
                       : lhs == n + 4.0 ? EnergyClass::critical
                                        : EnergyClass::supercritical;
  }

  const bool crit = at_critical(s, rep.s_c);
  const std::string crit_text = "s = n/2 - 4/(kappa-1)";

  auto eval_strichartz = [&] {
    RouteVerdict v;
    v.route = RegimeRoute::critical_strichartz;
    const bool dim_ok = n > 3 || (n == 3 && kappa > 5.0);
    const bool dim_edge = n == 3 && kappa == 5.0;
    const bool lower_ok = kappa * n > 8.0 + n;  // 8/n + 1 < kappa, cleared of the division
    const bool lower_edge = kappa * n == 8.0 + n;
    const bool upper_ok = n <= 4 || kappa * (n - 4) <= n + 4.0;
    v.checklist.push_back(item(crit_text, crit));
    v.checklist.push_back(item("n > 3, or n = 3 with kappa > 5", dim_ok));
    v.checklist.push_back(item("8/n + 1 < kappa", lower_ok));
    v.checklist.push_back(item("kappa <= (n+4)/(n-4), vacuous for n <= 4", upper_ok));
    v.applies = crit && dim_ok && lower_ok && upper_ok;
    v.boundary = !v.applies && crit && upper_ok && (dim_ok || dim_edge) &&
                 (lower_ok || lower_edge);
    return v;
  };

  auto eval_derivative = [&](bool inhomogeneous_data) {
    RouteVerdict v;
    v.route = inhomogeneous_data ? RegimeRoute::derivative_count_inhom
                                 : RegimeRoute::derivative_count;
    // Smallest admissible integer l; the 1e-9 nudge forgives rounding when
    // s_c - 2 lands on an integer.
    const double l_min =
        std::max(inhomogeneous_data ? 0.0 : 1.0, std::ceil(rep.s_c - 2.0 - 1e-9));
    const double l_max = (inhomogeneous_data ? kappa : kappa - 1.0) + 1e-9;
    const bool dim_ok = n > 4;
    const bool l_ok = l_min <= l_max;
    v.checklist.push_back(item(crit_text, crit));
    v.checklist.push_back(item("n > 4", dim_ok));
    v.checklist.push_back(
        item(inhomogeneous_data
                 ? "exists integer l >= 0 with n/2 - 4/(kappa-1) - 2 <= l <= kappa"
                 : "exists integer l >= 1 with n/2 - 4/(kappa-1) - 2 <= l <= kappa - 1",
             l_ok));
    v.applies = crit && dim_ok && l_ok;
    return v;
  };

  if (space == SobolevFlavor::homogeneous) {
    rep.routes.push_back(eval_strichartz());
    rep.routes.push_back(eval_derivative(false));
  } else {
    rep.routes.push_back(eval_derivative(true));
  }

  for (const RouteVerdict& v : rep.routes) {
    if (v.applies) {
      rep.selected = v.route;
      break;
    }
  }
  if (rep.selected == RegimeRoute::none)
    for (const RouteVerdict& v : rep.routes) rep.boundary = rep.boundary || v.boundary;
  return rep;
}

std::string route_name(RegimeRoute route) {
  switch (route) {
    case RegimeRoute::critical_strichartz: return "critical-strichartz";
    case RegimeRoute::derivative_count: return "derivative-count";
    case RegimeRoute::derivative_count_inhom: return "derivative-count-inhomogeneous";
    case RegimeRoute::none: return "none";
  }
  return "none";
}

std::string energy_class_name(EnergyClass c) {
  switch (c) {
    case EnergyClass::subcritical: return "subcritical";
    case EnergyClass::critical: return "critical";
    case EnergyClass::supercritical: return "supercritical";
    case EnergyClass::not_applicable: return "not-applicable";
  }
  return "not-applicable";
}

}  // namespace beam
