#include "gapfield/blowup.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "gapfield/errors.hpp"
#include "gapfield/specfun.hpp"

namespace gapfield::blowup {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kDegreeCap = 12;

double int_pow(double t, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= t;
  return r;
}

}  // namespace

HarmonicBackground::HarmonicBackground(std::vector<Monomial> monomials)
    : monomials_(std::move(monomials)) {
  for (const Monomial& m : monomials_) {
    if (!std::isfinite(m.coeff)) {
      throw std::invalid_argument("HarmonicBackground: non-finite coefficient");
    }
    if (m.px < 0 || m.py < 0 || m.pz < 0 || m.degree() > kDegreeCap) {
      throw std::invalid_argument("HarmonicBackground: monomial degree outside [0, 12]");
    }
    if (m.px == 0 && m.py == 0 && m.pz == 0) {
      value_at_origin_ += m.coeff;
    }
  }
}

double HarmonicBackground::operator()(const Vec3& x) const {
  double total = 0.0;
  for (const Monomial& m : monomials_) {
    total += m.coeff * int_pow(x.x, m.px) * int_pow(x.y, m.py) * int_pow(x.z, m.pz);
  }
  return total;
}

double HarmonicBackground::axial(double t) const {
  double total = 0.0;
  for (const Monomial& m : monomials_) {
    if (m.py == 0 && m.pz == 0) total += m.coeff * int_pow(t, m.px);
  }
  return total;
}

std::vector<std::pair<double, int>> HarmonicBackground::axial_monomials() const {
  std::map<int, double> collected;
  for (const Monomial& m : monomials_) {
    if (m.py == 0 && m.pz == 0 && m.px >= 1) collected[m.px] += m.coeff;
  }
  std::vector<std::pair<double, int>> out;
  for (const auto& [p, c] : collected) {
    if (c != 0.0) out.emplace_back(c, p);
  }
  return out;
}

HarmonicBackground HarmonicBackground::mirrored() const {
  std::vector<Monomial> ms = monomials_;
  for (Monomial& m : ms) {
    if (m.px % 2 == 1) m.coeff = -m.coeff;
  }
  return HarmonicBackground(std::move(ms));
}

HarmonicBackground HarmonicBackground::axial_restriction() const {
  std::vector<Monomial> ms;
  for (const Monomial& m : monomials_) {
    if (m.py == 0 && m.pz == 0) ms.push_back(m);
  }
  return HarmonicBackground(std::move(ms));
}

std::string HarmonicBackground::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const Monomial& m : monomials_) {
    double c = m.coeff;
    if (!first) {
      os << (c < 0 ? "-" : "+");
      c = std::fabs(c);
    } else if (c < 0) {
      os << "-";
      c = -c;
      first = false;
    } else {
      first = false;
    }
    bool emitted = false;
    if (c != 1.0 || m.degree() == 0) {
      os << c;
      emitted = true;
    }
    auto var = [&](const char* name, int p) {
      if (p == 0) return;
      if (emitted) os << "*";
      os << name;
      if (p > 1) os << "^" << p;
      emitted = true;
    };
    var("x1", m.px);
    var("x2", m.py);
    var("x3", m.pz);
  }
  if (first) os << "0";
  return os.str();
}

namespace {

[[noreturn]] void parse_fail(std::string_view text, const std::string& why) {
  throw std::invalid_argument("polynomial parse error in \"" + std::string(text) + "\": " + why);
}

// ascii cleanup: drop whitespace, map the unicode minus to '-'
std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) continue;
    if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
      continue;
    }
    out.push_back(static_cast<char>(c));
  }
  return out;
}

Monomial parse_term(std::string_view original, const std::string& term) {
  Monomial m;
  m.coeff = 1.0;
  if (term.empty()) parse_fail(original, "empty term");
  std::size_t pos = 0;
  bool any_factor = false;
  while (pos < term.size()) {
    const std::size_t star = term.find('*', pos);
    const std::string factor = term.substr(pos, star == std::string::npos ? star : star - pos);
    pos = star == std::string::npos ? term.size() : star + 1;
    if (factor.empty()) parse_fail(original, "empty factor (stray '*')");
    if (factor[0] == 'x') {
      int* slot = nullptr;
      if (factor.size() >= 2 && factor[1] == '1') slot = &m.px;
      else if (factor.size() >= 2 && factor[1] == '2') slot = &m.py;
      else if (factor.size() >= 2 && factor[1] == '3') slot = &m.pz;
      else parse_fail(original, "unknown variable '" + factor + "' (expected x1, x2 or x3)");
      int expo = 1;
      if (factor.size() > 2) {
        if (factor[2] != '^') parse_fail(original, "expected '^' in '" + factor + "'");
        const std::string digits = factor.substr(3);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                           [](unsigned char c) { return std::isdigit(c); })) {
          parse_fail(original, "bad exponent in '" + factor + "'");
        }
        expo = std::atoi(digits.c_str());
        if (expo > kDegreeCap) parse_fail(original, "exponent above the degree cap 12");
      }
      *slot += expo;
    } else {
      char* end = nullptr;
      const double v = std::strtod(factor.c_str(), &end);
      if (end != factor.c_str() + factor.size() || !std::isfinite(v)) {
        parse_fail(original, "bad coefficient '" + factor + "'");
      }
      m.coeff *= v;
    }
    any_factor = true;
  }
  if (!any_factor) parse_fail(original, "empty term");
  if (m.degree() > kDegreeCap) parse_fail(original, "total degree above the cap 12");
  return m;
}

}  // namespace

HarmonicBackground HarmonicBackground::parse(std::string_view text) {
  const std::string s = normalize(text);
  if (s.empty()) parse_fail(text, "empty polynomial");
  std::vector<Monomial> monomials;
  std::size_t start = 0;
  double sign = 1.0;
  if (s[0] == '+' || s[0] == '-') {
    sign = s[0] == '-' ? -1.0 : 1.0;
    start = 1;
  }
  std::size_t pos = start;
  while (pos <= s.size()) {
    const bool at_end = pos == s.size();
    // a sign splits terms unless it belongs to a scientific-notation exponent
    const bool splits = !at_end && (s[pos] == '+' || s[pos] == '-') &&
                        !(pos > 0 && (s[pos - 1] == 'e' || s[pos - 1] == 'E') && pos + 1 < s.size() &&
                          std::isdigit(static_cast<unsigned char>(s[pos + 1])));
    if (at_end || splits) {
      Monomial m = parse_term(text, s.substr(start, pos - start));
      m.coeff *= sign;
      monomials.push_back(m);
      if (at_end) break;
      sign = s[pos] == '-' ? -1.0 : 1.0;
      start = pos + 1;
    }
    ++pos;
  }
  return HarmonicBackground(std::move(monomials));
}

LaplacianReport laplacian_report(const HarmonicBackground& h) {
  // exact second-derivative coefficients on the monomial basis
  std::map<std::tuple<int, int, int>, std::pair<double, double>> acc;  // sum, |sum| scale
  auto add = [&acc](int px, int py, int pz, double c) {
    auto& slot = acc[{px, py, pz}];
    slot.first += c;
    slot.second += std::fabs(c);
  };
  for (const Monomial& m : h.monomials()) {
    if (m.px >= 2) add(m.px - 2, m.py, m.pz, m.coeff * m.px * (m.px - 1));
    if (m.py >= 2) add(m.px, m.py - 2, m.pz, m.coeff * m.py * (m.py - 1));
    if (m.pz >= 2) add(m.px, m.py, m.pz - 2, m.coeff * m.pz * (m.pz - 1));
  }
  LaplacianReport rep;
  for (const auto& [key, val] : acc) {
    if (std::fabs(val.first) > 1e-12 * std::max(1.0, val.second)) {
      rep.harmonic = false;
      rep.offending = {val.first, std::get<0>(key), std::get<1>(key), std::get<2>(key)};
      return rep;
    }
  }
  return rep;
}

bool laplacian_check(const HarmonicBackground& h) { return laplacian_report(h).harmonic; }

namespace {

// sum_{k >= K} (k + a)^{-1-p} by Euler-Maclaurin at Q = K + a
double em_tail(int p, double a, std::int64_t K) {
  const double Q = static_cast<double>(K) + a;
  double total = std::pow(Q, -p) / p + 0.5 * std::pow(Q, -1 - p);
  static constexpr double kB[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30};
  static constexpr double kFact[] = {2.0, 24.0, 720.0, 40320.0};  // (2i)!
  double rising = 1.0;  // (p+1)(p+2)...(p+2i-1)
  double qpow = std::pow(Q, -1 - p);
  for (int i = 1; i <= 4; ++i) {
    rising *= (i == 1) ? (p + 1.0) : (p + 2.0 * i - 2.0) * (p + 2.0 * i - 1.0);
    qpow /= (Q * Q);
    total += kB[i - 1] / kFact[i - 1] * rising * qpow * Q;
  }
  return total;
}

// magnitude of the first omitted Euler-Maclaurin term (B10)
double em_tail_residual(int p, double a, std::int64_t K) {
  const double Q = static_cast<double>(K) + a;
  double rising = 1.0;
  for (int j = 1; j <= 9; ++j) rising *= (p + j);
  return (5.0 / 66) / 3628800.0 * rising * std::pow(Q, -p - 10);
}

}  // namespace

CResult c_min_max(const SpherePair& pair, const HarmonicBackground& h, double tol) {
  if (!(tol >= 1e-12)) {
    throw std::domain_error("c_min_max: tol must be >= 1e-12");
  }
  const auto axial = h.axial_monomials();
  CResult res;
  if (axial.empty()) {
    return res;  // H vanishes on the axis after normalization
  }
  const double s = pair.r1 + pair.r2;
  const double m_min = pair.r_min() / s;
  const double m_max = pair.r_max() / s;
  const double g = pair.r1 * pair.r2 / s;
  auto hax = [&axial](double t) {
    double v = 0.0;
    for (const auto& [c, p] : axial) v += c * int_pow(t, p);
    return v;
  };

  for (std::int64_t K = 64; K <= 1'000'000; K *= 2) {
    double cmin = 0.0, cmax = 0.0, mag = 0.0;
    for (std::int64_t k = K - 1; k >= 0; --k) {
      const double tmin = hax(g / (k + m_min)) / (k + m_min) - hax(-g / (k + 1.0)) / (k + 1.0);
      const double tmax = hax(g / (k + 1.0)) / (k + 1.0) - hax(-g / (k + m_max)) / (k + m_max);
      cmin += tmin;
      cmax += tmax;
      mag += std::fabs(tmin) + std::fabs(tmax);
    }
    double resid = 0.0;
    for (const auto& [c, p] : axial) {
      const double parity = (p % 2 == 0) ? 1.0 : -1.0;  // (-1)^p
      const double gp = c * std::pow(g, p);
      cmin += gp * (em_tail(p, m_min, K) - parity * em_tail(p, 1.0, K));
      cmax += gp * (em_tail(p, 1.0, K) - parity * em_tail(p, m_max, K));
      resid += 2.0 * std::fabs(gp) *
               (em_tail_residual(p, m_min, K) + em_tail_residual(p, 1.0, K) +
                em_tail_residual(p, m_max, K));
    }
    resid += 4.0 * 2.2e-16 * mag;
    if (resid <= tol) {
      res.c_min = cmin;
      res.c_max = cmax;
      res.abs_error_estimate = resid;
      res.terms_used = 2 * K;
      return res;
    }
  }
  throw numeric_error("c_min_max: paired terms failed to reach tolerance within 1e6 terms");
}

BlowupResult psi_factor(const SpherePair& pair, const HarmonicBackground& h, double tol) {
  const CResult c = c_min_max(pair, h, tol);
  const double s = pair.r1 + pair.r2;
  const double psi_max = specfun::psi(pair.r_max() / s);
  const double psi_min = specfun::psi(pair.r_min() / s);
  const double den = specfun::psi(pair.r2 / s) + specfun::psi(pair.r1 / s);
  if (!(den < 0.0)) {
    // psi < 0 on (0,1) makes the denominator strictly negative
    throw std::logic_error("psi_factor: degenerate denominator");
  }
  BlowupResult out;
  out.c_min = c.c_min;
  out.c_max = c.c_max;
  out.psi = (psi_max * c.c_min + psi_min * c.c_max) / den;
  out.gap_series = std::numeric_limits<double>::quiet_NaN();
  out.gap_asymptotic = 2.0 * out.psi / std::fabs(std::log(pair.eps));
  out.terms_used = c.terms_used;
  return out;
}

BlowupResult blowup_bundle(const SpherePair& pair, const HarmonicBackground& h, double tol) {
  BlowupResult out = psi_factor(pair, h, tol);
  const auto sys1 = geometry::build_images_auto(pair, 1);
  const auto sys2 = geometry::build_images_auto(pair, 2);
  const SeriesConstants konst = constants::compute(pair, sys1, sys2, tol);
  out.gap_series = potential_gap_series(pair, h, konst, sys1, sys2);
  out.terms_used += konst.terms_used;
  return out;
}

double psi_linear_closed(double r, double E0) {
  if (!(r > 0.0)) throw std::domain_error("psi_linear_closed: r must be > 0");
  const double a = 1.0 / (1.0 + r);
  const double b = r / (1.0 + r);
  const double ratio = (specfun::psi(a) * specfun::polygamma(1, b) +
                        specfun::psi(b) * specfun::polygamma(1, a)) /
                       (specfun::psi(a) + specfun::psi(b));
  return E0 * r / (1.0 + r) * (kPi * kPi / 6.0 + ratio);
}

double psi_cubic_closed(double r) {
  if (!(r > 0.0)) throw std::domain_error("psi_cubic_closed: r must be > 0");
  const double a = 1.0 / (1.0 + r);
  const double b = r / (1.0 + r);
  const double ratio = (specfun::psi(a) * specfun::polygamma(3, b) +
                        specfun::psi(b) * specfun::polygamma(3, a)) /
                       (specfun::psi(a) + specfun::psi(b));
  const double w = r / (1.0 + r);
  return w * w * w * (std::pow(kPi, 4) / 90.0 + ratio / 6.0);
}

double potential_gap_series([[maybe_unused]] const SpherePair& pair,
                            const HarmonicBackground& h, const SeriesConstants& konst,
                            const ImageChargeSystem& sys1, const ImageChargeSystem& sys2) {
  const double h0 = h.value_at_origin();
  auto family_sum = [&h, h0](const ImageChargeSystem& sys) {
    double total = 0.0;
    for (std::int64_t k = sys.pair_count() - 1; k >= 0; --k) {
      const double even = sys.charges[2 * k] * (h.axial(sys.points[2 * k]) - h0);
      const double odd = sys.charges[2 * k + 1] * (h.axial(sys.points[2 * k + 1]) - h0);
      total += even - odd;
    }
    return total;
  };
  return (konst.Q2 * family_sum(sys1) - konst.Q1 * family_sum(sys2)) / konst.M;
}

AverageFieldComparison average_field_compare(const SpherePair& pair, double E0) {
  const double s = pair.r1 + pair.r2;
  const double a = pair.r1 / s;
  const double b = pair.r2 / s;
  const double psi_a = specfun::psi(a);
  const double psi_b = specfun::psi(b);
  const double cross = psi_a * specfun::polygamma(1, b) + psi_b * specfun::polygamma(1, a);
  const double log_eps = std::fabs(std::log(pair.eps));

  AverageFieldComparison out;
  out.asymptotic_formula = kPi * kPi * E0 / (3.0 * pair.eps * log_eps) * pair.r1 * pair.r2 / s *
                      (1.0 + 6.0 / (kPi * kPi) * cross / (psi_a + psi_b));
  const double num = psi_a + psi_b + 6.0 / (kPi * kPi) * cross;
  const double den = (0.5 * std::log(2.0 * pair.r1 * pair.r2 / (s * pair.eps)) +
                      specfun::euler_gamma()) *
                         (psi_a + psi_b) -
                     psi_a * psi_b;
  out.literature_formula = kPi * kPi * E0 / (6.0 * pair.eps) * pair.r1 * pair.r2 / s * num / den;
  return out;
}

}  // namespace gapfield::blowup
