#include "capgames/dynamics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace capgames {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sample points spread over the open interval, clamped to a workable
// finite range when an end is infinite.
std::vector<double> sample_domain(double lo, double hi) {
  double a = std::isinf(lo) ? -1e6 : lo + 1e-6 * (std::isinf(hi) ? 1.0 : hi - lo);
  double b = std::isinf(hi) ? 1e6 : hi - 1e-6 * (std::isinf(lo) ? 1.0 : hi - lo);
  if (std::isinf(lo) && !std::isinf(hi)) a = hi - 1e6;
  if (std::isinf(hi) && !std::isinf(lo)) b = lo + 1e6;
  std::vector<double> pts;
  const int kSamples = 64;
  for (int k = 0; k <= kSamples; ++k) {
    pts.push_back(a + (b - a) * k / kSamples);
  }
  return pts;
}

}  // namespace

DynamicsSpec DynamicsSpec::additive() {
  DynamicsSpec d;
  d.kind_ = DynamicsKind::kAdditive;
  d.name_ = "additive";
  d.domain_lo_ = -kInf;
  d.domain_hi_ = kInf;
  d.image_lo_ = -kInf;
  d.image_hi_ = kInf;
  return d;
}

DynamicsSpec DynamicsSpec::multiplicative() {
  DynamicsSpec d;
  d.kind_ = DynamicsKind::kMultiplicative;
  d.name_ = "multiplicative";
  d.domain_lo_ = 0.0;
  d.domain_hi_ = kInf;
  d.image_lo_ = -kInf;
  d.image_hi_ = kInf;
  return d;
}

DynamicsSpec DynamicsSpec::custom(std::string name,
                                  std::function<double(double)> v,
                                  std::function<double(double)> v_inverse,
                                  double domain_lo, double domain_hi,
                                  double image_lo, double image_hi) {
  if (!v || !v_inverse) {
    throw ValidationError("custom dynamics require both v and v_inverse");
  }
  if (!(domain_lo < domain_hi)) {
    throw ValidationError("custom dynamics domain must be a nonempty interval");
  }
  const auto pts = sample_domain(domain_lo, domain_hi);
  double prev = -kInf;
  for (double x : pts) {
    const double y = v(x);
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "custom dynamics '" << name << "': v(" << x << ") is not finite";
      throw ValidationError(os.str());
    }
    if (y <= prev) {
      std::ostringstream os;
      os << "custom dynamics '" << name
         << "': v is not strictly increasing near x = " << x;
      throw ValidationError(os.str());
    }
    prev = y;
    const double back = v_inverse(y);
    const double scale = std::max(1.0, std::fabs(x));
    if (std::fabs(back - x) > 1e-9 * scale) {
      std::ostringstream os;
      os << "custom dynamics '" << name << "': v_inverse(v(" << x << ")) = "
         << back << ", round trip off by more than 1e-9";
      throw ValidationError(os.str());
    }
  }
  DynamicsSpec d;
  d.kind_ = DynamicsKind::kCustom;
  d.name_ = std::move(name);
  d.v_ = std::move(v);
  d.v_inverse_ = std::move(v_inverse);
  d.domain_lo_ = domain_lo;
  d.domain_hi_ = domain_hi;
  d.image_lo_ = image_lo;
  d.image_hi_ = image_hi;
  return d;
}

bool DynamicsSpec::in_domain(double x) const {
  return std::isfinite(x) && x > domain_lo_ && x < domain_hi_;
}

bool DynamicsSpec::in_image(double y) const {
  return std::isfinite(y) && y > image_lo_ && y < image_hi_;
}

double DynamicsSpec::linearize(double x) const {
  switch (kind_) {
    case DynamicsKind::kAdditive:
      return x;
    case DynamicsKind::kMultiplicative:
      return std::log(x);
    case DynamicsKind::kCustom:
      return v_(x);
  }
  return x;  // unreachable
}

double DynamicsSpec::delinearize(double y) const {
  switch (kind_) {
    case DynamicsKind::kAdditive:
      return y;
    case DynamicsKind::kMultiplicative:
      return std::exp(y);
    case DynamicsKind::kCustom:
      return v_inverse_(y);
  }
  return y;  // unreachable
}

const std::vector<std::string>& registered_dynamics_names() {
  static const std::vector<std::string> names = {"additive", "multiplicative",
                                                 "sqrt"};
  return names;
}

const DynamicsSpec& dynamics_by_name(const std::string& name) {
  static const DynamicsSpec add = DynamicsSpec::additive();
  static const DynamicsSpec mult = DynamicsSpec::multiplicative();
  static const DynamicsSpec sqrt_spec = DynamicsSpec::custom(
      "sqrt", [](double x) { return std::sqrt(x); },
      [](double y) { return y * y; }, 0.0, kInf, 0.0, kInf);
  if (name == "additive") return add;
  if (name == "multiplicative") return mult;
  if (name == "sqrt") return sqrt_spec;
  throw ValidationError("unknown dynamics '" + name +
                        "'; registered: additive, multiplicative, sqrt");
}

double DynamicsSpec::rate(double x, double w) const {
  switch (kind_) {
    case DynamicsKind::kAdditive:
      return x - w;
    case DynamicsKind::kMultiplicative:
      return std::log(x / w);
    case DynamicsKind::kCustom:
      break;
  }
  return v_(x) - v_(w);
}

double DynamicsSpec::capital_for_rate(double z, double w) const {
  switch (kind_) {
    case DynamicsKind::kAdditive:
      return w + z;
    case DynamicsKind::kMultiplicative:
      return w * std::exp(z);
    case DynamicsKind::kCustom:
      break;
  }
  return v_inverse_(v_(w) + z);
}

double growth_rate(const DynamicsSpec& d, double x, double w, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    std::ostringstream os;
    os << "duration must be positive, got " << dt;
    throw ValidationError(os.str());
  }
  if (!d.in_domain(x)) {
    std::ostringstream os;
    os << "payoff " << x << " outside " << d.name() << " dynamics domain ("
       << d.domain_lo() << ", " << d.domain_hi() << ")";
    throw DomainError(os.str());
  }
  if (!d.in_domain(w)) {
    std::ostringstream os;
    os << "endowment " << w << " outside " << d.name() << " dynamics domain ("
       << d.domain_lo() << ", " << d.domain_hi() << ")";
    throw DomainError(os.str());
  }
  return d.rate(x, w) / dt;
}

}  // namespace capgames
