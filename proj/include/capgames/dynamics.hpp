#pragma once

#include <functional>
#include <string>
#include <vector>

#include "capgames/errors.hpp"

namespace capgames {

enum class DynamicsKind { kAdditive, kMultiplicative, kCustom };

// A player's capital dynamics family, held by its linearization pair
// (v, v_inverse) and the open interval of valid capital values.  Every
// operation consumes only v and its inverse; the underlying dynamics
// f(x, w, dt) is recoverable and never materialized.
//
// Built-in families:
//   additive        f(x,w) = x - w,   v(x) = x,     valid on all reals
//   multiplicative  f(x,w) = x / w,   v(x) = ln x,  valid on x > 0
class DynamicsSpec {
 public:
  static DynamicsSpec additive();
  static DynamicsSpec multiplicative();

  // Custom linearizable dynamics.  `v` must be strictly increasing on the
  // open domain (domain_lo, domain_hi) and `v_inverse` its inverse; the
  // image interval (image_lo, image_hi) is v's range over the domain.
  // The factory samples domain points and rejects pairs that fail the
  // round-trip or monotonicity checks at 1e-9.
  static DynamicsSpec custom(std::string name,
                             std::function<double(double)> v,
                             std::function<double(double)> v_inverse,
                             double domain_lo, double domain_hi,
                             double image_lo, double image_hi);

  DynamicsKind kind() const { return kind_; }
  // "additive", "multiplicative", or the registered custom name.
  const std::string& name() const { return name_; }

  bool in_domain(double x) const;
  bool in_image(double y) const;
  double domain_lo() const { return domain_lo_; }
  double domain_hi() const { return domain_hi_; }

  double linearize(double x) const;    // v(x)
  double delinearize(double y) const;  // v_inverse(y)

  // v(x) - v(w), computed in the family's exact form: x - w for additive,
  // ln(x/w) for multiplicative (so 150 from 100 gives ln 1.5 exactly).
  // No domain checks; callers validate first.
  double rate(double x, double w) const;
  // Inverse of rate in its second argument: the capital x with
  // v(x) - v(w) = z.  Additive: w + z; multiplicative: w * e^z (exact for
  // z = 0); custom: v_inverse(v(w) + z), which requires v(w) + z in the
  // image — callers check in_image first.
  double capital_for_rate(double z, double w) const;

 private:
  DynamicsSpec() = default;

  DynamicsKind kind_ = DynamicsKind::kAdditive;
  std::string name_;
  std::function<double(double)> v_;
  std::function<double(double)> v_inverse_;
  double domain_lo_ = 0.0;
  double domain_hi_ = 0.0;
  double image_lo_ = 0.0;
  double image_hi_ = 0.0;
};

// Named specs usable in game files: "additive", "multiplicative", "sqrt".
// The sqrt spec has v(x) = sqrt(x) on (0, inf).
const std::vector<std::string>& registered_dynamics_names();
const DynamicsSpec& dynamics_by_name(const std::string& name);

// (v(x) - v(w)) / dt.  Throws DomainError when x or w is outside the
// dynamics domain, ValidationError when dt <= 0.
double growth_rate(const DynamicsSpec& d, double x, double w, double dt);

}  // namespace capgames
