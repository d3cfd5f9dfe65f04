#pragma once
// Scaling parameters (eps, alpha, beta, gamma) tied by alpha * gamma = eps * beta.

#include <stdexcept>
#include <string>

namespace vmb {

enum class RegimeTag { NSW, NSP, NSF, custom };

struct RegimeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

RegimeTag parse_regime_tag(const std::string& s);
std::string to_string(RegimeTag t);

struct ScalingRegime {
  RegimeTag tag = RegimeTag::NSF;
  double epsilon = 0.1, alpha = 0.01, beta = 0.01, gamma = 0.1;

  // NSW: (eps, 1, 1); NSP: (eps, eps, eps); NSF: (eps^2, eps^2, eps)
  static ScalingRegime preset(RegimeTag tag, double eps);
  // also requires alpha <= eps and gamma <= alpha / eps
  static ScalingRegime custom(double eps, double alpha, double beta, double gamma);
  void validate() const;

  // Ohm-law indicator values of the limit system: NSW (1, 1), NSP (1, 0), NSF (0, 0)
  double limit_alpha() const;
  double limit_beta() const;
  // whether the limit system carries transverse electromagnetic fields
  bool limit_has_fields() const { return tag == RegimeTag::NSW || tag == RegimeTag::custom; }
};

}  // namespace vmb
