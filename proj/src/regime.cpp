#include "vmb/regime.hpp"

#include <cmath>
#include <sstream>

namespace vmb {

RegimeTag parse_regime_tag(const std::string& s) {
  if (s == "NSW" || s == "nsw") return RegimeTag::NSW;
  if (s == "NSP" || s == "nsp") return RegimeTag::NSP;
  if (s == "NSF" || s == "nsf") return RegimeTag::NSF;
  if (s == "custom") return RegimeTag::custom;
  throw RegimeError("unknown regime tag '" + s + "' (expected NSW, NSP, NSF or custom)");
}

std::string to_string(RegimeTag t) {
  switch (t) {
    case RegimeTag::NSW:
      return "NSW";
    case RegimeTag::NSP:
      return "NSP";
    case RegimeTag::NSF:
      return "NSF";
    case RegimeTag::custom:
      return "custom";
  }
  return "?";
}

ScalingRegime ScalingRegime::preset(RegimeTag tag, double eps) {
  ScalingRegime r;
  r.tag = tag;
  r.epsilon = eps;
  switch (tag) {
    case RegimeTag::NSW:
      r.alpha = eps, r.beta = 1.0, r.gamma = 1.0;
      break;
    case RegimeTag::NSP:
      r.alpha = eps, r.beta = eps, r.gamma = eps;
      break;
    case RegimeTag::NSF:
      r.alpha = eps * eps, r.beta = eps * eps, r.gamma = eps;
      break;
    case RegimeTag::custom:
      throw RegimeError("custom regimes need explicit alpha, beta, gamma");
  }
  r.validate();
  return r;
}

ScalingRegime ScalingRegime::custom(double eps, double alpha, double beta, double gamma) {
  ScalingRegime r;
  r.tag = RegimeTag::custom;
  r.epsilon = eps, r.alpha = alpha, r.beta = beta, r.gamma = gamma;
  r.validate();
  return r;
}

void ScalingRegime::validate() const {
  std::ostringstream os;
  os.precision(17);
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    os << "regime: epsilon must lie in (0, 1], got " << epsilon;
    throw RegimeError(os.str());
  }
  if (!(alpha > 0.0 && beta > 0.0 && gamma > 0.0)) throw RegimeError("regime: alpha, beta, gamma must be positive");
  const double lhs = alpha * gamma, rhs = epsilon * beta;
  if (std::abs(lhs - rhs) > 1e-14 * std::max(1.0, std::abs(rhs))) {
    os << "regime: alpha * gamma = " << lhs << " differs from eps * beta = " << rhs;
    throw RegimeError(os.str());
  }
  if (tag == RegimeTag::custom) {
    const double slack = 1.0 + 1e-12;
    if (alpha > epsilon * slack) throw RegimeError("regime: custom scaling needs alpha <= eps");
    if (gamma > alpha / epsilon * slack) throw RegimeError("regime: custom scaling needs gamma <= alpha / eps");
  }
}

double ScalingRegime::limit_alpha() const {
  switch (tag) {
    case RegimeTag::NSW:
    case RegimeTag::NSP:
      return 1.0;
    case RegimeTag::NSF:
      return 0.0;
    case RegimeTag::custom:
      return alpha / epsilon;
  }
  return 0.0;
}

double ScalingRegime::limit_beta() const {
  switch (tag) {
    case RegimeTag::NSW:
      return 1.0;
    case RegimeTag::NSP:
    case RegimeTag::NSF:
      return 0.0;
    case RegimeTag::custom:
      return beta;
  }
  return 0.0;
}

}  // namespace vmb
