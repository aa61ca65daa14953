#include "sis/params.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>

#include "sis/error.hpp"

namespace sis {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::NegativeSigma: return "NegativeSigma";
    case ErrorCode::InitialOutOfRange: return "InitialOutOfRange";
    case ErrorCode::ComplexRoot: return "ComplexRoot";
    case ErrorCode::SigmaZero: return "SigmaZero";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::AssumptionViolated: return "AssumptionViolated";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::DriftOrderViolated: return "DriftOrderViolated";
    case ErrorCode::NonPositiveState: return "NonPositiveState";
    case ErrorCode::BadBand: return "BadBand";
    case ErrorCode::WindowTooShort: return "WindowTooShort";
    case ErrorCode::NumericalAssertion: return "NumericalAssertion";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

SisParams validate_params(const RawParams& raw) {
  // Written as !(x > 0) so NaN is rejected too.
  if (!(raw.N > 0.0)) throw Error(ErrorCode::NonPositive, "N");
  if (!(raw.beta > 0.0)) throw Error(ErrorCode::NonPositive, "beta");
  if (!(raw.mu_plus_gamma > 0.0)) throw Error(ErrorCode::NonPositive, "mu_plus_gamma");
  if (!(raw.sigma >= 0.0)) throw Error(ErrorCode::NegativeSigma, "sigma");
  if (!(raw.i0 > 0.0 && raw.i0 < raw.N)) {
    throw Error(ErrorCode::InitialOutOfRange, "i0 must lie in ]0,N[");
  }
  if (!std::isfinite(raw.N) || !std::isfinite(raw.beta) || !std::isfinite(raw.mu_plus_gamma) ||
      !std::isfinite(raw.sigma)) {
    throw Error(ErrorCode::NonPositive, "parameters must be finite");
  }
  SisParams p;
  p.N_ = raw.N;
  p.beta_ = raw.beta;
  p.mu_plus_gamma_ = raw.mu_plus_gamma;
  p.sigma_ = raw.sigma;
  p.i0_ = raw.i0;
  return p;
}

SisParams SisParams::with_sigma(double sigma) const {
  auto r = raw();
  r.sigma = sigma;
  return validate_params(r);
}

SisParams SisParams::with_i0(double i0) const {
  auto r = raw();
  r.i0 = i0;
  return validate_params(r);
}

SisParams SisParams::with_beta(double beta) const {
  auto r = raw();
  r.beta = beta;
  return validate_params(r);
}

std::string SisParams::hash_hex() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : {N_, beta_, mu_plus_gamma_, sigma_, i0_}) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

DerivedConstants derived_constants(const SisParams& p) noexcept {
  const double r0 = p.beta() * p.N() / p.mu_plus_gamma();
  const double s2n2 = p.sigma() * p.sigma() * p.N() * p.N();
  return {
      .delta = p.N() * p.beta() - p.mu_plus_gamma(),
      .r0 = r0,
      .r0_stochastic = r0 - s2n2 / (2.0 * p.mu_plus_gamma()),
  };
}

double deterministic_limit(const SisParams& p) noexcept {
  const double r0 = derived_constants(p).r0;
  if (r0 <= 1.0) return 0.0;
  return p.N() * (1.0 - 1.0 / r0);
}

double ito_persistence_level(const SisParams& p) {
  const double s2 = p.sigma() * p.sigma();
  if (s2 == 0.0) throw Error(ErrorCode::SigmaZero, "use deterministic_limit for sigma = 0");
  const double radicand = p.beta() * p.beta() - 2.0 * s2 * p.mu_plus_gamma();
  if (radicand < 0.0) throw Error(ErrorCode::ComplexRoot, "beta^2 < 2 sigma^2 (mu+gamma)");
  const double root = std::sqrt(radicand);
  // sqrt(b^2 - 2 s2 m) - b loses everything to cancellation as sigma -> 0;
  // rewrite it as -2 s2 m / (sqrt(.) + b) before dividing by s2.
  const double head = -2.0 * p.mu_plus_gamma() / (root + p.beta());
  return head + p.N();
}

const char* to_string(ThresholdVerdict v) noexcept {
  switch (v) {
    case ThresholdVerdict::Extinct: return "Extinct";
    case ThresholdVerdict::Persistent: return "Persistent";
    case ThresholdVerdict::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

ThresholdVerdict ito_threshold_verdict(const SisParams& p) noexcept {
  const auto dc = derived_constants(p);
  const double s2 = p.sigma() * p.sigma();
  const double b_over_n = p.beta() / p.N();
  const double b2_over_2m = p.beta() * p.beta() / (2.0 * p.mu_plus_gamma());
  if (dc.r0_stochastic < 1.0 && s2 < b_over_n) return ThresholdVerdict::Extinct;
  if (s2 > std::max(b_over_n, b2_over_2m)) return ThresholdVerdict::Extinct;
  if (dc.r0_stochastic > 1.0) return ThresholdVerdict::Persistent;
  return ThresholdVerdict::Indeterminate;
}

}  // namespace sis
