#pragma once

#include <optional>
#include <string>

namespace sis {

/// Unvalidated parameter record as read from a config file or CLI flags.
struct RawParams {
  double N = 0.0;
  double beta = 0.0;
  double mu_plus_gamma = 0.0;
  double sigma = 0.0;
  double i0 = 0.0;
};

/// Validated SIS parameters. Only constructible through validate_params, so
/// holding one is proof that N, beta, mu+gamma > 0, sigma >= 0 and 0 < i0 < N.
/// The death and cure rates only ever appear as their sum and are stored that way.
class SisParams {
 public:
  double N() const noexcept { return N_; }
  double beta() const noexcept { return beta_; }
  double mu_plus_gamma() const noexcept { return mu_plus_gamma_; }
  double sigma() const noexcept { return sigma_; }
  double i0() const noexcept { return i0_; }

  /// Copy with a different noise intensity (revalidated).
  SisParams with_sigma(double sigma) const;
  /// Copy with a different initial state (revalidated).
  SisParams with_i0(double i0) const;
  /// Copy with a different transmission rate (revalidated).
  SisParams with_beta(double beta) const;

  RawParams raw() const noexcept { return {N_, beta_, mu_plus_gamma_, sigma_, i0_}; }

  /// FNV-1a over the bit patterns of the five fields, as 16 hex digits.
  std::string hash_hex() const;

  friend bool operator==(const SisParams&, const SisParams&) = default;

 private:
  friend SisParams validate_params(const RawParams& raw);
  SisParams() = default;

  double N_ = 0.0;
  double beta_ = 0.0;
  double mu_plus_gamma_ = 0.0;
  double sigma_ = 0.0;
  double i0_ = 0.0;
};

struct DerivedConstants {
  double delta;          // N*beta - (mu+gamma)
  double r0;             // beta*N / (mu+gamma)
  double r0_stochastic;  // r0 - sigma^2 N^2 / (2 (mu+gamma))
};

/// Throws Error{NonPositive | NegativeSigma | InitialOutOfRange}. Never clamps.
SisParams validate_params(const RawParams& raw);

DerivedConstants derived_constants(const SisParams& p) noexcept;

/// Long-time limit of the deterministic model: 0 if R0 <= 1, else N(1 - 1/R0).
double deterministic_limit(const SisParams& p) noexcept;

/// Persistence level of the Ito model with the noise entering as sigma*dB:
///   xi = (sqrt(beta^2 - 2 sigma^2 (mu+gamma)) - (beta - sigma^2 N)) / sigma^2.
/// Throws SigmaZero for sigma == 0 and ComplexRoot when the radicand is negative.
double ito_persistence_level(const SisParams& p);

enum class ThresholdVerdict { Extinct, Persistent, Indeterminate };

const char* to_string(ThresholdVerdict v) noexcept;

/// Extinction/persistence conditions published for the Ito model:
/// extinct if R0s < 1 and (sigma^2 < beta/N or sigma^2 > max(beta/N, beta^2/(2(mu+gamma)))),
/// persistent if R0s > 1. Everything else, including the equality cases, is
/// Indeterminate.
ThresholdVerdict ito_threshold_verdict(const SisParams& p) noexcept;

}  // namespace sis
