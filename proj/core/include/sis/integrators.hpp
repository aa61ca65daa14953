#pragma once

#include <string>
#include <string_view>

#include "sis/noise.hpp"
#include "sis/params.hpp"
#include "sis/trajectory.hpp"

namespace sis {

enum class Method { euler_maruyama, heun_stratonovich, logodds_euler, wz_rk4 };

/// Which SDE the stepper is integrating. `ito_corrected` is the Ito form of
/// the Stratonovich model: Gray drift plus (sigma^2/2) x (N-x) (N-2x).
enum class Model { ito_gray, ito_corrected, stratonovich };

std::string_view to_string(Method m) noexcept;
std::string_view to_string(Model m) noexcept;
/// Throws ConfigError for unknown names. Accepts both `_` and `-` spellings.
Method parse_method(std::string_view name);
Model parse_model(std::string_view name);

struct SchemeSpec {
  Method method = Method::logodds_euler;
  Model model = Model::stratonovich;
  double clamp_epsilon = 1e-12;  // fraction of N
  unsigned substeps = 1;         // wz_rk4 only
};

/// Rejects method/model pairs that integrate a different equation than named:
/// EM takes the two Ito drifts, Heun and wz_rk4 the Stratonovich model, and
/// log-odds either Stratonovich or its Ito form (same law). Throws ConfigError.
void validate_scheme(const SchemeSpec& spec);

/// Drift of the chosen model (for `stratonovich`, the drift as written in
/// Stratonovich form, i.e. the Gray drift).
double model_drift(const SisParams& p, Model model, double x) noexcept;
double model_diffusion(const SisParams& p, double x) noexcept;
/// (sigma^2/2) x (N-x) (N-2x)
double ito_correction(const SisParams& p, double x) noexcept;

/// X_{k+1} = X_k + a(X_k) dt + g(X_k) dB_k. Steps leaving [eps N, (1-eps) N]
/// are clamped and counted in diag.clamp_count.
Trajectory euler_maruyama(const SisParams& p, Model model, const BrownianPath& path,
                          double clamp_epsilon = 1e-12);

/// Heun predictor-corrector for the Stratonovich model: the corrector
/// averages both drift and diffusion at X_k and the Euler predictor X*.
/// Same clamp policy as euler_maruyama (predictor clamps are counted too).
Trajectory heun_stratonovich(const SisParams& p, const BrownianPath& path,
                             double clamp_epsilon = 1e-12);

/// Euler on the log-odds J = ln(I/(N-I)), which has additive noise:
///   dJ = (beta N - (mu+gamma) - (mu+gamma) e^J) dt + sigma N dB.
/// I = N / (1 + e^{-J}) lies in ]0,N[ by construction; ln(I) is stored in
/// log_states so extinct-regime states never lose information to underflow.
Trajectory logodds_euler(const SisParams& p, const BrownianPath& path);

/// Classical RK4 on the random ODE
///   dI/dt = beta I (N-I) - (mu+gamma) I + sigma I (N-I) slope_k
/// with `substeps` steps per cell. Same clamp policy as euler_maruyama.
Trajectory wz_rk4(const SisParams& p, const BrownianPath& path, unsigned substeps,
                  double clamp_epsilon = 1e-12);

/// Dispatches on spec.method after validate_scheme.
Trajectory simulate(const SisParams& p, const SchemeSpec& spec, const BrownianPath& path);

}  // namespace sis
