#pragma once

namespace spinorlab::tol {

// Algebraic identities (unitarity, determinants, trace equalities).
inline constexpr double kAlgebraic = 1e-12;

// Quantities produced by numerical integration.
inline constexpr double kIntegrated = 1e-10;

// Inputs closer than this to a valid state are renormalized; worse inputs are rejected.
inline constexpr double kRenormalize = 1e-9;

// Below this modulus an interference phase is reported as undefined.
inline constexpr double kVisibilityFloor = 1e-12;

// Below this modulus a Pancharatnam overlap is treated as an orthogonal crossing.
inline constexpr double kOverlapFloor = 1e-9;

// Largest dynamical phase still accepted as "parallel transported".
inline constexpr double kParallelTransport = 1e-8;

}  // namespace spinorlab::tol
