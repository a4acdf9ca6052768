#pragma once

#include <optional>

#include "madelung/params.hpp"
#include "madelung/profiles.hpp"

namespace madelung {

// Large-beta limit psi = a sin(k r) / r on r < pi / k, from either the energy
// hbar^2 k^2 / (2 m) or the wavenumber k (exactly one). k and r_inf are
// chosen within a few ulps of the exact values so that k * r_inf == pi holds
// in double arithmetic.
SincLimit sinc_limit(const PhysicalParams& params, std::optional<double> energy,
                     std::optional<double> k = std::nullopt, double s0 = 0.0);
SincLimit sinc_limit_from_energy(const PhysicalParams& params, double energy);
SincLimit sinc_limit_from_wavenumber(const PhysicalParams& params, double k);

// int_0^pi sin^2(u) / u du = Cin(2 pi) / 2, from the power series of Cin.
double sinc_normalization_integral();

// psi'' + (2/r) psi' + k^2 psi at 0 <= r < r_inf, with a series form for
// small k r where the closed-form terms cancel.
double sinc_residual(const SincLimit& limit, double r);

}  // namespace madelung
