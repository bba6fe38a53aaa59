#pragma once

// Characteristic functions chi(alpha) = Tr[rho D(alpha)] of coherent inputs
// and of the two-mode entangled resources.

#include <utility>

#include "telefid/types.hpp"

namespace telefid {

inline constexpr int kMaxFockIndex = 64;

/// Associated Laguerre polynomial L_n^{(k)}(x) by the three-term recurrence in n.
double laguerre(int n, int k, double x);

/// <m| D(alpha) |n>.
cplx fock_displacement_element(int m, int n, cplx alpha);

/// <a| D(xi) |b> for coherent states |a>, |b>.
cplx coherent_displacement_element(cplx a, cplx xi, cplx b);

/// Arguments (xi1, xi2) with S12^dag(zeta) D1(alpha1) D2(alpha2) S12(zeta) = D1(xi1) D2(xi2),
/// for S12(zeta) = exp(-zeta a1^dag a2^dag + zeta^* a1 a2).
std::pair<cplx, cplx> bogoliubov_args(cplx zeta, cplx alpha1, cplx alpha2);

cplx chi_input_coherent(const CoherentInput& input, PhasePoint pt);

cplx chi_resource(const ResourceSpec& spec, const TwoModePhasePoint& pt);

/// 1 / N_SC^2 = 1 + e^{-|gamma|^2} sin(2 delta) cos(theta).
double cat_norm_squared_inverse(const SqueezedCat& sc);

}  // namespace telefid
