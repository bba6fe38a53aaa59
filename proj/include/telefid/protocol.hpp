#pragma once

// Output characteristic function of the nonideal Braunstein-Kimble protocol
// and the pieces of the measurement chain it is built from.

#include <functional>

#include "telefid/quadrature.hpp"
#include "telefid/types.hpp"

namespace telefid {

using SingleModeChi = std::function<cplx(PhasePoint)>;

/// Gamma_{tau,R} = (1 - e^{-tau})(1/2 + n_th) + g^2 R^2.
double gamma_cov(const NoiseParams& noise, const GainSetting& gain);

cplx chi_out(const CoherentInput& input, const ResourceSpec& spec, const NoiseParams& noise,
             const GainSetting& gain, PhasePoint pt);

/// Ideal-protocol factorization chi_in(x, p) chi_res(x, -p; x, p).
cplx chi_out_ideal(const CoherentInput& input, const ResourceSpec& spec, PhasePoint pt);

/// Lossy channel solution: chi(e^{-tau/2} pt) exp{-(1 - e^{-tau})(1/2 + n_th)|pt|^2 / 2}.
cplx propagate_lossy(const SingleModeChi& chi_initial, double tau, double n_th, PhasePoint pt);

/// Characteristic function of D(lambda) rho D^dag(lambda).
cplx displace_chi(const SingleModeChi& chi, cplx lambda, PhasePoint pt);

/// The scalar factors used by propagate_lossy and displace_chi.
double lossy_damping_factor(double tau, double n_th, PhasePoint pt);
cplx displacement_phase(cplx lambda, PhasePoint pt);

/// Quadrature settings for the Bell-conditioning integrals (error budget 1e-9).
quad::Options bell_options();

// Bell-measurement conditioning. The unnormalized form is P(p~, x~) chi_Bm(pt);
// at pt = 0 it is the outcome density P itself.

cplx chi_bell_unnormalized(const CoherentInput& input, const ResourceSpec& spec, const NoiseParams& noise,
                           const BellOutcome& outcome, PhasePoint pt, const quad::Options& opts = bell_options());
cplx chi_bell_conditioned(const CoherentInput& input, const ResourceSpec& spec, const NoiseParams& noise,
                          const BellOutcome& outcome, PhasePoint pt, const quad::Options& opts = bell_options());
double outcome_distribution(const CoherentInput& input, const ResourceSpec& spec, const NoiseParams& noise,
                            const BellOutcome& outcome, const quad::Options& opts = bell_options());

/// E[e^{-i xi p~ + i upsilon x~}] : the Fourier transform of the outcome density.
cplx outcome_characteristic(const CoherentInput& input, const ResourceSpec& spec, const NoiseParams& noise,
                            double xi, double upsilon);

struct OutcomeMoments {
    double mean_x = 0.0;
    double mean_p = 0.0;
    double std_x = 0.0;
    double std_p = 0.0;
};

/// First two cumulants of x~ and p~ from finite differences of the outcome characteristic function.
OutcomeMoments outcome_moments(const CoherentInput& input, const ResourceSpec& spec, const NoiseParams& noise);

/// Tabulated Bell-measurement integrand for a fixed mode-2 argument. Evaluating the
/// unnormalized conditioned characteristic function at many outcomes then costs no
/// further resource evaluations.
class BellKernel {
public:
    BellKernel(const CoherentInput& input, const ResourceSpec& spec, const NoiseParams& noise, PhasePoint pt,
               int panels, int order = 16);

    /// P(p~, x~) chi_Bm(pt) on the outer tensor grid xs (x~) by ps (p~); row-major [ix][ip].
    std::vector<cplx> evaluate_grid(const std::vector<double>& xs, const std::vector<double>& ps) const;

private:
    quad::Rule1D xi_;
    quad::Rule1D upsilon_;
    std::vector<cplx> table_;  // weights folded in, [i_xi][j_upsilon]
};

struct MeasurementAverageOptions {
    int inner_panels = 8;
    int outer_panels = 4;
    int max_inner_panels = 128;
    double window_sigmas = 8.0;
    double tolerance = 1e-9;
};

/// Slow oracle: averages the displaced, propagated conditioned state over all Bell outcomes.
/// Supported for TwinBeam, SqueezedBell and PhotonSubtracted resources.
cplx chi_out_via_measurement_average(const CoherentInput& input, const ResourceSpec& spec,
                                     const NoiseParams& noise, const GainSetting& gain, PhasePoint pt,
                                     const MeasurementAverageOptions& opts = {});

}  // namespace telefid
