#pragma once

// Independent covariance-matrix model of the teleportation chain for a
// twin-beam resource. Quadratures use the convention where the vacuum has
// covariance I/2 and chi(x, p) = exp(i eta.mu - eta^T V eta / 2), eta = (p, -x).

#include <Eigen/Dense>

#include "telefid/types.hpp"

namespace telefid {

struct GaussianMode {
    Eigen::Vector2d mean;
    Eigen::Matrix2d cov;
};

struct GaussianPipelineResult {
    GaussianMode output;            // mode 2 after outcome averaging
    GaussianMode conditional;       // mode 2 right after the Bell measurement, at the mean outcome
    Eigen::Matrix2d conditioning_gain;  // conditional mean = conditional.mean + K (z - outcome_mean)
    Eigen::Vector2d outcome_mean;   // (x~, p~)
    Eigen::Matrix2d outcome_cov;    // over (x~, p~)
};

/// Two-mode squeezed vacuum covariance (modes 1, 2) for S12(r e^{i pi})|0,0>.
Eigen::Matrix4d twin_beam_covariance(double r);

/// Characteristic function of a single-mode Gaussian state.
cplx gaussian_chi(const GaussianMode& mode, PhasePoint pt);

GaussianPipelineResult gaussian_pipeline(const CoherentInput& input, double r, const NoiseParams& noise,
                                         const GainSetting& gain);

/// Mode 2 right after the Bell measurement with outcome (x~, p~).
GaussianMode conditioned_mode(const GaussianPipelineResult& res, const BellOutcome& outcome);

/// Tr[|beta><beta| rho] for a Gaussian rho.
double gaussian_fidelity(const GaussianMode& mode, cplx beta);

}  // namespace telefid
