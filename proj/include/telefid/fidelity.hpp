#pragma once

// Teleportation fidelities: closed forms, the quadrature overlap, averages
// over a Gaussian coherent-state alphabet, and the classical benchmark.

#include <cstdint>
#include <optional>
#include <string>

#include "telefid/protocol.hpp"
#include "telefid/quadrature.hpp"
#include "telefid/types.hpp"

namespace telefid {

enum class FidelityMethod { closed, quadrature, gaussian_oracle };

std::string method_name(FidelityMethod m);  // closed, quadrature, gaussian-oracle
FidelityMethod parse_method(const std::string& name);

/// p(beta) = exp(-|beta|^2 / sigma) / (pi sigma)
struct AlphabetPrior {
    double sigma = 10.0;
    void validate() const;
};

struct FidelityReport {
    double value = 0.0;
    FidelityMethod method = FidelityMethod::closed;
    ResourceSpec spec;
    NoiseParams noise;
    GainSetting gain;
    std::optional<cplx> beta;
    std::optional<double> sigma;
    double error_estimate = 0.0;
    std::int64_t evaluations = 0;
};

/// Delta = e^{-2r-tau}[(1 + e^{tau/2} g~)^2 + e^{4r}(1 - e^{tau/2} g~)^2 + 2 e^{2r+tau}(1 + g~^2 + 2 Gamma)].
double fidelity_delta(double r, const NoiseParams& noise, const GainSetting& gain);

/// Fidelity of a two-term core c|u> + s|v> (c = cos delta, s = sin delta) as a ratio of
/// quadratic forms: (c^2 m00 + 2cs m01 + s^2 m11) / (1 + 2cs overlap).
struct DeltaForm {
    double m00 = 0.0;
    double m01 = 0.0;
    double m11 = 0.0;
    double overlap = 0.0;  // <u|v>; nonzero only for the squeezed cat

    double at(double delta) const;
    DeltaForm& operator+=(const DeltaForm& o);
    DeltaForm scaled(double w) const;
};

/// The form for a family at the phases used by the closed forms (phi = pi, theta = 0, real gamma).
/// TwinBeam puts everything in m00; PhotonSubtracted uses the squeezed-Bell form.
DeltaForm closed_form(Family family, double r, double gamma_mod, const NoiseParams& noise,
                      const GainSetting& gain, cplx beta);

/// The form averaged over the alphabet prior.
DeltaForm averaged_closed_form(Family family, double r, double gamma_mod, const NoiseParams& noise,
                               const GainSetting& gain, const AlphabetPrior& prior);

/// True if the closed forms apply to this spec (phi = pi, theta = 0, gamma real and >= 0).
bool closed_form_applicable(const ResourceSpec& spec);

/// The delta value a spec is evaluated at in its form (arctan(tanh r) for photon subtraction).
double form_delta(const ResourceSpec& spec);
double form_gamma(const ResourceSpec& spec);

FidelityReport fidelity_closed(const ResourceSpec& spec, const NoiseParams& noise, const GainSetting& gain,
                               cplx beta);

quad::Options fidelity_options();

/// (1/2pi) Int chi_in(x, p) chi(-x, -p) dx dp for an arbitrary output characteristic function.
/// `decay` is a lower bound on c in |integrand| <= e^{-c (x^2 + p^2)}.
quad::Result overlap_integral(const CoherentInput& input, const SingleModeChi& chi, double decay,
                              const quad::Options& opts = fidelity_options());

FidelityReport fidelity_quadrature(const CoherentInput& input, const ResourceSpec& spec, const NoiseParams& noise,
                                   const GainSetting& gain, const quad::Options& opts = fidelity_options());

/// Twin-beam fidelity from the covariance-matrix model of the whole chain.
FidelityReport fidelity_gaussian_oracle(const CoherentInput& input, double r, const NoiseParams& noise,
                                        const GainSetting& gain);

/// Average over the prior. Closed-form specs use Gauss-Hermite (or, for the cat, the exact
/// Gaussian integral); anything else uses a single quadrature of the prior-averaged overlap.
FidelityReport average_fidelity(const ResourceSpec& spec, const NoiseParams& noise, const GainSetting& gain,
                                const AlphabetPrior& prior);

/// Prior-averaged overlap by direct quadrature; the beta average is done analytically inside the integrand.
FidelityReport average_fidelity_quadrature(const ResourceSpec& spec, const NoiseParams& noise,
                                           const GainSetting& gain, const AlphabetPrior& prior,
                                           const quad::Options& opts = fidelity_options());

/// (sigma + 1) / (2 sigma + 1)
double classical_benchmark(const AlphabetPrior& prior);

}  // namespace telefid
