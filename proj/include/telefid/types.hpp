#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <variant>

namespace telefid {

using cplx = std::complex<double>;

/// Invalid or out-of-range input parameter.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature did not reach its tolerance within the panel budget.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate)
        : std::runtime_error(what), error_estimate(estimate) {}
    double error_estimate;
};

/// A covariance block that has to be inverted is (numerically) singular.
class NumericalDegeneracy : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reading or writing an output file failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Real phase-space coordinates; alpha = (x + i p)/sqrt(2).
struct PhasePoint {
    double x = 0.0;
    double p = 0.0;

    cplx alpha() const { return cplx(x, p) / std::sqrt(2.0); }
    static PhasePoint from_alpha(cplx a) { return {std::sqrt(2.0) * a.real(), std::sqrt(2.0) * a.imag()}; }
    PhasePoint operator-() const { return {-x, -p}; }
};

struct TwoModePhasePoint {
    PhasePoint m1;
    PhasePoint m2;

    TwoModePhasePoint operator-() const { return {-m1, -m2}; }
};

// Entangled resource families. Every family is S12(zeta)|core>, zeta = r e^{i phi}.

struct TwinBeam {
    double r = 0.0;
    double phi = M_PI;
};

/// core: cos(delta)|0,0> + e^{i theta} sin(delta)|1,1>
struct SqueezedBell {
    double r = 0.0;
    double phi = M_PI;
    double delta = 0.0;
    double theta = 0.0;
};

/// core: N_SC [cos(delta)|0,0> + e^{i theta} sin(delta)|gamma,gamma>]
struct SqueezedCat {
    double r = 0.0;
    double phi = M_PI;
    double delta = 0.0;
    double theta = 0.0;
    double gamma_mod = 0.0;
    double gamma_phase = 0.0;
};

/// core: cos(delta)|0,1> + e^{i theta} sin(delta)|1,0>
struct BuridanDonkey {
    double r = 0.0;
    double phi = M_PI;
    double delta = 0.0;
    double theta = 0.0;
};

/// N a1 a2 S12(zeta)|0,0>; a SqueezedBell with delta = arctan(tanh r).
struct PhotonSubtracted {
    double r = 0.0;
    double phi = M_PI;
};

using ResourceSpec = std::variant<TwinBeam, SqueezedBell, SqueezedCat, BuridanDonkey, PhotonSubtracted>;

enum class Family { TwinBeam, SqueezedBell, SqueezedCat, BuridanDonkey, PhotonSubtracted };

Family family_of(const ResourceSpec& spec);
double squeezing_of(const ResourceSpec& spec);
std::string family_name(Family f);   // CLI spelling: twin-beam, squeezed-bell, ...
Family parse_family(const std::string& name);

/// Throws ParameterError when a spec violates its family's invariants.
void validate(const ResourceSpec& spec);

/// The SqueezedBell equivalent of a photon-subtracted state.
SqueezedBell as_squeezed_bell(const PhotonSubtracted& pss);

struct CoherentInput {
    cplx beta = 0.0;
};

/// Channel and detector imperfections. tau = Upsilon*t, r2 = R^2 of the detector beam splitters.
struct NoiseParams {
    double tau = 0.0;
    double n_th = 0.0;
    double r2 = 0.0;

    double transmissivity() const { return std::sqrt(1.0 - r2); }  // T
    double reflectivity() const { return std::sqrt(r2); }          // R
    void validate() const;
};

struct FixedGain {
    double g = 1.0;
};
struct UnityOverT {};

using GainSetting = std::variant<FixedGain, UnityOverT>;

/// Raw gain g.
double gain_value(const GainSetting& gain, const NoiseParams& noise);
/// g~ = g T; exactly 1 for UnityOverT.
double effective_gain(const GainSetting& gain, const NoiseParams& noise);

struct BellOutcome {
    double x_tilde = 0.0;
    double p_tilde = 0.0;
};

}  // namespace telefid
