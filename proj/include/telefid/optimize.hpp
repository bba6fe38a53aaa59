#pragma once

// Fidelity maximization over resource parameters and gain, r_max,
// squeezed-vacuum affinity, and one-shot fidelities.

#include <cstdint>
#include <optional>
#include <string>

#include "telefid/fidelity.hpp"
#include "telefid/types.hpp"

namespace telefid {

struct SearchBounds {
    double delta_lo = -M_PI / 2;
    double delta_hi = M_PI / 2;
    double gamma_lo = 0.0;
    double gamma_hi = 5.0;
    double gain_hi_times_t = 2.0;  // g in (0, gain_hi_times_t / T]
};

struct OptimizationResult {
    Family family = Family::TwinBeam;
    double r = 0.0;
    double delta_opt = 0.0;
    std::optional<double> gamma_opt;
    std::optional<double> gain_opt;
    double best_value = 0.0;
    std::int64_t evaluations = 0;
    std::string method;  // grid+golden, grid+nelder-mead, or none
    ResourceSpec spec;   // the optimal resource (phi = pi, theta = 0)
    GainSetting gain;
};

/// Resource of the given family with the phases fixed to phi = pi, theta = 0, real gamma.
ResourceSpec make_resource(Family family, double r, double delta = 0.0, double gamma_mod = 0.0);

/// max over delta (and gamma for the cat) of F at g = 1/T.
OptimizationResult optimize_beta_independent(Family family, double r, const NoiseParams& noise,
                                             const SearchBounds& bounds = {});

/// max over (g, delta[, gamma]) of the prior-averaged fidelity.
OptimizationResult optimize_gain_average(Family family, double r, const NoiseParams& noise,
                                         const AlphabetPrior& prior, const SearchBounds& bounds = {});

/// Fidelity at beta with the parameters that maximize the averaged fidelity.
FidelityReport one_shot_fidelity(Family family, double r, const NoiseParams& noise, const AlphabetPrior& prior,
                                 cplx beta, const SearchBounds& bounds = {});
FidelityReport one_shot_fidelity(const OptimizationResult& optimum, const NoiseParams& noise, cplx beta);

/// Squeezing that maximizes the twin-beam fidelity at g~ = 1; nullopt at tau = 0 (no finite maximum).
std::optional<double> r_max(double tau);

struct AffinityResult {
    double value = 0.0;
    double r_opt = 0.0;
    double tail_weight = 0.0;       // weight of the resource beyond the Fock cutoff
    bool cutoff_sufficient = true;  // tail_weight <= 1e-8
};

inline constexpr int kAffinityCutoff = 40;

/// sup over r' in [0, 5] of |<-r'|psi>|^2, with |-r'> the twin beam S12(-r')|0,0>.
AffinityResult affinity(const ResourceSpec& spec);

// Derivative-free 1D/ND maximizers used by the searches.
struct Maximum1D {
    double x;
    double value;
    int evaluations;
};
template <class F>
Maximum1D golden_section_max(F&& f, double a, double b, double tol);

}  // namespace telefid

#include "telefid/detail/golden.hpp"
