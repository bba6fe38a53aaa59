#pragma once

// Single-point evaluations, parameter sweeps and the figure presets.

#include <optional>
#include <string>
#include <vector>

#include "telefid/csv.hpp"
#include "telefid/fidelity.hpp"
#include "telefid/optimize.hpp"

namespace telefid {

/// Everything needed to evaluate or optimize at one parameter point.
struct PointSpec {
    Family family = Family::TwinBeam;
    double r = 0.0;
    double phi = M_PI;
    double delta = 0.0;
    double theta = 0.0;
    double gamma_mod = 0.0;
    NoiseParams noise;
    GainSetting gain = UnityOverT{};
    cplx beta = 0.0;
    std::optional<double> sigma;
    FidelityMethod method = FidelityMethod::closed;

    ResourceSpec resource() const;
};

enum class SweepKind { fidelity, optimize };

/// fidelity: F(beta), or the prior average when sigma is set.
/// optimize: the g = 1/T optimum, or with sigma the averaged optimum; with betas, one-shot rows.
std::vector<ResultRow> evaluate_point(const PointSpec& pt, SweepKind kind, const std::vector<cplx>& betas = {});

inline const std::vector<std::string>& sweep_axes()
{
    static const std::vector<std::string> axes{"r",       "tau",     "nth",   "r2",   "gain",
                                               "sigma",   "beta_re", "beta_im", "delta", "gamma"};
    return axes;
}

struct SweepSpec {
    std::string axis;
    double from = 0.0;
    double to = 1.0;
    int steps = 2;
    PointSpec base;
    SweepKind kind = SweepKind::fidelity;
    std::vector<cplx> betas;  // empty: base.beta only

    void validate() const;
    double value_at(int i) const;
};

/// Sets the named axis on a copy of `pt`.
PointSpec with_axis(PointSpec pt, const std::string& axis, double value);

/// Points run concurrently; rows come back in axis order.
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

inline const std::vector<std::string>& figure_tags()
{
    static const std::vector<std::string> tags{"3-I", "3-II", "4", "5-I", "5-II", "6-I", "6-II"};
    return tags;
}

/// Rows ordered by resource, then curve parameter, then axis value.
std::vector<ResultRow> run_figure_preset(const std::string& tag);

}  // namespace telefid
