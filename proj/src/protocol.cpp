#include "telefid/protocol.hpp"

#include <cmath>
#include <string>

#include "telefid/phase_space.hpp"

namespace telefid {

void NoiseParams::validate() const
{
    if (!std::isfinite(tau) || tau < 0.0) throw ParameterError("tau must be finite and >= 0");
    if (!std::isfinite(n_th) || n_th < 0.0) throw ParameterError("n_th must be finite and >= 0");
    if (!std::isfinite(r2) || r2 < 0.0 || r2 >= 1.0)
        throw ParameterError("R^2 must lie in [0, 1): T = 0 degenerates the Bell measurement");
}

double gain_value(const GainSetting& gain, const NoiseParams& noise)
{
    noise.validate();
    if (const auto* fixed = std::get_if<FixedGain>(&gain)) {
        if (!std::isfinite(fixed->g) || fixed->g <= 0.0) throw ParameterError("gain g must be finite and > 0");
        return fixed->g;
    }
    return 1.0 / noise.transmissivity();
}

double effective_gain(const GainSetting& gain, const NoiseParams& noise)
{
    if (std::holds_alternative<UnityOverT>(gain)) {
        noise.validate();
        return 1.0;
    }
    return gain_value(gain, noise) * noise.transmissivity();
}

double gamma_cov(const NoiseParams& noise, const GainSetting& gain)
{
    const double g = gain_value(gain, noise);
    return -std::expm1(-noise.tau) * (0.5 + noise.n_th) + g * g * noise.r2;
}

cplx chi_out(const CoherentInput& input, const ResourceSpec& spec, const NoiseParams& noise,
             const GainSetting& gain, PhasePoint pt)
{
    const double gt = effective_gain(gain, noise);
    const double decay = std::exp(-0.5 * noise.tau);
    const double gamma = gamma_cov(noise, gain);
    const TwoModePhasePoint res_pt{{gt * pt.x, -gt * pt.p}, {decay * pt.x, decay * pt.p}};
    return chi_input_coherent(input, {gt * pt.x, gt * pt.p}) * chi_resource(spec, res_pt) *
           std::exp(-0.5 * gamma * (pt.x * pt.x + pt.p * pt.p));
}

cplx chi_out_ideal(const CoherentInput& input, const ResourceSpec& spec, PhasePoint pt)
{
    return chi_input_coherent(input, pt) * chi_resource(spec, {{pt.x, -pt.p}, pt});
}

double lossy_damping_factor(double tau, double n_th, PhasePoint pt)
{
    return std::exp(0.5 * std::expm1(-tau) * (0.5 + n_th) * (pt.x * pt.x + pt.p * pt.p));
}

cplx displacement_phase(cplx lambda, PhasePoint pt)
{
    const double s2 = std::sqrt(2.0);
    return std::polar(1.0, s2 * lambda.real() * pt.p - s2 * lambda.imag() * pt.x);
}

cplx propagate_lossy(const SingleModeChi& chi_initial, double tau, double n_th, PhasePoint pt)
{
    if (!(tau >= 0.0)) throw ParameterError("propagate_lossy: tau must be >= 0");
    const double decay = std::exp(-0.5 * tau);
    return chi_initial({decay * pt.x, decay * pt.p}) * lossy_damping_factor(tau, n_th, pt);
}

cplx displace_chi(const SingleModeChi& chi, cplx lambda, PhasePoint pt)
{
    return chi(pt) * displacement_phase(lambda, pt);
}

namespace {

// (2 pi)^{-2} chi_in(T xi/sqrt2, T ups/sqrt2) chi_res(T xi/sqrt2, -T ups/sqrt2; pt) e^{-R^2(xi^2+ups^2)/4}
cplx bell_integrand(const CoherentInput& input, const ResourceSpec& spec, const NoiseParams& noise, PhasePoint pt,
                    double xi, double ups)
{
    const double t = noise.transmissivity() / std::sqrt(2.0);
    const double norm = 1.0 / (4.0 * M_PI * M_PI);
    return norm * chi_input_coherent(input, {t * xi, t * ups}) * chi_resource(spec, {{t * xi, -t * ups}, pt}) *
           std::exp(-0.25 * noise.r2 * (xi * xi + ups * ups));
}

// |integrand| <= e^{-c s^2} with c = T^2/8 + R^2/4.
double bell_half_width(const NoiseParams& noise)
{
    return quad::envelope_half_width((1.0 - noise.r2) / 8.0 + noise.r2 / 4.0);
}

void check_conditioning_args(const ResourceSpec& spec, const NoiseParams& noise)
{
    noise.validate();
    validate(spec);
}

}  // namespace

quad::Options bell_options()
{
    quad::Options opts;
    opts.initial_panels = 4;
    opts.max_panels = 256;
    opts.tolerance = 1e-11;
    opts.fail_tolerance = 1e-9;
    return opts;
}

cplx chi_bell_unnormalized(const CoherentInput& input, const ResourceSpec& spec, const NoiseParams& noise,
                           const BellOutcome& outcome, PhasePoint pt, const quad::Options& opts)
{
    check_conditioning_args(spec, noise);
    const auto f = [&](double xi, double ups) {
        return bell_integrand(input, spec, noise, pt, xi, ups) *
               std::polar(1.0, xi * outcome.p_tilde - outcome.x_tilde * ups);
    };
    return quad::integrate_2d(f, quad::Window2D::square(bell_half_width(noise)), opts).value;
}

double outcome_distribution(const CoherentInput& input, const ResourceSpec& spec, const NoiseParams& noise,
                            const BellOutcome& outcome, const quad::Options& opts)
{
    return chi_bell_unnormalized(input, spec, noise, outcome, {0.0, 0.0}, opts).real();
}

cplx chi_bell_conditioned(const CoherentInput& input, const ResourceSpec& spec, const NoiseParams& noise,
                          const BellOutcome& outcome, PhasePoint pt, const quad::Options& opts)
{
    const double density = outcome_distribution(input, spec, noise, outcome, opts);
    if (!(density > 0.0)) throw NumericalDegeneracy("outcome density vanishes at the requested outcome");
    return chi_bell_unnormalized(input, spec, noise, outcome, pt, opts) / density;
}

cplx outcome_characteristic(const CoherentInput& input, const ResourceSpec& spec, const NoiseParams& noise,
                            double xi, double upsilon)
{
    return 4.0 * M_PI * M_PI * bell_integrand(input, spec, noise, {0.0, 0.0}, xi, upsilon);
}

OutcomeMoments outcome_moments(const CoherentInput& input, const ResourceSpec& spec, const NoiseParams& noise)
{
    check_conditioning_args(spec, noise);
    const double h = 1e-3;
    const auto k_p = [&](double s) { return std::log(outcome_characteristic(input, spec, noise, s, 0.0)); };
    const auto k_x = [&](double s) { return std::log(outcome_characteristic(input, spec, noise, 0.0, s)); };
    const cplx k0p = k_p(0.0), k0x = k_x(0.0);
    const cplx dp = (k_p(h) - k_p(-h)) / (2.0 * h);
    const cplx ddp = (k_p(h) - 2.0 * k0p + k_p(-h)) / (h * h);
    const cplx dx = (k_x(h) - k_x(-h)) / (2.0 * h);
    const cplx ddx = (k_x(h) - 2.0 * k0x + k_x(-h)) / (h * h);
    OutcomeMoments m;
    m.mean_p = (cplx(0.0, 1.0) * dp).real();
    m.mean_x = (cplx(0.0, -1.0) * dx).real();
    m.std_p = std::sqrt(std::max(-ddp.real(), 0.0));
    m.std_x = std::sqrt(std::max(-ddx.real(), 0.0));
    return m;
}

BellKernel::BellKernel(const CoherentInput& input, const ResourceSpec& spec, const NoiseParams& noise,
                       PhasePoint pt, int panels, int order)
{
    check_conditioning_args(spec, noise);
    const double half = bell_half_width(noise);
    xi_ = quad::composite_legendre(-half, half, panels, order);
    upsilon_ = quad::composite_legendre(-half, half, panels, order);
    const auto n = static_cast<std::int64_t>(xi_.nodes.size());
    const auto m = upsilon_.nodes.size();
    table_.resize(n * m);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            table_[i * m + j] = xi_.weights[i] * upsilon_.weights[j] *
                                bell_integrand(input, spec, noise, pt, xi_.nodes[i], upsilon_.nodes[j]);
}

std::vector<cplx> BellKernel::evaluate_grid(const std::vector<double>& xs, const std::vector<double>& ps) const
{
    const std::size_t n = xi_.nodes.size();
    const std::size_t m = upsilon_.nodes.size();
    // e^{i xi_i p~_b}, shared by all rows
    std::vector<cplx> xi_phase(ps.size() * n);
    for (std::size_t b = 0; b < ps.size(); ++b)
        for (std::size_t i = 0; i < n; ++i) xi_phase[b * n + i] = std::polar(1.0, xi_.nodes[i] * ps[b]);

    std::vector<cplx> out(xs.size() * ps.size());
    const auto nx = static_cast<std::int64_t>(xs.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t a = 0; a < nx; ++a) {
        std::vector<cplx> ups_phase(m);
        for (std::size_t j = 0; j < m; ++j) ups_phase[j] = std::polar(1.0, -xs[a] * upsilon_.nodes[j]);
        std::vector<cplx> partial(n);
        for (std::size_t i = 0; i < n; ++i) {
            cplx acc = 0.0;
            const cplx* row = &table_[i * m];
            for (std::size_t j = 0; j < m; ++j) acc += row[j] * ups_phase[j];
            partial[i] = acc;
        }
        for (std::size_t b = 0; b < ps.size(); ++b) {
            cplx acc = 0.0;
            const cplx* ph = &xi_phase[b * n];
            for (std::size_t i = 0; i < n; ++i) acc += ph[i] * partial[i];
            out[a * ps.size() + b] = acc;
        }
    }
    return out;
}

cplx chi_out_via_measurement_average(const CoherentInput& input, const ResourceSpec& spec,
                                     const NoiseParams& noise, const GainSetting& gain, PhasePoint pt,
                                     const MeasurementAverageOptions& opts)
{
    const Family fam = family_of(spec);
    if (fam != Family::TwinBeam && fam != Family::SqueezedBell && fam != Family::PhotonSubtracted)
        throw ParameterError("measurement-average oracle supports twin-beam and squeezed-Bell resources only");
    check_conditioning_args(spec, noise);
    const double g = gain_value(gain, noise);

    const OutcomeMoments mom = outcome_moments(input, spec, noise);
    const double wx = opts.window_sigmas * mom.std_x;
    const double wp = opts.window_sigmas * mom.std_p;

    const double decay = std::exp(-0.5 * noise.tau);
    const PhasePoint propagated{decay * pt.x, decay * pt.p};
    const double damping = lossy_damping_factor(noise.tau, noise.n_th, pt);

    auto estimate = [&](int inner, int outer) {
        const BellKernel kernel(input, spec, noise, propagated, inner);
        const quad::Rule1D xs = quad::composite_legendre(mom.mean_x - wx, mom.mean_x + wx, outer, 16);
        const quad::Rule1D ps = quad::composite_legendre(mom.mean_p - wp, mom.mean_p + wp, outer, 16);
        const std::vector<cplx> grid = kernel.evaluate_grid(xs.nodes, ps.nodes);
        cplx total = 0.0;
        for (std::size_t a = 0; a < xs.nodes.size(); ++a) {
            cplx row = 0.0;
            for (std::size_t b = 0; b < ps.nodes.size(); ++b) {
                const cplx lambda = g * cplx(xs.nodes[a], ps.nodes[b]);
                row += ps.weights[b] * grid[a * ps.nodes.size() + b] * displacement_phase(lambda, pt);
            }
            total += xs.weights[a] * row;
        }
        return total * damping;
    };

    int inner = opts.inner_panels;
    int outer = opts.outer_panels;
    cplx previous = estimate(inner, outer);
    while (true) {
        inner *= 2;
        outer *= 2;
        const cplx current = estimate(inner, outer);
        const double diff = std::abs(current - previous);
        if (diff < opts.tolerance) return current;
        if (inner * 2 > opts.max_inner_panels) {
            if (diff < 1e-7) return current;
            throw QuadratureError("measurement-average oracle did not converge", diff);
        }
        previous = current;
    }
}

}  // namespace telefid
