#include "telefid/fidelity.hpp"

#include <array>
#include <cmath>

#include "telefid/gaussian_pipeline.hpp"
#include "telefid/phase_space.hpp"

namespace telefid {

namespace {

bool near_angle(double a, double target)
{
    return std::abs(std::remainder(a - target, 2.0 * M_PI)) < 1e-12;
}

// Quantities shared by all the closed forms at one (r, noise, gain) point.
struct Scalars {
    double r;
    double gt;     // g~
    double delta;  // Delta
    double k;      // (g~ - 1)^2
    double plus;   // (1 + e^{tau/2} g~)^2
    double minus;  // e^{4r}(1 - e^{tau/2} g~)^2
    double tau;
};

Scalars scalars(double r, const NoiseParams& noise, const GainSetting& gain)
{
    if (!std::isfinite(r) || r < 0.0) throw ParameterError("squeezing r must be finite and >= 0");
    Scalars s;
    s.r = r;
    s.tau = noise.tau;
    s.gt = effective_gain(gain, noise);
    const double gamma = gamma_cov(noise, gain);
    const double eh = std::exp(0.5 * noise.tau);
    s.plus = (1.0 + eh * s.gt) * (1.0 + eh * s.gt);
    s.minus = std::exp(4.0 * r) * (1.0 - eh * s.gt) * (1.0 - eh * s.gt);
    s.delta = std::exp(-2.0 * r - noise.tau) *
              (s.plus + s.minus + 2.0 * std::exp(2.0 * r + noise.tau) * (1.0 + s.gt * s.gt + 2.0 * gamma));
    s.k = (s.gt - 1.0) * (s.gt - 1.0);
    return s;
}

// Squeezed-Bell form divided by the twin-beam factor (4/Delta) e^{-4 k |beta|^2 / Delta}.
DeltaForm squeezed_bell_poly(const Scalars& s, double b)
{
    const double d = s.delta;
    const double pm = s.plus - s.minus;
    const double x = 2.0 * std::exp(-4.0 * s.r - 2.0 * s.tau) / (d * d * d * d) * pm * pm *
                     (d * d - 8.0 * d * s.k * b + 8.0 * s.k * s.k * b * b);
    const double y = 2.0 * std::exp(-2.0 * s.r - s.tau) / (d * d) * (4.0 * s.k * b - d);
    return {1.0, 0.5 * y * (s.minus - s.plus), 1.0 + x + y * (s.plus + s.minus), 0.0};
}

// Buridan-donkey form divided by the twin-beam factor; re_beta2 = Re(beta^2).
DeltaForm buridan_poly(const Scalars& s, double b, double re_beta2)
{
    const double d = s.delta;
    const double q = std::exp(-2.0 * s.r - s.tau) / (d * d);
    const double e = std::exp(2.0 * s.r) * (std::exp(s.tau) * s.gt * s.gt - 1.0);
    const double common = (s.plus + s.minus) * (4.0 * s.k * b - d);
    const double split = 2.0 * e * (d - 4.0 * s.k * b);
    return {1.0 + q * (common + split), -2.0 * q * s.k * 2.0 * re_beta2 * (s.plus - s.minus),
            1.0 + q * (common - split), 0.0};
}

// Cat-state coefficients: the exponent of entry (a, b) is 4 u v / Delta with
// u = p_ab + k' beta^*, v = q_ab - k' beta, k' = 1 - g~.
struct CatTerms {
    double a;  // g~ cosh r - e^{-tau/2} sinh r
    double b;  // e^{-tau/2} cosh r - g~ sinh r
};

CatTerms cat_terms(const Scalars& s)
{
    const double em = std::exp(-0.5 * s.tau);
    return {s.gt * std::cosh(s.r) - em * std::sinh(s.r), em * std::cosh(s.r) - s.gt * std::sinh(s.r)};
}

DeltaForm squeezed_cat_form(const Scalars& s, double gm, cplx beta)
{
    const CatTerms t = cat_terms(s);
    const double kp = 1.0 - s.gt;
    const std::array<double, 2> amp{0.0, gm};
    std::array<std::array<cplx, 2>, 2> m{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const double gap = amp[a] - amp[b];
            const cplx u = -amp[a] * t.b + amp[b] * t.a + kp * std::conj(beta);
            const cplx v = -amp[a] * t.a + amp[b] * t.b - kp * beta;
            m[a][b] = 4.0 / s.delta * std::exp(-gap * gap + 4.0 * u * v / s.delta);
        }
    return {m[0][0].real(), 0.5 * (m[0][1] + m[1][0]).real(), m[1][1].real(), std::exp(-gm * gm)};
}

// Exact prior average of the cat form: each entry is Gaussian times exp(linear) in beta.
DeltaForm squeezed_cat_form_averaged(const Scalars& s, double gm, double sigma)
{
    const CatTerms t = cat_terms(s);
    const double kp = 1.0 - s.gt;
    const double lambda = 1.0 / sigma + 4.0 * kp * kp / s.delta;
    const double pre = 4.0 / s.delta / (sigma * lambda);
    auto entry = [&](double p, double q, double gap) {
        return pre * std::exp(-gap * gap + 4.0 * p * q / (s.delta * sigma * lambda));
    };
    return {entry(0.0, 0.0, 0.0), entry(gm * t.a, gm * t.b, gm), entry(gm * (t.a - t.b), gm * (t.b - t.a), 0.0),
            std::exp(-gm * gm)};
}

void require_closed(const ResourceSpec& spec)
{
    if (!closed_form_applicable(spec))
        throw ParameterError(
            "closed-form fidelities need phi = pi, theta = 0 and real gamma >= 0; use the quadrature method");
}

}  // namespace

std::string method_name(FidelityMethod m)
{
    switch (m) {
    case FidelityMethod::closed: return "closed";
    case FidelityMethod::quadrature: return "quadrature";
    case FidelityMethod::gaussian_oracle: return "gaussian-oracle";
    }
    return "unknown";
}

FidelityMethod parse_method(const std::string& name)
{
    for (FidelityMethod m : {FidelityMethod::closed, FidelityMethod::quadrature, FidelityMethod::gaussian_oracle})
        if (method_name(m) == name) return m;
    throw ParameterError("unknown method '" + name + "'");
}

void AlphabetPrior::validate() const
{
    if (!std::isfinite(sigma) || sigma <= 0.0) throw ParameterError("prior sigma must be finite and > 0");
}

double DeltaForm::at(double delta) const
{
    const double c = std::cos(delta);
    const double s = std::sin(delta);
    return (c * c * m00 + 2.0 * c * s * m01 + s * s * m11) / (1.0 + 2.0 * c * s * overlap);
}

DeltaForm& DeltaForm::operator+=(const DeltaForm& o)
{
    m00 += o.m00;
    m01 += o.m01;
    m11 += o.m11;
    overlap = o.overlap;
    return *this;
}

DeltaForm DeltaForm::scaled(double w) const
{
    return {w * m00, w * m01, w * m11, overlap};
}

double fidelity_delta(double r, const NoiseParams& noise, const GainSetting& gain)
{
    return scalars(r, noise, gain).delta;
}

DeltaForm closed_form(Family family, double r, double gamma_mod, const NoiseParams& noise,
                      const GainSetting& gain, cplx beta)
{
    const Scalars s = scalars(r, noise, gain);
    const double b = std::norm(beta);
    const double twin = 4.0 / s.delta * std::exp(-4.0 * s.k * b / s.delta);
    switch (family) {
    case Family::TwinBeam: return {twin, 0.0, 0.0, 0.0};
    case Family::SqueezedBell:
    case Family::PhotonSubtracted: return squeezed_bell_poly(s, b).scaled(twin);
    case Family::BuridanDonkey: return buridan_poly(s, b, (beta * beta).real()).scaled(twin);
    case Family::SqueezedCat: return squeezed_cat_form(s, gamma_mod, beta);
    }
    throw ParameterError("unknown resource family");
}

DeltaForm averaged_closed_form(Family family, double r, double gamma_mod, const NoiseParams& noise,
                               const GainSetting& gain, const AlphabetPrior& prior)
{
    prior.validate();
    const Scalars s = scalars(r, noise, gain);
    if (family == Family::SqueezedCat) return squeezed_cat_form_averaged(s, gamma_mod, prior.sigma);

    // The prior times the twin-beam factor is a Gaussian of variance sigma'; the rest is a
    // polynomial of degree <= 4 in beta, which Gauss-Hermite integrates exactly.
    const double lambda = 1.0 / prior.sigma + 4.0 * s.k / s.delta;
    const double sigma_eff = 1.0 / lambda;
    const double scale = std::sqrt(sigma_eff);
    const double pre = 4.0 / s.delta * sigma_eff / prior.sigma;
    if (family == Family::TwinBeam) return {pre, 0.0, 0.0, 0.0};

    const quad::Rule1D gh = quad::gauss_hermite(60);
    DeltaForm acc;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
        DeltaForm row;
        for (std::size_t j = 0; j < gh.nodes.size(); ++j) {
            const cplx beta(scale * gh.nodes[i], scale * gh.nodes[j]);
            const double b = std::norm(beta);
            const DeltaForm poly = family == Family::BuridanDonkey ? buridan_poly(s, b, (beta * beta).real())
                                                                  : squeezed_bell_poly(s, b);
            row += poly.scaled(gh.weights[j]);
        }
        acc += row.scaled(gh.weights[i]);
    }
    return acc.scaled(pre / M_PI);
}

bool closed_form_applicable(const ResourceSpec& spec)
{
    return std::visit(
        [](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            bool ok = near_angle(s.phi, M_PI);
            if constexpr (std::is_same_v<S, SqueezedBell> || std::is_same_v<S, BuridanDonkey> ||
                          std::is_same_v<S, SqueezedCat>)
                ok = ok && near_angle(s.theta, 0.0);
            if constexpr (std::is_same_v<S, SqueezedCat>)
                ok = ok && near_angle(s.gamma_phase, 0.0);
            return ok;
        },
        spec);
}

double form_delta(const ResourceSpec& spec)
{
    return std::visit(
        [](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, TwinBeam>) return 0.0;
            else if constexpr (std::is_same_v<S, PhotonSubtracted>) return as_squeezed_bell(s).delta;
            else return s.delta;
        },
        spec);
}

double form_gamma(const ResourceSpec& spec)
{
    if (const auto* sc = std::get_if<SqueezedCat>(&spec)) return sc->gamma_mod;
    return 0.0;
}

FidelityReport fidelity_closed(const ResourceSpec& spec, const NoiseParams& noise, const GainSetting& gain,
                               cplx beta)
{
    validate(spec);
    require_closed(spec);
    if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag())) throw ParameterError("beta must be finite");
    FidelityReport rep;
    rep.value = closed_form(family_of(spec), squeezing_of(spec), form_gamma(spec), noise, gain, beta)
                    .at(form_delta(spec));
    rep.method = FidelityMethod::closed;
    rep.spec = spec;
    rep.noise = noise;
    rep.gain = gain;
    rep.beta = beta;
    rep.evaluations = 1;
    return rep;
}

quad::Options fidelity_options()
{
    quad::Options o;
    o.order = 16;
    o.initial_panels = 4;
    o.max_panels = 256;
    o.tolerance = 1e-10;
    o.fail_tolerance = 1e-9;
    return o;
}

quad::Result overlap_integral(const CoherentInput& input, const SingleModeChi& chi, double decay,
                              const quad::Options& opts)
{
    auto f = [&](double x, double p) { return chi_input_coherent(input, {x, p}) * chi({-x, -p}); };
    quad::Result res = quad::integrate_2d(f, quad::Window2D::square(quad::envelope_half_width(decay)), opts);
    res.value /= 2.0 * M_PI;
    res.error_estimate /= 2.0 * M_PI;
    return res;
}

FidelityReport fidelity_quadrature(const CoherentInput& input, const ResourceSpec& spec, const NoiseParams& noise,
                                   const GainSetting& gain, const quad::Options& opts)
{
    validate(spec);
    const double gt = effective_gain(gain, noise);
    const double decay = 0.25 * (1.0 + gt * gt) + 0.5 * gamma_cov(noise, gain);
    auto f = [&](double x, double p) {
        return chi_input_coherent(input, {x, p}) * chi_out(input, spec, noise, gain, {-x, -p});
    };
    const quad::Result res =
        quad::integrate_2d(f, quad::Window2D::square(quad::envelope_half_width(decay)), opts);
    FidelityReport rep;
    rep.value = res.value.real() / (2.0 * M_PI);
    rep.error_estimate = res.error_estimate / (2.0 * M_PI);
    rep.evaluations = res.evaluations;
    rep.method = FidelityMethod::quadrature;
    rep.spec = spec;
    rep.noise = noise;
    rep.gain = gain;
    rep.beta = input.beta;
    return rep;
}

FidelityReport fidelity_gaussian_oracle(const CoherentInput& input, double r, const NoiseParams& noise,
                                        const GainSetting& gain)
{
    const GaussianPipelineResult out = gaussian_pipeline(input, r, noise, gain);
    FidelityReport rep;
    rep.value = gaussian_fidelity(out.output, input.beta);
    rep.method = FidelityMethod::gaussian_oracle;
    rep.spec = TwinBeam{r, M_PI};
    rep.noise = noise;
    rep.gain = gain;
    rep.beta = input.beta;
    rep.evaluations = 1;
    return rep;
}

FidelityReport average_fidelity(const ResourceSpec& spec, const NoiseParams& noise, const GainSetting& gain,
                                const AlphabetPrior& prior)
{
    validate(spec);
    prior.validate();
    if (!closed_form_applicable(spec)) return average_fidelity_quadrature(spec, noise, gain, prior);
    FidelityReport rep;
    rep.value = averaged_closed_form(family_of(spec), squeezing_of(spec), form_gamma(spec), noise, gain, prior)
                    .at(form_delta(spec));
    rep.method = FidelityMethod::closed;
    rep.spec = spec;
    rep.noise = noise;
    rep.gain = gain;
    rep.sigma = prior.sigma;
    rep.evaluations = 1;
    return rep;
}

FidelityReport average_fidelity_quadrature(const ResourceSpec& spec, const NoiseParams& noise,
                                           const GainSetting& gain, const AlphabetPrior& prior,
                                           const quad::Options& opts)
{
    validate(spec);
    prior.validate();
    const double gt = effective_gain(gain, noise);
    const double decay = 0.25 * (1.0 + gt * gt) + 0.5 * gamma_cov(noise, gain);
    // E_beta[e^{(1 - g~)(alpha beta^* - alpha^* beta)}] = e^{-(1 - g~)^2 sigma |alpha|^2}
    const double spread = (1.0 - gt) * (1.0 - gt) * prior.sigma;
    const CoherentInput vacuum{};
    auto f = [&](double x, double p) {
        const double a2 = 0.5 * (x * x + p * p);
        return chi_input_coherent(vacuum, {x, p}) * chi_out(vacuum, spec, noise, gain, {-x, -p}) *
               std::exp(-spread * a2);
    };
    const quad::Result res =
        quad::integrate_2d(f, quad::Window2D::square(quad::envelope_half_width(decay)), opts);
    FidelityReport rep;
    rep.value = res.value.real() / (2.0 * M_PI);
    rep.error_estimate = res.error_estimate / (2.0 * M_PI);
    rep.evaluations = res.evaluations;
    rep.method = FidelityMethod::quadrature;
    rep.spec = spec;
    rep.noise = noise;
    rep.gain = gain;
    rep.sigma = prior.sigma;
    return rep;
}

double classical_benchmark(const AlphabetPrior& prior)
{
    prior.validate();
    return (prior.sigma + 1.0) / (2.0 * prior.sigma + 1.0);
}

}  // namespace telefid
