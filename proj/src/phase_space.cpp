#include "telefid/phase_space.hpp"

#include <array>
#include <cmath>
#include <string>

namespace telefid {

namespace {

bool finite(double v) { return std::isfinite(v); }

struct FockTerm {
    int m1;
    int m2;
    cplx coef;
};

// cos(delta)|a1,a2> + e^{i theta} sin(delta)|b1,b2>
std::array<FockTerm, 2> fock_core(int a1, int a2, int b1, int b2, double delta, double theta)
{
    return {FockTerm{a1, a2, std::cos(delta)}, FockTerm{b1, b2, std::polar(std::sin(delta), theta)}};
}

cplx chi_fock_core(const std::array<FockTerm, 2>& core, cplx xi1, cplx xi2)
{
    cplx total = 0.0;
    for (const auto& bra : core) {
        if (bra.coef == 0.0) continue;
        for (const auto& ket : core) {
            if (ket.coef == 0.0) continue;
            total += std::conj(bra.coef) * ket.coef * fock_displacement_element(bra.m1, ket.m1, xi1) *
                     fock_displacement_element(bra.m2, ket.m2, xi2);
        }
    }
    return total;
}

cplx squeeze_parameter(double r, double phi) { return std::polar(r, phi); }

}  // namespace

double laguerre(int n, int k, double x)
{
    if (n < 0 || n > kMaxFockIndex)
        throw ParameterError("laguerre: order n=" + std::to_string(n) + " outside [0, 64]");
    if (k < -n)
        throw ParameterError("laguerre: parameter k must be >= -n");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + k - x;
    for (int j = 1; j < n; ++j) {
        const double next = ((2.0 * j + 1.0 + k - x) * cur - (j + k) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

cplx fock_displacement_element(int m, int n, cplx alpha)
{
    if (m < 0 || n < 0 || m > kMaxFockIndex || n > kMaxFockIndex)
        throw ParameterError("fock_displacement_element: Fock index outside [0, 64]");
    if (m < n)
        return std::conj(fock_displacement_element(n, m, -alpha));
    const double a2 = std::norm(alpha);
    double ratio = 1.0;  // n!/m!
    for (int j = n + 1; j <= m; ++j) ratio /= j;
    cplx power = 1.0;
    for (int j = 0; j < m - n; ++j) power *= alpha;
    return std::sqrt(ratio) * power * std::exp(-0.5 * a2) * laguerre(n, m - n, a2);
}

cplx coherent_displacement_element(cplx a, cplx xi, cplx b)
{
    // D(xi)|b> = e^{(xi b^* - xi^* b)/2} |xi + b>, and <a|c> = e^{-|a|^2/2 - |c|^2/2 + a^* c}.
    // Collecting terms: <a|b> e^{-|xi|^2/2} e^{a^* xi - b xi^*}.
    const cplx overlap = std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
    return overlap * std::exp(-0.5 * std::norm(xi) + std::conj(a) * xi - b * std::conj(xi));
}

std::pair<cplx, cplx> bogoliubov_args(cplx zeta, cplx alpha1, cplx alpha2)
{
    const double r = std::abs(zeta);
    const cplx phase = r > 0.0 ? zeta / r : cplx(1.0);
    const double c = std::cosh(r);
    const double s = std::sinh(r);
    return {c * alpha1 + phase * s * std::conj(alpha2), c * alpha2 + phase * s * std::conj(alpha1)};
}

cplx chi_input_coherent(const CoherentInput& input, PhasePoint pt)
{
    const cplx a = pt.alpha();
    const cplx b = input.beta;
    return std::exp(-0.5 * std::norm(a) + a * std::conj(b) - std::conj(a) * b);
}

double cat_norm_squared_inverse(const SqueezedCat& sc)
{
    return 1.0 + std::exp(-sc.gamma_mod * sc.gamma_mod) * std::sin(2.0 * sc.delta) * std::cos(sc.theta);
}

SqueezedBell as_squeezed_bell(const PhotonSubtracted& pss)
{
    // a1 a2 S|0,0> ~ S(|0,0> - e^{i phi} tanh r |1,1>) up to a global phase.
    return SqueezedBell{pss.r, pss.phi, std::atan(std::tanh(pss.r)), pss.phi + M_PI};
}

Family family_of(const ResourceSpec& spec)
{
    return static_cast<Family>(spec.index());
}

double squeezing_of(const ResourceSpec& spec)
{
    return std::visit([](const auto& s) { return s.r; }, spec);
}

std::string family_name(Family f)
{
    switch (f) {
    case Family::TwinBeam: return "twin-beam";
    case Family::SqueezedBell: return "squeezed-bell";
    case Family::SqueezedCat: return "squeezed-cat";
    case Family::BuridanDonkey: return "buridan";
    case Family::PhotonSubtracted: return "photon-subtracted";
    }
    return "unknown";
}

Family parse_family(const std::string& name)
{
    for (Family f : {Family::TwinBeam, Family::SqueezedBell, Family::SqueezedCat, Family::BuridanDonkey,
                     Family::PhotonSubtracted})
        if (family_name(f) == name) return f;
    throw ParameterError("unknown resource family '" + name + "'");
}

void validate(const ResourceSpec& spec)
{
    std::visit(
        [](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if (!finite(s.r) || s.r < 0.0) throw ParameterError("squeezing r must be finite and >= 0");
            if (!finite(s.phi)) throw ParameterError("squeezing phase must be finite");
            if constexpr (!std::is_same_v<S, TwinBeam> && !std::is_same_v<S, PhotonSubtracted>) {
                if (!finite(s.delta) || !finite(s.theta)) throw ParameterError("delta and theta must be finite");
            }
            if constexpr (std::is_same_v<S, SqueezedCat>) {
                if (!finite(s.gamma_mod) || s.gamma_mod < 0.0 || !finite(s.gamma_phase))
                    throw ParameterError("gamma modulus must be finite and >= 0");
                if (cat_norm_squared_inverse(s) < 1e-12)
                    throw ParameterError("squeezed-cat core state has zero norm");
            }
        },
        spec);
}

cplx chi_resource(const ResourceSpec& spec, const TwoModePhasePoint& pt)
{
    const cplx a1 = pt.m1.alpha();
    const cplx a2 = pt.m2.alpha();
    return std::visit(
        [&](const auto& s) -> cplx {
            using S = std::decay_t<decltype(s)>;
            const auto [xi1, xi2] = bogoliubov_args(squeeze_parameter(s.r, s.phi), a1, a2);
            if constexpr (std::is_same_v<S, TwinBeam>) {
                return std::exp(-0.5 * (std::norm(xi1) + std::norm(xi2)));
            } else if constexpr (std::is_same_v<S, SqueezedBell>) {
                return chi_fock_core(fock_core(0, 0, 1, 1, s.delta, s.theta), xi1, xi2);
            } else if constexpr (std::is_same_v<S, BuridanDonkey>) {
                return chi_fock_core(fock_core(0, 1, 1, 0, s.delta, s.theta), xi1, xi2);
            } else if constexpr (std::is_same_v<S, PhotonSubtracted>) {
                const SqueezedBell sb = as_squeezed_bell(s);
                return chi_fock_core(fock_core(0, 0, 1, 1, sb.delta, sb.theta), xi1, xi2);
            } else {
                const cplx gamma = std::polar(s.gamma_mod, s.gamma_phase);
                const std::array<cplx, 2> amp{cplx(0.0), gamma};
                const std::array<cplx, 2> coef{cplx(std::cos(s.delta)), std::polar(std::sin(s.delta), s.theta)};
                cplx total = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        total += std::conj(coef[a]) * coef[b] * coherent_displacement_element(amp[a], xi1, amp[b]) *
                                 coherent_displacement_element(amp[a], xi2, amp[b]);
                return total / cat_norm_squared_inverse(s);
            }
        },
        spec);
}

}  // namespace telefid
