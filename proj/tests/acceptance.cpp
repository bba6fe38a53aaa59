// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "telefid/fidelity.hpp"
#include "telefid/gaussian_pipeline.hpp"
#include "telefid/optimize.hpp"
#include "telefid/phase_space.hpp"
#include "telefid/protocol.hpp"
#include "telefid/sweep.hpp"
#include "test_util.hpp"

using namespace telefid;
using testutil::uniform;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

NoiseParams random_noise()
{
    return {uniform(0, 0.5), uniform(0, 0.5), uniform(0, 0.2)};
}

Outcome closed_vs_quadrature()
{
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (Family f : testutil::kAllFamilies)
        for (int k = 0; k < 200; ++k) {
            const ResourceSpec spec = testutil::random_spec(f, 1.5, true);
            const NoiseParams noise = random_noise();
            const GainSetting gain = FixedGain{uniform(0.5, 1.5) / noise.transmissivity()};
            const cplx beta = testutil::random_disk(3.0);
            const double a = fidelity_closed(spec, noise, gain, beta).value;
            const double b = fidelity_quadrature({beta}, spec, noise, gain).value;
            worst = std::max(worst, std::abs(a - b));
        }
    const double t = seconds_since(t0);
    return {worst <= 1e-8 && t <= 120.0, fmt("max |closed - quadrature| = %.3g", worst) + fmt(" over 1000 points, %.1f s", t)};
}

Outcome gaussian_anchor()
{
    double worst = 0.0;
    for (double r : {0.0, 0.5, 1.0, 1.5})
        worst = std::max(worst, std::abs(fidelity_closed(TwinBeam{r, M_PI}, {}, UnityOverT{}, 0.0).value -
                                         1.0 / (1.0 + std::exp(-2.0 * r))));
    const double at_zero = fidelity_closed(TwinBeam{0.0, M_PI}, {}, UnityOverT{}, 0.0).value;
    return {worst <= 1e-12 && at_zero == 0.5, fmt("max deviation %.3g", worst) + fmt(", F(r=0) = %.17g", at_zero)};
}

Outcome covariance_oracle()
{
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double r = uniform(0, 1.5);
        const NoiseParams noise = random_noise();
        const GainSetting gain = FixedGain{uniform(0.5, 1.5) / noise.transmissivity()};
        const cplx beta = testutil::random_disk(3.0);
        worst = std::max(worst, std::abs(fidelity_gaussian_oracle({beta}, r, noise, gain).value -
                                         fidelity_closed(TwinBeam{r, M_PI}, noise, gain, beta).value));
    }
    return {worst <= 1e-10, fmt("max deviation %.3g over 100 points", worst)};
}

Outcome measurement_average()
{
    const auto t0 = Clock::now();
    const NoiseParams noise{0.2, 0.0, 0.05};
    const CoherentInput in{cplx(0.6, -0.4)};
    const std::vector<PhasePoint> pts{{0.0, 0.0}, {0.5, 0.0}, {-0.3, 0.8}, {1.0, -0.6}, {0.2, 1.4}};
    double worst = 0.0;
    for (const ResourceSpec& spec : {ResourceSpec{TwinBeam{0.8, M_PI}}, ResourceSpec{SqueezedBell{0.8, M_PI, 0.3, 0.0}}})
        for (const PhasePoint& pt : pts)
            worst = std::max(worst, std::abs(chi_out_via_measurement_average(in, spec, noise, FixedGain{1.0}, pt) -
                                             chi_out(in, spec, noise, FixedGain{1.0}, pt)));
    const double t = seconds_since(t0);
    return {worst <= 1e-5 && t <= 600.0, fmt("max |chi_avg - chi_out| = %.3g", worst) + fmt(", %.1f s", t)};
}

Outcome beta_independence()
{
    double worst = 0.0;
    for (Family f : testutil::kAllFamilies)
        for (int k = 0; k < 20; ++k) {
            const ResourceSpec spec = testutil::random_spec(f, 1.5, true);
            const NoiseParams noise = random_noise();
            const double ref = fidelity_closed(spec, noise, UnityOverT{}, 0.0).value;
            for (int i = -5; i <= 5; ++i)
                for (int j = -5; j <= 5; ++j)
                    worst = std::max(worst, std::abs(fidelity_closed(spec, noise, UnityOverT{}, cplx(i, j)).value - ref));
        }
    // the overlap quadrature does not cancel the beta dependence symbolically
    double worst_quad = 0.0;
    for (Family f : testutil::kAllFamilies)
        for (int k = 0; k < 2; ++k) {
            const ResourceSpec spec = testutil::random_spec(f, 1.5, true);
            const NoiseParams noise = random_noise();
            const double ref = fidelity_quadrature({0.0}, spec, noise, UnityOverT{}).value;
            for (const cplx beta : {cplx(1.0, 0.0), cplx(-2.0, 1.5), cplx(0.3, -3.0)})
                worst_quad = std::max(worst_quad, std::abs(fidelity_quadrature({beta}, spec, noise, UnityOverT{}).value - ref));
        }
    return {worst <= 1e-12 && worst_quad <= 1e-12, fmt("max deviation over an 11x11 beta grid %.3g", worst) +
                                                      fmt(" (closed), %.3g (quadrature)", worst_quad)};
}

Outcome r_max_law()
{
    double worst_arg = 0.0, worst_shared = 0.0;
    for (double tau : {0.1, 0.2, 0.3}) {
        const NoiseParams noise{tau, 0.0, 0.0};
        const auto twb = [&](double r) { return optimize_beta_independent(Family::TwinBeam, r, noise).best_value; };
        const Maximum1D m = golden_section_max(twb, 0.0, 5.0, 1e-9);
        worst_arg = std::max(worst_arg, std::abs(m.x - *r_max(tau)));
        for (Family f : {Family::SqueezedBell, Family::SqueezedCat}) {
            const auto fam = [&](double r) { return optimize_beta_independent(f, r, noise).best_value; };
            const Maximum1D mf = golden_section_max(fam, 0.5, 2.5, 1e-6);
            worst_arg = std::max(worst_arg, std::abs(mf.x - *r_max(tau)));
            worst_shared = std::max(worst_shared, std::abs(mf.value - m.value));
        }
    }
    const double at3 = *r_max(0.3);
    const bool ok = worst_arg <= 1e-3 && worst_shared <= 1e-6 && std::abs(at3 - 1.296) < 5e-4;
    return {ok, fmt("r_max(0.3) = %.6f", at3) + fmt(", max argmax error %.3g", worst_arg) +
                    fmt(", max shared-peak spread %.3g", worst_shared)};
}

Outcome dominations()
{
    int violations = 0;
    double worst_reduction = 0.0;
    for (const NoiseParams noise : {NoiseParams{}, NoiseParams{0.3, 0.0, 0.05}, NoiseParams{0.1, 0.2, 0.15},
                                    NoiseParams{0.5, 0.5, 0.2}})
        for (int i = 0; i <= 80; ++i) {
            const double r = 2.0 * i / 80.0;
            const double twb = optimize_beta_independent(Family::TwinBeam, r, noise).best_value;
            const double pss = optimize_beta_independent(Family::PhotonSubtracted, r, noise).best_value;
            const double sb = optimize_beta_independent(Family::SqueezedBell, r, noise).best_value;
            const double sc = optimize_beta_independent(Family::SqueezedCat, r, noise).best_value;
            violations += (sb < twb) + (sb < pss) + (sc < twb);
        }
    for (int k = 0; k < 200; ++k) {
        const double r = uniform(0, 1.5);
        const NoiseParams noise = random_noise();
        const GainSetting gain = FixedGain{uniform(0.5, 1.5) / noise.transmissivity()};
        const cplx beta = testutil::random_disk(3.0);
        const double twb = fidelity_closed(TwinBeam{r, M_PI}, noise, gain, beta).value;
        const double d = uniform(-1.5, 1.5), g = uniform(0.0, 2.0);
        for (const ResourceSpec& s : {ResourceSpec{SqueezedBell{r, M_PI, 0.0, 0.0}},
                                      ResourceSpec{SqueezedCat{r, M_PI, 0.0, 0.0, g, 0.0}},
                                      ResourceSpec{SqueezedCat{r, M_PI, d, 0.0, 0.0, 0.0}}})
            worst_reduction = std::max(worst_reduction, std::abs(fidelity_closed(s, noise, gain, beta).value - twb));
    }
    return {violations == 0 && worst_reduction <= 1e-12,
            fmt("%.0f violations on 4x81 grid points", violations) + fmt(", max reduction error %.3g", worst_reduction)};
}

Outcome benchmarks()
{
    const double b10 = classical_benchmark({10.0}), b100 = classical_benchmark({100.0});
    const bool ok = std::abs(b10 - 11.0 / 21.0) < 1e-15 && std::abs(b100 - 101.0 / 201.0) < 1e-15 &&
                    std::floor(b10 * 1000.0) == 523.0 && std::floor(b100 * 1000.0) == 502.0;
    return {ok, fmt("F_cl(10) = %.6f", b10) + fmt(", F_cl(100) = %.6f", b100)};
}

Outcome figure4_claim()
{
    double best = 0.0;
    for (const ResultRow& row : run_figure_preset("4")) best = std::max(best, row.fidelity);
    return {best < 0.8, fmt("max optimal fidelity at tau=0.3, R^2=0.05 over r in [0,2]: %.6f", best)};
}

Outcome figure5_claim()
{
    const NoiseParams noise{0.3, 0.0, 0.05};
    const AlphabetPrior prior{10.0};
    double best = 0.0;
    for (int i = 0; i <= 40; ++i)
        best = std::max(best, one_shot_fidelity(Family::SqueezedBell, 0.8 + 0.01 * i, noise, prior, 1.0).value);
    const double small_r = one_shot_fidelity(Family::SqueezedBell, 0.1, noise, prior, 1.0).value;
    return {best > 0.8 && small_r > classical_benchmark(prior),
            fmt("max over r in [0.8,1.2]: %.6f", best) + fmt(", at r=0.1: %.6f", small_r)};
}

Outcome pde_residual()
{
    const CoherentInput coh{cplx(0.4, -0.3)};
    const SqueezedBell sb{0.6, M_PI, 0.5, 0.0};
    // reduced mode-2 state of a squeezed Bell resource, displaced
    const SingleModeChi chi = [&](PhasePoint q) { return chi_resource(sb, {{0.0, 0.0}, q}) * chi_input_coherent(coh, q); };
    const double n = 0.25, h = 1e-4;
    double worst = 0.0;
    for (int it = 0; it < 5; ++it) {
        const double tau = 0.1 + 0.2 * it;
        for (int ix = 0; ix < 20; ++ix)
            for (int ip = 0; ip < 20; ++ip) {
                const double x = -3.0 + 6.0 * ix / 19.0, p = -3.0 + 6.0 * ip / 19.0;
                const auto f = [&](double t, double xx, double pp) { return propagate_lossy(chi, t, n, {xx, pp}); };
                const cplx dt = (f(tau + h, x, p) - f(tau - h, x, p)) / (2 * h);
                const cplx dx = (f(tau, x + h, p) - f(tau, x - h, p)) / (2 * h);
                const cplx dp = (f(tau, x, p + h) - f(tau, x, p - h)) / (2 * h);
                const cplx rhs = -0.5 * (x * dx + p * dp) - 0.5 * (0.5 + n) * (x * x + p * p) * f(tau, x, p);
                worst = std::max(worst, std::abs(dt - rhs));
            }
    }
    return {worst <= 1e-6, fmt("max residual %.3g on a 20x20x5 grid", worst)};
}

Outcome presets()
{
    std::string detail;
    bool ok = true;
    for (const std::string& tag : figure_tags()) {
        const auto t0 = Clock::now();
        const std::vector<ResultRow> first = run_figure_preset(tag);
        const double t = seconds_since(t0);
        const std::vector<ResultRow> second = run_figure_preset(tag);
        const double budget = tag[0] == '3' || tag[0] == '4' ? 300.0 : 1800.0;
        const bool same = first == second;
        ok = ok && same && t <= budget && !first.empty();
        detail += tag + fmt(" %.1fs", t) + (same ? "" : " (nondeterministic)") + "; ";
    }
    detail.resize(detail.size() - 2);
    return {ok, detail};
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"closed form vs quadrature", closed_vs_quadrature},
        {"twin-beam ideal anchor", gaussian_anchor},
        {"covariance-matrix oracle", covariance_oracle},
        {"measurement-average oracle", measurement_average},
        {"beta independence at g = 1/T", beta_independence},
        {"r_max law and shared maximum", r_max_law},
        {"subcase dominations and reductions", dominations},
        {"classical benchmarks", benchmarks},
        {"figure 4 stays below 0.8", figure4_claim},
        {"figure 5 one-shot claims", figure5_claim},
        {"lossy-channel diffusion residual", pde_residual},
        {"figure presets deterministic and in budget", presets},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
