#include <gtest/gtest.h>

#include <cmath>

#include "telefid/fidelity.hpp"
#include "telefid/optimize.hpp"
#include "test_util.hpp"

using namespace telefid;

namespace {

double twin_beam(double r, const NoiseParams& noise)
{
    return fidelity_closed(TwinBeam{r, M_PI}, noise, UnityOverT{}, 0.0).value;
}

double argmax_r(Family f, const NoiseParams& noise)
{
    const auto value = [&](double r) { return optimize_beta_independent(f, r, noise).best_value; };
    double best_r = 0.0, best = -1.0;
    for (int i = 0; i <= 50; ++i)
        if (const double v = value(0.1 * i); v > best) {
            best = v;
            best_r = 0.1 * i;
        }
    return golden_section_max(value, std::max(0.0, best_r - 0.1), best_r + 0.1, 1e-6).x;
}

}  // namespace

TEST(GoldenSection, FindsParabolaPeak)
{
    const Maximum1D m = golden_section_max([](double x) { return -(x - 0.37) * (x - 0.37) + 2.0; }, -1.0, 3.0, 1e-10);
    EXPECT_NEAR(m.x, 0.37, 1e-7);
    EXPECT_NEAR(m.value, 2.0, 1e-15);
}

TEST(RMax, FormulaValues)
{
    EXPECT_FALSE(r_max(0.0).has_value());
    EXPECT_THROW(r_max(-0.1), ParameterError);
    EXPECT_NEAR(*r_max(0.3), 1.296, 5e-4);
    for (double tau : {0.05, 0.3, 1.0, 2.5}) {
        const double c = std::cosh(tau / 2.0);
        EXPECT_NEAR(*r_max(tau), 0.5 * std::log(std::sqrt((c + 1.0) / (c - 1.0))), 1e-12);
    }
    EXPECT_LT(*r_max(40.0), 1e-8);
    EXPECT_GT(*r_max(40.0), 0.0);
}

TEST(RMax, MatchesNumericArgmax)
{
    for (double tau : {0.1, 0.2, 0.3})
        for (double r2 : {0.0, 0.05}) {
            const NoiseParams noise{tau, 0.0, r2};
            const double numeric =
                golden_section_max([&](double r) { return twin_beam(r, noise); }, 0.0, 5.0, 1e-9).x;
            EXPECT_NEAR(numeric, *r_max(tau), 1e-3);
        }
}

TEST(RMax, SharedMaximumAcrossFamilies)
{
    for (double tau : {0.1, 0.2, 0.3}) {
        const NoiseParams noise{tau, 0.0, 0.0};
        const double peak = twin_beam(*r_max(tau), noise);
        for (Family f : {Family::SqueezedBell, Family::SqueezedCat}) {
            EXPECT_NEAR(optimize_beta_independent(f, *r_max(tau), noise).best_value, peak, 1e-6);
            EXPECT_NEAR(argmax_r(f, noise), *r_max(tau), 1e-3) << family_name(f);
        }
    }
}

TEST(BetaIndependent, TwinBeamHasNoSearch)
{
    const NoiseParams noise{0.2, 0.0, 0.05};
    const OptimizationResult res = optimize_beta_independent(Family::TwinBeam, 0.9, noise);
    EXPECT_EQ(res.method, "none");
    EXPECT_NEAR(res.best_value, 4.0 / fidelity_delta(0.9, noise, UnityOverT{}), 1e-14);
}

TEST(BetaIndependent, SqueezedBellBeatsTwinBeamIdeal)
{
    const OptimizationResult res = optimize_beta_independent(Family::SqueezedBell, 0.8, {});
    EXPECT_GT(res.best_value, 1.0 / (1.0 + std::exp(-1.6)) + 1e-4);
    EXPECT_EQ(res.method, "grid+golden");
    EXPECT_EQ(optimize_beta_independent(Family::SqueezedCat, 0.8, {}).method, "grid+nelder-mead");
}

TEST(BetaIndependent, BuridanOptimumAtZeroDelta)
{
    for (double r : {0.2, 0.7, 1.3})
        for (const NoiseParams noise : {NoiseParams{0.3, 0.0, 0.05}, NoiseParams{0.05, 0.2, 0.0}})
            EXPECT_NEAR(optimize_beta_independent(Family::BuridanDonkey, r, noise).delta_opt, 0.0, 1e-6);
}

TEST(BetaIndependent, BuridanFlatWithoutLoss)
{
    for (double r : {0.2, 1.3}) {
        const DeltaForm form = closed_form(Family::BuridanDonkey, r, 0.0, {0.0, 0.0, 0.1}, UnityOverT{}, 0.0);
        for (double d : {-1.2, 0.3, 1.5}) EXPECT_NEAR(form.at(d), form.at(0.0), 1e-14);
        const OptimizationResult res = optimize_beta_independent(Family::BuridanDonkey, r, {0.0, 0.0, 0.1});
        EXPECT_NEAR(res.best_value, form.at(0.0), 1e-14);
    }
}

TEST(BetaIndependent, DominationsOnGrid)
{
    for (const NoiseParams noise : {NoiseParams{}, NoiseParams{0.3, 0.0, 0.05}, NoiseParams{0.1, 0.2, 0.15}})
        for (int i = 0; i <= 20; ++i) {
            const double r = 0.1 * i;
            const double twb = twin_beam(r, noise);
            const double pss = fidelity_closed(PhotonSubtracted{r, M_PI}, noise, UnityOverT{}, 0.0).value;
            const double sb = optimize_beta_independent(Family::SqueezedBell, r, noise).best_value;
            const double sc = optimize_beta_independent(Family::SqueezedCat, r, noise).best_value;
            EXPECT_GE(sb, twb) << r;
            EXPECT_GE(sb, pss) << r;
            EXPECT_GE(sc, twb) << r;
        }
}

TEST(BetaIndependent, ReportedValueMatchesRecompute)
{
    const NoiseParams noise{0.3, 0.0, 0.05};
    for (Family f : testutil::kAllFamilies)
        for (double r : {0.3, 1.1}) {
            const OptimizationResult res = optimize_beta_independent(f, r, noise);
            EXPECT_NEAR(fidelity_closed(res.spec, noise, UnityOverT{}, cplx(0.4, 0.1)).value, res.best_value, 1e-12);
            EXPECT_GE(res.delta_opt, -M_PI / 2);
            EXPECT_LE(res.delta_opt, M_PI / 2);
            if (res.gamma_opt) {
                EXPECT_GE(*res.gamma_opt, 0.0);
                EXPECT_LE(*res.gamma_opt, 5.0);
            }
            EXPECT_GT(res.best_value, 0.0);
            EXPECT_LE(res.best_value, 1.0);
        }
}

TEST(BetaIndependent, PhotonSubtractionCrossing)
{
    const NoiseParams noise{};
    const auto gap = [&](double r) {
        return optimize_beta_independent(Family::SqueezedBell, r, noise).delta_opt - std::atan(std::tanh(r));
    };
    // bracket a sign change of delta_opt - arctan(tanh r) on (0, 1.5]
    double lo = -1.0, hi = -1.0;
    for (int i = 1; i < 150; ++i)
        if (gap(0.01 * i) * gap(0.01 * (i + 1)) <= 0.0) {
            lo = 0.01 * i;
            hi = 0.01 * (i + 1);
            break;
        }
    ASSERT_GT(lo, 0.0);
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        (gap(lo) * gap(mid) <= 0.0 ? hi : lo) = mid;
    }
    EXPECT_NEAR(gap(0.5 * (lo + hi)), 0.0, 1e-4);
}

TEST(GainAverage, AtLeastBetaIndependentOptimum)
{
    const NoiseParams noise{0.3, 0.0, 0.05};
    for (Family f : testutil::kAllFamilies)
        for (double r : {0.4, 1.0}) {
            const double bi = optimize_beta_independent(f, r, noise).best_value;
            const OptimizationResult avg = optimize_gain_average(f, r, noise, {10.0});
            EXPECT_GE(avg.best_value, bi - 1e-14) << family_name(f);
            ASSERT_TRUE(avg.gain_opt.has_value());
            EXPECT_GT(*avg.gain_opt, 0.0);
            EXPECT_LE(*avg.gain_opt, 2.0 / noise.transmissivity() + 1e-12);
            EXPECT_NEAR(average_fidelity(avg.spec, noise, avg.gain, {10.0}).value, avg.best_value, 1e-12);
        }
}

TEST(GainAverage, GainApproachesUnityOverTForBroadPriors)
{
    double prev = 1e9;
    for (double sigma : {10.0, 100.0, 1000.0}) {
        const OptimizationResult res = optimize_gain_average(Family::TwinBeam, 1.0, {}, {sigma});
        const double dist = std::abs(*res.gain_opt - 1.0);
        EXPECT_LT(dist, prev);
        prev = dist;
    }
    EXPECT_LT(prev, 0.01);
}

TEST(GainAverage, SqueezedBellBeatsClassicalBenchmark)
{
    const OptimizationResult res = optimize_gain_average(Family::SqueezedBell, 1.0, {0.3, 0.0, 0.05}, {10.0});
    EXPECT_GT(res.best_value, classical_benchmark({10.0}));
}

TEST(GainAverage, Deterministic)
{
    const NoiseParams noise{0.2, 0.1, 0.05};
    const OptimizationResult a = optimize_gain_average(Family::SqueezedCat, 0.7, noise, {10.0});
    const OptimizationResult b = optimize_gain_average(Family::SqueezedCat, 0.7, noise, {10.0});
    EXPECT_EQ(a.best_value, b.best_value);
    EXPECT_EQ(a.delta_opt, b.delta_opt);
    EXPECT_EQ(a.gamma_opt, b.gamma_opt);
    EXPECT_EQ(a.gain_opt, b.gain_opt);
}

TEST(OneShot, UsesAveragedOptimum)
{
    const NoiseParams noise{0.3, 0.0, 0.05};
    const OptimizationResult opt = optimize_gain_average(Family::SqueezedBell, 1.0, noise, {10.0});
    const FidelityReport rep = one_shot_fidelity(Family::SqueezedBell, 1.0, noise, {10.0}, 1.0);
    EXPECT_NEAR(rep.value, fidelity_closed(opt.spec, noise, opt.gain, 1.0).value, 1e-14);
    EXPECT_NEAR(one_shot_fidelity(opt, noise, 1.0).value, rep.value, 1e-14);
}

TEST(OneShot, EqualsBetaIndependentWhenOptimalGainIsUnity)
{
    const NoiseParams noise{0.3, 0.0, 0.05};
    OptimizationResult opt = optimize_beta_independent(Family::SqueezedBell, 0.9, noise);
    opt.gain = UnityOverT{};
    for (double b : {0.0, 1.0, 5.0})
        EXPECT_NEAR(one_shot_fidelity(opt, noise, b).value, opt.best_value, 1e-12);
}

TEST(Affinity, TwinBeamIsOne)
{
    const AffinityResult a = affinity(TwinBeam{0.9, M_PI});
    EXPECT_NEAR(a.value, 1.0, 1e-10);
    EXPECT_NEAR(a.r_opt, 0.9, 1e-4);
    EXPECT_TRUE(a.cutoff_sufficient);
}

TEST(Affinity, SqueezedBellMatchesAnalytic)
{
    for (double r : {0.3, 0.8})
        for (double delta : {0.4, -0.9, M_PI / 2}) {
            const auto overlap = [&](double rp) {
                const double s = r - rp;
                const double amp = std::cos(delta) - std::sin(delta) * std::tanh(s);
                return amp * amp / (std::cosh(s) * std::cosh(s));
            };
            double best = 0.0, best_rp = 0.0;
            for (int i = 0; i <= 5000; ++i)
                if (const double v = overlap(0.001 * i); v > best) {
                    best = v;
                    best_rp = 0.001 * i;
                }
            const Maximum1D m =
                golden_section_max(overlap, std::max(0.0, best_rp - 0.001), std::min(5.0, best_rp + 0.001), 1e-12);
            const AffinityResult a = affinity(SqueezedBell{r, M_PI, delta, 0.0});
            EXPECT_NEAR(a.value, m.value, 1e-8) << r << " " << delta;
            EXPECT_TRUE(a.cutoff_sufficient);
        }
    EXPECT_LT(affinity(SqueezedBell{0.8, M_PI, M_PI / 2, 0.0}).value, 1.0 - 1e-3);
}

TEST(Affinity, CatReducesToTwinBeam)
{
    EXPECT_NEAR(affinity(SqueezedCat{0.6, M_PI, 0.5, 0.0, 1e-9, 0.0}).value, 1.0, 1e-8);
    EXPECT_LT(affinity(SqueezedCat{0.6, M_PI, 0.5, 0.0, 1.5, 0.0}).value, 1.0);
}

TEST(Affinity, BuridanIsOrthogonal)
{
    EXPECT_EQ(affinity(BuridanDonkey{0.6, M_PI, 0.3, 0.0}).value, 0.0);
}

TEST(Affinity, FlagsInsufficientCutoff)
{
    const AffinityResult a = affinity(SqueezedBell{3.0, M_PI, 0.4, 0.0});
    EXPECT_FALSE(a.cutoff_sufficient);
    EXPECT_GT(a.tail_weight, 1e-8);
}

TEST(MakeResource, ClosedFormPhases)
{
    const ResourceSpec s = make_resource(Family::SqueezedCat, 0.4, 0.3, 1.2);
    const auto& sc = std::get<SqueezedCat>(s);
    EXPECT_EQ(sc.phi, M_PI);
    EXPECT_EQ(sc.theta, 0.0);
    EXPECT_EQ(sc.gamma_mod, 1.2);
    EXPECT_TRUE(closed_form_applicable(s));
}
