#include "telefid/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "telefid/phase_space.hpp"

namespace telefid {

namespace {

constexpr double kInfeasible = -std::numeric_limits<double>::infinity();
// Cat cores with 1 + sin(2 delta) e^{-gamma^2} below this are skipped: the form ratio loses
// all precision next to the zero-norm point.
constexpr double kMinCatNorm = 1e-6;

constexpr int kDeltaGrid = 201;
constexpr int kGammaGrid = 201;
constexpr int kAvgGainGrid = 100;
constexpr int kAvgDeltaGrid = 101;
constexpr int kAvgGammaGrid = 51;
constexpr double kParamTol = 1e-8;

// Candidate point; params are compared lexicographically as (delta, gamma, g).
struct Candidate {
    double value = kInfeasible;
    std::array<double, 3> params{};
};

bool better(const Candidate& a, const Candidate& b)
{
    if (a.value != b.value) return a.value > b.value;
    return a.params < b.params;
}

// Refinements must beat the grid by more than rounding, so flat objectives keep the grid choice.
bool improves(const Candidate& refined, const Candidate& grid_best)
{
    return refined.value > grid_best.value + 1e-14 * std::abs(grid_best.value);
}

double grid_point(double lo, double hi, int n, int i)
{
    return lo + (hi - lo) * i / (n - 1);
}

double form_value(const DeltaForm& form, double delta)
{
    const double norm = 1.0 + std::sin(2.0 * delta) * form.overlap;
    if (form.overlap != 0.0 && norm < kMinCatNorm) return kInfeasible;
    return form.at(delta);
}

struct Simplex {
    std::vector<double> x;
    double value;
    int evaluations;
};

// Nelder-Mead maximizer on a box; trial points are clamped into the box.
template <class F>
Simplex nelder_mead_max(F&& f, std::vector<double> x0, std::vector<double> step, const std::vector<double>& lo,
                        const std::vector<double>& hi, double xtol, int max_evals)
{
    const std::size_t n = x0.size();
    auto clamp = [&](std::vector<double> x) {
        for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
        return x;
    };
    std::vector<std::vector<double>> pts{x0};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> v = x0;
        v[i] = x0[i] + step[i] <= hi[i] ? x0[i] + step[i] : x0[i] - step[i];
        pts.push_back(clamp(v));
    }
    std::vector<double> vals;
    int evals = 0;
    for (const auto& p : pts) {
        vals.push_back(f(p));
        ++evals;
    }
    std::vector<std::size_t> order(n + 1);
    while (true) {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
        const auto& best = pts[order[0]];
        double diameter = 0.0;
        for (std::size_t k = 1; k <= n; ++k)
            for (std::size_t i = 0; i < n; ++i) diameter = std::max(diameter, std::abs(pts[order[k]][i] - best[i]));
        if (diameter < xtol || evals >= max_evals) break;

        const std::size_t worst = order[n];
        std::vector<double> centroid(n, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += pts[order[k]][i] / n;
        auto along = [&](double t) {
            std::vector<double> v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = centroid[i] + t * (pts[worst][i] - centroid[i]);
            return clamp(v);
        };
        const auto xr = along(-1.0);
        const double fr = f(xr);
        ++evals;
        if (fr > vals[order[0]]) {
            const auto xe = along(-2.0);
            const double fe = f(xe);
            ++evals;
            if (fe > fr) {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr > vals[order[n - 1]]) {
            pts[worst] = xr;
            vals[worst] = fr;
            continue;
        }
        const auto xc = fr > vals[worst] ? along(-0.5) : along(0.5);
        const double fc = f(xc);
        ++evals;
        if (fc > std::max(fr, vals[worst])) {
            pts[worst] = xc;
            vals[worst] = fc;
            continue;
        }
        const auto anchor = pts[order[0]];
        for (std::size_t k = 1; k <= n; ++k) {
            auto& p = pts[order[k]];
            for (std::size_t i = 0; i < n; ++i) p[i] = anchor[i] + 0.5 * (p[i] - anchor[i]);
            vals[order[k]] = f(p);
            ++evals;
        }
    }
    return {pts[order[0]], vals[order[0]], evals};
}

void check_inputs(double r, const NoiseParams& noise)
{
    noise.validate();
    if (!std::isfinite(r) || r < 0.0) throw ParameterError("squeezing r must be finite and >= 0");
}

void fill_result(OptimizationResult& res, const Candidate& best, bool has_gamma, bool has_gain)
{
    res.best_value = best.value;
    res.delta_opt = best.params[0];
    if (has_gamma) res.gamma_opt = best.params[1];
    if (has_gain) res.gain_opt = best.params[2];
    res.spec = make_resource(res.family, res.r, res.delta_opt, has_gamma ? best.params[1] : 0.0);
}

}  // namespace

ResourceSpec make_resource(Family family, double r, double delta, double gamma_mod)
{
    switch (family) {
    case Family::TwinBeam: return TwinBeam{r, M_PI};
    case Family::SqueezedBell: return SqueezedBell{r, M_PI, delta, 0.0};
    case Family::SqueezedCat: return SqueezedCat{r, M_PI, delta, 0.0, gamma_mod, 0.0};
    case Family::BuridanDonkey: return BuridanDonkey{r, M_PI, delta, 0.0};
    case Family::PhotonSubtracted: return PhotonSubtracted{r, M_PI};
    }
    throw ParameterError("unknown resource family");
}

OptimizationResult optimize_beta_independent(Family family, double r, const NoiseParams& noise,
                                             const SearchBounds& bounds)
{
    check_inputs(r, noise);
    const GainSetting gain = UnityOverT{};
    OptimizationResult res;
    res.family = family;
    res.r = r;
    res.gain = gain;

    if (family == Family::TwinBeam || family == Family::PhotonSubtracted) {
        const ResourceSpec spec = make_resource(family, r);
        res.spec = spec;
        res.delta_opt = form_delta(spec);
        res.best_value = closed_form(family, r, 0.0, noise, gain, 0.0).at(res.delta_opt);
        res.evaluations = 1;
        res.method = "none";
        return res;
    }

    const double dlo = bounds.delta_lo, dhi = bounds.delta_hi;
    const double dstep = (dhi - dlo) / (kDeltaGrid - 1);
    Candidate best;

    if (family != Family::SqueezedCat) {
        const DeltaForm form = closed_form(family, r, 0.0, noise, gain, 0.0);
        auto consider = [&](double d) {
            const Candidate c{form_value(form, d), {d, 0.0, 0.0}};
            if (better(c, best)) best = c;
        };
        for (int i = 0; i < kDeltaGrid; ++i) consider(grid_point(dlo, dhi, kDeltaGrid, i));
        res.evaluations = kDeltaGrid;
        if (family == Family::SqueezedBell) {
            // the photon-subtracted point is part of the search space
            const double pss = std::atan(std::tanh(r));
            if (pss >= dlo && pss <= dhi) consider(pss);
            ++res.evaluations;
        }
        const double x = best.params[0];
        const Maximum1D m = golden_section_max([&](double d) { return form_value(form, d); },
                                               std::max(dlo, x - dstep), std::min(dhi, x + dstep), kParamTol);
        const Candidate refined{form_value(form, m.x), {m.x, 0.0, 0.0}};
        if (improves(refined, best)) best = refined;
        res.evaluations += m.evaluations + 1;
        res.method = "grid+golden";
        fill_result(res, best, false, false);
        return res;
    }

    const double glo = bounds.gamma_lo, ghi = bounds.gamma_hi;
    std::vector<DeltaForm> forms(kGammaGrid);
    for (int j = 0; j < kGammaGrid; ++j)
        forms[j] = closed_form(family, r, grid_point(glo, ghi, kGammaGrid, j), noise, gain, 0.0);
    for (int j = 0; j < kGammaGrid; ++j) {
        const double gm = grid_point(glo, ghi, kGammaGrid, j);
        for (int i = 0; i < kDeltaGrid; ++i) {
            const double d = grid_point(dlo, dhi, kDeltaGrid, i);
            const Candidate c{form_value(forms[j], d), {d, gm, 0.0}};
            if (better(c, best)) best = c;
        }
    }
    res.evaluations = std::int64_t(kGammaGrid) * kDeltaGrid;

    auto objective = [&](const std::vector<double>& v) {
        return form_value(closed_form(family, r, v[1], noise, gain, 0.0), v[0]);
    };
    const double gstep = (ghi - glo) / (kGammaGrid - 1);
    const Simplex s = nelder_mead_max(objective, {best.params[0], best.params[1]}, {dstep, gstep}, {dlo, glo},
                                      {dhi, ghi}, kParamTol, 4000);
    const Candidate refined{s.value, {s.x[0], s.x[1], 0.0}};
    if (improves(refined, best)) best = refined;
    res.evaluations += s.evaluations;
    res.method = "grid+nelder-mead";
    fill_result(res, best, true, false);
    return res;
}

OptimizationResult optimize_gain_average(Family family, double r, const NoiseParams& noise,
                                         const AlphabetPrior& prior, const SearchBounds& bounds)
{
    check_inputs(r, noise);
    prior.validate();
    const double t = noise.transmissivity();
    const double g_hi = bounds.gain_hi_times_t / t;
    const double g_lo = g_hi / (10.0 * kAvgGainGrid);
    const bool has_delta = family != Family::TwinBeam && family != Family::PhotonSubtracted;
    const bool has_gamma = family == Family::SqueezedCat;
    const int n_delta = has_delta ? kAvgDeltaGrid : 1;
    const int n_gamma = has_gamma ? kAvgGammaGrid : 1;
    const double fixed_delta = has_delta ? 0.0 : form_delta(make_resource(family, r));

    OptimizationResult res;
    res.family = family;
    res.r = r;

    // The g~ = 1 optimum is always a candidate.
    const OptimizationResult unity = optimize_beta_independent(family, r, noise, bounds);
    Candidate best{average_fidelity(unity.spec, noise, UnityOverT{}, prior).value,
                   {unity.delta_opt, unity.gamma_opt.value_or(0.0), 1.0 / t}};
    bool unity_wins = true;
    res.evaluations = unity.evaluations + 1;

    auto delta_at = [&](int i) { return has_delta ? grid_point(bounds.delta_lo, bounds.delta_hi, n_delta, i) : fixed_delta; };
    auto gamma_at = [&](int j) { return has_gamma ? grid_point(bounds.gamma_lo, bounds.gamma_hi, n_gamma, j) : 0.0; };
    auto gain_at = [&](int k) { return g_hi * (k + 1) / kAvgGainGrid; };

    std::vector<DeltaForm> forms(std::size_t(kAvgGainGrid) * n_gamma);
#pragma omp parallel for schedule(dynamic) collapse(2)
    for (int k = 0; k < kAvgGainGrid; ++k)
        for (int j = 0; j < n_gamma; ++j)
            forms[std::size_t(k) * n_gamma + j] =
                averaged_closed_form(family, r, gamma_at(j), noise, FixedGain{gain_at(k)}, prior);
    for (int k = 0; k < kAvgGainGrid; ++k)
        for (int j = 0; j < n_gamma; ++j)
            for (int i = 0; i < n_delta; ++i) {
                const Candidate c{form_value(forms[std::size_t(k) * n_gamma + j], delta_at(i)),
                                  {delta_at(i), gamma_at(j), gain_at(k)}};
                if (better(c, best)) {
                    best = c;
                    unity_wins = false;
                }
            }
    res.evaluations += std::int64_t(kAvgGainGrid) * n_gamma * n_delta;

    auto averaged = [&](double delta, double gm, double g) {
        return form_value(averaged_closed_form(family, r, gm, noise, FixedGain{g}, prior), delta);
    };
    const double gstep = (g_hi - g_lo) / kAvgGainGrid;
    if (!has_delta) {
        const double g0 = best.params[2];
        const Maximum1D m = golden_section_max([&](double g) { return averaged(fixed_delta, 0.0, g); },
                                               std::max(g_lo, g0 - gstep), std::min(g_hi, g0 + gstep), kParamTol);
        const Candidate c{m.value, {fixed_delta, 0.0, m.x}};
        if (improves(c, best)) {
            best = c;
            unity_wins = false;
        }
        res.evaluations += m.evaluations;
        res.method = "grid+golden";
    } else {
        const double dstep = (bounds.delta_hi - bounds.delta_lo) / (n_delta - 1);
        std::vector<double> x0{best.params[2], best.params[0]}, step{gstep, dstep}, lo{g_lo, bounds.delta_lo},
            hi{g_hi, bounds.delta_hi};
        if (has_gamma) {
            x0.push_back(best.params[1]);
            step.push_back((bounds.gamma_hi - bounds.gamma_lo) / (n_gamma - 1));
            lo.push_back(bounds.gamma_lo);
            hi.push_back(bounds.gamma_hi);
        }
        auto objective = [&](const std::vector<double>& v) {
            return averaged(v[1], has_gamma ? v[2] : 0.0, v[0]);
        };
        const Simplex s = nelder_mead_max(objective, x0, step, lo, hi, kParamTol, 6000);
        const Candidate c{s.value, {s.x[1], has_gamma ? s.x[2] : 0.0, s.x[0]}};
        if (improves(c, best)) {
            best = c;
            unity_wins = false;
        }
        res.evaluations += s.evaluations;
        res.method = "grid+nelder-mead";
    }

    fill_result(res, best, has_gamma, true);
    if (!has_delta) res.delta_opt = fixed_delta;
    res.gain = unity_wins ? GainSetting{UnityOverT{}} : GainSetting{FixedGain{best.params[2]}};
    return res;
}

FidelityReport one_shot_fidelity(const OptimizationResult& optimum, const NoiseParams& noise, cplx beta)
{
    FidelityReport rep = fidelity_closed(optimum.spec, noise, optimum.gain, beta);
    rep.evaluations = optimum.evaluations + 1;
    return rep;
}

FidelityReport one_shot_fidelity(Family family, double r, const NoiseParams& noise, const AlphabetPrior& prior,
                                 cplx beta, const SearchBounds& bounds)
{
    FidelityReport rep = one_shot_fidelity(optimize_gain_average(family, r, noise, prior, bounds), noise, beta);
    rep.sigma = prior.sigma;
    return rep;
}

std::optional<double> r_max(double tau)
{
    if (std::isnan(tau) || tau < 0.0) throw ParameterError("tau must be >= 0");
    if (tau == 0.0) return std::nullopt;
    if (std::isinf(tau)) return 0.0;
    // e^{2 r_max} = coth(tau/4)
    if (tau < 1.0) return -0.5 * std::log(std::tanh(0.25 * tau));
    return -0.5 * std::log1p(-2.0 / (std::exp(0.5 * tau) + 1.0));
}

AffinityResult affinity(const ResourceSpec& spec)
{
    validate(spec);
    AffinityResult out;
    if (family_of(spec) == Family::BuridanDonkey) {
        // the core has n1 - n2 = +-1, which the squeezer preserves; the twin beam has n1 = n2
        out.value = 0.0;
        return out;
    }

    constexpr int work = 2 * kAffinityCutoff;
    using CVec = Eigen::VectorXcd;
    using CMat = Eigen::MatrixXcd;
    // coefficients on |n, n>
    CVec core = CVec::Zero(work + 1);
    cplx zeta;
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            zeta = std::polar(s.r, s.phi);
            if constexpr (std::is_same_v<S, TwinBeam>) {
                core(0) = 1.0;
            } else if constexpr (std::is_same_v<S, SqueezedBell> || std::is_same_v<S, PhotonSubtracted>) {
                SqueezedBell sb;
                if constexpr (std::is_same_v<S, PhotonSubtracted>) sb = as_squeezed_bell(s);
                else sb = s;
                core(0) = std::cos(sb.delta);
                core(1) = std::polar(std::sin(sb.delta), sb.theta);
            } else if constexpr (std::is_same_v<S, SqueezedCat>) {
                const cplx g2 = std::polar(s.gamma_mod * s.gamma_mod, 2.0 * s.gamma_phase);
                const cplx lead = std::polar(std::sin(s.delta), s.theta) * std::exp(-s.gamma_mod * s.gamma_mod);
                cplx term = 1.0;  // gamma^{2n} / n!
                for (int n = 0; n <= work; ++n) {
                    core(n) = lead * term;
                    term *= g2 / double(n + 1);
                }
                core(0) += std::cos(s.delta);
                core /= std::sqrt(cat_norm_squared_inverse(s));
            }
        },
        spec);

    // exp(-zeta a1+ a2+ + zeta* a1 a2) on span{|n, n>}; H = i G is Hermitian.
    CMat h = CMat::Zero(work + 1, work + 1);
    for (int n = 0; n < work; ++n) {
        h(n + 1, n) = cplx(0.0, 1.0) * (-zeta * double(n + 1));
        h(n, n + 1) = cplx(0.0, 1.0) * (std::conj(zeta) * double(n + 1));
    }
    Eigen::SelfAdjointEigenSolver<CMat> eig(h);
    const CVec phases = (eig.eigenvalues().cast<cplx>() * cplx(0.0, -1.0)).array().exp();
    const CVec psi = eig.eigenvectors() * phases.asDiagonal() * (eig.eigenvectors().adjoint() * core);

    out.tail_weight = psi.tail(work - kAffinityCutoff).squaredNorm();
    out.cutoff_sufficient = out.tail_weight <= 1e-8;

    auto overlap = [&](double rp) {
        const double t = std::tanh(rp);
        double coef = 1.0 / std::cosh(rp);
        cplx acc = 0.0;
        for (int n = 0; n <= work; ++n) {
            acc += coef * psi(n);
            coef *= t;
        }
        return std::norm(acc);
    };
    constexpr int grid = 101;
    constexpr double hi = 5.0;
    double best_r = 0.0, best_v = -1.0;
    for (int i = 0; i < grid; ++i) {
        const double rp = hi * i / (grid - 1);
        const double v = overlap(rp);
        if (v > best_v) {
            best_v = v;
            best_r = rp;
        }
    }
    const double step = hi / (grid - 1);
    const Maximum1D m =
        golden_section_max(overlap, std::max(0.0, best_r - step), std::min(hi, best_r + step), 1e-10);
    if (m.value > best_v) {
        best_v = m.value;
        best_r = m.x;
    }
    out.value = best_v;
    out.r_opt = best_r;
    return out;
}

}  // namespace telefid
