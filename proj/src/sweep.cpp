#include "telefid/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace telefid {

namespace {

constexpr int kFigureSteps = 81;

bool has_delta(Family f)
{
    return f == Family::SqueezedBell || f == Family::SqueezedCat || f == Family::BuridanDonkey;
}

ResultRow base_row(const PointSpec& pt)
{
    ResultRow row;
    row.resource = family_name(pt.family);
    row.r = pt.r;
    row.tau = pt.noise.tau;
    row.nth = pt.noise.n_th;
    row.r2 = pt.noise.r2;
    return row;
}

ResultRow optimum_row(const PointSpec& pt, const OptimizationResult& opt)
{
    ResultRow row = base_row(pt);
    row.gain = opt.gain_opt ? *opt.gain_opt : gain_value(UnityOverT{}, pt.noise);
    if (has_delta(pt.family)) row.delta_opt = opt.delta_opt;
    row.gamma_opt = opt.gamma_opt;
    row.method = method_name(FidelityMethod::closed);
    row.fidelity = opt.best_value;
    return row;
}

// A sweep task produces a block of rows; blocks are concatenated in task order.
std::vector<ResultRow> run_tasks(const std::vector<std::function<std::vector<ResultRow>()>>& tasks)
{
    std::vector<std::vector<ResultRow>> blocks(tasks.size());
    const auto n = static_cast<long>(tasks.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            blocks[i] = tasks[i]();
        } catch (...) {
#pragma omp critical(telefid_sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    std::vector<ResultRow> rows;
    for (auto& b : blocks) rows.insert(rows.end(), b.begin(), b.end());
    return rows;
}

std::vector<double> figure_axis()
{
    std::vector<double> v(kFigureSteps);
    for (int i = 0; i < kFigureSteps; ++i) v[i] = 2.0 * i / (kFigureSteps - 1);
    return v;
}

PointSpec figure_point(Family f, double r, double tau, double r2)
{
    PointSpec pt;
    pt.family = f;
    pt.r = r;
    pt.noise = {tau, 0.0, r2};
    return pt;
}

// Figures 3 and 4: beta-independent optima against r, one curve per noise setting.
std::vector<ResultRow> optimum_curves(const std::vector<Family>& families, const std::vector<NoiseParams>& curves)
{
    std::vector<std::function<std::vector<ResultRow>()>> tasks;
    for (Family f : families)
        for (const NoiseParams& noise : curves)
            for (double r : figure_axis())
                tasks.push_back([=] {
                    PointSpec pt = figure_point(f, r, noise.tau, noise.r2);
                    return evaluate_point(pt, SweepKind::optimize);
                });
    return run_tasks(tasks);
}

// Figures 5 and 6: one-shot fidelities; the optimization at each point is shared by all betas.
std::vector<ResultRow> one_shot_curves(bool vary_r, double sigma, const std::vector<double>& betas)
{
    const std::vector<Family> families{Family::SqueezedBell, Family::SqueezedCat, Family::TwinBeam};
    const std::vector<double> axis = figure_axis();
    std::vector<std::function<std::vector<ResultRow>()>> tasks;
    for (Family f : families)
        for (double v : axis)
            tasks.push_back([=] {
                PointSpec pt = vary_r ? figure_point(f, v, 0.3, 0.05) : figure_point(f, 0.8, v, 0.05);
                pt.sigma = sigma;
                std::vector<cplx> bs(betas.begin(), betas.end());
                return evaluate_point(pt, SweepKind::optimize, bs);
            });
    const std::vector<ResultRow> flat = run_tasks(tasks);
    // flat is (family, axis, beta); reorder to (family, beta, axis)
    std::vector<ResultRow> rows;
    const std::size_t nb = betas.size(), na = axis.size();
    for (std::size_t fi = 0; fi < families.size(); ++fi)
        for (std::size_t b = 0; b < nb; ++b)
            for (std::size_t a = 0; a < na; ++a) rows.push_back(flat[(fi * na + a) * nb + b]);
    return rows;
}

}  // namespace

ResourceSpec PointSpec::resource() const
{
    switch (family) {
    case Family::TwinBeam: return TwinBeam{r, phi};
    case Family::SqueezedBell: return SqueezedBell{r, phi, delta, theta};
    case Family::SqueezedCat: return SqueezedCat{r, phi, delta, theta, gamma_mod, 0.0};
    case Family::BuridanDonkey: return BuridanDonkey{r, phi, delta, theta};
    case Family::PhotonSubtracted: return PhotonSubtracted{r, phi};
    }
    throw ParameterError("unknown resource family");
}

std::vector<ResultRow> evaluate_point(const PointSpec& pt, SweepKind kind, const std::vector<cplx>& betas)
{
    const std::vector<cplx> bs = betas.empty() ? std::vector<cplx>{pt.beta} : betas;
    std::vector<ResultRow> rows;

    if (kind == SweepKind::optimize) {
        if (!pt.sigma) {
            rows.push_back(optimum_row(pt, optimize_beta_independent(pt.family, pt.r, pt.noise)));
            return rows;
        }
        const AlphabetPrior prior{*pt.sigma};
        const OptimizationResult opt = optimize_gain_average(pt.family, pt.r, pt.noise, prior);
        ResultRow avg = optimum_row(pt, opt);
        avg.sigma = prior.sigma;
        if (betas.empty()) {
            rows.push_back(avg);
            return rows;
        }
        for (cplx b : bs) {
            ResultRow row = avg;
            row.beta_re = b.real();
            row.beta_im = b.imag();
            row.fidelity = one_shot_fidelity(opt, pt.noise, b).value;
            rows.push_back(row);
        }
        return rows;
    }

    const ResourceSpec spec = pt.resource();
    ResultRow proto = base_row(pt);
    proto.gain = gain_value(pt.gain, pt.noise);
    if (has_delta(pt.family)) proto.delta_opt = pt.delta;
    if (pt.family == Family::SqueezedCat) proto.gamma_opt = pt.gamma_mod;
    proto.method = method_name(pt.method);

    if (pt.sigma) {
        const AlphabetPrior prior{*pt.sigma};
        ResultRow row = proto;
        row.sigma = prior.sigma;
        if (pt.method == FidelityMethod::quadrature) {
            row.fidelity = average_fidelity_quadrature(spec, pt.noise, pt.gain, prior).value;
        } else {
            validate(spec);
            if (!closed_form_applicable(spec))
                throw ParameterError("closed-form fidelities need phi = pi, theta = 0; use the quadrature method");
            row.fidelity = average_fidelity(spec, pt.noise, pt.gain, prior).value;
        }
        rows.push_back(row);
        return rows;
    }
    for (cplx b : bs) {
        ResultRow row = proto;
        row.beta_re = b.real();
        row.beta_im = b.imag();
        row.fidelity = pt.method == FidelityMethod::quadrature
                           ? fidelity_quadrature(CoherentInput{b}, spec, pt.noise, pt.gain).value
                           : fidelity_closed(spec, pt.noise, pt.gain, b).value;
        rows.push_back(row);
    }
    return rows;
}

void SweepSpec::validate() const
{
    if (std::find(sweep_axes().begin(), sweep_axes().end(), axis) == sweep_axes().end())
        throw ParameterError("unknown sweep axis '" + axis + "'");
    if (steps < 2) throw ParameterError("sweep needs at least 2 steps");
    if (!(from < to) || !std::isfinite(from) || !std::isfinite(to))
        throw ParameterError("sweep range needs finite from < to");
}

double SweepSpec::value_at(int i) const
{
    return i == steps - 1 ? to : from + (to - from) * i / (steps - 1);
}

PointSpec with_axis(PointSpec pt, const std::string& axis, double value)
{
    if (axis == "r") pt.r = value;
    else if (axis == "tau") pt.noise.tau = value;
    else if (axis == "nth") pt.noise.n_th = value;
    else if (axis == "r2") pt.noise.r2 = value;
    else if (axis == "gain") pt.gain = FixedGain{value};
    else if (axis == "sigma") pt.sigma = value;
    else if (axis == "beta_re") pt.beta = {value, pt.beta.imag()};
    else if (axis == "beta_im") pt.beta = {pt.beta.real(), value};
    else if (axis == "delta") pt.delta = value;
    else if (axis == "gamma") pt.gamma_mod = value;
    else throw ParameterError("unknown sweep axis '" + axis + "'");
    return pt;
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec)
{
    spec.validate();
    if (spec.axis.rfind("beta_", 0) == 0 && !spec.betas.empty())
        throw ParameterError("cannot sweep a beta axis together with a beta list");
    std::vector<std::function<std::vector<ResultRow>()>> tasks;
    for (int i = 0; i < spec.steps; ++i) {
        const PointSpec pt = with_axis(spec.base, spec.axis, spec.value_at(i));
        tasks.push_back([pt, &spec] { return evaluate_point(pt, spec.kind, spec.betas); });
    }
    return run_tasks(tasks);
}

std::vector<ResultRow> run_figure_preset(const std::string& tag)
{
    const std::vector<Family> four{Family::SqueezedBell, Family::SqueezedCat, Family::TwinBeam,
                                   Family::BuridanDonkey};
    if (tag == "3-I") {
        std::vector<NoiseParams> curves;
        for (double r2 : {0.0, 0.05, 0.1, 0.15}) curves.push_back({0.0, 0.0, r2});
        return optimum_curves(four, curves);
    }
    if (tag == "3-II") {
        std::vector<NoiseParams> curves;
        for (double tau : {0.0, 0.1, 0.2, 0.3}) curves.push_back({tau, 0.0, 0.0});
        return optimum_curves(four, curves);
    }
    if (tag == "4") {
        std::vector<Family> five = four;
        five.push_back(Family::PhotonSubtracted);
        return optimum_curves(five, {NoiseParams{0.3, 0.0, 0.05}});
    }
    if (tag == "5-I") return one_shot_curves(true, 10.0, {1.0, 2.0, 3.0});
    if (tag == "5-II") return one_shot_curves(true, 100.0, {3.0, 5.0, 10.0});
    if (tag == "6-I") return one_shot_curves(false, 10.0, {1.0, 2.0, 3.0});
    if (tag == "6-II") return one_shot_curves(false, 100.0, {3.0, 5.0, 10.0});
    throw ParameterError("unknown figure '" + tag + "'");
}

}  // namespace telefid
