#include "telefid/cli.hpp"

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "telefid/csv.hpp"
#include "telefid/parallel.hpp"
#include "telefid/sweep.hpp"

namespace telefid {

namespace {

struct PointFlags {
    std::string resource;
    std::optional<double> r;
    double phi = M_PI;
    double delta = 0.0;
    double theta = 0.0;
    double gamma_mod = 0.0;
    double tau = 0.0;
    double nth = 0.0;
    double r2 = 0.0;
    std::optional<double> gain;
    std::string gain_mode = "unity-over-t";
    std::optional<double> beta_re;
    std::optional<double> beta_im;
    std::optional<double> sigma;
    std::string method = "closed";
    std::string output;

    bool beta_given() const { return beta_re || beta_im; }

    PointSpec point() const
    {
        PointSpec pt;
        pt.family = parse_family(resource);
        pt.r = r.value_or(0.0);
        pt.phi = phi;
        pt.delta = delta;
        pt.theta = theta;
        pt.gamma_mod = gamma_mod;
        pt.noise = {tau, nth, r2};
        if (gain) pt.gain = FixedGain{*gain};
        pt.beta = {beta_re.value_or(0.0), beta_im.value_or(0.0)};
        pt.sigma = sigma;
        pt.method = parse_method(method);
        return pt;
    }
};

const CLI::Validator kReflectivity(
    [](std::string& s) -> std::string {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(s, v)) return "not a number: " + s;
        return v >= 0.0 && v < 1.0 ? std::string() : "R^2 must lie in [0, 1), got " + s;
    },
    "in [0, 1)");

void add_point_flags(CLI::App* app, PointFlags& f)
{
    app->add_option("--resource", f.resource, "twin-beam | squeezed-bell | squeezed-cat | buridan | photon-subtracted")
        ->required()
        ->check(CLI::IsMember({"twin-beam", "squeezed-bell", "squeezed-cat", "buridan", "photon-subtracted"}));
    app->add_option("--r", f.r, "squeezing r")->check(CLI::NonNegativeNumber);
    app->add_option("--phi", f.phi, "squeezing phase (default pi)");
    app->add_option("--delta", f.delta, "superposition angle delta");
    app->add_option("--theta", f.theta, "superposition phase theta");
    app->add_option("--gamma-mod", f.gamma_mod, "|gamma| of the cat component")->check(CLI::NonNegativeNumber);
    app->add_option("--tau", f.tau, "reduced time tau")->check(CLI::NonNegativeNumber);
    app->add_option("--nth", f.nth, "thermal photon number")->check(CLI::NonNegativeNumber);
    app->add_option("--r2", f.r2, "detector beam-splitter reflectivity R^2, in [0, 1)")
        ->check(kReflectivity);
    auto* gain = app->add_option("--gain", f.gain, "fixed gain g")->check(CLI::PositiveNumber);
    auto* mode = app->add_option("--gain-mode", f.gain_mode, "unity-over-t (g = 1/T)")
                     ->check(CLI::IsMember({"unity-over-t"}));
    gain->excludes(mode);
    app->add_option("--beta-re", f.beta_re, "Re beta");
    app->add_option("--beta-im", f.beta_im, "Im beta");
    app->add_option("--sigma", f.sigma, "Gaussian alphabet width sigma")->check(CLI::PositiveNumber);
    app->add_option("--method", f.method, "closed | quadrature")->check(CLI::IsMember({"closed", "quadrature"}));
    app->add_option("--output", f.output, "write CSV to this path");
}

void write_rows(const std::vector<ResultRow>& rows, const std::string& path, std::ostream& out)
{
    if (path.empty()) write_csv(out, rows);
    else emit_csv(rows, path);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Fidelity of nonideal continuous-variable teleportation with Gaussian and non-Gaussian resources",
                 "telefid"};
    app.require_subcommand(1);

    PointFlags fid, opt, sw;
    auto* fidelity = app.add_subcommand("fidelity", "fidelity at one parameter point (prior average with --sigma)");
    add_point_flags(fidelity, fid);
    auto* optimize = app.add_subcommand("optimize", "optimal fidelity at g = 1/T, or over the gain with --sigma");
    add_point_flags(optimize, opt);

    auto* sweep = app.add_subcommand("sweep", "evaluate along one parameter axis");
    add_point_flags(sweep, sw);
    std::string axis;
    double from = 0.0, to = 0.0;
    int steps = 0;
    bool sweep_optimize = false;
    sweep->add_option("--vary", axis, "axis: r, tau, nth, r2, gain, sigma, beta_re, beta_im, delta, gamma")
        ->required()
        ->check(CLI::IsMember(sweep_axes()));
    sweep->add_option("--from", from)->required();
    sweep->add_option("--to", to)->required();
    sweep->add_option("--steps", steps)->required()->check(CLI::Range(2, 1000000));
    sweep->add_flag("--optimize", sweep_optimize, "optimize at every point instead of evaluating");

    auto* figure = app.add_subcommand("figure", "reproduce a figure's curves as CSV");
    std::string tag, figure_output;
    figure->add_option("--figure", tag, "3-I | 3-II | 4 | 5-I | 5-II | 6-I | 6-II")
        ->required()
        ->check(CLI::IsMember(figure_tags()));
    figure->add_option("--output", figure_output, "write CSV to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    auto usage_error = [&](const std::string& msg, const CLI::App* sub) {
        err << "error: " << msg << "\n" << sub->help();
        return kExitUsage;
    };

    try {
        configure_threads();
        if (*fidelity) {
            if (!fid.r) return usage_error("--r is required", fidelity);
            const std::vector<ResultRow> rows = evaluate_point(fid.point(), SweepKind::fidelity);
            if (fid.output.empty()) out << format_number(rows.front().fidelity) << '\n';
            else emit_csv(rows, fid.output);
        } else if (*optimize) {
            if (!opt.r) return usage_error("--r is required", optimize);
            const PointSpec pt = opt.point();
            std::vector<ResultRow> rows = evaluate_point(pt, SweepKind::optimize);
            if (pt.sigma && opt.beta_given()) {
                const auto one_shot = evaluate_point(pt, SweepKind::optimize, {pt.beta});
                rows.insert(rows.end(), one_shot.begin(), one_shot.end());
            }
            write_rows(rows, opt.output, out);
        } else if (*sweep) {
            if (!sw.r && axis != "r") return usage_error("--r is required unless --vary r", sweep);
            SweepSpec spec;
            spec.axis = axis;
            spec.from = from;
            spec.to = to;
            spec.steps = steps;
            spec.base = sw.point();
            spec.kind = sweep_optimize ? SweepKind::optimize : SweepKind::fidelity;
            if (spec.kind == SweepKind::optimize && spec.base.sigma && sw.beta_given()) spec.betas = {spec.base.beta};
            write_rows(run_sweep(spec), sw.output, out);
        } else if (*figure) {
            write_rows(run_figure_preset(tag), figure_output, out);
        }
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const QuadratureError& e) {
        err << "error: " << e.what() << " (error estimate " << e.error_estimate << ")\n";
        return kExitNumerical;
    } catch (const NumericalDegeneracy& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace telefid
