#include "telefid/gaussian_pipeline.hpp"

#include <cmath>

namespace telefid {

namespace {

// Mode order in, 1, 2, 3, 4; quadrature vector (x_in, p_in, x_1, p_1, ..., x_4, p_4).
constexpr int kModes = 5;
constexpr int kIn = 0, kOne = 1, kTwo = 2, kThree = 3, kFour = 4;
using Vec = Eigen::Matrix<double, 2 * kModes, 1>;
using Mat = Eigen::Matrix<double, 2 * kModes, 2 * kModes>;

// Orthogonal two-mode mixer acting identically on x and p:
//   out_a = m00 in_a + m01 in_b,  out_b = m10 in_a + m11 in_b.
Mat mixer(int a, int b, double m00, double m01, double m10, double m11)
{
    Mat s = Mat::Identity();
    for (int q = 0; q < 2; ++q) {
        const int ia = 2 * a + q, ib = 2 * b + q;
        s(ia, ia) = m00;
        s(ia, ib) = m01;
        s(ib, ia) = m10;
        s(ib, ib) = m11;
    }
    return s;
}

}  // namespace

Eigen::Matrix4d twin_beam_covariance(double r)
{
    const double c = 0.5 * std::cosh(2.0 * r);
    const double s = 0.5 * std::sinh(2.0 * r);
    Eigen::Matrix4d v;
    v << c, 0, s, 0,
         0, c, 0, -s,
         s, 0, c, 0,
         0, -s, 0, c;
    return v;
}

cplx gaussian_chi(const GaussianMode& mode, PhasePoint pt)
{
    const Eigen::Vector2d eta(pt.p, -pt.x);
    return std::exp(cplx(-0.5 * eta.dot(mode.cov * eta), eta.dot(mode.mean)));
}

GaussianPipelineResult gaussian_pipeline(const CoherentInput& input, double r, const NoiseParams& noise,
                                         const GainSetting& gain)
{
    noise.validate();
    if (!std::isfinite(r) || r < 0.0) throw ParameterError("squeezing r must be finite and >= 0");
    const double T = noise.transmissivity();
    const double R = noise.reflectivity();
    const double g = gain_value(gain, noise);

    Vec mu = Vec::Zero();
    mu(2 * kIn) = std::sqrt(2.0) * input.beta.real();
    mu(2 * kIn + 1) = std::sqrt(2.0) * input.beta.imag();
    Mat v = 0.5 * Mat::Identity();
    v.block<4, 4>(2 * kOne, 2 * kOne) = twin_beam_covariance(r);

    const double h = 1.0 / std::sqrt(2.0);
    const Mat bs1 = mixer(kIn, kOne, h, h, h, -h);
    const Mat bs3 = mixer(kIn, kThree, T, -R, R, T);
    const Mat bs2 = mixer(kOne, kFour, T, -R, R, T);
    const Mat s = bs2 * bs3 * bs1;
    mu = s * mu;
    v = s * v * s.transpose();

    // measured quadratures z = (x~, p~) = (x_1'', p_in'')
    const int iz[2] = {2 * kOne, 2 * kIn + 1};
    const int iy[2] = {2 * kTwo, 2 * kTwo + 1};
    Eigen::Vector2d mu_z, mu_y;
    Eigen::Matrix2d v_zz, v_yy, v_yz;
    for (int a = 0; a < 2; ++a) {
        mu_z(a) = mu(iz[a]);
        mu_y(a) = mu(iy[a]);
        for (int b = 0; b < 2; ++b) {
            v_zz(a, b) = v(iz[a], iz[b]);
            v_yy(a, b) = v(iy[a], iy[b]);
            v_yz(a, b) = v(iy[a], iz[b]);
        }
    }
    const double det = v_zz.determinant();
    if (!(std::abs(det) > 1e-14 * std::max(1.0, v_zz.squaredNorm())))
        throw NumericalDegeneracy("homodyne conditioning covariance is singular");
    const Eigen::Matrix2d gain_k = v_yz * v_zz.inverse();
    const Eigen::Matrix2d v_cond = v_yy - gain_k * v_yz.transpose();

    const double decay = std::exp(-0.5 * noise.tau);
    const double thermal = -std::expm1(-noise.tau) * (0.5 + noise.n_th);
    const Eigen::Matrix2d v_lossy = decay * decay * v_cond + thermal * Eigen::Matrix2d::Identity();

    // Bob adds sqrt(2) g (x~, p~) to (x_2, p_2); the mean is affine in z.
    const Eigen::Matrix2d to_mean = decay * gain_k + std::sqrt(2.0) * g * Eigen::Matrix2d::Identity();

    GaussianPipelineResult res;
    res.outcome_mean = mu_z;
    res.outcome_cov = v_zz;
    res.conditional = {mu_y, v_cond};
    res.conditioning_gain = gain_k;
    res.output.mean = decay * mu_y + std::sqrt(2.0) * g * mu_z;
    res.output.cov = v_lossy + to_mean * v_zz * to_mean.transpose();
    return res;
}

GaussianMode conditioned_mode(const GaussianPipelineResult& res, const BellOutcome& outcome)
{
    const Eigen::Vector2d z(outcome.x_tilde, outcome.p_tilde);
    return {res.conditional.mean + res.conditioning_gain * (z - res.outcome_mean), res.conditional.cov};
}

double gaussian_fidelity(const GaussianMode& mode, cplx beta)
{
    const Eigen::Vector2d target(std::sqrt(2.0) * beta.real(), std::sqrt(2.0) * beta.imag());
    const Eigen::Matrix2d sum = mode.cov + 0.5 * Eigen::Matrix2d::Identity();
    const Eigen::Vector2d d = mode.mean - target;
    return std::exp(-0.5 * d.dot(sum.inverse() * d)) / std::sqrt(sum.determinant());
}

}  // namespace telefid
