#include "fock_oracle.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace fock {

namespace {

Mat annihilation(int dim)
{
    Mat a = Mat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

}  // namespace

Mat displacement(cplx alpha)
{
    // normal-ordered D = e^{-|alpha|^2/2} e^{alpha a+} e^{-alpha* a}; both factors are exponentials
    // of nilpotent matrices, so the truncated block is exact
    const Mat a = annihilation(kCutoff + 1);
    const Mat up = (alpha * a.adjoint()).exp();
    const Mat down = (-std::conj(alpha) * a).exp();
    return std::exp(-0.5 * std::norm(alpha)) * up * down;
}

Vec coherent(cplx beta)
{
    Vec v(kCutoff + 1);
    cplx term = std::exp(-0.5 * std::norm(beta));
    for (int n = 0; n <= kCutoff; ++n) {
        v(n) = term;
        term *= beta / std::sqrt(double(n + 1));
    }
    return v;
}

TwoMode squeeze(cplx zeta, const TwoMode& core)
{
    const int n = kCutoff + 1;
    TwoMode out = TwoMode::Zero(n, n);
    // sector d = n1 - n2; basis |m + d+, m + d->, m = 0..kPadded-1
    for (int d = -kCutoff; d <= kCutoff; ++d) {
        const int dp = std::max(d, 0), dm = std::max(-d, 0);
        Vec in = Vec::Zero(kPadded);
        for (int m = 0; m + std::max(dp, dm) <= kCutoff; ++m) in(m) = core(m + dp, m + dm);
        if (in.norm() < 1e-20) continue;
        Mat gen = Mat::Zero(kPadded, kPadded);
        for (int m = 0; m + 1 < kPadded; ++m) {
            const double amp = std::sqrt(double(m + dp + 1) * double(m + dm + 1));
            gen(m + 1, m) = -zeta * amp;
            gen(m, m + 1) = std::conj(zeta) * amp;
        }
        const Vec res = gen.exp() * in;
        for (int m = 0; m + std::max(dp, dm) <= kCutoff; ++m) out(m + dp, m + dm) = res(m);
    }
    return out;
}

TwoMode basis_state(int n1, int n2)
{
    TwoMode s = TwoMode::Zero(kCutoff + 1, kCutoff + 1);
    s(n1, n2) = 1.0;
    return s;
}

TwoMode resource_state(const telefid::ResourceSpec& spec)
{
    using namespace telefid;
    return std::visit(
        [](const auto& s) -> TwoMode {
            using S = std::decay_t<decltype(s)>;
            const cplx zeta = std::polar(s.r, s.phi);
            TwoMode core = TwoMode::Zero(kCutoff + 1, kCutoff + 1);
            if constexpr (std::is_same_v<S, TwinBeam>) {
                core(0, 0) = 1.0;
            } else if constexpr (std::is_same_v<S, SqueezedBell>) {
                core(0, 0) = std::cos(s.delta);
                core(1, 1) = std::polar(std::sin(s.delta), s.theta);
            } else if constexpr (std::is_same_v<S, BuridanDonkey>) {
                core(0, 1) = std::cos(s.delta);
                core(1, 0) = std::polar(std::sin(s.delta), s.theta);
            } else if constexpr (std::is_same_v<S, SqueezedCat>) {
                const Vec g = coherent(std::polar(s.gamma_mod, s.gamma_phase));
                core = std::polar(std::sin(s.delta), s.theta) * (g * g.transpose());
                core(0, 0) += std::cos(s.delta);
            } else {
                return photon_subtracted_state(zeta);
            }
            TwoMode psi = squeeze(zeta, core);
            return psi / psi.norm();
        },
        spec);
}

TwoMode photon_subtracted_state(cplx zeta)
{
    const TwoMode sq = squeeze(zeta, basis_state(0, 0));
    TwoMode out = TwoMode::Zero(kCutoff + 1, kCutoff + 1);
    for (int n1 = 0; n1 < kCutoff; ++n1)
        for (int n2 = 0; n2 < kCutoff; ++n2)
            out(n1, n2) = std::sqrt(double(n1 + 1) * double(n2 + 1)) * sq(n1 + 1, n2 + 1);
    return out / out.norm();
}

cplx matrix_element(const TwoMode& phi, const TwoMode& psi, cplx alpha1, cplx alpha2)
{
    const Mat d1 = displacement(alpha1);
    const Mat d2 = displacement(alpha2);
    const Mat moved = d1 * psi * d2.transpose();
    return (phi.conjugate().cwiseProduct(moved)).sum();
}

cplx chi_two_mode(const TwoMode& psi, cplx alpha1, cplx alpha2)
{
    return matrix_element(psi, psi, alpha1, alpha2) / psi.squaredNorm();
}

cplx chi_coherent(cplx beta, cplx alpha)
{
    const Vec b = coherent(beta);
    return b.dot(displacement(alpha) * b);
}

}  // namespace fock
