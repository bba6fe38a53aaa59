#pragma once

#include <cmath>

namespace telefid {

template <class F>
Maximum1D golden_section_max(F&& f, double a, double b, double tol)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int evals = 2;
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    return fc >= fd ? Maximum1D{c, fc, evals} : Maximum1D{d, fd, evals};
}

}  // namespace telefid
