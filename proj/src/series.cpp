#include "brw/series.hpp"

#include <cmath>
#include <stdexcept>

namespace brw {

namespace {

// Kahan-compensated accumulator for the short convolution sums.
struct Kahan {
    double s = 0, c = 0;
    void add(double v) {
        double y = v - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

}  // namespace

double a1_closed_form(const ModelParams& p) {
    DerivedConstants d = derive_constants(p);
    double s = d.k_minus + d.k_plus;
    double root = std::sqrt(s * s - 4.0 * p.q_minus * p.q_plus);
    double direct = (s - root) / (2.0 * p.q_minus);
    double rationalized = 2.0 * p.q_plus / (s + root);
    // the two algebraic forms only drift apart if the radicand is
    // ill-conditioned; treat that as a bug in the caller's parameter range
    if (std::abs(direct - rationalized) > 1e-14 * std::max(1.0, s / (2.0 * p.q_minus)))
        throw std::runtime_error("a1_closed_form: conditioning check failed");
    return rationalized;
}

SeriesCoeffs compute_coeffs(const ModelParams& p, int n_max) {
    if (n_max < 2) throw std::domain_error("compute_coeffs: n_max >= 2 required");
    DerivedConstants d = derive_constants(p);
    SeriesCoeffs out;
    out.n_max = n_max;
    out.a.assign(n_max + 1, 0.0);
    out.a[1] = a1_closed_form(p);

    const auto& a = out.a;
    for (int n = 2; n <= n_max; ++n) {
        double divisor = d.k_plus + n * d.k_minus - (n + 1) * p.q_minus * a[1];
        if (!(divisor > 0.0))
            throw std::runtime_error(
                "compute_coeffs: nonpositive recurrence divisor at n=" +
                std::to_string(n) + " (q+=" + std::to_string(p.q_plus) +
                ", q-=" + std::to_string(p.q_minus) +
                ", beta=" + std::to_string(p.beta) + ")");
        Kahan rhs;
        for (int k = 1; k <= n - 1; ++k) rhs.add(p.beta * a[k] * a[n - k]);
        for (int k = 1; k <= n - 2; ++k)
            rhs.add(p.q_minus * (k + 1) * a[k + 1] * a[n - k]);
        rhs.add(p.beta * (n - 1) * a[n - 1]);
        out.a[n] = rhs.s / divisor;
    }

    Kahan sum;
    for (int n = 1; n <= n_max; ++n) sum.add(out.a[n]);
    out.partial_sum = sum.s;
    return out;
}

SeriesValue evaluate_A(const SeriesCoeffs& c, double y) {
    if (!(y >= 0.0 && y <= 1.0))
        throw std::domain_error("evaluate_A: y must lie in [0,1]");
    SeriesValue r;
    double acc = 0.0;
    for (int n = c.n_max; n >= 0; --n) acc = acc * y + c.a[n];
    r.value = acc;
    // geometric tail from the last two coefficient ratios; heuristic only,
    // reported but never folded into the value
    int n = c.n_max;
    if (n >= 2 && c.a[n - 1] > 0.0 && c.a[n] > 0.0) {
        double ratio = c.a[n] / c.a[n - 1];
        double q = ratio * y;
        if (q < 1.0)
            r.tail_bound = c.a[n] * std::pow(y, n) * q / (1.0 - q);
        else
            r.tail_bound = std::numeric_limits<double>::infinity();
    }
    return r;
}

OffspringDist offspring_distribution(const SeriesCoeffs& c, const ModelParams& p) {
    DerivedConstants d = derive_constants(p);
    OffspringDist o;
    Kahan total;
    for (int n = 1; n <= c.n_max; ++n) {
        double pn = p.q_minus * c.a[n] / d.k_minus;
        if (n == 2) pn = (p.beta + p.q_minus * c.a[2]) / d.k_minus;
        o.p[n] = pn;
        total.add(pn);
    }
    o.total = total.s;
    o.p_inf = p.q_minus * (1.0 - c.partial_sum) / d.k_minus;
    o.p_inf_is_upper_estimate = true;
    return o;
}

}  // namespace brw
