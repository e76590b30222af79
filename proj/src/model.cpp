#include "brw/model.hpp"

#include <cmath>
#include <stdexcept>

namespace brw {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::Subcritical: return "subcritical";
        case Regime::Critical: return "critical";
        case Regime::Supercritical: return "supercritical";
    }
    return "?";
}

ModelParams::ModelParams(double q_plus_, double q_minus_, double beta_)
    : q_plus(q_plus_), q_minus(q_minus_), beta(beta_) {
    if (!(q_plus > 0.0))
        throw std::invalid_argument("model params: q_plus > 0 violated");
    if (!(q_minus > q_plus))
        throw std::invalid_argument("model params: q_minus > q_plus violated");
    if (!(beta > 0.0))
        throw std::invalid_argument("model params: beta > 0 violated");
    if (!std::isfinite(q_plus) || !std::isfinite(q_minus) || !std::isfinite(beta))
        throw std::invalid_argument("model params: rates must be finite");
}

DerivedConstants derive_constants(const ModelParams& p) {
    DerivedConstants d;
    d.k_plus = p.q_plus + p.beta;
    d.k_minus = p.q_minus + p.beta;
    double s = std::sqrt(p.q_minus) - std::sqrt(p.q_plus);
    d.beta_c = 0.5 * s * s;
    d.m = std::sqrt(p.q_minus / p.q_plus);
    // beta_c is typically user-supplied exactly (e.g. 0.5), so a tight
    // relative tolerance decides the critical tag.
    double tol = 1e-12 * std::max(1.0, d.beta_c);
    if (std::abs(p.beta - d.beta_c) <= tol)
        d.regime = Regime::Critical;
    else
        d.regime = p.beta > d.beta_c ? Regime::Supercritical : Regime::Subcritical;
    return d;
}

SpectralInfo linearization_at_one_one(const ModelParams& p) {
    SpectralInfo s;
    s.matrix = {p.beta - p.q_plus, p.q_plus, -p.q_minus, p.q_minus - p.beta};
    double two_beta = 2.0 * p.beta - (p.q_plus + p.q_minus);
    s.discriminant = two_beta * two_beta - 4.0 * p.q_minus * p.q_plus;

    double h = 0.5 * s.matrix.trace();
    auto eigvec = [&](double lam) -> std::array<double, 2> {
        // (beta - q+ - lam) v1 + q+ v2 = 0, q+ > 0
        double slope = (lam - (p.beta - p.q_plus)) / p.q_plus;
        double n = std::sqrt(1.0 + slope * slope);
        return {1.0 / n, slope / n};
    };

    if (s.discriminant > 0.0) {
        double w = 0.5 * std::sqrt(s.discriminant);
        s.eigenvalues = {std::complex<double>(h - w), std::complex<double>(h + w)};
        s.eigenvectors = {eigvec(h - w), eigvec(h + w)};
    } else if (s.discriminant < 0.0) {
        double w = 0.5 * std::sqrt(-s.discriminant);
        s.eigenvalues = {std::complex<double>(h, -w), std::complex<double>(h, w)};
    } else {
        s.eigenvalues = {std::complex<double>(h), std::complex<double>(h)};
        s.eigenvectors = {eigvec(h)};
    }
    return s;
}

double gamma_eigenvalue(const ModelParams& p, double mu) {
    if (mu < 0.0) throw std::domain_error("gamma_eigenvalue: mu must be >= 0");
    double s = p.q_minus + p.q_plus;
    double d = p.q_minus - p.q_plus;
    // radicand rearranged as (2mu-d)^2 + 4 q- q+, exact at the minimum
    return -0.5 * s + 0.5 * std::hypot(2.0 * mu - d, 2.0 * std::sqrt(p.q_minus * p.q_plus));
}

Mat2 mat2_exp(const Mat2& m, double t) {
    double h = 0.5 * m.trace();
    double disc = m.trace() * m.trace() - 4.0 * m.det();
    Mat2 b{m.a - h, m.b, m.c, m.d - h};  // traceless part, b^2 = (disc/4) I
    double eh = std::exp(h * t);
    double c0, c1;  // exp(t m) = eh * (c0 I + c1 b)
    double scale = std::max({1.0, m.trace() * m.trace(), 4.0 * std::abs(m.det())});
    if (std::abs(disc) <= 1e-14 * scale) {
        // defective (Jordan block): e^{lt}(I + t(M - lI))
        c0 = 1.0;
        c1 = t;
    } else if (disc > 0.0) {
        double w = 0.5 * std::sqrt(disc);
        c0 = std::cosh(w * t);
        c1 = std::sinh(w * t) / w;
    } else {
        double w = 0.5 * std::sqrt(-disc);
        c0 = std::cos(w * t);
        c1 = std::sin(w * t) / w;
    }
    return {eh * (c0 + c1 * b.a), eh * (c1 * b.b),
            eh * (c1 * b.c), eh * (c0 + c1 * b.d)};
}

Mat2 expectation_matrix_exp(const ModelParams& p, double phi) {
    return mat2_exp(linearization_at_one_one(p).matrix, phi);
}

std::array<double, 4> critical_crossing_means(const ModelParams& p, double phi) {
    DerivedConstants d = derive_constants(p);
    if (d.regime != Regime::Critical)
        throw std::domain_error("critical_crossing_means: requires beta == beta_c");
    double lam = 0.5 * (p.q_minus - p.q_plus);
    double up = std::exp(lam * phi);
    double down = std::exp(-lam * phi);
    return {up, d.m * up, down / d.m, down};
}

}  // namespace brw
