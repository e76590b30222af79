#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace brw {

enum class Regime { Subcritical, Critical, Supercritical };

std::string to_string(Regime r);

/// Rates of the two-type model: a type-+ particle drifts right at speed 1
/// and flips at rate q_plus, a type-- particle drifts left and flips at
/// rate q_minus, and every particle splits in two at rate beta.
/// Requires q_minus > q_plus > 0 and beta > 0; the constructor throws
/// std::invalid_argument naming the violated inequality otherwise.
struct ModelParams {
    double q_plus;
    double q_minus;
    double beta;

    ModelParams(double q_plus_, double q_minus_, double beta_);
};

struct DerivedConstants {
    double k_plus;   // q_plus + beta
    double k_minus;  // q_minus + beta
    double beta_c;   // (sqrt(q_minus) - sqrt(q_plus))^2 / 2
    double m;        // sqrt(q_minus / q_plus), slope of the critical eigenvector
    Regime regime;
};

/// Plain 2x2 real matrix, row-major [[a, b], [c, d]].
struct Mat2 {
    double a = 0, b = 0, c = 0, d = 0;

    std::array<double, 2> apply(const std::array<double, 2>& v) const {
        return {a * v[0] + b * v[1], c * v[0] + d * v[1]};
    }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
};

/// Linearization data of the flow at the (1,1) equilibrium.
struct SpectralInfo {
    Mat2 matrix;
    std::array<std::complex<double>, 2> eigenvalues;
    double discriminant;
    // Unit direction vectors, x-component positive. Empty for complex
    // eigenvalues, one entry in the defective (critical) case, two otherwise.
    std::vector<std::array<double, 2>> eigenvectors;
};

DerivedConstants derive_constants(const ModelParams& p);

/// Linearization matrix [[beta-q+, q+], [-q-, q- - beta]] at (1,1) with its
/// eigen data. In the defective case the single eigenvector is (1, m).
SpectralInfo linearization_at_one_one(const ModelParams& p);

/// Top eigenvalue of Q - mu V for the single-particle chain, mu >= 0:
///   gamma(mu) = -(q-+q+)/2 + sqrt((q-+q+)^2 - 4(q--q+)mu + 4mu^2)/2.
/// Minimized at mu* = (q--q+)/2 where it equals -beta_c.
double gamma_eigenvalue(const ModelParams& p, double mu);

/// exp(phi*M) for the linearization matrix M, by closed-form 2x2
/// decomposition; the defective case uses exp = e^{lt}(I + t(M - lI)).
Mat2 expectation_matrix_exp(const ModelParams& p, double phi);

/// Closed-form level-crossing means at criticality (requires regime ==
/// Critical): {E+N+(phi), E-N+(phi), E+N-(phi), E-N-(phi)}.
std::array<double, 4> critical_crossing_means(const ModelParams& p, double phi);

/// exp(t*M) for an arbitrary 2x2 matrix; shared by the expectation map and
/// the tests that check the semigroup law.
Mat2 mat2_exp(const Mat2& m, double t);

}  // namespace brw
