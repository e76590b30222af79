#pragma once

#include <map>
#include <vector>

#include "brw/model.hpp"

namespace brw {

/// Coefficients a_0..a_N of the power series A(y) whose graph x = A(y) is an
/// integral curve of the phi-reversed system. a_0 = 0, all later
/// coefficients strictly positive, partial sums bounded by q+/(q-+beta).
struct SeriesCoeffs {
    std::vector<double> a;  // size n_max + 1
    double partial_sum = 0;
    int n_max = 0;
};

/// Offspring law of the embedded one-type branching process: a particle dies
/// at rate K- and leaves C children with P(C=n) = q- a_n / K- (n != 2) and
/// P(C=2) = (beta + q- a_2)/K-. p_inf is an upper estimate of the mass at
/// C = infinity, from the truncated partial sum.
struct OffspringDist {
    std::map<int, double> p;
    double p_inf = 0;          // upper estimate, see p_inf_is_upper_estimate
    double total = 0;          // sum of the finite-n probabilities
    bool p_inf_is_upper_estimate = true;
};

/// a_1 = (K- + K+ - sqrt((K-+K+)^2 - 4 q- q+)) / (2 q-), evaluated through
/// the rationalized second form and cross-checked against the first.
double a1_closed_form(const ModelParams& p);

SeriesCoeffs compute_coeffs(const ModelParams& p, int n_max);

struct SeriesValue {
    double value = 0;
    double tail_bound = 0;  // geometric extrapolation of the truncated tail
};

/// Horner evaluation of the truncated series at y in [0,1].
SeriesValue evaluate_A(const SeriesCoeffs& c, double y);

OffspringDist offspring_distribution(const SeriesCoeffs& c, const ModelParams& p);

}  // namespace brw
