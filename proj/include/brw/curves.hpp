#pragma once

#include <optional>

#include "brw/dynsys.hpp"
#include "brw/series.hpp"

namespace brw {

enum class CurveKind { HplusMinus, HminusPlus };
enum class CurveMethod { SeriesA, Shooting, ReverseFromCorner };

std::string to_string(CurveKind k);
std::string to_string(CurveMethod m);

struct Bracket {
    double low = 0;
    double high = 0;
    double width() const { return high - low; }
    double mid() const { return 0.5 * (low + high); }
};

struct CurveResult {
    Trajectory points;
    CurveKind kind;
    double value_at_0 = 0;
    double value_at_1_minus = 0;
    CurveMethod method;
    std::optional<Bracket> bracket;  // present for the shooting construction
};

struct CurveControls {
    double shoot_tol = 1e-6;   // bisection bracket width for H+-(0)
    double horizon = 400.0;    // phi budget per shot
    int series_n_max = 200;
    IntegrationControls integ{};
};

/// Shooting classification failed to resolve within the phi horizon.
struct HorizonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No usable eigen-direction at the requested equilibrium.
struct SpectralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HpmZero {
    double value = 0;
    Bracket bracket;
};

/// H+-(0) = P+[N-(0)=0]. Zero (exactly) above beta_c; otherwise found by
/// bisection on the launch point (x0, 0) of the reversed flow, bracketed by
/// exit-right (x0 too large) against corner-ball arrival / left or top exit
/// (x0 too small). tol >= 1e-10.
HpmZero hpm_at_zero(const ModelParams& p, double tol, const CurveControls& c = {});

/// The curve x = H+-(y): shooting trajectory to the (1,1)-ball below beta_c,
/// the series curve x = A(y) above it.
CurveResult hpm_curve(const ModelParams& p, const CurveControls& c = {});

/// The curve y = H-+(x), traced by the reversed flow out of the slow
/// eigen-direction at (0,0).
CurveResult hmp_curve(const ModelParams& p, const CurveControls& c = {});

enum class BoundaryTheta { Zero, One };

/// The theta=0 / theta=1 boundary solutions of the reversed system: either a
/// constant equilibrium trajectory or the moving solution along H+-.
Trajectory boundary_solution(const ModelParams& p, BoundaryTheta theta,
                             const CurveControls& c = {});

/// Number of proper polyline crossings strictly inside the open unit square
/// (cross-validation helper; probabilistic curves must never cross there).
int interior_crossings(const Trajectory& a, const Trajectory& b);

}  // namespace brw
