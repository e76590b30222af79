#pragma once

#include <string>
#include <vector>

#include "brw/model.hpp"

namespace brw {

/// A point of the generating-function plane, both coordinates in [0,1].
struct PhasePoint {
    double x = 0;
    double y = 0;
};

enum class FlowDirection { Forward, Reversed };

enum class ExitKind {
    InteriorAtHorizon,
    ReachedOriginBall,
    ReachedCornerBall,
    ExitLeft,
    ExitRight,
    ExitTop,
    ExitBottom,
};

std::string to_string(ExitKind e);

struct Trajectory {
    FlowDirection direction = FlowDirection::Forward;
    std::vector<std::pair<double, PhasePoint>> samples;  // (phi, point), phi increasing
    ExitKind exit = ExitKind::InteriorAtHorizon;

    const PhasePoint& back() const { return samples.back().second; }
    double phi_end() const { return samples.back().first; }
};

struct IntegrationControls {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double ball_radius = 1e-6;   // termination balls around (0,0) and (1,1)
    double emit_step = 0.01;     // spacing of emitted trajectory samples in phi
    double boundary_tol = 1e-12; // bisection tolerance for boundary exits
    double min_step = 1e-14;     // below this the run is declared stiff
};

/// Raised when step control underflows; carries the last valid state.
struct StiffnessError : std::runtime_error {
    double phi;
    PhasePoint last;
    StiffnessError(double phi_, PhasePoint last_);
};

/// Forward field of the pgf dynamical system:
///   dx = q+ (y - x) + beta (x^2 - x)
///   dy = -[ q- (x - y) + beta (y^2 - y) ]
std::array<double, 2> field_forward(const ModelParams& p, const PhasePoint& v);

/// Exact negation of the forward field (the phi-reversed system).
std::array<double, 2> field_reversed(const ModelParams& p, const PhasePoint& v);

/// Jacobian of the forward field at an arbitrary point.
Mat2 forward_jacobian(const ModelParams& p, const PhasePoint& v);

/// Adaptive embedded Runge-Kutta 4(5) run from `start`, stopping at the
/// horizon, at the delta-balls around (0,0)/(1,1), or at the first exit from
/// the closed unit square (located by bisection on the offending step).
Trajectory integrate(const ModelParams& p, PhasePoint start, FlowDirection dir,
                     double horizon, const IntegrationControls& c = {});

/// Endpoint of the flow map V(phi, v) without sample emission. Throws
/// std::runtime_error if the orbit leaves the square or hits a ball first.
PhasePoint flow(const ModelParams& p, PhasePoint start, FlowDirection dir,
                double phi, const IntegrationControls& c = {});

/// Minimum forward-field norm over the strictly interior grid
/// {(i,j)/(grid_n+1)}; positive for every valid parameter set (no interior
/// equilibria). OpenMP-parallel with a serial reference for tests.
double no_equilibria_check(const ModelParams& p, int grid_n);
double no_equilibria_check_serial(const ModelParams& p, int grid_n);

/// CSV dump with header "phi,x,y" and trailing "# exit=..." comment.
std::string trajectory_csv(const Trajectory& t);

}  // namespace brw
