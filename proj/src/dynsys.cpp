#include "brw/dynsys.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "brw/csv.hpp"

namespace brw {

std::string to_string(ExitKind e) {
    switch (e) {
        case ExitKind::InteriorAtHorizon: return "interior_at_horizon";
        case ExitKind::ReachedOriginBall: return "reached_origin_ball";
        case ExitKind::ReachedCornerBall: return "reached_corner_ball";
        case ExitKind::ExitLeft: return "exit_left";
        case ExitKind::ExitRight: return "exit_right";
        case ExitKind::ExitTop: return "exit_top";
        case ExitKind::ExitBottom: return "exit_bottom";
    }
    return "?";
}

StiffnessError::StiffnessError(double phi_, PhasePoint last_)
    : std::runtime_error("integrate: step size underflow (stiff) at phi=" +
                         std::to_string(phi_)),
      phi(phi_), last(last_) {}

std::array<double, 2> field_forward(const ModelParams& p, const PhasePoint& v) {
    double dx = p.q_plus * (v.y - v.x) + p.beta * (v.x * v.x - v.x);
    double dy = -(p.q_minus * (v.x - v.y) + p.beta * (v.y * v.y - v.y));
    return {dx, dy};
}

std::array<double, 2> field_reversed(const ModelParams& p, const PhasePoint& v) {
    auto f = field_forward(p, v);
    return {-f[0], -f[1]};
}

Mat2 forward_jacobian(const ModelParams& p, const PhasePoint& v) {
    return {-p.q_plus + p.beta * (2.0 * v.x - 1.0), p.q_plus,
            -p.q_minus, p.q_minus + p.beta * (2.0 * v.y - 1.0)};
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187,
                 A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;

using Vec2 = std::array<double, 2>;

inline Vec2 axpy(const Vec2& y, double h, double c1, const Vec2& k1) {
    return {y[0] + h * c1 * k1[0], y[1] + h * c1 * k1[1]};
}

struct Stepper {
    const ModelParams& p;
    bool reversed;

    Vec2 eval(const Vec2& v) const {
        auto f = field_forward(p, {v[0], v[1]});
        if (reversed) return {-f[0], -f[1]};
        return f;
    }

    // One DP5(4) step of size h from (y, k1 = f(y)); returns the new state,
    // the FSAL derivative and the scaled error estimate.
    void step(const Vec2& y, const Vec2& k1, double h, Vec2& out, Vec2& k_out,
              double& err, double atol, double rtol) const {
        Vec2 k2 = eval(axpy(y, h, A21, k1));
        Vec2 k3 = eval({y[0] + h * (A31 * k1[0] + A32 * k2[0]),
                        y[1] + h * (A31 * k1[1] + A32 * k2[1])});
        Vec2 k4 = eval({y[0] + h * (A41 * k1[0] + A42 * k2[0] + A43 * k3[0]),
                        y[1] + h * (A41 * k1[1] + A42 * k2[1] + A43 * k3[1])});
        Vec2 k5 = eval({y[0] + h * (A51 * k1[0] + A52 * k2[0] + A53 * k3[0] + A54 * k4[0]),
                        y[1] + h * (A51 * k1[1] + A52 * k2[1] + A53 * k3[1] + A54 * k4[1])});
        Vec2 k6 = eval({y[0] + h * (A61 * k1[0] + A62 * k2[0] + A63 * k3[0] + A64 * k4[0] + A65 * k5[0]),
                        y[1] + h * (A61 * k1[1] + A62 * k2[1] + A63 * k3[1] + A64 * k4[1] + A65 * k5[1])});
        out = {y[0] + h * (B1 * k1[0] + B3 * k3[0] + B4 * k4[0] + B5 * k5[0] + B6 * k6[0]),
               y[1] + h * (B1 * k1[1] + B3 * k3[1] + B4 * k4[1] + B5 * k5[1] + B6 * k6[1])};
        k_out = eval(out);
        err = 0.0;
        for (int i = 0; i < 2; ++i) {
            double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] +
                            E6 * k6[i] + E7 * k_out[i]);
            double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(out[i]));
            err = std::max(err, std::abs(e) / sc);
        }
    }
};

inline bool inside_square(const Vec2& v) {
    return v[0] >= 0.0 && v[0] <= 1.0 && v[1] >= 0.0 && v[1] <= 1.0;
}

inline double dist2(const Vec2& v, double cx, double cy) {
    double dx = v[0] - cx, dy = v[1] - cy;
    return dx * dx + dy * dy;
}

ExitKind classify_boundary(const Vec2& inside, const Vec2& outside) {
    // The crossed edge is the one whose violation is largest at `outside`;
    // ties broken in favour of the coordinate closest to the edge at `inside`.
    double viol[4] = {-outside[0], outside[0] - 1.0, -outside[1], outside[1] - 1.0};
    int best = 0;
    for (int i = 1; i < 4; ++i)
        if (viol[i] > viol[best]) best = i;
    (void)inside;
    switch (best) {
        case 0: return ExitKind::ExitLeft;
        case 1: return ExitKind::ExitRight;
        case 2: return ExitKind::ExitBottom;
        default: return ExitKind::ExitTop;
    }
}

struct RawResult {
    ExitKind exit;
    double phi_end;
    Vec2 v_end;
};

// Core driver; `emit` is called with every accepted (phi, state) pair
// including the start, plus the final located boundary point if any.
template <typename Emit>
RawResult integrate_core(const ModelParams& p, Vec2 y0, bool reversed,
                         double horizon, const IntegrationControls& c, Emit emit) {
    Stepper st{p, reversed};
    double phi = 0.0;
    Vec2 y = y0;
    emit(phi, y);

    double ball2 = c.ball_radius * c.ball_radius;
    if (dist2(y, 0, 0) <= ball2) return {ExitKind::ReachedOriginBall, phi, y};
    if (dist2(y, 1, 1) <= ball2) return {ExitKind::ReachedCornerBall, phi, y};
    if (!inside_square(y))
        return {classify_boundary(y, y), phi, y};

    Vec2 k1 = st.eval(y);
    double fn = std::max({std::abs(k1[0]), std::abs(k1[1]), 1e-8});
    double h = std::min(0.01 / fn, horizon);

    while (phi < horizon) {
        bool last = phi + h >= horizon;
        if (last) h = horizon - phi;
        Vec2 ynew, knew;
        double err;
        st.step(y, k1, h, ynew, knew, err, c.abs_tol, c.rel_tol);
        if (err <= 1.0) {
            if (!inside_square(ynew)) {
                // Bisect the step length until the interior endpoint is within
                // boundary_tol of the square's boundary.
                double lo = 0.0, hi = h;
                Vec2 v_in = y, v_out = ynew;
                for (int it = 0; it < 200; ++it) {
                    double viol = std::max({-v_out[0], v_out[0] - 1.0,
                                            -v_out[1], v_out[1] - 1.0});
                    if (hi - lo < c.boundary_tol && viol < c.boundary_tol) break;
                    double mid = 0.5 * (lo + hi);
                    Vec2 vm, km;
                    double e2;
                    st.step(y, k1, mid, vm, km, e2, c.abs_tol, c.rel_tol);
                    if (inside_square(vm)) {
                        lo = mid;
                        v_in = vm;
                    } else {
                        hi = mid;
                        v_out = vm;
                    }
                }
                ExitKind ek = classify_boundary(v_in, v_out);
                // clamp the located point onto the edge
                Vec2 vb = v_in;
                vb[0] = std::clamp(vb[0], 0.0, 1.0);
                vb[1] = std::clamp(vb[1], 0.0, 1.0);
                switch (ek) {
                    case ExitKind::ExitLeft: vb[0] = 0.0; break;
                    case ExitKind::ExitRight: vb[0] = 1.0; break;
                    case ExitKind::ExitBottom: vb[1] = 0.0; break;
                    default: vb[1] = 1.0; break;
                }
                double phib = phi + lo;
                emit(phib, vb);
                return {ek, phib, vb};
            }
            phi += h;
            y = ynew;
            k1 = knew;
            emit(phi, y);
            if (dist2(y, 0, 0) <= ball2) return {ExitKind::ReachedOriginBall, phi, y};
            if (dist2(y, 1, 1) <= ball2) return {ExitKind::ReachedCornerBall, phi, y};
            double grow = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h *= std::clamp(grow, 0.2, 5.0);
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
        if (h < c.min_step) throw StiffnessError(phi, {y[0], y[1]});
    }
    return {ExitKind::InteriorAtHorizon, horizon, y};
}

}  // namespace

Trajectory integrate(const ModelParams& p, PhasePoint start, FlowDirection dir,
                     double horizon, const IntegrationControls& c) {
    Trajectory t;
    t.direction = dir;
    double next_emit = 0.0;
    double prev_phi = 0.0;
    Vec2 prev{start.x, start.y};
    bool have_prev = false;
    auto emit = [&](double phi, const Vec2& v) {
        if (!have_prev) {
            t.samples.push_back({phi, {v[0], v[1]}});
            have_prev = true;
            prev_phi = phi;
            prev = v;
            next_emit = phi + c.emit_step;
            return;
        }
        // linear dense output on the emission grid
        while (next_emit < phi) {
            double w = (next_emit - prev_phi) / (phi - prev_phi);
            t.samples.push_back({next_emit,
                                 {prev[0] + w * (v[0] - prev[0]),
                                  prev[1] + w * (v[1] - prev[1])}});
            next_emit += c.emit_step;
        }
        prev_phi = phi;
        prev = v;
    };
    RawResult r = integrate_core(p, {start.x, start.y}, dir == FlowDirection::Reversed,
                                 horizon, c, emit);
    if (t.samples.back().first < r.phi_end)
        t.samples.push_back({r.phi_end, {r.v_end[0], r.v_end[1]}});
    else
        t.samples.back() = {r.phi_end, {r.v_end[0], r.v_end[1]}};
    t.exit = r.exit;
    return t;
}

PhasePoint flow(const ModelParams& p, PhasePoint start, FlowDirection dir,
                double phi, const IntegrationControls& c) {
    RawResult r = integrate_core(p, {start.x, start.y},
                                 dir == FlowDirection::Reversed, phi, c,
                                 [](double, const Vec2&) {});
    if (r.exit != ExitKind::InteriorAtHorizon)
        throw std::runtime_error("flow: orbit terminated early (" +
                                 to_string(r.exit) + " at phi=" +
                                 std::to_string(r.phi_end) + ")");
    return {r.v_end[0], r.v_end[1]};
}

double no_equilibria_check_serial(const ModelParams& p, int grid_n) {
    if (grid_n < 2) throw std::domain_error("no_equilibria_check: grid_n >= 2");
    double h = 1.0 / (grid_n + 1);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= grid_n; ++i) {
        for (int j = 1; j <= grid_n; ++j) {
            auto f = field_forward(p, {i * h, j * h});
            best = std::min(best, std::hypot(f[0], f[1]));
        }
    }
    return best;
}

double no_equilibria_check(const ModelParams& p, int grid_n) {
    if (grid_n < 2) throw std::domain_error("no_equilibria_check: grid_n >= 2");
    double h = 1.0 / (grid_n + 1);
    double best = std::numeric_limits<double>::infinity();
#pragma omp parallel for reduction(min : best) schedule(static)
    for (int i = 1; i <= grid_n; ++i) {
        for (int j = 1; j <= grid_n; ++j) {
            auto f = field_forward(p, {i * h, j * h});
            best = std::min(best, std::hypot(f[0], f[1]));
        }
    }
    return best;
}

std::string trajectory_csv(const Trajectory& t) {
    std::ostringstream os;
    os << "phi,x,y\n";
    for (const auto& [phi, v] : t.samples)
        os << csv_double(phi) << ',' << csv_double(v.x) << ',' << csv_double(v.y) << '\n';
    os << "# exit=" << to_string(t.exit) << '\n';
    return os.str();
}

}  // namespace brw
