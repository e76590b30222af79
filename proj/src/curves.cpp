#include "brw/curves.hpp"

#include <cmath>

namespace brw {

std::string to_string(CurveKind k) {
    return k == CurveKind::HplusMinus ? "hpm" : "hmp";
}

std::string to_string(CurveMethod m) {
    switch (m) {
        case CurveMethod::SeriesA: return "series_a";
        case CurveMethod::Shooting: return "shooting";
        case CurveMethod::ReverseFromCorner: return "reverse_from_corner";
    }
    return "?";
}

namespace {

enum class Shot { TooLarge, TooSmall };

Shot classify_shot(const ModelParams& p, double x0, const CurveControls& c) {
    Trajectory t = integrate(p, {x0, 0.0}, FlowDirection::Reversed, c.horizon, c.integ);
    switch (t.exit) {
        case ExitKind::ExitRight:
            return Shot::TooLarge;
        case ExitKind::ReachedCornerBall:
        case ExitKind::ExitLeft:
        case ExitKind::ExitTop:
            return Shot::TooSmall;
        default:
            throw HorizonError(
                "hpm_at_zero: shot from x0=" + std::to_string(x0) +
                " unresolved (" + to_string(t.exit) + " at phi=" +
                std::to_string(t.phi_end()) + ", point=(" +
                std::to_string(t.back().x) + "," + std::to_string(t.back().y) +
                ")); increase the horizon");
    }
}

// A(1-) from the truncated series; the tail estimate is reported alongside
// but never added in.
double a_at_one_minus(const SeriesCoeffs& s) { return s.partial_sum; }

Trajectory constant_trajectory(PhasePoint at, ExitKind exit) {
    Trajectory t;
    t.direction = FlowDirection::Reversed;
    t.samples = {{0.0, at}};
    t.exit = exit;
    return t;
}

}  // namespace

HpmZero hpm_at_zero(const ModelParams& p, double tol, const CurveControls& c) {
    if (tol < 1e-10) throw std::domain_error("hpm_at_zero: tol >= 1e-10 required");
    DerivedConstants d = derive_constants(p);
    if (d.regime == Regime::Supercritical) return {0.0, {0.0, 0.0}};

    double lo = 0.01, hi = 1.0 - 1e-9;
    if (classify_shot(p, lo, c) != Shot::TooSmall)
        throw HorizonError("hpm_at_zero: left bracket endpoint misclassified");
    if (classify_shot(p, hi, c) != Shot::TooLarge)
        throw HorizonError("hpm_at_zero: right bracket endpoint misclassified");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (classify_shot(p, mid, c) == Shot::TooSmall)
            lo = mid;
        else
            hi = mid;
    }
    return {0.5 * (lo + hi), {lo, hi}};
}

CurveResult hpm_curve(const ModelParams& p, const CurveControls& c) {
    DerivedConstants d = derive_constants(p);
    CurveResult r;
    r.kind = CurveKind::HplusMinus;
    if (d.regime == Regime::Supercritical) {
        SeriesCoeffs s = compute_coeffs(p, c.series_n_max);
        double a1m = a_at_one_minus(s);
        r.points = integrate(p, {a1m, 1.0}, FlowDirection::Reversed, c.horizon, c.integ);
        r.method = CurveMethod::SeriesA;
        r.value_at_0 = 0.0;
        r.value_at_1_minus = a1m;
        return r;
    }
    HpmZero z = hpm_at_zero(p, c.shoot_tol, c);
    r.points = integrate(p, {z.value, 0.0}, FlowDirection::Reversed, c.horizon, c.integ);
    r.method = CurveMethod::Shooting;
    r.value_at_0 = z.value;
    r.value_at_1_minus = 1.0;
    r.bracket = z.bracket;
    return r;
}

CurveResult hmp_curve(const ModelParams& p, const CurveControls& c) {
    Mat2 j = forward_jacobian(p, {0.0, 0.0});
    double tr = j.trace(), det = j.det();
    double disc = tr * tr - 4.0 * det;
    if (disc <= 0.0)
        throw SpectralError("hmp_curve: non-real spectrum at (0,0)");
    double s = std::sqrt(disc);
    // (0,0) is a saddle; the slow (smaller |lambda|) direction carries the
    // pgf curve out of the corner.
    std::optional<std::array<double, 2>> dir;
    double best = std::numeric_limits<double>::infinity();
    for (double lam : {0.5 * (tr - s), 0.5 * (tr + s)}) {
        // (j.a - lam) v1 + j.b v2 = 0, j.b = q+ > 0
        std::array<double, 2> v{1.0, (lam - j.a) / j.b};
        if (v[1] <= 0.0) continue;  // must point into the open square
        if (std::abs(lam) < best) {
            best = std::abs(lam);
            dir = v;
        }
    }
    if (!dir)
        throw SpectralError("hmp_curve: no interior-pointing eigenvector at (0,0)");
    double n = std::hypot((*dir)[0], (*dir)[1]);
    double off = 10.0 * c.integ.ball_radius;
    PhasePoint start{off * (*dir)[0] / n, off * (*dir)[1] / n};

    CurveResult r;
    r.kind = CurveKind::HminusPlus;
    r.method = CurveMethod::ReverseFromCorner;
    r.points = integrate(p, start, FlowDirection::Reversed, c.horizon, c.integ);
    r.value_at_0 = 0.0;
    DerivedConstants d = derive_constants(p);
    if (d.regime == Regime::Supercritical) {
        if (r.points.exit != ExitKind::ExitRight)
            throw HorizonError("hmp_curve: expected exit through x=1, got " +
                               to_string(r.points.exit));
        r.value_at_1_minus = r.points.back().y;
    } else {
        if (r.points.exit != ExitKind::ReachedCornerBall)
            throw HorizonError("hmp_curve: expected corner-ball arrival, got " +
                               to_string(r.points.exit));
        r.value_at_1_minus = 1.0;
    }
    return r;
}

Trajectory boundary_solution(const ModelParams& p, BoundaryTheta theta,
                             const CurveControls& c) {
    DerivedConstants d = derive_constants(p);
    bool super = d.regime == Regime::Supercritical;
    if (theta == BoundaryTheta::Zero) {
        if (super) return constant_trajectory({0.0, 0.0}, ExitKind::ReachedOriginBall);
        return hpm_curve(p, c).points;
    }
    if (!super) return constant_trajectory({1.0, 1.0}, ExitKind::ReachedCornerBall);
    return hpm_curve(p, c).points;  // supercritical: (B,C) runs down x=A(y)
}

namespace {

// strictly-interior proper segment intersection, tolerant to the shared
// corner endpoints of the two probabilistic curves
bool proper_interior_cross(PhasePoint a, PhasePoint b, PhasePoint c, PhasePoint d) {
    auto orient = [](PhasePoint p, PhasePoint q, PhasePoint r) {
        return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    };
    double o1 = orient(a, b, c), o2 = orient(a, b, d);
    double o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (!((o1 > 0) != (o2 > 0) && (o3 > 0) != (o4 > 0))) return false;
    double den = (b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x);
    if (den == 0.0) return false;
    double t = ((c.x - a.x) * (d.y - c.y) - (c.y - a.y) * (d.x - c.x)) / den;
    double ix = a.x + t * (b.x - a.x), iy = a.y + t * (b.y - a.y);
    const double eps = 1e-9;
    return ix > eps && ix < 1.0 - eps && iy > eps && iy < 1.0 - eps;
}

}  // namespace

int interior_crossings(const Trajectory& ta, const Trajectory& tb) {
    int n = 0;
    for (size_t i = 0; i + 1 < ta.samples.size(); ++i)
        for (size_t j = 0; j + 1 < tb.samples.size(); ++j)
            if (proper_interior_cross(ta.samples[i].second, ta.samples[i + 1].second,
                                      tb.samples[j].second, tb.samples[j + 1].second))
                ++n;
    return n;
}

}  // namespace brw
