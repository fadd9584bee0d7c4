#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "ruledricci/jet.hpp"

namespace rr {

using Vec3 = Eigen::Vector3d;

/// Position and first three parameter derivatives of a space curve at one
/// parameter value.
struct CurveJet {
    Vec3 p  = Vec3::Zero();
    Vec3 d1 = Vec3::Zero();
    Vec3 d2 = Vec3::Zero();
    Vec3 d3 = Vec3::Zero();
};

inline CurveJet curve_jet_from_components(const Jet3& x, const Jet3& y, const Jet3& z) {
    CurveJet j;
    j.p  = Vec3(x.d0, y.d0, z.d0);
    j.d1 = Vec3(x.d1, y.d1, z.d1);
    j.d2 = Vec3(x.d2, y.d2, z.d2);
    j.d3 = Vec3(x.d3, y.d3, z.d3);
    return j;
}

/// Composition alpha(m(s)) for a scalar reparametrization jet m.
inline CurveJet compose(const CurveJet& a, const Jet3& m) {
    CurveJet j;
    j.p  = a.p;
    j.d1 = a.d1 * m.d1;
    j.d2 = a.d2 * (m.d1 * m.d1) + a.d1 * m.d2;
    j.d3 = a.d3 * (m.d1 * m.d1 * m.d1) + 3.0 * a.d2 * (m.d1 * m.d2) + a.d1 * m.d3;
    return j;
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool contains(double t, double slack = 0.0) const { return t >= lo - slack && t <= hi + slack; }
};

}  // namespace rr
