#include "debrisim/metrics/metrics.hpp"

namespace debrisim {

const char* orbit_class_name(OrbitClass c) {
    switch (c) {
        case OrbitClass::LEO: return "LEO";
        case OrbitClass::PLEO: return "PLEO";
        case OrbitClass::HLEO: return "HLEO";
    }
    return "?";
}

Classification classify(const KeplerianElements& el) {
    Classification out;
    out.out_of_region = el.perigee_altitude() >= 2000.0;
    if (el.a >= 25000.0) out.cls = OrbitClass::HLEO;
    else if (el.a > kEarth.earth_radius + 2000.0) out.cls = OrbitClass::PLEO;
    else out.cls = OrbitClass::LEO;
    return out;
}

double radar_min_diameter_cm(double perigee_height_km, const RadarCurve& curve) {
    const double ratio = perigee_height_km / curve.h_ref_km;
    return ratio * ratio * curve.d_ref_cm;
}

}  // namespace debrisim
