#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace debrisim {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Physical constants of the Earth/observation model. All lengths in km,
/// times in s, angles in rad unless a name says otherwise.
struct PhysicalConstants {
    double mu = 398600.44;              // km^3/s^2
    double earth_radius = 6378.14;      // km
    double j2 = 1.08263e-3;
    double earth_rotation_rate = 7.2921e-5;  // rad/s
    double au_km = 1.495978707e8;
    double light_speed = 299792.458;    // km/s
};

inline constexpr PhysicalConstants kEarth{};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kDegPerRad = 180.0 / kPi;
inline constexpr double kRadPerDeg = kPi / 180.0;
inline constexpr double kArcsecPerRad = 206264.80624709636;
inline constexpr double kSecPerDay = 86400.0;

/// Wraps an angle to [0, 2*pi).
double wrap_two_pi(double angle);
/// Wraps an angle to (-pi, pi].
double wrap_pm_pi(double angle);

}  // namespace debrisim
