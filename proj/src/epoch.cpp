#include "debrisim/astro/epoch.hpp"

#include <cmath>

#include "debrisim/astro/constants.hpp"

namespace debrisim {

double wrap_two_pi(double angle) {
    double w = std::fmod(angle, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

double wrap_pm_pi(double angle) {
    double w = std::fmod(angle + kPi, kTwoPi);
    if (w <= 0.0) w += kTwoPi;
    return w - kPi;
}

namespace {

// Days from 1970-01-01 to the civil date (proleptic Gregorian).
long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

// Reference epoch = 2000-01-01 12:00 on the uniform scale.
const double kRefUnixDays = 10957.5;

// Rotation angle at the reference epoch (~280.4606 deg, GMST-like).
const double kRotationAtRef = 4.894961212823756;

}  // namespace

Epoch epoch_from_civil(int year, int month, int day, double seconds_of_day) {
    return Epoch{static_cast<double>(days_from_civil(year, month, day)) - kRefUnixDays +
                 seconds_of_day / kSecPerDay};
}

double earth_rotation_angle(const Epoch& t) {
    return wrap_two_pi(kRotationAtRef + kEarth.earth_rotation_rate * t.days * kSecPerDay);
}

Epoch epoch_with_zero_rotation() {
    return Epoch{(kTwoPi - kRotationAtRef) / (kEarth.earth_rotation_rate * kSecPerDay)};
}

}  // namespace debrisim
