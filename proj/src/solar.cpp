#include "sunsde/solar.hpp"

#include <cmath>

#include "sunsde/errors.hpp"

namespace sunsde {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;
}  // namespace

void SiteGeometry::validate() const {
  if (!(latitude_deg >= -90.0 && latitude_deg <= 90.0)) {
    throw ArgumentError("latitude out of range [-90, 90]");
  }
  if (!(longitude_deg >= -180.0 && longitude_deg <= 180.0)) {
    throw ArgumentError("longitude out of range [-180, 180]");
  }
}

double solar_declination_rad(int n) {
  return 23.45 * kDegToRad * std::sin(2.0 * kPi * (284.0 + n) / 365.0);
}

double eccentricity_correction(int n) {
  return 1.0 + 0.033 * std::cos(2.0 * kPi * n / 365.0);
}

double equation_of_time_min(int n) {
  const double b = 2.0 * kPi * (n - 1) / 365.0;
  return 229.2 * (0.000075 + 0.001868 * std::cos(b) - 0.032077 * std::sin(b) -
                  0.014615 * std::cos(2.0 * b) - 0.040890 * std::sin(2.0 * b));
}

double local_solar_hour(UtcTime t, const SiteGeometry& site) {
  const int n = day_of_year(t);
  double h = utc_hour_of_day(t) + site.longitude_deg / 15.0 + equation_of_time_min(n) / 60.0;
  h = std::fmod(h, 24.0);
  if (h < 0.0) h += 24.0;
  return h;
}

double cos_solar_zenith(UtcTime t, const SiteGeometry& site) {
  const int n = day_of_year(t);
  const double decl = solar_declination_rad(n);
  const double lat = site.latitude_deg * kDegToRad;
  const double hour_angle = (local_solar_hour(t, site) - 12.0) * 15.0 * kDegToRad;
  return std::sin(lat) * std::sin(decl) + std::cos(lat) * std::cos(decl) * std::cos(hour_angle);
}

double extraterrestrial_irradiance(UtcTime t, const SiteGeometry& site) {
  const double cz = cos_solar_zenith(t, site);
  if (cz <= 0.0) return 0.0;
  return kSolarConstant * eccentricity_correction(day_of_year(t)) * cz;
}

}  // namespace sunsde
