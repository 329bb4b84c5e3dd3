#pragma once

#include "sunsde/time_utils.hpp"

namespace sunsde {

/// Observation site. Longitude is degrees east of Greenwich.
struct SiteGeometry {
  double latitude_deg = 0.0;   // [-90, 90]
  double longitude_deg = 0.0;  // [-180, 180]

  void validate() const;
};

/// Total solar irradiance at 1 AU, W/m² (modern TSI consensus value).
constexpr double kSolarConstant = 1361.0;

/// Solar declination in radians (Cooper's equation).
double solar_declination_rad(int day_of_year);

/// Sun-Earth distance (eccentricity) correction factor, dimensionless.
double eccentricity_correction(int day_of_year);

/// Equation of time in minutes (Spencer's series).
double equation_of_time_min(int day_of_year);

/// Local solar time in hours [0, 24), from UTC, longitude and the equation of time.
double local_solar_hour(UtcTime t, const SiteGeometry& site);

/// Cosine of the solar zenith angle; negative when the sun is below the horizon.
double cos_solar_zenith(UtcTime t, const SiteGeometry& site);

/// Extraterrestrial irradiance on a horizontal plane, W/m².
/// Zero exactly when the sun is at or below the horizon.
double extraterrestrial_irradiance(UtcTime t, const SiteGeometry& site);

}  // namespace sunsde
