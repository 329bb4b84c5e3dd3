#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sunsde/solar.hpp"
#include "sunsde/time_utils.hpp"

namespace sunsde {

/// Exogenous inputs attached to one observation hour.
struct ExogenousAt {
  double nwp = 0.0;             // predicted irradiance, W/m²
  double max_irradiance = 0.0;  // extraterrestrial envelope, W/m²
  double hour_of_day = 0.0;     // local solar hour in [0, 24)
};

/// Hourly irradiance observations with aligned exogenous inputs.
///
/// Timestamps are interval-ending hourly instants, strictly increasing with
/// constant 1-hour spacing. Invalid rows are masked missing, never dropped, so
/// the spacing invariant always holds. max_irradiance and solar_hour are derived
/// from solar geometry: the envelope at the interval midpoint and the local
/// solar hour at the timestamp itself.
class IrradianceSeries {
 public:
  std::vector<UtcTime> timestamps;
  std::vector<double> irradiance;      // observed Y_k, W/m²
  std::vector<double> nwp;             // forecast input, W/m²
  std::vector<double> max_irradiance;  // envelope Max_t, W/m²
  std::vector<double> solar_hour;      // local solar hour at the timestamp
  std::vector<bool> missing;

  std::size_t size() const { return timestamps.size(); }
  bool empty() const { return timestamps.empty(); }

  ExogenousAt exog_at(std::size_t i) const {
    return ExogenousAt{nwp[i], max_irradiance[i], solar_hour[i]};
  }

  /// Enforces the container invariants; masks negative observations as missing
  /// (returns the number of rows newly masked) and throws StructuralError on
  /// broken spacing or negative exogenous inputs.
  std::size_t validate();
};

/// Builds an empty-but-aligned series of n hourly rows starting at `start`,
/// with max_irradiance/solar_hour filled from solar geometry and all
/// observations masked missing.
IrradianceSeries make_hourly_series(UtcTime start, std::size_t n_hours,
                                    const SiteGeometry& site);

struct LoadReport {
  std::size_t rows = 0;
  std::size_t masked_rows = 0;  // rows flagged missing during validation
};

/// Reads the `timestamp_utc,ghi_wm2,nwp_wm2` CSV schema; Max_t is computed from
/// solar geometry, not read. Rows failing value validation are masked missing.
IrradianceSeries load_csv(const std::string& path, const SiteGeometry& site,
                          LoadReport* report = nullptr);

/// Writes the same schema load_csv reads; missing observations become empty fields.
void write_csv(const IrradianceSeries& series, const std::string& path);

/// Splits at `boundary`: first part strictly before, second at/after.
/// Throws ArgumentError when boundary lies outside [first, last].
std::pair<IrradianceSeries, IrradianceSeries> split_train_test(const IrradianceSeries& series,
                                                               UtcTime boundary);

}  // namespace sunsde
