#include "sunsde/time_series.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "sunsde/errors.hpp"

namespace sunsde {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

// Solar geometry is evaluated at the interval midpoint: timestamps are
// interval-ending hourly averages.
double envelope_at(UtcTime t, const SiteGeometry& site) {
  return extraterrestrial_irradiance(t - kSecondsPerHour / 2, site);
}

void check_spacing(const std::vector<UtcTime>& ts) {
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (ts[i] - ts[i - 1] != kSecondsPerHour) {
      throw StructuralError("timestamps must be strictly increasing with 1-hour spacing; "
                            "broken at row " +
                            std::to_string(i + 1) + " (" + format_iso8601(ts[i]) + ")");
    }
  }
}

}  // namespace

std::size_t IrradianceSeries::validate() {
  const std::size_t n = size();
  if (irradiance.size() != n || nwp.size() != n || max_irradiance.size() != n ||
      solar_hour.size() != n || missing.size() != n) {
    throw StructuralError("series columns have inconsistent lengths");
  }
  check_spacing(timestamps);
  std::size_t newly_masked = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (nwp[i] < 0.0 || max_irradiance[i] < 0.0) {
      throw StructuralError("negative exogenous input at row " + std::to_string(i + 1));
    }
    if (!missing[i] && !(std::isfinite(irradiance[i]) && irradiance[i] >= 0.0)) {
      missing[i] = true;
      irradiance[i] = kMissing;
      ++newly_masked;
    }
  }
  return newly_masked;
}

IrradianceSeries make_hourly_series(UtcTime start, std::size_t n_hours,
                                    const SiteGeometry& site) {
  site.validate();
  IrradianceSeries s;
  s.timestamps.resize(n_hours);
  s.irradiance.assign(n_hours, kMissing);
  s.nwp.assign(n_hours, 0.0);
  s.max_irradiance.resize(n_hours);
  s.solar_hour.resize(n_hours);
  s.missing.assign(n_hours, true);
  for (std::size_t i = 0; i < n_hours; ++i) {
    const UtcTime t = start + static_cast<std::int64_t>(i) * kSecondsPerHour;
    s.timestamps[i] = t;
    s.max_irradiance[i] = envelope_at(t, site);
    s.solar_hour[i] = local_solar_hour(t, site);
  }
  return s;
}

IrradianceSeries load_csv(const std::string& path, const SiteGeometry& site,
                          LoadReport* report) {
  site.validate();
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open data file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw StructuralError("empty data file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "timestamp_utc,ghi_wm2,nwp_wm2") {
    throw StructuralError("unexpected CSV header '" + line +
                          "', expected 'timestamp_utc,ghi_wm2,nwp_wm2'");
  }

  IrradianceSeries s;
  long row = 1;  // header was row 1
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::string fields[3];
    std::size_t start = 0;
    int nf = 0;
    for (; nf < 3; ++nf) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields[nf] = line.substr(start);
        ++nf;
        break;
      }
      fields[nf] = line.substr(start, comma - start);
      start = comma + 1;
    }
    if (nf != 3) throw ParseError("expected 3 comma-separated fields", row);

    const UtcTime t = parse_iso8601(fields[0]);  // throws ParseError on bad timestamps
    double ghi = kMissing;
    bool miss = fields[1].empty();
    if (!miss) {
      try {
        std::size_t pos = 0;
        ghi = std::stod(fields[1], &pos);
        if (pos != fields[1].size()) throw ParseError("trailing characters in ghi_wm2", row);
      } catch (const ParseError&) {
        throw;
      } catch (...) {
        throw ParseError("malformed ghi_wm2 value '" + fields[1] + "'", row);
      }
    }
    double nwp_val = 0.0;
    if (!fields[2].empty()) {
      try {
        std::size_t pos = 0;
        nwp_val = std::stod(fields[2], &pos);
        if (pos != fields[2].size()) throw ParseError("trailing characters in nwp_wm2", row);
      } catch (const ParseError&) {
        throw;
      } catch (...) {
        throw ParseError("malformed nwp_wm2 value '" + fields[2] + "'", row);
      }
    }
    if (nwp_val < 0.0) throw ParseError("negative nwp_wm2", row);

    s.timestamps.push_back(t);
    s.irradiance.push_back(ghi);
    s.nwp.push_back(nwp_val);
    s.max_irradiance.push_back(envelope_at(t, site));
    s.solar_hour.push_back(local_solar_hour(t, site));
    s.missing.push_back(miss);
  }

  const std::size_t masked = s.validate();
  if (report) {
    report->rows = s.size();
    report->masked_rows = masked;
  }
  return s;
}

void write_csv(const IrradianceSeries& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot open output file: " + path);
  out << "timestamp_utc,ghi_wm2,nwp_wm2\n";
  // shortest exact decimal representation, so load_csv(write_csv(s)) == s
  char buf[32];
  const auto put = [&](double v) {
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, res.ptr - buf);
  };
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_iso8601(series.timestamps[i]) << ',';
    if (!series.missing[i]) put(series.irradiance[i]);
    out << ',';
    put(series.nwp[i]);
    out << '\n';
  }
  if (!out) throw NumericalError("failed writing " + path);
}

std::pair<IrradianceSeries, IrradianceSeries> split_train_test(const IrradianceSeries& series,
                                                               UtcTime boundary) {
  if (series.empty()) throw ArgumentError("cannot split an empty series");
  if (boundary < series.timestamps.front() || boundary > series.timestamps.back()) {
    throw ArgumentError("split boundary " + format_iso8601(boundary) +
                        " outside series range");
  }
  std::size_t cut = 0;
  while (cut < series.size() && series.timestamps[cut] < boundary) ++cut;

  auto slice = [&series](std::size_t lo, std::size_t hi) {
    IrradianceSeries part;
    part.timestamps.assign(series.timestamps.begin() + lo, series.timestamps.begin() + hi);
    part.irradiance.assign(series.irradiance.begin() + lo, series.irradiance.begin() + hi);
    part.nwp.assign(series.nwp.begin() + lo, series.nwp.begin() + hi);
    part.max_irradiance.assign(series.max_irradiance.begin() + lo,
                               series.max_irradiance.begin() + hi);
    part.solar_hour.assign(series.solar_hour.begin() + lo, series.solar_hour.begin() + hi);
    part.missing.assign(series.missing.begin() + lo, series.missing.begin() + hi);
    return part;
  };
  return {slice(0, cut), slice(cut, series.size())};
}

}  // namespace sunsde
