#pragma once

#include <string>
#include <vector>

#include "wqed/config.hpp"
#include "wqed/sweep.hpp"

namespace wqed {

// 17-significant-digit decimal form; round-trips to the exact double.
std::string format_double(double value);

// CSV column order is fixed:
//   omega, T, R[, dT_domega][, cos_KL, forbidden, spacing]
// with a mandatory header row, '.' decimal point, LF line endings.
std::string spectrum_csv(const SpectrumResult& result);
std::string spectrum_json(const RunConfig& config, const SpectrumResult& result);

std::string bands_csv(const BandsResult& result);
std::string bands_json(const RunConfig& config, const BandsResult& result);
std::string gap_reports_json(const BandsResult& result);

std::string gapfit_csv(const GapFitReport& report);
std::string gapfit_json(const RunConfig& config, const GapFitReport& report);

// Writes to the given path, or to stdout when the path is empty.
void write_text(const std::string& path, const std::string& content);

}  // namespace wqed
