#pragma once

// Frontier CSV: one row per (curve, grid point), curves in sweep order.
//
//   scheme,ebar_normalized,ebar_watts_mean,rate_bits_mean,energy_watts_mean,
//   power_tx1_mean,...,power_txK1_mean,trials,seed
//
// Numbers use the shortest round-trip decimal form with '.' as separator.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "swipt/sweep.hpp"

namespace swipt {

void write_csv(std::ostream& out, const std::vector<RECurve>& curves);

/// Throws InvalidArgument on empty input (no file is created) and IoError
/// when the path cannot be written.
void emit_csv(const std::vector<RECurve>& curves, const std::filesystem::path& path);

std::string csv_text(const std::vector<RECurve>& curves);

}  // namespace swipt
