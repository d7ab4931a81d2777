#include "swipt/csv.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "swipt/errors.hpp"
#include "swipt/format.hpp"

namespace swipt {

namespace {

std::size_t power_columns(const std::vector<RECurve>& curves) {
  std::size_t n = 0;
  for (const auto& c : curves) {
    for (const auto& p : c.points) n = std::max(n, p.powers.size());
  }
  return n;
}

void require_points(const std::vector<RECurve>& curves) {
  bool any = false;
  for (const auto& c : curves) any = any || !c.points.empty();
  if (!any) throw InvalidArgument("emit_csv: no points to write");
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<RECurve>& curves) {
  require_points(curves);
  const std::size_t n_power = power_columns(curves);
  out << "scheme,ebar_normalized,ebar_watts_mean,rate_bits_mean,energy_watts_mean";
  for (std::size_t k = 1; k <= n_power; ++k) out << ",power_tx" << k << "_mean";
  out << ",trials,seed\n";
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      out << c.scheme << ',' << format_double(p.ebar_normalized) << ','
          << format_double(p.ebar_watts) << ',' << format_double(p.rate_bits) << ','
          << format_double(p.energy_watts);
      for (std::size_t k = 0; k < n_power; ++k) {
        out << ',' << format_double(k < p.powers.size() ? p.powers[k] : 0.0);
      }
      out << ',' << p.trials << ',' << c.seed << '\n';
    }
  }
}

std::string csv_text(const std::vector<RECurve>& curves) {
  std::ostringstream out;
  write_csv(out, curves);
  return out.str();
}

void emit_csv(const std::vector<RECurve>& curves, const std::filesystem::path& path) {
  const std::string text = csv_text(curves);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace swipt
