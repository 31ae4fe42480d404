#include "rpsim/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "rpsim/errors.hpp"

namespace rpsim {

std::string format_sci(double x, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", significant_digits - 1, x);
  std::string s(buf);
  const auto e = s.find('e');
  if (e == std::string::npos) return s;  // nan/inf
  const int exponent = std::atoi(s.c_str() + e + 1);
  return s.substr(0, e) + "e" + std::to_string(exponent);
}

std::string simulation_csv(const Trajectory& traj, double time_scale) {
  std::string out = "t,trace,qs_norm,concurrence_norm,eof_norm\n";
  for (std::size_t i = 0; i < traj.norm_valid_count; ++i) {
    const auto& p = traj.observables[i];
    out += format_sci(p.t * time_scale, 9);
    out += ',';
    out += format_sci(p.trace, 9);
    out += ',';
    out += format_sci(p.qs_norm, 9);
    out += ',';
    out += format_sci(p.concurrence_norm, 9);
    out += ',';
    out += format_sci(p.eof_norm, 9);
    out += '\n';
  }
  return out;
}

std::string yield_csv(const std::vector<YieldRow>& rows) {
  std::string out = "k_or_B,Y_S_eigenbasis,Y_S_timedomain,abs_diff\n";
  for (const auto& row : rows) {
    out += format_sci(row.x, 9);
    out += ',';
    out += format_sci(row.y_eigen, 9);
    out += ',';
    out += format_sci(row.y_time, 9);
    out += ',';
    out += format_sci(row.abs_diff, 9);
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream stream(path, std::ios::binary | std::ios::trunc);
  if (!stream) throw ConfigError("cannot open '" + path + "' for writing");
  stream.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!stream) throw ConfigError("failed writing '" + path + "'");
}

}  // namespace rpsim
