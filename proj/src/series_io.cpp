#include "htlab/series_io.hpp"

#include <cstdio>
#include <sstream>

#include "htlab/errors.hpp"

namespace htlab {

std::string to_csv(const PowerSeries& s) {
  std::string out = "n,re,im\n";
  char line[96];
  for (int n = 0; n <= s.order(); ++n) {
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g\n", n, s[n].real(), s[n].imag());
    out += line;
  }
  return out;
}

PowerSeries series_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<cplx> coeffs;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("n,", 0) == 0) continue;
    }
    int n = 0;
    double re = 0.0;
    double im = 0.0;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf", &n, &re, &im) != 3) {
      throw DomainError("malformed coefficient row: " + line);
    }
    if (n != static_cast<int>(coeffs.size())) throw DomainError("coefficient rows out of sequence");
    coeffs.emplace_back(re, im);
  }
  return PowerSeries(std::move(coeffs));
}

nlohmann::json to_json(const PowerSeries& s) {
  auto arr = nlohmann::json::array();
  for (const auto& c : s.coeffs()) arr.push_back({c.real(), c.imag()});
  return arr;
}

PowerSeries series_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw DomainError("coefficient list must be a JSON array");
  std::vector<cplx> coeffs;
  coeffs.reserve(j.size());
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) throw DomainError("coefficient must be [re, im]");
    coeffs.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return PowerSeries(std::move(coeffs));
}

}  // namespace htlab
