#pragma once

#include <cmath>
#include <fstream>

#include "json.hpp"
#include "madelung/params.hpp"
#include "madelung/profiles.hpp"
#include "madelung/solver.hpp"

namespace testing {

inline const nlohmann::json& golden() {
  static const nlohmann::json g = [] {
    std::ifstream f(MADELUNG_TEST_GOLDEN);
    return nlohmann::json::parse(f);
  }();
  return g;
}

inline const nlohmann::json& golden_radial(double beta, const char* variant = "paper-radial") {
  for (const auto& c : golden().at("radial")) {
    if (c.at("beta").get<double>() == beta && c.at("variant").get<std::string>() == variant) {
      return c;
    }
  }
  throw std::runtime_error("no golden case");
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Canonical solutions shared across test cases (m = hbar = u0 = 1).
inline const madelung::RadialProfile& radial(double beta) {
  static std::vector<std::pair<double, madelung::RadialProfile>> cache;
  for (const auto& [b, p] : cache) {
    if (b == beta) return p;
  }
  cache.emplace_back(beta,
                     madelung::solve_radial(madelung::radial_request(madelung::make_params(1, 1, beta))));
  return cache.back().second;
}

}  // namespace testing
