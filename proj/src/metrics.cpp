#include "gwloc/metrics.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace gwloc {

void CapacityParams::validate() const {
  if (!(ws > 0.0 && wg > ws)) throw InvalidConfig(fmt::format("capacities need wg > ws > 0 (ws={}, wg={})", ws, wg));
}

AnhResult anh_from_total(long total_hops, int n, int m, DenominatorMode mode) {
  AnhResult r;
  r.total_hops = total_hops;
  r.mode = mode;
  const int denom = mode == DenominatorMode::NMinusM ? n - m : n;
  if (denom <= 0)
    throw DegenerateDenominator(fmt::format("ANH denominator is {} (N={}, M={})", denom, n, m));
  r.anh = static_cast<double>(total_hops) / denom;
  return r;
}

AnhResult anh(const Placement& placement, DenominatorMode mode) {
  return anh_from_total(placement.total_hops(), placement.n(), placement.m(), mode);
}

BncResult bnc(double anh_value, int n, int m, const CapacityParams& params) {
  params.validate();
  if (anh_value == 0.0) throw DivisionByZero("capacity is unbounded by the model when ANH is 0");
  if (!(anh_value > 0.0)) throw InvalidConfig(fmt::format("ANH must be positive, got {}", anh_value));
  const double spectral = std::min(n * params.ws, m * (params.wg - params.ws));
  return {spectral / anh_value + m * params.ws};
}

}  // namespace gwloc
