#pragma once

#include "gwloc/placement.hpp"

namespace gwloc {

/// Link capacities in Gbps.
struct CapacityParams {
  double ws = 1.0;    // small-cell wireless link
  double wg = 100.0;  // gateway fiber link

  void validate() const;
};

/// NMinusM divides total hops by the non-gateway count, N by all cells.
enum class DenominatorMode { NMinusM, N };

struct AnhResult {
  long total_hops = 0;
  double anh = 0.0;
  DenominatorMode mode = DenominatorMode::NMinusM;
};

struct BncResult {
  double capacity = 0.0;  // Gbps
};

/// Average number of hops. Throws DegenerateDenominator when N == M in NMinusM mode.
AnhResult anh(const Placement& placement, DenominatorMode mode = DenominatorMode::NMinusM);
AnhResult anh_from_total(long total_hops, int n, int m, DenominatorMode mode = DenominatorMode::NMinusM);

/// Backhaul capacity: min(N*ws, M*(wg - ws)) / anh + M*ws.
/// Throws DivisionByZero for anh == 0.
BncResult bnc(double anh_value, int n, int m, const CapacityParams& params = {});

}  // namespace gwloc
