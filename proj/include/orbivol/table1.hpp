#pragma once

#include <complex>
#include <vector>

namespace orbivol {

// One reference row of the double-twist orbifold table: knot family
// J(2n, -2m), cone order r, trace-field root Lambda, and complex volume
// w = i(vol + i cs)  stored as reported (volume = Im w, cs from -Re w).
struct GoldenRow {
  int two_n = 0;
  int two_m = 0;
  int r = 0;
  std::complex<double> lambda;
  std::complex<double> w;
};

// Parsed contents of the embedded reference table (79 rows, sorted as
// published: by (2n, 2m) family, then by r ascending).
const std::vector<GoldenRow>& golden_rows();

}  // namespace orbivol
