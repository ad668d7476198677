#pragma once

#include <gmpxx.h>

#include "fivevertex/exact.hpp"
#include "fivevertex/numeric.hpp"

namespace fv::exact {

struct HighPrecisionOptions {
  unsigned initial_bits = 256;
  unsigned max_bits = 16384;
  // Accept once two runs at b and 2b bits agree on log P to this absolute level.
  double agreement = 1e-25;
};

struct HighPrecisionLogP {
  Real log_p = 0;
  unsigned bits = 0;      // precision of the accepted run
  double disagreement = 0;  // |log P(b) - log P(2b)| at acceptance
  bool precision_warning = false;  // max_bits reached without agreement
};

// log P_{N,M,L}(1/x) from the Hankel determinant evaluated in MPFR floating
// point with Gaussian elimination and partial pivoting. The precision is
// doubled until two consecutive runs agree.
HighPrecisionLogP log_p_high_precision(const FiniteModel& model, const mpq_class& x,
                                       const HighPrecisionOptions& options = {});

// log P_{N,M,L}(1/x) from the exact rational Hankel determinant.
Real log_p_exact(const FiniteModel& model, const mpq_class& x);

}  // namespace fv::exact
