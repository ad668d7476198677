#include <gmpxx.h>

#include "fivevertex/errors.hpp"
#include "fivevertex/exact.hpp"

namespace fv::exact {

mpz_class binomial(long n, long k) {
  if (n < 0) throw DomainError("binomial: negative n");
  if (k < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

mpz_class factorial(long n) {
  if (n < 0) throw DomainError("factorial: negative argument");
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

mpz_class macmahon_pl(long a, long b, long c) {
  if (a < 0 || b < 0 || c < 0) throw DomainError("macmahon_pl: negative box side");
  mpq_class product = 1;
  for (long j = 1; j <= a; ++j) {
    product *= mpq_class(factorial(b + c + j - 1) * factorial(j - 1),
                         factorial(b + j - 1) * factorial(c + j - 1));
  }
  product.canonicalize();
  if (product.get_den() != 1) throw ConsistencyError("macmahon_pl: non-integral product");
  return product.get_num();
}

}  // namespace fv::exact
