#pragma once

#include "qlzero/ratfunc.hpp"

#include <vector>

namespace qlzero {

// Coefficients of z^0..z^D in eta(z) = (q^6 z; q^4)_inf / (q^4 z; q^4)_inf,
// or in its reciprocal. By the q-binomial theorem
//   (a z; p)_inf / (b z; p)_inf = sum_k (a/b; p)_k / (p; p)_k (b z)^k,
// which gives each coefficient as a closed rational function of q.
struct EtaSeries {
  int order = 0;
  std::vector<RatFuncQ> coeffs;
};

inline EtaSeries eta_expand(int D, bool inverse = false) {
  // eta: a = q^6, b = q^4; eta^{-1}: a = q^4, b = q^6; p = q^4
  const int a = inverse ? 4 : 6, b = inverse ? 6 : 4;
  EtaSeries s;
  s.order = D;
  s.coeffs.reserve(static_cast<std::size_t>(D) + 1);
  QPoly num(1), den(1);
  for (int k = 0; k <= D; ++k) {
    if (k > 0) {
      num *= QPoly(1) - QPoly::q(a - b + 4 * (k - 1));
      den *= QPoly(1) - QPoly::q(4 * k);
    }
    s.coeffs.emplace_back(num * QPoly::q(b * k), den);
  }
  return s;
}

// product of two truncated series in one variable
inline std::vector<RatFuncQ> series_mul(const std::vector<RatFuncQ>& x, const std::vector<RatFuncQ>& y, int D) {
  std::vector<RatFuncQ> r(static_cast<std::size_t>(D) + 1);
  for (int i = 0; i <= D && i < static_cast<int>(x.size()); ++i)
    for (int j = 0; i + j <= D && j < static_cast<int>(y.size()); ++j) r[i + j] += x[i] * y[j];
  return r;
}

}  // namespace qlzero
