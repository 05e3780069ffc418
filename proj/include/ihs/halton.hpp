#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace ihs {

// Radical-inverse (Halton) points in [0,1)^dim. Deterministic; used for every
// seed set and coefficient search in the library so runs are reproducible.
inline double radical_inverse(std::size_t index, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

inline unsigned nth_prime(std::size_t i) {
  static constexpr std::array<unsigned, 24> primes{2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                                   41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
  if (i < primes.size()) return primes[i];
  unsigned p = primes.back();
  std::size_t count = primes.size() - 1;
  while (count < i) {
    p += 2;
    bool is_prime = true;
    for (unsigned d = 3; d * d <= p; d += 2)
      if (p % d == 0) { is_prime = false; break; }
    if (is_prime) ++count;
  }
  return p;
}

inline std::vector<double> halton_point(std::size_t index, std::size_t dim) {
  std::vector<double> x(dim);
  for (std::size_t d = 0; d < dim; ++d) x[d] = radical_inverse(index, nth_prime(d));
  return x;
}

}  // namespace ihs
