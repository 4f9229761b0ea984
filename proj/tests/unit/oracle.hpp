// Straightforward reference implementations used as test oracles. Nothing here shares code
// with the library beyond the public types.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "solgas/sampling.hpp"

namespace oracle {

using C = std::complex<double>;

// sum over nu of prod_{i<j} L_ij^{nu_i nu_j} prod_i e_i^{nu_i}, one configuration at a time.
inline C subset_sum(const std::vector<C>& e, const std::function<C(std::size_t, std::size_t)>& l) {
  const std::size_t n = e.size();
  C total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    C term = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      term *= e[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        if (mask >> j & 1) term *= l(i, j);
      }
    }
    total += term;
  }
  return total;
}

// Same sum restricted to configurations with k occupied sites.
inline C subset_sum_k(const std::vector<C>& e, const std::function<C(std::size_t, std::size_t)>& l,
                      std::size_t k) {
  const std::size_t n = e.size();
  C total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
    C term = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      term *= e[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        if (mask >> j & 1) term *= l(i, j);
      }
    }
    total += term;
  }
  return total;
}

inline C kp_factor(C a1, C b1, C a2, C b2) {
  return (a1 - a2) * (b1 - b2) / ((a1 + b2) * (b1 + a2));
}
inline C bkp_factor(C a1, C b1, C a2, C b2) {
  return (a1 - a2) * (a1 - b2) * (b1 - a2) * (b1 - b2) /
         ((a1 + a2) * (a1 + b2) * (b1 + a2) * (b1 + b2));
}
inline C toda_factor(C a1, C b1, C a2, C b2) {
  return (a1 - a2) * (b1 - b2) / ((a1 - b2) * (b1 - a2));
}

// KP phase sum_n (a^n - (-b)^n) t_n.
inline C kp_phase(C a, C b, const std::vector<C>& t) {
  C out = 0.0;
  for (std::size_t n = 1; n <= t.size(); ++n) {
    out += (std::pow(a, static_cast<double>(n)) - std::pow(-b, static_cast<double>(n))) * t[n - 1];
  }
  return out;
}

// Toda phase m log(a/b) + sum (a^p - b^p) t_p + sum (a^-p - b^-p) t_{-p}.
inline C toda_phase(C a, C b, int m, const std::vector<C>& t, const std::vector<C>& tneg) {
  C out = static_cast<double>(m) * std::log(a / b);
  for (std::size_t p = 1; p <= t.size(); ++p) {
    const double e = static_cast<double>(p);
    out += (std::pow(a, e) - std::pow(b, e)) * t[p - 1];
    out += (std::pow(a, -e) - std::pow(b, -e)) * tneg[p - 1];
  }
  return out;
}

// Potential of unit charge at z due to charges q_k at points w_k: -sum q_k log|z - w_k|.
inline double superposition(C z, const std::vector<std::pair<double, C>>& charges) {
  double v = 0.0;
  for (const auto& [q, w] : charges) v -= q * std::log(std::abs(z - w));
  return v;
}

inline C random_complex(solgas::Rng& rng, double lo, double hi) {
  return std::polar(solgas::uniform(rng, lo, hi), solgas::uniform(rng, 0.0, 6.283185307179586));
}

inline double rel(C a, C b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace oracle
