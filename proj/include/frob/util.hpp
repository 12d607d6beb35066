#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace frob {

/// Deterministic primality check for moduli up to 2^31.
inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// p^e with overflow guard; exponents in this toolkit stay well below 2^62.
inline int64_t checked_pow(int64_t base, int64_t exp) {
  if (exp < 0) throw std::invalid_argument("checked_pow: negative exponent");
  int64_t result = 1;
  for (int64_t i = 0; i < exp; ++i) {
    if (result > (int64_t(1) << 62) / base)
      throw std::overflow_error("checked_pow: overflow");
    result *= base;
  }
  return result;
}

inline int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline int64_t ceil_div(int64_t a, int64_t b) { return -floor_div(-a, b); }

inline int64_t pos_mod(int64_t a, int64_t b) {
  int64_t m = a % b;
  return m < 0 ? m + b : m;
}

inline void hash_combine(size_t& seed, size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

/// Runs fn(i) for i in [0, count) across at most `threads` workers.
/// fn must be safe to call concurrently for distinct indices.
inline void parallel_for(uint64_t count, int threads,
                         const std::function<void(uint64_t)>& fn) {
  if (threads <= 1 || count < 2) {
    for (uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  unsigned hw = std::thread::hardware_concurrency();
  unsigned workers = std::min<uint64_t>(std::min<unsigned>(threads, hw ? hw : 1), count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (uint64_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace frob
