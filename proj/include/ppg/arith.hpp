#pragma once

#include <cstdint>
#include <limits>

#include "ppg/error.hpp"

namespace ppg {

using i64 = std::int64_t;
using i128 = __int128;

/// p^e, throwing Overflow when the result leaves the safe range (< 2^62).
inline i64 ipow(i64 p, int e) {
  i64 r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (i64{1} << 62) / p) throw Error(ErrorKind::Overflow, "prime power exceeds 2^62");
    r *= p;
  }
  return r;
}

/// Non-negative residue of a modulo m (m > 0).
inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 mod(i128 a, i64 m) {
  i128 r = a % m;
  if (r < 0) r += m;
  return static_cast<i64>(r);
}

inline i64 mulmod(i64 a, i64 b, i64 m) { return mod(static_cast<i128>(a) * b, m); }

/// p-adic valuation; v_p(0) is reported as `cap`.
inline int vp(i64 a, i64 p, int cap = std::numeric_limits<int>::max()) {
  if (a == 0) return cap;
  if (a < 0) a = -a;
  int v = 0;
  while (a % p == 0 && v < cap) {
    a /= p;
    ++v;
  }
  return v;
}

/// Inverse of a unit u modulo m via extended Euclid.
inline i64 inv_mod(i64 u, i64 m) {
  i64 a = mod(u, m), b = m;
  i64 x0 = 1, x1 = 0;
  while (b != 0) {
    i64 q = a / b;
    i64 t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  if (a != 1) throw Error(ErrorKind::InvalidArgument, "not a unit");
  return mod(x0, m);
}

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Checked multiply / add for integer matrix work over Z.
inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer overflow");
  return r;
}

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer overflow");
  return r;
}

}  // namespace ppg
