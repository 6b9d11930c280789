#include "addrand/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace addrand {

namespace {

constexpr std::uint32_t kTableLimit = (1u << 21) + 64;

std::vector<std::uint32_t> sieve_table() {
  std::vector<bool> composite(kTableLimit + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i <= kTableLimit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = std::uint64_t{i} * i; j <= kTableLimit; j += i) composite[j] = true;
  }
  return primes;
}

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 unsigned_abs(Int n) { return n < 0 ? u64(0) - static_cast<u64>(n) : static_cast<u64>(n); }

// Brent's variant of Pollard rho; n must be odd and composite.
u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min<u64>(128, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += 128;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::span<const std::uint32_t> small_primes() {
  static const std::vector<std::uint32_t> table = sieve_table();
  return table;
}

std::vector<Int> primes_up_to(Int limit) {
  if (limit > static_cast<Int>(kTableLimit))
    throw std::out_of_range("primes_up_to: limit exceeds the prime table");
  std::vector<Int> out;
  for (auto p : small_primes()) {
    if (p > limit) break;
    out.push_back(p);
  }
  return out;
}

std::uint64_t isqrt(std::uint64_t n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a deterministic witness set below 3.3 * 10^24.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_square_free(Int value) {
  u64 n = unsigned_abs(value);
  if (n == 0) return false;
  // Strip primes up to the cube root; what remains has at most two prime
  // factors, so it fails only when it is the square of a prime.
  for (u64 p : small_primes()) {
    if (p * p * p > n) break;
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  if (n == 1) return true;
  u64 r = isqrt(n);
  return r * r != n;
}

std::vector<Int> prime_factors(Int value) {
  u64 n = unsigned_abs(value);
  std::vector<u64> found;
  if (n <= 1) return {};
  for (u64 p : small_primes()) {
    if (p * p > n) break;
    if (n % p == 0) {
      found.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) factor_into(n, found);
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<Int> out;
  for (u64 p : found) out.push_back(static_cast<Int>(p));
  return out;
}

}  // namespace addrand
