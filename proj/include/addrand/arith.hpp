#pragma once

// Exact integer kernel: checked 64-bit arithmetic, Bezout coefficients,
// linear congruences and Chinese remaindering.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

namespace addrand {

using Int = std::int64_t;

/// Raised whenever an intermediate value leaves the signed 64-bit range.
struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_neg(Int a);
Int checked_abs(Int a);

/// Least non-negative representative of a modulo m (m >= 1).
Int floor_mod(Int a, Int m);
Int floor_div(Int a, Int b);
Int ceil_div(Int a, Int b);

/// (a * b) mod m without overflow, result in [0, m).
Int mul_mod(Int a, Int b, Int m);

Int gcd(Int a, Int b);
/// Non-negative lcm; lcm(0, x) = 0.
Int lcm(Int a, Int b);

struct ExtGcd {
  Int g = 0;
  Int u = 0;
  Int v = 0;
  friend bool operator==(const ExtGcd&, const ExtGcd&) = default;
};

/// g = gcd(|a|, |b|) and u*a + v*b = g.
ExtGcd ext_gcd(Int a, Int b);

/// Inverse of a modulo m, if gcd(a, m) = 1. For m = 1 the inverse is 0.
std::optional<Int> inverse_mod(Int a, Int m);

/// {x : x = residue (mod modulus)}; modulus 1 is the whole of Z.
struct CongruenceClass {
  Int modulus = 1;
  Int residue = 0;

  CongruenceClass() = default;
  /// Normalizes the residue into [0, modulus).
  CongruenceClass(Int modulus, Int residue);

  bool contains(Int x) const { return floor_mod(x, modulus) == residue; }

  friend auto operator<=>(const CongruenceClass&, const CongruenceClass&) = default;
};

/// All x with coeff*x + constant = 0 (mod modulus), or nullopt when empty.
std::optional<CongruenceClass> solve_linear_congruence(Int coeff, Int constant, Int modulus);

std::optional<CongruenceClass> intersect(const CongruenceClass& a, const CongruenceClass& b);

/// Intersection of all classes; the empty list gives x = 0 (mod 1).
std::optional<CongruenceClass> crt(std::span<const CongruenceClass> classes);

}  // namespace addrand
