#include "addrand/arith.hpp"

#include <limits>
#include <string>

namespace addrand {

namespace {

[[noreturn]] void overflow(const char* op) {
  throw OverflowError(std::string("integer overflow in ") + op);
}

}  // namespace

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) overflow("addition");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) overflow("subtraction");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) overflow("multiplication");
  return r;
}

Int checked_neg(Int a) {
  if (a == std::numeric_limits<Int>::min()) overflow("negation");
  return -a;
}

Int checked_abs(Int a) { return a < 0 ? checked_neg(a) : a; }

Int floor_mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int ceil_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

Int mul_mod(Int a, Int b, Int m) {
  __int128 r = static_cast<__int128>(floor_mod(a, m)) * floor_mod(b, m) % m;
  return static_cast<Int>(r);
}

Int gcd(Int a, Int b) {
  a = checked_abs(a);
  b = checked_abs(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  Int g = gcd(a, b);
  return checked_mul(checked_abs(a) / g, checked_abs(b));
}

ExtGcd ext_gcd(Int a, Int b) {
  // Iterative Euclid on |a|, |b|; the signs are folded back into u and v.
  Int r0 = checked_abs(a), r1 = checked_abs(b);
  Int s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int s2 = checked_sub(s0, checked_mul(q, s1));
    Int t2 = checked_sub(t0, checked_mul(q, t1));
    r0 = r1, r1 = r2;
    s0 = s1, s1 = s2;
    t0 = t1, t1 = t2;
  }
  if (r0 == 0) return {0, 0, 0};
  if (a < 0) s0 = -s0;
  if (b < 0) t0 = -t0;
  return {r0, s0, t0};
}

std::optional<Int> inverse_mod(Int a, Int m) {
  if (m < 1) throw std::invalid_argument("inverse_mod: modulus must be >= 1");
  if (m == 1) return Int{0};
  auto [g, u, v] = ext_gcd(floor_mod(a, m), m);
  (void)v;
  if (g != 1) return std::nullopt;
  return floor_mod(u, m);
}

CongruenceClass::CongruenceClass(Int modulus_, Int residue_) : modulus(modulus_) {
  if (modulus_ < 1) throw std::invalid_argument("congruence modulus must be >= 1");
  residue = floor_mod(residue_, modulus_);
}

std::optional<CongruenceClass> solve_linear_congruence(Int coeff, Int constant, Int modulus) {
  if (modulus < 1) throw std::invalid_argument("congruence modulus must be >= 1");
  Int c = floor_mod(coeff, modulus);
  Int a = floor_mod(constant, modulus);
  Int g = gcd(c, modulus);  // gcd(0, n) = n
  if (a % g != 0) return std::nullopt;
  Int reduced = modulus / g;
  if (reduced == 1) return CongruenceClass{1, 0};
  Int inv = *inverse_mod(c / g, reduced);
  // x = -(a/g) * inv (mod n/g)
  return CongruenceClass{reduced, mul_mod(reduced - (a / g) % reduced, inv, reduced)};
}

std::optional<CongruenceClass> intersect(const CongruenceClass& a, const CongruenceClass& b) {
  Int g = gcd(a.modulus, b.modulus);
  Int diff = b.residue - a.residue;  // both residues are in range, no overflow
  if (diff % g != 0) return std::nullopt;
  Int m2 = b.modulus / g;
  Int l = checked_mul(a.modulus, m2);
  // a.residue + a.modulus * t solves both, where (a.modulus/g) * t = diff/g (mod m2).
  Int t = 0;
  if (m2 > 1) t = mul_mod(floor_mod(diff / g, m2), *inverse_mod(a.modulus / g, m2), m2);
  __int128 x = static_cast<__int128>(a.residue) + static_cast<__int128>(a.modulus) * t;
  return CongruenceClass{l, static_cast<Int>(x % l)};
}

std::optional<CongruenceClass> crt(std::span<const CongruenceClass> classes) {
  CongruenceClass acc;
  for (const auto& c : classes) {
    auto next = intersect(acc, c);
    if (!next) return std::nullopt;
    acc = *next;
  }
  return acc;
}

}  // namespace addrand
