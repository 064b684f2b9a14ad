#include "malle/arith.hpp"

#include <limits>
#include <string>

#include "malle/error.hpp"

namespace malle::arith {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0)
    return 0;
  return a / gcd(a, b) * b;
}

unsigned valuation(std::uint64_t n, std::uint64_t p) {
  unsigned e = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0)
      continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1)
    out.emplace_back(n, 1);
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0)
      return false;
  return true;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  if (mod == 1)
    return 0;
  unsigned __int128 result = 1;
  unsigned __int128 b = base % mod;
  while (exp != 0) {
    if (exp & 1)
      result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base)
      throw SizeError("integer overflow in " + std::to_string(base) + "^" + std::to_string(exp));
    result *= base;
  }
  return result;
}

std::uint64_t totient(std::uint64_t n) {
  std::uint64_t t = n;
  for (auto [p, e] : factor(n))
    t = t / p * (p - 1);
  return t;
}

std::uint64_t primitive_root_prime_power(std::uint64_t p, unsigned k) {
  if (p == 2 || k == 0)
    throw ContractError("primitive root requested for p=" + std::to_string(p));
  const std::uint64_t mod = ipow(p, k);
  const std::uint64_t phi = mod / p * (p - 1);
  const auto fac = factor(phi);
  for (std::uint64_t g = 2; g < mod; ++g) {
    if (g % p == 0)
      continue;
    bool ok = true;
    for (auto [q, e] : fac) {
      if (pow_mod(g, phi / q, mod) == 1) {
        ok = false;
        break;
      }
    }
    if (ok)
      return g;
  }
  return 1; // mod == 2 only; unreachable for odd p
}

std::uint64_t crt(std::uint64_t a1, std::uint64_t m1, std::uint64_t a2, std::uint64_t m2) {
  // x = a1 + m1 * t, with m1 * t = a2 - a1 (mod m2)
  const std::uint64_t m = m1 * m2;
  if (m2 == 1)
    return a1 % m;
  std::uint64_t inv = 0;
  for (std::uint64_t t = 1; t < m2; ++t) {
    if (m1 % m2 * t % m2 == 1) {
      inv = t;
      break;
    }
  }
  const std::uint64_t diff = (a2 % m2 + m2 - a1 % m2) % m2;
  const std::uint64_t t = diff * inv % m2;
  return (a1 % m1 + m1 * t) % m;
}

} // namespace malle::arith
