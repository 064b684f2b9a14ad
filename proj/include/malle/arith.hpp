#ifndef MALLE_ARITH_HPP
#define MALLE_ARITH_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace malle::arith {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

/// Largest e with p^e | n (n > 0, p > 1).
unsigned valuation(std::uint64_t n, std::uint64_t p);

/// Prime factorization as (prime, exponent), primes ascending. factor(1) is empty.
std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n);

bool is_prime(std::uint64_t n);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

/// Integer power; throws SizeError on overflow.
std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// Euler's totient.
std::uint64_t totient(std::uint64_t n);

/// Smallest generator of (Z/p^k)^x for an odd prime p.
std::uint64_t primitive_root_prime_power(std::uint64_t p, unsigned k);

/// Solution x mod m1*m2 of x = a1 (m1), x = a2 (m2) for coprime m1, m2.
std::uint64_t crt(std::uint64_t a1, std::uint64_t m1, std::uint64_t a2, std::uint64_t m2);

} // namespace malle::arith

#endif // MALLE_ARITH_HPP
