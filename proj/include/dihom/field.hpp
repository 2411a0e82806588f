#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "dihom/errors.hpp"

namespace dihom {

// Exact coefficient fields.  Every rank in the engine is computed over one of
// these; there is no floating point anywhere.  Algorithms are templated on a
// field object F with nested F::Elem and the small arithmetic surface below,
// so a runtime-chosen prime modulus needs no global state.

struct RationalField {
  using Elem = mpq_class;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long long n) const {
    return Elem(static_cast<long>(n));
  }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem div(const Elem& a, const Elem& b) const {
    if (b == 0) throw DomainError("rational division by zero");
    return a / b;
  }
  Elem neg(const Elem& a) const { return -a; }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string to_string(const Elem& a) const { return a.get_str(); }
  Elem from_string(const std::string& s) const {
    Elem e;
    if (e.set_str(s, 10) != 0)
      throw IoError("not a rational literal: '" + s + "'");
    e.canonicalize();
    return e;
  }
  std::string name() const { return "rationals"; }
};

// Prime field for a runtime modulus p (p < 2^31 so products fit in 64 bits).
struct PrimeField {
  std::uint64_t p;

  using Elem = std::uint64_t;

  explicit PrimeField(std::uint64_t modulus) : p(modulus) {
    if (p < 2 || p >= (1ull << 31) || !probable_prime(p))
      throw DomainError("field modulus must be a prime < 2^31, got " +
                        std::to_string(p));
  }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p; }
  Elem from_int(long long n) const {
    long long r = n % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    return static_cast<Elem>(r);
  }
  Elem add(Elem a, Elem b) const { return (a + b) % p; }
  Elem sub(Elem a, Elem b) const { return (a + p - b) % p; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem inv(Elem a) const {
    if (a == 0) throw DomainError("inverse of zero in F_p");
    // extended Euclid on (a, p)
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(p),
                 newr = static_cast<std::int64_t>(a);
    while (newr != 0) {
      std::int64_t q = r / newr;
      std::int64_t tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<Elem>(t);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  std::string to_string(Elem a) const { return std::to_string(a); }
  Elem from_string(const std::string& s) const {
    return from_int(std::stoll(s));
  }
  std::string name() const { return "fp:" + std::to_string(p); }

  static bool probable_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }
};

}  // namespace dihom
