#pragma once

#include <cstdint>
#include <string>

#include "fano/errors.hpp"
#include "fano/integers.hpp"

namespace fano {

/// The prime field F_p for a prime p < 2^31, operating on raw residues
/// in [0, p). The modulus cap keeps every product inside 64-bit
/// intermediates before reduction, which is what the enumeration loops
/// rely on.
///
/// PrimeField doubles as the coefficient-ring context for MPoly, with
/// Scalar = std::uint32_t.
class PrimeField {
 public:
  using Scalar = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p < 2 || p > kMaxModulus || !is_prime(static_cast<std::int64_t>(p)))
      throw invalid_input("PrimeField: modulus " + std::to_string(p) +
                          " is not a prime below 2^31");
  }

  [[nodiscard]] std::uint32_t modulus() const noexcept { return p_; }

  [[nodiscard]] Scalar zero() const noexcept { return 0; }
  [[nodiscard]] Scalar one() const noexcept { return 1 % p_; }
  [[nodiscard]] bool is_zero(Scalar a) const noexcept { return a == 0; }
  [[nodiscard]] bool equal(Scalar a, Scalar b) const noexcept { return a == b; }

  [[nodiscard]] Scalar add(Scalar a, Scalar b) const noexcept {
    std::uint64_t s = std::uint64_t(a) + b;
    if (s >= p_) s -= p_;
    return static_cast<Scalar>(s);
  }

  [[nodiscard]] Scalar sub(Scalar a, Scalar b) const noexcept {
    return a >= b ? a - b : static_cast<Scalar>(a + p_ - b);
  }

  [[nodiscard]] Scalar neg(Scalar a) const noexcept {
    return a == 0 ? 0 : p_ - a;
  }

  [[nodiscard]] Scalar mul(Scalar a, Scalar b) const noexcept {
    return static_cast<Scalar>((std::uint64_t(a) * b) % p_);
  }

  [[nodiscard]] Scalar pow(Scalar base, std::uint64_t exponent) const noexcept {
    Scalar result = one();
    Scalar acc = base % p_;
    while (exponent > 0) {
      if (exponent & 1) result = mul(result, acc);
      acc = mul(acc, acc);
      exponent >>= 1;
    }
    return result;
  }

  /// Multiplicative inverse by extended Euclid.
  [[nodiscard]] Scalar inv(Scalar a) const {
    if (a == 0) throw division_by_zero("inverse of zero in F_" + std::to_string(p_));
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a % p_;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      t -= q * new_t;
      std::swap(t, new_t);
      r -= q * new_r;
      std::swap(r, new_r);
    }
    if (t < 0) t += p_;
    return static_cast<Scalar>(t);
  }

  [[nodiscard]] Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }

  /// Exact division hook shared with the integer ring (fields divide freely).
  [[nodiscard]] Scalar div_exact(Scalar a, Scalar b) const { return div(a, b); }

  /// Reduce an arbitrary integer into [0, p).
  [[nodiscard]] Scalar from_integer(const BigInt& v) const {
    BigInt r = v % p_;
    if (r < 0) r += p_;
    return static_cast<Scalar>(r.convert_to<std::uint32_t>());
  }

  [[nodiscard]] std::string to_string(Scalar a) const { return std::to_string(a); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

  static constexpr std::uint32_t kMaxModulus = 0x7fffffffu;  // 2^31 - 1

 private:
  std::uint32_t p_;
};

/// A field element that carries its field, so mixed-field arithmetic is
/// rejected instead of silently producing garbage.
class Fp {
 public:
  Fp(const PrimeField& field, std::uint32_t value)
      : field_(field), value_(value % field.modulus()) {}

  [[nodiscard]] const PrimeField& field() const noexcept { return field_; }
  [[nodiscard]] std::uint32_t value() const noexcept { return value_; }

  [[nodiscard]] Fp inv() const { return Fp(field_, field_.inv(value_)); }
  [[nodiscard]] Fp pow(std::uint64_t e) const { return Fp(field_, field_.pow(value_, e)); }

  friend Fp operator+(const Fp& a, const Fp& b) {
    a.check_same_field(b);
    return Fp(a.field_, a.field_.add(a.value_, b.value_));
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    a.check_same_field(b);
    return Fp(a.field_, a.field_.sub(a.value_, b.value_));
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    a.check_same_field(b);
    return Fp(a.field_, a.field_.mul(a.value_, b.value_));
  }
  friend Fp operator/(const Fp& a, const Fp& b) {
    a.check_same_field(b);
    return Fp(a.field_, a.field_.div(a.value_, b.value_));
  }
  friend Fp operator-(const Fp& a) { return Fp(a.field_, a.field_.neg(a.value_)); }

  friend bool operator==(const Fp& a, const Fp& b) {
    a.check_same_field(b);
    return a.value_ == b.value_;
  }

 private:
  void check_same_field(const Fp& other) const {
    if (!(field_ == other.field_))
      throw invalid_input("Fp: mixing elements of F_" + std::to_string(field_.modulus()) +
                          " and F_" + std::to_string(other.field_.modulus()));
  }

  PrimeField field_;
  std::uint32_t value_;
};

}  // namespace fano
