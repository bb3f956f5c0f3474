#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spectile {

using BigInt = boost::multiprecision::cpp_int;

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
/// Index i of coefficients() holds the coefficient of x^i; trailing zeros are
/// never stored, so the zero polynomial has no coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs);
  IntPolynomial(std::initializer_list<long long> coeffs);

  static IntPolynomial monomial(const BigInt& c, std::size_t degree);
  /// x^n - 1
  static IntPolynomial x_pow_minus_one(std::size_t n);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }
  BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

  BigInt evaluate(const BigInt& x) const;

  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  bool operator==(const IntPolynomial& o) const = default;

  /// Quotient and remainder by a monic divisor; stays in Z[x].
  /// Throws std::invalid_argument if the divisor is not monic.
  std::pair<IntPolynomial, IntPolynomial> divmod_monic(const IntPolynomial& divisor) const;
  IntPolynomial mod_monic(const IntPolynomial& divisor) const;
  /// Remainder modulo x^m - 1 (fold exponents mod m).
  IntPolynomial reduce_cyclic(std::size_t m) const;

  /// Sparse ascending terms, e.g. "-1*x^0 + 1*x^1"; "0" for the zero polynomial.
  std::string to_string() const;

 private:
  void normalize();
  std::vector<BigInt> coeffs_;
};

/// The d-th cyclotomic polynomial, obtained by exact division of x^d - 1 by
/// the product of Phi_e over the proper divisors e of d. Memoized and safe to
/// call concurrently. Throws std::invalid_argument for d == 0.
const IntPolynomial& cyclotomic_poly(std::uint32_t d);

/// Phi_d with machine-word coefficients (cyclotomic coefficients stay tiny in
/// the ranges this library searches). Empty optional if a coefficient does not
/// fit in int64.
const std::optional<std::vector<std::int64_t>>& cyclotomic_coeffs64(std::uint32_t d);

/// Decides Phi_d | P for P given by its coefficients modulo x^d - 1
/// (residues.size() == d). Exact: machine arithmetic with overflow detection,
/// falling back to BigInt.
bool cyclotomic_divides_reduced(std::uint32_t d, std::span<const std::int64_t> residues);

}  // namespace spectile
