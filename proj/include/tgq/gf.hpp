#pragma once

// Arithmetic in GF(p^e) with elements encoded as integers
// code = c_0 + c_1 p + ... + c_{e-1} p^{e-1} (polynomial basis 1, x, ..., x^{e-1}).

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tgq/error.hpp"

namespace tgq {

using Elem = std::uint16_t;

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

namespace detail {

inline bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Polynomials over GF(p) as coefficient vectors, lowest degree first, no trailing zeros.
using Poly = std::vector<unsigned>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline unsigned inv_mod(unsigned a, unsigned p) {
  unsigned r = 1, b = a % p, k = p - 2;
  while (k) {
    if (k & 1) r = r * b % p;
    b = b * b % p;
    k >>= 1;
  }
  return r;
}

inline Poly poly_mod(Poly a, const Poly& m, unsigned p) {
  trim(a);
  const unsigned lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const unsigned f = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = (a[shift + i] + p * p - f * m[i] % p) % p;
    trim(a);
  }
  return a;
}

// True iff the monic polynomial `f` of degree e has no monic factor of degree 1..e/2.
inline bool is_irreducible(const Poly& f, unsigned p) {
  const std::size_t e = f.size() - 1;
  for (std::size_t deg = 1; deg <= e / 2; ++deg) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < deg; ++i) count *= p;
    for (std::size_t code = 0; code < count; ++code) {
      Poly g(deg + 1, 0);
      std::size_t c = code;
      for (std::size_t i = 0; i < deg; ++i) {
        g[i] = static_cast<unsigned>(c % p);
        c /= p;
      }
      g[deg] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

class FiniteField {
 public:
  /// Builds GF(p^e). Without `poly`, uses the lexicographically least monic
  /// irreducible polynomial, comparing coefficient tuples (c_0, ..., c_{e-1})
  /// from the constant term upward.
  static FieldPtr create(unsigned p, unsigned e, std::optional<std::vector<unsigned>> poly = std::nullopt) {
    return std::shared_ptr<const FiniteField>(new FiniteField(p, e, std::move(poly)));
  }

  unsigned p() const noexcept { return p_; }
  unsigned e() const noexcept { return e_; }
  unsigned q() const noexcept { return q_; }
  /// Non-leading coefficients c_0..c_{e-1} of the monic modulus.
  const std::vector<unsigned>& poly() const noexcept { return poly_; }

  bool operator==(const FiniteField& o) const noexcept { return p_ == o.p_ && e_ == o.e_ && poly_ == o.poly_; }

  Elem add(Elem a, Elem b) const {
    if (!add_.empty()) return add_[std::size_t(a) * q_ + b];
    Elem r = 0;
    unsigned place = 1;
    for (unsigned i = 0; i < e_; ++i) {
      r = static_cast<Elem>(r + ((a / place % p_ + b / place % p_) % p_) * place);
      place *= p_;
    }
    return r;
  }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    unsigned s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const {
    if (a == 0) fail(ErrorCode::DivisionByZero, "inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const {
    if (k == 0) return 1;
    if (a == 0) return 0;
    return exp_[(std::uint64_t(log_[a]) * (k % (q_ - 1))) % (q_ - 1)];
  }
  /// x -> x^(p^k).
  Elem frobenius(Elem a, unsigned k = 1) const {
    std::uint64_t exponent = 1;
    for (unsigned i = 0; i < k % e_; ++i) exponent *= p_;
    return pow(a, exponent);
  }
  bool is_square(Elem a) const { return a == 0 || p_ == 2 || log_[a] % 2 == 0; }
  Elem primitive() const { return exp_[q_ > 2 ? 1 : 0]; }
  /// Discrete log with respect to primitive(); undefined for zero.
  unsigned log(Elem a) const { return log_[a]; }

  std::vector<unsigned> coeffs(Elem a) const {
    std::vector<unsigned> c(e_);
    for (unsigned i = 0; i < e_; ++i) {
      c[i] = a % p_;
      a = static_cast<Elem>(a / p_);
    }
    return c;
  }
  Elem from_coeffs(std::span<const unsigned> c) const {
    unsigned code = 0, place = 1;
    for (unsigned i = 0; i < e_; ++i) {
      code += (i < c.size() ? c[i] % p_ : 0) * place;
      place *= p_;
    }
    return static_cast<Elem>(code);
  }
  /// The class of x in GF(p)[x]/(poly).
  Elem generator_x() const { return e_ == 1 ? static_cast<Elem>(0) : static_cast<Elem>(p_); }

  std::string name() const { return "GF(" + std::to_string(q_) + ")"; }

 private:
  FiniteField(unsigned p, unsigned e, std::optional<std::vector<unsigned>> poly) : p_(p), e_(e) {
    if (!detail::is_prime(p)) fail(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
    if (e < 1) fail(ErrorCode::DegreeMismatch, "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) q *= p;
    if (q > 65536) fail(ErrorCode::TooLarge, "field order above 2^16 unsupported");
    q_ = static_cast<unsigned>(q);

    if (poly) {
      if (poly->size() != e) fail(ErrorCode::DegreeMismatch, "polynomial must have e non-leading coefficients");
      for (unsigned c : *poly)
        if (c >= p) fail(ErrorCode::DegreeMismatch, "polynomial coefficient out of range");
      detail::Poly f(poly->begin(), poly->end());
      f.push_back(1);
      if (!detail::is_irreducible(f, p)) fail(ErrorCode::ReduciblePoly, "modulus is reducible");
      poly_ = *poly;
    } else {
      poly_ = least_irreducible(p, e);
    }
    build_tables();
  }

  static std::vector<unsigned> least_irreducible(unsigned p, unsigned e) {
    // Odometer over (c_0, ..., c_{e-1}) with c_0 most significant.
    std::vector<unsigned> c(e, 0);
    while (true) {
      detail::Poly f(c.begin(), c.end());
      f.push_back(1);
      if (detail::is_irreducible(f, p)) return c;
      int i = static_cast<int>(e) - 1;
      while (i >= 0 && ++c[i] == p) c[i--] = 0;
      if (i < 0) fail(ErrorCode::ReduciblePoly, "no irreducible polynomial found");
    }
  }

  Elem slow_mul(Elem a, Elem b) const {
    const auto ca = coeffs(a), cb = coeffs(b);
    detail::Poly prod(2 * e_, 0);
    for (unsigned i = 0; i < e_; ++i)
      for (unsigned j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
    detail::Poly m(poly_.begin(), poly_.end());
    m.push_back(1);
    const auto r = detail::poly_mod(prod, m, p_);
    return from_coeffs(r);
  }

  void build_tables() {
    neg_.resize(q_);
    for (unsigned a = 0; a < q_; ++a) {
      auto c = coeffs(static_cast<Elem>(a));
      for (auto& x : c) x = (p_ - x) % p_;
      neg_[a] = from_coeffs(c);
    }
    if (q_ <= 256) {
      add_.assign(std::size_t(q_) * q_, 0);
      add_.resize(std::size_t(q_) * q_);
      std::vector<Elem> tmp(std::size_t(q_) * q_);
      for (unsigned a = 0; a < q_; ++a)
        for (unsigned b = 0; b < q_; ++b) {
          unsigned r = 0, place = 1, x = a, y = b;
          for (unsigned i = 0; i < e_; ++i) {
            r += ((x % p_ + y % p_) % p_) * place;
            x /= p_;
            y /= p_;
            place *= p_;
          }
          tmp[std::size_t(a) * q_ + b] = static_cast<Elem>(r);
        }
      add_ = std::move(tmp);
    }
    exp_.assign(q_, 0);
    log_.assign(q_, 0);
    if (q_ == 2) {
      exp_[0] = 1;
      log_[1] = 0;
      return;
    }
    for (unsigned g = 2; g < q_ + 2; ++g) {
      const Elem gen = static_cast<Elem>(g % q_);
      if (gen == 0) continue;
      Elem x = 1;
      unsigned order = 0;
      do {
        x = slow_mul(x, gen);
        ++order;
      } while (x != 1 && order < q_);
      if (order != q_ - 1) continue;
      x = 1;
      for (unsigned k = 0; k < q_ - 1; ++k) {
        exp_[k] = x;
        log_[x] = k;
        x = slow_mul(x, gen);
      }
      return;
    }
    fail(ErrorCode::ReduciblePoly, "no primitive element");
  }

  unsigned p_, e_, q_ = 0;
  std::vector<unsigned> poly_;
  std::vector<Elem> add_, neg_, exp_;
  std::vector<unsigned> log_;
};

inline FieldPtr field_create(unsigned p, unsigned e, std::optional<std::vector<unsigned>> poly = std::nullopt) {
  return FiniteField::create(p, e, std::move(poly));
}

/// GF(q) for a prime power q.
inline FieldPtr field_of_order(unsigned q) {
  for (unsigned p = 2; p <= q; ++p) {
    if (q % p) continue;
    unsigned e = 0, r = q;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (r != 1) fail(ErrorCode::NonPrime, std::to_string(q) + " is not a prime power");
    return FiniteField::create(p, e);
  }
  fail(ErrorCode::NonPrime, std::to_string(q) + " is not a prime power");
}

/// Value-semantic field element bound to its field.
class FieldElem {
 public:
  FieldElem(FieldPtr f, Elem code) : f_(std::move(f)), code_(code) {
    if (code_ >= f_->q()) fail(ErrorCode::FieldMismatch, "code out of range");
  }

  Elem code() const noexcept { return code_; }
  const FieldPtr& field() const noexcept { return f_; }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) { return {a.f_, a.f_->add(a.code_, a.checked(b))}; }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) { return {a.f_, a.f_->sub(a.code_, a.checked(b))}; }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) { return {a.f_, a.f_->mul(a.code_, a.checked(b))}; }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return {a.f_, a.f_->div(a.code_, a.checked(b))}; }
  FieldElem operator-() const { return {f_, f_->neg(code_)}; }
  FieldElem inv() const { return {f_, f_->inv(code_)}; }
  FieldElem pow(std::uint64_t k) const { return {f_, f_->pow(code_, k)}; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.checked(b) == a.code_; }
  friend std::strong_ordering operator<=>(const FieldElem& a, const FieldElem& b) { return a.code_ <=> a.checked(b); }

 private:
  Elem checked(const FieldElem& o) const {
    if (f_ != o.f_ && !(*f_ == *o.f_)) fail(ErrorCode::FieldMismatch, "operands from different fields");
    return o.code_;
  }

  FieldPtr f_;
  Elem code_;
};

/// All q elements sorted by code.
inline std::vector<FieldElem> field_elements(const FieldPtr& f) {
  std::vector<FieldElem> out;
  out.reserve(f->q());
  for (unsigned c = 0; c < f->q(); ++c) out.emplace_back(f, static_cast<Elem>(c));
  return out;
}

}  // namespace tgq
