#include <gtest/gtest.h>

#include <random>

#include "tgq/gf.hpp"

using namespace tgq;

namespace {

// Schoolbook product of coefficient vectors reduced by the monic modulus.
std::vector<unsigned> ref_mul(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                              const std::vector<unsigned>& poly, unsigned p) {
  const std::size_t e = poly.size();
  std::vector<unsigned> prod(2 * e, 0);
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (std::size_t deg = 2 * e - 1; deg >= e; --deg) {
    const unsigned c = prod[deg];
    prod[deg] = 0;
    for (std::size_t k = 0; k < e; ++k) prod[deg - e + k] = (prod[deg - e + k] + p * p - c * poly[k]) % p;
  }
  prod.resize(e);
  return prod;
}

}  // namespace

TEST(FieldCreate, PrimeFieldUsesX) {
  auto f = field_create(3, 1);
  EXPECT_EQ(f->q(), 3u);
  EXPECT_EQ(f->poly(), std::vector<unsigned>{0});
}

TEST(FieldCreate, GF4DefaultPolynomial) {
  // Exhaustive: x^2 + c1 x + c0 over GF(2) is irreducible iff it has no root.
  std::vector<std::vector<unsigned>> irreducible;
  for (unsigned c0 = 0; c0 < 2; ++c0)
    for (unsigned c1 = 0; c1 < 2; ++c1) {
      bool root = false;
      for (unsigned x = 0; x < 2; ++x) root |= (x * x + c1 * x + c0) % 2 == 0;
      if (!root) irreducible.push_back({c0, c1});
    }
  ASSERT_EQ(irreducible.size(), 1u);
  EXPECT_EQ(field_create(2, 2)->poly(), irreducible[0]);
  EXPECT_EQ(irreducible[0], (std::vector<unsigned>{1, 1}));
}

TEST(FieldCreate, GF9DefaultIsLeastFromConstantTerm) {
  EXPECT_EQ(field_create(3, 2)->poly(), (std::vector<unsigned>{1, 0}));
}

TEST(FieldCreate, Errors) {
  try {
    field_create(4, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPrime);
  }
  try {
    field_create(2, 2, std::vector<unsigned>{0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ReduciblePoly);
  }
  try {
    field_create(2, 2, std::vector<unsigned>{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeMismatch);
  }
}

TEST(FieldArith, Examples) {
  auto f3 = field_create(3, 1);
  EXPECT_EQ(f3->mul(2, 2), 1);
  auto f4 = field_create(2, 2);
  const Elem alpha = f4->generator_x();
  EXPECT_EQ(alpha, 2);
  EXPECT_EQ(f4->mul(alpha, alpha), f4->add(alpha, 1));
  EXPECT_EQ(field_create(5, 1)->inv(1), 1);
}

TEST(FieldArith, ElemWrapperChecksField) {
  auto f = field_create(3, 1);
  auto g = field_create(5, 1);
  FieldElem a(f, 2), b(g, 2);
  EXPECT_EQ((a * a).code(), 1);
  try {
    (void)(a + b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FieldMismatch);
  }
  try {
    (void)FieldElem(f, 0).inv();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
}

TEST(FieldElements, SortedByCode) {
  for (unsigned q : {2u, 3u, 4u}) {
    auto els = field_elements(field_of_order(q));
    ASSERT_EQ(els.size(), q);
    for (unsigned i = 0; i < q; ++i) EXPECT_EQ(els[i].code(), i);
  }
}

class FieldProps : public ::testing::TestWithParam<unsigned> {};

TEST_P(FieldProps, MultiplicationMatchesPolynomialReference) {
  auto f = field_of_order(GetParam());
  for (unsigned a = 0; a < f->q(); ++a)
    for (unsigned b = 0; b < f->q(); ++b) {
      const auto expect = ref_mul(f->coeffs(a), f->coeffs(b), f->poly(), f->p());
      ASSERT_EQ(f->mul(a, b), f->from_coeffs(expect)) << a << "*" << b;
    }
}

TEST_P(FieldProps, AxiomsOnRandomTriples) {
  auto f = field_of_order(GetParam());
  std::mt19937 rng(0);
  std::uniform_int_distribution<unsigned> pick(0, f->q() - 1);
  for (int it = 0; it < 5000; ++it) {
    const Elem a = pick(rng), b = pick(rng), c = pick(rng);
    ASSERT_EQ(f->add(f->add(a, b), c), f->add(a, f->add(b, c)));
    ASSERT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
    ASSERT_EQ(f->add(a, b), f->add(b, a));
    ASSERT_EQ(f->mul(a, b), f->mul(b, a));
    ASSERT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
    ASSERT_EQ(f->add(a, f->neg(a)), 0);
    ASSERT_EQ(f->sub(f->add(a, b), b), a);
    if (b) {
      ASSERT_EQ(f->mul(f->div(a, b), b), a);
    }
  }
}

TEST_P(FieldProps, FrobeniusIsAutomorphismAndOrdersDivide) {
  auto f = field_of_order(GetParam());
  const unsigned q = f->q();
  for (unsigned a = 0; a < q; ++a) {
    for (unsigned b = 0; b < q; ++b) {
      ASSERT_EQ(f->frobenius(f->add(a, b)), f->add(f->frobenius(a), f->frobenius(b)));
      ASSERT_EQ(f->frobenius(f->mul(a, b)), f->mul(f->frobenius(a), f->frobenius(b)));
    }
    if (a) {
      ASSERT_EQ(f->mul(f->inv(a), a), 1);
      // Repeated multiplication, independent of the log tables.
      Elem x = a;
      unsigned order = 1;
      while (x != 1) {
        x = f->from_coeffs(ref_mul(f->coeffs(x), f->coeffs(a), f->poly(), f->p()));
        ++order;
      }
      ASSERT_EQ((q - 1) % order, 0u);
      ASSERT_EQ(f->pow(a, q - 1), 1);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallFields, FieldProps,
                         ::testing::Values(2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 49u, 64u, 81u));

TEST(FieldLarge, LogTableField) {
  auto f = field_create(2, 10);
  EXPECT_EQ(f->q(), 1024u);
  std::mt19937 rng(1);
  std::uniform_int_distribution<unsigned> pick(0, 1023);
  for (int it = 0; it < 2000; ++it) {
    const Elem a = pick(rng), b = pick(rng);
    ASSERT_EQ(f->mul(a, b), f->from_coeffs(ref_mul(f->coeffs(a), f->coeffs(b), f->poly(), 2)));
    ASSERT_EQ(f->add(a, b), a ^ b);
  }
}
