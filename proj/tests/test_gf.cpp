#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "msr/errors.hpp"
#include "msr/gf.hpp"
#include "msr/ground.hpp"
#include "msr/integer.hpp"
#include "msr/linalg.hpp"
#include "msr/normal_basis.hpp"

using namespace msr;

namespace {

FieldPtr make_field(std::uint32_t q, int m, const std::string& modulus) {
  return ExtensionField::create({q, m, parse_poly(modulus, q)});
}

// Independent GF(2)[X] arithmetic on bit masks.
std::uint64_t clmul_reduce(std::uint64_t a, std::uint64_t b, std::uint64_t mod, int m) {
  std::uint64_t r = 0;
  for (int i = 0; i < m; ++i) {
    if ((b >> i) & 1) r ^= a << i;
  }
  for (int d = 2 * m; d >= m; --d) {
    if ((r >> d) & 1) r ^= mod << (d - m);
  }
  return r;
}

std::uint64_t to_mask(const Gf& a) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < a.coords().size(); ++i) v |= std::uint64_t(a.coords()[i]) << i;
  return v;
}

// Irreducible over F_2 iff no polynomial of degree 1..deg/2 divides it.
bool irreducible_by_trial_division(std::uint64_t f, int deg) {
  auto mod = [](std::uint64_t a, std::uint64_t b) {
    const int db = 63 - __builtin_clzll(b);
    while (a && 63 - __builtin_clzll(a) >= db) a ^= b << ((63 - __builtin_clzll(a)) - db);
    return a;
  };
  for (std::uint64_t g = 2; g < (std::uint64_t(1) << (deg / 2 + 1)); ++g) {
    if (mod(f, g) == 0) return false;
  }
  return true;
}

Poly mask_to_poly(std::uint64_t f, int deg) {
  Poly p(deg + 1);
  for (int i = 0; i <= deg; ++i) p[i] = (f >> i) & 1;
  return p;
}

}  // namespace

TEST(Fq, ArithmeticAndLiterals) {
  const Fq a(3, 7), b(5, 7);
  EXPECT_EQ((a + b).value(), 1);
  EXPECT_EQ((a - b).value(), 5);
  EXPECT_EQ((a * b).value(), 1);
  EXPECT_EQ((a / b * b).value(), 3);
  EXPECT_EQ((-a).value(), 4);
  EXPECT_EQ((Fq(1) + a).value(), 4);
  EXPECT_TRUE((Fq(1) + a).bound());
  EXPECT_THROW(inverse(Fq(0, 7)), DivisionByZero);
  EXPECT_THROW((void)(Fq(1, 7) + Fq(1, 5)), FieldMismatch);
}

TEST(FieldSpec, ValidationRejectsBadModuli) {
  EXPECT_NO_THROW(validate({2, 5, parse_poly("X^5+X^2+1", 2)}));
  EXPECT_THROW(validate({2, 5, parse_poly("X^5+X+1", 2)}), DomainError);  // (X^2+X+1)(X^3+X^2+1)
  EXPECT_THROW(validate({4, 2, parse_poly("X^2+X+1", 2)}), DomainError);
  EXPECT_THROW(validate({2, 3, parse_poly("X^2+X+1", 2)}), DomainError);
}

TEST(FieldSpec, ParseAndFormat) {
  EXPECT_EQ(parse_poly("X^11+X^2+1", 2), (Poly{1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(parse_poly("2x^3 + x + 4", 5), (Poly{4, 1, 0, 2}));
  EXPECT_EQ(format_poly(parse_poly("X^11+X^2+1", 2)), "X^11 + X^2 + 1");
}

TEST(Irreducibility, MatchesTrialDivisionUpToDegree10) {
  for (int deg = 1; deg <= 10; ++deg) {
    for (std::uint64_t low = 0; low < (std::uint64_t(1) << deg); ++low) {
      const std::uint64_t f = (std::uint64_t(1) << deg) | low;
      EXPECT_EQ(is_irreducible(2, mask_to_poly(f, deg)), irreducible_by_trial_division(f, deg)) << f;
    }
  }
}

TEST(Irreducibility, FindIrreducibleIsFirstInOrder) {
  // Lexicographic with constant term fastest means smallest mask first.
  for (int deg = 2; deg <= 9; ++deg) {
    std::uint64_t expected = 0;
    for (std::uint64_t low = 0; low < (std::uint64_t(1) << deg); ++low) {
      if (irreducible_by_trial_division((std::uint64_t(1) << deg) | low, deg)) {
        expected = (std::uint64_t(1) << deg) | low;
        break;
      }
    }
    EXPECT_EQ(find_irreducible(2, deg), mask_to_poly(expected, deg));
  }
}

TEST(Gf, MultiplicationMatchesSchoolbookOracle) {
  const auto f = make_field(2, 5, "X^5+X^2+1");
  const std::uint64_t mod = 0b100101;
  for (std::uint64_t i = 0; i < 32; ++i) {
    for (std::uint64_t j = 0; j < 32; ++j) {
      EXPECT_EQ(to_mask(f->from_index(i) * f->from_index(j)), clmul_reduce(i, j, mod, 5));
    }
  }
  const Gf a = f->x() + f->one();
  EXPECT_EQ(to_mask(a * a), 0b101u);  // X^2 + 1
}

TEST(Gf, FieldAxiomsExhaustiveF32) {
  const auto f = make_field(2, 5, "X^5+X^2+1");
  for (std::uint64_t i = 0; i < 32; ++i) {
    const Gf a = f->from_index(i);
    EXPECT_EQ(f->zero() + a, a);
    if (i) EXPECT_EQ(a * inverse(a), f->one());
    EXPECT_EQ(frobenius(a, 1), a * a);
    EXPECT_EQ(frobenius(a, 0), a);
    EXPECT_EQ(frobenius(a, 5), a);
    for (std::uint64_t j = 0; j < 32; ++j) {
      const Gf b = f->from_index(j);
      for (int s = 0; s < 5; ++s) EXPECT_EQ(frobenius(a + b, s), frobenius(a, s) + frobenius(b, s));
    }
  }
  EXPECT_THROW(inverse(f->zero()), DivisionByZero);
}

TEST(Gf, OddCharacteristic) {
  const auto f = make_field(3, 4, "X^4+X+2");
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const Gf a = f->from_index(rng() % 81), b = f->from_index(rng() % 81);
    EXPECT_EQ(frobenius(a, 1), a * a * a);
    EXPECT_EQ(frobenius(frobenius(a, 1), 2), frobenius(a, 3));
    EXPECT_EQ(frobenius(a * b, 2), frobenius(a, 2) * frobenius(b, 2));
    if (!is_zero(a)) EXPECT_EQ(b / a * a, b);
    EXPECT_EQ(pow(a, 81), a);
  }
  // Ground-field constants are fixed by Frobenius.
  for (int c = 0; c < 3; ++c) EXPECT_EQ(frobenius(f->constant(c), 1), f->constant(c));
}

TEST(Gf, MixedFieldsRejected) {
  const auto f = make_field(2, 5, "X^5+X^2+1");
  const auto g = make_field(2, 5, "X^5+X^3+1");
  EXPECT_THROW((void)(f->one() + g->one()), FieldMismatch);
}

TEST(Irreducibility, SparseSearch) {
  // X^5 + X^2 + 1 is the first irreducible trinomial of degree 5.
  EXPECT_EQ(find_sparse_irreducible(2, 5), parse_poly("X^5+X^2+1", 2));
  // No irreducible trinomial has degree 8; the first pentanomial is found.
  const Poly p8 = find_sparse_irreducible(2, 8);
  EXPECT_TRUE(irreducible_by_trial_division([&] {
    std::uint64_t m = 0;
    for (int i = 0; i <= 8; ++i) m |= std::uint64_t(p8[i]) << i;
    return m;
  }(), 8));
  EXPECT_EQ(std::count(p8.begin(), p8.end(), 1u), 5);
}

TEST(Gf, LargeFieldArithmetic) {
  const Poly modulus = parse_poly("X^2048+X^19+X^14+X^13+1", 2);
  ASSERT_TRUE(is_irreducible(2, modulus));
  const auto f = ExtensionField::create({2, 2048, modulus});
  const Gf a = f->x() + f->one();
  EXPECT_EQ(frobenius(a, 2048), a);
  EXPECT_EQ(frobenius(frobenius(a, 100), 50), frobenius(a, 150));
  EXPECT_EQ(a * inverse(a), f->one());
}

TEST(Integer, FactorizationAndPrimality) {
  EXPECT_EQ(factorize(2047), (PrimeFactorization{{23, 1}, {89, 1}}));
  EXPECT_EQ(factorize((std::uint64_t(1) << 32) - 1),
            (PrimeFactorization{{3, 1}, {5, 1}, {17, 1}, {257, 1}, {65537, 1}}));
  const std::uint64_t big = 4294967291ULL * 4294967279ULL;
  EXPECT_EQ(factorize(big), (PrimeFactorization{{4294967279ULL, 1}, {4294967291ULL, 1}}));
  EXPECT_TRUE(is_prime(2305843009213693951ULL));
  EXPECT_FALSE(is_prime(3215031751ULL));
  EXPECT_EQ(gaussian_binomial(4, 2, 2), 35u);
  EXPECT_EQ(gaussian_binomial(3, 2, 2), 7u);
}

TEST(NormalBasis, TableFieldsCertified) {
  const auto f11 = make_field(2, 11, "X^11+X^2+1");
  const Gf a11 = f11->x() + f11->one();
  EXPECT_TRUE(is_primitive(a11));
  EXPECT_TRUE(is_normal(a11));
  EXPECT_FALSE(is_primitive(f11->one()));
  EXPECT_THROW(is_primitive(f11->zero()), DomainError);
  EXPECT_FALSE(is_normal(f11->zero()));

  const auto f7 = make_field(2, 7, "X^7+X^3+1");
  const Gf a7 = f7->element({1, 0, 0, 1, 0, 0, 0});
  EXPECT_TRUE(is_primitive(a7));
  EXPECT_TRUE(is_normal(a7));

  const auto f5 = make_field(2, 5, "X^5+X^2+1");
  EXPECT_EQ(find_primitive_normal(f5), f5->x() + f5->one());

  const auto f1 = make_field(2, 1, "X+1");
  EXPECT_EQ(find_primitive_normal(f1), f1->one());
}

TEST(NormalBasis, FirstFoundIsPrimitiveNormal) {
  const auto f7 = make_field(2, 7, "X^7+X^3+1");
  const Gf a = find_primitive_normal(f7);
  EXPECT_TRUE(is_primitive(a));
  EXPECT_TRUE(is_normal(a));
  // Nothing earlier in the search order qualifies.
  for (std::uint64_t i = 1; i < 128; ++i) {
    const Gf b = f7->from_index(i);
    if (b == a) break;
    EXPECT_FALSE(is_normal(b) && is_primitive(b));
  }
}

TEST(NormalBasis, CoordinatesRoundTrip) {
  const auto f = make_field(2, 11, "X^11+X^2+1");
  const NormalBasis nb(f->x() + f->one());
  EXPECT_TRUE(nb.inverse_matrix() * nb.basis_matrix() == ground_identity(11, 2));
  std::mt19937_64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    const Gf a = f->from_index(rng() % 2048);
    const GroundVector c = normal_coords(a, nb);
    EXPECT_TRUE(nb.basis_matrix() * c == poly_coords(a));
    EXPECT_EQ(nb.element(c), a);
  }
  for (int i = 0; i < 11; ++i) {
    GroundVector e = GroundVector::Constant(11, Fq(0, 2));
    e(i) = Fq(1, 2);
    EXPECT_TRUE(normal_coords(nb.conjugate(i), nb) == e);
  }
  EXPECT_TRUE(normal_coords(f->zero(), nb) == GroundVector::Constant(11, Fq(0, 2)));
  EXPECT_THROW(NormalBasis(f->one()), DomainError);
}

TEST(NormalBasis, QDegree) {
  const auto f = make_field(2, 11, "X^11+X^2+1");
  const NormalBasis nb(f->x() + f->one());
  EXPECT_EQ(qdeg(nb.conjugate(5), nb), 5);
  EXPECT_EQ(qdeg(nb.conjugate(0) + nb.conjugate(2), nb), 2);
  EXPECT_EQ(qdeg(f->zero(), nb), std::nullopt);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const Gf a = f->from_index(1 + rng() % 2047);
    const int d = *qdeg(a, nb);
    for (int s = 0; d + s <= 10; ++s) EXPECT_EQ(qdeg(frobenius(a, s), nb), d + s);
  }
}

TEST(NormalBasis, PhiAndPacketRank) {
  const auto f = make_field(2, 11, "X^11+X^2+1");
  const NormalBasis nb(f->x() + f->one());
  ExtVector basis_vec(4);
  for (int j = 0; j < 4; ++j) basis_vec(j) = nb.conjugate(j);
  EXPECT_TRUE(phi_n(basis_vec, nb) == ground_identity(11, 2).leftCols(4));
  EXPECT_TRUE(phi_n(zero_vector(4, f), nb) == ground_zeros(11, 4, 2));
  EXPECT_EQ(packet_rank(zero_vector(3, f), nb), 0);

  ExtVector two(2);
  two << nb.conjugate(0), nb.conjugate(1);
  EXPECT_EQ(packet_rank(two, nb), 2);
  two << nb.alpha(), nb.alpha();
  EXPECT_EQ(packet_rank(two, nb), 1);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    ExtVector x(4), y(4);
    for (int j = 0; j < 4; ++j) {
      // Sparse entries so that low Hamming weights occur.
      x(j) = rng() % 3 ? f->from_index(rng() % 2048) : f->zero();
      y(j) = f->from_index(rng() % 2048);
    }
    EXPECT_TRUE(phi_n(x + y, nb) == phi_n(x, nb) + phi_n(y, nb));
    EXPECT_LE(packet_rank(x, nb), hamming_weight(x));
    EXPECT_EQ(packet_rank(x, nb), ground_span_rank(x));
  }
}
