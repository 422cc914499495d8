#include <doctest.h>

#include "holoprec/gaussian.hpp"
#include "oracles.hpp"

using namespace holoprec;

namespace {

GaussianRational gr(long re_num, long re_den, long im_num = 0, long im_den = 1) {
    return {Rat(re_num, re_den), Rat(im_num, im_den)};
}

}  // namespace

TEST_CASE("bit size of Gaussian rationals") {
    CHECK(bit_size(GaussianRational(GaussianInt(Int(3), Int(4)), Int(2))) == 6);
    CHECK(bit_size(GaussianRational(GaussianInt(Int(1), Int(1)), Int(1))) == 1);
    CHECK(bit_size(GaussianRational(GaussianInt(Int(0), Int(0)), Int(1))) == 1);
    // ceil lg conventions
    CHECK(ceil_lg(Int(1)) == 0);
    CHECK(ceil_lg(Int(2)) == 1);
    CHECK(ceil_lg(Int(3)) == 2);
    CHECK(ceil_lg(Int(4)) == 2);
    CHECK(ceil_lg(Int(0)) == 0);
}

TEST_CASE("bit size is near-additive under multiplication") {
    testing::TestRng rng(7);
    for (int i = 0; i < 200; ++i) {
        GaussianRational x(GaussianInt(Int(rng.range(-99, 99)), Int(rng.range(-99, 99))),
                           Int(rng.range(1, 99)));
        GaussianRational y(GaussianInt(Int(rng.range(-99, 99)), Int(rng.range(-99, 99))),
                           Int(rng.range(1, 99)));
        CHECK(bit_size(x * y) <= bit_size(x) + bit_size(y) + 2);
    }
}

TEST_CASE("trunc_scalar on the worked examples") {
    Dyadic t = trunc_scalar(Rat(5, 3), Rat(1, 4));
    CHECK(t.exponent == 2);
    CHECK(t.mantissa == 6);  // floor(4 * 5/3) = 6, value 3/2
    CHECK(t.to_rational() == Rat(3, 2));
    CHECK(abs(Rat(3, 2) - Rat(5, 3)) <= Rat(1, 4));

    Dyadic tn = trunc_scalar(Rat(-5, 3), Rat(1, 4));
    CHECK(tn.to_rational() == Rat(-3, 2));  // sign applied after flooring |a|

    Dyadic tz = trunc_scalar(Rat(0), Rat(1, 2));
    CHECK(tz.is_zero());
    CHECK(tz.exponent == 1);
}

TEST_CASE("trunc rejects bad tolerances") {
    CHECK_THROWS_AS(trunc_scalar(Rat(1, 2), Rat(1)), InvalidToleranceError);
    CHECK_THROWS_AS(trunc_scalar(Rat(1, 2), Rat(3, 2)), InvalidToleranceError);
    CHECK_THROWS_AS(trunc_scalar(Rat(1, 2), Rat(0)), InvalidToleranceError);
    CHECK_THROWS_AS(trunc_scalar(Rat(1, 2), Rat(-1, 4)), InvalidToleranceError);
}

TEST_CASE("trunc_gaussian componentwise") {
    DyadicComplex a = trunc_gaussian(gr(5, 3, 5, 3), Rat(1, 4));
    CHECK(a.re.to_rational() == Rat(3, 2));
    CHECK(a.im.to_rational() == Rat(3, 2));

    DyadicComplex b = trunc_gaussian(gr(2, 1), Rat(1, 2));
    CHECK(b.re.to_rational() == Rat(2));
    CHECK(b.im.is_zero());

    // e = 3, floor(8 * 1/3) = 2: both components come out as -1/4
    DyadicComplex c = trunc_gaussian(gr(-1, 3, -1, 3), Rat(1, 8));
    CHECK(c.re.to_rational() == Rat(-1, 4));
    CHECK(c.im.to_rational() == Rat(-1, 4));
    CHECK(abs(Rat(-1, 4) - Rat(-1, 3)) <= Rat(1, 8));
}

TEST_CASE("trunc error bound and idempotence across tolerances") {
    testing::TestRng rng(11);
    for (int k = 1; k <= 64; ++k) {
        Int d(1);
        mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
        Rat eps(1, d);
        eps.canonicalize();
        Rat a(rng.range(-200, 200), rng.range(100, 300));  // |a| <= 2
        a.canonicalize();
        Dyadic t = trunc_scalar(a, eps);
        CHECK(abs(t.to_rational() - a) <= eps);
        Dyadic t2 = trunc_scalar(t.to_rational(), eps);
        CHECK(t2 == t);
        // mantissa size stays within e + lg|a| + 1
        CHECK(bit_length(t.mantissa) <= t.exponent + 2);
    }
}

TEST_CASE("Gaussian rational field arithmetic and normalization") {
    GaussianRational a = gr(1, 2, 1, 3);
    GaussianRational b = gr(-2, 5, 1, 7);
    CHECK((a + b) - b == a);
    CHECK((a * b) / b == a);
    GaussianRational unreduced(GaussianInt(Int(4), Int(8)), Int(12));
    GaussianRational reduced = unreduced.normalized();
    CHECK(reduced.num.re == 1);
    CHECK(reduced.num.im == 2);
    CHECK(reduced.den == 3);
    CHECK(unreduced == reduced);  // value equality ignores representation
}

TEST_CASE("modulus bounds bracket the true modulus") {
    testing::TestRng rng(3);
    for (int i = 0; i < 100; ++i) {
        GaussianInt g(Int(rng.range(-50, 50)), Int(rng.range(-50, 50)));
        Int ub = modulus_ub(g);
        Rat lb = modulus_lb(g);
        CHECK(Rat(ub * ub) >= Rat(g.norm()));
        CHECK(lb * lb <= Rat(g.norm()));
    }
    CHECK(modulus_ub(GaussianInt(Int(3), Int(4))) == 5);  // exact when |g|^2 is a square
}

TEST_CASE("string round trips") {
    for (const char* text : {"3", "-1/3", "i", "-i", "1/2-2/3*i", "3+4*i", "0", "7/5+i"}) {
        GaussianRational v = parse_gaussian_rational(text);
        CHECK(parse_gaussian_rational(to_string(v)) == v);
    }
    CHECK(to_string(parse_gaussian_rational("2/4")) == "1/2");
    CHECK_THROWS_AS(parse_gaussian_rational(""), ParseError);
    CHECK_THROWS_AS(parse_gaussian_rational("1/"), ParseError);
    CHECK_THROWS_AS(parse_gaussian_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_gaussian_rational("abc"), ParseError);
}

TEST_CASE("dyadic printing") {
    Dyadic d(Int(6), 2);
    CHECK(d.to_string() == "6*2^-2");
    CHECK(d.to_decimal(3) == "1.500");
    Dyadic neg(Int(-13), 3);
    CHECK(neg.to_decimal(4) == "-1.6250");
    CHECK(Dyadic(Int(0), 0).to_decimal(2) == "0.00");
}
