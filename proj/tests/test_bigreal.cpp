#include "support.hpp"

#include "mpsolve/error.hpp"

#include <doctest.h>

#include <random>

using namespace testing;

TEST_CASE("from_decimal rounds a literal to the requested digits") {
    const BigReal ln2 = BigReal::from_decimal("0.6931471806", 32);
    CHECK(ln2.digits() == 32);
    CHECK(ln2.to_decimal(10) == "+6.931471806e-1");

    const BigReal z = BigReal::from_decimal("0", 50);
    CHECK(z.is_zero());
    CHECK(z.digits() == 50);

    const BigReal tiny = BigReal::from_decimal("1e-2800", 2810);
    CHECK(log10_abs(tiny).to_double() == -2800.0);
}

TEST_CASE("from_decimal accepts the usual literal forms") {
    CHECK(big("-12.5e+3").to_double() == -12500.0);
    CHECK(big("+.25").to_double() == 0.25);
    CHECK(big("7.").to_double() == 7.0);
    CHECK(big("3E2").to_double() == 300.0);
}

TEST_CASE("malformed literals are rejected") {
    for (const char* s : {"", "abc", "1.2.3", "1e", "--1", "1e+", ".", "1 2", "0x10", "nan", "inf"}) {
        CAPTURE(s);
        CHECK_THROWS_AS(BigReal::from_decimal(s, 40), ParseError);
    }
}

TEST_CASE("precision outside the allowed range is rejected") {
    CHECK_THROWS_AS(BigReal::from_decimal("1", kMinDigits - 1), PrecisionError);
    CHECK_THROWS_AS(BigReal::from_decimal("1", max_digits() + 1), PrecisionError);
    CHECK_THROWS_AS(BigReal(3L, 0), PrecisionError);
    CHECK_NOTHROW(BigReal(3L, max_digits()));
}

TEST_CASE("log10_abs") {
    CHECK(log10_abs(big("1")).to_double() == 0.0);
    // -3429 + log10(1.02)
    CHECK(log10_abs(big("1.02e-3429", 3440)).to_double() == doctest::Approx(-3428.991399828238).epsilon(1e-14));
    for (int k = 1; k <= 100; ++k) {
        CAPTURE(k);
        CHECK(log10_abs(pow10(-k, 120)).to_double() == -k);
    }
    CHECK_THROWS_AS(log10_abs(BigReal::zero(40)), DomainError);
}

TEST_CASE("log10_abs is exact on integral powers of ten") {
    for (int k = -5000; k <= 5000; k += 137) {
        CAPTURE(k);
        CHECK(log10_abs(pow10(k, 40)).to_double() == k);
    }
    CHECK(log10_abs(pow10(5000, 40)).to_double() == 5000);
    CHECK(log10_abs(pow10(-5000, 40)).to_double() == -5000);
}

TEST_CASE("raise_precision widens without touching the value") {
    const BigReal pi32 = BigReal::from_decimal("3.14159265358979323846264338327950288", 32);
    const BigReal pi64 = raise_precision(pi32, 64);
    CHECK(pi64.digits() == 64);
    CHECK(pi64.to_decimal(32) == pi32.to_decimal(32));
    CHECK(pi64 == raise_precision(pi32, 64));
    CHECK(raise_precision(pi32, 32).to_exact_decimal() == pi32.to_exact_decimal());
    CHECK_THROWS_AS(raise_precision(pi64, 32), PrecisionError);

    // 2 rendered with 8000 significant digits, checked against a string built by hand
    const BigReal two = raise_precision(BigReal(2L, 32), 8000);
    CHECK(two.to_decimal(8000) == "+2." + std::string(7999, '0') + "e+0");
}

TEST_CASE("mixed-precision arithmetic carries the larger precision") {
    const BigReal a(3L, 40);
    const BigReal b(7L, 100);
    CHECK((a + b).digits() == 100);
    CHECK((a * b).digits() == 100);
    CHECK((b / a).digits() == 100);
    CHECK((a - 1).digits() == 40);
}

TEST_CASE("arithmetic is correctly rounded against a doubled-precision oracle") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> digit(1, 999999999);
    for (int d : {32, 100, 600}) {
        for (int trial = 0; trial < 20; ++trial) {
            const std::string xs = std::to_string(digit(rng)) + "." + std::to_string(digit(rng)) + "e-3";
            const std::string ys = "-" + std::to_string(digit(rng)) + "." + std::to_string(digit(rng));
            const BigReal x = BigReal::from_decimal(xs, d);
            const BigReal y = BigReal::from_decimal(ys, d);
            const int wide = 2 * d + 10;
            const BigReal xw = raise_precision(x, wide);
            const BigReal yw = raise_precision(y, wide);
            const BigReal bound_unit = pow10(1 - d, wide);
            CHECK(abs(raise_precision(x + y, wide) - (xw + yw)) <= bound_unit * abs(xw + yw));
            CHECK(abs(raise_precision(x - y, wide) - (xw - yw)) <= bound_unit * abs(xw - yw));
            CHECK(abs(raise_precision(x * y, wide) - xw * yw) <= bound_unit * abs(xw * yw));
            CHECK(abs(raise_precision(x / y, wide) - xw / yw) <= bound_unit * abs(xw / yw));
        }
    }
}

TEST_CASE("decimal rendering round-trips") {
    for (int d : {32, 77, 1000}) {
        const BigReal x = sqrt(BigReal(2L, d)) / 3;
        const std::string s = x.to_decimal(d);
        CHECK(BigReal::from_decimal(s, d).to_decimal(d) == s);

        const BigReal back = BigReal::from_decimal(x.to_exact_decimal(), d);
        CHECK(back == x);
        CHECK(back.digits() == d);
    }
    CHECK(BigReal::zero(40).to_decimal(3) == "+0.00e+0");
    CHECK(big("-0.0009996").to_decimal(3) == "-1.00e-3");
}

TEST_CASE("elementary functions") {
    const int d = 60;
    CHECK(close(exp(log(BigReal(5L, d))), BigReal(5L, d), 1 - d + 1));
    CHECK(close(sin(BigReal(0L, d)), BigReal(0L, d), -d));
    CHECK(close(cos(BigReal(0L, d)), BigReal(1L, d), -d));
    CHECK(close(cbrt(BigReal(27L, d)), BigReal(3L, d), 1 - d));
    CHECK(close(sqrt(BigReal(16L, d)), BigReal(4L, d), 1 - d));
    CHECK(abs(BigReal(-4L, d)) == BigReal(4L, d));
    CHECK(BigReal(-4L, d).sign() == -1);
}
