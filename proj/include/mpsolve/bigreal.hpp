#pragma once

// Arbitrary-precision reals whose precision travels with the value.
//
// Every BigReal carries a precision measured in significant decimal digits.
// Binary operations produce a result at the larger of the two operand
// precisions, so there is no process-wide "current precision" to manage and
// values can be shared freely between threads.  MPFR does the arithmetic; the
// decimal-digit contract lives at the string interface.

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace mpsolve {

inline constexpr int kMinDigits = 32;
inline constexpr int kDefaultMaxDigits = 20000;

/// Precision ceiling in decimal digits. Defaults to kDefaultMaxDigits and can
/// be raised or lowered through the MPSOLVE_MAX_DIGITS environment variable
/// (read once).
int max_digits();

/// Binary precision used to carry `digits` decimal digits.
mpfr_prec_t bits_for_digits(int digits);

class BigReal {
public:
    /// Exact zero at kMinDigits.
    BigReal();
    BigReal(long value, int digits);

    BigReal(const BigReal& other);
    BigReal(BigReal&& other) noexcept;
    BigReal& operator=(const BigReal& other);
    BigReal& operator=(BigReal&& other) noexcept;
    ~BigReal();

    /// Parses a signed decimal literal (optional fraction and exponent) and
    /// rounds it to nearest at `digits` digits. Throws ParseError or
    /// PrecisionError.
    static BigReal from_decimal(std::string_view text, int digits);
    static BigReal from_double(double value, int digits);
    static BigReal zero(int digits);

    int digits() const noexcept { return digits_; }

    /// Scientific rendering `±d.ddd...e±k` with exactly `significant` digits.
    std::string to_decimal(int significant) const;
    /// Rendering with as many digits as needed for a bit-exact round trip
    /// through from_decimal at digits().
    std::string to_exact_decimal() const;

    double to_double() const;
    bool is_zero() const noexcept;
    /// -1, 0 or +1.
    int sign() const noexcept;

    mpfr_srcptr get() const noexcept { return value_; }
    mpfr_ptr get_mutable() noexcept { return value_; }

    BigReal operator-() const;
    BigReal& operator+=(const BigReal& rhs);
    BigReal& operator-=(const BigReal& rhs);
    BigReal& operator*=(const BigReal& rhs);
    BigReal& operator/=(const BigReal& rhs);

    friend BigReal operator+(const BigReal& a, const BigReal& b);
    friend BigReal operator-(const BigReal& a, const BigReal& b);
    friend BigReal operator*(const BigReal& a, const BigReal& b);
    friend BigReal operator/(const BigReal& a, const BigReal& b);
    friend BigReal operator+(const BigReal& a, long b);
    friend BigReal operator+(long a, const BigReal& b);
    friend BigReal operator-(const BigReal& a, long b);
    friend BigReal operator-(long a, const BigReal& b);
    friend BigReal operator*(const BigReal& a, long b);
    friend BigReal operator*(long a, const BigReal& b);
    friend BigReal operator/(const BigReal& a, long b);

    friend bool operator==(const BigReal& a, const BigReal& b);
    friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);

private:
    explicit BigReal(int digits, std::nullptr_t);  // uninitialised value at digits

    mpfr_t value_;
    int digits_;
};

/// Precision check shared by every constructor: kMinDigits..max_digits().
void check_digits(int digits);

/// Same value carried at `digits` >= x.digits(). Never changes the value.
BigReal raise_precision(const BigReal& x, int digits);
/// Value rounded to nearest at `digits` (may narrow).
BigReal with_precision(const BigReal& x, int digits);

/// log10|x| to at least 30 significant digits, returned at kMinDigits.
/// Throws DomainError for x == 0.
BigReal log10_abs(const BigReal& x);

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal cbrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal pow10(long k, int digits);
const BigReal& max(const BigReal& a, const BigReal& b);

} // namespace mpsolve
