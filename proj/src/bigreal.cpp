#include "mpsolve/bigreal.hpp"

#include "mpsolve/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>

namespace mpsolve {

namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;
// log2(10), rounded up.
constexpr double kBitsPerDigit = 3.3219280948873626;
constexpr int kGuardBits = 4;

int read_max_digits() {
    const char* env = std::getenv("MPSOLVE_MAX_DIGITS");
    if (env == nullptr || *env == '\0') return kDefaultMaxDigits;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < kMinDigits || v > 10'000'000) return kDefaultMaxDigits;
    return static_cast<int>(v);
}

bool valid_decimal_literal(std::string_view s) {
    std::size_t i = 0;
    auto digits_run = [&] {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        return i - start;
    };
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t mantissa = digits_run();
    if (i < s.size() && s[i] == '.') {
        ++i;
        mantissa += digits_run();
    }
    if (mantissa == 0) return false;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        if (digits_run() == 0) return false;
    }
    return i == s.size();
}

struct MpfrString {
    char* p;
    ~MpfrString() { mpfr_free_str(p); }
};

// `significant` digits of |x| plus the decimal exponent of the leading digit.
std::string render(mpfr_srcptr x, std::size_t significant) {
    if (mpfr_zero_p(x)) {
        std::string out = "+0";
        if (significant > 1) out += "." + std::string(significant - 1, '0');
        return out + "e+0";
    }
    mpfr_exp_t exp10 = 0;
    MpfrString raw{mpfr_get_str(nullptr, &exp10, 10, significant, x, kRound)};
    std::string_view body(raw.p);
    std::string out;
    if (body.front() == '-') {
        out += '-';
        body.remove_prefix(1);
    } else {
        out += '+';
    }
    out += body.front();
    if (body.size() > 1) {
        out += '.';
        out.append(body.substr(1));
    }
    long e = static_cast<long>(exp10) - 1;
    out += e < 0 ? "e-" : "e+";
    out += std::to_string(e < 0 ? -e : e);
    return out;
}

} // namespace

int max_digits() {
    static const int value = read_max_digits();
    return value;
}

mpfr_prec_t bits_for_digits(int digits) {
    return static_cast<mpfr_prec_t>(std::ceil(digits * kBitsPerDigit)) + kGuardBits;
}

void check_digits(int digits) {
    if (digits < kMinDigits || digits > max_digits()) {
        throw PrecisionError("precision of " + std::to_string(digits) + " digits outside [" +
                             std::to_string(kMinDigits) + ", " + std::to_string(max_digits()) +
                             "]");
    }
}

BigReal::BigReal(int digits, std::nullptr_t) : digits_(digits) {
    mpfr_init2(value_, bits_for_digits(digits));
}

BigReal::BigReal() : BigReal(kMinDigits, nullptr) { mpfr_set_zero(value_, 1); }

BigReal::BigReal(long value, int digits) : BigReal((check_digits(digits), digits), nullptr) {
    mpfr_set_si(value_, value, kRound);
}

BigReal::BigReal(const BigReal& other) : BigReal(other.digits_, nullptr) {
    mpfr_set(value_, other.value_, kRound);
}

BigReal::BigReal(BigReal&& other) noexcept : digits_(other.digits_) {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

BigReal& BigReal::operator=(const BigReal& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, kRound);
        digits_ = other.digits_;
    }
    return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
    mpfr_swap(value_, other.value_);
    std::swap(digits_, other.digits_);
    return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

BigReal BigReal::from_decimal(std::string_view text, int digits) {
    check_digits(digits);
    if (!valid_decimal_literal(text)) {
        throw ParseError("malformed decimal literal: '" + std::string(text) + "'");
    }
    BigReal r(digits, nullptr);
    std::string buffer(text);
    if (mpfr_set_str(r.value_, buffer.c_str(), 10, kRound) != 0) {
        throw ParseError("malformed decimal literal: '" + buffer + "'");
    }
    return r;
}

BigReal BigReal::zero(int digits) {
    check_digits(digits);
    BigReal r(digits, nullptr);
    mpfr_set_zero(r.value_, 1);
    return r;
}

BigReal BigReal::from_double(double value, int digits) {
    check_digits(digits);
    BigReal r(digits, nullptr);
    mpfr_set_d(r.value_, value, kRound);
    return r;
}

std::string BigReal::to_decimal(int significant) const {
    if (significant < 1) throw PrecisionError("need at least one significant digit");
    return render(value_, static_cast<std::size_t>(significant));
}

std::string BigReal::to_exact_decimal() const {
    std::size_t n = mpfr_get_str_ndigits(10, mpfr_get_prec(value_));
    return render(value_, n);
}

double BigReal::to_double() const { return mpfr_get_d(value_, kRound); }

bool BigReal::is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }

int BigReal::sign() const noexcept { return mpfr_sgn(value_); }

BigReal BigReal::operator-() const {
    BigReal r(digits_, nullptr);
    mpfr_neg(r.value_, value_, kRound);
    return r;
}

namespace {

template <class Op>
BigReal binary(const BigReal& a, const BigReal& b, Op op) {
    BigReal r = BigReal::zero(std::max(a.digits(), b.digits()));
    op(r.get_mutable(), a.get(), b.get(), kRound);
    return r;
}

template <class Op>
BigReal unary(const BigReal& a, Op op) {
    BigReal r = BigReal::zero(a.digits());
    op(r.get_mutable(), a.get(), kRound);
    return r;
}

} // namespace

BigReal& BigReal::operator+=(const BigReal& rhs) { return *this = *this + rhs; }
BigReal& BigReal::operator-=(const BigReal& rhs) { return *this = *this - rhs; }
BigReal& BigReal::operator*=(const BigReal& rhs) { return *this = *this * rhs; }
BigReal& BigReal::operator/=(const BigReal& rhs) { return *this = *this / rhs; }

BigReal operator+(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_add); }
BigReal operator-(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_sub); }
BigReal operator*(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_mul); }
BigReal operator/(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_div); }

BigReal operator+(const BigReal& a, long b) {
    BigReal r(a.digits_, nullptr);
    mpfr_add_si(r.value_, a.value_, b, kRound);
    return r;
}

BigReal operator+(long a, const BigReal& b) { return b + a; }

BigReal operator-(const BigReal& a, long b) {
    BigReal r(a.digits_, nullptr);
    mpfr_sub_si(r.value_, a.value_, b, kRound);
    return r;
}

BigReal operator-(long a, const BigReal& b) {
    BigReal r(b.digits_, nullptr);
    mpfr_si_sub(r.value_, a, b.value_, kRound);
    return r;
}

BigReal operator*(const BigReal& a, long b) {
    BigReal r(a.digits_, nullptr);
    mpfr_mul_si(r.value_, a.value_, b, kRound);
    return r;
}

BigReal operator*(long a, const BigReal& b) { return b * a; }

BigReal operator/(const BigReal& a, long b) {
    BigReal r(a.digits_, nullptr);
    mpfr_div_si(r.value_, a.value_, b, kRound);
    return r;
}

bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
    if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.value_, b.value_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

BigReal raise_precision(const BigReal& x, int digits) {
    if (digits < x.digits()) {
        throw PrecisionError("raise_precision cannot narrow from " + std::to_string(x.digits()) +
                             " to " + std::to_string(digits) + " digits");
    }
    return with_precision(x, digits);
}

BigReal with_precision(const BigReal& x, int digits) {
    BigReal r = BigReal::zero(digits);
    mpfr_set(r.get_mutable(), x.get(), kRound);
    return r;
}

BigReal log10_abs(const BigReal& x) {
    if (x.is_zero()) throw DomainError("log10_abs of zero");
    // 128 bits of the argument are plenty for ~35 digits of its logarithm.
    mpfr_t narrow;
    mpfr_init2(narrow, 128);
    mpfr_abs(narrow, x.get(), kRound);
    BigReal r(0L, kMinDigits);
    mpfr_log10(r.get_mutable(), narrow, kRound);
    mpfr_clear(narrow);
    return r;
}

BigReal abs(const BigReal& x) { return unary(x, mpfr_abs); }

BigReal sqrt(const BigReal& x) {
    if (x.sign() < 0) throw DomainError("sqrt of a negative value");
    return unary(x, mpfr_sqrt);
}

BigReal cbrt(const BigReal& x) { return unary(x, mpfr_cbrt); }
BigReal exp(const BigReal& x) { return unary(x, mpfr_exp); }

BigReal log(const BigReal& x) {
    if (x.sign() <= 0) throw DomainError("log of a non-positive value");
    return unary(x, mpfr_log);
}

BigReal sin(const BigReal& x) { return unary(x, mpfr_sin); }
BigReal cos(const BigReal& x) { return unary(x, mpfr_cos); }

BigReal pow10(long k, int digits) {
    BigReal r(10L, digits);
    mpfr_pow_si(r.get_mutable(), r.get(), k, kRound);
    return r;
}

const BigReal& max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

} // namespace mpsolve
