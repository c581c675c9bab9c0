#include "mpsolve/linalg.hpp"

#include "mpsolve/error.hpp"

#include <algorithm>
#include <numeric>

namespace mpsolve {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": " + std::to_string(a) + " vs " +
                                std::to_string(b));
    }
}

} // namespace

Vector::Vector(std::vector<BigReal> entries) : entries_(std::move(entries)) {}

Vector::Vector(std::size_t m, int digits) : entries_(m, BigReal::zero(digits)) {}

Vector Vector::from_decimal(std::span<const std::string> coords, int digits) {
    std::vector<BigReal> e;
    e.reserve(coords.size());
    for (const auto& c : coords) e.push_back(BigReal::from_decimal(c, digits));
    return Vector(std::move(e));
}

int Vector::digits() const noexcept {
    int d = 0;
    for (const auto& x : entries_) d = std::max(d, x.digits());
    return d;
}

Vector& Vector::operator+=(const Vector& rhs) {
    require_same_size(size(), rhs.size(), "vector add");
    for (std::size_t i = 0; i < size(); ++i) entries_[i] += rhs.entries_[i];
    return *this;
}

Vector& Vector::operator-=(const Vector& rhs) {
    require_same_size(size(), rhs.size(), "vector subtract");
    for (std::size_t i = 0; i < size(); ++i) entries_[i] -= rhs.entries_[i];
    return *this;
}

bool operator==(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] == b[i]) || a[i].digits() != b[i].digits()) return false;
    }
    return true;
}

Vector operator+(const Vector& a, const Vector& b) {
    Vector r = a;
    r += b;
    return r;
}

Vector operator-(const Vector& a, const Vector& b) {
    Vector r = a;
    r -= b;
    return r;
}

Vector operator*(const BigReal& s, const Vector& v) {
    std::vector<BigReal> e;
    e.reserve(v.size());
    for (const auto& x : v) e.push_back(s * x);
    return Vector(std::move(e));
}

Vector operator*(long s, const Vector& v) {
    std::vector<BigReal> e;
    e.reserve(v.size());
    for (const auto& x : v) e.push_back(x * s);
    return Vector(std::move(e));
}

Vector operator/(const Vector& v, long s) {
    std::vector<BigReal> e;
    e.reserve(v.size());
    for (const auto& x : v) e.push_back(x / s);
    return Vector(std::move(e));
}

Vector with_precision(const Vector& v, int digits) {
    std::vector<BigReal> e;
    e.reserve(v.size());
    for (const auto& x : v) e.push_back(with_precision(x, digits));
    return Vector(std::move(e));
}

BigReal norm_inf(const Vector& v) {
    BigReal best = BigReal::zero(std::max(v.digits(), kMinDigits));
    for (const auto& x : v) {
        BigReal a = abs(x);
        if (a > best) best = std::move(a);
    }
    return best;
}

BigReal norm_2(const Vector& v) {
    BigReal sum = BigReal::zero(std::max(v.digits(), kMinDigits));
    for (const auto& x : v) sum += x * x;
    return sqrt(sum);
}

Matrix::Matrix(std::size_t m, int digits) : m_(m), a_(m * m, BigReal::zero(digits)) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<BigReal>> rows) : m_(rows.size()) {
    a_.reserve(m_ * m_);
    for (const auto& row : rows) {
        require_same_size(row.size(), m_, "matrix must be square");
        a_.insert(a_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t m, int digits) {
    Matrix r(m, digits);
    for (std::size_t i = 0; i < m; ++i) r(i, i) = BigReal(1L, digits);
    return r;
}

int Matrix::digits() const noexcept {
    int d = 0;
    for (const auto& x : a_) d = std::max(d, x.digits());
    return d;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    require_same_size(m_, rhs.m_, "matrix add");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
    return *this;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix r = a;
    r += b;
    return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_size(a.size(), b.size(), "matrix subtract");
    Matrix r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r(i, j) -= b(i, j);
    return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_size(a.size(), b.size(), "matrix multiply");
    const std::size_t m = a.size();
    Matrix r(m, std::max({a.digits(), b.digits(), kMinDigits}));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

Vector operator*(const Matrix& a, const Vector& x) {
    require_same_size(a.size(), x.size(), "matrix-vector multiply");
    const std::size_t m = a.size();
    Vector r(m, std::max({a.digits(), x.digits(), kMinDigits}));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) r[i] += a(i, j) * x[j];
    return r;
}

BigReal norm_inf(const Matrix& a) {
    BigReal best = BigReal::zero(std::max(a.digits(), kMinDigits));
    for (std::size_t i = 0; i < a.size(); ++i) {
        BigReal row = BigReal::zero(best.digits());
        for (std::size_t j = 0; j < a.size(); ++j) row += abs(a(i, j));
        if (row > best) best = row;
    }
    return best;
}

Matrix LuFactors::lower() const {
    const std::size_t m = lu.size();
    Matrix l = Matrix::identity(m, std::max(lu.digits(), kMinDigits));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < i; ++j) l(i, j) = lu(i, j);
    return l;
}

Matrix LuFactors::upper() const {
    const std::size_t m = lu.size();
    Matrix u(m, std::max(lu.digits(), kMinDigits));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) u(i, j) = lu(i, j);
    return u;
}

Matrix LuFactors::permuted(const Matrix& a) const {
    const std::size_t m = a.size();
    Matrix r(m, std::max(a.digits(), kMinDigits));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) r(i, j) = a(perm[i], j);
    return r;
}

LuFactors lu_factor(const Matrix& a) {
    const std::size_t m = a.size();
    const int d = std::max(a.digits(), kMinDigits);
    LuFactors f{a, std::vector<std::size_t>(m)};
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
    const BigReal threshold = norm_inf(a) * pow10(8 - d, d);
    Matrix& lu = f.lu;

    for (std::size_t k = 0; k < m; ++k) {
        std::size_t pivot = k;
        BigReal best = abs(lu(k, k));
        for (std::size_t i = k + 1; i < m; ++i) {
            BigReal cand = abs(lu(i, k));
            if (cand > best) {
                best = std::move(cand);
                pivot = i;
            }
        }
        if (best.is_zero() || best < threshold) {
            throw SingularMatrix("pivot " + std::to_string(k) + " below singularity threshold");
        }
        if (pivot != k) {
            for (std::size_t j = 0; j < m; ++j) std::swap(lu(k, j), lu(pivot, j));
            std::swap(f.perm[k], f.perm[pivot]);
        }
        for (std::size_t i = k + 1; i < m; ++i) {
            if (lu(i, k).is_zero()) continue;
            BigReal factor = lu(i, k) / lu(k, k);
            for (std::size_t j = k + 1; j < m; ++j) lu(i, j) -= factor * lu(k, j);
            lu(i, k) = std::move(factor);
        }
    }
    return f;
}

Vector lu_solve(const LuFactors& f, const Vector& b) {
    const std::size_t m = f.lu.size();
    require_same_size(m, b.size(), "lu_solve");
    const Matrix& lu = f.lu;
    std::vector<BigReal> y;
    y.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        BigReal s = b[f.perm[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * y[j];
        y.push_back(std::move(s));
    }
    for (std::size_t i = m; i-- > 0;) {
        BigReal s = y[i];
        for (std::size_t j = i + 1; j < m; ++j) s -= lu(i, j) * y[j];
        y[i] = s / lu(i, i);
    }
    return Vector(std::move(y));
}

} // namespace mpsolve
