#pragma once

// Dense vectors and square matrices over BigReal, LU with partial pivoting.

#include "mpsolve/bigreal.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace mpsolve {

class Vector {
public:
    Vector() = default;
    explicit Vector(std::vector<BigReal> entries);
    Vector(std::size_t m, int digits);  // zeros

    static Vector from_decimal(std::span<const std::string> coords, int digits);

    std::size_t size() const noexcept { return entries_.size(); }
    /// Largest entry precision; 0 for an empty vector.
    int digits() const noexcept;

    const BigReal& operator[](std::size_t i) const { return entries_[i]; }
    BigReal& operator[](std::size_t i) { return entries_[i]; }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }
    const std::vector<BigReal>& entries() const noexcept { return entries_; }

    Vector& operator+=(const Vector& rhs);
    Vector& operator-=(const Vector& rhs);

    friend bool operator==(const Vector& a, const Vector& b);

private:
    std::vector<BigReal> entries_;
};

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const BigReal& s, const Vector& v);
Vector operator*(long s, const Vector& v);
Vector operator/(const Vector& v, long s);

/// Every entry carried at exactly `digits`.
Vector with_precision(const Vector& v, int digits);

BigReal norm_inf(const Vector& v);
BigReal norm_2(const Vector& v);

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t m, int digits);  // m x m zeros
    Matrix(std::initializer_list<std::initializer_list<BigReal>> rows);

    static Matrix identity(std::size_t m, int digits);

    std::size_t size() const noexcept { return m_; }
    int digits() const noexcept;

    const BigReal& operator()(std::size_t r, std::size_t c) const { return a_[r * m_ + c]; }
    BigReal& operator()(std::size_t r, std::size_t c) { return a_[r * m_ + c]; }

    Matrix& operator+=(const Matrix& rhs);

private:
    std::size_t m_ = 0;
    std::vector<BigReal> a_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);

/// Maximum absolute row sum.
BigReal norm_inf(const Matrix& a);

/// Row-permuted LU: P·A = L·U, L unit lower triangular. Both triangles share
/// `lu`; `perm[i]` is the row of A that ended up in row i.
struct LuFactors {
    Matrix lu;
    std::vector<std::size_t> perm;

    Matrix lower() const;
    Matrix upper() const;
    Matrix permuted(const Matrix& a) const;  // P·A
};

/// Pivots whose magnitude falls below 10^(8-d)·‖A‖∞ (d = precision of A)
/// raise SingularMatrix.
LuFactors lu_factor(const Matrix& a);
Vector lu_solve(const LuFactors& f, const Vector& b);

} // namespace mpsolve
