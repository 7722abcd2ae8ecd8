#pragma once

#include <gmpxx.h>

#include <string>

namespace trihex {

// Element a + b*sqrt(3) of Q(sqrt 3) with GMP rational parts.
class QSqrt3 {
public:
    QSqrt3() = default;
    QSqrt3(long a) : a_(a), b_(0) {}
    QSqrt3(mpq_class a, mpq_class b = 0);

    static QSqrt3 sqrt3() { return QSqrt3(0, 1); }

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }

    // Exact sign: -1, 0 or +1.
    int sign() const;
    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_rational() const { return sgn(b_) == 0; }
    double to_double() const;

    // Exact floor; the double approximation is only a starting guess.
    mpz_class floor() const;

    QSqrt3 conj() const { return QSqrt3(a_, -b_); }
    mpq_class norm() const { return a_ * a_ - 3 * b_ * b_; }

    QSqrt3& operator+=(const QSqrt3& o);
    QSqrt3& operator-=(const QSqrt3& o);
    QSqrt3& operator*=(const QSqrt3& o);
    QSqrt3& operator/=(const QSqrt3& o);

    friend QSqrt3 operator+(QSqrt3 x, const QSqrt3& y) { return x += y; }
    friend QSqrt3 operator-(QSqrt3 x, const QSqrt3& y) { return x -= y; }
    friend QSqrt3 operator*(QSqrt3 x, const QSqrt3& y) { return x *= y; }
    friend QSqrt3 operator/(QSqrt3 x, const QSqrt3& y) { return x /= y; }
    friend QSqrt3 operator-(const QSqrt3& x) { return QSqrt3(-x.a_, -x.b_); }

    friend bool operator==(const QSqrt3& x, const QSqrt3& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator<(const QSqrt3& x, const QSqrt3& y) { return (x - y).sign() < 0; }
    friend bool operator>(const QSqrt3& x, const QSqrt3& y) { return y < x; }
    friend bool operator<=(const QSqrt3& x, const QSqrt3& y) { return !(y < x); }
    friend bool operator>=(const QSqrt3& x, const QSqrt3& y) { return !(x < y); }

    // "a+b√3" with rationals printed as p/q.
    std::string to_string() const;

private:
    mpq_class a_{0};
    mpq_class b_{0};
};

struct QVec2 {
    QSqrt3 x;
    QSqrt3 y;

    friend QVec2 operator+(const QVec2& p, const QVec2& q) { return {p.x + q.x, p.y + q.y}; }
    friend QVec2 operator-(const QVec2& p, const QVec2& q) { return {p.x - q.x, p.y - q.y}; }
    friend QVec2 operator*(const QSqrt3& s, const QVec2& p) { return {s * p.x, s * p.y}; }
    friend bool operator==(const QVec2& p, const QVec2& q) { return p.x == q.x && p.y == q.y; }
};

inline QSqrt3 cross(const QVec2& p, const QVec2& q) { return p.x * q.y - p.y * q.x; }
inline QSqrt3 dot(const QVec2& p, const QVec2& q) { return p.x * q.x + p.y * q.y; }

// 2x2 matrix over Q(sqrt 3), row major.
struct QMat2 {
    QSqrt3 a, b, c, d;

    QSqrt3 det() const { return a * d - b * c; }
    QMat2 inverse() const;
    friend QMat2 operator*(const QMat2& m, const QMat2& n);
    friend QVec2 operator*(const QMat2& m, const QVec2& v) { return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y}; }
    friend bool operator==(const QMat2& m, const QMat2& n) { return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d; }
};

}  // namespace trihex
