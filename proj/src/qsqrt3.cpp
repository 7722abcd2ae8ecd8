#include "trihex/qsqrt3.hpp"

#include <cmath>
#include <stdexcept>

namespace trihex {

QSqrt3::QSqrt3(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
}

int QSqrt3::sign() const {
    int sa = sgn(a_);
    int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with 3 b^2.
    int c = cmp(a_ * a_, 3 * b_ * b_);
    return c > 0 ? sa : (c < 0 ? sb : 0);
}

double QSqrt3::to_double() const {
    return a_.get_d() + b_.get_d() * std::sqrt(3.0);
}

mpz_class QSqrt3::floor() const {
    mpz_class f(std::floor(to_double()));
    while (QSqrt3(mpq_class(f)) > *this) --f;
    while (QSqrt3(mpq_class(f + 1)) <= *this) ++f;
    return f;
}

QSqrt3& QSqrt3::operator+=(const QSqrt3& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

QSqrt3& QSqrt3::operator-=(const QSqrt3& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

QSqrt3& QSqrt3::operator*=(const QSqrt3& o) {
    mpq_class na = a_ * o.a_ + 3 * b_ * o.b_;
    mpq_class nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

QSqrt3& QSqrt3::operator/=(const QSqrt3& o) {
    if (o.is_zero()) throw std::domain_error("QSqrt3: division by zero");
    mpq_class n = o.norm();
    *this *= o.conj();
    a_ /= n;
    b_ /= n;
    return *this;
}

std::string QSqrt3::to_string() const {
    if (sgn(b_) == 0) return a_.get_str();
    std::string s;
    if (sgn(a_) != 0) s = a_.get_str();
    if (sgn(b_) < 0)
        s += "-";
    else if (!s.empty())
        s += "+";
    mpq_class ab = abs(b_);
    if (ab != 1) s += ab.get_str();
    s += "√3";
    return s;
}

QMat2 QMat2::inverse() const {
    QSqrt3 dt = det();
    if (dt.is_zero()) throw std::domain_error("QMat2: singular matrix");
    return {d / dt, -b / dt, -c / dt, a / dt};
}

QMat2 operator*(const QMat2& m, const QMat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

}  // namespace trihex
