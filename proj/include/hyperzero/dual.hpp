#ifndef HYPERZERO_DUAL_HPP
#define HYPERZERO_DUAL_HPP

#include <cmath>

namespace hyperzero {

// Second-order dual number: carries f, f' and f'' through arithmetic.
// Used to differentiate the DDE coefficient expressions exactly instead of
// transcribing derivative formulas by hand.
struct Dual2 {
    double v{0};  // value
    double d{0};  // first derivative
    double s{0};  // second derivative

    Dual2() = default;
    Dual2(double value) : v(value) {}
    Dual2(double value, double d1, double d2 = 0.0) : v(value), d(d1), s(d2) {}

    static Dual2 variable(double x) { return Dual2(x, 1.0, 0.0); }
};

inline Dual2 operator+(const Dual2& a, const Dual2& b) { return {a.v + b.v, a.d + b.d, a.s + b.s}; }
inline Dual2 operator-(const Dual2& a, const Dual2& b) { return {a.v - b.v, a.d - b.d, a.s - b.s}; }
inline Dual2 operator-(const Dual2& a) { return {-a.v, -a.d, -a.s}; }

inline Dual2 operator*(const Dual2& a, const Dual2& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d, a.s * b.v + 2.0 * a.d * b.d + a.v * b.s};
}

inline Dual2 operator/(const Dual2& a, const Dual2& b) {
    double q = a.v / b.v;
    double q1 = (a.d - q * b.d) / b.v;
    double q2 = (a.s - 2.0 * q1 * b.d - q * b.s) / b.v;
    return {q, q1, q2};
}

inline Dual2 operator+(double a, const Dual2& b) { return Dual2(a) + b; }
inline Dual2 operator+(const Dual2& a, double b) { return a + Dual2(b); }
inline Dual2 operator-(double a, const Dual2& b) { return Dual2(a) - b; }
inline Dual2 operator-(const Dual2& a, double b) { return a - Dual2(b); }
inline Dual2 operator*(double a, const Dual2& b) { return Dual2(a) * b; }
inline Dual2 operator*(const Dual2& a, double b) { return a * Dual2(b); }
inline Dual2 operator/(double a, const Dual2& b) { return Dual2(a) / b; }
inline Dual2 operator/(const Dual2& a, double b) { return a / Dual2(b); }

inline Dual2 sqrt(const Dual2& a) {
    double r = std::sqrt(a.v);
    double r1 = a.d / (2.0 * r);
    double r2 = (a.s - 2.0 * r1 * r1) / (2.0 * r);
    return {r, r1, r2};
}

// value()/first()/second() accessors used by templated coefficient code that
// must also compile for plain double.
inline double value_of(double x) { return x; }
inline double value_of(const Dual2& x) { return x.v; }

} // namespace hyperzero

#endif // HYPERZERO_DUAL_HPP
