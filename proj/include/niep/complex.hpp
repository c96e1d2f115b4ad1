#pragma once

#include "niep/scalar.hpp"

#include <cmath>

namespace niep {

/// Complex number over a backend scalar. std::complex is only specified for
/// floating-point types, so the exact backend needs its own pair type.
template <class T>
struct Complex {
    T re{};
    T im{};

    Complex() = default;
    Complex(T r) : re(std::move(r)), im(0) {}
    Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

    bool is_real(double tol = 0.0) const { return is_zero(im, tol); }

    Complex conj() const { return {re, T(-im)}; }
    /// |z|^2, which stays inside the backend.
    T norm2() const { return T(re * re + im * im); }

    Complex& operator+=(const Complex& o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o)
    {
        T r = re * o.re - im * o.im;
        T i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    Complex& operator/=(const Complex& o)
    {
        T d = o.norm2();
        T r = (re * o.re + im * o.im) / d;
        T i = (im * o.re - re * o.im) / d;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator-(const Complex& a) { return {T(-a.re), T(-a.im)}; }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

template <class T>
double modulus(const Complex<T>& z)
{
    return std::sqrt(to_double(z.norm2()));
}

template <class T>
bool is_zero(const Complex<T>& z, double tol)
{
    if constexpr (is_exact_v<T>)
        return sgn(z.re) == 0 && sgn(z.im) == 0;
    else
        return std::hypot(z.re, z.im) <= tol;
}

/// Magnitude used for pivoting; exactness of the backend is irrelevant here.
inline double magnitude(double x) { return std::fabs(x); }
inline double magnitude(const Rational& x) { return std::fabs(x.get_d()); }
template <class T>
double magnitude(const Complex<T>& z)
{
    return modulus(z);
}

template <class T>
Complex<T> conj(const Complex<T>& z)
{
    return z.conj();
}
inline double conj(double x) { return x; }
inline Rational conj(const Rational& x) { return x; }

} // namespace niep
