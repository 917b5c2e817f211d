#pragma once

#include <mpfr.h>

#include <complex>
#include <string>

namespace fracsch::oracle {

/// Sets the MPFR precision (in decimal digits) used by newly created BigFloat
/// values on this thread for the lifetime of the guard.
class PrecisionGuard {
public:
    explicit PrecisionGuard(int digits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

    static mpfr_prec_t current_bits();

private:
    mpfr_prec_t saved_;
};

/// Owning MPFR real at the thread's current precision.
class BigFloat {
public:
    BigFloat();
    BigFloat(double v);  // NOLINT(google-explicit-constructor)
    BigFloat(long v);    // NOLINT(google-explicit-constructor)
    BigFloat(int v) : BigFloat(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    static BigFloat from_string(const std::string& s);
    static BigFloat ratio(long p, long q);
    static BigFloat pi();

    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string to_string(int digits) const;
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    /// Base-10 exponent estimate log10|x| (very negative for zero).
    double log10_abs() const;

    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
    friend BigFloat operator-(BigFloat a);
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }

private:
    mpfr_t v_;
};

BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat sinh(const BigFloat& x);
BigFloat cosh(const BigFloat& x);
BigFloat pow(const BigFloat& x, const BigFloat& y);
BigFloat gamma(const BigFloat& x);
BigFloat abs(const BigFloat& x);
BigFloat hypot(const BigFloat& x, const BigFloat& y);
BigFloat atan2(const BigFloat& y, const BigFloat& x);

/// Complex number with BigFloat parts.
struct BigComplex {
    BigFloat re;
    BigFloat im;

    BigComplex() = default;
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    explicit BigComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> to_cplx() const { return {re.to_double(), im.to_double()}; }

    BigComplex& operator+=(const BigComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    BigComplex& operator-=(const BigComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
    friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator*(const BigFloat& s, const BigComplex& a) { return {s * a.re, s * a.im}; }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        const BigFloat d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
};

BigFloat abs(const BigComplex& z);
BigComplex exp(const BigComplex& z);
/// r^a e^{i a theta} for the polar point (r, theta), with the angle taken literally.
BigComplex polar_pow(const BigFloat& r, const BigFloat& theta, const BigFloat& a);

}  // namespace fracsch::oracle
