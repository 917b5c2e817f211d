#include "fracsch/bigfloat.hpp"

#include <cmath>
#include <memory>

#include "fracsch/error.hpp"

namespace fracsch::oracle {

namespace {

thread_local mpfr_prec_t g_bits = 256;

mpfr_prec_t digits_to_bits(int digits) {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 8;
}

}  // namespace

PrecisionGuard::PrecisionGuard(int digits) : saved_(g_bits) {
    if (digits < 5) throw DomainError("PrecisionGuard: at least 5 digits required");
    g_bits = digits_to_bits(digits);
}

PrecisionGuard::~PrecisionGuard() { g_bits = saved_; }

mpfr_prec_t PrecisionGuard::current_bits() { return g_bits; }

BigFloat::BigFloat() {
    mpfr_init2(v_, g_bits);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double v) {
    mpfr_init2(v_, g_bits);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(long v) {
    mpfr_init2(v_, g_bits);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat BigFloat::from_string(const std::string& s) {
    BigFloat r;
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) throw DomainError("BigFloat: cannot parse " + s);
    return r;
}

BigFloat BigFloat::ratio(long p, long q) {
    BigFloat r(p);
    mpfr_div_si(r.v_, r.v_, q, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pi() {
    BigFloat r;
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

std::string BigFloat::to_string(int digits) const {
    char* buf = nullptr;
    const std::string fmt = "%." + std::to_string(digits) + "Re";
    mpfr_asprintf(&buf, fmt.c_str(), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

double BigFloat::log10_abs() const {
    if (mpfr_zero_p(v_)) return -1e18;
    long e = 0;
    const double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
    return std::log10(std::fabs(m)) + double(e) * 0.30102999566398120;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
BigFloat& BigFloat::operator/=(const BigFloat& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat operator-(BigFloat a) {
    mpfr_neg(a.get(), a.get(), MPFR_RNDN);
    return a;
}

#define FRACSCH_UNARY(name, fn)             \
    BigFloat name(const BigFloat& x) {      \
        BigFloat r;                         \
        fn(r.get(), x.get(), MPFR_RNDN);    \
        return r;                           \
    }

FRACSCH_UNARY(exp, mpfr_exp)
FRACSCH_UNARY(log, mpfr_log)
FRACSCH_UNARY(sqrt, mpfr_sqrt)
FRACSCH_UNARY(sin, mpfr_sin)
FRACSCH_UNARY(cos, mpfr_cos)
FRACSCH_UNARY(sinh, mpfr_sinh)
FRACSCH_UNARY(cosh, mpfr_cosh)
FRACSCH_UNARY(gamma, mpfr_gamma)
FRACSCH_UNARY(abs, mpfr_abs)

#undef FRACSCH_UNARY

BigFloat pow(const BigFloat& x, const BigFloat& y) {
    BigFloat r;
    mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

BigFloat hypot(const BigFloat& x, const BigFloat& y) {
    BigFloat r;
    mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
    BigFloat r;
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat abs(const BigComplex& z) { return hypot(z.re, z.im); }

BigComplex exp(const BigComplex& z) {
    const BigFloat m = exp(z.re);
    BigFloat s, c;
    mpfr_sin_cos(s.get(), c.get(), z.im.get(), MPFR_RNDN);
    return {m * c, m * s};
}

BigComplex polar_pow(const BigFloat& r, const BigFloat& theta, const BigFloat& a) {
    const BigFloat m = pow(r, a);
    const BigFloat phi = a * theta;
    BigFloat s, c;
    mpfr_sin_cos(s.get(), c.get(), phi.get(), MPFR_RNDN);
    return {m * c, m * s};
}

}  // namespace fracsch::oracle
