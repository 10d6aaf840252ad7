#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace qcl {

using rat = mpq_class;

// Dense univariate polynomial over Q in the variable u, coefficients low to high.
class poly {
public:
    poly() = default;
    explicit poly(rat c);
    static poly monomial(rat c, int k);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    int valuation() const;
    bool is_monomial() const;
    const rat& lead() const { return c_.back(); }
    const rat& coeff(int k) const;
    const std::vector<rat>& coeffs() const { return c_; }

    poly operator+(const poly& o) const;
    poly operator-(const poly& o) const;
    poly operator-() const;
    poly operator*(const poly& o) const;
    poly scaled(const rat& s) const;
    poly shifted(int k) const;   // multiply by u^k, k may be negative if exact
    poly monic() const;

    // Euclidean division; rem has degree < divisor degree.
    void divmod(const poly& d, poly& q, poly& r) const;
    poly exact_div(const poly& d) const;

    rat eval(const rat& x) const;
    long double eval(long double x) const;

    bool operator==(const poly& o) const { return c_ == o.c_; }
    bool operator!=(const poly& o) const { return !(c_ == o.c_); }

private:
    void trim();
    std::vector<rat> c_;
};

// Monic gcd, with shortcuts for monomials.
poly gcd(const poly& a, const poly& b);

// Element of Q(u), always kept as num/den with den monic and gcd(num,den) = 1.
class scalar {
public:
    scalar() : den_(rat(1)) {}
    scalar(long v) : num_(rat(v)), den_(rat(1)) {}
    scalar(int v) : scalar(static_cast<long>(v)) {}
    scalar(const rat& v) : num_(v), den_(rat(1)) {}
    scalar(poly num, poly den);

    // c * u^k for any integer k.
    static scalar upow(int k, rat c = 1);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_laurent() const { return den_.is_monomial(); }
    const poly& num() const { return num_; }
    const poly& den() const { return den_; }
    // complexity measure used for pivoting
    int weight() const { return num_.degree() + den_.degree() + 2; }

    scalar operator+(const scalar& o) const;
    scalar operator-(const scalar& o) const;
    scalar operator-() const;
    scalar operator*(const scalar& o) const;
    scalar operator/(const scalar& o) const;
    scalar& operator+=(const scalar& o) { return *this = *this + o; }
    scalar& operator-=(const scalar& o) { return *this = *this - o; }
    scalar& operator*=(const scalar& o) { return *this = *this * o; }
    scalar& operator/=(const scalar& o) { return *this = *this / o; }
    scalar inv() const;
    scalar pow(long n) const;

    bool operator==(const scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const scalar& o) const { return !(*this == o); }

    // evaluation at a value of u (not of nu)
    rat eval_u(const rat& u0) const;
    long double eval_u(long double u0) const;

    // canonical interchange string "p(u)/q(u)" with coprime integer coefficients
    std::string str() const;

private:
    poly num_, den_;
};

// The per-computation root degree: u = nu^{1/D}.
struct scalar_context {
    int D = 1;

    scalar q() const { return scalar::upow(D); }
    // nu^r for rational r; the denominator of r must divide D
    scalar qpow(const rat& r) const;
    scalar qpow(long r) const { return scalar::upow(static_cast<int>(r * D)); }
    // [n]_{nu^d}
    scalar qnum(long n, long d = 1) const;
    scalar qfact(long n, long d = 1) const;
    scalar qbinom(long n, long k, long d = 1) const;

    // value at nu = q0 > 0; PoleAtParameter when the denominator vanishes
    double specialize(const scalar& x, const rat& q0) const;
    double specialize(const scalar& x, double q0) const;

    // human-readable rendering in powers of q (Laurent parts) for reports
    std::string pretty(const scalar& x) const;

    bool operator==(const scalar_context& o) const { return D == o.D; }
};

std::string poly_str(const poly& p, const char* var = "u");
// inverse of scalar::str and poly_str; ParseError on malformed input
poly parse_poly(const std::string& s, char var = 'u');
scalar parse_scalar(const std::string& s);

}  // namespace qcl
