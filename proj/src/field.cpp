#include "qcl/field.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "qcl/errors.hpp"

namespace qcl {

namespace {
const rat kZero(0);
}

poly::poly(rat c) {
    if (c != 0) c_.push_back(std::move(c));
}

poly poly::monomial(rat c, int k) {
    poly p;
    if (c == 0) return p;
    if (k < 0) fail("NegativeDegree", "monomial with negative exponent");
    p.c_.assign(k + 1, rat(0));
    p.c_[k] = std::move(c);
    return p;
}

void poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int poly::valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return static_cast<int>(i);
    return 0;
}

bool poly::is_monomial() const {
    if (c_.empty()) return false;
    for (size_t i = 0; i + 1 < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

const rat& poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
    return c_[k];
}

poly poly::operator+(const poly& o) const {
    poly r;
    const size_t n = std::max(c_.size(), o.c_.size());
    r.c_.resize(n);
    for (size_t i = 0; i < n; ++i) {
        if (i < c_.size() && i < o.c_.size())
            r.c_[i] = c_[i] + o.c_[i];
        else if (i < c_.size())
            r.c_[i] = c_[i];
        else
            r.c_[i] = o.c_[i];
    }
    r.trim();
    return r;
}

poly poly::operator-() const {
    poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

poly poly::operator-(const poly& o) const { return *this + (-o); }

poly poly::operator*(const poly& o) const {
    poly r;
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            r.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    r.trim();
    return r;
}

poly poly::scaled(const rat& s) const {
    if (s == 0) return poly();
    poly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

poly poly::shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    poly r;
    if (k > 0) {
        r.c_.assign(k, rat(0));
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    } else {
        if (valuation() < -k) fail("InexactShift", "negative shift below valuation");
        r.c_.assign(c_.begin() + (-k), c_.end());
    }
    return r;
}

poly poly::monic() const {
    if (is_zero()) return *this;
    return scaled(1 / lead());
}

void poly::divmod(const poly& d, poly& q, poly& r) const {
    if (d.is_zero()) fail("DivisionByZero", "polynomial division by zero");
    r = *this;
    q = poly();
    if (r.degree() < d.degree()) return;
    q.c_.assign(r.degree() - d.degree() + 1, rat(0));
    const rat inv_lead = 1 / d.lead();
    const int dd = d.degree();
    for (int k = r.degree(); k >= dd && !r.is_zero(); --k) {
        if (k > r.degree()) continue;
        const rat f = r.c_[k] * inv_lead;
        if (f == 0) continue;
        q.c_[k - dd] = f;
        for (int j = 0; j <= dd; ++j)
            if (d.c_[j] != 0) r.c_[k - dd + j] -= f * d.c_[j];
        r.trim();
    }
    q.trim();
}

poly poly::exact_div(const poly& d) const {
    if (d.is_monomial()) {
        const int k = d.degree();
        poly r = shifted(-k);
        return r.scaled(1 / d.lead());
    }
    poly q, r;
    divmod(d, q, r);
    if (!r.is_zero()) fail("InexactDivision", "polynomial division left a remainder");
    return q;
}

rat poly::eval(const rat& x) const {
    rat acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

long double poly::eval(long double x) const {
    long double acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].get_d();
    return acc;
}

poly gcd(const poly& a, const poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    const int va = a.valuation(), vb = b.valuation();
    const int v = std::min(va, vb);
    if (a.is_monomial() || b.is_monomial()) return poly::monomial(1, v);
    poly x = a.shifted(-va).monic(), y = b.shifted(-vb).monic();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        if (y.degree() == 0) return poly::monomial(1, v);
        poly q, r;
        x.divmod(y, q, r);
        x = std::move(y);
        y = r.monic();
    }
    return x.shifted(v);
}

scalar::scalar(poly num, poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) fail("DivisionByZero", "zero denominator");
    if (num_.is_zero()) {
        den_ = poly(rat(1));
        return;
    }
    poly g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.exact_div(g);
        den_ = den_.exact_div(g);
    }
    const rat l = den_.lead();
    if (l != 1) {
        num_ = num_.scaled(1 / l);
        den_ = den_.scaled(1 / l);
    }
}

scalar scalar::upow(int k, rat c) {
    scalar s;
    if (c == 0) return s;
    if (k >= 0) {
        s.num_ = poly::monomial(std::move(c), k);
    } else {
        s.num_ = poly(std::move(c));
        s.den_ = poly::monomial(1, -k);
    }
    return s;
}

bool scalar::is_one() const {
    return num_.degree() == 0 && num_.lead() == 1 && den_.degree() == 0;
}

scalar scalar::operator-() const {
    scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

scalar scalar::operator+(const scalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) {
        if (den_.degree() == 0) {
            scalar r;
            r.num_ = num_ + o.num_;
            return r;
        }
        return scalar(num_ + o.num_, den_);
    }
    // Laurent fast path: both denominators are powers of u
    if (den_.is_monomial() && o.den_.is_monomial()) {
        const int a = den_.degree(), b = o.den_.degree();
        const int m = std::max(a, b);
        poly n = num_.shifted(m - a) + o.num_.shifted(m - b);
        if (n.is_zero()) return scalar();
        const int v = std::min(n.valuation(), m);
        scalar r;
        r.num_ = n.shifted(-v);
        r.den_ = poly::monomial(1, m - v);
        return r;
    }
    poly g = gcd(den_, o.den_);
    poly b1 = den_.exact_div(g), d1 = o.den_.exact_div(g);
    return scalar(num_ * d1 + o.num_ * b1, den_ * d1);
}

scalar scalar::operator-(const scalar& o) const { return *this + (-o); }

scalar scalar::operator*(const scalar& o) const {
    if (is_zero() || o.is_zero()) return scalar();
    if (den_.degree() == 0 && o.den_.degree() == 0) {
        scalar r;
        r.num_ = num_ * o.num_;
        return r;
    }
    poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
    poly a = g1.degree() > 0 ? num_.exact_div(g1) : num_;
    poly dd = g1.degree() > 0 ? o.den_.exact_div(g1) : o.den_;
    poly c = g2.degree() > 0 ? o.num_.exact_div(g2) : o.num_;
    poly b = g2.degree() > 0 ? den_.exact_div(g2) : den_;
    scalar r;
    r.num_ = a * c;
    r.den_ = b * dd;  // both monic, product monic
    return r;
}

scalar scalar::inv() const {
    if (is_zero()) fail("DivisionByZero", "inverse of zero");
    scalar r;
    const rat l = num_.lead();
    r.num_ = den_.scaled(1 / l);
    r.den_ = num_.scaled(1 / l);
    return r;
}

scalar scalar::operator/(const scalar& o) const { return *this * o.inv(); }

scalar scalar::pow(long n) const {
    if (n < 0) return inv().pow(-n);
    scalar r(1), b = *this;
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

rat scalar::eval_u(const rat& u0) const {
    rat d = den_.eval(u0);
    if (d == 0) fail("PoleAtParameter", "denominator vanishes at u = " + u0.get_str());
    return num_.eval(u0) / d;
}

long double scalar::eval_u(long double u0) const {
    long double d = den_.eval(u0);
    if (std::fabs(d) < 1e-300L) fail("PoleAtParameter", "denominator vanishes");
    return num_.eval(u0) / d;
}

namespace {

mpz_class lcm_den(const poly& p, mpz_class acc) {
    for (const auto& c : p.coeffs())
        if (c != 0) mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), c.get_den_mpz_t());
    return acc;
}

mpz_class gcd_num(const poly& p, mpz_class acc) {
    for (const auto& c : p.coeffs())
        if (c != 0) mpz_gcd(acc.get_mpz_t(), acc.get_mpz_t(), c.get_num_mpz_t());
    return acc;
}

}  // namespace

std::string poly_str(const poly& p, const char* var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        rat c = p.coeff(k);
        if (c == 0) continue;
        const bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        const bool unit = (c == 1);
        if (!unit || k == 0) os << c.get_str();
        if (k > 0) {
            if (!unit) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

std::string scalar::str() const {
    if (is_zero()) return "0";
    mpz_class l = lcm_den(den_, lcm_den(num_, 1));
    poly n = num_.scaled(rat(l)), d = den_.scaled(rat(l));
    mpz_class g = gcd_num(d, gcd_num(n, 0));
    n = n.scaled(rat(1, 1) / rat(g));
    d = d.scaled(rat(1, 1) / rat(g));
    if (d.degree() == 0 && d.lead() == 1) return poly_str(n);
    return "(" + poly_str(n) + ")/(" + poly_str(d) + ")";
}

scalar scalar_context::qpow(const rat& r) const {
    rat e = r * D;
    e.canonicalize();
    if (e.get_den() != 1)
        fail("ExponentDenominatorMismatch",
             "exponent " + r.get_str() + " not a multiple of 1/" + std::to_string(D));
    return scalar::upow(static_cast<int>(e.get_num().get_si()));
}

scalar scalar_context::qnum(long n, long d) const {
    if (n == 0) return scalar();
    if (n < 0) return -qnum(-n, d);
    scalar s;
    for (long k = 0; k < n; ++k) s += scalar::upow(static_cast<int>(d * (n - 1 - 2 * k) * D));
    return s;
}

scalar scalar_context::qfact(long n, long d) const {
    scalar s(1);
    for (long k = 2; k <= n; ++k) s *= qnum(k, d);
    return s;
}

scalar scalar_context::qbinom(long n, long k, long d) const {
    if (k < 0 || k > n) return scalar();
    return qfact(n, d) / (qfact(k, d) * qfact(n - k, d));
}

namespace {

bool exact_root(const mpz_class& x, int D, mpz_class& out) {
    if (x < 0) return false;
    return mpz_root(out.get_mpz_t(), x.get_mpz_t(), D) != 0;
}

}  // namespace

double scalar_context::specialize(const scalar& x, const rat& q0) const {
    if (q0 <= 0) fail("InvalidParameter", "specialization needs q0 > 0");
    mpz_class rn, rd;
    if (exact_root(q0.get_num(), D, rn) && exact_root(q0.get_den(), D, rd)) {
        rat u0(rn, rd);
        u0.canonicalize();
        return x.eval_u(u0).get_d();
    }
    return specialize(x, q0.get_d());
}

double scalar_context::specialize(const scalar& x, double q0) const {
    if (!(q0 > 0)) fail("InvalidParameter", "specialization needs q0 > 0");
    const long double u0 = std::pow(static_cast<long double>(q0), 1.0L / D);
    const long double d = x.den().eval(u0);
    long double scale = 0;
    for (const auto& c : x.den().coeffs()) scale += std::fabs(c.get_d());
    if (std::fabs(d) <= 1e-13L * std::max(scale, 1.0L) * std::max(1.0L, std::pow(u0, x.den().degree())))
        fail("PoleAtParameter", "denominator vanishes at q = " + std::to_string(q0));
    return static_cast<double>(x.num().eval(u0) / d);
}

namespace {

std::string laurent_q(const poly& p, int shift, int D) {
    // p(u) * u^shift written in powers of q = u^D
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        rat c = p.coeff(k);
        if (c == 0) continue;
        const bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        rat e(k + shift, D);
        e.canonicalize();
        const bool unit = (c == 1);
        if (!unit || e == 0) os << c.get_str();
        if (e != 0) {
            if (!unit) os << "*";
            os << "q";
            if (e != 1) {
                if (e.get_den() == 1)
                    os << "^" << e.get_str();
                else
                    os << "^(" << e.get_str() << ")";
            }
        }
    }
    return os.str();
}

}  // namespace

std::string scalar_context::pretty(const scalar& x) const {
    if (x.is_zero()) return "0";
    if (x.is_laurent()) return laurent_q(x.num(), -x.den().degree(), D);
    // shift both parts into Laurent-centered forms for readability
    const int sn = x.num().valuation(), sd = x.den().valuation();
    std::string n = laurent_q(x.num().shifted(-sn), sn, D);
    std::string d = laurent_q(x.den().shifted(-sd), sd, D);
    return "(" + n + ")/(" + d + ")";
}

}  // namespace qcl

namespace qcl {

poly parse_poly(const std::string& text, char var) {
    std::string s;
    for (char ch : text)
        if (ch != ' ') s += ch;
    if (s.empty()) fail("ParseError", "empty polynomial");
    poly p;
    size_t i = 0;
    while (i < s.size()) {
        bool neg = false;
        if (s[i] == '+' || s[i] == '-') {
            neg = s[i] == '-';
            ++i;
        } else if (i > 0) {
            fail("ParseError", "expected a sign in '" + text + "'");
        }
        rat c(1);
        const size_t start = i;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
        if (i > start) {
            try {
                c = rat(s.substr(start, i - start));
            } catch (const std::exception&) {
                fail("ParseError", "bad coefficient in '" + text + "'");
            }
            c.canonicalize();
        }
        int k = 0;
        if (i < s.size() && s[i] == '*') ++i;
        if (i < s.size() && s[i] == var) {
            ++i;
            k = 1;
            if (i < s.size() && s[i] == '^') {
                const size_t e0 = ++i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (i == e0) fail("ParseError", "bad exponent in '" + text + "'");
                k = std::stoi(s.substr(e0, i - e0));
            }
        } else if (i == start) {
            fail("ParseError", "unexpected character in '" + text + "'");
        }
        p = p + poly::monomial(neg ? rat(-c) : c, k);
    }
    return p;
}

scalar parse_scalar(const std::string& text) {
    const auto cut = text.find(")/(");
    if (!text.empty() && text.front() == '(' && cut != std::string::npos && text.back() == ')') {
        const poly n = parse_poly(text.substr(1, cut - 1));
        const poly d = parse_poly(text.substr(cut + 3, text.size() - cut - 4));
        if (d.is_zero()) fail("ParseError", "zero denominator");
        return scalar(n, d);
    }
    return scalar(parse_poly(text), poly(rat(1)));
}

}  // namespace qcl
