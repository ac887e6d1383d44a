#include "thetalab/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace thetalab {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Quotient and remainder for b != 0.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    trim(a);
    Poly q;
    if (a.size() < b.size()) return {q, a};
    q.assign(a.size() - b.size() + 1, Rational(0));
    Rational lead_inv = b.back().inverse();
    for (std::size_t i = a.size(); i-- >= b.size();) {
        if (a[i].is_zero()) continue;
        Rational c = a[i] * lead_inv;
        std::size_t shift = i - (b.size() - 1);
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    }
    trim(a);
    trim(q);
    return {q, a};
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

Poly sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

std::vector<long> int_divide(std::vector<long> a, const std::vector<long>& b) {
    // b monic
    std::vector<long> q(a.size() - b.size() + 1, 0);
    for (std::size_t i = a.size(); i-- >= b.size();) {
        long c = a[i];
        if (c == 0) continue;
        std::size_t shift = i - (b.size() - 1);
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    }
    return q;
}

// Reduces p in place modulo Phi_m and pads to phi(m) coefficients.
void reduce(int m, Poly& p) {
    const auto& phi = cyclotomic_polynomial(m);
    std::size_t d = phi.size() - 1;
    for (std::size_t i = p.size(); i-- > d;) {
        if (p[i].is_zero()) continue;
        Rational c = p[i];
        for (std::size_t j = 0; j <= d; ++j)
            if (phi[j] != 0) p[i - d + j] -= c * Rational(phi[j]);
    }
    p.resize(d, Rational(0));
}

}  // namespace

int euler_phi(int m) {
    if (m <= 0) throw std::invalid_argument("euler_phi of non-positive integer");
    int r = m, n = m;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

const std::vector<long>& cyclotomic_polynomial(int m) {
    static std::mutex mu;
    static std::map<int, std::vector<long>> cache;
    if (m <= 0) throw std::invalid_argument("cyclotomic order must be positive");
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(m); it != cache.end()) return it->second;
    }
    std::vector<long> p(m + 1, 0);
    p[0] = -1;
    p[m] = 1;
    for (int d = 1; d < m; ++d)
        if (m % d == 0) p = int_divide(p, cyclotomic_polynomial(d));
    std::lock_guard lock(mu);
    return cache.emplace(m, std::move(p)).first->second;
}

CyclotomicNumber::CyclotomicNumber(const Rational& r) : m_(1), c_{r} {}

CyclotomicNumber CyclotomicNumber::zero(int m) {
    return from_coeffs(m, {});
}

CyclotomicNumber CyclotomicNumber::one(int m) {
    return from_coeffs(m, {Rational(1)});
}

CyclotomicNumber CyclotomicNumber::zeta(int m, long k) {
    long e = ((k % m) + m) % m;
    Poly p(e + 1, Rational(0));
    p[e] = Rational(1);
    return from_poly(m, std::move(p));
}

CyclotomicNumber CyclotomicNumber::from_poly(int m, std::vector<Rational> poly) {
    reduce(m, poly);
    CyclotomicNumber r;
    r.m_ = m;
    r.c_ = std::move(poly);
    return r;
}

CyclotomicNumber CyclotomicNumber::from_coeffs(int m, std::vector<Rational> coeffs) {
    if (coeffs.size() > static_cast<std::size_t>(euler_phi(m)))
        throw std::invalid_argument("too many coefficients for Q(zeta_" + std::to_string(m) + ")");
    return from_poly(m, std::move(coeffs));
}

bool CyclotomicNumber::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

bool CyclotomicNumber::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

CyclotomicNumber CyclotomicNumber::embed(int n) const {
    if (n % m_ != 0)
        throw std::invalid_argument("cannot embed Q(zeta_" + std::to_string(m_) + ") into Q(zeta_" +
                                    std::to_string(n) + ")");
    if (n == m_) return *this;
    int step = n / m_;
    Poly p(c_.empty() ? 0 : (c_.size() - 1) * step + 1, Rational(0));
    for (std::size_t j = 0; j < c_.size(); ++j) p[j * step] = c_[j];
    return from_poly(n, std::move(p));
}

void CyclotomicNumber::match_order(CyclotomicNumber& a, CyclotomicNumber& b) const {
    if (a.m_ == b.m_) return;
    if (b.is_rational()) {
        b = from_coeffs(a.m_, {b.c_.empty() ? Rational(0) : b.c_[0]});
    } else if (a.is_rational()) {
        a = from_coeffs(b.m_, {a.c_.empty() ? Rational(0) : a.c_[0]});
    } else {
        throw std::invalid_argument("cyclotomic order mismatch: " + std::to_string(a.m_) + " vs " +
                                    std::to_string(b.m_) + " (embed explicitly)");
    }
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
    CyclotomicNumber b = o;
    match_order(*this, b);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) {
    CyclotomicNumber b = o;
    match_order(*this, b);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& o) {
    if (o.is_rational()) {
        Rational s = o.c_.empty() ? Rational(0) : o.c_[0];
        for (auto& c : c_) c *= s;
        return *this;
    }
    CyclotomicNumber b = o;
    match_order(*this, b);
    Poly p = mul(c_, b.c_);
    reduce(m_, p);
    c_ = std::move(p);
    return *this;
}

CyclotomicNumber CyclotomicNumber::operator-() const {
    CyclotomicNumber r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

CyclotomicNumber CyclotomicNumber::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero cyclotomic number");
    if (is_rational()) return from_coeffs(m_, {c_[0].inverse()});
    // Extended Euclid: s*a + t*Phi = g, g constant.
    const auto& phi_int = cyclotomic_polynomial(m_);
    Poly phi(phi_int.begin(), phi_int.end());
    Poly r0 = phi, r1 = c_;
    trim(r1);
    Poly s0, s1{Rational(1)};
    while (r1.size() > 1) {
        auto [q, r] = divmod(r0, r1);
        Poly s2 = sub(s0, mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    Rational g = r1.at(0).inverse();
    for (auto& c : s1) c *= g;
    return from_poly(m_, std::move(s1));
}

CyclotomicNumber CyclotomicNumber::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CyclotomicNumber base = *this, r = one(m_);
    while (e) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return r;
}

CyclotomicNumber CyclotomicNumber::conj() const {
    Poly p(m_, Rational(0));
    for (std::size_t j = 0; j < c_.size(); ++j) p[(m_ - static_cast<int>(j)) % m_] += c_[j];
    return from_poly(m_, std::move(p));
}

std::complex<double> CyclotomicNumber::to_complex() const {
    std::complex<double> s = 0;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / m_;
        s += c_[j].to_double() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
}

std::string CyclotomicNumber::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[j].pretty();
        if (j == 1) os << "*z" << m_;
        if (j > 1) os << "*z" << m_ << "^" << j;
    }
    if (first) os << "0";
    return os.str();
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.m_ == b.m_) return a.c_ == b.c_;
    int n = std::lcm(a.m_, b.m_);
    return a.embed(n).c_ == b.embed(n).c_;
}

int common_order(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    return std::lcm(a.order(), b.order());
}

CyclotomicNumber embed_mul(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    int n = common_order(a, b);
    return a.embed(n) * b.embed(n);
}

std::complex<double> to_complex(const CyclotomicNumber& a) { return a.to_complex(); }
std::complex<double> to_complex(const Rational& a) { return {a.to_double(), 0.0}; }

}  // namespace thetalab
