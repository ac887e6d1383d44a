#pragma once

#include "thetalab/rational.hpp"

#include <complex>
#include <string>
#include <vector>

namespace thetalab {

int euler_phi(int m);
// Integer coefficients of the m-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomic_polynomial(int m);

// Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^{phi(m)-1},
// reduced modulo Phi_m. zeta_m is exp(2 pi i / m) under to_complex().
class CyclotomicNumber {
public:
    CyclotomicNumber() : CyclotomicNumber(Rational(0)) {}
    CyclotomicNumber(const Rational& r);
    CyclotomicNumber(long v) : CyclotomicNumber(Rational(v)) {}

    static CyclotomicNumber zero(int m);
    static CyclotomicNumber one(int m);
    static CyclotomicNumber zeta(int m, long k = 1);
    // Reduces an arbitrary polynomial in zeta_m.
    static CyclotomicNumber from_poly(int m, std::vector<Rational> poly);
    static CyclotomicNumber from_coeffs(int m, std::vector<Rational> coeffs);

    int order() const { return m_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;
    Rational rational_part() const { return c_[0]; }

    // Same element viewed in Q(zeta_n); n must be a multiple of order().
    CyclotomicNumber embed(int n) const;

    CyclotomicNumber inverse() const;
    CyclotomicNumber pow(long e) const;
    // Galois conjugate zeta -> zeta^{-1} (complex conjugation).
    CyclotomicNumber conj() const;

    std::complex<double> to_complex() const;
    std::string str() const;

    CyclotomicNumber& operator+=(const CyclotomicNumber& o);
    CyclotomicNumber& operator-=(const CyclotomicNumber& o);
    CyclotomicNumber& operator*=(const CyclotomicNumber& o);
    CyclotomicNumber& operator/=(const CyclotomicNumber& o) { return *this *= o.inverse(); }
    CyclotomicNumber operator-() const;

    friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
    friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
    friend CyclotomicNumber operator/(CyclotomicNumber a, const CyclotomicNumber& b) { return a /= b; }

    // Value equality; elements of different orders are compared in the lcm field.
    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);

private:
    int m_ = 1;
    std::vector<Rational> c_;

    // Brings a rational operand to o's order; throws on a genuine order mismatch.
    void match_order(CyclotomicNumber& a, CyclotomicNumber& b) const;
};

// Embeds both into Q(zeta_lcm).
int common_order(const CyclotomicNumber& a, const CyclotomicNumber& b);
CyclotomicNumber embed_mul(const CyclotomicNumber& a, const CyclotomicNumber& b);

std::complex<double> to_complex(const CyclotomicNumber& a);
std::complex<double> to_complex(const Rational& a);

}  // namespace thetalab
