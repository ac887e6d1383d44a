#pragma once

#include "thetalab/cyclotomic.hpp"
#include "thetalab/rational.hpp"

#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace thetalab {

inline std::string coeff_str(const Rational& c) { return c.pretty(); }
inline std::string coeff_str(const CyclotomicNumber& c) {
    return c.is_rational() ? c.rational_part().pretty() : "(" + c.str() + ")";
}

// Truncated series in q^{1/r}: sum of c_k q^{k/r} for k < trunc, known modulo q^{trunc/r}.
// trunc == kExact marks a finite exact expression (no O-term).
template <class C>
class PuiseuxSeries {
public:
    static constexpr int64_t kExact = std::numeric_limits<int64_t>::max();
    using Terms = std::map<int64_t, C>;

    PuiseuxSeries() = default;
    PuiseuxSeries(const C& c) {
        if (!c.is_zero()) terms_.emplace(0, c);
    }
    PuiseuxSeries(int64_t ram, Terms terms, int64_t trunc = kExact) : ram_(ram), trunc_(trunc) {
        if (ram <= 0) throw std::invalid_argument("ramification must be positive");
        for (auto& [k, c] : terms)
            if (k < trunc && !c.is_zero()) terms_.emplace(k, std::move(c));
    }

    static PuiseuxSeries monomial(const C& c, int64_t num, int64_t ram = 1) {
        return PuiseuxSeries(ram, Terms{{num, c}});
    }
    // The zero series known modulo q^{num/ram}.
    static PuiseuxSeries big_o(int64_t num, int64_t ram = 1) { return PuiseuxSeries(ram, {}, num); }

    int64_t ram() const { return ram_; }
    int64_t trunc() const { return trunc_; }
    bool is_exact() const { return trunc_ == kExact; }
    const Terms& terms() const { return terms_; }
    // Zero up to the known precision.
    bool is_zero() const { return terms_.empty(); }

    int64_t valuation() const { return terms_.empty() ? trunc_ : terms_.begin()->first; }
    Rational valuation_q() const {
        if (terms_.empty()) throw std::domain_error("valuation of a series that is zero to its truncation");
        return Rational(terms_.begin()->first, ram_);
    }
    std::optional<Rational> trunc_q() const {
        if (is_exact()) return std::nullopt;
        return Rational(trunc_, ram_);
    }
    const C& leading_coeff() const {
        if (terms_.empty()) throw std::domain_error("leading coefficient of zero series");
        return terms_.begin()->second;
    }

    // Coefficient of q^e; throws when e is not below the truncation.
    C coeff(const Rational& e) const {
        Rational k = e * Rational(ram_);
        if (!is_exact() && k >= Rational(trunc_)) throw std::out_of_range("coefficient beyond truncation");
        if (!k.is_integer()) return C(0);
        auto it = terms_.find(k.numerator().get_si());
        return it == terms_.end() ? C(0) : it->second;
    }

    std::vector<std::pair<Rational, C>> leading_terms(std::size_t n) const {
        std::vector<std::pair<Rational, C>> out;
        for (const auto& [k, c] : terms_) {
            if (out.size() == n) break;
            out.emplace_back(Rational(k, ram_), c);
        }
        return out;
    }

    PuiseuxSeries with_ram(int64_t r) const {
        if (r % ram_ != 0) throw std::invalid_argument("ramification must be a multiple");
        if (r == ram_) return *this;
        int64_t f = r / ram_;
        PuiseuxSeries out;
        out.ram_ = r;
        out.trunc_ = sat_mul(trunc_, f);
        for (const auto& [k, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), k * f, c);
        return out;
    }

    // Strips the common factor of ramification, exponents and truncation.
    PuiseuxSeries normalized() const {
        int64_t g = ram_;
        for (const auto& [k, c] : terms_) g = std::gcd(g, k);
        if (!is_exact()) g = std::gcd(g, trunc_);
        if (g <= 1) return *this;
        PuiseuxSeries out;
        out.ram_ = ram_ / g;
        out.trunc_ = is_exact() ? kExact : trunc_ / g;
        for (const auto& [k, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), k / g, c);
        return out;
    }

    // Forgets everything from q^e on (never raises precision).
    PuiseuxSeries truncated(const Rational& e) const {
        int64_t l = std::lcm(ram_, e.denominator().get_si());
        PuiseuxSeries out = with_ram(l);
        int64_t t = (e * Rational(l)).numerator().get_si();
        if (t < out.trunc_) {
            out.trunc_ = t;
            out.terms_.erase(out.terms_.lower_bound(t), out.terms_.end());
        }
        return out;
    }

    // tau -> (num/den) tau, i.e. q -> q^{num/den}.
    PuiseuxSeries rescale(int64_t num, int64_t den) const {
        if (num <= 0 || den <= 0) throw std::invalid_argument("rescale needs num/den > 0");
        PuiseuxSeries out;
        out.ram_ = ram_ * den;
        out.trunc_ = sat_mul(trunc_, num);
        for (const auto& [k, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), k * num, c);
        return out;
    }

    PuiseuxSeries inverse() const { return inverse_impl(std::nullopt); }
    // Inverse known modulo q^{to}; required for exact inputs with several terms.
    PuiseuxSeries inverse(const Rational& to) const { return inverse_impl(to); }

    PuiseuxSeries pow(int64_t e) const {
        if (e < 0) return inverse().pow(-e);
        PuiseuxSeries base = *this, r(C(1));
        while (e) {
            if (e & 1) r *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return r;
    }

    std::complex<double> evaluate(std::complex<double> tau) const {
        std::complex<double> s = 0;
        const std::complex<double> two_pi_i(0.0, 2.0 * std::numbers::pi);
        for (const auto& [k, c] : terms_)
            s += to_complex(c) * std::exp(two_pi_i * tau * (static_cast<double>(k) / ram_));
        return s;
    }

    std::string str(std::size_t max_terms = 16) const {
        std::ostringstream os;
        std::size_t n = 0;
        for (const auto& [k, c] : terms_) {
            if (n == max_terms) {
                os << " + ...";
                break;
            }
            std::string cs = coeff_str(c);
            bool neg = !cs.empty() && cs[0] == '-';
            if (n == 0) os << (neg ? "-" : "");
            else os << (neg ? " - " : " + ");
            if (neg) cs.erase(0, 1);
            Rational e(k, ram_);
            if (e.is_zero()) os << cs;
            else {
                if (cs != "1") os << cs << "*";
                os << "q";
                if (e != Rational(1)) os << "^(" << e.pretty() << ")";
            }
            ++n;
        }
        if (!is_exact()) {
            if (n == 0) os << "O(q^(" << Rational(trunc_, ram_).pretty() << "))";
            else os << " + O(q^(" << Rational(trunc_, ram_).pretty() << "))";
        } else if (n == 0) {
            os << "0";
        }
        return os.str();
    }

    PuiseuxSeries& operator+=(const PuiseuxSeries& o) { return add(o, false); }
    PuiseuxSeries& operator-=(const PuiseuxSeries& o) { return add(o, true); }
    PuiseuxSeries& operator*=(const PuiseuxSeries& o) { return *this = mul(*this, o); }
    PuiseuxSeries& operator/=(const PuiseuxSeries& o) { return *this = mul(*this, o.inverse()); }
    PuiseuxSeries operator-() const {
        PuiseuxSeries r = *this;
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }
    friend PuiseuxSeries operator+(PuiseuxSeries a, const PuiseuxSeries& b) { return a += b; }
    friend PuiseuxSeries operator-(PuiseuxSeries a, const PuiseuxSeries& b) { return a -= b; }
    friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) { return mul(a, b); }
    friend PuiseuxSeries operator/(const PuiseuxSeries& a, const PuiseuxSeries& b) { return mul(a, b.inverse()); }

    friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
        int64_t l = std::lcm(a.ram_, b.ram_);
        PuiseuxSeries x = a.with_ram(l), y = b.with_ram(l);
        return x.trunc_ == y.trunc_ && x.terms_ == y.terms_;
    }

private:
    int64_t ram_ = 1;
    Terms terms_;
    int64_t trunc_ = kExact;

    static int64_t sat_add(int64_t a, int64_t b) {
        if (a == kExact || b == kExact) return kExact;
        return a + b;
    }
    static int64_t sat_mul(int64_t a, int64_t f) { return a == kExact ? kExact : a * f; }

    PuiseuxSeries& add(const PuiseuxSeries& o, bool negate) {
        int64_t l = std::lcm(ram_, o.ram_);
        if (l != ram_) *this = with_ram(l);
        PuiseuxSeries b = o.with_ram(l);
        trunc_ = std::min(trunc_, b.trunc_);
        terms_.erase(terms_.lower_bound(trunc_), terms_.end());
        for (auto& [k, c] : b.terms_) {
            if (k >= trunc_) break;
            auto it = terms_.find(k);
            if (it == terms_.end()) {
                terms_.emplace(k, negate ? C(-c) : c);
            } else {
                if (negate) it->second -= c;
                else it->second += c;
                if (it->second.is_zero()) terms_.erase(it);
            }
        }
        return *this;
    }

    static PuiseuxSeries mul(const PuiseuxSeries& a0, const PuiseuxSeries& b0) {
        int64_t l = std::lcm(a0.ram_, b0.ram_);
        PuiseuxSeries a = a0.with_ram(l), b = b0.with_ram(l);
        int64_t t = std::min(sat_add(a.trunc_, b.valuation()), sat_add(b.trunc_, a.valuation()));
        std::vector<std::pair<int64_t, const C*>> av, bv;
        for (const auto& [k, c] : a.terms_) av.emplace_back(k, &c);
        for (const auto& [k, c] : b.terms_) bv.emplace_back(k, &c);
        Terms out;
        for (const auto& [ka, ca] : av) {
            for (const auto& [kb, cb] : bv) {
                int64_t k = ka + kb;
                if (k >= t) break;
                auto it = out.find(k);
                if (it == out.end()) out.emplace(k, (*ca) * (*cb));
                else it->second += (*ca) * (*cb);
            }
        }
        return PuiseuxSeries(l, std::move(out), t);
    }

    PuiseuxSeries inverse_impl(std::optional<Rational> to) const {
        if (terms_.empty()) throw std::domain_error("inverse of a series that is zero to its truncation");
        const int64_t v = terms_.begin()->first;
        const C lead_inv = C(terms_.begin()->second).inverse();
        if (terms_.size() == 1 && is_exact() && !to) return monomial(lead_inv, -v, ram_);
        int64_t r = ram_;
        int64_t t_eff = trunc_;
        if (to) {
            r = std::lcm(ram_, to->denominator().get_si());
            t_eff = std::min(sat_mul(trunc_, r / ram_), ((*to) * Rational(r)).numerator().get_si() + 2 * v * (r / ram_));
        } else if (is_exact()) {
            throw std::domain_error("inverse of an exact series with several terms needs a target truncation");
        }
        PuiseuxSeries a = with_ram(r);
        const int64_t va = v * (r / ram_);
        const int64_t prec = t_eff - va;  // relative precision
        if (prec <= 0) return big_o(t_eff - 2 * va, r);
        // a = c q^va (1 + f); f lives on a grid of step g.
        int64_t g = 0;
        for (const auto& [k, c] : a.terms_) g = std::gcd(g, k - va);
        if (g == 0) g = prec;
        std::vector<std::pair<int64_t, C>> f;
        for (const auto& [k, c] : a.terms_) {
            if (k == va || k >= t_eff) continue;
            f.emplace_back((k - va) / g, c * lead_inv);
        }
        const int64_t n = (prec + g - 1) / g;
        std::vector<C> b(n, C(0));
        b[0] = C(1);
        for (int64_t i = 1; i < n; ++i) {
            C s(0);
            for (const auto& [j, fj] : f) {
                if (j > i) break;
                if (!b[i - j].is_zero()) s += fj * b[i - j];
            }
            b[i] = -s;
        }
        Terms out;
        for (int64_t i = 0; i < n; ++i)
            if (!b[i].is_zero()) out.emplace(-va + i * g, b[i] * lead_inv);
        return PuiseuxSeries(r, std::move(out), t_eff - 2 * va);
    }
};

using QSeries = PuiseuxSeries<Rational>;
using CSeries = PuiseuxSeries<CyclotomicNumber>;

inline CSeries to_cyclotomic(const QSeries& a) {
    CSeries::Terms t;
    for (const auto& [k, c] : a.terms()) t.emplace(k, CyclotomicNumber(c));
    return CSeries(a.ram(), std::move(t), a.trunc());
}

}  // namespace thetalab
