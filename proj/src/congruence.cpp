#include "thetalab/congruence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace thetalab {

namespace {

long md(long x, long m) { return ((x % m) + m) % m; }

long as_long(const Rational& r) {
    if (!r.is_integer()) throw std::invalid_argument("expected an integer");
    return r.numerator().get_si();
}

std::vector<Mat2> sl2_mod(long m) {
    std::vector<Mat2> out;
    for (long a = 0; a < m; ++a)
        for (long b = 0; b < m; ++b)
            for (long c = 0; c < m; ++c)
                for (long d = 0; d < m; ++d)
                    if (md(a * d - b * c, m) == 1 % m) out.push_back({a, b, c, d});
    return out;
}

}  // namespace

bool TorsionPoint::killed_by(long n) const {
    return (Rational(n) * u).is_integer() && (Rational(n) * v).is_integer();
}

CyclotomicNumber weil_pairing(long n, const TorsionPoint& P, const TorsionPoint& Q) {
    if (n <= 0) throw std::invalid_argument("weil_pairing: n must be positive");
    if (!P.killed_by(n) || !Q.killed_by(n)) throw std::invalid_argument("weil_pairing: points are not n-torsion");
    const long a = as_long(Rational(n) * P.v), b = as_long(Rational(n) * P.u);
    const long c = as_long(Rational(n) * Q.v), d = as_long(Rational(n) * Q.u);
    return CyclotomicNumber::zeta(static_cast<int>(n), md(a * d - b * c, n));
}

LevelStructure act(const Mat2& g, const LevelStructure& x) {
    return {g.a * x.S + g.b * x.T, g.c * x.S + g.d * x.T};
}

StructureEnumeration enum_structures_above(int N) {
    if (N <= 0 || N % 2) throw std::invalid_argument("enum_structures_above needs even N");
    const long n2 = 2L * N;
    const TorsionPoint S = point_S(N), T = point_T(N);
    const TorsionPoint half_u{Rational(1, 2), Rational(0)}, half_v{Rational(0), Rational(1, 2)};
    auto halves = [&](const TorsionPoint& P) {
        // one halving, then add the 2-torsion
        TorsionPoint h{P.u / Rational(2), P.v / Rational(2)};
        return std::vector<TorsionPoint>{h, h + half_u, h + half_v, h + half_u + half_v};
    };
    const CyclotomicNumber target = CyclotomicNumber::zeta(static_cast<int>(n2));
    StructureEnumeration e;
    for (const auto& s : halves(S))
        for (const auto& t : halves(T)) {
            ++e.candidates;
            if (weil_pairing(n2, s, t) == target) e.structures.push_back({s, t});
        }
    std::sort(e.structures.begin(), e.structures.end());
    e.class_of.assign(e.structures.size(), -1);
    const long k = 1 + N;
    for (std::size_t i = 0; i < e.structures.size(); ++i) {
        if (e.class_of[i] >= 0) continue;
        // orbit of i under multiplication by 1 + N
        LevelStructure x = e.structures[i];
        do {
            auto it = std::lower_bound(e.structures.begin(), e.structures.end(), x);
            if (it == e.structures.end() || !(*it == x)) throw std::logic_error("structure set not closed under (1+N)");
            e.class_of[it - e.structures.begin()] = e.class_count;
            x = {k * x.S, k * x.T};
        } while (!(x == e.structures[i]));
        ++e.class_count;
    }
    return e;
}

int structure_class(const StructureEnumeration& e, const LevelStructure& x) {
    auto it = std::lower_bound(e.structures.begin(), e.structures.end(), x);
    if (it == e.structures.end() || !(*it == x)) return -1;
    return e.class_of[it - e.structures.begin()];
}

bool SubgroupSpec::contains(const Mat2& g) const {
    if (family == SubgroupFamily::Gamma)
        return md(g.a - 1, N) == 0 && md(g.d - 1, N) == 0 && md(g.b, N) == 0 && md(g.c, N) == 0;
    const long m = 2L * N;
    return md(g.a - 1, N) == 0 && md(g.d - 1, N) == 0 && md(g.b, m) == 0 && md(g.c, m) == 0;
}

SubgroupInvariants subgroup_invariants(const SubgroupSpec& spec) {
    const long m = spec.modulus();
    if (spec.N < 2 || spec.N > 12 || m > kMaxModulus) throw std::out_of_range("subgroup_invariants: modulus too large");
    if (spec.family == SubgroupFamily::GammaN2N && spec.N % 2) throw std::invalid_argument("Gamma^(N)(2N) needs even N");
    SubgroupInvariants inv;
    const auto G = sl2_mod(m);
    inv.sl2_order = static_cast<long>(G.size());
    std::set<Mat2> H, PH;  // image and its +- extension
    for (const auto& g : G)
        if (spec.contains(g)) H.insert(g);
    inv.image_order = static_cast<long>(H.size());
    const Mat2 minus{md(-1, m), 0, 0, md(-1, m)};
    inv.contains_minus_identity = H.count(minus) > 0;
    for (const auto& h : H) {
        PH.insert(h);
        PH.insert(mul_mod(minus, h, m));
    }
    inv.index_psl = inv.sl2_order / static_cast<long>(PH.size());

    // No elliptic elements: an elliptic element of Gamma has trace 0 or +-1 and reduces into PH.
    const Mat2 one{1 % m, 0, 0, 1 % m};
    for (const auto& h : PH) {
        if (h == one || h == minus) continue;
        const long t = md(h.trace(), m);
        if (t == 0 || t == 1 % m || t == md(-1, m))
            throw std::domain_error("subgroup_invariants: image contains a possible elliptic element " + h.str());
    }

    // Cusps: orbits of PH on vectors of order m in (Z/m)^2.
    std::set<std::pair<long, long>> seen;
    for (long x = 0; x < m; ++x)
        for (long y = 0; y < m; ++y) {
            if (std::gcd(std::gcd(x, y), m) != 1 || seen.count({x, y})) continue;
            ++inv.cusps;
            for (const auto& h : PH) seen.insert({md(h.a * x + h.b * y, m), md(h.c * x + h.d * y, m)});
        }
    // g = 1 + mu/12 - c/2
    const long twelve_g = 12 + inv.index_psl - 6L * inv.cusps;
    if (twelve_g % 12) throw std::logic_error("subgroup_invariants: non-integral genus");
    inv.genus = static_cast<int>(twelve_g / 12);
    return inv;
}

TowerReport group_tower(int N) {
    if (N <= 0 || N % 2) throw std::invalid_argument("group_tower needs even N");
    const long m = 2L * N;
    if (m > kMaxModulus) throw std::out_of_range("group_tower: modulus too large");
    const auto G = sl2_mod(m);
    const SubgroupSpec upper{SubgroupFamily::Gamma, N}, mid{SubgroupFamily::GammaN2N, N};
    std::set<Mat2> U, K;
    for (const auto& g : G) {
        if (upper.contains(g)) U.insert(g);
        if (mid.contains(g)) K.insert(g);
    }
    TowerReport r;
    r.gamma_n_image = static_cast<int>(U.size());
    r.kernel_image = static_cast<int>(K.size());
    r.quotient_upper = static_cast<int>(U.size() / K.size());
    r.quotient_lower = r.kernel_image;  // Gamma(2N) maps to the identity

    r.normal = std::includes(U.begin(), U.end(), K.begin(), K.end());
    for (const auto& g : G) {
        const Mat2 gi = inverse_mod(g, m);
        for (const auto& k : K)
            if (!K.count(mul_mod(mul_mod(g, k, m), gi, m))) r.normal = false;
    }
    r.elementary_abelian = true;
    for (const auto& u : U) {
        if (!K.count(mul_mod(u, u, m))) r.elementary_abelian = false;
        for (const auto& v : U)
            if (!K.count(mul_mod(mul_mod(u, v, m), inverse_mod(mul_mod(v, u, m), m), m))) r.elementary_abelian = false;
    }
    // Closure of K under the two generators must give all of U.
    auto close = [&](std::set<Mat2> S, const std::vector<Mat2>& gens) {
        std::vector<Mat2> frontier(S.begin(), S.end());
        while (!frontier.empty()) {
            Mat2 x = frontier.back();
            frontier.pop_back();
            for (const auto& g : gens) {
                Mat2 y = mul_mod(x, g, m);
                if (S.insert(y).second) frontier.push_back(y);
            }
        }
        return S;
    };
    const Mat2 p{1, N % m, 0, 1}, q{1, 0, N % m, 1};
    r.generated_upper = close(K, {p.mod(m), q.mod(m)}) == U;
    const Mat2 one{1, 0, 0, 1}, s{(1 + N) % m, 0, 0, (1 + N) % m};
    r.generated_lower = close({one}, {s}) == K;
    return r;
}

IdentityRecord group_tower_check(int N) {
    const TowerReport t = group_tower(N);
    IdentityRecord r;
    r.name = "Gamma(N) > Gamma^(N)(2N) > Gamma(2N) quotient orders (4, 2)";
    r.level = N;
    r.kind = RecordKind::Count;
    r.pass = t.quotient_upper == 4 && t.quotient_lower == 2 && t.normal && t.elementary_abelian && t.generated_upper &&
             t.generated_lower;
    r.detail = "quotients (" + std::to_string(t.quotient_upper) + ", " + std::to_string(t.quotient_lower) + ")" +
               (t.normal ? "" : ", not normal") + (t.elementary_abelian ? "" : ", upper quotient not (Z/2)^2") +
               (t.generated_upper ? "" : ", upper generators fail") + (t.generated_lower ? "" : ", (1+N)I does not generate");
    return r;
}

}  // namespace thetalab
