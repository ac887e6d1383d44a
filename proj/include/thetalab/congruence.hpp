#pragma once

#include "thetalab/cyclotomic.hpp"
#include "thetalab/rational.hpp"
#include "thetalab/report.hpp"
#include "thetalab/sl2.hpp"

#include <vector>

namespace thetalab {

// The point u + v tau of C / <1, tau>, coordinates reduced into [0, 1).
struct TorsionPoint {
    Rational u, v;

    TorsionPoint() = default;
    TorsionPoint(const Rational& u_, const Rational& v_) : u(u_.frac()), v(v_.frac()) {}

    bool killed_by(long n) const;
    friend TorsionPoint operator+(const TorsionPoint& p, const TorsionPoint& q) { return {p.u + q.u, p.v + q.v}; }
    friend TorsionPoint operator*(long k, const TorsionPoint& p) { return {Rational(k) * p.u, Rational(k) * p.v}; }
    friend bool operator==(const TorsionPoint&, const TorsionPoint&) = default;
    friend auto operator<=>(const TorsionPoint& p, const TorsionPoint& q) {
        if (auto c = p.u <=> q.u; c != 0) return c;
        return p.v <=> q.v;
    }
};

inline TorsionPoint point_S(long n) { return {Rational(0), Rational(1, n)}; }  // tau / n
inline TorsionPoint point_T(long n) { return {Rational(1, n), Rational(0)}; }  // 1 / n

// e_n(aS + bT, cS + dT) = zeta_n^{ad - bc} with S = tau/n, T = 1/n.
CyclotomicNumber weil_pairing(long n, const TorsionPoint& P, const TorsionPoint& Q);

struct LevelStructure {
    TorsionPoint S, T;
    friend bool operator==(const LevelStructure&, const LevelStructure&) = default;
    friend auto operator<=>(const LevelStructure&, const LevelStructure&) = default;
};

// (S, T) -> (aS + bT, cS + dT)
LevelStructure act(const Mat2& g, const LevelStructure& x);

struct StructureEnumeration {
    std::vector<LevelStructure> structures;  // sorted
    std::vector<int> class_of;               // class index per structure
    int class_count = 0;
    int candidates = 0;                      // halvings examined (16)
};

// Gamma(2N)-structures (S', T') with 2S' = S, 2T' = T and e_2N(S', T') = zeta_2N, classed
// under (S', T') ~ ((1+N)S', (1+N)T').
StructureEnumeration enum_structures_above(int N);

// Class index of a structure in the enumeration, or -1.
int structure_class(const StructureEnumeration& e, const LevelStructure& x);

enum class SubgroupFamily { Gamma, GammaN2N };

struct SubgroupSpec {
    SubgroupFamily family = SubgroupFamily::Gamma;
    int N = 1;

    int modulus() const { return family == SubgroupFamily::Gamma ? N : 2 * N; }
    bool contains(const Mat2& g) const;
};

struct SubgroupInvariants {
    long sl2_order = 0;     // |SL2(Z/m)|
    long image_order = 0;   // image of the subgroup in SL2(Z/m)
    bool contains_minus_identity = false;
    long index_psl = 0;
    int cusps = 0;
    int genus = 0;
};

inline constexpr int kMaxModulus = 24;

// Throws std::out_of_range when the modulus exceeds kMaxModulus or N > 12, and
// std::domain_error if the image contains an elliptic class.
SubgroupInvariants subgroup_invariants(const SubgroupSpec& spec);

struct TowerReport {
    int gamma_n_image = 0;   // |Gamma(N) mod 2N|
    int kernel_image = 0;    // |Gamma^(N)(2N) mod 2N|
    int quotient_upper = 0;  // |Gamma(N) / Gamma^(N)(2N)|
    int quotient_lower = 0;  // |Gamma^(N)(2N) / Gamma(2N)|
    bool normal = false;             // both inclusions normal (the middle group is normal in SL2)
    bool elementary_abelian = false; // upper quotient is (Z/2)^2
    bool generated_upper = false;    // by (1,N;0,1) and (1,0;N,1)
    bool generated_lower = false;    // by (1+N) I
};

TowerReport group_tower(int N);
IdentityRecord group_tower_check(int N);

}  // namespace thetalab
