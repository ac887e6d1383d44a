#pragma once

#include "thetalab/cyclotomic.hpp"
#include "thetalab/puiseux.hpp"
#include "thetalab/report.hpp"
#include "thetalab/theta.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace thetalab {

// lhs - rhs must vanish to its truncation, and the comparison must reach past
// the leading exponent of both sides (a vacuous window fails).
IdentityRecord series_identity(std::string name, int level, int order, const QSeries& lhs, const QSeries& rhs);

// First nonzero terms of s must be exactly the listed (exponent, coefficient) pairs.
IdentityRecord leading_terms_check(std::string name, int level, int order, const QSeries& s,
                                   const std::vector<std::pair<Rational, long>>& expected);

// Polynomial relations among exact theta nulls, N in {4, 6, 7, 8}. N = 6 also
// checks the four lines of the reducible curve over Q(zeta_3).
std::vector<IdentityRecord> theta_null_curve_check(int N, int order);

// Eta-quotient and theta-ratio expressions for lambda, X, Y, b1, b4, phi, 3mu.
std::vector<IdentityRecord> eta_quotient_check(int order);

// Quotient-map relations of the level 6 and level 8 models.
std::vector<IdentityRecord> quotient_model_check(int N, int order);

// Bianchi normal form at N = 5: base form is X0^2 + phi X2X3 - X1X4/phi up to scale.
IdentityRecord bianchi_check(int order);

// 3mu expansion and the cubic X0^3 + X2^3 + X4^3 = 3mu X0X2X4 on theta^(6).
std::vector<IdentityRecord> hesse_check(int order, const ThetaContext& ctx, int samples, uint64_t seed = 0);

// Weierstrass model of the level-4 universal curve through the coordinate change.
IdentityRecord weierstrass_check_level4(const ThetaContext& ctx, int samples, uint64_t seed = 0);

using FiberPoint = std::array<CyclotomicNumber, 3>;  // (a0 : a1 : a2) over Q(zeta_8)
std::vector<FiberPoint> degenerate_points_printed();
std::vector<FiberPoint> degenerate_points_corrected();
// Each point lies on a0a2(a0^2+a2^2) = 2a1^4 and the Weierstrass cubic has a repeated root there.
IdentityRecord degenerate_fibers_level4(const std::vector<FiberPoint>& points = degenerate_points_printed());

// PSL2(Z/4) action on (lambda, X', Y'), sampled numerically.
std::vector<IdentityRecord> level4_action_check(const ThetaContext& ctx, int samples, uint64_t seed = 0);

// Action of S and T on the level-6 model Y^2 = X^3 + 1, at ctx.tau().
std::vector<IdentityRecord> level6_action_check(const ThetaContext& ctx);

// (a_0 : ... : a_{N/2}) under tau -> tau + N (sign twist) and tau -> tau/(N tau + 1) (reversal).
std::vector<IdentityRecord> theta_null_invariance_check(const ThetaContext& ctx, double tol = 1e-8);

}  // namespace thetalab
