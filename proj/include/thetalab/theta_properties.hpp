#pragma once

#include "thetalab/report.hpp"
#include "thetalab/theta.hpp"

#include <cstdint>
#include <vector>

namespace thetalab {

// Numeric property suite for theta_k^(N): quasi-periodicity, index shifts, zeros,
// linear independence, Jacobi's four- and three-term identities, and the
// series/numeric theta-null cross-check. Residuals are |lhs - rhs| / max(1, |lhs|, |rhs|).
std::vector<IdentityRecord> theta_property_checks(const ThetaContext& ctx, int samples, uint64_t seed);

// a_k from theta_null_series (times the dropped i^N) against theta_N_eval(k, 0).
IdentityRecord theta_null_oracle_check(const ThetaContext& ctx, int order);

}  // namespace thetalab
