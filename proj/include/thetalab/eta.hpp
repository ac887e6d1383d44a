#pragma once

#include "thetalab/puiseux.hpp"

#include <utility>
#include <vector>

namespace thetalab {

// eta(tau) = q^{1/24} sum_n (-1)^n q^{n(3n-1)/2}, known modulo q^order, ramification 24.
QSeries eta_series(int order);

// prod_m eta(m tau)^{e_m}, known at least modulo q^order.
QSeries eta_quotient(const std::vector<std::pair<int, int>>& factors, int order);

}  // namespace thetalab
