#include "thetalab/eta.hpp"

#include <cmath>
#include <stdexcept>

namespace thetalab {

QSeries eta_series(int order) {
    if (order < 1) throw std::invalid_argument("eta_series: order must be >= 1");
    const int64_t trunc = 24LL * order;
    QSeries::Terms t;
    // exponent numerators are (6n-1)^2 at ramification 24
    for (int64_t n = 0;; ++n) {
        bool any = false;
        for (int64_t m : {n, -n - 1}) {
            int64_t k = (6 * m - 1) * (6 * m - 1);
            if (k >= trunc) continue;
            any = true;
            t.emplace(k, Rational((m % 2 == 0) ? 1 : -1));
        }
        if (!any) break;
    }
    return QSeries(24, std::move(t), trunc);
}

QSeries eta_quotient(const std::vector<std::pair<int, int>>& factors, int order) {
    Rational val(0);
    for (auto [m, e] : factors) {
        if (m <= 0) throw std::invalid_argument("eta_quotient: scale must be positive");
        val += Rational(static_cast<long>(m) * e, 24);
    }
    QSeries r(Rational(1));
    for (auto [m, e] : factors) {
        if (e == 0) continue;
        // relative precision needed: order - val (in q-units), plus a guard of one
        Rational need = Rational(order) - val + Rational(1);
        if (need < Rational(1)) need = Rational(1);
        Rational o = need / Rational(m) + Rational(1, 24);
        int inner = static_cast<int>(o.floor().get_si()) + 1;
        QSeries f = eta_series(inner).rescale(m, 1);
        r *= f.pow(e);
    }
    return r.truncated(Rational(order)).normalized();
}

}  // namespace thetalab
