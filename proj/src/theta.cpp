#include "thetalab/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace thetalab {

namespace {
constexpr double kPi = std::numbers::pi;
}

cplx e(cplx x) {
    return std::exp(cplx(0.0, 2.0 * kPi) * x);
}

ThetaContext::ThetaContext(int N, cplx tau, double tol) : N_(N), tau_(tau), tol_(tol) {
    if (N < 1) throw std::invalid_argument("ThetaContext: N must be positive");
    if (!(tau.imag() > 0)) throw std::domain_error("ThetaContext: Im tau must be positive");
    if (!(tol > 0)) throw std::invalid_argument("ThetaContext: tol must be positive");
}

int ThetaContext::radius(double im_tau_eff, double tol, double log_peak) {
    double budget = std::max(0.0, std::log(1.0 / tol) + std::max(0.0, log_peak));
    return static_cast<int>(std::ceil(std::sqrt(budget / (kPi * im_tau_eff)))) + 6;
}

cplx theta_pq_eval(const Characteristic& ch, cplx z, cplx tau, double tol) {
    if (!(tau.imag() > 0)) throw std::domain_error("theta: Im tau must be positive");
    const double p = ch.p.to_double();
    const double q = ch.q.to_double();
    const double y = tau.imag();
    // |term(m)| = exp(-pi y m^2 - 2 pi m Im z) peaks at m = -Im z / y
    const double log_peak = kPi * z.imag() * z.imag() / y;
    const int R = ThetaContext::radius(y, tol, log_peak);
    const long n0 = std::lround(-p - z.imag() / y);
    cplx s = 0;
    for (long n = n0 - R; n <= n0 + R; ++n) {
        const double m = static_cast<double>(n) + p;
        double phase = 0.5 * m * m * tau.real() + m * (z.real() + q);
        phase -= std::floor(phase);
        const double logmag = -2.0 * kPi * (0.5 * m * m * y + m * z.imag());
        s += std::polar(std::exp(logmag), 2.0 * kPi * phase);
    }
    return s;
}

cplx theta_pq_eval(const Characteristic& ch, cplx z, const ThetaContext& ctx) {
    return theta_pq_eval(ch, z, ctx.tau(), ctx.tol());
}

cplx theta_N_eval(const Rational& k, cplx z, const ThetaContext& ctx) {
    const int N = ctx.N();
    Characteristic ch{Rational(1, 2) - k / Rational(N), Rational(N, 2)};
    return theta_pq_eval(ch, static_cast<double>(N) * z, static_cast<double>(N) * ctx.tau(), ctx.tol());
}

std::vector<cplx> theta_N_vector(cplx z, const ThetaContext& ctx) {
    std::vector<cplx> v(ctx.N());
    for (int k = 0; k < ctx.N(); ++k) v[k] = theta_N_eval(Rational(k), z, ctx);
    return v;
}

cplx jacobi_theta_eval(int i, cplx z, const ThetaContext& ctx) {
    static const Characteristic chars[4] = {
        {Rational(0), Rational(1, 2)},
        {Rational(1, 2), Rational(1, 2)},
        {Rational(1, 2), Rational(0)},
        {Rational(0), Rational(0)},
    };
    if (i < 0 || i > 3) throw std::out_of_range("jacobi theta index must be 0..3");
    return theta_pq_eval(chars[i], z, ctx);
}

cplx theta_half_eval(int N, int k, const ThetaContext& ctx) {
    if (N % 2 != 0) throw std::invalid_argument("theta_half_eval: N must be even");
    if (N != ctx.N()) throw std::invalid_argument("theta_half_eval: context level differs");
    return theta_N_eval(Rational(k), cplx(1.0 / (2.0 * N), 0.0), ctx);
}

QSeries theta_null_series(int N, int k, int order) {
    if (N < 2) throw std::invalid_argument("theta_null_series: N must be >= 2");
    if (order < 1) throw std::invalid_argument("theta_null_series: order must be >= 1");
    k = ((k % N) + N) % N;
    const int64_t ram = 8LL * N;
    const int64_t trunc = ram * order;
    QSeries::Terms t;
    // exponent numerators (2Nn + N - 2k)^2 at ramification 8N
    const long centre = -static_cast<long>(std::lround(static_cast<double>(N - 2 * k) / (2.0 * N)));
    for (long step = 0;; ++step) {
        bool any = false;
        for (long n : {centre + step, centre - step - 1}) {
            int64_t b = 2LL * N * n + N - 2 * k;
            int64_t num = b * b;
            if (num >= trunc) continue;
            any = true;
            long sign;
            if (N % 2 == 0) sign = ((N / 2 - k) % 2 == 0) ? 1 : -1;
            else sign = (((n + k) % 2) + 2) % 2 == 0 ? 1 : -1;
            auto [it, fresh] = t.emplace(num, Rational(sign));
            if (!fresh) it->second += Rational(sign);
        }
        if (!any) break;
    }
    return QSeries(ram, std::move(t), trunc);
}

std::vector<QSeries> theta_null_series_all(int N, int order) {
    std::vector<QSeries> v;
    for (int k = 0; k < N; ++k) v.push_back(theta_null_series(N, k, order));
    return v;
}

cplx theta_null_normalization(int N) {
    static const cplx pw[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
    return N % 2 == 0 ? cplx(1.0) : pw[N % 4];
}

TransformResult transform_check(int N, int k, cplx z, const ThetaContext& ctx0, double tol) {
    ThetaContext ctx(N, ctx0.tau(), ctx0.tol());
    const cplx tau = ctx.tau();
    ThetaContext inv_ctx = ctx.with_tau(-1.0 / tau);
    ThetaContext t1_ctx = ctx.with_tau(tau + 1.0);
    const std::vector<cplx> th = theta_N_vector(z, ctx);
    const cplx pref = e(z / 2.0) * std::sqrt(tau / static_cast<double>(N));
    TransformResult res;
    for (int kk = 0; kk < N; ++kk) {
        cplx sum = 0;
        for (int j = 0; j < N; ++j) sum += e(-static_cast<double>(j * kk) / N) * th[j];
        res.r.push_back(theta_N_eval(Rational(kk), z / tau, inv_ctx) / (pref * sum));
        cplx c = e(-static_cast<double>(kk * (N - kk)) / (2.0 * N));
        res.r_prime.push_back(theta_N_eval(Rational(kk), z, t1_ctx) / (c * th[kk]));
    }
    for (int kk = 0; kk < N; ++kk) {
        res.spread_r = std::max(res.spread_r, std::abs(res.r[kk] - res.r[0]) / std::abs(res.r[0]));
        res.spread_r_prime =
            std::max(res.spread_r_prime, std::abs(res.r_prime[kk] - res.r_prime[0]) / std::abs(res.r_prime[0]));
    }
    res.ratio_k = res.r.at(((k % N) + N) % N);
    res.pass = res.spread_r < tol && res.spread_r_prime < tol;
    return res;
}

}  // namespace thetalab
