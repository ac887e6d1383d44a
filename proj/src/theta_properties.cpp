#include "thetalab/theta_properties.hpp"

#include "thetalab/sampling.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace thetalab {

namespace {

double rel(cplx a, cplx b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

IdentityRecord numeric(int N, std::string name, double residual, double tol, std::string detail = {}) {
    IdentityRecord r;
    r.name = std::move(name);
    r.level = N;
    r.kind = RecordKind::NumericVanishing;
    r.tolerance = tol;
    r.residual = residual;
    r.pass = residual < tol;
    r.detail = std::move(detail);
    return r;
}

}  // namespace

std::vector<IdentityRecord> theta_property_checks(const ThetaContext& ctx, int samples, uint64_t seed) {
    const int N = ctx.N();
    const double tol = ctx.tol();
    const cplx tau = ctx.tau();
    const std::vector<cplx> zs = sample_points(tau, samples, seed);
    auto th = [&](const Rational& k, cplx z) { return theta_N_eval(k, z, ctx); };
    const double sgnN = N % 2 ? -1.0 : 1.0;

    // Each law is a function (k, z) -> residual, maximised over k in 0..N-1 and the samples.
    auto sweep = [&](const std::function<double(int, cplx)>& law) {
        double worst = 0;
        for (cplx z : zs)
            for (int k = 0; k < N; ++k) worst = std::max(worst, law(k, z));
        return worst;
    };

    std::vector<IdentityRecord> out;
    out.push_back(numeric(N, "theta_k(z+1) = (-1)^{N+2k} theta_k(z)", sweep([&](int k, cplx z) {
        return rel(th(Rational(k), z + 1.0), sgnN * th(Rational(k), z));
    }), 2 * tol));
    out.push_back(numeric(N, "theta_k(z+tau) = (-1)^N e(-N tau/2 - N z) theta_k(z)", sweep([&](int k, cplx z) {
        return rel(th(Rational(k), z + tau), sgnN * e(-double(N) * tau / 2.0 - double(N) * z) * th(Rational(k), z));
    }), 2 * tol));
    out.push_back(numeric(N, "theta_k(z+1/N) = -e(-k/N) theta_k(z)", sweep([&](int k, cplx z) {
        return rel(th(Rational(k), z + 1.0 / N), -e(-double(k) / N) * th(Rational(k), z));
    }), 2 * tol));
    out.push_back(numeric(N, "theta_k(z+tau/N) = -e(-tau/2N - z) theta_{k-1}(z)", sweep([&](int k, cplx z) {
        return rel(th(Rational(k), z + tau / double(N)), -e(-tau / (2.0 * N) - z) * th(Rational(k - 1), z));
    }), 2 * tol));
    out.push_back(numeric(N, "theta_k(z+tau/2N) = e(-tau/8N - z/2 - 1/4) theta_{k-1/2}(z)", sweep([&](int k, cplx z) {
        return rel(th(Rational(k), z + tau / (2.0 * N)),
                   e(-tau / (8.0 * N) - z / 2.0 - 0.25) * th(Rational(k) - Rational(1, 2), z));
    }), 2 * tol));
    out.push_back(numeric(N, "theta_k(-z) = (-1)^{N+2k} theta_{-k}(z)", sweep([&](int k, cplx z) {
        return rel(th(Rational(k), -z), sgnN * th(Rational(-k), z));
    }), 2 * tol));
    out.push_back(numeric(N, "theta_k periodic in k mod N", sweep([&](int k, cplx z) {
        return rel(th(Rational(k), z), th(Rational(k + N), z));
    }), 2 * tol));

    {
        // zeros c + m/N + (k/N) tau + n tau, c = 1/2N for even N
        const double c = N % 2 ? 0.0 : 1.0 / (2.0 * N);
        const std::array<std::pair<int, int>, 5> mn = {{{0, 0}, {1, 0}, {0, 1}, {2, -1}, {N - 1, 1}}};
        double worst_zero = 0, weakest_nonzero = 1e300;
        for (int k = 0; k < N; ++k)
            for (auto [m, n] : mn) {
                const cplx z0 = c + double(m) / N + (double(k) / N + n) * tau;
                auto scale_at = [&](cplx z) {
                    double s = 0;
                    for (int j = 0; j < N; ++j) s = std::max(s, std::abs(th(Rational(j), z)));
                    return s;
                };
                worst_zero = std::max(worst_zero, std::abs(th(Rational(k), z0)) / scale_at(z0));
                // away from the zero theta_k is comparable to its size on a small circle around it
                const double r = 1.0 / (4.0 * N);
                double ring = 0;
                for (int t = 0; t < 8; ++t) ring = std::max(ring, std::abs(th(Rational(k), z0 + std::polar(r, t * std::numbers::pi / 4))));
                const cplx zp = z0 + cplx(0.8, 0.6) * (r / 2);
                weakest_nonzero = std::min(weakest_nonzero, std::abs(th(Rational(k), zp)) / ring);
            }
        std::ostringstream d;
        d << "5 zeros per k; smallest relative value at perturbed points " << weakest_nonzero;
        IdentityRecord r = numeric(N, "zeros of theta_k at the lattice points", worst_zero, tol, d.str());
        r.pass = r.pass && weakest_nonzero > 1e-2;
        out.push_back(r);
    }

    {
        const std::vector<cplx> pts = sample_points(tau, N, seed + 101);
        Eigen::MatrixXcd m(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) m(i, j) = th(Rational(j), pts[i]);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        const auto& s = svd.singularValues();
        int rank = 0;
        for (int i = 0; i < s.size(); ++i)
            if (s(i) > 1e-8 * s(0)) ++rank;
        IdentityRecord r;
        r.name = "theta_0..theta_{N-1} linearly independent";
        r.level = N;
        r.kind = RecordKind::Count;
        r.pass = rank == N;
        r.detail = "numeric rank " + std::to_string(rank) + " of " + std::to_string(N);
        out.push_back(r);
    }

    {
        // Jacobi four-term and three-term identities at random (w, x, y, z)
        const std::vector<cplx> a = sample_points(tau, samples, seed + 1), b = sample_points(tau, samples, seed + 2),
                                cc = sample_points(tau, samples, seed + 3), d = sample_points(tau, samples, seed + 4);
        auto J = [&](int i, cplx z) { return jacobi_theta_eval(i, z, ctx); };
        auto prime = [](cplx w, cplx x, cplx y, cplx z) {
            return std::array<cplx, 4>{(w + x + y + z) / 2.0, (w + x - y - z) / 2.0, (w - x + y - z) / 2.0,
                                       (w - x - y + z) / 2.0};
        };
        double four = 0, three = 0;
        for (int i = 0; i < samples; ++i) {
            const cplx w = a[i], x = b[i], y = cc[i], z = d[i];
            auto p = prime(w, x, y, z);
            auto pp = prime(w, x, y, -z);
            auto prod = [&](int t, const std::array<cplx, 4>& v) { return J(t, v[0]) * J(t, v[1]) * J(t, v[2]) * J(t, v[3]); };
            const std::array<cplx, 4> o{w, x, y, z};
            cplx lhs = prod(3, o) + prod(2, o), rhs = prod(3, p) + prod(2, p);
            four = std::max(four, rel(lhs, rhs));
            cplx t1 = prod(1, o), t2 = prod(0, p), t3 = prod(0, pp);
            three = std::max(three, std::abs(t1 + t2 - t3) / std::max({1.0, std::abs(t1), std::abs(t2), std::abs(t3)}));
        }
        out.push_back(numeric(N, "Jacobi four-term identity", four, 4 * tol));
        out.push_back(numeric(N, "three-term identity", three, 4 * tol));
    }
    return out;
}

IdentityRecord theta_null_oracle_check(const ThetaContext& ctx, int order) {
    const int N = ctx.N();
    const cplx norm = theta_null_normalization(N);
    double worst = 0;
    for (int k = 0; k < N; ++k) {
        const cplx series = norm * theta_null_series(N, k, order).evaluate(ctx.tau());
        worst = std::max(worst, rel(series, theta_N_eval(Rational(k), 0.0, ctx)));
    }
    IdentityRecord r = numeric(N, "theta_null_series at q = e(tau) equals theta_k(0, tau)", worst, ctx.tol());
    r.order = order;
    return r;
}

}  // namespace thetalab
