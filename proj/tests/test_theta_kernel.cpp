#include <doctest.h>

#include "thetalab/theta.hpp"
#include "thetalab/theta_properties.hpp"

#include <cmath>
#include <numbers>

using namespace thetalab;

namespace {

const cplx I(0, 1);

// Plain lattice sum over |n| <= R, no centring and no phase reduction.
cplx naive_theta(double p, double q, cplx z, cplx tau, int R = 60) {
    cplx s = 0;
    for (int n = -R; n <= R; ++n) {
        double m = n + p;
        s += std::exp(2.0 * std::numbers::pi * I * (0.5 * m * m * tau + m * (z + q)));
    }
    return s;
}

// a_k^(N) straight from the definition: sum_n e((n+p)N/2) q^{N(n+p)^2/2}, p = 1/2 - k/N,
// returned as exponent -> complex coefficient.
std::map<Rational, cplx> lattice_null(int N, int k, int R) {
    std::map<Rational, cplx> out;
    Rational p = Rational(1, 2) - Rational(k, N);
    for (int n = -R; n <= R; ++n) {
        Rational m = Rational(n) + p;
        Rational ex = Rational(N, 2) * m * m;
        Rational ph = (m * Rational(N, 2)).frac();
        out[ex] += std::exp(2.0 * std::numbers::pi * I * ph.to_double());
    }
    return out;
}

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

TEST_CASE("theta_pq basic values") {
    ThetaContext ctx(1, I, 1e-12);
    const double theta3_i = 1.0864348112133080146;  // pi^{1/4} / Gamma(3/4)
    CHECK(std::abs(theta_pq_eval({Rational(0), Rational(0)}, 0.0, ctx) - theta3_i) < 1e-12);
    CHECK(std::abs(jacobi_theta_eval(3, 0.0, ctx) - theta3_i) < 1e-12);
    CHECK(std::abs(jacobi_theta_eval(1, 0.0, ctx)) < 1e-12);
    CHECK_THROWS(ThetaContext(4, cplx(0.3, -1.0)));
    CHECK_THROWS(jacobi_theta_eval(4, 0.0, ctx));
}

TEST_CASE("theta_pq agrees with the plain lattice sum") {
    for (cplx tau : {I, cplx(0.3, 1.1), cplx(-0.45, 0.5)}) {
        ThetaContext ctx(1, tau, 1e-12);
        for (auto [p, q] : {std::pair{0.0, 0.0}, {0.5, 0.5}, {0.25, 2.0}, {-1.0 / 3, 0.125}})
            for (cplx z : {cplx(0.1, 0.2), cplx(-0.37, -0.3), cplx(0.5, 0.05)}) {
                Characteristic ch{Rational(static_cast<long>(std::lround(p * 24)), 24),
                                  Rational(static_cast<long>(std::lround(q * 24)), 24)};
                CHECK(close(theta_pq_eval(ch, z, ctx), naive_theta(ch.p.to_double(), ch.q.to_double(), z, tau), 1e-11));
            }
    }
}

TEST_CASE("theta_pq characteristic shift in q gives e(p)") {
    ThetaContext ctx(1, cplx(0.2, 0.9), 1e-12);
    Characteristic a{Rational(1, 3), Rational(1, 5)}, b{Rational(1, 3), Rational(6, 5)};
    cplx z(0.11, -0.2);
    cplx r = theta_pq_eval(b, z, ctx) / theta_pq_eval(a, z, ctx);
    CHECK(std::abs(r - e(1.0 / 3)) < 1e-11);
}

TEST_CASE("theta_N examples") {
    ThetaContext ctx(5, I);
    CHECK(std::abs(theta_N_eval(Rational(0), 0.0, ctx)) < 1e-10);
    for (int N = 2; N <= 8; ++N) {
        ThetaContext c(N, cplx(0.3, 1.1));
        cplx z(0.07, 0.31);
        for (int k = 0; k < N; ++k) {
            CHECK(close(theta_N_eval(Rational(k), z, c), theta_N_eval(Rational(k + N), z, c), 2e-10));
            cplx direct = naive_theta(0.5 - double(k) / N, N / 2.0, double(N) * z, double(N) * c.tau());
            CHECK(close(theta_N_eval(Rational(k), z, c), direct, 1e-10));
        }
    }
}

TEST_CASE("n_radius follows the Gaussian tail rule") {
    ThetaContext ctx(4, I, 1e-10);
    int expect = static_cast<int>(std::ceil(std::sqrt(std::log(1e10) / (std::numbers::pi * 4.0)))) + 6;
    CHECK(ctx.n_radius() == expect);
    CHECK(ctx.n_radius() <= 40);
}

TEST_CASE("theta_null_series against the lattice-sum oracle") {
    const int order = 30;
    for (int N = 2; N <= 9; ++N)
        for (int k = 0; k < N; ++k) {
            QSeries s = theta_null_series(N, k, order);
            CHECK(s.ram() == 8 * N);
            auto oracle = lattice_null(N, k, 40);
            cplx norm = theta_null_normalization(N);
            for (const auto& [ex, c] : oracle) {
                if (ex >= Rational(order)) continue;
                cplx mine = norm * to_complex(s.coeff(ex));
                CHECK(std::abs(mine - c) < 1e-12);
            }
            for (const auto& [kk, c] : s.terms()) CHECK(oracle.count(Rational(kk, s.ram())) == 1);
        }
    QSeries a0 = theta_null_series(4, 0, 30), a2 = theta_null_series(4, 2, 30);
    CHECK(a0.leading_terms(3)[0].first == Rational(1, 2));
    CHECK(a0.coeff(Rational(9, 2)) == Rational(2));
    CHECK(a0.coeff(Rational(25, 2)) == Rational(2));
    CHECK(a2.coeff(Rational(0)) == Rational(1));
    CHECK(a2.coeff(Rational(2)) == Rational(2));
    CHECK(a2.coeff(Rational(8)) == Rational(2));
    CHECK(a2.coeff(Rational(1)) == Rational(0));
    for (int N : {4, 6, 8})
        for (int k = 0; k < N; ++k) CHECK(theta_null_series(N, k, 20) == theta_null_series(N, N - k, 20));
}

TEST_CASE("theta_half values") {
    ThetaContext ctx(4, I);
    for (int k = 0; k < 4; ++k) {
        cplx s = theta_half_eval(4, k, ctx);
        CHECK(close(s, theta_N_eval(Rational(k), 1.0 / 8, ctx), 1e-12));
        cplx shifted = theta_N_eval(Rational(k), 1.0 / 8 + 0.25, ctx);
        CHECK(close(shifted, -e(-double(k) / 4) * s, 2e-10));
    }
    // parity plus the 1/N shift: s_k = -e(-k/N) s_{N-k}
    for (int k = 0; k < 4; ++k)
        CHECK(close(theta_half_eval(4, k, ctx), -e(-double(k) / 4) * theta_half_eval(4, (4 - k) % 4, ctx), 2e-10));
    CHECK_THROWS(theta_half_eval(5, 0, ThetaContext(5, I)));
}

TEST_CASE("Jacobi theta relations") {
    ThetaContext ctx(1, cplx(0.3, 1.1));
    for (cplx z : {cplx(0.2, 0.1), cplx(-0.31, 0.4)}) {
        CHECK(close(jacobi_theta_eval(1, -z, ctx), -jacobi_theta_eval(1, z, ctx), 2e-10));
        CHECK(close(jacobi_theta_eval(2, z + 0.5, ctx), jacobi_theta_eval(1, z, ctx), 2e-10));
        CHECK(close(jacobi_theta_eval(3, z + 0.5, ctx), jacobi_theta_eval(0, z, ctx), 2e-10));
    }
}

TEST_CASE("transform check") {
    ThetaContext ctx(4, I);
    TransformResult t = transform_check(4, 1, cplx(0.1, 0.2), ctx);
    CHECK(t.pass);
    CHECK(t.spread_r < 1e-9);
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(std::abs(t.r_prime[k]) - 1.0) < 1e-9);
        CHECK(std::abs(t.r_prime[k] - t.r_prime[(4 - k) % 4]) < 1e-9);
    }
    for (int N = 4; N <= 8; ++N)
        for (cplx tau : {I, cplx(0.3, 1.1)}) CHECK(transform_check(N, 0, cplx(-0.21, 0.17), ThetaContext(N, tau)).pass);
}

TEST_CASE("theta property suite") {
    for (int N = 4; N <= 8; ++N)
        for (cplx tau : {I, cplx(0.3, 1.1)}) {
            ThetaContext ctx(N, tau, 1e-9);
            for (const auto& r : theta_property_checks(ctx, 10, 42)) {
                INFO("N=" << N << " " << r.name << " residual " << r.residual << " " << r.detail);
                CHECK(r.pass);
            }
            IdentityRecord o = theta_null_oracle_check(ctx, 40);
            INFO("oracle residual " << o.residual);
            CHECK(o.pass);
        }
}
