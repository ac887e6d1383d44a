#pragma once

#include "thetalab/puiseux.hpp"
#include "thetalab/rational.hpp"

#include <complex>
#include <vector>

namespace thetalab {

using cplx = std::complex<double>;

// e(x) = exp(2 pi i x)
cplx e(cplx x);

struct Characteristic {
    Rational p;
    Rational q;
};

// N, tau and the absolute error target for every numeric theta evaluation.
class ThetaContext {
public:
    ThetaContext(int N, cplx tau, double tol = 1e-10);

    int N() const { return N_; }
    cplx tau() const { return tau_; }
    double tol() const { return tol_; }
    // Summation radius for theta_k^(N) at z = 0 (tau_eff = N tau).
    int n_radius() const { return radius(N_ * tau_.imag(), tol_, 0.0); }

    ThetaContext with_tau(cplx tau) const { return ThetaContext(N_, tau, tol_); }

    // Terms farther than this from the peak of the Gaussian are below tol in total.
    // log_peak is the log-modulus of the largest term.
    static int radius(double im_tau_eff, double tol, double log_peak);

private:
    int N_;
    cplx tau_;
    double tol_;
};

cplx theta_pq_eval(const Characteristic& ch, cplx z, cplx tau, double tol);
cplx theta_pq_eval(const Characteristic& ch, cplx z, const ThetaContext& ctx);

// theta_k^(N)(z, tau) = theta_{(1/2 - k/N, N/2)}(N z, N tau); k integer or half-integer.
cplx theta_N_eval(const Rational& k, cplx z, const ThetaContext& ctx);
// (theta_0(z) , ..., theta_{N-1}(z))
std::vector<cplx> theta_N_vector(cplx z, const ThetaContext& ctx);

// Jacobi's theta_0..theta_3 with characteristics (0,1/2), (1/2,1/2), (1/2,0), (0,0).
cplx jacobi_theta_eval(int i, cplx z, const ThetaContext& ctx);

// s_k = theta_k^(N)(1/(2N), tau), N even.
cplx theta_half_eval(int N, int k, const ThetaContext& ctx);

// a_k^(N) as an exact series in q, known modulo q^order. For odd N the factor i^N is dropped.
QSeries theta_null_series(int N, int k, int order);
std::vector<QSeries> theta_null_series_all(int N, int order);
// The factor dropped by theta_null_series: 1 for even N, i^N for odd N.
cplx theta_null_normalization(int N);

struct TransformResult {
    std::vector<cplx> r;        // theta_k(z/tau, -1/tau) / (e(z/2) sqrt(tau/N) sum_j zeta^{-jk} theta_j(z, tau))
    std::vector<cplx> r_prime;  // theta_k(z, tau+1) / (e(-k(N-k)/2N) theta_k(z, tau))
    cplx ratio_k;
    double spread_r = 0;        // max_k |r_k - r_0| / |r_0|
    double spread_r_prime = 0;
    bool pass = false;
};

TransformResult transform_check(int N, int k, cplx z, const ThetaContext& ctx, double tol = 1e-8);

}  // namespace thetalab
