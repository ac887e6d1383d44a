#pragma once

#include "thetalab/matrix.hpp"
#include "thetalab/report.hpp"
#include "thetalab/theta.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace thetalab {

// Residual of b against the best multiple of a, relative to the size of b:
// a is scaled to agree with b at b's max-modulus coordinate.
double projective_residual(const std::vector<cplx>& a, const std::vector<cplx>& b);
double projective_residual(const NMatrix& a, const NMatrix& b);

bool same_class(const CMatrix& a, const CMatrix& b);
bool same_class(const std::vector<CyclotomicNumber>& a, const std::vector<CyclotomicNumber>& b);

// Point of P^{n-1} over exact or complex scalars.
template <class S>
class ProjectivePoint {
public:
    explicit ProjectivePoint(std::vector<S> coords, double rtol = 1e-9);
    const std::vector<S>& coords() const { return x_; }
    // Divides by the first nonzero (exact) or the max-modulus (numeric) coordinate.
    ProjectivePoint canonical() const;
    bool operator==(const ProjectivePoint& o) const;

private:
    std::vector<S> x_;
    double rtol_;
};

// Matrix up to a nonzero scalar.
template <class S>
class ProjectiveMatrix {
public:
    explicit ProjectiveMatrix(Matrix<S> m, double rtol = 1e-9) : m_(std::move(m)), rtol_(rtol) {}
    const Matrix<S>& rep() const { return m_; }
    std::size_t size() const { return m_.rows(); }

    ProjectiveMatrix operator*(const ProjectiveMatrix& o) const { return ProjectiveMatrix(m_ * o.m_, rtol_); }
    ProjectivePoint<S> operator*(const ProjectivePoint<S>& p) const { return ProjectivePoint<S>(m_ * p.coords()); }
    ProjectiveMatrix inverse() const { return ProjectiveMatrix(m_.inverse(), rtol_); }
    ProjectiveMatrix pow(long e) const { return ProjectiveMatrix(m_.pow(e), rtol_); }
    bool is_identity() const { return *this == ProjectiveMatrix(Matrix<S>::identity(size()), rtol_); }
    bool operator==(const ProjectiveMatrix& o) const;

private:
    Matrix<S> m_;
    double rtol_;
};

using CProjMatrix = ProjectiveMatrix<CyclotomicNumber>;
using NProjMatrix = ProjectiveMatrix<cplx>;

template <class S>
struct CanonicalMatrices {
    Matrix<S> M_S;    // (M_S X)_i = X_{i-1}: translation by tau/N
    Matrix<S> M_T;    // diag(zeta^k)
    Matrix<S> M_inv;  // X_k -> X_{-k}
};

template <class S>
struct RepGenerators {
    Matrix<S> A0;  // [zeta^{ij}]
    Matrix<S> B0;  // diag(zeta2N^{i(N-i)})
};

CanonicalMatrices<CyclotomicNumber> build_canonical_matrices(int N, const CyclotomicNumber& zeta);
CanonicalMatrices<cplx> build_canonical_matrices(int N, cplx zeta);
RepGenerators<CyclotomicNumber> build_rep_generators(int N, const CyclotomicNumber& zeta2N);
RepGenerators<cplx> build_rep_generators(int N, cplx zeta2N);

// Exact check of (A0B0)^3 = A0^2, A0^4 = I and the kernel word, over Q(zeta_2N).
std::vector<IdentityRecord> verify_presentation(int N);
// A0 and B0 conjugation relations on M_S, M_T, M_inv, plus the projective order of B0.
std::vector<IdentityRecord> verify_conjugation_tables(int N);

// rho-bar in the summed coordinates Xbar_0 = X_0, Xbar_j = X_j + X_{N-j}, Xbar_{N/2} = X_{N/2}.
struct RhoBar {
    CMatrix Abar;
    CMatrix Bbar;
};
RhoBar build_rho_bar(int N);
// The same operators in theta-null coordinates (a_0 : ... : a_{N/2}).
RhoBar rho_bar_null_coordinates(int N);
// Matrix of an H-preserving N x N matrix on the fixed space H, in summed coordinates.
CMatrix restrict_to_fixed_space(const CMatrix& m);
std::vector<IdentityRecord> verify_rho_bar(int N);

ProjectivePoint<cplx> immersion_point(cplx z, const ThetaContext& ctx);

struct TranslationReport {
    double max_residual_T = 0;  // Theta(z + 1/N) vs M_T^{-1} Theta(z)
    double max_residual_S = 0;  // Theta(z + tau/N) vs M_S Theta(z)
    bool pass = false;
};
TranslationReport translation_check(const ThetaContext& ctx, int samples, uint64_t seed, double tol = 1e-8);

// Which of the candidates G^{+-1} * {I, M_S^{N/2}, M_T^{N/2}, M_S^{N/2} M_T^{N/2}} the theta
// transformation realises, for G = A0 (tau -> -1/tau) and G = B0 (tau -> tau + 1).
struct RhoThetaMatch {
    std::string a_candidate;
    double a_residual = 0;
    std::string b_candidate;
    double b_residual = 0;
};
RhoThetaMatch rho_theta_match(const ThetaContext& ctx, int samples, uint64_t seed);

}  // namespace thetalab
