#include "thetalab/projective.hpp"

#include "thetalab/sampling.hpp"
#include "thetalab/sl2.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace thetalab {

NMatrix to_numeric(const CMatrix& m) {
    NMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex();
    return out;
}

double projective_residual(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("projective_residual: size mismatch");
    cplx ab = 0;
    double aa = 0, bmax = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += std::conj(a[i]) * b[i];
        aa += std::norm(a[i]);
        bmax = std::max(bmax, std::abs(b[i]));
    }
    if (aa == 0 || bmax == 0) return std::numeric_limits<double>::infinity();
    const cplx lambda = ab / aa;
    double r = 0;
    for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(b[i] - lambda * a[i]));
    return r / bmax;
}

double projective_residual(const NMatrix& a, const NMatrix& b) {
    return projective_residual(a.data(), b.data());
}

bool same_class(const std::vector<CyclotomicNumber>& a, const std::vector<CyclotomicNumber>& b) {
    if (a.size() != b.size()) return false;
    std::size_t i = 0;
    while (i < a.size() && a[i].is_zero()) ++i;
    if (i == a.size()) return false;  // zero is not a projective class
    if (b[i].is_zero()) return false;
    const CyclotomicNumber lambda = b[i] / a[i];
    for (std::size_t j = 0; j < a.size(); ++j)
        if (!(b[j] == lambda * a[j])) return false;
    return true;
}

bool same_class(const CMatrix& a, const CMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && same_class(a.data(), b.data());
}

template <class S>
ProjectivePoint<S>::ProjectivePoint(std::vector<S> coords, double rtol) : x_(std::move(coords)), rtol_(rtol) {
    bool nonzero = false;
    for (const auto& c : x_) nonzero = nonzero || !ScalarOps<S>::is_zero(c);
    if (!nonzero) throw std::domain_error("projective point with all coordinates zero");
}

template <>
ProjectivePoint<CyclotomicNumber> ProjectivePoint<CyclotomicNumber>::canonical() const {
    std::size_t i = 0;
    while (x_[i].is_zero()) ++i;
    const CyclotomicNumber inv = x_[i].inverse();
    std::vector<CyclotomicNumber> y;
    for (const auto& c : x_) y.push_back(c * inv);
    return ProjectivePoint(std::move(y), rtol_);
}

template <>
ProjectivePoint<cplx> ProjectivePoint<cplx>::canonical() const {
    std::size_t imax = 0;
    for (std::size_t i = 1; i < x_.size(); ++i)
        if (std::abs(x_[i]) > std::abs(x_[imax])) imax = i;
    std::vector<cplx> y;
    for (const auto& c : x_) y.push_back(c / x_[imax]);
    return ProjectivePoint(std::move(y), rtol_);
}

template <>
bool ProjectivePoint<CyclotomicNumber>::operator==(const ProjectivePoint& o) const {
    return same_class(x_, o.x_);
}

template <>
bool ProjectivePoint<cplx>::operator==(const ProjectivePoint& o) const {
    return projective_residual(x_, o.x_) <= rtol_;
}

template class ProjectivePoint<CyclotomicNumber>;
template class ProjectivePoint<cplx>;

template <>
bool ProjectiveMatrix<CyclotomicNumber>::operator==(const ProjectiveMatrix& o) const {
    return same_class(m_, o.m_);
}

template <>
bool ProjectiveMatrix<cplx>::operator==(const ProjectiveMatrix& o) const {
    return projective_residual(m_, o.m_) <= rtol_;
}

namespace {

bool is_primitive_root(const CyclotomicNumber& z, int n) {
    if (!(z.pow(n) == CyclotomicNumber(1))) return false;
    for (int d = 1; d < n; ++d)
        if (n % d == 0 && z.pow(d) == CyclotomicNumber(1)) return false;
    return true;
}

bool is_primitive_root(cplx z, int n) {
    auto near_one = [](cplx w) { return std::abs(w - 1.0) < 1e-12; };
    if (!near_one(std::pow(z, n))) return false;
    for (int d = 1; d < n; ++d)
        if (n % d == 0 && near_one(std::pow(z, d))) return false;
    return true;
}

template <class S>
S power(const S& z, long k) {
    if constexpr (std::is_same_v<S, cplx>) return std::pow(z, static_cast<double>(k));
    else return z.pow(k);
}

template <class S>
CanonicalMatrices<S> canonical_impl(int N, const S& zeta) {
    if (N < 2) throw std::invalid_argument("canonical matrices need N >= 2");
    if (!is_primitive_root(zeta, N)) throw std::invalid_argument("zeta is not a primitive N-th root of unity");
    CanonicalMatrices<S> m{Matrix<S>(N, N), Matrix<S>(N, N), Matrix<S>(N, N)};
    for (int i = 0; i < N; ++i) {
        m.M_S(i, (i - 1 + N) % N) = S(1);
        m.M_T(i, i) = power(zeta, i);
        m.M_inv(i, (N - i) % N) = S(1);
    }
    return m;
}

template <class S>
RepGenerators<S> rep_impl(int N, const S& z2) {
    if (N < 2 || N % 2 != 0) throw std::invalid_argument("representation generators need even N");
    if (!is_primitive_root(z2, 2 * N)) throw std::invalid_argument("zeta2N is not a primitive 2N-th root of unity");
    const S zeta = z2 * z2;
    RepGenerators<S> g{Matrix<S>(N, N), Matrix<S>(N, N)};
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) g.A0(i, j) = power(zeta, (static_cast<long>(i) * j) % N);
        g.B0(i, i) = power(z2, (static_cast<long>(i) * (N - i)) % (2 * N));
    }
    return g;
}

IdentityRecord relation(int N, const std::string& name, bool pass, std::string detail = {}) {
    IdentityRecord r;
    r.name = name;
    r.level = N;
    r.kind = RecordKind::ExactRelation;
    r.pass = pass;
    r.detail = std::move(detail);
    return r;
}

}  // namespace

CanonicalMatrices<CyclotomicNumber> build_canonical_matrices(int N, const CyclotomicNumber& zeta) {
    return canonical_impl(N, zeta);
}
CanonicalMatrices<cplx> build_canonical_matrices(int N, cplx zeta) { return canonical_impl(N, zeta); }
RepGenerators<CyclotomicNumber> build_rep_generators(int N, const CyclotomicNumber& z2) { return rep_impl(N, z2); }
RepGenerators<cplx> build_rep_generators(int N, cplx z2) { return rep_impl(N, z2); }

std::vector<IdentityRecord> verify_presentation(int N) {
    const auto g = build_rep_generators(N, CyclotomicNumber::zeta(2 * N));
    const CProjMatrix A(g.A0), B(g.B0);
    std::vector<IdentityRecord> out;
    out.push_back(relation(N, "(A0 B0)^3 = A0^2", (A * B).pow(3) == A.pow(2)));
    out.push_back(relation(N, "A0^4 = I", A.pow(4).is_identity()));

    const SL2Word w = SL2Word::kernel_word(N);
    const Mat2 wm = w.evaluate();
    const bool in_kernel_group = wm.mod(2 * N) == Mat2{1 + N, 0, 0, 1 + N}.mod(2 * N);
    const bool word_id = CProjMatrix(w.evaluate_rep(g.A0, g.B0)).is_identity();
    out.push_back(relation(N, "kernel word = I", word_id && in_kernel_group,
                           "word " + w.str() + " = " + wm.str() + " = (1+N)I mod 2N"));

    const SL2Word wp = SL2Word::kernel_word_printed(N);
    IdentityRecord printed = relation(N, "kernel word (printed form) = I",
                                      CProjMatrix(wp.evaluate_rep(g.A0, g.B0)).is_identity(),
                                      "word " + wp.str() + " = " + wp.evaluate().str());
    printed.informational = true;
    out.push_back(printed);
    return out;
}

std::vector<IdentityRecord> verify_conjugation_tables(int N) {
    const auto g = build_rep_generators(N, CyclotomicNumber::zeta(2 * N));
    const auto c = build_canonical_matrices(N, CyclotomicNumber::zeta(2 * N, 2));
    const CProjMatrix A(g.A0), B(g.B0), S(c.M_S), T(c.M_T), V(c.M_inv);
    const CProjMatrix Ai = A.inverse(), Bi = B.inverse();
    std::vector<IdentityRecord> out;
    out.push_back(relation(N, "A0^-1 M_S A0 = M_T^-1", Ai * S * A == T.inverse()));
    out.push_back(relation(N, "A0^-1 M_T A0 = M_S", Ai * T * A == S));
    out.push_back(relation(N, "A0^-1 M_inv A0 = M_inv", Ai * V * A == V));
    out.push_back(relation(N, "B0^-1 M_T B0 = M_T", Bi * T * B == T));
    out.push_back(relation(N, "B0^-1 M_S B0 = M_T M_S", Bi * S * B == T * S));
    out.push_back(relation(N, "B0^-1 M_inv B0 = M_inv", Bi * V * B == V));
    bool order_ok = B.pow(2 * N).is_identity();
    for (int d = 1; d < 2 * N; ++d)
        if ((2 * N) % d == 0 && B.pow(d).is_identity()) order_ok = false;
    out.push_back(relation(N, "B0 has projective order 2N", order_ok));
    return out;
}

CMatrix restrict_to_fixed_space(const CMatrix& m) {
    const int N = static_cast<int>(m.rows());
    if (N % 2 != 0) throw std::invalid_argument("fixed space restriction needs even N");
    const int h = N / 2, n = h + 1;
    CMatrix E(N, n), P(n, N);
    E(0, 0) = CyclotomicNumber(1);
    E(h, h) = CyclotomicNumber(1);
    P(0, 0) = CyclotomicNumber(1);
    P(h, h) = CyclotomicNumber(1);
    for (int j = 1; j < h; ++j) {
        E(j, j) = E(N - j, j) = CyclotomicNumber(Rational(1, 2));
        P(j, j) = P(j, N - j) = CyclotomicNumber(1);
    }
    const CMatrix ME = m * E;
    for (int j = 1; j < h; ++j)
        for (int c = 0; c < n; ++c)
            if (!(ME(j, c) == ME(N - j, c))) throw std::invalid_argument("matrix does not preserve the fixed space");
    return P * ME;
}

RhoBar build_rho_bar(int N) {
    const auto g = build_rep_generators(N, CyclotomicNumber::zeta(2 * N));
    return {restrict_to_fixed_space(g.A0), restrict_to_fixed_space(g.B0)};
}

RhoBar rho_bar_null_coordinates(int N) {
    const RhoBar r = build_rho_bar(N);
    const int h = N / 2;
    std::vector<CyclotomicNumber> d(h + 1, CyclotomicNumber(2));
    d[0] = d[h] = CyclotomicNumber(1);
    const CMatrix D = CMatrix::diagonal(d);
    const CMatrix Di = D.inverse();
    return {Di * r.Abar * D, Di * r.Bbar * D};
}

std::vector<IdentityRecord> verify_rho_bar(int N) {
    const auto g = build_rep_generators(N, CyclotomicNumber::zeta(2 * N));
    const RhoBar rb = build_rho_bar(N);
    const int h = N / 2;
    std::vector<IdentityRecord> out;

    // summed-coordinate shape: first row all 1, first column 2 apart from the corners
    const CyclotomicNumber zeta = CyclotomicNumber::zeta(2 * N).pow(2);
    CMatrix shape(h + 1, h + 1);
    for (int i = 0; i <= h; ++i)
        for (int j = 0; j <= h; ++j) {
            CyclotomicNumber v = zeta.pow(static_cast<long>(i) * j % N) + zeta.pow((N - static_cast<long>(i) * j % N) % N);
            if (i == 0 || i == h) v = v * CyclotomicNumber(Rational(1, 2));
            shape(i, j) = v;
        }
    out.push_back(relation(N, "rho-bar(A) = restriction of A0 to H", same_class(rb.Abar, shape)));
    std::vector<CyclotomicNumber> bd;
    for (int j = 0; j <= h; ++j) bd.push_back(CyclotomicNumber::zeta(2 * N, static_cast<long>(j) * (N - j)));
    out.push_back(relation(N, "rho-bar(B) = Diag(zeta2N^{j(N-j)})", same_class(rb.Bbar, CMatrix::diagonal(bd))));

    std::vector<CyclotomicNumber> signs;
    for (int j = 0; j <= h; ++j) signs.push_back(CyclotomicNumber(j % 2 ? -1 : 1));
    out.push_back(relation(N, "rho-bar(1,N;0,1) = diag((-1)^j)", same_class(rb.Bbar.pow(N), CMatrix::diagonal(signs))));

    CMatrix anti(h + 1, h + 1);
    for (int j = 0; j <= h; ++j) anti(j, h - j) = CyclotomicNumber(1);
    const CMatrix lower = restrict_to_fixed_space(g.A0.inverse() * g.B0.pow(-N) * g.A0);
    out.push_back(relation(N, "rho-bar(1,0;N,1) = antidiagonal permutation", same_class(lower, anti)));
    return out;
}

ProjectivePoint<cplx> immersion_point(cplx z, const ThetaContext& ctx) {
    std::vector<cplx> v = theta_N_vector(z, ctx);
    double m = 0;
    for (auto c : v) m = std::max(m, std::abs(c));
    if (m < ctx.tol()) throw std::domain_error("immersion_point: all coordinates below tolerance");
    return ProjectivePoint<cplx>(std::move(v)).canonical();
}

TranslationReport translation_check(const ThetaContext& ctx, int samples, uint64_t seed, double tol) {
    if (samples < 1) throw std::invalid_argument("translation_check: samples must be >= 1");
    const int N = ctx.N();
    const auto c = build_canonical_matrices(N, e(1.0 / N));
    const NMatrix MTi = c.M_T.inverse();
    TranslationReport rep;
    std::vector<cplx> zs = sample_points(ctx.tau(), samples, seed);
    zs.push_back(0.0);
    for (cplx z : zs) {
        const std::vector<cplx> th = theta_N_vector(z, ctx);
        rep.max_residual_T = std::max(rep.max_residual_T,
                                      projective_residual(MTi * th, theta_N_vector(z + 1.0 / N, ctx)));
        rep.max_residual_S = std::max(rep.max_residual_S,
                                      projective_residual(c.M_S * th, theta_N_vector(z + ctx.tau() / double(N), ctx)));
    }
    rep.pass = rep.max_residual_T < tol && rep.max_residual_S < tol;
    return rep;
}

RhoThetaMatch rho_theta_match(const ThetaContext& ctx, int samples, uint64_t seed) {
    const int N = ctx.N();
    if (N % 2 != 0) throw std::invalid_argument("rho_theta_match needs even N");
    const auto g = build_rep_generators(N, e(1.0 / (2 * N)));
    const auto c = build_canonical_matrices(N, e(1.0 / N));
    const int h = N / 2;
    const NMatrix I = NMatrix::identity(N);
    const std::vector<std::pair<std::string, NMatrix>> twists = {
        {"", I},
        {"*M_S^{N/2}", c.M_S.pow(h)},
        {"*M_T^{N/2}", c.M_T.pow(h)},
        {"*M_S^{N/2}*M_T^{N/2}", c.M_S.pow(h) * c.M_T.pow(h)},
    };
    const ThetaContext inv_ctx = ctx.with_tau(-1.0 / ctx.tau());
    const ThetaContext t1_ctx = ctx.with_tau(ctx.tau() + 1.0);
    std::vector<std::vector<cplx>> v, wa, wb;
    for (cplx z : sample_points(ctx.tau(), samples, seed)) {
        v.push_back(theta_N_vector(z, ctx));
        wa.push_back(theta_N_vector(z / ctx.tau(), inv_ctx));
        wb.push_back(theta_N_vector(z, t1_ctx));
    }
    auto best = [&](const NMatrix& G, const std::string& gname, const std::vector<std::vector<cplx>>& w,
                    std::string& name, double& res) {
        res = std::numeric_limits<double>::infinity();
        for (int s : {1, -1}) {
            const NMatrix Gs = G.pow(s);
            for (const auto& [tname, t] : twists) {
                const NMatrix C = Gs * t;
                double r = 0;
                for (std::size_t i = 0; i < v.size(); ++i) r = std::max(r, projective_residual(C * v[i], w[i]));
                if (r < res) {
                    res = r;
                    name = gname + (s == 1 ? "" : "^-1") + tname;
                }
            }
        }
    };
    RhoThetaMatch m;
    best(g.A0, "A0", wa, m.a_candidate, m.a_residual);
    best(g.B0, "B0", wb, m.b_candidate, m.b_residual);
    return m;
}

}  // namespace thetalab
