#include "thetalab/quadrics.hpp"

#include "thetalab/sampling.hpp"
#include "thetalab/series_json.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thetalab {

namespace {

bool scalar_zero(const cplx& c) { return c == 0.0; }
bool scalar_zero(const QSeries& c) { return c.is_zero(); }

int md(int x, int n) { return ((x % n) + n) % n; }

template <class S>
const S& at(const std::vector<S>& v, int i) {
    return v[md(i, static_cast<int>(v.size()))];
}

// Coefficients over the monomials of one class, scaled to unit max modulus.
Eigen::VectorXcd coeff_vector(const QuadraticForm<cplx>& f, const std::map<std::pair<int, int>, int>& col) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(col.size()));
    double m = 0;
    for (const auto& [ij, c] : f.terms()) {
        v(col.at(ij)) = c;
        m = std::max(m, std::abs(c));
    }
    return m > 0 ? Eigen::VectorXcd(v / m) : v;
}

std::map<std::pair<int, int>, int> monomial_columns(int N) {
    std::map<std::pair<int, int>, int> col;
    for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) col.emplace(std::pair{i, j}, static_cast<int>(col.size()));
    return col;
}

int numeric_rank(const std::vector<Eigen::VectorXcd>& rows, double rel = 1e-7) {
    if (rows.empty()) return 0;
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows.size()), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel * s(0)) ++r;
    return r;
}

// Adds shifts 0..N-1 of the given forms, skipping any that add nothing new.
std::vector<QuadraticForm<QSeries>> close_under_shift(const std::vector<QuadraticForm<QSeries>>& gens, int N) {
    std::vector<QuadraticForm<QSeries>> out;
    for (int s = 0; s < N; ++s)
        for (const auto& g : gens) {
            auto f = g.shifted(s);
            if (f.empty()) continue;
            if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
        }
    return out;
}

std::vector<QuadraticForm<cplx>> close_under_shift(const std::vector<QuadraticForm<cplx>>& gens, int N) {
    const auto col = monomial_columns(N);
    std::vector<QuadraticForm<cplx>> out;
    std::map<int, std::vector<Eigen::VectorXcd>> by_class;
    for (int s = 0; s < N; ++s)
        for (const auto& g : gens) {
            auto f = g.shifted(s);
            if (f.empty()) continue;
            int k = *f.graded_class();
            auto rows = by_class[k];
            rows.push_back(coeff_vector(f, col));
            if (numeric_rank(rows) > static_cast<int>(by_class[k].size())) {
                by_class[k] = std::move(rows);
                out.push_back(std::move(f));
            }
        }
    return out;
}

}  // namespace

template <class S>
QuadraticForm<S>& QuadraticForm<S>::add(int i, int j, const S& c) {
    i = md(i, N_);
    j = md(j, N_);
    if (i > j) std::swap(i, j);
    auto key = std::pair{i, j};
    auto it = c_.find(key);
    if (it == c_.end()) {
        if (!scalar_zero(c)) c_.emplace(key, c);
    } else {
        it->second = it->second + c;
        if (scalar_zero(it->second)) c_.erase(it);
    }
    return *this;
}

template <class S>
std::optional<int> QuadraticForm<S>::graded_class() const {
    std::optional<int> k;
    for (const auto& [ij, c] : c_) {
        int s = md(ij.first + ij.second, N_);
        if (k && *k != s) return std::nullopt;
        k = s;
    }
    return k ? k : std::optional<int>(0);
}

template <class S>
QuadraticForm<S> QuadraticForm<S>::shifted(int s) const {
    QuadraticForm<S> f(N_);
    for (const auto& [ij, c] : c_) f.add(ij.first + s, ij.second + s, c);
    return f;
}

template class QuadraticForm<cplx>;
template class QuadraticForm<QSeries>;

NullData<cplx> null_data_numeric(const ThetaContext& ctx) {
    NullData<cplx> nd;
    nd.N = ctx.N();
    nd.a = theta_N_vector(0.0, ctx);
    if (nd.N % 2 == 0) nd.s = theta_N_vector(1.0 / (2.0 * nd.N), ctx);
    nd.source = NullSource::NumericAtTau;
    return nd;
}

NullData<QSeries> null_data_series(int N, int order) {
    NullData<QSeries> nd;
    nd.N = N;
    nd.a = theta_null_series_all(N, order);
    nd.source = NullSource::ExactSeries;
    return nd;
}

template <class S>
OddBasis<S> gen_odd_basis(const NullData<S>& nd) {
    const int N = nd.N;
    if (N < 5 || N % 2 == 0) throw std::invalid_argument("gen_odd_basis needs odd N >= 5");
    const auto& a = nd.a;
    const int h = (N - 1) / 2;
    OddBasis<S> b;
    for (int j = 1; j <= (N - 3) / 2; ++j) {
        QuadraticForm<S> f(N);
        f.add(0, 0, at(a, j + 1) * at(a, N - j));
        f.add(h + 1, h, -(at(a, h - j) * at(a, h + 1 + j)));
        f.add(h - j, h + 1 + j, at(a, h) * at(a, h + 1));
        b.base.push_back(std::move(f));
    }
    b.full = close_under_shift(b.base, N);
    return b;
}

template <class S>
EvenBasis<S> gen_even_basis(const NullData<S>& nd) {
    const int N = nd.N;
    if (N < 4 || N % 2 != 0) throw std::invalid_argument("gen_even_basis needs even N >= 4");
    const auto& a = nd.a;
    const int h = N / 2;
    EvenBasis<S> b;
    for (int j = 1; j <= h - 1; ++j) {
        QuadraticForm<S> f(N);
        f.add(0, 0, at(a, j) * at(a, j));
        f.add(h, h, at(a, h + j) * at(a, h + j));
        f.add(j, N - j, -(at(a, 0) * at(a, 0)));
        f.add(h + j, h - j, -(at(a, h) * at(a, h)));
        b.V0.push_back(std::move(f));
    }
    for (int j = 1; j <= h - 2; ++j) {
        QuadraticForm<S> f(N);
        f.add(0, 1, at(a, j) * at(a, j + 1));
        f.add(h, h + 1, at(a, h + j) * at(a, h + j + 1));
        f.add(j + 1, N - j, -(at(a, 0) * at(a, 1)));
        f.add(h + j + 1, h - j, -(at(a, h) * at(a, h + 1)));
        b.V1.push_back(std::move(f));
    }
    std::vector<QuadraticForm<S>> gens = b.V0;
    gens.insert(gens.end(), b.V1.begin(), b.V1.end());
    b.full = close_under_shift(gens, N);
    return b;
}

template <class S>
EvenBasis<S> gen_even_s_basis(const NullData<S>& nd) {
    const int N = nd.N;
    if (N < 4 || N % 2 != 0) throw std::invalid_argument("gen_even_s_basis needs even N >= 4");
    if (!nd.s) throw std::invalid_argument("gen_even_s_basis needs half-period values s_k");
    const auto& s = *nd.s;
    const int h = N / 2;
    EvenBasis<S> b;
    for (int j = 1; j <= h - 1; ++j) {
        QuadraticForm<S> f(N);
        f.add(0, 0, at(s, j) * at(s, N - j));
        f.add(h, h, at(s, h - j) * at(s, h + j));
        f.add(h - j, h + j, -(at(s, h) * at(s, h)));
        b.V0.push_back(std::move(f));
    }
    for (int j = 1; j <= h - 2; ++j) {
        QuadraticForm<S> f(N);
        f.add(0, 1, at(s, j + 1) * at(s, N - j));
        f.add(h, h + 1, at(s, h - j) * at(s, h + j + 1));
        f.add(h - j, h + j + 1, -(at(s, h) * at(s, h + 1)));
        b.V1.push_back(std::move(f));
    }
    std::vector<QuadraticForm<S>> gens = b.V0;
    gens.insert(gens.end(), b.V1.begin(), b.V1.end());
    b.full = close_under_shift(gens, N);
    return b;
}

template <class S>
std::vector<QuadraticForm<S>> full_quadric_system(const NullData<S>& nd) {
    return nd.N % 2 ? gen_odd_basis(nd).full : gen_even_basis(nd).full;
}

template OddBasis<cplx> gen_odd_basis(const NullData<cplx>&);
template OddBasis<QSeries> gen_odd_basis(const NullData<QSeries>&);
template EvenBasis<cplx> gen_even_basis(const NullData<cplx>&);
template EvenBasis<QSeries> gen_even_basis(const NullData<QSeries>&);
template EvenBasis<cplx> gen_even_s_basis(const NullData<cplx>&);
template EvenBasis<QSeries> gen_even_s_basis(const NullData<QSeries>&);
template std::vector<QuadraticForm<cplx>> full_quadric_system(const NullData<cplx>&);
template std::vector<QuadraticForm<QSeries>> full_quadric_system(const NullData<QSeries>&);

CurveReport verify_on_curve(const std::vector<QuadraticForm<cplx>>& forms, const ThetaContext& ctx, int samples,
                            uint64_t seed, double tol) {
    CurveReport rep;
    rep.residuals.assign(forms.size(), 0.0);
    for (cplx z : sample_points(ctx.tau(), samples, seed)) {
        const std::vector<cplx> x = theta_N_vector(z, ctx);
        double xm = 0;
        for (auto v : x) xm = std::max(xm, std::abs(v));
        for (std::size_t f = 0; f < forms.size(); ++f) {
            double cm = 0;
            for (const auto& [ij, c] : forms[f].terms()) cm = std::max(cm, std::abs(c));
            if (cm == 0) continue;
            double r = std::abs(forms[f].evaluate(x)) / (cm * xm * xm);
            rep.residuals[f] = std::max(rep.residuals[f], r);
        }
    }
    for (double r : rep.residuals) rep.max_residual = std::max(rep.max_residual, r);
    rep.pass = rep.max_residual < tol;
    return rep;
}

int rank_check(const std::vector<QuadraticForm<cplx>>& forms, int N) {
    const auto col = monomial_columns(N);
    std::vector<Eigen::VectorXcd> rows;
    for (const auto& f : forms) {
        if (f.N() != N) throw std::invalid_argument("rank_check: form level differs");
        rows.push_back(coeff_vector(f, col));
    }
    return numeric_rank(rows);
}

nlohmann::json form_to_json(const QuadraticForm<cplx>& f) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [ij, c] : f.terms())
        terms.push_back(nlohmann::json::array({ij.first, ij.second, nlohmann::json::array({c.real(), c.imag()})}));
    auto k = f.graded_class();
    return {{"N", f.N()}, {"class", k ? nlohmann::json(*k) : nlohmann::json(nullptr)}, {"terms", terms}};
}

nlohmann::json form_to_json(const QuadraticForm<QSeries>& f) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [ij, c] : f.terms())
        terms.push_back(nlohmann::json::array({ij.first, ij.second, series_to_json(c)}));
    auto k = f.graded_class();
    return {{"N", f.N()}, {"class", k ? nlohmann::json(*k) : nlohmann::json(nullptr)}, {"terms", terms}};
}

std::vector<IdentityRecord> quadric_suite(const ThetaContext& ctx, int samples, uint64_t seed, double tol) {
    const int N = ctx.N();
    const int expected = N * (N - 3) / 2;
    const NullData<cplx> nd = null_data_numeric(ctx);
    const auto full = full_quadric_system(nd);
    std::vector<IdentityRecord> out;

    auto count = [&](std::string name, bool pass, std::string detail) {
        IdentityRecord r;
        r.name = std::move(name);
        r.level = N;
        r.kind = RecordKind::Count;
        r.pass = pass;
        r.detail = std::move(detail);
        out.push_back(r);
    };
    auto numeric = [&](std::string name, const CurveReport& c) {
        IdentityRecord r;
        r.name = std::move(name);
        r.level = N;
        r.kind = RecordKind::NumericVanishing;
        r.tolerance = tol;
        r.residual = c.max_residual;
        r.pass = c.pass;
        out.push_back(r);
    };

    numeric("full quadric system vanishes on Theta(z)", verify_on_curve(full, ctx, samples, seed, tol));
    count("number of quadrics = N(N-3)/2", static_cast<int>(full.size()) == expected,
          std::to_string(full.size()) + " forms, expected " + std::to_string(expected));
    const int rank = rank_check(full, N);
    count("rank of quadric system = N(N-3)/2", rank == expected,
          "rank " + std::to_string(rank) + ", expected " + std::to_string(expected));

    std::map<int, int> per_class;
    bool homogeneous = true;
    for (const auto& f : full) {
        auto k = f.graded_class();
        if (!k) homogeneous = false;
        else ++per_class[*k];
    }
    bool counts_ok = homogeneous;
    std::string detail;
    for (int k = 0; k < N; ++k) {
        int want = N % 2 ? (N - 3) / 2 : (k % 2 == 0 ? (N - 2) / 2 : (N - 4) / 2);
        counts_ok = counts_ok && per_class[k] == want;
        detail += (k ? "," : "") + std::to_string(per_class[k]);
    }
    count("per-class quadric counts", counts_ok, "classes 0..N-1: " + detail);

    if (N % 2 == 0) {
        const auto sb = gen_even_s_basis(nd);
        numeric("s-coefficient quadrics vanish on Theta(z)", verify_on_curve(sb.full, ctx, samples, seed, tol));
        std::vector<QuadraticForm<cplx>> both = full;
        both.insert(both.end(), sb.full.begin(), sb.full.end());
        const int r2 = rank_check(both, N);
        count("s-coefficient quadrics span the same space", r2 == expected && rank_check(sb.full, N) == expected,
              "joint rank " + std::to_string(r2));
    }
    return out;
}

IdentityRecord quadric_null_substitution_check(int N, int order) {
    const NullData<QSeries> nd = null_data_series(N, order);
    const auto full = full_quadric_system(nd);
    IdentityRecord r;
    r.name = "quadric system at X_i = a_i (exact series)";
    r.level = N;
    r.kind = RecordKind::SeriesVanishing;
    r.order = order;
    r.pass = !full.empty();
    int idx = 0;
    for (const auto& f : full) {
        QSeries v = f.evaluate(nd.a);
        if (!v.is_zero()) {
            r.pass = false;
            r.detail = "form " + std::to_string(idx) + " leaves " + v.str(2);
            break;
        }
        ++idx;
    }
    if (r.pass) r.detail = std::to_string(full.size()) + " forms vanish identically";
    return r;
}

}  // namespace thetalab
