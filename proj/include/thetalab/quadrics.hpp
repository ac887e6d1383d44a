#pragma once

#include "thetalab/puiseux.hpp"
#include "thetalab/report.hpp"
#include "thetalab/theta.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace thetalab {

// sum c_ij X_i X_j over unordered index pairs mod N.
template <class S>
class QuadraticForm {
public:
    explicit QuadraticForm(int N) : N_(N) {}

    int N() const { return N_; }
    const std::map<std::pair<int, int>, S>& terms() const { return c_; }
    bool empty() const { return c_.empty(); }

    // Adds c X_i X_j; a pair that cancels is removed.
    QuadraticForm& add(int i, int j, const S& c);
    // All pairs share i + j = k mod N.
    std::optional<int> graded_class() const;
    // X_i -> X_{i+s}
    QuadraticForm shifted(int s) const;

    template <class T>
    T evaluate(const std::vector<T>& x) const {
        T acc{};
        bool first = true;
        for (const auto& [ij, c] : c_) {
            T t = c * x.at(ij.first) * x.at(ij.second);
            if (first) acc = t;
            else acc = acc + t;
            first = false;
        }
        return first ? T{} : acc;
    }

    friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) { return a.N_ == b.N_ && a.c_ == b.c_; }

private:
    int N_;
    std::map<std::pair<int, int>, S> c_;
};

enum class NullSource { NumericAtTau, ExactSeries };

template <class S>
struct NullData {
    int N = 0;
    std::vector<S> a;                     // theta nulls a_0..a_{N-1}
    std::optional<std::vector<S>> s;      // s_k = theta_k(1/2N), even N only
    NullSource source = NullSource::NumericAtTau;
};

NullData<cplx> null_data_numeric(const ThetaContext& ctx);
// Normalized exact series (i^N dropped for odd N); no s values.
NullData<QSeries> null_data_series(int N, int order);

template <class S>
struct OddBasis {
    std::vector<QuadraticForm<S>> base;  // class 0, (N-3)/2 forms
    std::vector<QuadraticForm<S>> full;  // all shifts, N(N-3)/2 forms
};

template <class S>
struct EvenBasis {
    std::vector<QuadraticForm<S>> V0;
    std::vector<QuadraticForm<S>> V1;
    std::vector<QuadraticForm<S>> full;  // shifts of V0 and V1 with duplicates removed
};

template <class S>
OddBasis<S> gen_odd_basis(const NullData<S>& nd);
template <class S>
EvenBasis<S> gen_even_basis(const NullData<S>& nd);
// Same shape with s_i coefficients; needs nd.s.
template <class S>
EvenBasis<S> gen_even_s_basis(const NullData<S>& nd);

// Full system for any N >= 4 (odd or even).
template <class S>
std::vector<QuadraticForm<S>> full_quadric_system(const NullData<S>& nd);

struct CurveReport {
    std::vector<double> residuals;  // per form, max over samples
    double max_residual = 0;
    bool pass = false;
};

// |Q(Theta(z))| / (max |c_ij| * max |Theta_k(z)|^2) at seeded sample points.
CurveReport verify_on_curve(const std::vector<QuadraticForm<cplx>>& forms, const ThetaContext& ctx, int samples,
                            uint64_t seed, double tol = 1e-8);

// Numeric rank of the coefficient matrix over the monomials X_i X_j.
int rank_check(const std::vector<QuadraticForm<cplx>>& forms, int N);

nlohmann::json form_to_json(const QuadraticForm<cplx>& f);
nlohmann::json form_to_json(const QuadraticForm<QSeries>& f);

// Report rows for the quadric suite at ctx: vanishing, rank, graded counts, s-basis agreement.
std::vector<IdentityRecord> quadric_suite(const ThetaContext& ctx, int samples, uint64_t seed, double tol = 1e-8);

// Substitutes X_i -> a_i (exact series) into the full system; every form must vanish.
IdentityRecord quadric_null_substitution_check(int N, int order);

}  // namespace thetalab
