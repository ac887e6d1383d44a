#include "thetalab/cli.hpp"

#include "thetalab/congruence.hpp"
#include "thetalab/eta.hpp"
#include "thetalab/identities.hpp"
#include "thetalab/projective.hpp"
#include "thetalab/quadrics.hpp"
#include "thetalab/sampling.hpp"
#include "thetalab/series_json.hpp"
#include "thetalab/theta_properties.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

namespace thetalab {

namespace {

const std::vector<std::string> kObjects{"theta-null", "eta", "lambda", "X6", "Y6", "b1", "b4", "phi5", "mu6"};
const std::vector<std::string> kSuites{"identities", "quadrics", "rep", "translation", "transform", "weierstrass",
                                       "structures", "theta", "all"};

QSeries Q(long n) { return QSeries(Rational(n)); }

void check_tau(const RunConfig& cfg) {
    if (!(cfg.tau_im >= 0.4)) throw UsageError("Im tau must be at least 0.4");
}

ThetaContext context(const RunConfig& cfg, int N) {
    check_tau(cfg);
    if (!(cfg.tol > 0 && cfg.tol < 1e-3)) throw UsageError("--tol must lie in (0, 1e-3)");
    return ThetaContext(N, cfg.tau(), cfg.tol);
}

IdentityRecord numeric(std::string name, int N, double residual, double tol, std::string detail = {}) {
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

IdentityRecord count(std::string name, int N, bool pass, std::string detail) {
    IdentityRecord r;
    r.name = std::move(name);
    r.level = N;
    r.kind = RecordKind::Count;
    r.pass = pass;
    r.detail = std::move(detail);
    return r;
}

void append(std::vector<IdentityRecord>& out, std::vector<IdentityRecord> more) {
    out.insert(out.end(), more.begin(), more.end());
}

void require_even(const std::string& suite, int N) {
    if (N % 2) throw UsageError("suite '" + suite + "' needs even N");
}

std::vector<IdentityRecord> suite_identities(const RunConfig& cfg) {
    const int N = cfg.N;
    const int order = series_order(cfg, N);
    std::vector<IdentityRecord> out;
    if (N == 4 || N == 6 || N == 7 || N == 8) append(out, theta_null_curve_check(N, order));
    if (N == 4 || N == 5 || N == 6 || N == 8)
        for (auto& r : eta_quotient_check(order))
            if (r.level == N) out.push_back(r);
    if (N == 5) out.push_back(bianchi_check(order));
    if (N == 6 || N == 8) append(out, quotient_model_check(N, order));
    if (N == 6) {
        const ThetaContext ctx = context(cfg, 6);
        append(out, hesse_check(order, ctx, cfg.samples, cfg.seed));
        append(out, level6_action_check(ctx));
    }
    if (N % 2 == 0 && N >= 4) append(out, theta_null_invariance_check(context(cfg, N), 10 * cfg.tol));
    if (out.empty()) throw UsageError("no identities are recorded for N = " + std::to_string(N));
    return out;
}

std::vector<IdentityRecord> suite_quadrics(const RunConfig& cfg) {
    if (cfg.N < 4) throw UsageError("suite 'quadrics' needs N >= 4");
    std::vector<IdentityRecord> out = quadric_suite(context(cfg, cfg.N), cfg.samples, cfg.seed, 10 * cfg.tol);
    out.push_back(quadric_null_substitution_check(cfg.N, series_order(cfg, cfg.N)));
    return out;
}

std::vector<IdentityRecord> suite_rep(const RunConfig& cfg) {
    require_even("rep", cfg.N);
    if (cfg.N < 2) throw UsageError("suite 'rep' needs N >= 2");
    std::vector<IdentityRecord> out = verify_presentation(cfg.N);
    append(out, verify_conjugation_tables(cfg.N));
    append(out, verify_rho_bar(cfg.N));
    return out;
}

std::vector<IdentityRecord> suite_translation(const RunConfig& cfg) {
    const ThetaContext ctx = context(cfg, cfg.N);
    const double tol = 10 * cfg.tol;
    auto t = translation_check(ctx, cfg.samples, cfg.seed, tol);
    const std::string n = std::to_string(cfg.samples) + " samples and z = 0";
    return {numeric("Theta(z + 1/N) = M_T^-1 Theta(z)", cfg.N, t.max_residual_T, tol, n),
            numeric("Theta(z + tau/N) = M_S Theta(z)", cfg.N, t.max_residual_S, tol, n)};
}

std::vector<IdentityRecord> suite_transform(const RunConfig& cfg) {
    const int N = cfg.N;
    const ThetaContext ctx = context(cfg, N);
    const double tol = 10 * cfg.tol;
    double sr = 0, srp = 0;
    for (cplx z : sample_points(ctx.tau(), cfg.samples, cfg.seed)) {
        auto t = transform_check(N, 0, z, ctx, tol);
        sr = std::max(sr, t.spread_r);
        srp = std::max(srp, t.spread_r_prime);
    }
    std::vector<IdentityRecord> out{numeric("r_k independent of k (tau -> -1/tau)", N, sr, tol),
                                    numeric("r'_k independent of k (tau -> tau + 1)", N, srp, tol)};
    if (N % 2 == 0) {
        auto m = rho_theta_match(ctx, std::min(cfg.samples, 8), cfg.seed);
        out.push_back(numeric("theta transformation realises A0 up to Heisenberg factor", N, m.a_residual, tol, m.a_candidate));
        out.push_back(numeric("theta transformation realises B0 up to Heisenberg factor", N, m.b_residual, tol, m.b_candidate));
    }
    return out;
}

std::vector<IdentityRecord> suite_weierstrass(const RunConfig& cfg) {
    if (cfg.N != 4) throw UsageError("suite 'weierstrass' needs N = 4");
    const ThetaContext ctx = context(cfg, 4);
    std::vector<IdentityRecord> out{weierstrass_check_level4(ctx, cfg.samples, cfg.seed)};
    IdentityRecord fixed = degenerate_fibers_level4(degenerate_points_corrected());
    fixed.name += " (12 points, (1 : zeta8^k : (-1)^k))";
    out.push_back(fixed);
    IdentityRecord printed = degenerate_fibers_level4(degenerate_points_printed());
    printed.name += " (printed list, (1 : zeta8^k : 1))";
    printed.informational = true;
    out.push_back(printed);
    append(out, level4_action_check(ctx, std::min(cfg.samples, 10), cfg.seed));
    return out;
}

std::vector<IdentityRecord> suite_structures(const RunConfig& cfg) {
    const int N = cfg.N;
    require_even("structures", N);
    std::vector<IdentityRecord> out;
    IdentityRecord w;
    w.name = "e_N(S, T) = zeta_N and e_2N(S~, T~) = zeta_2N";
    w.level = N;
    w.kind = RecordKind::ExactRelation;
    w.pass = weil_pairing(N, point_S(N), point_T(N)) == CyclotomicNumber::zeta(N) &&
             weil_pairing(2 * N, point_S(2 * N), point_T(2 * N)) == CyclotomicNumber::zeta(2 * N);
    w.detail = "torus model";
    out.push_back(w);
    auto e = enum_structures_above(N);
    out.push_back(count("Gamma(2N)-structures above (S, T): 8 in 4 classes", N,
                        e.structures.size() == 8 && e.class_count == 4,
                        std::to_string(e.structures.size()) + " structures, " + std::to_string(e.class_count) + " classes"));
    const LevelStructure base{point_S(2 * N), point_T(2 * N)};
    std::vector<int> cls;
    for (Mat2 g : {Mat2{1, N, 0, 1}, Mat2{1, 0, N, 1}, Mat2{1, N, N, 1}, Mat2{1, 0, 0, 1}})
        cls.push_back(structure_class(e, act(g, base)));
    std::vector<int> sorted = cls;
    std::sort(sorted.begin(), sorted.end());
    bool distinct = sorted.front() >= 0 && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    out.push_back(count("coset representatives land in distinct classes", N, distinct,
                        "classes " + std::to_string(cls[0]) + "," + std::to_string(cls[1]) + "," + std::to_string(cls[2]) + "," +
                            std::to_string(cls[3])));
    if (2 * N <= kMaxModulus) {
        out.push_back(group_tower_check(N));
        auto inv = subgroup_invariants({SubgroupFamily::GammaN2N, N});
        bool ok = 12 * (inv.genus - 1) + 6 * inv.cusps == inv.index_psl;
        if (N == 4) ok = ok && inv.index_psl == 96 && inv.genus == 3;
        if (N == 6) ok = ok && inv.index_psl == 288 && inv.genus == 13;
        out.push_back(count("Gamma^(N)(2N) index, cusps, genus", N, ok,
                            "index " + std::to_string(inv.index_psl) + ", cusps " + std::to_string(inv.cusps) + ", genus " +
                                std::to_string(inv.genus)));
    }
    if (N <= 12) {
        auto inv = subgroup_invariants({SubgroupFamily::Gamma, N});
        bool ok = 12 * (inv.genus - 1) + 6 * inv.cusps == inv.index_psl;
        if (N == 8) ok = ok && inv.genus == 5;
        out.push_back(count("Gamma(N) index, cusps, genus", N, ok,
                            "index " + std::to_string(inv.index_psl) + ", cusps " + std::to_string(inv.cusps) + ", genus " +
                                std::to_string(inv.genus)));
    }
    return out;
}

std::vector<IdentityRecord> suite_theta(const RunConfig& cfg) {
    const ThetaContext ctx = context(cfg, cfg.N);
    std::vector<IdentityRecord> out = theta_property_checks(ctx, cfg.samples, cfg.seed);
    out.push_back(theta_null_oracle_check(ctx, series_order(cfg, cfg.N)));
    return out;
}

const std::map<std::string, std::function<std::vector<IdentityRecord>(const RunConfig&)>>& suite_table() {
    static const std::map<std::string, std::function<std::vector<IdentityRecord>(const RunConfig&)>> t{
        {"identities", suite_identities}, {"quadrics", suite_quadrics},       {"rep", suite_rep},
        {"translation", suite_translation}, {"transform", suite_transform}, {"weierstrass", suite_weierstrass},
        {"structures", suite_structures},   {"theta", suite_theta}};
    return t;
}

// Runs tasks on up to worker_count() threads; results keep task order.
std::vector<std::vector<IdentityRecord>> run_parallel(const std::vector<std::function<std::vector<IdentityRecord>()>>& tasks) {
    std::vector<std::vector<IdentityRecord>> results(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < tasks.size();) {
            try {
                results[i] = tasks[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = std::min<unsigned>(worker_count(), static_cast<unsigned>(tasks.size()));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

int level_of(const std::string& object, int N) {
    if (object == "theta-null") return N;
    if (object == "eta") return 1;
    if (object == "lambda") return 4;
    if (object == "phi5") return 5;
    if (object == "X6" || object == "Y6" || object == "mu6") return 6;
    return 8;  // b1, b4
}

QSeries qexp_series(const RunConfig& cfg, int order) {
    const std::string& o = cfg.object;
    if (o == "theta-null") {
        if (!cfg.k) throw UsageError("--object theta-null needs --k");
        return theta_null_series(cfg.N, *cfg.k, order);
    }
    if (o == "eta") return eta_series(order);
    if (o == "lambda") return Q(2) * eta_quotient({{1, 2}, {4, 4}, {2, -6}}, order);
    if (o == "phi5") {
        auto a = theta_null_series_all(5, order);
        return Q(-1) * a[1] / a[2];
    }
    if (o == "X6") return eta_quotient({{2, 1}, {3, 3}, {1, -1}, {6, -3}}, order);
    if (o == "Y6") return eta_quotient({{2, 4}, {3, 2}, {1, -2}, {6, -4}}, order);
    if (o == "mu6") {
        QSeries X = eta_quotient({{2, 1}, {3, 3}, {1, -1}, {6, -3}}, order);
        return X * X - Q(2) / X;  // 3 mu
    }
    if (o == "b1") return eta_quotient({{2, 4}, {8, 2}, {1, -1}, {4, -5}}, order);
    return eta_quotient({{2, 1}, {8, 2}, {4, -3}}, order);  // b4, sign fixed by a2(2t)/a2(t)
}

int cmd_qexp(const RunConfig& cfg, std::ostream& out) {
    if (cfg.object != "theta-null" && cfg.k) throw UsageError("--k applies only to --object theta-null");
    if (cfg.object == "theta-null" && cfg.N < 1) throw UsageError("--N must be positive");
    const int level = level_of(cfg.object, cfg.N);
    const int order = series_order(cfg, level);
    const QSeries s = qexp_series(cfg, order);
    if (cfg.format == OutputFormat::Json) {
        nlohmann::json j{{"schema", kReportSchema}, {"object", cfg.object}, {"level", level}, {"order", order}};
        if (cfg.object == "theta-null") {
            j["N"] = cfg.N;
            j["k"] = *cfg.k;
        }
        if (cfg.object == "mu6") j["note"] = "series of 3 mu";
        j["series"] = series_to_json(s);
        out << j.dump(2) << "\n";
    } else {
        out << s.str(std::numeric_limits<std::size_t>::max()) << "\n";
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    check_tau(cfg);
    if (cfg.samples < 1 || cfg.samples > 10000) throw UsageError("--samples must lie in 1..10000");
    if (cfg.N < 2 || cfg.N > 64) throw UsageError("--N must lie in 2..64");
    std::vector<std::string> names = cfg.suite == "all" ? suites_for(cfg.N) : std::vector<std::string>{cfg.suite};
    if (names.empty()) throw UsageError("no suite applies to N = " + std::to_string(cfg.N));
    std::vector<std::function<std::vector<IdentityRecord>()>> tasks;
    for (const auto& n : names) tasks.push_back([&cfg, n] { return run_suite(n, cfg); });
    std::vector<IdentityRecord> all;
    for (auto& part : run_parallel(tasks)) append(all, std::move(part));
    if (cfg.format == OutputFormat::Json) {
        out << report_to_json(all).dump(2) << "\n";
    } else {
        out << report_to_text(all);
        out << (aggregate_pass(all) ? "overall: PASS" : "overall: FAIL") << " (" << all.size() << " records)\n";
    }
    return aggregate_pass(all) ? 0 : 1;
}

int cmd_invariants(const RunConfig& cfg, std::ostream& out) {
    SubgroupSpec spec{cfg.family == "gamma" ? SubgroupFamily::Gamma : SubgroupFamily::GammaN2N, cfg.N};
    if (spec.family == SubgroupFamily::GammaN2N && cfg.N % 2) throw UsageError("family gammaN2N needs even N");
    SubgroupInvariants inv;
    try {
        inv = subgroup_invariants(spec);
    } catch (const std::out_of_range& e) {
        throw UsageError(e.what());
    }
    if (cfg.format == OutputFormat::Json) {
        nlohmann::json j{{"schema", kReportSchema},       {"family", cfg.family},       {"N", cfg.N},
                         {"modulus", spec.modulus()},      {"index", inv.index_psl},     {"cusps", inv.cusps},
                         {"genus", inv.genus},             {"image_order", inv.image_order},
                         {"contains_minus_identity", inv.contains_minus_identity}};
        out << j.dump(2) << "\n";
    } else {
        out << "index " << inv.index_psl << ", cusps " << inv.cusps << ", genus " << inv.genus << "\n";
    }
    return 0;
}

}  // namespace

int series_order(const RunConfig& cfg, int level) {
    if (!cfg.order) return std::max(50, 8 * level);
    if (*cfg.order < 8 * level)
        throw UsageError("--order must be at least 8 * level = " + std::to_string(8 * level));
    if (*cfg.order > 2000) throw UsageError("--order is capped at 2000");
    return *cfg.order;
}

std::vector<std::string> suites_for(int N) {
    std::vector<std::string> out{"theta"};
    if ((N >= 4 && N <= 8) || (N % 2 == 0 && N >= 4)) out.push_back("identities");
    if (N >= 4) out.push_back("quadrics");
    if (N % 2 == 0) out.push_back("rep");
    out.push_back("translation");
    out.push_back("transform");
    if (N == 4) out.push_back("weierstrass");
    if (N % 2 == 0) out.push_back("structures");
    return out;
}

std::vector<IdentityRecord> run_suite(const std::string& suite, const RunConfig& cfg) {
    auto it = suite_table().find(suite);
    if (it == suite_table().end()) throw UsageError("unknown suite '" + suite + "'");
    return it->second(cfg);
}

unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* s = std::getenv("THETA_LAB_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && *end == '\0' && v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
    }
    return hw;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string format = "text";
    int order = 0;

    CLI::App app{"theta_lab: theta functions, quadrics and modular identities"};
    app.require_subcommand(1);
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--N", cfg.N, "level N")->capture_default_str();
        sub->add_option("--order", order, "series truncation in whole powers of q (default max(50, 8 * level))");
        sub->add_option("--tau-re", cfg.tau_re, "Re tau")->capture_default_str();
        sub->add_option("--tau-im", cfg.tau_im, "Im tau (>= 0.4)")->capture_default_str();
        sub->add_option("--tol", cfg.tol, "numeric tolerance")->capture_default_str();
        sub->add_option("--samples", cfg.samples, "random points per numeric check")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
        sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    };
    CLI::App* qexp = app.add_subcommand("qexp", "print an exact q-expansion");
    add_common(qexp);
    qexp->add_option("--object", cfg.object, "series to print")->check(CLI::IsMember(kObjects))->capture_default_str();
    auto* kopt = qexp->add_option("--k", "theta-null index k");
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify);
    verify->add_option("--suite", cfg.suite, "suite name")->check(CLI::IsMember(kSuites))->capture_default_str();
    CLI::App* invariants = app.add_subcommand("invariants", "index, cusps and genus of a congruence subgroup");
    add_common(invariants);
    invariants->add_option("--family", cfg.family, "gamma or gammaN2N")->check(CLI::IsMember({"gamma", "gammaN2N"}))->capture_default_str();

    std::vector<const char*> argv{"theta_lab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;
    for (CLI::App* sub : {qexp, verify, invariants})
        if (sub->parsed()) {
            cfg.command = sub->get_name();
            if (sub->count("--order")) cfg.order = order;
        }
    if (qexp->parsed() && kopt->count()) cfg.k = kopt->as<int>();

    try {
        if (cfg.command == "qexp") return cmd_qexp(cfg, out);
        if (cfg.command == "verify") return cmd_verify(cfg, out);
        return cmd_invariants(cfg, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace thetalab
