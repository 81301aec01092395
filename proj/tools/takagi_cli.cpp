// Command-line surface over the takagi library: function tables, tail
// moments, coefficient classification, statistical verification suites,
// and reproducible point sampling.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or parse error,
// 3 precision or numeric failure.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "takagi/asymptotics.hpp"
#include "takagi/bit_point.hpp"
#include "takagi/coefficients.hpp"
#include "takagi/errors.hpp"
#include "takagi/moments.hpp"
#include "takagi/montecarlo.hpp"
#include "takagi/point_eval.hpp"
#include "takagi/report.hpp"
#include "takagi/sampling.hpp"
#include "takagi/stats.hpp"

namespace {

using takagi::RunConfig;
using takagi::VerificationReport;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        takagi::write_text_file(out_path, text);
    }
}

takagi::MetricRow metric(const std::string& name, double value, long N = -1) {
    takagi::MetricRow m;
    m.name = name;
    m.N = N;
    m.value = value;
    return m;
}

// ---------------------------------------------------------------- eval

int cmd_eval(const RunConfig& cfg) {
    takagi::CoefficientSeq seq = takagi::parse_seq_spec(cfg.seq);
    long g = cfg.grid;
    int m = 0;
    while ((1L << m) < g) ++m;
    if (g < 2 || (1L << m) != g || m > 30) {
        throw takagi::ParseError("--grid must be a power of two in [2, 2^30]");
    }
    std::string text;
    text += "x,f,abs_error\n";
    for (long k = 0; k < g; ++k) {
        takagi::BitPoint x = takagi::BitPoint::dyadic((std::uint64_t)k, m);
        takagi::CertifiedValue fv = takagi::eval_f(seq, x, cfg.tol);
        text += fmt17((double)k / (double)g);
        text += ',';
        text += fmt17(fv.value);
        text += ',';
        text += fmt17(fv.abs_error);
        text += '\n';
    }
    emit(text, cfg.out);
    return 0;
}

// ------------------------------------------------------------- moments

int cmd_moments(const RunConfig& cfg) {
    takagi::CoefficientSeq seq = takagi::parse_seq_spec(cfg.seq);
    std::vector<long> Ns = cfg.N_values;
    if (Ns.empty()) Ns = {1, 10, 100};
    std::string text;
    text += "N,m_N,m_err,s2_N,s2_err,l2_ratio_closed,qv_var_exact,qv_var_bound\n";
    for (long N : Ns) {
        takagi::TailStats ts = takagi::tail_stats(seq, N);
        takagi::HypothesisStatus hyp = seq.check_hypotheses();
        double l2 = (hyp.tail_mean_nonzero || ts.m_N != 0.0)
                        ? takagi::l2_ratio_error(seq, N)
                        : std::nan("");
        takagi::QuadVarVariance qv = takagi::quadratic_variation_variance(seq, N);
        text += std::to_string(N);
        for (double v : {ts.m_N, ts.m_err, ts.s2_N, ts.s2_err, l2, qv.exact, qv.bound}) {
            text += ',';
            text += fmt17(v);
        }
        text += '\n';
    }
    emit(text, cfg.out);
    return 0;
}

// ------------------------------------------------------------ classify

int cmd_classify(const RunConfig& cfg) {
    takagi::CoefficientSeq seq = takagi::parse_seq_spec(cfg.seq);
    nlohmann::ordered_json j;
    j["seq"] = seq.describe();
    nlohmann::ordered_json conds = nlohmann::ordered_json::array();
    for (const auto& cv : seq.check_all_conditions()) {
        nlohmann::ordered_json c;
        c["condition"] = takagi::to_string(cv.condition);
        c["verdict"] = takagi::to_string(cv.verdict);
        c["rationale"] = cv.rationale;
        nlohmann::ordered_json ev = nlohmann::ordered_json::array();
        for (const auto& [N, ratio] : cv.evidence) {
            ev.push_back({{"N", N}, {"ratio", ratio}});
        }
        c["evidence"] = ev;
        conds.push_back(c);
    }
    j["conditions"] = conds;
    j["differentiability"] = takagi::to_string(seq.differentiability());
    takagi::HypothesisStatus hyp = seq.check_hypotheses();
    j["hypotheses"] = {{"tail_square_positive", hyp.tail_square_positive},
                       {"tail_mean_nonzero", hyp.tail_mean_nonzero},
                       {"first_zero_square_N", hyp.first_zero_square_N},
                       {"first_zero_mean_N", hyp.first_zero_mean_N}};
    emit(j.dump(2) + "\n", cfg.out);
    return 0;
}

// -------------------------------------------------------------- sample

int cmd_sample(const RunConfig& cfg) {
    long bits = cfg.bits > 0 ? cfg.bits : 64;
    if (bits < 64) throw takagi::ParseError("--bits must be >= 64 for sampling");
    takagi::SampleBatch batch(cfg.seed, cfg.samples, (int)bits);
    std::string text = "i,x\n";
    for (long i = 0; i < cfg.samples; ++i) {
        text += std::to_string(i);
        text += ',';
        text += fmt17(batch.point(i).value());
        text += '\n';
    }
    emit(text, cfg.out);
    return 0;
}

// -------------------------------------------------------------- verify

VerificationReport verify_lln(const RunConfig& cfg) {
    takagi::CoefficientSeq seq = takagi::parse_seq_spec(cfg.seq);
    takagi::LlnConfig lc;
    lc.N_list = cfg.N_values.empty() ? std::vector<long>{10, 100, 1000} : cfg.N_values;
    lc.rel_tol = cfg.rel_tol;
    lc.check_decade =
        seq.family() == takagi::Family::PowerLaw && lc.N_list.size() >= 2;
    long N_max = *std::max_element(lc.N_list.begin(), lc.N_list.end());
    long bits = cfg.bits > 0 ? cfg.bits : takagi::suggest_bits(seq, N_max);
    takagi::SampleBatch batch(cfg.seed, cfg.samples, (int)bits);
    takagi::BatchSource src(batch);
    return takagi::run_lln(seq, src, lc);
}

VerificationReport verify_clt(const RunConfig& cfg) {
    takagi::CoefficientSeq seq = takagi::parse_seq_spec(cfg.seq);
    takagi::CltConfig cc;
    cc.N = cfg.N_values.empty() ? 1000 : cfg.N_values.front();
    cc.ks_threshold = cfg.ks_threshold;
    cc.ks_floor = cfg.ks_floor;
    bool limit_not_normal =
        seq.check_condition(takagi::RateCondition::CltMaxTerm).verdict !=
        takagi::Verdict::Holds;
    cc.negative_control = cfg.negative_control || limit_not_normal;
    long bits = cfg.bits > 0 ? cfg.bits : takagi::suggest_bits(seq, cc.N);
    takagi::SampleBatch batch(cfg.seed, cfg.samples, (int)bits);
    takagi::BatchSource src(batch);
    return takagi::run_clt(seq, src, cc);
}

VerificationReport verify_lil(const RunConfig& cfg, bool samples_given) {
    takagi::CoefficientSeq seq = takagi::parse_seq_spec(cfg.seq);
    takagi::LilConfig xc;
    if (cfg.N_values.size() >= 2) {
        xc.N_lo = cfg.N_values.front();
        xc.N_hi = cfg.N_values.back();
    }
    xc.grid_ratio = cfg.grid_ratio;
    xc.epsilon = cfg.epsilon;
    xc.max_exceed_fraction = cfg.max_exceed;
    xc.min_decay_fraction = cfg.min_decay;
    long paths = samples_given ? cfg.samples : 100;
    long bits = cfg.bits > 0 ? cfg.bits : takagi::suggest_bits(seq, xc.N_hi);
    takagi::SampleBatch batch(cfg.seed, paths, (int)bits);
    takagi::BatchSource src(batch);
    return takagi::run_lil(seq, src, xc);
}

VerificationReport verify_geometric(const RunConfig& cfg) {
    takagi::GeometricConfig gc;
    gc.N = cfg.N_values.empty() ? 20 : cfg.N_values.front();
    gc.ks_samples = cfg.samples;
    gc.ks_threshold = cfg.ks_threshold;
    gc.check_quarter_cdf = cfg.r == 0.25 && cfg.samples > 0;
    gc.cdf_tol = cfg.cdf_tol;
    gc.cesaro_N = cfg.cesaro_N;
    gc.cesaro_paths = cfg.cesaro_paths;
    gc.cesaro_tol = cfg.cesaro_tol;
    gc.seed = cfg.seed;
    gc.bits = cfg.bits;
    return takagi::run_geometric(cfg.r, gc);
}

void push_bracket(VerificationReport& rep, const std::string& what, long at,
                  const takagi::Bracket& b) {
    rep.metrics.push_back(metric(what + "_lower", b.lower, at));
    rep.metrics.push_back(metric(what + "_target", b.target, at));
    rep.metrics.push_back(metric(what + "_upper", b.upper, at));
    rep.metrics.push_back(metric(what + "_in_regime", b.in_regime ? 1.0 : 0.0, at));
    if (b.in_regime && !(b.lower <= b.target && b.target <= b.upper)) {
        rep.pass = false;
        rep.notes.push_back(what + " bracket violated at " + std::to_string(at));
    }
}

VerificationReport verify_appendix(const RunConfig& cfg) {
    VerificationReport rep;
    rep.test = "appendix";
    char seqbuf[64];
    std::snprintf(seqbuf, sizeof seqbuf, "stretchexp:K=%g,beta=%g", cfg.K, cfg.beta);
    rep.seq = seqbuf;
    rep.pass = true;
    const long a_grid[3] = {4, 16, 64};
    const long N_grid[3] = {16, 64, 256};
    if (cfg.beta < 1.0) {
        for (long a : a_grid) {
            push_bracket(rep, "integral", a,
                         takagi::stretch_tail_integral_bracket(cfg.K, cfg.beta, a));
        }
        for (long N : N_grid) {
            push_bracket(rep, "tailsum", N,
                         takagi::stretch_tail_sum_bracket(cfg.K, cfg.beta, N));
            for (int p : {1, 2}) {
                push_bracket(rep, "ratio_p" + std::to_string(p), N,
                             takagi::tail_ratio_bracket(cfg.K, cfg.beta, N, p));
            }
        }
        if (cfg.beta == 0.5) {
            for (long a : a_grid) {
                double target = takagi::stretch_integral(cfg.K, 0.5, a);
                double root = std::sqrt(cfg.K * cfg.K * (double)a);
                double closed = 2.0 * (root + 1.0) * std::exp(-root) /
                                (cfg.K * cfg.K);
                double gap = std::fabs(target / closed - 1.0);
                rep.metrics.push_back(metric("closed_form_rel_gap", gap, a));
                if (gap > 1e-10) {
                    rep.pass = false;
                    rep.notes.push_back("closed-form cross-check failed at a = " +
                                        std::to_string(a));
                }
            }
        }
    } else {
        for (long N : N_grid) {
            takagi::RatioFloor rf =
                takagi::rapid_decay_ratio_floor(cfg.K, cfg.beta, N);
            rep.metrics.push_back(metric("floor_ratio", rf.ratio, N));
            rep.metrics.push_back(metric("floor_value", rf.floor, N));
            if (!(rf.ratio >= rf.floor)) {
                rep.pass = false;
                rep.notes.push_back("ratio floor violated at N = " + std::to_string(N));
            }
        }
    }
    return rep;
}

VerificationReport verify_identities(const RunConfig& cfg, bool samples_given) {
    VerificationReport rep;
    rep.test = "identities";
    rep.seq = "geometric:r in {0.7, 0.25, -0.5}";
    rep.seed = cfg.seed;
    rep.pass = true;
    long n_pts = samples_given ? cfg.samples : 10000;

    // Two evaluation routes for the centered tent iterate on 64-bit points:
    // the fold and the sign-digit series differ by exactly the truncated
    // mass 2^-(L-n+1).
    {
        takagi::SampleBatch batch(cfg.seed, n_pts, 64);
        double worst = 0.0;
        bool ok = true;
        for (long i = 0; i < n_pts; ++i) {
            takagi::BitPoint x = batch.point(i);
            long n = 1 + (i % 40);
            takagi::RouteCheck rc = takagi::phi_star_routes(x, n);
            double thresh = std::ldexp(1.0, (int)-(64 - n - 2));
            worst = std::max(worst, rc.gap / thresh);
            if (rc.gap > thresh) ok = false;
        }
        rep.metrics.push_back(metric("route_gap_over_threshold_max", worst));
        rep.samples = n_pts;
        rep.bits = 64;
        if (!ok) {
            rep.pass = false;
            rep.notes.push_back("two-route tent gap exceeded its digit bound");
        }
    }

    // Geometric self-similarity: tail ratio at N vs the shifted point.
    {
        const double rs[3] = {0.7, 0.25, -0.5};
        long pairs = std::max<long>(100, n_pts / 10);
        double worst = 0.0;
        bool ok = true;
        for (int t = 0; t < 3; ++t) {
            takagi::SampleBatch batch(cfg.seed + 1 + (std::uint64_t)t, pairs, 192);
            for (long i = 0; i < pairs; ++i) {
                takagi::BitPoint x = batch.point(i);
                long N = 1 + (i % 12);
                takagi::SelfSimCheck sc =
                    takagi::self_similarity(rs[t], x, N, 1e-12);
                worst = std::max(worst, sc.gap);
                if (sc.gap > 1e-10) ok = false;
            }
        }
        rep.metrics.push_back(metric("selfsim_gap_max", worst));
        if (!ok) {
            rep.pass = false;
            rep.notes.push_back("self-similarity identity gap exceeded 1e-10");
        }
    }

    // Closed forms: the quarter-coefficient parabola, the classic value at
    // 1/2, the fixed point 2/3, and vanishing tails at dyadic rationals.
    {
        takagi::CoefficientSeq quarter = takagi::CoefficientSeq::geometric(0.25);
        takagi::CoefficientSeq half = takagi::CoefficientSeq::geometric(0.5);
        double worst = 0.0;
        for (long k = 0; k < 64; ++k) {
            takagi::BitPoint x = takagi::BitPoint::dyadic((std::uint64_t)k, 6);
            double u = (double)k / 64.0;
            takagi::CertifiedValue fv = takagi::eval_f(quarter, x, 1e-12);
            worst = std::max(worst, std::fabs(fv.value - u * (1.0 - u)));
        }
        rep.metrics.push_back(metric("quarter_parabola_gap_max", worst));
        if (worst > 1e-13) {
            rep.pass = false;
            rep.notes.push_back("f at r = 1/4 deviates from x(1-x) on the dyadic grid");
        }

        takagi::BitPoint h = takagi::BitPoint::dyadic(1, 1);
        double fh = takagi::eval_f(half, h, 1e-12).value;
        rep.metrics.push_back(metric("half_value_gap", std::fabs(fh - 0.5)));
        if (std::fabs(fh - 0.5) > 1e-15) {
            rep.pass = false;
            rep.notes.push_back("f(1/2) != 1/2 for the classic sequence");
        }

        auto [tn, td] = takagi::tent_rational(2, 3);
        bool fixed = tn * 3 == td * 2;
        takagi::BitPoint x23 = takagi::BitPoint::from_rational(2, 3, 192);
        double ratio = takagi::stat_ratio(half, x23, 7, 1e-12);
        rep.metrics.push_back(metric("two_thirds_ratio_gap",
                                     std::fabs(ratio - 4.0 / 3.0)));
        if (!fixed || std::fabs(ratio - 4.0 / 3.0) > 1e-9) {
            rep.pass = false;
            rep.notes.push_back("x = 2/3 fixed-point closed form violated");
        }

        double dyadic_worst = 0.0;
        for (long k = 1; k < 16; k += 2) {
            takagi::BitPoint x = takagi::BitPoint::dyadic((std::uint64_t)k, 4);
            dyadic_worst = std::max(
                dyadic_worst, std::fabs(takagi::stat_ratio(half, x, 20, 1e-12)));
        }
        rep.metrics.push_back(metric("dyadic_exhausted_ratio_max", dyadic_worst));
        if (dyadic_worst > 1e-12) {
            rep.pass = false;
            rep.notes.push_back("tail ratio at exhausted dyadic points is not zero");
        }
    }
    return rep;
}

int cmd_verify(const std::string& suite, RunConfig& cfg, bool samples_given) {
    VerificationReport rep;
    if (suite == "lln") rep = verify_lln(cfg);
    else if (suite == "clt") rep = verify_clt(cfg);
    else if (suite == "lil") rep = verify_lil(cfg, samples_given);
    else if (suite == "geometric") rep = verify_geometric(cfg);
    else if (suite == "appendix") rep = verify_appendix(cfg);
    else rep = verify_identities(cfg, samples_given);

    std::string out = cfg.out;
    if (out.empty()) out = "takagi_report." + cfg.format;
    cfg.subcommand = "verify " + suite;
    std::string text = cfg.format == "csv"
                           ? takagi::report_to_csv(rep)
                           : takagi::report_to_json(rep, cfg, !cfg.no_timestamp);
    takagi::write_text_file(out, text);
    std::cout << suite << ": " << (rep.pass ? "PASS" : "FAIL") << " (report " << out
              << ")\n";
    return rep.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    if (const char* env = std::getenv("TAKAGI_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && end != env) {
            cfg.seed = (std::uint64_t)v;
        } else {
            std::cerr << "warning: ignoring non-numeric TAKAGI_SEED\n";
        }
    }

    CLI::App app{"Exact and Monte Carlo analysis of Takagi-class functions"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI file");

    auto add_common = [&](CLI::App* c) {
        c->add_option("--seq", cfg.seq, "Sequence spec, e.g. geometric:r=0.5");
        c->add_option("--N", cfg.N_values, "Tail start indices")->delimiter(',');
        c->add_option("--samples", cfg.samples, "Sample count");
        c->add_option("--seed", cfg.seed, "PRNG seed (overrides TAKAGI_SEED)");
        c->add_option("--bits", cfg.bits, "Point bit length, 0 = auto");
        c->add_option("--tol", cfg.tol, "Certified evaluation tolerance");
        c->add_option("--out", cfg.out, "Output path (default stdout or report file)");
        c->add_option("--format", cfg.format, "Report format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        c->add_flag("--no-timestamp", cfg.no_timestamp, "Suppress report timestamp");
        return c;
    };

    CLI::App* eval = add_common(app.add_subcommand("eval", "Tabulate f on a dyadic grid"));
    eval->add_option("--grid", cfg.grid, "Grid size, a power of two");

    add_common(app.add_subcommand("moments", "Tail mean/variance table"));
    add_common(app.add_subcommand("classify", "Rate conditions and differentiability"));
    add_common(app.add_subcommand("sample", "Dump reproducible uniform points"));

    CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->require_subcommand(1);
    const char* suites[] = {"lln", "clt", "lil", "geometric", "appendix", "identities"};
    const char* blurbs[] = {
        "Tail-ratio law of large numbers",      "Central limit of the tail sum",
        "Iterated-logarithm envelope",          "Geometric-coefficient limit law",
        "Stretched-exponential tail brackets",  "Exact evaluation identities"};
    for (int i = 0; i < 6; ++i) {
        CLI::App* s = add_common(verify->add_subcommand(suites[i], blurbs[i]));
        s->add_option("--r", cfg.r, "Geometric ratio");
        s->add_option("--K", cfg.K, "Stretched-exponential rate");
        s->add_option("--beta", cfg.beta, "Stretched-exponential exponent");
        s->add_option("--ks-threshold", cfg.ks_threshold, "KS pass threshold");
        s->add_option("--ks-floor", cfg.ks_floor, "Negative-control KS floor");
        s->add_option("--rel-tol", cfg.rel_tol, "Relative tolerance on mean squares");
        s->add_option("--cdf-tol", cfg.cdf_tol, "CDF pointwise tolerance");
        s->add_option("--cesaro-tol", cfg.cesaro_tol, "Cesaro deviation tolerance");
        s->add_option("--epsilon", cfg.epsilon, "Envelope margin");
        s->add_option("--grid-ratio", cfg.grid_ratio, "Geometric N-grid spacing");
        s->add_option("--max-exceed", cfg.max_exceed, "Max envelope exceedance fraction");
        s->add_option("--min-decay", cfg.min_decay, "Min decaying-path fraction");
        s->add_option("--cesaro-N", cfg.cesaro_N, "Cesaro horizon, 0 disables");
        s->add_option("--cesaro-paths", cfg.cesaro_paths, "Cesaro path count");
        s->add_flag("--negative-control", cfg.negative_control,
                    "Force negative-control gating");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) return cmd_eval(cfg);
        if (app.get_subcommand("moments")->parsed()) return cmd_moments(cfg);
        if (app.get_subcommand("classify")->parsed()) return cmd_classify(cfg);
        if (app.get_subcommand("sample")->parsed()) return cmd_sample(cfg);
        for (const char* s : suites) {
            CLI::App* sub = verify->get_subcommand(s);
            if (sub->parsed()) {
                bool samples_given = sub->count("--samples") > 0;
                return cmd_verify(s, cfg, samples_given);
            }
        }
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const takagi::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const takagi::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const takagi::PrecisionError& e) {
        std::cerr << "precision: " << e.what();
        if (e.required_bits > 0) std::cerr << " (try --bits " << e.required_bits << ")";
        std::cerr << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
