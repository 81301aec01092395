#include "takagi/coefficients.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "takagi/errors.hpp"

namespace takagi {

namespace {

double ipow(double x, int p) {
    double out = 1.0;
    for (int i = 0; i < p; ++i) out *= x;
    return out;
}

// r^k for signed r, |r| < 1, k >= 0, magnitude computed on |r| so the
// sign stays exact even when the magnitude underflows.
double signed_pow(double r, long k) {
    double mag = std::pow(std::abs(r), (double)k);
    return (r < 0.0 && (k & 1L)) ? -mag : mag;
}

struct EmTail {
    double value;
    double bound;
};

// sum_{n>=M} n^-s for s > 1 by Euler-Maclaurin through the M^-s-3 term.
// The truncation error lies in [0, B] with
// B = s(s+1)(s+2)(s+3)(s+4)/30240 * M^-s-5, so value is centered at B/2.
EmTail em_power_tail(double M, double s) {
    double Ms = std::pow(M, -s);
    double v = M * Ms / (s - 1.0) + 0.5 * Ms + (s / 12.0) * Ms / M -
               (s * (s + 1.0) * (s + 2.0) / 720.0) * Ms / (M * M * M);
    double B = (s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0) *
               Ms / (M * M * M * M * M);
    return {v + 0.5 * B, 0.5 * B};
}

// C2 with integral_a^inf e^{-K x^beta} dx <= C2 a^{1-beta} e^{-K a^beta}
// for a >= 1, K a^beta >= 1, from repeated integration by parts of the
// substituted integral; the coefficients are the products
// p_i = prod_{j=1}^{i-1} (1/beta - j), evaluated directly (the equivalent
// gamma-function ratio form has poles at integer 1/beta).
double stretch_upper_c2(double K, double beta) {
    double q = 1.0 / beta - 1.0;
    long s = (long)std::ceil(q - 1e-12);
    if (s < 0) s = 0;
    double sum = 0.0, p = 1.0, Kpow = 1.0;
    for (long i = 1; i <= s + 1; ++i) {
        Kpow /= K;
        sum += p * Kpow;
        p *= (1.0 / beta - (double)i);
    }
    return sum / beta;
}

constexpr double kRelTarget = 1e-14;  // certified relative remainder target
constexpr double kTermFloor = 1e-30;  // absolute term cutoff
constexpr long kMaxDirectTerms = 200000000L;

} // namespace

CoefficientSeq CoefficientSeq::power_law(double alpha) {
    if (!(alpha > 1.0)) throw DomainError("power_law requires alpha > 1");
    CoefficientSeq s;
    s.family_ = Family::PowerLaw;
    s.alpha_ = alpha;
    return s;
}

CoefficientSeq CoefficientSeq::stretched_exp(double K, double beta) {
    if (!(K > 0.0)) throw DomainError("stretched_exp requires K > 0");
    if (!(beta > 0.0 && beta <= 1.0))
        throw DomainError("stretched_exp requires 0 < beta <= 1");
    CoefficientSeq s;
    s.family_ = Family::StretchedExp;
    s.K_ = K;
    s.beta_ = beta;
    return s;
}

CoefficientSeq CoefficientSeq::geometric(double r) {
    if (!(std::abs(r) > 0.0 && std::abs(r) < 1.0))
        throw DomainError("geometric requires 0 < |r| < 1");
    CoefficientSeq s;
    s.family_ = Family::Geometric;
    s.r_ = r;
    return s;
}

CoefficientSeq CoefficientSeq::explicit_terms(std::vector<double> terms) {
    if (terms.empty()) throw DomainError("explicit sequence needs at least one term");
    for (double t : terms)
        if (!std::isfinite(t)) throw DomainError("explicit terms must be finite");
    CoefficientSeq s;
    s.family_ = Family::Explicit;
    s.terms_ = std::move(terms);
    return s;
}

CoefficientSeq CoefficientSeq::dyadic_sqrt() {
    CoefficientSeq s;
    s.family_ = Family::DyadicSqrt;
    return s;
}

std::string CoefficientSeq::describe() const {
    char buf[96];
    switch (family_) {
    case Family::PowerLaw:
        std::snprintf(buf, sizeof buf, "powerlaw:alpha=%.17g", alpha_);
        return buf;
    case Family::StretchedExp:
        std::snprintf(buf, sizeof buf, "stretchexp:K=%.17g,beta=%.17g", K_, beta_);
        return buf;
    case Family::Geometric:
        std::snprintf(buf, sizeof buf, "geometric:r=%.17g", r_);
        return buf;
    case Family::DyadicSqrt:
        return "dyadicsqrt";
    case Family::Explicit: {
        std::string out = "explicit:terms=";
        for (size_t i = 0; i < terms_.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", terms_[i]);
            if (i) out += ';';
            out += buf;
        }
        return out;
    }
    }
    return "?";
}

double CoefficientSeq::term(long n) const {
    if (n < 1) throw DomainError("coefficient index must be >= 1");
    switch (family_) {
    case Family::PowerLaw:
        return std::pow((double)n, -alpha_);
    case Family::StretchedExp:
        return std::exp(-K_ * std::pow((double)n, beta_));
    case Family::Geometric:
        return signed_pow(r_, n);
    case Family::DyadicSqrt:
        if (n > 1200) return 0.0; // 2^-n underflows well before this
        return std::ldexp(1.0 / std::sqrt((double)n), (int)-n);
    case Family::Explicit:
        return n <= (long)terms_.size() ? terms_[(size_t)n - 1] : 0.0;
    }
    return 0.0;
}

double CoefficientSeq::term_ratio(long n) const {
    if (n < 1) throw DomainError("coefficient index must be >= 1");
    switch (family_) {
    case Family::PowerLaw:
        return std::pow((double)n / (double)(n + 1), alpha_);
    case Family::StretchedExp:
        return std::exp(-K_ * (std::pow((double)(n + 1), beta_) -
                               std::pow((double)n, beta_)));
    case Family::Geometric:
        return r_;
    case Family::DyadicSqrt:
        return 0.5 * std::sqrt((double)n / (double)(n + 1));
    case Family::Explicit: {
        double cn = term(n);
        if (cn == 0.0) throw DomainError("term ratio undefined at a zero coefficient");
        return term(n + 1) / cn;
    }
    }
    return 0.0;
}

TailSum CoefficientSeq::tail_sum(long N, int p) const {
    if (N < 1) throw DomainError("tail start must be >= 1");
    if (p < 1) throw DomainError("tail power must be >= 1");
    switch (family_) {
    case Family::Geometric: {
        double rp = signed_pow(r_, p);
        double v = signed_pow(r_, (long)p * N) / (1.0 - rp);
        return {v, std::abs(v) * 1e-15 + 1e-305};
    }
    case Family::PowerLaw: {
        double s = p * alpha_;
        long double direct = 0.0L;
        long M = std::max(N, 16L);
        for (long n = N; n < M; ++n) direct += std::pow((long double)n, -(long double)s);
        for (;;) {
            EmTail t = em_power_tail((double)M, s);
            double S = (double)direct + t.value;
            if (t.bound <= kRelTarget * std::abs(S) || M - N > kMaxDirectTerms)
                return {S, t.bound + std::abs(S) * 2e-15};
            long M2 = M * 2;
            for (long n = M; n < M2; ++n)
                direct += std::pow((long double)n, -(long double)s);
            M = M2;
        }
    }
    case Family::StretchedExp: {
        double Kp = p * K_;
        if (beta_ == 1.0) {
            double rp = std::exp(-Kp);
            double v = std::exp(-Kp * (double)N) / (1.0 - rp);
            return {v, v * 1e-15 + 1e-305};
        }
        long double S = 0.0L;
        for (long n = N;; ++n) {
            if (n - N >= kMaxDirectTerms)
                throw PrecisionError("stretched-exponential tail needs too many terms at these parameters");
            double t = std::exp(-Kp * std::pow((double)n, beta_));
            S += t;
            double M = (double)n;
            if (M >= 1.0 && Kp * std::pow(M, beta_) >= 1.0) {
                double R = stretch_upper_c2(Kp, beta_) * std::pow(M, 1.0 - beta_) *
                           std::exp(-Kp * std::pow(M, beta_));
                if (R <= kRelTarget * (double)S || t < kTermFloor)
                    return {(double)S, R + (double)S * 2e-15};
            }
        }
    }
    case Family::DyadicSqrt: {
        long double S = 0.0L;
        for (long n = N;; ++n) {
            double t = ipow(term(n), p);
            S += t;
            double next = ipow(term(n + 1), p);
            double R = next / (1.0 - std::ldexp(1.0, -p));
            if (R <= kRelTarget * (double)S || next < kTermFloor)
                return {(double)S, R + (double)S * 2e-15};
        }
    }
    case Family::Explicit: {
        long double S = 0.0L, A = 0.0L;
        for (long n = std::max(N, 1L); n <= (long)terms_.size(); ++n) {
            double t = ipow(terms_[(size_t)n - 1], p);
            S += t;
            A += std::abs(t);
        }
        return {(double)S, (double)A * (double)terms_.size() * 1e-16};
    }
    }
    return {0.0, 0.0};
}

TailSum CoefficientSeq::tail_sum_abs(long N, int p) const {
    switch (family_) {
    case Family::Geometric: {
        if (N < 1) throw DomainError("tail start must be >= 1");
        double rp = std::pow(std::abs(r_), (double)p);
        double v = std::pow(std::abs(r_), (double)p * (double)N) / (1.0 - rp);
        return {v, v * 1e-15 + 1e-305};
    }
    case Family::Explicit: {
        if (N < 1) throw DomainError("tail start must be >= 1");
        long double S = 0.0L;
        for (long n = std::max(N, 1L); n <= (long)terms_.size(); ++n)
            S += std::abs(ipow(terms_[(size_t)n - 1], p));
        return {(double)S, (double)S * (double)terms_.size() * 1e-16};
    }
    default:
        return tail_sum(N, p); // remaining families are positive
    }
}

double CoefficientSeq::relative_tail_sum(long N, int p) const {
    if (N < 1) throw DomainError("tail start must be >= 1");
    if (p < 1) throw DomainError("tail power must be >= 1");
    switch (family_) {
    case Family::Geometric: {
        double rp = signed_pow(r_, p);
        return 1.0 / (1.0 - rp);
    }
    case Family::PowerLaw: {
        // sum (N/n)^s stays O(1); the Euler-Maclaurin tail is folded through
        // the same (N/M)^s scale so nothing here can over- or underflow.
        double s = p * alpha_;
        long double direct = 0.0L;
        long M = std::max(2 * N, N + 16);
        for (long n = N; n < M; ++n)
            direct += std::pow((long double)N / (long double)n, (long double)s);
        for (;;) {
            double Md = (double)M;
            double xs = std::pow((double)N / Md, s);
            double tailv = xs * (Md / (s - 1.0) + 0.5 + (s / 12.0) / Md -
                                 (s * (s + 1.0) * (s + 2.0) / 720.0) / (Md * Md * Md));
            double B = xs *
                       (s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0) /
                       (Md * Md * Md * Md * Md);
            double S = (double)direct + tailv + 0.5 * B;
            if (0.5 * B <= kRelTarget * S || M - N > kMaxDirectTerms) return S;
            long M2 = M * 2;
            for (long n = M; n < M2; ++n)
                direct += std::pow((long double)N / (long double)n, (long double)s);
            M = M2;
        }
    }
    case Family::StretchedExp: {
        double Kp = p * K_;
        if (beta_ == 1.0) return 1.0 / (1.0 - std::exp(-Kp));
        double base = Kp * std::pow((double)N, beta_);
        long double S = 0.0L;
        for (long n = N;; ++n) {
            if (n - N >= kMaxDirectTerms)
                throw PrecisionError("stretched-exponential tail needs too many terms at these parameters");
            double e = Kp * std::pow((double)n, beta_) - base;
            double t = std::exp(-e);
            S += t;
            double M = (double)n;
            if (M >= 1.0 && Kp * std::pow(M, beta_) >= 1.0) {
                double R = stretch_upper_c2(Kp, beta_) * std::pow(M, 1.0 - beta_) *
                           std::exp(-(Kp * std::pow(M, beta_) - base));
                if (R <= kRelTarget * (double)S || t < kTermFloor) return (double)S;
            }
        }
    }
    case Family::DyadicSqrt: {
        long double S = 0.0L;
        for (long n = N;; ++n) {
            double rel = std::exp2(-(double)(p * (n - N))) *
                         std::pow((double)N / (double)n, p * 0.5);
            S += rel;
            double next = std::exp2(-(double)(p * (n + 1 - N))) *
                          std::pow((double)N / (double)(n + 1), p * 0.5);
            double R = next / (1.0 - std::exp2(-(double)p));
            if (R <= kRelTarget * (double)S || next < kTermFloor) return (double)S;
        }
    }
    case Family::Explicit: {
        double cN = term(N);
        if (cN == 0.0)
            throw DomainError("relative tail undefined: zero coefficient at start");
        long double S = 0.0L;
        for (long n = N; n <= (long)terms_.size(); ++n)
            S += ipow(terms_[(size_t)n - 1] / cN, p);
        return (double)S;
    }
    }
    return 0.0;
}

double CoefficientSeq::sup_term_sq(long N) const {
    if (N < 1) throw DomainError("tail start must be >= 1");
    switch (family_) {
    case Family::PowerLaw:
    case Family::StretchedExp:
    case Family::DyadicSqrt: {
        double c = term(N);
        return c * c;
    }
    case Family::Geometric: {
        double c = std::pow(std::abs(r_), (double)N);
        return c * c;
    }
    case Family::Explicit: {
        double best = 0.0;
        for (long n = N; n <= (long)terms_.size(); ++n) {
            double c = terms_[(size_t)n - 1];
            best = std::max(best, c * c);
        }
        return best;
    }
    }
    return 0.0;
}

namespace {

const long kEvidenceGrid[] = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};

} // namespace

ConditionVerdict CoefficientSeq::check_condition(RateCondition which) const {
    ConditionVerdict out;
    out.condition = which;

    for (long N : kEvidenceGrid) {
        double ratio;
        if (family_ == Family::Explicit) {
            if (N > (long)terms_.size()) break;
            TailSum t1 = tail_sum(N, 1);
            TailSum t2 = tail_sum(N, 2);
            if (t2.value <= 0.0) break;
            switch (which) {
            case RateCondition::WeakLawRatio:
                if (t1.value == 0.0) continue;
                ratio = t2.value / (t1.value * t1.value);
                break;
            case RateCondition::StrongLawExpSum:
                ratio = t1.value * t1.value / t2.value;
                break;
            case RateCondition::CltMaxTerm:
                ratio = sup_term_sq(N) / t2.value;
                break;
            case RateCondition::LilFourthPower: {
                double c = term(N);
                ratio = c * c * c * c / (t2.value * t2.value);
                break;
            }
            }
        } else {
            double rel1 = relative_tail_sum(N, 1);
            double rel2 = relative_tail_sum(N, 2);
            switch (which) {
            case RateCondition::WeakLawRatio:
                ratio = rel2 / (rel1 * rel1);
                break;
            case RateCondition::StrongLawExpSum:
                ratio = rel1 * rel1 / rel2;
                break;
            case RateCondition::CltMaxTerm:
                ratio = 1.0 / rel2;
                break;
            case RateCondition::LilFourthPower:
                ratio = 1.0 / (rel2 * rel2);
                break;
            }
        }
        out.evidence.emplace_back(N, ratio);
    }

    auto holds = [&](bool h, std::string why) {
        out.verdict = h ? Verdict::Holds : Verdict::Fails;
        out.rationale = std::move(why);
    };

    switch (family_) {
    case Family::PowerLaw:
        switch (which) {
        case RateCondition::WeakLawRatio:
            holds(true, "tail2/tail1^2 decays like (alpha-1)^2/((2alpha-1) N) -> 0");
            break;
        case RateCondition::StrongLawExpSum:
            holds(true, "tail1^2/tail2 grows linearly in N, so the exponential series converges for every K > 0");
            break;
        case RateCondition::CltMaxTerm:
            holds(true, "leading-term share c_N^2/tail2 decays like (2alpha-1)/N -> 0");
            break;
        case RateCondition::LilFourthPower:
            holds(true, "summand c_N^4/tail2^2 decays like ((2alpha-1)/N)^2, a convergent series");
            break;
        }
        break;
    case Family::StretchedExp:
        if (beta_ < 1.0) {
            switch (which) {
            case RateCondition::WeakLawRatio:
                holds(true, "tail2/tail1^2 decays like 1/N^(1-beta) -> 0");
                break;
            case RateCondition::StrongLawExpSum:
                holds(true, "tail1^2/tail2 grows like N^(1-beta), so the exponential series converges for every K > 0");
                break;
            case RateCondition::CltMaxTerm:
                holds(true, "leading-term share decays like 1/N^(1-beta) -> 0");
                break;
            case RateCondition::LilFourthPower:
                holds(beta_ < 0.5,
                      beta_ < 0.5
                          ? "summand decays like N^(2beta-2) with 2-2beta > 1, a convergent series"
                          : "summand decays like N^(2beta-2) with 2-2beta <= 1, a divergent series");
                break;
            }
        } else {
            holds(false, "beta = 1 decays at a fixed geometric rate, so every tail ratio stays bounded away from its limit");
        }
        break;
    case Family::Geometric:
        holds(false, "fixed geometric rate: each tail ratio is a nonzero constant in N");
        break;
    case Family::DyadicSqrt:
        holds(false, "decay is geometric (rate 1/2) up to a slowly varying factor; tail ratios converge to nonzero constants");
        break;
    case Family::Explicit:
        out.verdict = Verdict::Inconclusive;
        out.rationale = "finite explicit list: asymptotic behaviour undetermined, numeric evidence only";
        break;
    }
    return out;
}

std::vector<ConditionVerdict> CoefficientSeq::check_all_conditions() const {
    return {check_condition(RateCondition::WeakLawRatio),
            check_condition(RateCondition::StrongLawExpSum),
            check_condition(RateCondition::CltMaxTerm),
            check_condition(RateCondition::LilFourthPower)};
}

DifferentiabilityClass CoefficientSeq::differentiability() const {
    switch (family_) {
    case Family::PowerLaw:
        return DifferentiabilityClass::NowhereDifferentiable; // 2^n c_n -> inf
    case Family::StretchedExp:
        if (beta_ < 1.0)
            return DifferentiabilityClass::NowhereDifferentiable; // 2^n c_n -> inf
        // beta = 1 is geometric with rate exp(-K)
        return 2.0 * std::exp(-K_) < 1.0
                   ? DifferentiabilityClass::AbsolutelyContinuous
                   : DifferentiabilityClass::NowhereDifferentiable;
    case Family::Geometric:
        return std::abs(2.0 * r_) < 1.0
                   ? DifferentiabilityClass::AbsolutelyContinuous
                   : DifferentiabilityClass::NowhereDifferentiable;
    case Family::DyadicSqrt:
        // 2^n c_n = 1/sqrt(n): tends to 0 but its squares sum to infinity
        return DifferentiabilityClass::AEDifferentiableNowhere;
    case Family::Explicit:
        // finitely many nonzero scaled coefficients are square-summable
        return DifferentiabilityClass::AbsolutelyContinuous;
    }
    return DifferentiabilityClass::NowhereDifferentiable;
}

HypothesisStatus CoefficientSeq::check_hypotheses() const {
    HypothesisStatus st;
    if (family_ != Family::Explicit) return st; // positive infinite tails throughout

    long len = (long)terms_.size();
    long last_nonzero = 0;
    for (long n = 1; n <= len; ++n)
        if (terms_[(size_t)n - 1] != 0.0) last_nonzero = n;
    st.tail_square_positive = false;
    st.first_zero_square_N = last_nonzero + 1;

    long double suffix = 0.0L;
    long first_zero_mean = len + 1; // the empty tail always has zero mean
    for (long n = len; n >= 1; --n) {
        suffix += terms_[(size_t)n - 1];
        if ((double)suffix == 0.0) first_zero_mean = n;
    }
    st.tail_mean_nonzero = false;
    st.first_zero_mean_N = first_zero_mean;
    return st;
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_real(const std::string& text, const std::string& what) {
    try {
        size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw ParseError("trailing characters in " + what + ": '" + text + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("cannot parse " + what + ": '" + text + "'");
    }
}

std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& body) {
    std::vector<std::pair<std::string, std::string>> kv;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key=value in sequence spec, got '" + item + "'");
        kv.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
    }
    return kv;
}

} // namespace

CoefficientSeq parse_seq_spec(const std::string& text) {
    std::string spec = trim(text);
    std::string head = spec, body;
    size_t colon = spec.find(':');
    if (colon != std::string::npos) {
        head = trim(spec.substr(0, colon));
        body = spec.substr(colon + 1);
    }
    std::transform(head.begin(), head.end(), head.begin(),
                   [](unsigned char c) { return (char)std::tolower(c); });

    if (head == "powerlaw") {
        auto kv = parse_kv(body);
        if (kv.size() != 1 || kv[0].first != "alpha")
            throw ParseError("powerlaw takes exactly alpha=<real>");
        return CoefficientSeq::power_law(parse_real(kv[0].second, "alpha"));
    }
    if (head == "stretchexp") {
        double K = 0, beta = 0;
        bool haveK = false, haveB = false;
        for (auto& [k, v] : parse_kv(body)) {
            if (k == "K" || k == "k") { K = parse_real(v, "K"); haveK = true; }
            else if (k == "beta") { beta = parse_real(v, "beta"); haveB = true; }
            else throw ParseError("stretchexp: unknown key '" + k + "'");
        }
        if (!haveK || !haveB) throw ParseError("stretchexp needs K=<real>,beta=<real>");
        return CoefficientSeq::stretched_exp(K, beta);
    }
    if (head == "geometric") {
        auto kv = parse_kv(body);
        if (kv.size() != 1 || kv[0].first != "r")
            throw ParseError("geometric takes exactly r=<real>");
        return CoefficientSeq::geometric(parse_real(kv[0].second, "r"));
    }
    if (head == "dyadicsqrt") {
        if (!trim(body).empty()) throw ParseError("dyadicsqrt takes no parameters");
        return CoefficientSeq::dyadic_sqrt();
    }
    if (head == "explicit") {
        auto kv = parse_kv(body);
        if (kv.size() != 1)
            throw ParseError("explicit takes file=<path> or terms=<a;b;...>");
        if (kv[0].first == "file") {
            std::ifstream in(kv[0].second);
            if (!in) throw ParseError("cannot open coefficient file '" + kv[0].second + "'");
            std::vector<double> terms;
            std::string line;
            while (std::getline(in, line)) {
                line = trim(line);
                if (line.empty() || line[0] == '#') continue;
                terms.push_back(parse_real(line, "coefficient"));
            }
            if (terms.empty()) throw ParseError("coefficient file is empty");
            return CoefficientSeq::explicit_terms(std::move(terms));
        }
        if (kv[0].first == "terms") {
            std::vector<double> terms;
            std::stringstream ss(kv[0].second);
            std::string item;
            while (std::getline(ss, item, ';')) {
                item = trim(item);
                if (!item.empty()) terms.push_back(parse_real(item, "coefficient"));
            }
            if (terms.empty()) throw ParseError("explicit:terms= list is empty");
            return CoefficientSeq::explicit_terms(std::move(terms));
        }
        throw ParseError("explicit takes file=<path> or terms=<a;b;...>");
    }
    throw ParseError("unknown sequence family '" + head + "'");
}

std::string to_string(Family f) {
    switch (f) {
    case Family::PowerLaw: return "powerlaw";
    case Family::StretchedExp: return "stretchexp";
    case Family::Geometric: return "geometric";
    case Family::Explicit: return "explicit";
    case Family::DyadicSqrt: return "dyadicsqrt";
    }
    return "?";
}

std::string to_string(RateCondition c) {
    switch (c) {
    case RateCondition::WeakLawRatio: return "weak_law_ratio";
    case RateCondition::StrongLawExpSum: return "strong_law_exp_sum";
    case RateCondition::CltMaxTerm: return "clt_max_term";
    case RateCondition::LilFourthPower: return "lil_fourth_power";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Fails: return "Fails";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string to_string(DifferentiabilityClass d) {
    switch (d) {
    case DifferentiabilityClass::AbsolutelyContinuous: return "AbsolutelyContinuous";
    case DifferentiabilityClass::AEDifferentiableNowhere: return "AEDifferentiableNowhere";
    case DifferentiabilityClass::NowhereDifferentiable: return "NowhereDifferentiable";
    }
    return "?";
}

RateCondition rate_condition_from_string(const std::string& s) {
    if (s == "weak_law_ratio") return RateCondition::WeakLawRatio;
    if (s == "strong_law_exp_sum") return RateCondition::StrongLawExpSum;
    if (s == "clt_max_term") return RateCondition::CltMaxTerm;
    if (s == "lil_fourth_power") return RateCondition::LilFourthPower;
    throw ParseError("unknown rate condition '" + s + "'");
}

} // namespace takagi
