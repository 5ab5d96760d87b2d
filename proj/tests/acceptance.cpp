// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include "cli.hpp"
#include "mcrp/crp.hpp"
#include "mcrp/distribution.hpp"
#include "mcrp/experiments.hpp"
#include "mcrp/factorization.hpp"
#include "mcrp/oracle.hpp"
#include "mcrp/random.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

using namespace mcrp;
namespace ex = mcrp::experiments;

namespace {

struct Verdict {
    bool passed = true;
    std::string detail;
};

int failures = 0;

void criterion(const std::string& name, const std::function<Verdict()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += v.passed ? 0 : 1;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1f s", secs);
    std::cout << (v.passed ? "PASS  " : "FAIL  ") << name << "  [" << v.detail << "; " << timing << "]" << std::endl;
}

std::string fmt(double x, const char* format = "%.4g")
{
    char buf[64];
    std::snprintf(buf, sizeof buf, format, x);
    return buf;
}

const std::vector<Theta> three_thetas{Theta(1, 2), Theta(), Theta(2, 1)};

Verdict factorization_uniqueness()
{
    std::uint64_t words = 0;
    std::uint64_t bad = 0;
    std::string first;
    for (std::uint64_t n = 0; n <= 7; ++n) {
        for (const auto& profile : oracle::compositions(n)) {
            std::map<Word, std::vector<CycleDecomposition>> by_word;
            for (auto& d : oracle::enumerate_decompositions(profile)) {
                by_word[compose(d).one_line()].push_back(std::move(d));
            }
            for (const auto& w : oracle::enumerate_permutations(profile)) {
                ++words;
                const auto p = Permutation::from_word(w, profile);
                const auto d = factorize(p);
                const auto& found = by_word[w];
                if (!(compose(d) == p && found.size() == 1 && found.front() == d)) {
                    if (bad++ == 0) {
                        first = format_word(w);
                    }
                }
            }
        }
    }
    return {bad == 0, std::to_string(words) + " words, " + std::to_string(bad) + " bad" +
                          (bad ? ", first " + first : "")};
}

Verdict exact_law()
{
    std::uint64_t cases = 0;
    std::uint64_t bad = 0;
    for (std::uint64_t n = 0; n <= 6; ++n) {
        for (const auto& profile : oracle::compositions(n)) {
            for (const auto& theta : three_thetas) {
                ++cases;
                const auto law = oracle::exact_law(profile, theta);
                const bool ok = law.normalizer_identity_holds() && law.total() == 1 &&
                                oracle::path_law(profile, theta) == law.probabilities &&
                                law.product_normalizer == normalizer(profile, theta);
                bad += ok ? 0 : 1;
            }
        }
    }
    return {bad == 0, std::to_string(cases) + " (profile, theta) cases, " + std::to_string(bad) + " mismatches"};
}

Verdict sampled_law()
{
    Verdict v;
    const std::vector<std::pair<Theta, std::vector<BigRational>>> cases{
        {Theta(), {BigRational(1, 3), BigRational(1, 3), BigRational(1, 3)}},
        {Theta(2, 1), {BigRational(4, 7), BigRational(2, 7), BigRational(1, 7)}}};
    for (const auto& [theta, masses] : cases) {
        const auto r = ex::run_law_check(Profile({1, 2}), theta, 30000, 20240101);
        bool masses_ok = r.categories.size() == masses.size();
        for (std::size_t i = 0; masses_ok && i < masses.size(); ++i) {
            masses_ok = r.categories[i].probability == masses[i];
        }
        const bool ok = masses_ok && r.chi_square.p_value > 0.001;
        v.passed = v.passed && ok;
        v.detail += (v.detail.empty() ? "" : ", ") + std::string("theta ") + theta.to_string() + ": p = " +
                    fmt(r.chi_square.p_value);
    }
    return v;
}

// Profiles with at most six letters and total size at most 20.
void for_each_sweep_profile(const std::function<void(const Profile&)>& body)
{
    std::vector<std::uint64_t> counts;
    std::function<void(std::uint64_t)> grow = [&](std::uint64_t room) {
        if (!counts.empty()) {
            body(Profile(counts));
        }
        if (counts.size() == 6) {
            return;
        }
        for (std::uint64_t n = 1; n <= room; ++n) {
            counts.push_back(n);
            grow(room - n);
            counts.pop_back();
        }
    };
    grow(20);
}

Verdict negative_hypergeometric()
{
    std::uint64_t checks = 0;
    std::uint64_t bad = 0;
    for_each_sweep_profile([&](const Profile& p) {
        const std::size_t t = p.length();
        const auto general = step_law(t, p, Theta());
        for (std::uint64_t k = 0; k <= p.count(t); ++k) {
            ++checks;
            const NhgParams params{p.prefix(t), p.prefix(t - 1), 1};
            const bool ok = general[k] == uniform_step_pmf(t, p, k) &&
                            general[k] == neg_hypergeom_pmf(params, static_cast<std::int64_t>(k) + 1);
            bad += ok ? 0 : 1;
        }
    });
    return {bad == 0, std::to_string(checks) + " (profile, t, k) triples, " + std::to_string(bad) + " mismatches"};
}

Verdict moment_formulas()
{
    std::uint64_t steps = 0;
    std::uint64_t bad = 0;
    for_each_sweep_profile([&](const Profile& p) {
        const std::size_t t = p.length();
        ++steps;
        const auto closed = x_moments(t, p);
        const auto direct = step_law(t, p, Theta()).moments();
        if (!(closed.mean == direct.mean && closed.variance == direct.variance &&
              closed.third_central == direct.third_central)) {
            ++bad;
        }
    });
    std::uint64_t triples = 0;
    for (std::uint64_t n = 1; n <= 12; ++n) {
        for (std::uint64_t m = 1; m <= n; ++m) {
            for (std::uint64_t r = 1; r <= m; ++r) {
                ++triples;
                const NhgParams params{n, m, r};
                std::vector<BigRational> pmf;
                for (std::int64_t kappa = 0; kappa <= static_cast<std::int64_t>(n) + 1; ++kappa) {
                    pmf.push_back(neg_hypergeom_pmf(params, kappa));
                }
                const auto direct = pmf_moments(pmf);
                const auto closed = neg_hypergeom_moments(params);
                if (!(sum(pmf) == 1 && closed.mean == direct.mean && closed.variance == direct.variance &&
                      closed.third_central == direct.third_central)) {
                    ++bad;
                }
            }
        }
    }
    return {bad == 0, std::to_string(steps) + " step laws, " + std::to_string(triples) + " (N, M, r) triples, " +
                          std::to_string(bad) + " mismatches"};
}

Verdict classical_reduction()
{
    std::uint64_t bad = 0;
    std::uint64_t cases = 0;
    for (const Theta& theta : {Theta(1, 2), Theta(), Theta(2, 1), Theta(7, 3)}) {
        for (std::size_t n = 1; n <= 10; ++n) {
            ++cases;
            const auto profile = Profile::all_ones(n);
            bool ok = true;
            for (std::size_t t = 1; t <= n; ++t) {
                ok = ok && step_normalizer(t, profile, theta) == theta.value() + static_cast<long>(t) - 1;
            }
            const auto pmf = k_pmf(profile, theta);
            const auto pgf = oracle::classical_k_pgf(n, theta);
            for (std::size_t k = 0; k < pgf.size(); ++k) {
                ok = ok && pmf.probability(static_cast<std::int64_t>(k)) == pgf[k];
            }
            ok = ok && pmf.support_max() <= static_cast<std::int64_t>(n);
            bad += ok ? 0 : 1;
        }
    }
    return {bad == 0, std::to_string(cases) + " (n, theta) cases, " + std::to_string(bad) + " mismatches"};
}

Verdict binomial_identity()
{
    RandomSource rng(777);
    std::uint64_t bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t total = 1 + rng.uniform_below(std::uint64_t{1000});
        const std::uint64_t letters = 1 + rng.uniform_below(std::min<std::uint64_t>(total, 40));
        // Random composition of total into `letters` positive parts.
        auto cuts = rng.sorted_subset(total - 1, letters - 1);
        std::vector<std::uint64_t> counts;
        std::uint64_t prev = 0;
        for (auto c : cuts) {
            counts.push_back(c + 1 - prev);
            prev = c + 1;
        }
        counts.push_back(total - prev);
        const Profile p(counts);
        const std::size_t t = 1 + rng.uniform_below(std::uint64_t{letters});
        const BigInt expected =
            binomial(static_cast<std::int64_t>(p.prefix(t)), static_cast<std::int64_t>(p.count(t)));
        bad += step_normalizer(t, p, Theta()) == BigRational(expected) ? 0 : 1;
    }
    return {bad == 0, "1000 random (profile, t) pairs, " + std::to_string(bad) + " mismatches"};
}

Verdict asymptotics()
{
    const auto ones = ex::run_growth(ex::ProfileGenerator::all_ones(), {1000000}).back();
    const auto poly = ex::run_growth(ex::ProfileGenerator::polynomial(1.0, 1.0), {1000000}).back();
    const bool ok = ones.mean_over_log >= 0.95 && ones.mean_over_log <= 1.10 && ones.variance_over_log >= 0.85 &&
                    ones.variance_over_log <= 1.10 && poly.mean_over_scaled_log >= 0.9 &&
                    poly.mean_over_scaled_log <= 1.15;
    return {ok, "n=1: E/log t = " + fmt(ones.mean_over_log) + ", Var/log t = " + fmt(ones.variance_over_log) +
                    "; n_s=s: E/(2 log t) = " + fmt(poly.mean_over_scaled_log)};
}

Verdict clt()
{
    struct Case {
        const char* label;
        ex::ProfileGenerator gen;
        std::size_t t;
        Theta theta;
    };
    const std::vector<Case> cases{{"a", ex::ProfileGenerator::constant(3), 5000, Theta()},
                                  {"b", ex::ProfileGenerator::polynomial(1.0, 1.0), 2000, Theta()},
                                  {"c", ex::ProfileGenerator::constant(2), 5000, Theta(2, 1)}};
    Verdict v;
    for (const auto& c : cases) {
        const auto r = ex::run_clt(c.gen, c.t, c.theta, 10000, 4242);
        const bool ok = !r.degenerate && r.ks.statistic < 0.05;
        v.passed = v.passed && ok;
        v.detail += (v.detail.empty() ? "" : "; ") + std::string("(") + c.label + ") KS = " + fmt(r.ks.statistic) +
                    ", continuity-corrected " + fmt(r.ks_lattice.statistic);
    }
    return v;
}

Verdict lyapunov()
{
    const auto p = ex::ProfileGenerator::polynomial(1.0, 1.0).profile(10000);
    const double a = lyapunov_ratio(p, 100);
    const double b = lyapunov_ratio(p, 1000);
    const double c = lyapunov_ratio(p, 10000);
    return {a > b && b > c, fmt(a) + " > " + fmt(b) + " > " + fmt(c)};
}

Verdict tv_curve()
{
    const auto rows = ex::run_tv_curve(12);
    bool decreasing = true;
    double lo = INFINITY;
    double hi = 0.0;
    double prev = INFINITY;
    for (const auto& r : rows) {
        if (r.n < 16) {
            continue;
        }
        decreasing = decreasing && r.tv < prev;
        prev = r.tv;
        lo = std::min(lo, r.tv_times_log);
        hi = std::max(hi, r.tv_times_log);
    }
    return {decreasing && hi <= 3.0 * lo,
            std::string(decreasing ? "strictly decreasing" : "not decreasing") + ", tv log n in [" + fmt(lo) + ", " +
                fmt(hi) + "]"};
}

Verdict determinism()
{
    auto capture = [](std::vector<std::string> args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return std::to_string(code) + "\n" + out.str();
    };
    const std::vector<std::vector<std::string>> invocations{
        {"sample", "--profile", "3,2,1,4", "--theta", "7/3", "--count", "200", "--seed", "11"},
        {"sample", "--profile", "2,2,3", "--theta", "1/2", "--count", "200", "--seed", "12", "--format", "csv"},
        {"clt", "--profile-gen", "const:2", "--theta", "2", "--t", "300", "--replicates", "2000", "--seed", "13",
         "--format", "csv", "--max-ks", "1"},
        {"clt", "--profile-gen", "poly:1,1", "--t", "300", "--replicates", "2000", "--seed", "14", "--max-ks", "1"},
        {"law-check", "--profile", "1,2,1", "--theta", "3/2", "--replicates", "5000", "--seed", "15"}};
    std::size_t identical = 0;
    for (const auto& args : invocations) {
        const std::string base = capture(args);
        bool same = base == capture(args);
        for (const char* threads : {"2", "4"}) {
            auto threaded = args;
            threaded.insert(threaded.end(), {"--threads", threads});
            same = same && base == capture(threaded);
        }
        identical += same ? 1 : 0;
    }
    const std::vector<std::vector<std::string>> single{
        {"trajectory", "--profile-gen", "const:3", "--checkpoints", "10,100,1000", "--seed", "16"},
        {"kpmf", "--profile", "3,2,1,4", "--theta", "7/3", "--format", "csv"},
        {"growth", "--profile-gen", "poly:1,1", "--checkpoints", "10,1000"}};
    for (const auto& args : single) {
        identical += capture(args) == capture(args) ? 1 : 0;
    }
    const std::size_t total = invocations.size() + single.size();
    return {identical == total, std::to_string(identical) + "/" + std::to_string(total) +
                                    " invocations byte-identical across repeats and thread counts 1, 2, 4"};
}

}  // namespace

int main()
{
    criterion("factorization uniqueness and round trip, all profiles with N <= 7", factorization_uniqueness);
    criterion("exact law theta^cycles / S and normalizer identity, N <= 6, theta in {1/2, 1, 2}", exact_law);
    criterion("sampled law, profile (1,2), theta in {1, 2}, 30000 samples, chi-square p > 0.001", sampled_law);
    criterion("theta = 1 step law: general = closed form = negative hypergeometric, t <= 6, N <= 20",
              negative_hypergeometric);
    criterion("step moment formulas and negative hypergeometric moments, N <= 12", moment_formulas);
    criterion("classical reduction, all-ones n <= 10, theta in {1/2, 1, 2, 7/3}", classical_reduction);
    criterion("F_t(1) = C(N_t, n_t) for 1000 random pairs with N_t <= 1000", binomial_identity);
    criterion("growth of E(K_t) and Var(K_t) at t = 10^6", asymptotics);
    criterion("normal approximation, cases (a) (b) (c), 10^4 replicates, KS < 0.05", clt);
    criterion("Lyapunov ratio decreasing for n_s = s at t = 10^2, 10^3, 10^4", lyapunov);
    criterion("tv to Poisson decreasing for n = 2^4 .. 2^12, tv log n within a factor 3", tv_curve);
    criterion("CLI output deterministic across repeats and thread counts", determinism);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
