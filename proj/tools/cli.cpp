#include "cli.hpp"

#include "mcrp/crp.hpp"
#include "mcrp/distribution.hpp"
#include "mcrp/experiments.hpp"
#include "mcrp/factorization.hpp"
#include "mcrp/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <thread>

namespace mcrp::cli {

namespace {

using json = nlohmann::ordered_json;
namespace ex = mcrp::experiments;

class CheckFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string num(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::size_t> parse_sizes(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() || item.front() == '-') {
            throw ValidationError("malformed size '" + item + "'");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

std::vector<Theta> parse_thetas(const std::string& text)
{
    std::vector<Theta> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        out.push_back(Theta::parse(item));
    }
    return out;
}

std::pair<double, double> parse_band(const std::string& text)
{
    auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw ValidationError("band expects 'lo,hi'");
    }
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

json rationals(const std::vector<BigRational>& values)
{
    json arr = json::array();
    for (const auto& v : values) {
        arr.push_back(to_string(v));
    }
    return arr;
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed)
{
    for (auto a : allowed) {
        if (format == a) {
            return;
        }
    }
    throw ValidationError("unsupported format '" + format + "'");
}

struct Options {
    std::string profile;
    std::string theta = "1";
    std::string format = "json";
    std::string generator;
    std::string checkpoints;
    std::string word;
    std::string cycles;
    std::string thetas = "1/2,1,2";
    std::string band;
    std::uint64_t count = 1;
    std::uint64_t seed = 0;
    std::uint64_t replicates = 10000;
    std::uint64_t max_size = 7;
    std::size_t horizon = 0;
    unsigned threads = 1;
    unsigned max_exponent = 12;
    double max_ks = 0.05;
    double min_p = 0.001;
    bool lattice = false;
};

void cmd_sample(const Options& o, std::ostream& out)
{
    check_format(o.format, {"json", "csv", "words"});
    const CrpSampler sampler(Profile::parse(o.profile), Theta::parse(o.theta));
    std::vector<CrpState> samples(o.count, CrpState(sampler.profile()));
    std::vector<std::thread> workers;
    const unsigned threads = std::max(1u, o.threads);
    for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
            for (std::uint64_t i = w; i < o.count; i += threads) {
                RandomSource rng(replicate_seed(o.seed, i));
                samples[i] = sampler.sample(rng);
            }
        });
    }
    for (auto& w : workers) {
        w.join();
    }
    if (o.format == "words") {
        for (const auto& s : samples) {
            out << format_word(s.permutation().one_line()) << "\n";
        }
        return;
    }
    if (o.format == "csv") {
        out << "index,word,cycles,cycle_count,step_counts\n";
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const auto& s = samples[i];
            std::vector<Letter> ks(s.step_counts.begin(), s.step_counts.end());
            out << i << "," << format_word(s.permutation().one_line()) << "," << format_decomposition(s.decomposition)
                << "," << s.cycle_count() << "," << format_word(ks) << "\n";
        }
        return;
    }
    json doc{{"profile", sampler.profile().to_string()}, {"theta", sampler.theta().to_string()}, {"seed", o.seed}};
    json arr = json::array();
    for (const auto& s : samples) {
        arr.push_back({{"word", format_word(s.permutation().one_line())},
                       {"cycles", format_decomposition(s.decomposition)},
                       {"cycle_count", s.cycle_count()},
                       {"step_counts", s.step_counts}});
    }
    doc["samples"] = std::move(arr);
    out << doc.dump(2) << "\n";
}

void cmd_factorize(const Options& o, std::ostream& out)
{
    check_format(o.format, {"json", "text"});
    const Word word = parse_word(o.word);
    const Profile profile = o.profile.empty() ? profile_of(word) : Profile::parse(o.profile);
    const auto d = factorize(Permutation::from_word(word, profile));
    if (o.format == "text") {
        out << format_decomposition(d) << "\n";
        return;
    }
    json doc{{"word", format_word(word)}, {"cycles", format_decomposition(d)}, {"cycle_count", d.size()}};
    out << doc.dump(2) << "\n";
}

void cmd_compose(const Options& o, std::ostream& out)
{
    check_format(o.format, {"json", "text"});
    const auto d = parse_decomposition(o.cycles);
    const auto p = compose(d);
    if (o.format == "text") {
        out << format_word(p.one_line()) << "\n";
        return;
    }
    json doc{{"cycles", format_decomposition(d)}, {"word", format_word(p.one_line())}, {"profile", p.profile().to_string()}};
    out << doc.dump(2) << "\n";
}

void cmd_kpmf(const Options& o, std::ostream& out)
{
    check_format(o.format, {"json", "csv"});
    const auto pmf = k_pmf(Profile::parse(o.profile), Theta::parse(o.theta));
    if (o.format == "csv") {
        out << "k,probability,approx\n";
        for (std::size_t i = 0; i < pmf.probabilities.size(); ++i) {
            out << pmf.support_min + static_cast<std::int64_t>(i) << "," << to_string(pmf.probabilities[i]) << ","
                << num(to_double(pmf.probabilities[i])) << "\n";
        }
        return;
    }
    json doc{{"support_min", pmf.support_min}, {"probabilities", rationals(pmf.probabilities)}};
    out << doc.dump(2) << "\n";
}

void cmd_moments(const Options& o, std::ostream& out)
{
    check_format(o.format, {"json", "csv"});
    const Profile profile = Profile::parse(o.profile);
    const Theta theta = Theta::parse(o.theta);
    const Moments k = theta.is_one() ? k_moments(profile) : k_moments(profile, theta);
    if (o.format == "csv") {
        out << "t,mean_x,variance_x,third_x\n";
        for (std::size_t t = 1; t <= profile.length(); ++t) {
            const Moments m = theta.is_one() ? x_moments(t, profile) : step_law(t, profile, theta).moments();
            out << t << "," << to_string(m.mean) << "," << to_string(m.variance) << "," << to_string(m.third_central)
                << "\n";
        }
        return;
    }
    json doc{{"profile", profile.to_string()},
             {"theta", theta.to_string()},
             {"mean", to_string(k.mean)},
             {"variance", to_string(k.variance)},
             {"third_central", to_string(k.third_central)},
             {"mean_approx", to_double(k.mean)},
             {"variance_approx", to_double(k.variance)}};
    out << doc.dump(2) << "\n";
}

void cmd_tv_poisson(const Options& o, std::ostream& out)
{
    check_format(o.format, {"json", "text"});
    const Profile profile = Profile::parse(o.profile);
    const double tv = tv_poisson(profile, Theta::parse(o.theta));
    if (o.format == "text") {
        out << num(tv) << "\n";
        return;
    }
    out << json{{"profile", profile.to_string()}, {"theta", o.theta}, {"tv_poisson", tv}}.dump(2) << "\n";
}

void cmd_lyapunov(const Options& o, std::ostream& out)
{
    check_format(o.format, {"json", "csv"});
    const auto generator = ex::ProfileGenerator::parse(o.generator);
    auto ts = parse_sizes(o.checkpoints);
    std::sort(ts.begin(), ts.end());
    const Profile profile = generator.profile(ts.empty() ? 0 : ts.back());
    if (o.format == "csv") {
        out << "t,lyapunov_ratio\n";
        for (auto t : ts) {
            out << t << "," << num(lyapunov_ratio(profile, t)) << "\n";
        }
        return;
    }
    json rows = json::array();
    for (auto t : ts) {
        rows.push_back({{"t", t}, {"lyapunov_ratio", lyapunov_ratio(profile, t)}});
    }
    out << json{{"generator", generator.to_string()}, {"rows", rows}}.dump(2) << "\n";
}

void cmd_verify(const Options& o, std::ostream& out)
{
    const auto report = oracle::run_verification(o.max_size, parse_thetas(o.thetas));
    for (const auto& check : report.checks) {
        out << (check.passed() ? "PASS " : "FAIL ") << check.name << " (" << check.cases << " cases, "
            << check.failures << " failures)\n";
        for (const auto& c : check.counterexamples) {
            out << "  counterexample: " << c << "\n";
        }
    }
    if (!report.passed()) {
        throw CheckFailed("verification failed");
    }
}

void cmd_clt(const Options& o, std::ostream& out, std::ostream& err)
{
    check_format(o.format, {"json", "csv"});
    const auto generator = ex::ProfileGenerator::parse(o.generator);
    const auto report = ex::run_clt(generator, o.horizon, Theta::parse(o.theta), o.replicates, o.seed, o.threads,
                                    o.format == "csv");
    err << "clt: " << report.seconds << " s\n";
    const double gated = o.lattice ? report.ks_lattice.statistic : report.ks.statistic;
    if (o.format == "csv") {
        out << "replicate,cycles,standardized\n";
        const double sd = std::sqrt(report.theory_variance);
        for (std::size_t i = 0; i < report.values.size(); ++i) {
            const double z = report.degenerate ? NAN : (static_cast<double>(report.values[i]) - report.theory_mean) / sd;
            out << i << "," << report.values[i] << "," << num(z) << "\n";
        }
    } else {
        json doc{{"generator", report.generator},
                 {"theta", report.theta.to_string()},
                 {"t", report.horizon},
                 {"replicates", report.replicates},
                 {"seed", report.seed},
                 {"theory_mean", report.theory_mean},
                 {"theory_variance", report.theory_variance},
                 {"sample_mean", report.sample.mean},
                 {"sample_variance", report.sample.variance},
                 {"sample_skewness", report.sample.skewness},
                 {"ks_statistic", report.ks.statistic},
                 {"ks_p_value", report.ks.p_value},
                 {"ks_lattice_statistic", report.ks_lattice.statistic},
                 {"ks_lattice_p_value", report.ks_lattice.p_value},
                 {"degenerate", report.degenerate},
                 {"max_ks", o.max_ks},
                 {"gate", o.lattice ? "lattice" : "plain"},
                 {"passed", !report.degenerate && gated < o.max_ks}};
        out << doc.dump(2) << "\n";
    }
    if (report.degenerate) {
        throw CheckFailed("degenerate: Var(K_t) = 0, standardization undefined");
    }
    if (!(gated < o.max_ks)) {
        throw CheckFailed("KS distance " + num(gated) + " >= " + num(o.max_ks));
    }
}

void cmd_growth(const Options& o, std::ostream& out)
{
    check_format(o.format, {"json", "csv"});
    const auto generator = ex::ProfileGenerator::parse(o.generator);
    const auto rows = ex::run_growth(generator, parse_sizes(o.checkpoints));
    if (o.format == "csv") {
        out << "t,mean,variance,mean_over_log,variance_over_log,mean_over_scaled_log,variance_over_scaled_log\n";
        for (const auto& r : rows) {
            out << r.t << "," << num(r.mean) << "," << num(r.variance) << "," << num(r.mean_over_log) << ","
                << num(r.variance_over_log) << "," << num(r.mean_over_scaled_log) << ","
                << num(r.variance_over_scaled_log) << "\n";
        }
    } else {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"t", r.t},
                           {"mean", r.mean},
                           {"variance", r.variance},
                           {"mean_over_log", r.mean_over_log},
                           {"variance_over_log", r.variance_over_log},
                           {"mean_over_scaled_log", r.mean_over_scaled_log},
                           {"variance_over_scaled_log", r.variance_over_scaled_log}});
        }
        out << json{{"generator", generator.to_string()}, {"rows", arr}}.dump(2) << "\n";
    }
    if (!o.band.empty() && !rows.empty()) {
        auto [lo, hi] = parse_band(o.band);
        const double r = rows.back().mean_over_scaled_log;
        if (!(r >= lo && r <= hi)) {
            throw CheckFailed("E(K_t) / ((alpha+1) log t) = " + num(r) + " outside [" + num(lo) + ", " + num(hi) + "]");
        }
    }
}

void cmd_trajectory(const Options& o, std::ostream& out)
{
    check_format(o.format, {"json", "csv"});
    const auto generator = ex::ProfileGenerator::parse(o.generator);
    const auto rows = ex::run_trajectory(generator, Theta::parse(o.theta), o.seed, parse_sizes(o.checkpoints));
    if (o.format == "csv") {
        out << "t,cycles,expected,ratio,cycles_over_log\n";
        for (const auto& r : rows) {
            out << r.t << "," << r.cycles << "," << num(r.expected) << "," << num(r.ratio) << ","
                << num(r.cycles_over_log) << "\n";
        }
    } else {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"t", r.t},
                           {"cycles", r.cycles},
                           {"expected", r.expected},
                           {"ratio", r.ratio},
                           {"cycles_over_log", r.cycles_over_log}});
        }
        out << json{{"generator", generator.to_string()}, {"theta", o.theta}, {"seed", o.seed}, {"rows", arr}}.dump(2)
            << "\n";
    }
    if (!o.band.empty() && !rows.empty()) {
        auto [lo, hi] = parse_band(o.band);
        const double r = rows.back().ratio;
        if (!(r >= lo && r <= hi)) {
            throw CheckFailed("K_t / E(K_t) = " + num(r) + " outside [" + num(lo) + ", " + num(hi) + "]");
        }
    }
}

void cmd_tv_curve(const Options& o, std::ostream& out)
{
    check_format(o.format, {"json", "csv"});
    if (o.max_exponent > 14) {
        throw ValidationError("max exponent is at most 14");
    }
    const auto rows = ex::run_tv_curve(o.max_exponent);
    if (o.format == "csv") {
        out << "n,tv,tv_times_log_n\n";
        for (const auto& r : rows) {
            out << r.n << "," << num(r.tv) << "," << num(r.tv_times_log) << "\n";
        }
    } else {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"n", r.n}, {"tv", r.tv}, {"tv_times_log_n", r.tv_times_log}});
        }
        out << json{{"rows", arr}}.dump(2) << "\n";
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (!(rows[i].tv < rows[i - 1].tv)) {
            throw CheckFailed("tv not strictly decreasing at n = " + std::to_string(rows[i].n));
        }
    }
}

void cmd_law_check(const Options& o, std::ostream& out, std::ostream& err)
{
    check_format(o.format, {"json", "csv"});
    const auto report =
        ex::run_law_check(Profile::parse(o.profile), Theta::parse(o.theta), o.replicates, o.seed, o.threads);
    err << "law-check: " << report.seconds << " s\n";
    if (o.format == "csv") {
        out << "word,observed,expected,probability\n";
        for (const auto& c : report.categories) {
            out << format_word(c.word) << "," << c.observed << "," << num(c.expected) << "," << to_string(c.probability)
                << "\n";
        }
    } else {
        json arr = json::array();
        for (const auto& c : report.categories) {
            arr.push_back({{"word", format_word(c.word)},
                           {"observed", c.observed},
                           {"expected", c.expected},
                           {"probability", to_string(c.probability)}});
        }
        json doc{{"profile", report.profile.to_string()},
                 {"theta", report.theta.to_string()},
                 {"replicates", report.replicates},
                 {"seed", report.seed},
                 {"chi_square", report.chi_square.statistic},
                 {"dof", report.chi_square.dof},
                 {"p_value", report.chi_square.p_value},
                 {"min_p", o.min_p},
                 {"passed", report.chi_square.p_value > o.min_p},
                 {"categories", arr}};
        out << doc.dump(2) << "\n";
    }
    if (!(report.chi_square.p_value > o.min_p)) {
        throw CheckFailed("chi-square p-value " + num(report.chi_square.p_value) + " <= " + num(o.min_p));
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Multiset Chinese restaurant process: sampling, exact laws and checks", "mcrp"};
    app.require_subcommand(1);
    Options o;

    auto add_profile = [&](CLI::App* sub, bool required = true) {
        auto opt = sub->add_option("--profile", o.profile, "Multiplicities, e.g. 3,2,1,4");
        if (required) {
            opt->required();
        }
    };
    auto add_theta = [&](CLI::App* sub) { sub->add_option("--theta", o.theta, "Weight theta as p/q")->capture_default_str(); };
    auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "64-bit master seed")->capture_default_str(); };
    auto add_threads = [&](CLI::App* sub) {
        sub->add_option("--threads", o.threads, "Worker threads (output does not depend on it)")->capture_default_str();
    };

    auto* sample = app.add_subcommand("sample", "Sample permutations from the process");
    add_profile(sample);
    add_theta(sample);
    sample->add_option("--count", o.count, "Number of samples")->capture_default_str();
    add_seed(sample);
    add_threads(sample);
    sample->add_option("--format", o.format, "json|csv|words")->capture_default_str();

    auto* fact = app.add_subcommand("factorize", "Factor a word into cycles");
    fact->add_option("--word", o.word, "One-line word, e.g. \"3 1 2 4\"")->required();
    add_profile(fact, false);
    fact->add_option("--format", o.format, "json|text")->capture_default_str();

    auto* comp = app.add_subcommand("compose", "Intercalate cycles into a word");
    comp->add_option("--cycles", o.cycles, "Cycles, e.g. \"(3 1)(1)\"")->required();
    comp->add_option("--format", o.format, "json|text")->capture_default_str();

    auto* kpmf = app.add_subcommand("kpmf", "Exact law of the cycle count");
    add_profile(kpmf);
    add_theta(kpmf);
    kpmf->add_option("--format", o.format, "json|csv")->capture_default_str();

    auto* moments = app.add_subcommand("moments", "Exact moments of the cycle count");
    add_profile(moments);
    add_theta(moments);
    moments->add_option("--format", o.format, "json|csv")->capture_default_str();

    auto* tv = app.add_subcommand("tv-poisson", "Total variation distance to Poisson(E K)");
    add_profile(tv);
    add_theta(tv);
    tv->add_option("--format", o.format, "json|text")->capture_default_str();

    auto* lyap = app.add_subcommand("lyapunov", "Lyapunov ratio at theta = 1");
    lyap->add_option("--profile-gen", o.generator, "ones | const:n | poly:C,alpha | list:...")->required();
    lyap->add_option("--t", o.checkpoints, "Comma-separated horizons")->required();
    lyap->add_option("--format", o.format, "json|csv")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Run the brute-force oracle suite");
    verify->add_option("--max-size", o.max_size, "Largest profile size")->capture_default_str();
    verify->add_option("--thetas", o.thetas, "Comma-separated theta values")->capture_default_str();

    auto* clt = app.add_subcommand("clt", "Normal approximation of the standardized cycle count");
    clt->add_option("--profile-gen", o.generator, "ones | const:n | poly:C,alpha | list:...")->required();
    clt->add_option("--t", o.horizon, "Horizon t")->required();
    add_theta(clt);
    clt->add_option("--replicates", o.replicates, "Replicates")->capture_default_str();
    add_seed(clt);
    add_threads(clt);
    clt->add_option("--max-ks", o.max_ks, "Fail when the KS distance reaches this")->capture_default_str();
    clt->add_flag("--lattice", o.lattice, "Gate on the continuity-corrected lattice KS distance");
    clt->add_option("--format", o.format, "json|csv")->capture_default_str();

    auto* growth = app.add_subcommand("growth", "E(K_t) and Var(K_t) against log t at theta = 1");
    growth->add_option("--profile-gen", o.generator, "ones | const:n | poly:C,alpha | list:...")->required();
    growth->add_option("--checkpoints", o.checkpoints, "Comma-separated t values")->required();
    growth->add_option("--band", o.band, "lo,hi for the final E(K_t)/((alpha+1) log t)");
    growth->add_option("--format", o.format, "json|csv")->capture_default_str();

    auto* traj = app.add_subcommand("trajectory", "One sampled path: K_t / E(K_t)");
    traj->add_option("--profile-gen", o.generator, "ones | const:n | poly:C,alpha | list:...")->required();
    traj->add_option("--checkpoints", o.checkpoints, "Comma-separated t values")->required();
    add_theta(traj);
    add_seed(traj);
    traj->add_option("--band", o.band, "lo,hi for the final ratio");
    traj->add_option("--format", o.format, "json|csv")->capture_default_str();

    auto* tvc = app.add_subcommand("tv-curve", "tv_poisson for n = 4 .. 2^j at theta = 1");
    tvc->add_option("--max-exponent", o.max_exponent, "j <= 14")->capture_default_str();
    tvc->add_option("--format", o.format, "json|csv")->capture_default_str();

    auto* law = app.add_subcommand("law-check", "Chi-square test of sampled words against the exact law");
    add_profile(law);
    add_theta(law);
    law->add_option("--replicates", o.replicates, "Samples")->capture_default_str();
    add_seed(law);
    add_threads(law);
    law->add_option("--min-p", o.min_p, "Fail when the p-value is at or below this")->capture_default_str();
    law->add_option("--format", o.format, "json|csv")->capture_default_str();

    std::vector<const char*> argv{"mcrp"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (*sample) {
            cmd_sample(o, out);
        } else if (*fact) {
            cmd_factorize(o, out);
        } else if (*comp) {
            cmd_compose(o, out);
        } else if (*kpmf) {
            cmd_kpmf(o, out);
        } else if (*moments) {
            cmd_moments(o, out);
        } else if (*tv) {
            cmd_tv_poisson(o, out);
        } else if (*lyap) {
            cmd_lyapunov(o, out);
        } else if (*verify) {
            cmd_verify(o, out);
        } else if (*clt) {
            cmd_clt(o, out, err);
        } else if (*growth) {
            cmd_growth(o, out);
        } else if (*traj) {
            cmd_trajectory(o, out);
        } else if (*tvc) {
            cmd_tv_curve(o, out);
        } else if (*law) {
            cmd_law_check(o, out, err);
        }
    } catch (const CheckFailed& e) {
        err << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace mcrp::cli
