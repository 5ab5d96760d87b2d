#include "mcrp/experiments.hpp"

#include "mcrp/crp.hpp"
#include "mcrp/distribution.hpp"
#include "mcrp/oracle.hpp"
#include "mcrp/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

namespace mcrp::experiments {

ProfileGenerator ProfileGenerator::constant(std::uint64_t n)
{
    if (n < 1) {
        throw std::invalid_argument("constant profile needs n >= 1");
    }
    ProfileGenerator g;
    g.kind_ = Kind::constant;
    g.constant_ = n;
    return g;
}

ProfileGenerator ProfileGenerator::polynomial(double scale, double alpha)
{
    if (!(scale > 0.0) || !(alpha > 0.0)) {
        throw std::invalid_argument("polynomial profile needs C > 0 and alpha > 0");
    }
    ProfileGenerator g;
    g.kind_ = Kind::polynomial;
    g.scale_ = scale;
    g.alpha_ = alpha;
    return g;
}

ProfileGenerator ProfileGenerator::all_ones()
{
    ProfileGenerator g;
    g.kind_ = Kind::all_ones;
    return g;
}

ProfileGenerator ProfileGenerator::explicit_list(std::vector<std::uint64_t> counts)
{
    if (std::find(counts.begin(), counts.end(), 0) != counts.end()) {
        throw std::invalid_argument("generated profiles need n_s >= 1");
    }
    ProfileGenerator g;
    g.kind_ = Kind::explicit_list;
    g.counts_ = std::move(counts);
    return g;
}

namespace {

double parse_double(std::string_view text)
{
    std::string s(text);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) {
        throw std::invalid_argument("malformed number '" + s + "'");
    }
    return v;
}

}  // namespace

ProfileGenerator ProfileGenerator::parse(std::string_view text)
{
    auto colon = text.find(':');
    auto kind = text.substr(0, colon);
    auto args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    if (kind == "ones") {
        return all_ones();
    }
    if (kind == "const") {
        return constant(static_cast<std::uint64_t>(parse_double(args)));
    }
    if (kind == "poly") {
        auto comma = args.find(',');
        if (comma == std::string_view::npos) {
            throw std::invalid_argument("poly generator expects 'poly:C,alpha'");
        }
        return polynomial(parse_double(args.substr(0, comma)), parse_double(args.substr(comma + 1)));
    }
    if (kind == "list") {
        return explicit_list(Profile::parse(args).counts());
    }
    throw std::invalid_argument("unknown profile generator '" + std::string(text) + "'");
}

std::uint64_t ProfileGenerator::count(std::size_t s) const
{
    switch (kind_) {
    case Kind::constant:
        return constant_;
    case Kind::all_ones:
        return 1;
    case Kind::polynomial: {
        const double v = std::floor(scale_ * std::pow(static_cast<double>(s), alpha_));
        return v < 1.0 ? 1 : static_cast<std::uint64_t>(v);
    }
    case Kind::explicit_list:
        return counts_.at(s - 1);
    }
    return 1;
}

std::size_t ProfileGenerator::max_horizon() const
{
    return kind_ == Kind::explicit_list ? counts_.size() : std::numeric_limits<std::size_t>::max();
}

Profile ProfileGenerator::profile(std::size_t horizon) const
{
    if (horizon > max_horizon()) {
        throw std::out_of_range("horizon exceeds the explicit profile length");
    }
    std::vector<std::uint64_t> counts(horizon);
    for (std::size_t s = 1; s <= horizon; ++s) {
        counts[s - 1] = count(s);
    }
    return Profile(std::move(counts));
}

std::string ProfileGenerator::to_string() const
{
    switch (kind_) {
    case Kind::constant:
        return "const:" + std::to_string(constant_);
    case Kind::all_ones:
        return "ones";
    case Kind::polynomial: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "poly:%g,%g", scale_, alpha_);
        return buf;
    }
    case Kind::explicit_list:
        return "list:" + Profile(counts_).to_string();
    }
    return "";
}

std::vector<MomentPoint> moment_path(const Profile& profile, const Theta& theta, std::span<const std::size_t> checkpoints)
{
    std::vector<MomentPoint> out;
    long double mean = 0;
    long double variance = 0;
    std::size_t next = 0;
    const std::size_t last = checkpoints.empty() ? 0 : checkpoints.back();
    if (last > profile.length()) {
        throw std::out_of_range("checkpoint beyond the profile length");
    }
    for (std::size_t t = 0; t <= last && next < checkpoints.size(); ++t) {
        if (t > 0) {
            const Moments m = theta.is_one() ? x_moments(t, profile) : step_law(t, profile, theta).moments();
            mean += to_double(m.mean);
            variance += to_double(m.variance);
        }
        while (next < checkpoints.size() && checkpoints[next] == t) {
            out.push_back({t, static_cast<double>(mean), static_cast<double>(variance)});
            ++next;
        }
    }
    return out;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Runs body(i) for i in [0, count) over `threads` workers with contiguous ranges.
void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& body)
{
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2) {
        for (std::uint64_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> workers;
    const std::uint64_t chunk = (count + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::uint64_t begin = w * chunk;
        const std::uint64_t end = std::min(count, begin + chunk);
        if (begin >= end) {
            break;
        }
        workers.emplace_back([begin, end, &body] {
            for (std::uint64_t i = begin; i < end; ++i) {
                body(i);
            }
        });
    }
    for (auto& w : workers) {
        w.join();
    }
}

void sort_checkpoints(std::vector<std::size_t>& checkpoints)
{
    std::sort(checkpoints.begin(), checkpoints.end());
    checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
}

}  // namespace

LawCheckReport run_law_check(const Profile& profile, const Theta& theta, std::uint64_t replicates, std::uint64_t seed,
                             unsigned threads)
{
    const auto start = std::chrono::steady_clock::now();
    const auto law = oracle::exact_law(profile, theta, oracle::default_factorization_cap);
    std::map<Word, std::size_t> index;
    LawCheckReport report{profile, theta, replicates, seed, {}, {}, 0.0};
    for (const auto& [word, p] : law.probabilities) {
        index.emplace(word, report.categories.size());
        report.categories.push_back({word, 0, p, to_double(p) * static_cast<double>(replicates)});
    }
    const CrpSampler sampler(profile, theta);
    std::vector<std::size_t> outcome(replicates);
    parallel_for(replicates, threads, [&](std::uint64_t i) {
        RandomSource rng(replicate_seed(seed, i));
        outcome[i] = index.at(sampler.sample(rng).permutation().one_line());
    });
    for (auto c : outcome) {
        ++report.categories[c].observed;
    }
    std::vector<std::uint64_t> observed;
    std::vector<double> probabilities;
    for (const auto& c : report.categories) {
        observed.push_back(c.observed);
        probabilities.push_back(to_double(c.probability));
    }
    report.chi_square = stats::chi_square_test(observed, probabilities);
    report.seconds = seconds_since(start);
    return report;
}

CltReport run_clt(const ProfileGenerator& generator, std::size_t horizon, const Theta& theta,
                  std::uint64_t replicates, std::uint64_t seed, unsigned threads, bool keep_values)
{
    const auto start = std::chrono::steady_clock::now();
    const Profile profile = generator.profile(horizon);
    CltReport report;
    report.generator = generator.to_string();
    report.theta = theta;
    report.horizon = horizon;
    report.replicates = replicates;
    report.seed = seed;

    const std::vector<std::size_t> at{horizon};
    const auto theory = moment_path(profile, theta, at).front();
    report.theory_mean = theory.mean;
    report.theory_variance = theory.variance;

    const CycleCountSampler sampler(profile, theta);
    std::vector<std::int64_t> values(replicates);
    parallel_for(replicates, threads, [&](std::uint64_t i) {
        RandomSource rng(replicate_seed(seed, i));
        values[i] = static_cast<std::int64_t>(sampler.sample(rng));
    });

    std::vector<double> as_double(values.begin(), values.end());
    report.sample = stats::sample_moments(as_double);
    report.degenerate = !(report.theory_variance > 0.0);
    if (!report.degenerate) {
        const double sd = std::sqrt(report.theory_variance);
        std::vector<double> standardized;
        standardized.reserve(values.size());
        for (auto v : values) {
            standardized.push_back((static_cast<double>(v) - report.theory_mean) / sd);
        }
        report.ks = stats::ks_normal(standardized);
        report.ks_lattice = stats::ks_normal_lattice(values, report.theory_mean, sd);
    }
    if (keep_values) {
        report.values = std::move(values);
    }
    report.seconds = seconds_since(start);
    return report;
}

std::vector<GrowthRow> run_growth(const ProfileGenerator& generator, std::vector<std::size_t> checkpoints)
{
    sort_checkpoints(checkpoints);
    if (checkpoints.empty()) {
        return {};
    }
    if (checkpoints.front() == 0) {
        throw std::invalid_argument("checkpoints start at t = 1");
    }
    const Profile profile = generator.profile(checkpoints.back());
    const double scale = generator.growth_exponent() + 1.0;
    std::vector<GrowthRow> rows;
    for (const auto& point : moment_path(profile, Theta(1, 1), checkpoints)) {
        GrowthRow row;
        row.t = point.t;
        row.mean = point.mean;
        row.variance = point.variance;
        const double log_t = std::log(static_cast<double>(point.t));
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.mean_over_log = log_t > 0 ? point.mean / log_t : nan;
        row.variance_over_log = log_t > 0 ? point.variance / log_t : nan;
        row.mean_over_scaled_log = log_t > 0 ? point.mean / (scale * log_t) : nan;
        row.variance_over_scaled_log = log_t > 0 ? point.variance / (scale * log_t) : nan;
        rows.push_back(row);
    }
    return rows;
}

std::vector<TrajectoryRow> run_trajectory(const ProfileGenerator& generator, const Theta& theta, std::uint64_t seed,
                                          std::vector<std::size_t> checkpoints)
{
    sort_checkpoints(checkpoints);
    if (checkpoints.empty()) {
        return {};
    }
    if (checkpoints.front() == 0) {
        throw std::invalid_argument("checkpoints start at t = 1");
    }
    const Profile profile = generator.profile(checkpoints.back());
    const auto expected = moment_path(profile, theta, checkpoints);
    const CrpSampler sampler(profile, theta);
    RandomSource rng(seed);
    CrpState state(profile);
    std::vector<TrajectoryRow> rows;
    std::size_t next = 0;
    while (next < checkpoints.size()) {
        state = sampler.step(std::move(state), rng);
        if (state.step == checkpoints[next]) {
            TrajectoryRow row;
            row.t = state.step;
            row.cycles = state.cycle_count();
            row.expected = expected[next].mean;
            row.ratio = static_cast<double>(row.cycles) / row.expected;
            const double log_t = std::log(static_cast<double>(row.t));
            row.cycles_over_log = log_t > 0 ? static_cast<double>(row.cycles) / log_t
                                            : std::numeric_limits<double>::quiet_NaN();
            rows.push_back(row);
            ++next;
        }
    }
    return rows;
}

std::vector<TvRow> run_tv_curve(unsigned max_exponent)
{
    std::vector<TvRow> rows;
    for (unsigned e = 2; e <= max_exponent; ++e) {
        const std::size_t n = std::size_t{1} << e;
        const double tv = tv_poisson(Profile::all_ones(n), Theta(1, 1));
        rows.push_back({n, tv, tv * std::log(static_cast<double>(n))});
    }
    return rows;
}

}  // namespace mcrp::experiments
