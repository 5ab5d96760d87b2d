#ifndef MCRP_EXPERIMENTS_HPP
#define MCRP_EXPERIMENTS_HPP

#include "mcrp/core.hpp"
#include "mcrp/rational.hpp"
#include "mcrp/stats.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mcrp::experiments {

/// Multiplicity sequences n_1, ..., n_t used by the Monte Carlo checks.
class ProfileGenerator {
public:
    enum class Kind { constant, polynomial, all_ones, explicit_list };

    static ProfileGenerator constant(std::uint64_t n);
    /// n_s = floor(C s^alpha), raised to 1 when the floor is 0.
    static ProfileGenerator polynomial(double scale, double alpha);
    static ProfileGenerator all_ones();
    static ProfileGenerator explicit_list(std::vector<std::uint64_t> counts);

    /// "const:3", "poly:1,1" (C,alpha), "ones", "list:3,2,1,4".
    static ProfileGenerator parse(std::string_view text);

    Kind kind() const { return kind_; }
    /// n_s for s >= 1.
    std::uint64_t count(std::size_t s) const;
    Profile profile(std::size_t horizon) const;
    /// Exponent alpha for polynomial profiles, 0 otherwise.
    double growth_exponent() const { return kind_ == Kind::polynomial ? alpha_ : 0.0; }
    /// Largest usable horizon (the list length for explicit lists).
    std::size_t max_horizon() const;
    std::string to_string() const;

private:
    Kind kind_ = Kind::all_ones;
    std::uint64_t constant_ = 1;
    double scale_ = 1.0;
    double alpha_ = 0.0;
    std::vector<std::uint64_t> counts_;
};

/// Running E(K_t) and Var(K_t) in floating point, accumulated from exact per-step moments.
struct MomentPoint {
    std::size_t t = 0;
    double mean = 0.0;
    double variance = 0.0;
};

/// Values at each requested checkpoint (sorted ascending, each <= profile length).
std::vector<MomentPoint> moment_path(const Profile& profile, const Theta& theta, std::span<const std::size_t> checkpoints);

struct LawCategory {
    Word word;
    std::uint64_t observed = 0;
    BigRational probability;
    double expected = 0.0;
};

struct LawCheckReport {
    Profile profile;
    Theta theta;
    std::uint64_t replicates = 0;
    std::uint64_t seed = 0;
    std::vector<LawCategory> categories;
    stats::ChiSquareResult chi_square;
    double seconds = 0.0;
};

/// Samples `replicates` permutations and tests them against the exact law.
LawCheckReport run_law_check(const Profile& profile, const Theta& theta, std::uint64_t replicates, std::uint64_t seed,
                             unsigned threads = 1);

struct CltReport {
    std::string generator;
    Theta theta;
    std::size_t horizon = 0;
    std::uint64_t replicates = 0;
    std::uint64_t seed = 0;
    double theory_mean = 0.0;
    double theory_variance = 0.0;
    stats::SampleMoments sample;
    /// Sup distance between the empirical CDF of the standardized values and Phi.
    stats::KsResult ks;
    /// Same comparison against the continuity-corrected normal, at lattice points only.
    stats::KsResult ks_lattice;
    bool degenerate = false;
    std::vector<std::int64_t> values;
    double seconds = 0.0;
};

/// Samples K_t independently `replicates` times and compares the standardized
/// values with N(0, 1). Replicate i uses seed replicate_seed(seed, i).
CltReport run_clt(const ProfileGenerator& generator, std::size_t horizon, const Theta& theta,
                  std::uint64_t replicates, std::uint64_t seed, unsigned threads = 1, bool keep_values = false);

struct GrowthRow {
    std::size_t t = 0;
    double mean = 0.0;
    double variance = 0.0;
    double mean_over_log = 0.0;
    double variance_over_log = 0.0;
    /// Ratios to (alpha + 1) log t.
    double mean_over_scaled_log = 0.0;
    double variance_over_scaled_log = 0.0;
};

/// E(K_t), Var(K_t) at theta = 1 and their ratios to log t.
std::vector<GrowthRow> run_growth(const ProfileGenerator& generator, std::vector<std::size_t> checkpoints);

struct TrajectoryRow {
    std::size_t t = 0;
    std::uint64_t cycles = 0;
    double expected = 0.0;
    double ratio = 0.0;
    double cycles_over_log = 0.0;
};

/// One sampled path of the full process, with K_t / E(K_t) at each checkpoint.
std::vector<TrajectoryRow> run_trajectory(const ProfileGenerator& generator, const Theta& theta, std::uint64_t seed,
                                          std::vector<std::size_t> checkpoints);

struct TvRow {
    std::size_t n = 0;
    double tv = 0.0;
    double tv_times_log = 0.0;
};

/// tv_poisson for all-ones profiles n = 4, 8, ..., 2^max_exponent at theta = 1.
std::vector<TvRow> run_tv_curve(unsigned max_exponent);

}  // namespace mcrp::experiments

#endif  // MCRP_EXPERIMENTS_HPP
