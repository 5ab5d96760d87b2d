#include "mcrp/verify.hpp"

#include "mcrp/crp.hpp"
#include "mcrp/distribution.hpp"
#include "mcrp/oracle.hpp"

#include <algorithm>
#include <map>

namespace mcrp::oracle {

namespace {

constexpr std::size_t max_counterexamples = 5;

void record(CheckResult& check, bool ok, const std::string& what)
{
    ++check.cases;
    if (!ok) {
        ++check.failures;
        if (check.counterexamples.size() < max_counterexamples) {
            check.counterexamples.push_back(what);
        }
    }
}

std::string label(const Profile& profile, const Theta* theta = nullptr)
{
    std::string out = "profile (" + profile.to_string() + ")";
    if (theta) {
        out += " theta " + theta->to_string();
    }
    return out;
}

}  // namespace

bool VerifyReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

VerifyReport run_verification(std::uint64_t max_size, const std::vector<Theta>& thetas)
{
    VerifyReport report{max_size, thetas, {}};
    CheckResult factorization{"factorization round trip and uniqueness", 0, 0, {}};
    CheckResult law{"process path law equals theta^cycles / S", 0, 0, {}};
    CheckResult identity{"sum of theta^cycles equals product of F_s", 0, 0, {}};
    CheckResult cycle_law{"k_pmf equals enumerated cycle-count law", 0, 0, {}};
    CheckResult step_forms{"theta = 1 step law: general, closed and negative hypergeometric forms agree", 0, 0, {}};

    for (std::uint64_t size = 0; size <= max_size; ++size) {
        for (const auto& profile : compositions(size)) {
            if (size <= default_factorization_cap) {
                std::map<Word, std::vector<CycleDecomposition>> found;
                for (auto& d : enumerate_decompositions(profile)) {
                    found[compose(d).one_line()].push_back(std::move(d));
                }
                for (const auto& word : enumerate_permutations(profile, max_size)) {
                    const auto p = Permutation::from_word(word, profile);
                    const auto d = factorize(p);
                    const auto& candidates = found[word];
                    const bool ok = compose(d) == p && candidates.size() == 1 && candidates.front() == d;
                    record(factorization, ok,
                           "word " + format_word(word) + ": factorize gives " + format_decomposition(d) + ", search finds " +
                               std::to_string(candidates.size()));
                }
            }
            for (const auto& theta : thetas) {
                const auto exact = exact_law(profile, theta, max_size);
                record(identity, exact.normalizer_identity_holds(),
                       label(profile, &theta) + ": enumerated " + to_string(exact.enumerated_weight) + " vs product " +
                           to_string(exact.product_normalizer));
                const auto paths = path_law(profile, theta, max_size);
                bool same = paths.size() == exact.probabilities.size();
                for (const auto& [word, p] : exact.probabilities) {
                    auto it = paths.find(word);
                    const bool ok = it != paths.end() && it->second == p;
                    same = same && ok;
                    if (!ok && law.counterexamples.size() < max_counterexamples) {
                        law.counterexamples.push_back(label(profile, &theta) + " word " + format_word(word) +
                                                      ": path " + (it == paths.end() ? "unreachable" : to_string(it->second)) +
                                                      " vs " + to_string(p));
                    }
                }
                ++law.cases;
                law.failures += same ? 0 : 1;

                std::map<std::int64_t, BigRational> by_count;
                for (const auto& [word, p] : exact.probabilities) {
                    by_count[static_cast<std::int64_t>(cycle_count(Permutation::from_word(word, profile)))] += p;
                }
                const auto pmf = k_pmf(profile, theta);
                bool match = true;
                for (std::int64_t k = 0; k <= static_cast<std::int64_t>(size); ++k) {
                    auto it = by_count.find(k);
                    const BigRational expected = it == by_count.end() ? BigRational(0) : it->second;
                    match = match && pmf.probability(k) == expected;
                }
                record(cycle_law, match, label(profile, &theta));
            }
            for (std::size_t t = 1; t <= profile.length(); ++t) {
                const auto general = step_law(t, profile, Theta(1, 1));
                for (std::uint64_t k = 0; k <= profile.count(t); ++k) {
                    const NhgParams params{profile.prefix(t), profile.prefix(t - 1), 1};
                    const bool ok = general[k] == uniform_step_pmf(t, profile, k) &&
                                    general[k] == neg_hypergeom_pmf(params, static_cast<std::int64_t>(k) + 1);
                    record(step_forms, ok, label(profile) + " t=" + std::to_string(t) + " k=" + std::to_string(k));
                }
            }
        }
    }
    report.checks = {factorization, law, identity, cycle_law, step_forms};
    return report;
}

}  // namespace mcrp::oracle
