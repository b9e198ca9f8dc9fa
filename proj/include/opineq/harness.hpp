#pragma once

// Constrained random instance generation and the randomized chain suite.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opineq/bounds.hpp"
#include "opineq/linalg.hpp"
#include "opineq/maps.hpp"
#include "opineq/means.hpp"

namespace opineq {

/// SplitMix64 (Steele, Lea & Flood 2014): state += 0x9E3779B97F4A7C15 and a
/// two-round xor-shift-multiply finalizer. Per-instance streams are derived
/// with derive_seed(), so any instance can be regenerated from its seed alone.
class SplitMix64 {
public:
    static constexpr std::string_view kName = "splitmix64";

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Standard normal via Box-Muller (one value per call).
    double normal();

    static std::uint64_t mix(std::uint64_t z);

private:
    std::uint64_t state_;
};

/// Per-instance seed derived from (master seed, chain id, instance index).
std::uint64_t derive_seed(std::uint64_t master, std::string_view chain_id, std::uint64_t index);

struct SpectrumRange {
    double lo = 0.1;
    double hi = 10.0;
};

/// Haar-like random orthogonal matrix (Gram-Schmidt of a Gaussian matrix).
Matrix random_orthogonal(std::size_t dim, SplitMix64& rng);
/// Q diag(lambda) Q^T with lambda_i uniform in `range`.
SymMatrix gen_pd(std::size_t dim, SpectrumRange range, SplitMix64& rng);
/// A = gen_pd, B = A + P with P PSD (spectrum in [0, hi-lo]); with probability
/// 1/2 one eigenvalue of P is exactly 0.
OperatorPair gen_pair_leq(std::size_t dim, SpectrumRange range, SplitMix64& rng);
/// A = gen_pd, B = A^{1/2} C A^{1/2} with spectrum of C uniform in [h_lo, h_hi].
OperatorPair gen_pair_window(std::size_t dim, double h_lo, double h_hi, SpectrumRange range,
                             SplitMix64& rng);
/// gen_pd scaled to unit trace.
SymMatrix gen_density(std::size_t dim, SpectrumRange range, SplitMix64& rng);

enum class MapKind { Unitary = 0, Isometry, Pinching, NormalizedTrace, Convex };
inline constexpr int kMapKindCount = 5;
std::string_view map_kind_name(MapKind kind);
PLinearMap gen_map(MapKind kind, std::size_t dim, SplitMix64& rng);

// ---------------------------------------------------------------------------
// Suite

/// All chain identifiers in report order.
const std::vector<std::string>& all_chain_ids();

struct SuiteConfig {
    std::uint64_t master_seed = 42;
    std::size_t trials = 1000;
    std::vector<std::size_t> dims{1, 2, 3, 4, 6};
    std::vector<double> p_grid = default_p_grid();
    Tolerance tolerance{};
    SpectrumRange spectrum_range{};
    std::vector<std::string> chains = all_chain_ids();

    /// 0.05, 0.10, ..., 1.00
    static std::vector<double> default_p_grid();
    /// Throws UsageError on any invariant violation.
    void validate() const;
    std::size_t instances_per_chain() const { return trials * p_grid.size() * dims.size(); }
};

/// Everything needed to regenerate one instance.
struct InstanceSpec {
    std::string chain_id;
    std::uint64_t index = 0;
    std::uint64_t seed = 0;
    std::size_t dim = 0;
    double p = 0.0;
    /// Chain-specific selector: window choice and/or map kind.
    std::uint64_t variant = 0;
};

struct InstanceOutcome {
    bool applicable = true;
    bool passed = true;
    /// Worst link score (margin / tolerance); failure iff < -1.
    double score = 0.0;
    /// Raw margin (lambda_min or scalar gap) of the worst link.
    double margin = 0.0;
    std::string worst_link;
    std::vector<std::string> failed_links;
    /// Set when the instance threw; counted as an infrastructure failure.
    std::optional<std::string> error;
    std::string detail;
};

InstanceSpec make_instance(const SuiteConfig& config, const std::string& chain_id,
                           std::uint64_t index);
/// Evaluates one instance; never throws for errors raised inside the chain.
InstanceOutcome run_instance(const InstanceSpec& spec, const SuiteConfig& config);

struct ChainStats {
    std::string chain_id;
    std::uint64_t instances_run = 0;
    std::uint64_t failures = 0;
    std::uint64_t infrastructure_failures = 0;
    std::uint64_t skipped = 0;
    double worst_score = 0.0;
    double worst_margin = 0.0;
    std::string worst_link;
    std::optional<InstanceSpec> worst_instance;
    std::optional<std::string> first_error;
    std::optional<InstanceSpec> first_error_instance;
    std::map<std::string, std::uint64_t> link_failures;

    bool clean() const { return failures == 0 && infrastructure_failures == 0; }
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<ChainStats> chains;
    double wall_time_s = 0.0;

    bool clean() const;
    const ChainStats& chain(std::string_view id) const;
};

SuiteReport run_suite(const SuiteConfig& config);

}  // namespace opineq
