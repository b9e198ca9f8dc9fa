#include "opineq/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace opineq {

// ---------------------------------------------------------------------------
// RNG

std::uint64_t SplitMix64::mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t SplitMix64::below(std::uint64_t n) {
    if (n == 0) throw UsageError("SplitMix64::below: n must be positive");
    // Rejection keeps the draw exactly uniform.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % n;
}

double SplitMix64::normal() {
    double u1;
    do {
        u1 = uniform();
    } while (u1 == 0.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view chain_id, std::uint64_t index) {
    // FNV-1a of the chain id.
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : chain_id) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    std::uint64_t s = SplitMix64::mix(master + 0x9E3779B97F4A7C15ULL);
    s = SplitMix64::mix(s ^ h);
    return SplitMix64::mix(s + index * 0x9E3779B97F4A7C15ULL);
}

// ---------------------------------------------------------------------------
// Generators

Matrix random_orthogonal(std::size_t dim, SplitMix64& rng) {
    Matrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.normal();

    // Modified Gram-Schmidt on columns, two passes.
    for (std::size_t j = 0; j < dim; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                double dot = 0.0;
                for (std::size_t i = 0; i < dim; ++i) dot += g(i, k) * g(i, j);
                for (std::size_t i = 0; i < dim; ++i) g(i, j) -= dot * g(i, k);
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < dim; ++i) norm += g(i, j) * g(i, j);
        norm = std::sqrt(norm);
        if (norm < 1e-8) {
            // Degenerate draw (probability ~0); fall back to a fresh column.
            for (std::size_t i = 0; i < dim; ++i) g(i, j) = rng.normal();
            --j;
            continue;
        }
        for (std::size_t i = 0; i < dim; ++i) g(i, j) /= norm;
    }
    return g;
}

namespace {

SymMatrix conjugate_diagonal(const Matrix& q, const std::vector<double>& lambda) {
    const std::size_t n = lambda.size();
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += q(i, k) * lambda[k] * q(j, k);
            out(i, j) = s;
            out(j, i) = s;
        }
    return SymMatrix(out);
}

void require_range(SpectrumRange range) {
    if (!(range.lo > 0.0 && range.lo < range.hi)) {
        throw UsageError("spectrum range must satisfy 0 < lo < hi");
    }
}

}  // namespace

SymMatrix gen_pd(std::size_t dim, SpectrumRange range, SplitMix64& rng) {
    require_range(range);
    if (dim == 0) throw UsageError("gen_pd: dim must be positive");
    std::vector<double> lambda(dim);
    for (auto& l : lambda) l = rng.uniform(range.lo, range.hi);
    return conjugate_diagonal(random_orthogonal(dim, rng), lambda);
}

OperatorPair gen_pair_leq(std::size_t dim, SpectrumRange range, SplitMix64& rng) {
    auto a = gen_pd(dim, range, rng);
    std::vector<double> lambda(dim);
    for (auto& l : lambda) l = rng.uniform(0.0, range.hi - range.lo);
    if (rng.uniform() < 0.5) lambda[rng.below(dim)] = 0.0;
    auto b = a + conjugate_diagonal(random_orthogonal(dim, rng), lambda);
    return OperatorPair(std::move(a), std::move(b), relation::ALeqB{});
}

OperatorPair gen_pair_window(std::size_t dim, double h_lo, double h_hi, SpectrumRange range,
                             SplitMix64& rng) {
    validate_window(h_lo, h_hi);
    auto a = gen_pd(dim, range, rng);
    SymMatrix c;
    if (h_lo == h_hi) {
        c = SymMatrix::scalar(dim, h_lo);
    } else {
        c = gen_pd(dim, {h_lo, h_hi}, rng);
    }
    auto b = sandwich(a, c);
    return OperatorPair(std::move(a), std::move(b), relation::Window{h_lo, h_hi});
}

SymMatrix gen_density(std::size_t dim, SpectrumRange range, SplitMix64& rng) {
    auto m = gen_pd(dim, range, rng);
    const double t = m.trace();
    return m / t;
}

std::string_view map_kind_name(MapKind kind) {
    switch (kind) {
        case MapKind::Unitary: return "unitary";
        case MapKind::Isometry: return "isometry";
        case MapKind::Pinching: return "pinching";
        case MapKind::NormalizedTrace: return "normalized_trace";
        case MapKind::Convex: return "convex";
    }
    return "unknown";
}

PLinearMap gen_map(MapKind kind, std::size_t dim, SplitMix64& rng) {
    switch (kind) {
        case MapKind::Unitary:
            return PLinearMap::unitary(random_orthogonal(dim, rng));
        case MapKind::Isometry: {
            const std::size_t k = 1 + rng.below(dim);
            const auto q = random_orthogonal(dim, rng);
            Matrix v(dim, k);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < k; ++j) v(i, j) = q(i, j);
            return PLinearMap::isometry(std::move(v));
        }
        case MapKind::Pinching: {
            const std::size_t groups = 1 + rng.below(dim);
            std::vector<std::vector<std::size_t>> blocks(groups);
            for (std::size_t i = 0; i < dim; ++i) blocks[rng.below(groups)].push_back(i);
            std::erase_if(blocks, [](const auto& b) { return b.empty(); });
            return PLinearMap::pinching(dim, std::move(blocks));
        }
        case MapKind::NormalizedTrace:
            return PLinearMap::normalized_trace();
        case MapKind::Convex: {
            const std::size_t terms = 1 + rng.below(3);
            std::vector<map_kind::ConvexTerm> parts;
            double total = 0.0;
            for (std::size_t t = 0; t < terms; ++t) {
                const double w = rng.uniform(0.1, 1.0);
                total += w;
                parts.push_back({w, random_orthogonal(dim, rng)});
            }
            for (auto& part : parts) part.weight /= total;
            return PLinearMap::convex(std::move(parts));
        }
    }
    throw UsageError("gen_map: unknown map kind");
}

// ---------------------------------------------------------------------------
// Suite plumbing

namespace {

struct Window {
    double lo;
    double hi;
};
constexpr Window kSuiteWindows[] = {{1.5, 4.0}, {0.2, 0.8}};

// Reverse-Ando windows narrower than this ratio make K(M/m, p) lose digits
// to cancellation; they are widened to it.
constexpr double kMinReverseAndoRatio = 1.001;

std::uint64_t variant_count(const std::string& chain) {
    if (chain == "prop31") return 2;
    if (chain == "cor32") return 2 * kMapKindCount;
    if (chain == "ando" || chain == "reverse_ando" || chain == "monotonicity" || chain == "thm34") {
        return kMapKindCount;
    }
    return 1;
}

InstanceOutcome from_chain(const ChainReport& report) {
    InstanceOutcome out;
    out.passed = report.passed();
    const auto& worst = report.worst_link();
    out.score = worst.margin.score();
    out.margin = worst.margin.lambda_min;
    out.worst_link = worst.label;
    for (const auto& l : report.links)
        if (!l.margin.passed) out.failed_links.push_back(l.label);
    return out;
}

InstanceOutcome from_margin(const OrderMargin& margin, std::string label) {
    InstanceOutcome out;
    out.passed = margin.passed;
    out.score = margin.score();
    out.margin = margin.lambda_min;
    out.worst_link = label;
    if (!margin.passed) out.failed_links.push_back(std::move(label));
    return out;
}

InstanceOutcome from_trace(const TraceReport& report) {
    InstanceOutcome out;
    out.passed = report.passed();
    const auto& worst = report.worst_link();
    out.score = worst.score();
    out.margin = worst.gap;
    out.worst_link = worst.label;
    for (const auto& l : report.links)
        if (!l.passed()) out.failed_links.push_back(l.label);
    return out;
}

InstanceOutcome not_applicable(std::string why) {
    InstanceOutcome out;
    out.applicable = false;
    out.detail = std::move(why);
    return out;
}

InstanceOutcome evaluate(const InstanceSpec& spec, const SuiteConfig& config) {
    SplitMix64 rng(spec.seed);
    const auto range = config.spectrum_range;
    const auto& tol = config.tolerance;
    const auto& id = spec.chain_id;
    const double p = spec.p;
    const std::size_t n = spec.dim;
    const auto map_kind = static_cast<MapKind>(spec.variant % kMapKindCount);

    if (id == "eq39") {
        auto a = gen_pd(n, range, rng);
        auto b = gen_pd(n, range, rng);
        return from_chain(chain_eq39(OperatorPair(std::move(a), std::move(b)), p, tol));
    }
    if (id == "thm21") return from_chain(chain_thm21(gen_pair_leq(n, range, rng), p, tol));
    if (id == "thm_LR") return from_chain(chain_thm_LR(gen_pair_leq(n, range, rng), p, tol));
    if (id == "cor21") {
        const auto leq = gen_pair_leq(n, range, rng);
        return from_chain(chain_cor21(OperatorPair(leq.b(), leq.a(), relation::AGeqB{}), p, tol));
    }
    if (id == "young_scalar") {
        const double a = rng.uniform(range.lo, range.hi);
        const double b = rng.uniform(range.lo, range.hi);
        return from_trace(chain_young_scalar(a, b, p));
    }
    if (id == "prop31") {
        const auto w = kSuiteWindows[spec.variant % 2];
        return from_chain(chain_prop31(gen_pair_window(n, w.lo, w.hi, range, rng), p, tol));
    }
    if (id == "cor32") {
        const auto w = kSuiteWindows[spec.variant % 2];
        const auto kind = static_cast<MapKind>((spec.variant / 2) % kMapKindCount);
        const auto pair = gen_pair_window(n, w.lo, w.hi, range, rng);
        const auto phi = gen_map(kind, n, rng);
        return from_chain(chain_cor32(phi, pair, p, tol));
    }
    if (id == "ando") {
        auto a = gen_pd(n, range, rng);
        auto b = gen_pd(n, range, rng);
        const auto phi = gen_map(map_kind, n, rng);
        return from_margin(check_ando(phi, a, b, p, tol), "Phi(A#_pB) <= Phi(A)#_pPhi(B)");
    }
    if (id == "reverse_ando") {
        if (!(p < 1.0)) return not_applicable("reverse Ando needs p in (0, 1)");
        auto a = gen_pd(n, range, rng);
        auto b = gen_pd(n, range, rng);
        const auto phi = gen_map(map_kind, n, rng);
        const auto c = sym_eigenvalues(normalize(a, b));
        const double m = c.front();
        const double big_m = std::max(c.back(), m * kMinReverseAndoRatio);
        return from_margin(check_reverse_ando(phi, a, b, p, m, big_m, tol),
                           "Phi(A)#_pPhi(B) <= Phi(A#_pB)/K(M/m,p)");
    }
    if (id == "monotonicity") {
        auto a = gen_pd(n, range, rng);
        auto b = gen_pd(n, range, rng);
        const auto phi = gen_map(map_kind, n, rng);
        if (!phi.is_unital()) return not_applicable("map is not unital");
        return from_margin(check_monotonicity(phi, a, b, p, tol),
                           "Phi(T_p(A|B)) <= T_p(Phi(A)|Phi(B))");
    }
    if (id == "thm34") {
        auto a = gen_pd(n, range, rng);
        auto b = gen_pd(n, range, rng);
        const auto phi = gen_map(map_kind, n, rng);
        if (!phi.is_unital()) return not_applicable("map is not unital");
        return from_chain(chain_thm34(phi, a, b, p, tol));
    }
    if (id == "trace54" || id == "cor_trace56") {
        auto a = gen_pd(n, range, rng);
        auto b = gen_pd(n, range, rng);
        return from_trace(id == "trace54" ? chain_trace54(a, b, p) : chain_cor_trace56(a, b, p));
    }
    if (id == "final_remark") {
        auto a = gen_density(n, range, rng);
        auto b = gen_density(n, range, rng);
        return from_trace(check_final_remark(a, b, p));
    }
    throw UsageError("unknown chain id '" + id + "'");
}

}  // namespace

const std::vector<std::string>& all_chain_ids() {
    static const std::vector<std::string> ids{
        "eq39",         "thm21",  "cor21",        "thm_LR", "young_scalar",
        "prop31",       "cor32",  "ando",         "reverse_ando", "monotonicity",
        "thm34",        "trace54", "cor_trace56", "final_remark"};
    return ids;
}

std::vector<double> SuiteConfig::default_p_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 20; ++k) grid.push_back(k / 20.0);
    return grid;
}

void SuiteConfig::validate() const {
    if (trials < 1) throw UsageError("SuiteConfig: trials must be >= 1");
    if (p_grid.empty()) throw UsageError("SuiteConfig: p_grid is empty");
    for (double p : p_grid) {
        if (!(p > 0.0 && p <= 1.0)) {
            std::ostringstream msg;
            msg << "SuiteConfig: p=" << p << " outside (0, 1]";
            throw UsageError(msg.str());
        }
    }
    if (dims.empty()) throw UsageError("SuiteConfig: dims is empty");
    for (auto d : dims) {
        if (d < 1 || d > 64) throw UsageError("SuiteConfig: dims must lie in [1, 64]");
    }
    if (!(spectrum_range.lo > 0.0 && spectrum_range.lo < spectrum_range.hi)) {
        throw UsageError("SuiteConfig: spectrum range must satisfy 0 < lo < hi");
    }
    if (!(tolerance.abs >= 0.0 && tolerance.rel >= 0.0)) {
        throw UsageError("SuiteConfig: tolerances must be non-negative");
    }
    if (chains.empty()) throw UsageError("SuiteConfig: no chains selected");
    const auto& known = all_chain_ids();
    std::set<std::string> seen;
    for (const auto& c : chains) {
        if (std::find(known.begin(), known.end(), c) == known.end()) {
            throw UsageError("SuiteConfig: unknown chain id '" + c + "'");
        }
        if (!seen.insert(c).second) throw UsageError("SuiteConfig: duplicate chain id '" + c + "'");
    }
}

InstanceSpec make_instance(const SuiteConfig& config, const std::string& chain_id,
                           std::uint64_t index) {
    const std::uint64_t n_dims = config.dims.size();
    const std::uint64_t n_p = config.p_grid.size();
    InstanceSpec spec;
    spec.chain_id = chain_id;
    spec.index = index;
    spec.seed = derive_seed(config.master_seed, chain_id, index);
    spec.dim = config.dims[index % n_dims];
    spec.p = config.p_grid[(index / n_dims) % n_p];
    spec.variant = (index / (n_dims * n_p)) % variant_count(chain_id);
    return spec;
}

InstanceOutcome run_instance(const InstanceSpec& spec, const SuiteConfig& config) {
    try {
        return evaluate(spec, config);
    } catch (const std::exception& e) {
        InstanceOutcome out;
        out.passed = false;
        out.error = e.what();
        return out;
    }
}

bool SuiteReport::clean() const {
    return std::all_of(chains.begin(), chains.end(), [](const ChainStats& c) { return c.clean(); });
}

const ChainStats& SuiteReport::chain(std::string_view id) const {
    for (const auto& c : chains)
        if (c.chain_id == id) return c;
    throw UsageError("SuiteReport: chain '" + std::string(id) + "' was not run");
}

SuiteReport run_suite(const SuiteConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    SuiteReport report;
    report.config = config;
    const std::uint64_t total = config.instances_per_chain();
    for (const auto& id : config.chains) {
        ChainStats stats;
        stats.chain_id = id;
        stats.worst_score = std::numeric_limits<double>::infinity();
        for (std::uint64_t index = 0; index < total; ++index) {
            const auto spec = make_instance(config, id, index);
            const auto outcome = run_instance(spec, config);
            if (outcome.error) {
                ++stats.instances_run;
                ++stats.infrastructure_failures;
                if (!stats.first_error) {
                    stats.first_error = *outcome.error;
                    stats.first_error_instance = spec;
                }
                continue;
            }
            if (!outcome.applicable) {
                ++stats.skipped;
                continue;
            }
            ++stats.instances_run;
            if (!outcome.passed) ++stats.failures;
            for (const auto& label : outcome.failed_links) ++stats.link_failures[label];
            // Strict '<' keeps the lowest index among ties.
            if (outcome.score < stats.worst_score) {
                stats.worst_score = outcome.score;
                stats.worst_margin = outcome.margin;
                stats.worst_link = outcome.worst_link;
                stats.worst_instance = spec;
            }
        }
        if (!stats.worst_instance) stats.worst_score = 0.0;
        report.chains.push_back(std::move(stats));
    }
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace opineq
