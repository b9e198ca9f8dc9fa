#include "opineq/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace opineq::io {

using nlohmann::json;

json matrix_to_json(const SymMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return {{"dim", m.dim()}, {"rows", std::move(rows)}};
}

SymMatrix matrix_from_json(const json& j, const WarningSink& warn) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("rows")) {
        throw UsageError("matrix JSON must be an object with \"dim\" and \"rows\"");
    }
    if (!j.at("dim").is_number_integer() || j.at("dim").get<long long>() < 1) {
        throw UsageError("matrix JSON: \"dim\" must be a positive integer");
    }
    const auto n = j.at("dim").get<std::size_t>();
    const auto& rows = j.at("rows");
    if (!rows.is_array() || rows.size() != n) {
        throw UsageError("matrix JSON: \"rows\" must hold exactly dim rows");
    }
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || row.size() != n) {
            throw UsageError("matrix JSON: row " + std::to_string(i) + " must hold dim numbers");
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (!row[k].is_number()) {
                throw UsageError("matrix JSON: non-numeric entry in row " + std::to_string(i));
            }
            m(i, k) = row[k].get<double>();
        }
    }
    SymMatrix sym(m);
    if (warn && sym.source_asymmetry() > kAsymmetryWarnThreshold) {
        std::ostringstream msg;
        msg << "matrix asymmetry " << sym.source_asymmetry() << " exceeds "
            << kAsymmetryWarnThreshold << "; using (M + M^T)/2";
        warn(msg.str());
    }
    return sym;
}

SymMatrix read_matrix_file(const std::string& path, const WarningSink& warn) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open matrix file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw UsageError("matrix file '" + path + "': " + e.what());
    }
    return matrix_from_json(j, warn);
}

json instance_to_json(const InstanceSpec& spec) {
    return {{"chain", spec.chain_id}, {"index", spec.index}, {"seed", spec.seed},
            {"dim", spec.dim},        {"p", spec.p},         {"variant", spec.variant}};
}

json config_to_json(const SuiteConfig& config) {
    return {{"master_seed", config.master_seed},
            {"trials", config.trials},
            {"dims", config.dims},
            {"p_grid", config.p_grid},
            {"tolerance", {{"abs", config.tolerance.abs}, {"rel", config.tolerance.rel}}},
            {"spectrum_range", {config.spectrum_range.lo, config.spectrum_range.hi}},
            {"chains", config.chains}};
}

json report_body(const SuiteReport& report) {
    json chains = json::array();
    std::uint64_t failures = 0;
    std::uint64_t infra = 0;
    for (const auto& c : report.chains) {
        failures += c.failures;
        infra += c.infrastructure_failures;
        json entry = {{"chain", c.chain_id},
                      {"instances_run", c.instances_run},
                      {"failures", c.failures},
                      {"infrastructure_failures", c.infrastructure_failures},
                      {"skipped", c.skipped},
                      {"worst_score", c.worst_score},
                      {"worst_margin", c.worst_margin},
                      {"worst_link", c.worst_link},
                      {"link_failures", c.link_failures}};
        entry["worst_instance"] = c.worst_instance ? instance_to_json(*c.worst_instance) : json(nullptr);
        entry["worst_instance_seed"] = c.worst_instance ? json(c.worst_instance->seed) : json(nullptr);
        entry["first_error"] = c.first_error ? json(*c.first_error) : json(nullptr);
        entry["first_error_instance"] =
            c.first_error_instance ? instance_to_json(*c.first_error_instance) : json(nullptr);
        chains.push_back(std::move(entry));
    }
    return {{"rng", std::string(SplitMix64::kName)},
            {"config", config_to_json(report.config)},
            {"chains", std::move(chains)},
            {"total_failures", failures},
            {"total_infrastructure_failures", infra},
            {"passed", report.clean()}};
}

json report_document(const SuiteReport& report) {
    return {{"report", report_body(report)}, {"wall_time_s", report.wall_time_s}};
}

void print_report_table(std::ostream& out, const SuiteReport& report) {
    const auto& cfg = report.config;
    out << "rng=" << SplitMix64::kName << " seed=" << cfg.master_seed << " trials=" << cfg.trials
        << " dims=" << cfg.dims.size() << " p-values=" << cfg.p_grid.size()
        << " tol(abs,rel)=(" << cfg.tolerance.abs << "," << cfg.tolerance.rel << ")\n";
    out << std::left << std::setw(14) << "chain" << std::right << std::setw(10) << "run"
        << std::setw(9) << "fail" << std::setw(7) << "infra" << std::setw(9) << "skipped"
        << std::setw(14) << "worst score" << std::setw(14) << "worst margin"
        << "  worst link / seed\n";
    for (const auto& c : report.chains) {
        out << std::left << std::setw(14) << c.chain_id << std::right << std::setw(10)
            << c.instances_run << std::setw(9) << c.failures << std::setw(7)
            << c.infrastructure_failures << std::setw(9) << c.skipped << std::setw(14)
            << std::setprecision(4) << c.worst_score << std::setw(14) << std::setprecision(4)
            << c.worst_margin << "  " << c.worst_link;
        if (c.worst_instance) out << " / " << c.worst_instance->seed;
        out << "\n";
        if (c.first_error) out << "    first error: " << *c.first_error << "\n";
    }
    out << (report.clean() ? "PASS" : "FAIL") << " (" << std::fixed << std::setprecision(2)
        << report.wall_time_s << " s)\n";
    out << std::defaultfloat;
}

void print_matrix(std::ostream& out, const SymMatrix& m, int precision) {
    const auto flags = out.flags();
    out << std::fixed << std::setprecision(precision);
    for (std::size_t i = 0; i < m.dim(); ++i) {
        out << "  [";
        for (std::size_t j = 0; j < m.dim(); ++j) out << (j ? ", " : "") << std::setw(precision + 6) << m(i, j);
        out << "]\n";
    }
    out.flags(flags);
}

}  // namespace opineq::io
