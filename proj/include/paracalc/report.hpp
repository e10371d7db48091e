#pragma once

#include <filesystem>

#include "json.hpp"
#include "paracalc/registry.hpp"

namespace paracalc {

using Json = nlohmann::ordered_json;

Json operator_report_json(const OperatorReport& r);
Json exponent_fit_json(const ExponentFit& f);

/// Deterministic dump (stable key order, 2-space indent, trailing newline).
void write_json(const Json& j, const std::filesystem::path& path);

/// "j,sup_norm,log2_sup_norm" rows.
void write_block_norm_csv(const std::vector<int>& js, const std::vector<double>& sup,
                          const std::filesystem::path& path);

/// "iter,residual" rows.
void write_trace_csv(const std::vector<double>& residuals, const std::filesystem::path& path);

}  // namespace paracalc
