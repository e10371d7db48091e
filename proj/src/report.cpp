#include "paracalc/report.hpp"

#include <cmath>
#include <fstream>

namespace paracalc {

Json exponent_fit_json(const ExponentFit& f) {
  Json j;
  j["window"] = {f.j_lo, f.j_hi};
  j["slope"] = f.slope;
  j["intercept"] = f.intercept;
  j["r2"] = f.r_squared;
  j["estimated_alpha"] = f.estimated_alpha;
  j["excluded_blocks"] = f.excluded_blocks;
  return j;
}

Json operator_report_json(const OperatorReport& r) {
  Json j;
  j["schema"] = "report_v1";
  j["operator"] = r.name;
  j["input_alphas"] = r.input_alphas;
  j["theory_exponent"] = r.theory_exponent;
  j["estimated_alpha"] = r.fit.estimated_alpha;
  j["r2"] = r.fit.r_squared;
  j["window"] = {r.fit.j_lo, r.fit.j_hi};
  j["seeds"] = r.seeds;
  j["n"] = r.n;
  j["tolerance"] = r.tolerance;
  j["hypothesis"] = r.hypothesis;
  j["per_seed_alpha"] = r.per_seed_alpha;
  j["pass"] = r.pass;
  return j;
}

void write_json(const Json& j, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot write " + path.string());
  os << j.dump(2) << '\n';
  if (!os) throw io_error("write failed: " + path.string());
}

void write_block_norm_csv(const std::vector<int>& js, const std::vector<double>& sup,
                          const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot write " + path.string());
  os << "j,sup_norm,log2_sup_norm\n";
  for (size_t i = 0; i < js.size(); ++i)
    os << js[i] << ',' << sup[i] << ',' << (sup[i] > 0 ? std::log2(sup[i]) : -INFINITY)
       << '\n';
}

void write_trace_csv(const std::vector<double>& residuals,
                     const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot write " + path.string());
  os << "iter,residual\n";
  for (size_t i = 0; i < residuals.size(); ++i) os << (i + 1) << ',' << residuals[i] << '\n';
}

}  // namespace paracalc
