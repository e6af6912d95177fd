#include "benford/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace benford {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

namespace {

double parse_double(const std::string& s) {
  double v       = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("bad floating value: " + s);
  return v;
}

u64 parse_u64(const std::string& s) {
  // allow 1e7-style shorthands for round powers
  if (s.find('e') != std::string::npos || s.find('E') != std::string::npos ||
      s.find('.') != std::string::npos) {
    double v = parse_double(s);
    if (v < 0 || v > 1.8e19 || v != std::floor(v))
      throw std::invalid_argument("bad integer value: " + s);
    return u64(v);
  }
  u64 v          = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("bad integer value: " + s);
  return v;
}

int parse_int(const std::string& s) {
  int v          = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("bad integer value: " + s);
  return v;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> parse_config_entries(
    const std::string& text) {
  std::map<std::string, std::string> entries;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line without '=': " + line);
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config line without key");
    entries[key] = val;
  }
  return entries;
}

void apply_config_entries(ExperimentConfig& cfg,
                          const std::map<std::string, std::string>& entries) {
  for (const auto& [key, val] : entries) {
    if (key == "spec") cfg.spec = val;
    else if (key == "n") cfg.n = parse_u64(val);
    else if (key == "k") cfg.k = parse_int(val);
    else if (key == "ell") cfg.ell = parse_int(val);
    else if (key == "ell_max") cfg.ell_max = parse_int(val);
    else if (key == "alpha") cfg.alpha = parse_double(val);
    else if (key == "alpha_lo") cfg.alpha_lo = parse_double(val);
    else if (key == "alpha_hi") cfg.alpha_hi = parse_double(val);
    else if (key == "alpha_steps") cfg.alpha_steps = parse_int(val);
    else if (key == "slope_threshold") cfg.slope_threshold = parse_double(val);
    else if (key == "limit") cfg.limit = parse_u64(val);
    else if (key == "x") cfg.x = parse_u64(val);
    else if (key == "bins") cfg.bins = parse_int(val);
    else if (key == "checkpoints") cfg.checkpoints = val;
    else if (key == "out") cfg.out = val;
    else if (key == "format") cfg.format = val;
    else if (key == "seed") cfg.seed = parse_u64(val);
    else if (key == "threads") cfg.threads = parse_int(val);
    else throw std::invalid_argument("unknown config key: " + key);
  }
}

std::string write_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "spec = " << c.spec << "\n";
  os << "n = " << c.n << "\n";
  os << "k = " << c.k << "\n";
  os << "ell = " << c.ell << "\n";
  os << "ell_max = " << c.ell_max << "\n";
  os << "alpha = " << format_double(c.alpha) << "\n";
  os << "alpha_lo = " << format_double(c.alpha_lo) << "\n";
  os << "alpha_hi = " << format_double(c.alpha_hi) << "\n";
  os << "alpha_steps = " << c.alpha_steps << "\n";
  os << "slope_threshold = " << format_double(c.slope_threshold) << "\n";
  os << "limit = " << c.limit << "\n";
  os << "x = " << c.x << "\n";
  os << "bins = " << c.bins << "\n";
  os << "checkpoints = " << c.checkpoints << "\n";
  os << "out = " << c.out << "\n";
  os << "format = " << c.format << "\n";
  os << "seed = " << c.seed << "\n";
  os << "threads = " << c.threads << "\n";
  return os.str();
}

std::vector<double> parse_checkpoint_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::string t = trim(item);
    if (t.empty()) continue;
    out.push_back(parse_double(t));
  }
  if (out.empty()) throw std::invalid_argument("empty checkpoint list");
  return out;
}

// ---------------------------------------------------------------------
// Report writers
// ---------------------------------------------------------------------

namespace {

void csv_preamble(std::ostream& os, const ExperimentConfig& cfg) {
  os << "# version=" << kVersion << "\n";
  std::istringstream conf(write_config(cfg));
  std::string line;
  while (std::getline(conf, line)) os << "# " << line << "\n";
}

ordered_json config_json(const ExperimentConfig& c) {
  ordered_json j;
  j["spec"]            = c.spec;
  j["n"]               = c.n;
  j["k"]               = c.k;
  j["ell"]             = c.ell;
  j["ell_max"]         = c.ell_max;
  j["alpha"]           = c.alpha;
  j["alpha_lo"]        = c.alpha_lo;
  j["alpha_hi"]        = c.alpha_hi;
  j["alpha_steps"]     = c.alpha_steps;
  j["slope_threshold"] = c.slope_threshold;
  j["limit"]           = c.limit;
  j["x"]               = c.x;
  j["bins"]            = c.bins;
  j["checkpoints"]     = c.checkpoints;
  j["out"]             = c.out;
  j["format"]          = c.format;
  j["seed"]            = c.seed;
  j["threads"]         = c.threads;
  return j;
}

ordered_json report_shell(const ExperimentConfig& cfg) {
  ordered_json j;
  j["version"] = kVersion;
  j["config"]  = config_json(cfg);
  return j;
}

bool is_json(const ExperimentConfig& cfg) { return cfg.format == "json"; }

std::string digit_string(u64 value) { return std::to_string(value); }

}  // namespace

void write_digit_report(std::ostream& os, const DigitReport& rep,
                        const ExperimentConfig& cfg) {
  if (is_json(cfg)) {
    ordered_json j = report_shell(cfg);
    j["K"]             = rep.K;
    j["N"]             = rep.N;
    j["total_nonzero"] = rep.total_nonzero;
    ordered_json rows  = ordered_json::array();
    for (const auto& r : rep.rows) {
      double obs = double(r.count) / double(rep.total_nonzero);
      rows.push_back({{"string", digit_string(r.value)},
                      {"count", r.count},
                      {"observed_freq", obs},
                      {"expected_freq", r.expected},
                      {"abs_error", std::fabs(obs - r.expected)}});
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << "\n";
    return;
  }
  csv_preamble(os, cfg);
  os << "string,count,observed_freq,expected_freq,abs_error\n";
  for (const auto& r : rep.rows) {
    double obs = double(r.count) / double(rep.total_nonzero);
    os << digit_string(r.value) << "," << r.count << "," << format_double(obs)
       << "," << format_double(r.expected) << ","
       << format_double(std::fabs(obs - r.expected)) << "\n";
  }
}

void write_weyl_series(std::ostream& os, const WeylSeries& ws,
                       const ExperimentConfig& cfg) {
  if (is_json(cfg)) {
    ordered_json j = report_shell(cfg);
    j["ell"]          = ws.ell;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < ws.checkpoints.size(); ++i)
      rows.push_back({{"N", ws.checkpoints[i]},
                      {"T_N", ws.nonzero_counts[i]},
                      {"re_full", ws.sums_full[i].real()},
                      {"im_full", ws.sums_full[i].imag()},
                      {"abs_full", std::abs(ws.sums_full[i])},
                      {"re_nonzero", ws.sums_nonzero[i].real()},
                      {"im_nonzero", ws.sums_nonzero[i].imag()},
                      {"abs_nonzero", std::abs(ws.sums_nonzero[i])}});
    j["rows"] = std::move(rows);
    os << j.dump(2) << "\n";
    return;
  }
  csv_preamble(os, cfg);
  os << "N,T_N,re_full,im_full,abs_full,re_nonzero,im_nonzero,abs_nonzero\n";
  for (std::size_t i = 0; i < ws.checkpoints.size(); ++i)
    os << ws.checkpoints[i] << "," << ws.nonzero_counts[i] << ","
       << format_double(ws.sums_full[i].real()) << ","
       << format_double(ws.sums_full[i].imag()) << ","
       << format_double(std::abs(ws.sums_full[i])) << ","
       << format_double(ws.sums_nonzero[i].real()) << ","
       << format_double(ws.sums_nonzero[i].imag()) << ","
       << format_double(std::abs(ws.sums_nonzero[i])) << "\n";
}

void write_distance_curve(std::ostream& os, const DistanceCurve& curve,
                          const ExperimentConfig& cfg) {
  if (is_json(cfg)) {
    ordered_json j = report_shell(cfg);
    j["ell"]          = curve.ell;
    j["alpha"]        = curve.alpha;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < curve.checkpoints.size(); ++i)
      rows.push_back({{"x", curve.checkpoints[i]}, {"dsq", curve.dsq[i]}});
    j["rows"] = std::move(rows);
    os << j.dump(2) << "\n";
    return;
  }
  csv_preamble(os, cfg);
  os << "x,dsq\n";
  for (std::size_t i = 0; i < curve.checkpoints.size(); ++i)
    os << format_double(curve.checkpoints[i]) << ","
       << format_double(curve.dsq[i]) << "\n";
}

void write_verdict(std::ostream& os, const Verdict& v,
                   const ExperimentConfig& cfg) {
  if (!is_json(cfg)) {
    // per-alpha curves, one row per (ell, grid alpha)
    csv_preamble(os, cfg);
    os << "ell,alpha,final_dsq,slope\n";
    for (const auto& scan : v.scans)
      for (const auto& pt : scan.grid)
        os << scan.ell << "," << format_double(pt.alpha) << ","
           << format_double(pt.final_dsq) << "," << format_double(pt.slope)
           << "\n";
    return;
  }
  ordered_json j = report_shell(cfg);
  j["spec"]      = cfg.spec;
  j["ell_range"] = {-v.ell_max, v.ell_max};
  j["scan_params"] = {{"alpha_lo", v.scan_params.alpha_lo},
                      {"alpha_hi", v.scan_params.alpha_hi},
                      {"steps", v.scan_params.steps},
                      {"slope_threshold", v.scan_params.slope_threshold},
                      {"checkpoints", v.scan_params.checkpoints}};
  ordered_json ws = ordered_json::array();
  for (const auto& w : v.witnesses)
    ws.push_back({{"ell", w.ell},
                  {"alpha", w.alpha},
                  {"final_dsq", w.final_dsq},
                  {"slope", w.slope}});
  j["witnesses"]         = std::move(ws);
  j["benford_evidence"]  = v.benford_evidence;
  j["hypothesis_NoverT"] = v.hypothesis_NoverT;
  j["hypothesis_N"]      = v.hypothesis_N;
  j["hypothesis_T"]      = v.hypothesis_T;
  j["note"]              = v.note;
  os << j.dump(2) << "\n";
}

void write_tau_csv(std::ostream& os, const TauSeries& series, u64 n,
                   const ExperimentConfig& cfg) {
  csv_preamble(os, cfg);
  os << "n,tau\n";
  for (u64 m = 1; m <= n && m <= series.limit(); ++m)
    os << m << "," << i128_to_string(series.tau(m)) << "\n";
}

void write_histogram(std::ostream& os, const SatoTateHistogram& h,
                     const ExperimentConfig& cfg) {
  if (is_json(cfg)) {
    ordered_json j = report_shell(cfg);
    j["bins"]         = h.bins;
    j["total"]        = h.total;
    j["sup_distance"] = h.sup_distance;
    ordered_json rows = ordered_json::array();
    for (int b = 0; b < h.bins; ++b)
      rows.push_back({{"bin_lo", h.bin_lo[b]},
                      {"bin_hi", h.bin_hi[b]},
                      {"observed", h.observed[b]},
                      {"expected", h.expected[b]}});
    j["rows"] = std::move(rows);
    os << j.dump(2) << "\n";
    return;
  }
  csv_preamble(os, cfg);
  os << "bin_lo,bin_hi,observed,expected\n";
  for (int b = 0; b < h.bins; ++b)
    os << format_double(h.bin_lo[b]) << "," << format_double(h.bin_hi[b])
       << "," << format_double(h.observed[b]) << ","
       << format_double(h.expected[b]) << "\n";
}

void write_prime_sum(std::ostream& os, const PrimeSumSeries& s,
                     const ExperimentConfig& cfg) {
  if (is_json(cfg)) {
    ordered_json j    = report_shell(cfg);
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < s.checkpoints.size(); ++i)
      rows.push_back({{"x", s.checkpoints[i]},
                      {"re", s.values[i].real()},
                      {"im", s.values[i].imag()},
                      {"abs", std::abs(s.values[i])},
                      {"re_minus_lnlnx",
                       s.values[i].real() - std::log(std::log(s.checkpoints[i]))}});
    j["rows"] = std::move(rows);
    os << j.dump(2) << "\n";
    return;
  }
  csv_preamble(os, cfg);
  os << "x,re,im,abs,re_minus_lnlnx\n";
  for (std::size_t i = 0; i < s.checkpoints.size(); ++i)
    os << format_double(s.checkpoints[i]) << ","
       << format_double(s.values[i].real()) << ","
       << format_double(s.values[i].imag()) << ","
       << format_double(std::abs(s.values[i])) << ","
       << format_double(s.values[i].real() -
                        std::log(std::log(s.checkpoints[i])))
       << "\n";
}

}  // namespace benford
