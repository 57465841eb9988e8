// zipfcache: generate / analyze / predict / simulate front end.
//
// Exit codes: 0 success, 2 usage or configuration error, 3 I/O or trace
// format error, 4 domain error (model out of range, inconsistent input).

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "report_json.hpp"
#include "zipfcache/analytic/analytic.hpp"
#include "zipfcache/errors.hpp"
#include "zipfcache/policies/registry.hpp"
#include "zipfcache/prefetch/prefetch.hpp"
#include "zipfcache/sim/simulator.hpp"
#include "zipfcache/trace/generator.hpp"
#include "zipfcache/trace/io.hpp"
#include "zipfcache/trace/stats.hpp"

#ifndef ZIPFCACHE_SAMPLE_TRACE
#define ZIPFCACHE_SAMPLE_TRACE "data/sample_trace.csv"
#endif

namespace {

using namespace zipfcache;
using Json = nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitDomain = 4;
constexpr int kExitFailure = 1;
constexpr double kDay = analytic::kSecondsPerDay;

struct Globals {
  std::string format = "json";
  std::uint64_t seed = 1;
  std::string output;
};

// RFC 4180: CRLF records, fields quoted when they contain a delimiter.
std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string csvValue(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return csvField(v.get<std::string>());
  return csvField(v.dump());
}

std::string csvRow(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + fields[i];
  return line + "\r\n";
}

// Flat object as a two-column metric table; nested objects are flattened
// with dotted names.
void flatten(const Json& j, const std::string& prefix, std::string& out) {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object())
      flatten(value, name, out);
    else
      out += csvRow({csvField(name), csvValue(value)});
  }
}

std::string metricsCsv(const Json& j) {
  std::string out = csvRow({"metric", "value"});
  flatten(j, "", out);
  return out;
}

void writeText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

void emit(const Globals& g, const Json& report, const std::string& csv) {
  writeText(g.output, g.format == "csv" ? csv : report.dump(2) + "\n");
}

Json optionalJson(const std::optional<double>& v) { return v ? Json(*v) : Json(); }

struct LoadedTrace {
  std::vector<trace::TraceEvent> events;
  std::string source;
  std::optional<std::size_t> skipped;
  std::optional<std::size_t> filtered;
};

LoadedTrace loadTrace(const std::string& tracePath, const std::string& squidPath) {
  LoadedTrace t;
  if (!squidPath.empty()) {
    auto log = trace::parseProxyLogFile(squidPath);
    t.events = std::move(log.events);
    t.skipped = log.skipped;
    t.filtered = log.filtered;
    t.source = squidPath;
  } else {
    t.source = tracePath.empty() ? std::string(ZIPFCACHE_SAMPLE_TRACE) : tracePath;
    t.events = trace::parseTraceFile(t.source);
  }
  return t;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double parseNumber(const std::string& text, const std::string& what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v) || v < 0.0)
    throw ConfigError("bad " + what + " '" + text + "'");
  return v;
}

// "unbounded", "20%" of `footprint`, or an amount with a decimal unit
// (B, KB, MB, GB, TB; 1 MB = 10^6 bytes). Object-mode capacities are counts.
std::uint64_t parseCapacity(const std::string& spec, std::uint64_t footprint, bool objects) {
  const std::string s = lower(spec);
  if (s == "unbounded" || s == "inf") return sim::kUnbounded;
  double value = 0.0;
  if (!s.empty() && s.back() == '%') {
    value = parseNumber(s.substr(0, s.size() - 1), "capacity percentage") / 100.0 * static_cast<double>(footprint);
  } else {
    std::size_t digits = s.find_first_not_of("0123456789.eE+-");
    if (digits == std::string::npos) digits = s.size();
    const std::string unit = s.substr(digits);
    double scale = 1.0;
    if (unit.empty() || unit == "b") {
      scale = 1.0;
    } else if (objects) {
      throw ConfigError("object-mode capacity takes a count or percentage, not '" + spec + "'");
    } else if (unit == "kb") {
      scale = 1e3;
    } else if (unit == "mb") {
      scale = 1e6;
    } else if (unit == "gb") {
      scale = 1e9;
    } else if (unit == "tb") {
      scale = 1e12;
    } else {
      throw ConfigError("unknown capacity unit in '" + spec + "' (use B, KB, MB, GB, TB, % or unbounded)");
    }
    value = parseNumber(s.substr(0, digits), "capacity") * scale;
  }
  const double rounded = std::floor(value);
  if (!(rounded >= 1.0)) throw ConfigError("capacity '" + spec + "' is below one unit");
  if (rounded >= 1.8e19) return sim::kUnbounded;
  return static_cast<std::uint64_t>(rounded);
}

std::vector<std::string> splitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

// generate ----------------------------------------------------------------

struct GenerateArgs {
  trace::SyntheticSpec spec;
  double requests = 100000;
  std::optional<double> durationDays;
  double tchPopularDays = 0.0;
  double tchUnpopularDays = 0.0;
  std::optional<std::uint64_t> boundary;
  std::string arrivals = "poisson";
};

void setupGenerate(CLI::App& app, GenerateArgs& a) {
  app.add_option("--objects", a.spec.nObjects, "object universe size n")->capture_default_str();
  app.add_option("--alpha", a.spec.alpha, "Zipf exponent")
      ->check(CLI::Range(analytic::kMinAlpha, analytic::kMaxAlpha).description("alpha in [0.01, 0.999]"))
      ->capture_default_str();
  app.add_option("--requests", a.requests, "expected request count (sets duration = requests / rate)")
      ->capture_default_str();
  app.add_option("--duration-days", a.durationDays, "trace length in days (overrides --requests)");
  app.add_option("--rate", a.spec.requestRate, "aggregate request rate, requests/second")->capture_default_str();
  app.add_option("--mean-size", a.spec.meanDocSize, "mean document size, bytes")->capture_default_str();
  app.add_option("--size-spread", a.spec.sizeSpread, "log-space standard deviation of sizes")
      ->capture_default_str();
  app.add_option("--tch-popular-days", a.tchPopularDays, "mean lifetime of popular documents, days (0 = never change)")
      ->capture_default_str();
  app.add_option("--tch-unpopular-days", a.tchUnpopularDays, "mean lifetime of other documents, days (0 = never change)")
      ->capture_default_str();
  app.add_option("--boundary", a.boundary, "last popular rank (default: two-request special point)");
  app.add_option("--pc", a.spec.pC, "probability an object is cacheable")->capture_default_str();
  app.add_option("--arrivals", a.arrivals, "request arrival process")
      ->check(CLI::IsMember({"poisson", "constant"}))
      ->capture_default_str();
}

int runGenerate(const Globals& g, GenerateArgs& a) {
  if (g.output.empty() || g.output == "-") throw ConfigError("generate needs -o <trace path>");
  auto& spec = a.spec;
  spec.seed = g.seed;
  if (!(spec.requestRate > 0.0)) throw ConfigError("--rate must be positive");
  spec.duration = a.durationDays ? *a.durationDays * kDay : a.requests / spec.requestRate;
  spec.muP = a.tchPopularDays > 0.0 ? 1.0 / (a.tchPopularDays * kDay) : 0.0;
  spec.muU = a.tchUnpopularDays > 0.0 ? 1.0 / (a.tchUnpopularDays * kDay) : 0.0;
  spec.popularBoundary = a.boundary;
  spec.arrivals = a.arrivals == "constant" ? trace::ArrivalProcess::constant : trace::ArrivalProcess::poisson;

  const auto events = trace::generateTrace(spec);
  trace::writeTraceFile(events, g.output);

  const auto summary = trace::summarize(events);
  const auto counts = trace::countsOf(trace::popularityHistogram(events));
  Json report;
  report["trace"] = g.output;
  report["events"] = events.size();
  report["requests"] = summary.requests;
  report["modifications"] = summary.modifications;
  report["popular_boundary"] = spec.resolvedBoundary();
  report["alpha_loglog"] = optionalJson(trace::empiricalAlpha(counts));
  const std::string text = g.format == "csv" ? metricsCsv(report) : report.dump(2) + "\n";
  std::cout << text;
  return 0;
}

// analyze -----------------------------------------------------------------

struct AnalyzeArgs {
  std::string trace;
  std::string squid;
  std::optional<double> windowDays;
  std::optional<double> hitRatio;
};

void setupAnalyze(CLI::App& app, AnalyzeArgs& a) {
  auto* t = app.add_option("-t,--trace", a.trace, "native trace (default: bundled sample)");
  app.add_option("--squid", a.squid, "proxy access log instead of a native trace")->excludes(t);
  app.add_option("--window-days", a.windowDays, "window for t_u / T_eff, from the first event (default: whole trace)");
  app.add_option("--hit-ratio", a.hitRatio, "measured hit ratio; adds the renewal exponent and delta H")
      ->check(CLI::Range(0.0, 1.0));
}

int runAnalyze(const Globals& g, const AnalyzeArgs& a) {
  const LoadedTrace t = loadTrace(a.trace, a.squid);
  const auto s = trace::summarize(t.events);
  const auto counts = trace::countsOf(trace::popularityHistogram(t.events));
  const double window = a.windowDays ? *a.windowDays * kDay : s.span();
  const auto life = trace::lifetimeStats(t.events, window);

  const double p = static_cast<double>(s.uniqueCacheable);
  const double k = static_cast<double>(s.cacheableRequests);
  const double m = static_cast<double>(s.twoPlusCacheable);
  const double bigK = static_cast<double>(s.requests);
  // Without a measured hit ratio, alpha3 uses the unbounded-cache one.
  const double h = a.hitRatio ? *a.hitRatio : (bigK > 0 ? static_cast<double>(s.repeatRequests) / bigK : 0.0);

  Json r;
  r["source"] = t.source;
  if (t.skipped) {
    r["skipped_lines"] = *t.skipped;
    r["filtered_lines"] = *t.filtered;
  }
  r["requests"] = s.requests;
  r["cacheable_requests"] = s.cacheableRequests;
  r["modifications"] = s.modifications;
  r["unique_docs"] = s.uniqueCacheable;
  r["two_plus_docs"] = s.twoPlusCacheable;
  r["repeat_requests"] = s.repeatRequests;
  r["footprint_bytes"] = s.footprintBytes;
  r["span_days"] = s.span() / kDay;
  r["hit_ratio_used"] = h;
  try {
    const auto est = analytic::fitAlphaThreeWays(p, k, m, h, bigK);
    r["alpha1"] = est.alpha1;
    r["alpha2"] = est.alpha2;
    r["alpha3"] = est.alpha3;
  } catch (const DomainError&) {
    r["alpha1"] = nullptr;
    r["alpha2"] = nullptr;
    r["alpha3"] = nullptr;
  }
  r["alpha_loglog"] = optionalJson(trace::empiricalAlpha(counts));
  r["t_u_days"] = optionalJson(life.tU ? std::optional(*life.tU / kDay) : std::nullopt);
  r["t_eff_days"] = optionalJson(life.tEff ? std::optional(*life.tEff / kDay) : std::nullopt);
  if (a.hitRatio) {
    try {
      r["alpha_r"] = analytic::renewalAlphaR(m, *a.hitRatio, bigK);
    } catch (const DomainError&) {
      r["alpha_r"] = nullptr;
    }
    r["delta_h"] = analytic::renewalDeltaH(static_cast<double>(s.repeatRequests), *a.hitRatio, bigK);
  }
  emit(g, r, metricsCsv(r));
  return 0;
}

// predict -----------------------------------------------------------------

struct PredictArgs {
  double alpha = 0.8;
  double tchDays = 186.0;
  double pC = 0.6;
  std::optional<double> alphaR;
  std::optional<double> requests;
  std::optional<double> nuInt;
  std::optional<double> h1, s1, s2;
  std::optional<double> wolmanN;
  double wolmanRate = 10.0;
};

void setupPredict(CLI::App& app, PredictArgs& a) {
  app.add_option("--alpha", a.alpha, "Zipf exponent")->capture_default_str();
  app.add_option("--tch-days", a.tchDays, "mean document lifetime T_ch, days")->capture_default_str();
  app.add_option("--pc", a.pC, "cacheable fraction")->capture_default_str();
  app.add_option("--alpha-r", a.alphaR, "renewal exponent; adds freshness factor and extra prefetch bandwidth");
  app.add_option("--requests", a.requests, "cacheable request count k; adds special points");
  app.add_option("--nu-int", a.nuInt, "external bandwidth, bytes/second; adds cache size in bytes");
  app.add_option("--h1", a.h1, "known hit ratio at size --s1; with --s2 adds the scaled hit ratio");
  app.add_option("--s1", a.s1, "size at which --h1 was measured");
  app.add_option("--s2", a.s2, "size to scale to");
  app.add_option("--wolman-n", a.wolmanN, "object universe size; adds the aggregate hit ratio with renewal");
  app.add_option("--wolman-rate", a.wolmanRate, "aggregate request rate for --wolman-n, requests/second")
      ->capture_default_str();
}

int runPredict(const Globals& g, const PredictArgs& a) {
  analytic::requireAlpha(a.alpha);
  if (!(a.tchDays > 0.0)) throw DomainError("--tch-days must be positive");
  const double muU = 1.0 / (a.tchDays * kDay);
  const auto opt = analytic::optimalTau(muU, a.alpha, a.pC);

  Json r;
  r["alpha"] = a.alpha;
  r["tch_days"] = a.tchDays;
  r["pc"] = a.pC;
  r["ideal_hit_bound"] = opt.idealHitClosed;
  r["tau_days"] = opt.tau / kDay;
  r["kernel_fraction"] = opt.kernelFraction;
  r["effective_hit_bound"] = opt.effectiveHitBound;
  if (a.nuInt) r["cache_size_bytes"] = opt.tau * *a.nuInt;
  if (a.requests) {
    const auto sp = analytic::specialPoints({a.alpha, 0.0, *a.requests});
    r["special_m"] = sp.m;
    r["special_p"] = sp.p;
    r["special_p_approx"] = sp.pApprox;
    r["normalization_a"] = sp.a;
    r["ideal_hit_bound_count"] = analytic::idealHitBounds(a.alpha, sp.p, sp.m, sp.k).count;
  }
  if (a.alphaR) {
    const double ff = analytic::freshnessFromExponents(a.alpha, *a.alphaR);
    r["alpha_r"] = *a.alphaR;
    r["freshness_factor"] = ff;
    r["extra_bandwidth_fraction"] = analytic::extraPrefetchBandwidth(ff, 1.0);
    if (a.nuInt) r["extra_bandwidth_bytes_per_s"] = analytic::extraPrefetchBandwidth(ff, *a.nuInt);
  }
  if (a.h1 || a.s1 || a.s2) {
    if (!(a.h1 && a.s1 && a.s2)) throw ConfigError("--h1, --s1 and --s2 go together");
    r["scaled_hit_ratio"] = analytic::hitScaling(*a.h1, *a.s1, *a.s2, a.alpha);
  }
  if (a.wolmanN) r["wolman_hit_ratio"] = analytic::wolmanHitRatio(*a.wolmanN, a.alpha, a.wolmanRate, muU);
  emit(g, r, metricsCsv(r));
  return 0;
}

// simulate ----------------------------------------------------------------

struct SimulateArgs {
  std::string trace;
  std::string squid;
  std::string policy = "lru";
  std::string capacity = "20%";
  std::string sweep;
  double accessoryFraction = 0.10;
  std::optional<double> statsDays;
  std::optional<double> nuInt;
  bool byteMetric = false;
  bool objectCapacity = false;
  std::string prefetch;
  double threshold = 0.0;
  double tickDays = 1.0;
  std::string plotData;
  bool parallel = false;
};

void setupSimulate(CLI::App& app, SimulateArgs& a) {
  auto* t = app.add_option("-t,--trace", a.trace, "native trace (default: bundled sample)");
  app.add_option("--squid", a.squid, "proxy access log instead of a native trace")->excludes(t);
  app.add_option("--policy", a.policy, "replacement policy: zbs, zbs-byte, lru, lfu, fifo")->capture_default_str();
  auto* cap = app.add_option("--capacity", a.capacity, "cache size: 100MB, 2GB, 20% (of footprint), unbounded")
                  ->capture_default_str();
  app.add_option("--sweep", a.sweep, "comma-separated capacities, one run each")->excludes(cap);
  app.add_option("--accessory-fraction", a.accessoryFraction, "ZBS accessory share of capacity")
      ->capture_default_str();
  app.add_option("--stats-days", a.statsDays, "ZBS statistics horizon t_s, days");
  app.add_option("--nu-int", a.nuInt, "external bandwidth, bytes/second (ZBS default t_s)");
  app.add_flag("--byte-metric", a.byteMetric, "ZBS byte-hit metric");
  app.add_flag("--object-capacity", a.objectCapacity, "capacity counts documents instead of bytes");
  app.add_option("--prefetch", a.prefetch, "long-term prefetch scheme")
      ->check(CLI::IsMember({"goodfetch", "api", "lifetime"}));
  app.add_option("--threshold", a.threshold, "prefetch score threshold (goodfetch, api)")->capture_default_str();
  app.add_option("--prefetch-tick-days", a.tickDays, "lifetime scheme re-evaluation interval, days")
      ->capture_default_str();
  app.add_option("--plot-data", a.plotData, "also write a size,hit_ratio CSV");
  app.add_flag("--parallel", a.parallel, "run sweep points concurrently");
}

int runSimulate(const Globals& g, const SimulateArgs& a) {
  const LoadedTrace t = loadTrace(a.trace, a.squid);
  const auto summary = trace::summarize(t.events);
  const std::uint64_t footprint = a.objectCapacity ? summary.uniqueCacheable : summary.footprintBytes;

  sim::CacheConfig config;
  config.policyId = a.policy;
  config.accessoryFraction = a.accessoryFraction;
  if (a.statsDays) config.statsRetentionSeconds = *a.statsDays * kDay;
  config.externalBandwidth = a.nuInt;
  config.byteMetricMode = a.byteMetric;
  config.capacityUnit = a.objectCapacity ? sim::CapacityUnit::objects : sim::CapacityUnit::bytes;
  if (!a.prefetch.empty())
    config.prefetch = sim::PrefetchConfig{sim::parseScheme(a.prefetch), a.threshold, a.tickDays * kDay};
  policies::makePolicy(config);  // rejects unknown ids before any work

  std::vector<std::string> specs = a.sweep.empty() ? std::vector<std::string>{a.capacity} : splitList(a.sweep);
  if (specs.empty()) throw ConfigError("--sweep needs at least one capacity");
  std::vector<std::uint64_t> sizes;
  for (const auto& s : specs) sizes.push_back(parseCapacity(s, footprint, a.objectCapacity));
  std::vector<std::size_t> order(sizes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return sizes[x] < sizes[y]; });
  std::vector<std::uint64_t> sorted;
  for (auto i : order) sorted.push_back(sizes[i]);

  const auto compiled = sim::compileTrace(t.events);
  sim::Runner runner = [](const sim::CompiledTrace& tr, const sim::CacheConfig& c) {
    return c.prefetch ? prefetch::simulateWithPrefetch(tr, c, c.prefetch->scheme) : sim::simulate(tr, c);
  };
  const auto points = sim::sweepSizes(compiled, config, sorted, runner, a.parallel);
  // Back to flag order.
  std::vector<sim::SweepPoint> runs(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) runs[order[i]] = points[i];

  Json cfg = cli::toJson(config);
  cfg.erase("capacity");
  cfg["trace"] = t.source;
  cfg["footprint"] = footprint;

  Json report;
  std::string csv;
  if (a.sweep.empty()) {
    sim::CacheConfig c = config;
    c.capacityBytes = runs[0].capacity;
    Json full = cli::toJson(c);
    full["trace"] = t.source;
    full["footprint"] = footprint;
    report["config"] = full;
    report["report"] = cli::toJson(runs[0].report);
    csv = metricsCsv(report["report"]);
  } else {
    report["config"] = cfg;
    report["runs"] = Json::array();
    std::vector<std::string> header{"capacity"};
    const Json fields = cli::toJson(sim::SimReport{});
    for (const auto& [key, value] : fields.items()) header.push_back(key);
    csv = csvRow(header);
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto rj = cli::toJson(runs[i].report);
      Json run;
      run["capacity_spec"] = specs[i];
      run["capacity"] = runs[i].capacity == sim::kUnbounded ? Json() : Json(runs[i].capacity);
      run["report"] = rj;
      report["runs"].push_back(run);
      std::vector<std::string> row{csvValue(run["capacity"])};
      for (const auto& [key, value] : rj.items()) row.push_back(csvValue(value));
      csv += csvRow(row);
    }
  }
  emit(g, report, csv);

  if (!a.plotData.empty()) {
    std::string plot = csvRow({"size", "hit_ratio"});
    for (const auto& run : runs) {
      const Json size = run.capacity == sim::kUnbounded ? Json() : Json(run.capacity);
      plot += csvRow({csvValue(size), csvValue(Json(run.report.hitRatio))});
    }
    writeText(a.plotData, plot);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zipf proxy-cache modeling toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("-o,--output", g.output, "output path (generate: the trace; otherwise the report, default stdout)");

  GenerateArgs gen;
  AnalyzeArgs ana;
  PredictArgs pre;
  SimulateArgs simArgs;
  auto* generate = app.add_subcommand("generate", "write a synthetic Zipf trace");
  auto* analyze = app.add_subcommand("analyze", "trace statistics and exponent estimates");
  auto* predict = app.add_subcommand("predict", "analytic bounds and sizing");
  auto* simulate = app.add_subcommand("simulate", "trace-driven cache simulation");
  setupGenerate(*generate, gen);
  setupAnalyze(*analyze, ana);
  setupPredict(*predict, pre);
  setupSimulate(*simulate, simArgs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (generate->parsed()) return runGenerate(g, gen);
    if (analyze->parsed()) return runAnalyze(g, ana);
    if (predict->parsed()) return runPredict(g, pre);
    return runSimulate(g, simArgs);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const TraceFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const SaturationError& e) {
    std::cerr << "error: " << e.what() << " (value " << e.value() << ")\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
