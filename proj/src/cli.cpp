#include "satotate/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "satotate/errors.hpp"
#include "satotate/measures.hpp"
#include "satotate/parity.hpp"
#include "satotate/report_json.hpp"

namespace satotate::cli {

namespace {

using nlohmann::json;

class UsageError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

constexpr std::int64_t kMinStatisticalBound = 100;
constexpr int kHistogramBins = 48;
constexpr int kMaxMoment = 8;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void check_config(const RunConfig& cfg) {
  if (cfg.char_cap < 1) throw UsageError("--char-cap must be at least 1");
  if (!(cfg.z > 0.0)) throw UsageError("--z must be positive");
}

struct Dataset {
  ModelPtr model;
  std::optional<ClassSequence> seq;
  json input;
  std::string selection;
  std::vector<ApRecord> rows;
  std::vector<std::int64_t> skipped;
};

std::vector<ApRecord> read_csv_file(const std::string& path, bool negate) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  return read_ap_csv(in, negate);
}

void load_rows(const RunConfig& cfg, Dataset& d) {
  if (cfg.input_path) {
    d.rows = read_csv_file(*cfg.input_path, cfg.negate_ap);
    d.input = {{"kind", "csv"}, {"path", *cfg.input_path}, {"negate_ap", cfg.negate_ap}};
    return;
  }
  if (cfg.curve) {
    if (is_singular(*cfg.curve)) throw UsageError("curve " + cfg.curve->label + " is singular");
    if (cfg.prime_bound < kMinStatisticalBound) throw UsageError("--bound must be at least 100 for statistical commands");
    GenerationResult g = generate_ap(*cfg.curve, cfg.prime_bound, cfg.threads);
    d.rows = std::move(g.rows);
    d.skipped = std::move(g.skipped);
    d.input = {{"kind", "curve"}, {"a", cfg.curve->a}, {"b", cfg.curve->b}, {"bound", cfg.prime_bound}};
    return;
  }
  throw UsageError("need --curve, --in or --synthetic");
}

Dataset build_dataset(const RunConfig& cfg) {
  check_config(cfg);
  Dataset d;
  if (cfg.synthetic) {
    if (cfg.model == "auto" || cfg.model.starts_with("sym2:")) {
      throw UsageError("--synthetic needs a concrete --model name");
    }
    d.model = builtin_model(cfg.model, cfg.char_cap);
    if (*cfg.synthetic == 0) throw UsageError("--synthetic needs a positive sample count");
    d.seq = sample_haar(d.model, *cfg.synthetic, cfg.seed);
    d.input = {{"kind", "synthetic"}, {"n", *cfg.synthetic}, {"seed", cfg.seed}};
    d.selection = "explicit";
    return d;
  }
  load_rows(cfg, d);
  if (d.rows.empty()) throw InputError("no Frobenius samples");

  std::string name = cfg.model;
  bool sym2 = false;
  if (name == "auto") {
    name = cm_detect(std::span<const ApRecord>(d.rows)) ? "N_U1" : "SU2";
    d.selection = "auto:cm_detect";
  } else if (name.starts_with("sym2:")) {
    name = name.substr(5);
    sym2 = true;
    d.selection = "sym2";
  } else {
    d.selection = "explicit";
  }
  d.model = builtin_model(name, cfg.char_cap);
  std::vector<ClassPoint> pts;
  pts.reserve(d.rows.size());
  if (sym2) {
    const ModelPtr su2 = builtin_model("SU2", cfg.char_cap);
    for (const auto& s : filter_degree_one(make_samples(d.rows, *su2)))
      pts.push_back(symmetric_square_class(s.class_point, *d.model));
  } else {
    for (const auto& s : filter_degree_one(make_samples(d.rows, *d.model))) pts.push_back(s.class_point);
  }
  d.seq = make_sequence(d.model, std::move(pts), SequenceSource::frobenius);
  return d;
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::pass: return kExitPass;
    case Verdict::fail: return kExitFail;
    case Verdict::inconclusive: return kExitInconclusive;
  }
  return kExitFail;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CatalogError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedModelError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CsvError& e) {
    err << "error: malformed CSV at " << e.what() << '\n';
    return kExitData;
  } catch (const IntegrityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const IndeterminateError& e) {
    err << "inconclusive: " << e.what() << '\n';
    return kExitInconclusive;
  }
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output_path) {
    std::ofstream f(*cfg.output_path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + *cfg.output_path + "'");
    f << text;
  } else {
    out << text;
  }
}

/// Rebuilds the configuration recorded in a JSON report's "input" block.
RunConfig config_from_report(const RunConfig& base, const json& rep) {
  RunConfig cfg = base;
  cfg.input_path.reset();
  const json& in = rep.at("input");
  const std::string kind = in.at("kind");
  if (kind == "curve") {
    cfg.curve = make_curve(in.at("a"), in.at("b"));
    cfg.prime_bound = in.at("bound");
  } else if (kind == "csv") {
    cfg.input_path = in.at("path").get<std::string>();
    cfg.negate_ap = in.at("negate_ap");
  } else if (kind == "synthetic") {
    cfg.synthetic = in.at("n").get<std::size_t>();
    cfg.seed = in.at("seed");
  } else {
    throw InputError("unknown input kind '" + kind + "' in report");
  }
  cfg.model = rep.at("model_spec");
  cfg.char_cap = rep.at("char_cap");
  cfg.z = rep.at("z");
  return cfg;
}

bool looks_like_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  char c = 0;
  while (in.get(c))
    if (!std::isspace(static_cast<unsigned char>(c))) return c == '{';
  return false;
}

}  // namespace

CurveSpec parse_curve(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--curve expects 'a,b'");
  auto parse = [&](std::string_view s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) throw UsageError("--curve expects integers 'a,b'");
    return v;
  };
  const std::int64_t a = parse(std::string_view(text).substr(0, comma));
  const std::int64_t b = parse(std::string_view(text).substr(comma + 1));
  return CurveSpec{a, b, "y^2=x^3+" + std::to_string(a) + "x+" + std::to_string(b)};
}

int run_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!cfg.curve) throw UsageError("generate needs --curve a,b");
    if (is_singular(*cfg.curve)) throw UsageError("curve " + cfg.curve->label + " is singular");
    if (cfg.prime_bound < 5) throw UsageError("--bound must be at least 5");
    const GenerationResult g = generate_ap(*cfg.curve, cfg.prime_bound, cfg.threads);
    std::ostringstream csv;
    write_ap_csv(csv, g.rows);
    emit(cfg, out, csv.str());
    err << "generated " << g.rows.size() << " samples for " << cfg.curve->label << " with p <= " << cfg.prime_bound
        << "; skipped " << g.skipped.size() << " bad-reduction primes";
    for (std::size_t i = 0; i < g.skipped.size(); ++i) err << (i ? "," : " (") << g.skipped[i];
    err << (g.skipped.empty() ? "" : ")") << '\n';
    return kExitPass;
  });
}

int run_ingest(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!cfg.input_path) throw UsageError("ingest needs --in PATH");
    const std::vector<ApRecord> rows = read_csv_file(*cfg.input_path, cfg.negate_ap);
    for (const auto& r : rows) {
      if (!within_hasse(r.ap, r.p)) {
        throw IntegrityError("a_p = " + std::to_string(r.ap) + " exceeds the Hasse bound at p = " + std::to_string(r.p));
      }
    }
    std::ostringstream csv;
    write_ap_csv(csv, rows);
    emit(cfg, out, csv.str());
    err << "ingested " << rows.size() << " samples" << (cfg.negate_ap ? " (a_p negated)" : "") << '\n';
    return kExitPass;
  });
}

json test_report(const RunConfig& cfg, int& exit_code) {
  Dataset d = build_dataset(cfg);
  const ClassSequence& seq = *d.seq;
  const GroupModel& model = *d.model;

  const EquidistReport weyl = weyl_test(seq, cfg.char_cap, cfg.z);
  const EquidistReport freq = component_frequency_test(seq, cfg.z);
  const CyclicReductionResult cyclic = cyclic_reduction_test(cyclic_intermediates(d.model), seq, cfg.char_cap, cfg.z);
  const ParityVerdict parity = parity_group_order(model);

  Verdict verdict = combine(combine(weyl.verdict, freq.verdict), cyclic.verdict);
  json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "test";
  j["input"] = d.input;
  j["model_spec"] = cfg.model;
  j["model"] = model.name;
  j["model_selection"] = d.selection;
  j["char_cap"] = cfg.char_cap;
  j["char_cap_note"] = "finite character set up to the cap stands in for all irreducibles";
  j["z"] = round_sig(cfg.z);
  j["source"] = to_string(seq.source);
  j["n_samples"] = seq.points.size();
  if (d.input.at("kind") != "synthetic") {
    const auto zeros = std::count_if(d.rows.begin(), d.rows.end(), [](const ApRecord& r) { return r.ap == 0; });
    j["frobenius"] = {{"samples", d.rows.size()},
                      {"skipped_bad_reduction", d.skipped},
                      {"supersingular", zeros},
                      {"normalization", "a_p / (2 sqrt p); arithmetic Frobenius"},
                      {"tilde_normalization", "scalar q^-1 factor on Q(1) carries no class data"}};
  }
  j["tests"]["weyl"] = to_json(weyl);
  j["tests"]["component_frequency"] = to_json(freq);
  j["tests"]["cyclic_reduction"] = to_json(cyclic);
  if (model.sign_character()) {
    const ObstructionResult obs = obstruction_test(seq, cfg.z);
    j["tests"]["obstruction"] = to_json(obs);
    if (obs.obstructed) verdict = Verdict::fail;
  }
  j["parity"] = to_json(parity);
  j["verdict"] = to_string(verdict);
  exit_code = exit_for(verdict);
  return j;
}

int run_test(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    int code = kExitFail;
    const json j = test_report(cfg, code);
    emit(cfg, out, j.dump(2) + "\n");
    err << "model " << j["model"].get<std::string>() << ": " << j["verdict"].get<std::string>() << '\n';
    return code;
  });
}

int run_parity(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<std::string> names;
    if (cfg.model == "auto" || cfg.model.empty()) {
      names = builtin_model_names();
    } else {
      names = {cfg.model.starts_with("sym2:") ? cfg.model.substr(5) : cfg.model};
    }
    json models = json::array();
    for (const auto& n : names) {
      const ModelPtr m = builtin_model(n, cfg.char_cap);
      models.push_back({{"model", model_metadata(*m)}, {"parity", to_json(parity_group_order(*m))}});
    }
    emit(cfg, out, json{{"schema", kSchemaVersion}, {"models", models}}.dump(2) + "\n");
    return kExitPass;
  });
}

int run_report(const RunConfig& cfg_in, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig cfg = cfg_in;
    if (cfg.input_path && looks_like_json(*cfg.input_path)) {
      std::ifstream in(*cfg.input_path);
      json rep;
      try {
        rep = json::parse(in);
      } catch (const json::exception& e) {
        throw InputError(std::string("cannot parse report: ") + e.what());
      }
      cfg = config_from_report(cfg, rep);
    }
    const Dataset d = build_dataset(cfg);
    const ClassSequence& seq = *d.seq;
    const GroupModel& model = *d.model;
    const std::filesystem::path dir = cfg.output_path ? *cfg.output_path : ".";
    std::filesystem::create_directories(dir);

    std::vector<double> traces;
    traces.reserve(seq.points.size());
    for (const auto& x : seq.points) traces.push_back(model.trace(x));
    const double n = static_cast<double>(traces.size());

    // (i) trace histogram, empirical and Haar, as two two-column blocks.
    const double lo = -static_cast<double>(model.dim_V);
    const double hi = static_cast<double>(model.dim_V);
    const double width = (hi - lo) / kHistogramBins;
    std::vector<double> counts(kHistogramBins, 0.0);
    for (double t : traces) {
      const int b = std::clamp(static_cast<int>((t - lo) / width), 0, kHistogramBins - 1);
      counts[b] += 1.0;
    }
    std::ostringstream hist;
    hist << "# trace histogram: " << model.name << ", n = " << traces.size() << "\n# empirical: bin_center density\n";
    for (int b = 0; b < kHistogramBins; ++b) hist << fmt12(lo + (b + 0.5) * width) << ' ' << fmt12(counts[b] / (n * width)) << '\n';
    hist << "\n\n# haar: bin_center density\n";
    for (int b = 0; b < kHistogramBins; ++b) {
      const double a = lo + b * width;
      const double last = b == kHistogramBins - 1;
      const ClassFunction in_bin{model.name, [&, a, last](const ClassPoint& x) {
                                   const double t = model.trace(x);
                                   return std::complex<double>((t >= a && (t < a + width || last)) ? 1.0 : 0.0, 0.0);
                                 }};
      hist << fmt12(a + 0.5 * width) << ' ' << fmt12(integrate_class_function(model, in_bin).real() / width) << '\n';
    }

    // (ii) trace moments.
    std::ostringstream mom;
    mom << "# moments of the trace: k empirical haar\n";
    for (int k = 1; k <= kMaxMoment; ++k) {
      double s = 0.0;
      for (double t : traces) s += std::pow(t, k);
      const ClassFunction power{model.name, [&, k](const ClassPoint& x) {
                                  return std::complex<double>(std::pow(model.trace(x), k), 0.0);
                                }};
      mom << k << ' ' << fmt12(s / n) << ' ' << fmt12(integrate_class_function(model, power).real()) << '\n';
    }

    // (iii) per-character averages.
    const EquidistReport weyl = weyl_test(seq, cfg.char_cap, cfg.z);
    std::ostringstream chars;
    chars << "# characters: label empirical_re empirical_im haar threshold pass\n";
    for (const auto& c : weyl.per_character) {
      chars << c.label << '\t' << fmt12(c.empirical_average.real()) << '\t' << fmt12(c.empirical_average.imag()) << '\t'
            << fmt12(c.haar_integral.real()) << '\t' << fmt12(c.threshold) << '\t' << (c.pass ? "PASS" : "FAIL") << '\n';
    }

    const std::pair<const char*, std::string> files[] = {
        {"trace_histogram.txt", hist.str()}, {"moments.txt", mom.str()}, {"characters.txt", chars.str()}};
    for (const auto& [name, text] : files) {
      std::ofstream f(dir / name, std::ios::binary);
      if (!f) throw InputError("cannot write '" + (dir / name).string() + "'");
      f << text;
      out << (dir / name).string() << '\n';
    }
    return kExitPass;
  });
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.command) {
    case Command::generate: return run_generate(cfg, out, err);
    case Command::ingest: return run_ingest(cfg, out, err);
    case Command::test: return run_test(cfg, out, err);
    case Command::parity: return run_parity(cfg, out, err);
    case Command::report: return run_report(cfg, out, err);
  }
  return kExitUsage;
}

int main(int argc, char** argv) {
  CLI::App app{"Sato-Tate equidistribution tests on compact group models and elliptic-curve Frobenius data"};
  app.require_subcommand(1);

  struct Raw {
    std::string curve;
    std::int64_t bound = 100000;
    std::string model = "auto";
    int char_cap = kDefaultCharCap;
    double z = kDefaultZ;
    std::uint64_t seed = 0;
    std::string in;
    std::string out;
    bool negate_ap = false;
    std::size_t synthetic = 0;
    unsigned threads = 1;
  } raw;

  auto* gen = app.add_subcommand("generate", "Count points and write p,ap CSV");
  auto* ing = app.add_subcommand("ingest", "Validate and re-emit a p,ap CSV");
  auto* tst = app.add_subcommand("test", "Run the equidistribution test pipeline and write a JSON report");
  auto* par = app.add_subcommand("parity", "Model metadata and parity verdicts as JSON");
  auto* rep = app.add_subcommand("report", "Histogram, moment and character tables");

  for (auto* sub : {gen, tst, rep}) {
    sub->add_option("--curve", raw.curve, "Short Weierstrass coefficients a,b");
    sub->add_option("--bound", raw.bound, "Largest prime considered");
    sub->add_option("--threads", raw.threads, "Point-counting worker threads");
  }
  for (auto* sub : {tst, par, rep}) {
    sub->add_option("--model", raw.model, "NAME, auto, or sym2:NAME");
    sub->add_option("--char-cap", raw.char_cap, "Largest highest-weight parameter tested");
  }
  for (auto* sub : {tst, rep}) {
    sub->add_option("--z", raw.z, "Band width in standard errors");
    sub->add_option("--seed", raw.seed, "Seed for --synthetic sampling");
    sub->add_option("--synthetic", raw.synthetic, "Haar-sample N points instead of using Frobenius data");
  }
  for (auto* sub : {ing, tst, rep}) {
    sub->add_option("--in", raw.in, "Input CSV (or JSON report for `report`)");
    sub->add_flag("--negate-ap", raw.negate_ap, "Flip the sign of ingested a_p");
  }
  for (auto* sub : {gen, ing, tst, par, rep}) sub->add_option("--out", raw.out, "Output path (directory for `report`)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  RunConfig cfg;
  if (gen->parsed()) cfg.command = Command::generate;
  else if (ing->parsed()) cfg.command = Command::ingest;
  else if (tst->parsed()) cfg.command = Command::test;
  else if (par->parsed()) cfg.command = Command::parity;
  else cfg.command = Command::report;

  try {
    if (!raw.curve.empty()) cfg.curve = parse_curve(raw.curve);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  cfg.prime_bound = raw.bound;
  cfg.model = raw.model;
  cfg.char_cap = raw.char_cap;
  cfg.z = raw.z;
  cfg.seed = raw.seed;
  if (!raw.in.empty()) cfg.input_path = raw.in;
  if (!raw.out.empty()) cfg.output_path = raw.out;
  cfg.negate_ap = raw.negate_ap;
  if (raw.synthetic > 0) cfg.synthetic = raw.synthetic;
  cfg.threads = raw.threads;
  return run(cfg, std::cout, std::cerr);
}

}  // namespace satotate::cli
