// hamcount: approximate counting and sampling of Hamiltonian cycles in dense digraphs.
//
// Exit codes:
//   0  success
//   1  usage or domain error (bad flag values, alpha out of range, ...)
//   2  input error (unreadable file or malformed contents; parse messages name the line)
//   3  matrix scaling did not converge
//   4  zero acceptances, or the trial budget ran out before the requested work was done
//   5  exact oracle cap exceeded
//   6  numeric failure inside the sampler
//
// Every command writes a manifest of `# key=value` lines to the top of its output,
// then its data. Diagnostics go to stderr.

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hamcount/errors.hpp"
#include "hamcount/estimator.hpp"
#include "hamcount/exact.hpp"
#include "hamcount/experiments.hpp"
#include "hamcount/io.hpp"

#ifndef HAMCOUNT_VERSION
#define HAMCOUNT_VERSION "0.0.0"
#endif

namespace {

using namespace hamcount;

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kScaling = 3, kExhausted = 4, kCap = 5, kNumeric = 6 };

struct InputFile {
  std::string path;
  std::string bytes;
  std::string sha256;
};

std::string hex_digest(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

class InputError : public Error {
 public:
  using Error::Error;
};

InputFile load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  InputFile f{path, ss.str(), {}};
  f.sha256 = hex_digest(f.bytes);
  return f;
}

class Manifest {
 public:
  explicit Manifest(std::string command) : command_(std::move(command)) {}

  template <class T>
  void flag(const std::string& name, const T& value) {
    std::ostringstream ss;
    ss << value;
    flags_.emplace_back(name, ss.str());
  }
  void flag(const std::string& name, double value) { flags_.emplace_back(name, format_number(value)); }
  void note(const std::string& text) { notes_.push_back(text); }
  void input(const InputFile& f) { inputs_.push_back(f); }

  void print(std::ostream& out) const {
    out << "# command=" << command_ << "\n# version=" << HAMCOUNT_VERSION << '\n';
    for (const auto& [k, v] : flags_) out << "# " << k << '=' << v << '\n';
    for (const InputFile& f : inputs_) out << "# input=" << f.path << " sha256=" << f.sha256 << '\n';
    for (const std::string& n : notes_) out << "# note=" << n << '\n';
  }

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> flags_;
  std::vector<InputFile> inputs_;
  std::vector<std::string> notes_;
};

WeightedDigraph parse_graph(const InputFile& f, const std::string& format) {
  std::istringstream in(f.bytes);
  if (format == "matrix") return digraph_from_matrix(read_matrix(in));
  return read_digraph(in);
}

// "8..12", "8,10,12" or "9".
std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  const std::size_t dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      const int lo = std::stoi(text.substr(0, dots));
      const int hi = std::stoi(text.substr(dots + 2));
      if (lo > hi) throw DomainError("empty size range " + text);
      for (int n = lo; n <= hi; ++n) out.push_back(n);
      return out;
    }
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  } catch (const std::logic_error&) {
    throw DomainError("bad size list " + text);
  }
  if (out.empty()) throw DomainError("bad size list " + text);
  return out;
}

std::string value_line(const std::string& key, const ExactValue& v, bool zero_one) {
  std::ostringstream out;
  out << "log_" << key << '=' << format_number(v.log_value) << '\n' << key << '=';
  if (zero_one && v.count) {
    out << *v.count;
  } else {
    const double linear = std::exp(v.log_value);
    out << (std::isfinite(linear) ? format_number(linear) : "overflow");
  }
  out << '\n';
  return out.str();
}

struct CountOptions {
  std::string file, format = "digraph", mode = "adaptive";
  double epsilon = 0.25, delta = 0.1, n_budget = 0.0;
  std::uint64_t seed = 0, max_trials = 100'000'000;
  unsigned threads = 1;
};

int cmd_count(const CountOptions& o) {
  const InputFile f = load(o.file);
  const WeightedDigraph g = parse_graph(f, o.format);
  EstimatorConfig cfg;
  cfg.epsilon = o.epsilon;
  cfg.delta = o.delta;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.max_trials = o.max_trials;
  if (o.mode == "fixed") {
    cfg.mode = EstimatorMode::kFixed;
    cfg.budget_n = o.n_budget;
  }

  Manifest m("count");
  m.flag("format", o.format);
  m.flag("epsilon", o.epsilon);
  m.flag("delta", o.delta);
  m.flag("mode", o.mode);
  if (cfg.mode == EstimatorMode::kFixed && o.n_budget <= 0.0) {
    const double alpha = density(g).alpha;
    cfg.budget_n = suggest_N(g, alpha);
    m.note("N not given; using suggest_N = n^" + format_number(suggest_n_exponent(alpha)) + " at alpha " +
           format_number(alpha));
    const std::uint64_t t = sample_budget(cfg.epsilon, cfg.delta, cfg.budget_n);
    if (t > cfg.max_trials)
      throw DomainError("suggested N = " + format_number(cfg.budget_n) + " needs " + std::to_string(t) +
                        " trials, above --max-trials " + std::to_string(cfg.max_trials) +
                        "; pass --N or raise --max-trials");
  }
  if (cfg.mode == EstimatorMode::kFixed) m.flag("N", cfg.budget_n);
  m.flag("seed", o.seed);
  m.flag("max_trials", o.max_trials);
  m.input(f);

  const EstimateReport rep = estimate(g, cfg);
  m.print(std::cout);
  std::cout << to_text(rep);
  std::cout.flush();
  if (rep.s == 0) {
    std::cerr << "no acceptances in " << rep.t << " trials; Br(C)/l = exp(" << format_number(rep.log_upper_bound())
              << ") is only an upper bound\n";
    return kExhausted;
  }
  if (rep.hit_trial_cap) {
    std::cerr << "trial cap " << cfg.max_trials << " reached with " << rep.s << " of " << rep.target
              << " acceptances; the accuracy guarantee does not hold\n";
    return kExhausted;
  }
  return kOk;
}

struct SampleOptions {
  std::string file, format = "digraph";
  std::uint64_t count = 1, seed = 0, max_trials = 10'000'000;
  double epsilon = 0.25;
  unsigned threads = 1;
};

int cmd_sample(const SampleOptions& o) {
  const InputFile f = load(o.file);
  const WeightedDigraph g = parse_graph(f, o.format);
  const LogMatrix adj = adjacency_matrix(g);
  Manifest m("sample");
  m.flag("format", o.format);
  m.flag("count", o.count);
  m.flag("epsilon", o.epsilon);
  m.flag("seed", o.seed);
  m.flag("max_trials", o.max_trials);
  m.input(f);

  const ScaledInstance inst = scale_padded(adj, o.epsilon);
  const SampleResult res = sample_cycles(inst, &adj, o.count, o.seed, o.max_trials, o.threads);
  m.print(std::cout);
  for (const HamiltonianCycle& c : res.cycles) {
    if (!is_valid_cycle(g, c.vertices)) throw NumericError("sampled cycle failed validation");
    for (std::size_t k = 0; k < c.vertices.size(); ++k) std::cout << (k ? " " : "") << c.vertices[k];
    std::cout << '\n';
  }
  std::cout << "trials=" << res.trials << "\naccepted=" << res.accepted << "\ndiscarded=" << res.discarded
            << "\nemitted=" << res.cycles.size() << "\nacceptance_rate="
            << format_number(res.trials ? double(res.accepted) / double(res.trials) : 0.0)
            << "\nclamp_events=" << res.clamp_events << '\n';
  std::cout.flush();
  if (res.cycles.size() < o.count) {
    std::cerr << "trial budget of " << o.max_trials << " exhausted after " << res.cycles.size() << " of " << o.count
              << " cycles\n";
    return kExhausted;
  }
  return kOk;
}

int cmd_exact(const std::string& file, const std::string& format, const std::string& what) {
  const InputFile f = load(file);
  std::istringstream in(f.bytes);
  const LogMatrix a = format == "matrix" ? read_matrix(in) : adjacency_matrix(read_digraph(in));
  const OracleCaps caps = OracleCaps::from_environment();
  const bool zero_one = is_zero_one(a);
  std::string out;
  if (what == "ham" || what == "both") out += value_line("ham", hamilton_dp(a, caps.hamilton), zero_one);
  if (what == "per" || what == "both") out += value_line("per", permanent_ryser(a, caps.permanent), zero_one);
  Manifest m("exact");
  m.flag("format", format);
  m.flag("what", what);
  m.flag("ham_cap", caps.hamilton);
  m.flag("per_cap", caps.permanent);
  m.input(f);
  m.print(std::cout);
  std::cout << out;
  return kOk;
}

struct GenOptions {
  int n = 10;
  double alpha = 0.8, p = 0.5;
  bool undirected = false;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenOptions& o) {
  Manifest m("gen");
  m.flag("n", o.n);
  if (o.undirected) {
    m.flag("undirected", "true");
    m.flag("p", o.p);
  } else {
    m.flag("alpha", o.alpha);
  }
  m.flag("seed", o.seed);
  std::ostringstream body;
  if (o.undirected) {
    write_undirected(body, gen_undirected(o.n, o.p, o.seed));
  } else {
    write_digraph(body, gen_dense_digraph(o.n, o.alpha, o.seed));
  }
  if (o.out.empty()) {
    m.print(std::cout);
    std::cout << body.str();
    return kOk;
  }
  std::ofstream file(o.out);
  if (!file) throw InputError("cannot write " + o.out);
  m.print(file);
  file << body.str();
  return kOk;
}

int cmd_ratio(const std::string& sizes, double alpha, int trials, std::uint64_t seed, unsigned threads) {
  Manifest m("ratio");
  m.flag("n", sizes);
  m.flag("alpha", alpha);
  m.flag("trials", trials);
  m.flag("seed", seed);
  const RatioStudy study =
      ratio_experiment(parse_sizes(sizes), alpha, trials, seed, threads, OracleCaps::from_environment());
  m.print(std::cout);
  std::cout << to_csv(study);
  const RatioSummary& s = study.summary;
  std::cerr << "fitted exponent " << format_number(s.fitted_exponent) << " (log constant "
            << format_number(s.fitted_log_constant) << ") against bound exponent " << format_number(s.bound_exponent)
            << " over " << s.points << " points" << (s.flagged ? "; FLAGGED: fit exceeds bound + 1" : "") << '\n';
  return kOk;
}

int cmd_reduce(const std::string& file) {
  const InputFile f = load(file);
  std::istringstream in(f.bytes);
  const ReductionRecord r = reduction_check(read_undirected(in));
  Manifest m("reduce");
  m.input(f);
  m.print(std::cout);
  std::cout << "hc=" << r.hc_undirected << " dhc=" << r.dhc_directed << ' '
            << (r.consistent ? "consistent" : "inconsistent") << '\n';
  return kOk;
}

struct ValidateOptions {
  std::string sizes = "8..10";
  double alpha = 0.8, epsilon = 0.25, delta = 0.1;
  int runs = 50;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

int cmd_validate(const ValidateOptions& o) {
  const std::vector<int> sizes = parse_sizes(o.sizes);
  for (std::size_t k = 1; k < sizes.size(); ++k)
    if (sizes[k] != sizes[k - 1] + 1) throw DomainError("validate takes a contiguous range lo..hi");
  Manifest m("validate");
  m.flag("n", o.sizes);
  m.flag("alpha", o.alpha);
  m.flag("runs", o.runs);
  m.flag("epsilon", o.epsilon);
  m.flag("delta", o.delta);
  m.flag("seed", o.seed);
  const SweepSummary s =
      validation_sweep(sizes.front(), sizes.back(), o.alpha, o.runs, o.epsilon, o.delta, o.seed, o.threads);
  m.print(std::cout);
  std::cout << to_csv(s);
  std::cerr << "coverage " << format_number(s.coverage) << " (target " << format_number(s.target_coverage) << ")\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate counting and perfect sampling of Hamiltonian cycles in dense digraphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", HAMCOUNT_VERSION);

  const std::vector<std::string> graph_formats{"digraph", "matrix"};

  CountOptions count;
  CLI::App* c = app.add_subcommand("count", "Estimate the total Hamiltonian-cycle weight");
  c->add_option("graph", count.file, "Graph file")->required();
  c->add_option("--format", count.format, "Input format")->check(CLI::IsMember(graph_formats));
  c->add_option("--epsilon", count.epsilon, "Relative accuracy")->check(CLI::Range(0.0, 1.0));
  c->add_option("--delta", count.delta, "Failure probability")->check(CLI::Range(0.0, 1.0));
  c->add_option("--mode", count.mode, "fixed or adaptive")->check(CLI::IsMember({"fixed", "adaptive"}));
  c->add_option("--N", count.n_budget, "Fixed-mode budget factor (default: suggested from density)");
  c->add_option("--seed", count.seed, "Random seed");
  c->add_option("--threads", count.threads, "Worker threads")->check(CLI::PositiveNumber);
  c->add_option("--max-trials", count.max_trials, "Hard cap on trials");

  SampleOptions sample;
  CLI::App* s = app.add_subcommand("sample", "Draw weight-proportional Hamiltonian cycles");
  s->add_option("graph", sample.file, "Graph file")->required();
  s->add_option("--format", sample.format, "Input format")->check(CLI::IsMember(graph_formats));
  s->add_option("--count", sample.count, "Number of cycles");
  s->add_option("--epsilon", sample.epsilon, "Padding accuracy")->check(CLI::Range(0.0, 1.0));
  s->add_option("--seed", sample.seed, "Random seed");
  s->add_option("--threads", sample.threads, "Worker threads")->check(CLI::PositiveNumber);
  s->add_option("--max-trials", sample.max_trials, "Hard cap on trials");

  std::string exact_file, exact_format = "digraph", what = "both";
  CLI::App* e = app.add_subcommand("exact", "Exact Hamilton and permanent values");
  e->add_option("graph", exact_file, "Graph file")->required();
  e->add_option("--format", exact_format, "Input format")->check(CLI::IsMember(graph_formats));
  e->add_option("--what", what, "ham, per or both")->check(CLI::IsMember({"ham", "per", "both"}));

  GenOptions gen;
  CLI::App* gcmd = app.add_subcommand("gen", "Generate a random dense digraph");
  gcmd->add_option("--n", gen.n, "Number of vertices")->check(CLI::PositiveNumber);
  gcmd->add_option("--alpha", gen.alpha, "Minimum degree fraction")->check(CLI::Range(0.0, 1.0));
  gcmd->add_flag("--undirected", gen.undirected, "Generate an undirected G(n, p) graph instead");
  gcmd->add_option("--p", gen.p, "Edge probability for --undirected")->check(CLI::Range(0.0, 1.0));
  gcmd->add_option("--seed", gen.seed, "Random seed");
  gcmd->add_option("--out", gen.out, "Output file (default: stdout)");

  std::string ratio_sizes = "8..12";
  double ratio_alpha = 0.85;
  int ratio_trials = 5;
  std::uint64_t ratio_seed = 0;
  unsigned ratio_threads = 1;
  CLI::App* r = app.add_subcommand("ratio", "Permanent to Hamilton ratio on random dense instances");
  r->add_option("--n", ratio_sizes, "Sizes: lo..hi, a comma list, or one value");
  r->add_option("--alpha", ratio_alpha, "Density")->check(CLI::Range(0.0, 1.0));
  r->add_option("--trials", ratio_trials, "Instances per size")->check(CLI::PositiveNumber);
  r->add_option("--seed", ratio_seed, "Random seed");
  r->add_option("--threads", ratio_threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string reduce_file;
  CLI::App* red = app.add_subcommand("reduce", "Compare undirected and lifted directed cycle counts");
  red->add_option("graph", reduce_file, "Undirected graph file")->required();

  ValidateOptions val;
  CLI::App* v = app.add_subcommand("validate", "Estimator against the exact oracle on random instances");
  v->add_option("--n", val.sizes, "Size range lo..hi");
  v->add_option("--alpha", val.alpha, "Density")->check(CLI::Range(0.0, 1.0));
  v->add_option("--runs", val.runs, "Number of instances")->check(CLI::NonNegativeNumber);
  v->add_option("--epsilon", val.epsilon, "Relative accuracy")->check(CLI::Range(0.0, 1.0));
  v->add_option("--delta", val.delta, "Failure probability")->check(CLI::Range(0.0, 1.0));
  v->add_option("--seed", val.seed, "Random seed");
  v->add_option("--threads", val.threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*c) return cmd_count(count);
    if (*s) return cmd_sample(sample);
    if (*e) return cmd_exact(exact_file, exact_format, what);
    if (*gcmd) return cmd_gen(gen);
    if (*r) return cmd_ratio(ratio_sizes, ratio_alpha, ratio_trials, ratio_seed, ratio_threads);
    if (*red) return cmd_reduce(reduce_file);
    if (*v) return cmd_validate(val);
  } catch (const ParseError& err) {
    std::cerr << "parse error: " << err.what() << '\n';
    return kInput;
  } catch (const InputError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kInput;
  } catch (const ScalingError& err) {
    std::cerr << "scaling failed: " << err.what() << '\n';
    return kScaling;
  } catch (const CapExceeded& err) {
    std::cerr << "cap exceeded: " << err.what() << " (see HAM_ORACLE_CAP / PER_ORACLE_CAP)\n";
    return kCap;
  } catch (const NumericError& err) {
    std::cerr << "numeric error: " << err.what() << '\n';
    return kNumeric;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
