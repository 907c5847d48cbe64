// lexfield: command-line interface over the semantic field library.
// One subcommand per operation family; all numeric output is printed with
// 17 significant digits so runs are reproducible byte for byte.

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli_support.hpp"
#include "lexfield/attention.hpp"
#include "lexfield/dynamics.hpp"
#include "lexfield/errors.hpp"
#include "lexfield/version.hpp"

namespace {

using namespace lexfield;
using cli::OutputSink;
using cli::Session;
using cli::SessionOptions;
using cli::UsageError;

std::vector<std::string> g_argv;

std::string csv_row(const Vec& values) {
  std::string row;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) row += ',';
    row += format_double(values[i]);
  }
  return row;
}

struct FieldSampleCmd {
  SessionOptions session;
  std::vector<std::string> region;
  int grid = 64;
  std::string out;

  void run() const {
    const Session s = cli::open_session(session);
    const Region r = cli::parse_region(region, s.vocab.dim(), false, grid, 0);
    const auto samples = sample_grid(s.phrase, r, s.config.field);

    OutputSink sink(out, "field-sample", g_argv, s.config_hash, 0);
    auto& os = sink.stream();
    for (std::size_t d = 1; d <= s.vocab.dim(); ++d) os << 'q' << d << ',';
    os << "phi\n";
    for (const auto& sample : samples) {
      os << csv_row(sample.point) << ',' << format_double(sample.value) << '\n';
    }
    sink.flush();
  }
};

struct NavigateCmd {
  SessionOptions session;
  std::string q0;
  double dt = 1e-3;
  std::int64_t steps = 1000;
  std::string method = "rk4";
  bool ascend = false;
  std::string out;

  void run() const {
    const Session s = cli::open_session(session);
    const Vec start = cli::parse_point(q0, s.vocab.dim());
    const Integrator integ = (method == "euler") ? Integrator::euler : Integrator::rk4;
    const Trajectory traj = navigate(s.phrase, start, s.config.field, dt, steps,
                                     integ, ascend);

    OutputSink sink(out, "navigate", g_argv, s.config_hash, 0);
    auto& os = sink.stream();
    os << 't';
    for (std::size_t d = 1; d <= s.vocab.dim(); ++d) os << ",q" << d;
    os << ",phi\n";
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      os << format_double(traj.times[i]) << ',' << csv_row(traj.states[i]) << ','
         << format_double(traj.field_values[i]) << '\n';
    }
    sink.flush();
  }
};

struct LyapunovCmd {
  SessionOptions session;
  std::string q0;
  LyapunovParams params;
  std::string out;

  void run() const {
    const Session s = cli::open_session(session);
    const Vec start = cli::parse_point(q0, s.vocab.dim());
    const double lambda = lyapunov_estimate(s.phrase, start, s.config.field, params);

    OutputSink sink(out, "lyapunov", g_argv, s.config_hash, params.seed);
    sink.stream() << format_double(lambda) << '\n';
    sink.flush();
  }
};

struct EnergyCmd {
  SessionOptions session;
  std::vector<std::string> region;
  std::string functional;
  double lambda = 1.0;
  double mu = 1.0;
  int grid = 0;
  std::int64_t mc = 0;
  std::uint64_t seed = 0;
  std::string weight = "uniform";
  std::string out;

  void run() const {
    if ((grid > 0) == (mc > 0)) {
      throw UsageError("choose exactly one of --grid N or --mc N");
    }
    const Session s = cli::open_session(session);
    const Region r = cli::parse_region(region, s.vocab.dim(), mc > 0, grid, mc);

    QuadratureResult result;
    if (functional == "hamiltonian") {
      result = hamiltonian(s.phrase, r, s.config.field, mu, seed);
    } else if (functional == "binding") {
      result = binding_energy(s.phrase, r, s.config.field, lambda, seed);
    } else {
      result = field_integration(s.phrase, r, s.config.field,
                                 cli::parse_weight(weight, s.vocab.dim()), seed);
    }

    OutputSink sink(out, "energy", g_argv, s.config_hash, seed);
    sink.stream() << format_double(result.value);
    if (result.std_error) sink.stream() << ' ' << format_double(*result.std_error);
    sink.stream() << '\n';
    sink.flush();
  }
};

struct AttentionCompareCmd {
  SessionOptions session;
  std::size_t query = 0;
  std::string format = "table";
  std::string out;

  void run() const {
    const Session s = cli::open_session(session);
    const auto& words = s.phrase.words;
    const std::size_t m = words.size();
    if (query >= m) {
      throw UsageError("--query " + std::to_string(query) +
                       " out of range for a phrase of length " + std::to_string(m));
    }

    // field side: interaction strengths at the query word's position
    const Vec field_w =
        field_attention_weights(s.phrase, query, words[query].position, s.config.field);

    // softmax side: scaled dot products of the word vectors themselves
    Vec logits;
    std::vector<std::size_t> positions;
    for (std::size_t pos = 0; pos < m; ++pos) {
      if (pos == query) continue;
      positions.push_back(pos);
      logits.push_back(
          compatibility(words[query].position, words[pos].position, s.vocab.dim()));
    }
    const Vec soft_w = attention_weights(logits);
    const double tv = attention_divergence(soft_w, field_w);

    OutputSink sink(out, "attention-compare", g_argv, s.config_hash, 0);
    auto& os = sink.stream();
    if (format == "csv") {
      os << "position,token,softmax_weight,field_weight,tv_divergence\n";
      for (std::size_t i = 0; i < positions.size(); ++i) {
        os << positions[i] << ',' << words[positions[i]].id << ','
           << format_double(soft_w[i]) << ',' << format_double(field_w[i]) << ','
           << format_double(tv) << '\n';
      }
    } else {
      os << std::left << std::setw(9) << "position" << std::setw(16) << "token"
         << std::setw(26) << "softmax" << std::setw(26) << "field" << '\n';
      for (std::size_t i = 0; i < positions.size(); ++i) {
        os << std::left << std::setw(9) << positions[i] << std::setw(16)
           << words[positions[i]].id << std::setw(26) << format_double(soft_w[i])
           << std::setw(26) << format_double(field_w[i]) << '\n';
      }
      os << "total variation divergence: " << format_double(tv) << '\n';
    }
    sink.flush();
  }
};

struct AnalogyCmd {
  std::string words_path;
  std::string a, b, c;
  std::size_t k = 5;
  std::string out;

  void run() const {
    if (words_path.empty()) throw UsageError("--words is required");
    const Vocabulary vocab = load_embeddings_file(words_path);
    const auto hits = analogy(vocab, a, b, c, k);

    OutputSink sink(out, "analogy", g_argv, "default", 0);
    for (const auto& hit : hits) {
      sink.stream() << hit.token << ' ' << format_double(hit.similarity) << '\n';
    }
    sink.flush();
  }
};

struct NeighborsCmd {
  std::string words_path;
  std::string token;
  std::size_t k = 5;
  std::string out;

  void run() const {
    if (words_path.empty()) throw UsageError("--words is required");
    const Vocabulary vocab = load_embeddings_file(words_path);
    const auto hits = nearest_neighbors(vocab, token, k);

    OutputSink sink(out, "neighbors", g_argv, "default", 0);
    for (const auto& hit : hits) {
      sink.stream() << hit.token << ' ' << format_double(hit.similarity) << '\n';
    }
    sink.flush();
  }
};

struct LmLossCmd {
  SessionOptions session;
  std::string seq;
  int window = 8;
  double temperature = 1.0;
  std::string out;

  void run() const {
    const Session s = cli::open_session(session, /*need_phrase=*/false);
    const auto tokens = cli::split_tokens(seq);
    const double loss = lm_loss(s.vocab, tokens, s.config.field, window, temperature);

    OutputSink sink(out, "lm-loss", g_argv, s.config_hash, 0);
    sink.stream() << format_double(loss) << '\n';
    sink.flush();
  }
};

struct LmFitCmd {
  SessionOptions session;
  std::string corpus_path;
  int steps = 20;
  double rate = 0.1;
  int window = 8;
  double temperature = 1.0;
  std::string out;

  void run() const {
    const Session s = cli::open_session(session, /*need_phrase=*/false);
    if (corpus_path.empty()) throw UsageError("--corpus is required");
    if (out.empty()) throw UsageError("--out is required (updated vocabulary path)");

    std::ifstream in(corpus_path);
    if (!in) throw Error("cannot open corpus file: " + corpus_path);
    std::vector<TokenSequence> corpus;
    std::string line;
    while (std::getline(in, line)) {
      auto tokens = cli::split_tokens(line);
      if (!tokens.empty()) corpus.push_back(std::move(tokens));
    }

    const LmFitResult fit =
        lm_fit(s.vocab, corpus, s.config.field, steps, rate, window, temperature);

    // the trained vocabulary is the run's output file; the loss history
    // stays on stdout
    OutputSink sink(out, "lm-fit", g_argv, s.config_hash, 0);
    save_embeddings(fit.vocab, sink.stream());
    sink.flush();
    for (const double l : fit.history) std::cout << format_double(l) << '\n';
  }
};

void add_session_flags(CLI::App* cmd, SessionOptions& opts, bool with_phrase = true) {
  cmd->add_option("--config", opts.config_path,
                  "JSON field configuration (default: $LEXFIELD_CONFIG)");
  cmd->add_option("--words", opts.words_path, "embedding file (token v1 ... vD)")
      ->required();
  if (with_phrase) {
    cmd->add_option("--phrase", opts.phrase_text,
                    "space-separated tokens resolved against --words")
        ->required();
  }
}

}  // namespace

int main(int argc, char** argv) {
  g_argv.assign(argv + 1, argv + argc);

  CLI::App app{"lexfield: kernel word fields, their dynamics and energetics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::map<const CLI::App*, std::function<void()>> runners;

  FieldSampleCmd field_sample;
  {
    auto* cmd = app.add_subcommand("field-sample", "export a field grid as CSV");
    add_session_flags(cmd, field_sample.session);
    cmd->add_option("--region", field_sample.region, "per-axis 'lo,hi' (single pair broadcasts)")
        ->required();
    cmd->add_option("--grid", field_sample.grid, "points per axis");
    cmd->add_option("--out", field_sample.out, "write output (and manifest) to a file");
    runners[cmd] = [&] { field_sample.run(); };
  }

  NavigateCmd nav;
  {
    auto* cmd = app.add_subcommand("navigate", "integrate dq/dt = -grad(phi)");
    add_session_flags(cmd, nav.session);
    cmd->add_option("--q0", nav.q0, "start point, comma-separated")->required();
    cmd->add_option("--dt", nav.dt, "time step");
    cmd->add_option("--steps", nav.steps, "number of steps");
    cmd->add_option("--method", nav.method, "integrator")
        ->check(CLI::IsMember({"euler", "rk4"}));
    cmd->add_flag("--ascend", nav.ascend, "climb the field instead of descending");
    cmd->add_option("--out", nav.out, "write output (and manifest) to a file");
    runners[cmd] = [&] { nav.run(); };
  }

  LyapunovCmd lyap;
  {
    auto* cmd = app.add_subcommand("lyapunov", "largest Lyapunov exponent of the flow");
    add_session_flags(cmd, lyap.session);
    cmd->add_option("--q0", lyap.q0, "start point, comma-separated")->required();
    cmd->add_option("--dt", lyap.params.dt, "time step");
    cmd->add_option("--steps", lyap.params.steps, "number of steps");
    cmd->add_option("--renorm", lyap.params.renorm_interval, "steps between renormalizations");
    cmd->add_option("--delta0", lyap.params.delta0, "initial separation");
    cmd->add_option("--seed", lyap.params.seed, "perturbation direction seed");
    cmd->add_option("--out", lyap.out, "write output (and manifest) to a file");
    runners[cmd] = [&] { lyap.run(); };
  }

  EnergyCmd energy;
  {
    auto* cmd = app.add_subcommand("energy", "field functionals over a region");
    add_session_flags(cmd, energy.session);
    cmd->add_option("--region", energy.region, "per-axis 'lo,hi' (single pair broadcasts)")
        ->required();
    cmd->add_option("--functional", energy.functional, "which functional")
        ->required()
        ->check(CLI::IsMember({"hamiltonian", "binding", "integrate"}));
    cmd->add_option("--lambda", energy.lambda, "binding coefficient");
    cmd->add_option("--mu", energy.mu, "potential coefficient");
    cmd->add_option("--grid", energy.grid, "grid points per axis");
    cmd->add_option("--mc", energy.mc, "monte-carlo samples");
    cmd->add_option("--seed", energy.seed, "monte-carlo seed");
    cmd->add_option("--weight", energy.weight,
                    "integrate weighting: uniform | gaussian:center...,width");
    cmd->add_option("--out", energy.out, "write output (and manifest) to a file");
    runners[cmd] = [&] { energy.run(); };
  }

  AttentionCompareCmd acmp;
  {
    auto* cmd = app.add_subcommand("attention-compare",
                                   "softmax attention vs field interaction weights");
    add_session_flags(cmd, acmp.session);
    cmd->add_option("--query", acmp.query, "0-based query position in the phrase");
    cmd->add_option("--format", acmp.format, "output format")
        ->check(CLI::IsMember({"table", "csv"}));
    cmd->add_option("--out", acmp.out, "write output (and manifest) to a file");
    runners[cmd] = [&] { acmp.run(); };
  }

  AnalogyCmd ana;
  {
    auto* cmd = app.add_subcommand("analogy", "rank tokens by cosine to a - b + c");
    cmd->add_option("--words", ana.words_path, "embedding file")->required();
    cmd->add_option("a", ana.a, "token a")->required();
    cmd->add_option("b", ana.b, "token b")->required();
    cmd->add_option("c", ana.c, "token c")->required();
    cmd->add_option("--k", ana.k, "results to return");
    cmd->add_option("--out", ana.out, "write output (and manifest) to a file");
    runners[cmd] = [&] { ana.run(); };
  }

  NeighborsCmd nn;
  {
    auto* cmd = app.add_subcommand("neighbors", "nearest tokens by cosine");
    cmd->add_option("--words", nn.words_path, "embedding file")->required();
    cmd->add_option("token", nn.token, "query token")->required();
    cmd->add_option("--k", nn.k, "results to return");
    cmd->add_option("--out", nn.out, "write output (and manifest) to a file");
    runners[cmd] = [&] { nn.run(); };
  }

  LmLossCmd lml;
  {
    auto* cmd = app.add_subcommand("lm-loss", "negative log-likelihood under the field LM");
    add_session_flags(cmd, lml.session, /*with_phrase=*/false);
    cmd->add_option("--seq", lml.seq, "space-separated token sequence")->required();
    cmd->add_option("--window", lml.window, "context window");
    cmd->add_option("--temperature", lml.temperature, "logit divisor");
    cmd->add_option("--out", lml.out, "write output (and manifest) to a file");
    runners[cmd] = [&] { lml.run(); };
  }

  LmFitCmd lmf;
  {
    auto* cmd = app.add_subcommand("lm-fit", "fit word positions to a corpus");
    add_session_flags(cmd, lmf.session, /*with_phrase=*/false);
    cmd->add_option("--corpus", lmf.corpus_path, "one token sequence per line")->required();
    cmd->add_option("--steps", lmf.steps, "descent steps");
    cmd->add_option("--rate", lmf.rate, "descent step size");
    cmd->add_option("--window", lmf.window, "context window");
    cmd->add_option("--temperature", lmf.temperature, "logit divisor");
    cmd->add_option("--out", lmf.out, "updated vocabulary path")->required();
    runners[cmd] = [&] { lmf.run(); };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n'
              << "valid subcommands: field-sample, navigate, lyapunov, energy, "
                 "attention-compare, analogy, neighbors, lm-loss, lm-fit\n"
              << "run 'lexfield --help' for flag details\n";
    return 2;
  }

  try {
    for (const auto& [cmd, run] : runners) {
      if (cmd->parsed()) {
        run();
        return 0;
      }
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
