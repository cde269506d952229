// sequitur: infer, expand, and inspect hierarchical grammars from the command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sequitur/bench.hpp"
#include "sequitur/sequitur.hpp"
#include "sequitur/testkit.hpp"

namespace {

using namespace sequitur;

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitEncoding = 3;
constexpr int kExitCheck = 4;

struct io_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ios::sync_with_stdio(false);
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    if (std::cin.bad()) throw io_failure("cannot read standard input");
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_failure("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_output(const std::string& path, std::string_view data) {
  if (path.empty() || path == "-") {
    std::cout.write(data.data(), static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    if (!std::cout) throw io_failure("cannot write standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_failure("cannot open " + path + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw io_failure("cannot write " + path);
}

TokenMode token_mode(const std::string& s) { return *parse_token_mode(s); }

std::string report_problems(const ConstraintReport& rep) {
  std::string out;
  for (const auto& p : rep.problems) out += "  " + p + "\n";
  return out;
}

struct InferArgs {
  std::string input;
  std::string output;
  std::string tokens = "byte";
  std::string format = "text";
  bool check = false;
  bool counters = false;
  std::size_t max_depth = 0;
};

int cmd_infer(const InferArgs& a) {
  const std::string data = read_input(a.input);
  Tokenized t = tokenize(data, token_mode(a.tokens));
  Grammar g;
  for (std::size_t i = 0; i < t.tokens.size(); ++i) {
    append_terminal(g, t.tokens[i]);
    if (!a.check) continue;
    const ConstraintReport rep = verify_constraints(g);
    if (!rep.all_ok()) {
      std::cerr << "constraint violation after symbol " << (i + 1) << ":\n" << report_problems(rep);
      return kExitCheck;
    }
  }
  const ConstraintReport rep = verify_constraints(g);
  if (!rep.all_ok()) {
    std::cerr << "constraint violation in final grammar:\n" << report_problems(rep);
    return kExitCheck;
  }

  std::string out;
  if (a.format == "text") {
    out = emit_text(g, t.table, {.counters = a.counters});
  } else if (a.format == "json") {
    out = emit_json(g, t.table, {.counters = a.counters, .tokens = true});
  } else if (a.format == "dot") {
    out = emit_dot(g, t.table);
    if (a.counters) out += "// counters: " + counters_line(g) + "\n";
  } else {
    out = emit_bracket(g, t.table, a.max_depth);
    if (a.counters) out += counters_line(g) + "\n";
  }
  write_output(a.output, out);
  return 0;
}

int cmd_expand(const std::string& input, const std::string& output) {
  const ParsedGrammar p = parse_text(read_input(input));
  const auto tokens = expand(p.grammar);
  write_output(output, detokenize(tokens, p.table));
  return 0;
}

int cmd_stats(const InferArgs& a) {
  const std::string data = read_input(a.input);
  const auto r = infer_text(data, token_mode(a.tokens));
  const GrammarStats s = stats(r.grammar);
  std::string out;
  if (a.format == "json") {
    nlohmann::ordered_json j = {{"n", s.n},           {"o", s.o},           {"r", s.r},
                                {"depth", s.depth},   {"a1", s.counters.a1}, {"a2", s.counters.a2},
                                {"a3", s.counters.a3}, {"a4", s.counters.a4}, {"a5", s.counters.a5}};
    out = j.dump(2) + "\n";
  } else {
    out = "n=" + std::to_string(s.n) + "\no=" + std::to_string(s.o) + "\nr=" + std::to_string(s.r) +
          "\ndepth=" + std::to_string(s.depth) + "\na1=" + std::to_string(s.counters.a1) +
          "\na2=" + std::to_string(s.counters.a2) + "\na3=" + std::to_string(s.counters.a3) +
          "\na4=" + std::to_string(s.counters.a4) + "\na5=" + std::to_string(s.counters.a5) + "\n";
  }
  write_output(a.output, out);
  return 0;
}

struct GenArgs {
  std::string family;
  std::string output;
  std::size_t m = 5;
  std::size_t s = 5;
  std::size_t n = 16;
  std::size_t k = 4;
  std::size_t block_len = 5;
  std::size_t reps = 3;
  std::uint64_t seed = 1;
};

int cmd_gen(const GenArgs& a) {
  std::string out;
  const std::string& f = a.family;
  if (f == "a" || f == "deepest") out = testkit::gen_deepest(a.m);
  else if (f == "b" || f == "digram-unique") out = testkit::gen_digram_unique(a.s);
  else if (f == "c" || f == "unary") out = testkit::gen_unary(a.n);
  else if (f == "d" || f == "max-rules") out = testkit::gen_max_rules(a.k);
  else if (f == "e" || f == "cascade") out = testkit::gen_cascade(a.m);
  else if (f == "f" || f == "repeated-block") out = testkit::gen_repeated_block(a.block_len, a.reps);
  else if (f == "random") {
    if (a.s < 1 || a.s > testkit::alphabet_capacity) throw parameter_error("random: s must be in 1..26");
    out = testkit::tokens_to_letters(testkit::random_tokens(a.n, a.s, a.seed));
  } else
    throw parameter_error("unknown family '" + f + "'");
  write_output(a.output, out);
  return 0;
}

struct BenchArgs {
  std::vector<std::size_t> sizes{100000, 200000, 400000, 800000};
  std::string family = "f";
  std::size_t repeat = 5;
  std::size_t block_len = 64;
  std::uint64_t seed = 1;
};

int cmd_bench(const BenchArgs& a) {
  const auto family = bench::parse_family(a.family);
  if (!family) throw parameter_error("unknown bench family '" + a.family + "'");
  bench::InputOptions opt;
  opt.block_len = a.block_len;
  opt.seed = a.seed;
  std::cout << "# family=" << bench::name(*family) << " repeat=" << a.repeat << "\n";
  std::cout << "size seconds symbols_per_sec ratio\n";
  char line[160];
  for (const auto& r : bench::run(*family, a.sizes, a.repeat, opt)) {
    const std::string ratio = r.ratio ? std::to_string(*r.ratio) : "-";
    std::snprintf(line, sizeof line, "%zu %.6f %.0f %s\n", r.size, r.seconds, r.symbols_per_second, ratio.c_str());
    std::cout << line;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infer hierarchical grammars from symbol sequences"};
  app.require_subcommand(1);

  InferArgs infer_args;
  auto* infer = app.add_subcommand("infer", "Infer a grammar from input (default: stdin)");
  infer->add_option("input", infer_args.input, "Input file; '-' or omitted reads stdin");
  infer->add_option("-o,--output", infer_args.output, "Output file (default: stdout)");
  infer->add_option("--tokens", infer_args.tokens, "Tokenization: byte|char|word|line (default byte)")
      ->check(CLI::IsMember({"byte", "char", "word", "line"}));
  infer->add_option("--format", infer_args.format, "Output format: text|json|dot|bracket (default text)")
      ->check(CLI::IsMember({"text", "json", "dot", "bracket"}));
  infer->add_option("--max-depth", infer_args.max_depth, "Bracket format: nesting levels shown (0 = all)");
  infer->add_flag("--check", infer_args.check, "Verify both constraints after every symbol");
  infer->add_flag("--counters", infer_args.counters, "Append action counters and n/o/r/depth");

  std::string expand_input, expand_output;
  auto* expand_cmd = app.add_subcommand("expand", "Reconstruct the original input from a text grammar");
  expand_cmd->add_option("grammar", expand_input, "Grammar file; '-' or omitted reads stdin");
  expand_cmd->add_option("-o,--output", expand_output, "Output file (default: stdout)");

  InferArgs stats_args;
  auto* stats_cmd = app.add_subcommand("stats", "Print n, o, r, depth and action counters for an input");
  stats_cmd->add_option("input", stats_args.input, "Input file; '-' or omitted reads stdin");
  stats_cmd->add_option("-o,--output", stats_args.output, "Output file (default: stdout)");
  stats_cmd->add_option("--tokens", stats_args.tokens, "Tokenization: byte|char|word|line (default byte)")
      ->check(CLI::IsMember({"byte", "char", "word", "line"}));
  stats_cmd->add_option("--format", stats_args.format, "text|json (default text)")
      ->check(CLI::IsMember({"text", "json"}));

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate an extreme-case or random input sequence");
  gen->add_option("--family", gen_args.family, "a|b|c|d|e|f|random")->required();
  gen->add_option("--m", gen_args.m, "families a, e: number of blocks");
  gen->add_option("--s", gen_args.s, "family b: alphabet size; random: alphabet size");
  gen->add_option("--n", gen_args.n, "family c, random: length");
  gen->add_option("--k", gen_args.k, "family d: number of pairs");
  gen->add_option("--block-len", gen_args.block_len, "family f: block length");
  gen->add_option("--reps", gen_args.reps, "family f: repetitions");
  gen->add_option("--seed", gen_args.seed, "random: seed");
  gen->add_option("-o,--output", gen_args.output, "Output file (default: stdout)");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Time inference over growing input sizes");
  bench_cmd->add_option("--sizes", bench_args.sizes, "Input sizes")->delimiter(',');
  bench_cmd->add_option("--family", bench_args.family, "f|b|c|random (default f)");
  bench_cmd->add_option("--repeat", bench_args.repeat, "Runs per size; the median is reported (default 5)");
  bench_cmd->add_option("--block-len", bench_args.block_len, "family f: block length (default 64)");
  bench_cmd->add_option("--seed", bench_args.seed, "random: seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*infer) return cmd_infer(infer_args);
    if (*expand_cmd) return cmd_expand(expand_input, expand_output);
    if (*stats_cmd) return cmd_stats(stats_args);
    if (*gen) return cmd_gen(gen_args);
    if (*bench_cmd) return cmd_bench(bench_args);
  } catch (const io_failure& e) {
    std::cerr << "sequitur: " << e.what() << "\n";
    return kExitIo;
  } catch (const encoding_error& e) {
    std::cerr << "sequitur: " << e.what() << "\n";
    return kExitEncoding;
  } catch (const parse_error& e) {
    std::cerr << "sequitur: " << e.what() << "\n";
    return kExitEncoding;
  } catch (const resolution_error& e) {
    std::cerr << "sequitur: " << e.what() << "\n";
    return kExitEncoding;
  } catch (const corrupt_grammar_error& e) {
    std::cerr << "sequitur: " << e.what() << "\n";
    return kExitEncoding;
  } catch (const parameter_error& e) {
    std::cerr << "sequitur: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
