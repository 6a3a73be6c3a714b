#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "efpa/core.hpp"
#include "efpa/generators.hpp"
#include "efpa/io.hpp"
#include "efpa/oracle.hpp"
#include "efpa/solvers.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

efpa::Measure parse_measure(const std::string& name) {
  const auto measure = efpa::measure_from_string(name);
  if (!measure) throw std::invalid_argument("unknown measure \"" + name + "\"");
  return *measure;
}

std::int64_t default_vector_budget() {
  if (const char* env = std::getenv("EFPA_BUDGET")) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(env, env + std::string(env).size(), value);
    if (ec != std::errc() || *ptr != '\0' || value <= 0) {
      throw std::invalid_argument("EFPA_BUDGET must be a positive integer");
    }
    return value;
  }
  return 10'000'000;
}

std::vector<std::int64_t> parse_number_list(const std::string& text) {
  std::vector<std::int64_t> numbers;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    numbers.push_back(std::stoll(item));
  }
  if (numbers.empty()) throw std::invalid_argument("empty number list");
  return numbers;
}

// "2..6" expands the range; "2,4,8" lists sizes directly.
std::vector<int> parse_sizes(const std::string& text) {
  const auto dots = text.find("..");
  std::vector<int> sizes;
  if (dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument("empty size range");
    for (int s = lo; s <= hi; ++s) sizes.push_back(s);
  } else {
    for (std::int64_t s : parse_number_list(text)) sizes.push_back(static_cast<int>(s));
  }
  return sizes;
}

// Triples separated by ';', elements by ','.
std::vector<std::array<int, 3>> parse_sets(const std::string& text) {
  std::vector<std::array<int, 3>> sets;
  std::stringstream stream(text);
  std::string triple;
  while (std::getline(stream, triple, ';')) {
    const auto elements = parse_number_list(triple);
    if (elements.size() != 3) throw std::invalid_argument("each set needs three elements");
    sets.push_back({static_cast<int>(elements[0]), static_cast<int>(elements[1]),
                    static_cast<int>(elements[2])});
  }
  if (sets.empty()) throw std::invalid_argument("empty set list");
  return sets;
}

struct SolveOptions {
  std::string input;
  std::string measure;
  std::int64_t threshold = 0;
  std::string algorithm = "auto";
  std::string witness_path;
  std::int64_t budget = 0;  // 0 = default / environment
  bool json_output = false;
};

int run_solve(const SolveOptions& options) {
  const efpa::Instance instance = efpa::parse_instance_document(read_file(options.input));
  const efpa::Query query{instance, parse_measure(options.measure), options.threshold};

  efpa::AlgorithmChoice choice;
  if (options.algorithm == "auto") {
    choice = efpa::AlgorithmChoice::Auto;
  } else if (options.algorithm == "poly") {
    choice = efpa::AlgorithmChoice::PolyBinary;
  } else if (options.algorithm == "fpt") {
    choice = efpa::AlgorithmChoice::FptBinary;
  } else if (options.algorithm == "oracle") {
    choice = efpa::AlgorithmChoice::Oracle;
  } else {
    throw std::invalid_argument("unknown algorithm \"" + options.algorithm + "\"");
  }

  efpa::OracleBudget budget;
  budget.max_owner_vectors = options.budget > 0 ? options.budget : default_vector_budget();

  efpa::SolverResult result;
  try {
    result = efpa::solve(query, choice, budget);
  } catch (const efpa::BudgetExceededError& error) {
    if (options.json_output) {
      std::cout << "{\"answer\": \"unknown\"}" << std::endl;
    } else {
      std::cout << "unknown" << std::endl;
    }
    std::cerr << error.what() << std::endl;
    return kExitBudget;
  }

  const bool yes = result.answer == efpa::Answer::Yes;
  if (options.json_output) {
    std::ostringstream out;
    out << "{\"answer\": \"" << (yes ? "yes" : "no") << "\", \"algorithm_used\": \""
        << result.stats.algorithm_used << "\", \"nodes_explored\": "
        << result.stats.nodes_explored << ", \"elapsed_ms\": "
        << result.stats.elapsed.count() * 1000.0 << "}";
    std::cout << out.str() << std::endl;
  } else {
    std::cout << (yes ? "yes" : "no") << std::endl;
  }
  if (yes && !options.witness_path.empty()) {
    write_file(options.witness_path, efpa::serialize_allocation_document(*result.witness));
  }
  return yes ? kExitYes : kExitNo;
}

struct VerifyOptions {
  std::string input;
  std::string allocation;
  std::string measure;
  std::int64_t threshold = 0;
};

int run_verify(const VerifyOptions& options) {
  const efpa::Instance instance = efpa::parse_instance_document(read_file(options.input));
  const efpa::Allocation allocation =
      efpa::parse_allocation_document(read_file(options.allocation), instance);
  const efpa::VerifyReport report = efpa::verify_allocation(
      instance, allocation, parse_measure(options.measure), options.threshold);
  if (!report.ok) {
    std::cout << report.diagnostic << std::endl;
    return kExitNo;
  }
  std::cout << "ok" << std::endl;
  return kExitYes;
}

struct GenOptions {
  std::string gadget;
  int n = 0;
  int m = 0;
  std::string numbers;
  std::string sets;
  int ground = 0;  // 0 = infer from the largest element
  std::int64_t v = 0;
  std::int64_t u = 0;
  std::int64_t k = 0;
  std::int64_t c = 0;
  std::uint64_t seed = 0;
  std::string cls = "binary";
  bool identical = false;
  std::string base;
  std::string out;
};

efpa::X3cInput x3c_from_options(const GenOptions& options) {
  const auto sets = parse_sets(options.sets);
  int ground = options.ground;
  if (ground == 0) {
    for (const auto& triple : sets) {
      for (int element : triple) ground = std::max(ground, element + 1);
    }
    ground = (ground + 2) / 3 * 3;
  }
  return efpa::X3cInput::make(ground, sets);
}

int run_gen(const GenOptions& options) {
  efpa::Instance instance = efpa::gen_folklore(1);
  if (options.gadget == "folklore") {
    instance = efpa::gen_folklore(options.n);
  } else if (options.gadget == "identical-3partition") {
    const auto input = efpa::ThreePartitionInput::make(parse_number_list(options.numbers));
    for (const auto& warning : input.warnings()) {
      std::cerr << "warning: " << warning << std::endl;
    }
    instance = efpa::gen_identical_3partition(input);
  } else if (options.gadget == "shadow") {
    const efpa::Instance base = efpa::parse_instance_document(read_file(options.base));
    if (options.v > 0 || options.u > 0) {
      instance = efpa::gen_shadow_extension(base, options.v, options.u);
    } else {
      instance = efpa::gen_shadow_extension(base);
    }
  } else if (options.gadget == "x3c-kv") {
    instance = efpa::gen_x3c_kv(x3c_from_options(options), options.v,
                                static_cast<int>(options.k));
  } else if (options.gadget == "x3c-2v") {
    instance = efpa::gen_x3c_2v(x3c_from_options(options), options.v);
  } else if (options.gadget == "x3c-kvc") {
    instance = efpa::gen_x3c_kvc(x3c_from_options(options), options.v, options.k, options.c);
  } else if (options.gadget == "random") {
    efpa::UtilityClass cls;
    cls.identical = options.identical;
    if (options.cls == "binary") {
      cls.tag = efpa::UtilityClass::Tag::Binary;
    } else if (options.cls == "bivalued") {
      cls.tag = efpa::UtilityClass::Tag::Bivalued;
    } else if (options.cls == "ternary") {
      cls.tag = efpa::UtilityClass::Tag::Ternary;
      cls.low = options.v > 0 ? options.v : 1;
      cls.high = options.u > 0 ? options.u : 2;
    } else if (options.cls == "general") {
      cls.tag = efpa::UtilityClass::Tag::General;
    } else {
      throw std::invalid_argument("unknown class \"" + options.cls + "\"");
    }
    instance = efpa::gen_random(options.n, options.m, cls, options.seed);
  } else {
    throw std::invalid_argument("unknown gadget \"" + options.gadget + "\"");
  }

  const std::string document = efpa::serialize_instance_document(instance);
  if (options.out.empty()) {
    std::cout << document;
  } else {
    write_file(options.out, document);
  }
  return kExitYes;
}

struct BenchOptions {
  std::string family;
  std::string sizes;
  std::string measure;
  std::string threshold = "1";
  double timeout_seconds = 10.0;
  std::string out;
  int trials = 3;
};

int run_bench(const BenchOptions& options) {
  const efpa::Measure measure = parse_measure(options.measure);
  const auto sizes = parse_sizes(options.sizes);

  const bool threshold_tracks_n = options.threshold == "n";
  std::int64_t fixed_threshold = 0;
  if (!threshold_tracks_n) fixed_threshold = std::stoll(options.threshold);

  auto make_instance = [&](int size, int trial) -> efpa::Instance {
    const std::uint64_t seed =
        static_cast<std::uint64_t>(size) * 1000003u + static_cast<std::uint64_t>(trial);
    efpa::UtilityClass cls;
    if (options.family == "folklore") {
      return efpa::gen_folklore(size);
    } else if (options.family == "random-binary") {
      cls.tag = efpa::UtilityClass::Tag::Binary;
    } else if (options.family == "random-bivalued") {
      cls.tag = efpa::UtilityClass::Tag::Bivalued;
    } else if (options.family == "random-ternary") {
      cls.tag = efpa::UtilityClass::Tag::Ternary;
      cls.low = 1;
      cls.high = 2;
    } else if (options.family == "random-general") {
      cls.tag = efpa::UtilityClass::Tag::General;
    } else {
      throw std::invalid_argument("unknown family \"" + options.family + "\"");
    }
    return efpa::gen_random(size, size, cls, seed);
  };

  std::ostringstream csv;
  csv << "family,n,m,t,measure,algorithm,answer,elapsed_ms,nodes\n";
  for (int size : sizes) {
    for (int trial = 0; trial < options.trials; ++trial) {
      const efpa::Instance instance = make_instance(size, trial);
      const std::int64_t threshold =
          threshold_tracks_n ? instance.n_agents() : fixed_threshold;

      efpa::OracleBudget budget;
      budget.max_owner_vectors = std::numeric_limits<std::int64_t>::max();
      budget.max_elapsed = std::chrono::duration<double>(options.timeout_seconds);

      std::string answer;
      std::string algorithm;
      std::int64_t nodes = 0;
      const auto started = std::chrono::steady_clock::now();
      try {
        const efpa::SolverResult result =
            efpa::solve({instance, measure, threshold}, efpa::AlgorithmChoice::Auto, budget);
        answer = result.answer == efpa::Answer::Yes ? "yes" : "no";
        algorithm = result.stats.algorithm_used;
        nodes = result.stats.nodes_explored;
      } catch (const efpa::BudgetExceededError&) {
        answer = "timeout";
        algorithm = "oracle-enumeration";
      }
      const std::chrono::duration<double> elapsed =
          std::chrono::steady_clock::now() - started;
      csv << options.family << ',' << instance.n_agents() << ',' << instance.m_resources()
          << ',' << threshold << ',' << efpa::to_string(measure) << ',' << algorithm << ','
          << answer << ',' << elapsed.count() * 1000.0 << ',' << nodes << '\n';
    }
  }
  write_file(options.out, csv.str());
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision-and-witness toolkit for envy-free partial allocations"};
  app.require_subcommand(1);

  SolveOptions solve_options;
  CLI::App* solve = app.add_subcommand("solve", "decide a query and emit a witness");
  solve->add_option("--input", solve_options.input, "instance document")->required();
  solve->add_option("--measure", solve_options.measure, "usw|esw|size|mcar")->required();
  solve->add_option("--threshold", solve_options.threshold, "efficiency threshold")
      ->required();
  solve->add_option("--algorithm", solve_options.algorithm, "auto|poly|fpt|oracle");
  solve->add_option("--witness", solve_options.witness_path, "write the witness here");
  solve->add_option("--budget", solve_options.budget, "owner-vector cap for the oracle");
  solve->add_flag("--json", solve_options.json_output, "machine-readable result");

  VerifyOptions verify_options;
  CLI::App* verify = app.add_subcommand("verify", "check an allocation against a query");
  verify->add_option("--input", verify_options.input, "instance document")->required();
  verify->add_option("--allocation", verify_options.allocation, "allocation document")
      ->required();
  verify->add_option("--measure", verify_options.measure, "usw|esw|size|mcar")->required();
  verify->add_option("--threshold", verify_options.threshold, "efficiency threshold")
      ->required();

  GenOptions gen_options;
  CLI::App* gen = app.add_subcommand("gen", "materialize an instance family");
  gen->add_option("--gadget", gen_options.gadget,
                  "folklore|identical-3partition|shadow|x3c-kv|x3c-2v|x3c-kvc|random")
      ->required();
  gen->add_option("--n", gen_options.n, "agent count");
  gen->add_option("--m", gen_options.m, "resource count");
  gen->add_option("--numbers", gen_options.numbers, "comma-separated multiset");
  gen->add_option("--sets", gen_options.sets, "semicolon-separated triples, e.g. 0,1,2;0,1,3");
  gen->add_option("--ground", gen_options.ground, "ground set size (default: inferred)");
  gen->add_option("--v", gen_options.v, "small positive value");
  gen->add_option("--u", gen_options.u, "large positive value");
  gen->add_option("--k", gen_options.k, "multiplier");
  gen->add_option("--c", gen_options.c, "remainder");
  gen->add_option("--seed", gen_options.seed, "random seed");
  gen->add_option("--class", gen_options.cls, "binary|bivalued|ternary|general");
  gen->add_flag("--identical", gen_options.identical, "all agents share one row");
  gen->add_option("--base", gen_options.base, "base instance for the shadow extension");
  gen->add_option("--out", gen_options.out, "output path (default: stdout)");

  BenchOptions bench_options;
  CLI::App* bench = app.add_subcommand("bench", "time solver runs over a family");
  bench->add_option("--family", bench_options.family,
                    "folklore|random-binary|random-bivalued|random-ternary|random-general")
      ->required();
  bench->add_option("--sizes", bench_options.sizes, "range 2..6 or list 2,4,8")->required();
  bench->add_option("--measure", bench_options.measure, "usw|esw|size|mcar")->required();
  bench->add_option("--threshold", bench_options.threshold,
                    "efficiency threshold, or n for the agent count")
      ->required();
  bench->add_option("--timeout", bench_options.timeout_seconds, "per-run seconds")
      ->required();
  bench->add_option("--out", bench_options.out, "CSV path")->required();
  bench->add_option("--trials", bench_options.trials, "runs per size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return kExitUsage;
  }

  try {
    if (*solve) return run_solve(solve_options);
    if (*verify) return run_verify(verify_options);
    if (*gen) return run_gen(gen_options);
    if (*bench) return run_bench(bench_options);
  } catch (const efpa::BudgetExceededError& error) {
    std::cerr << error.what() << std::endl;
    return kExitBudget;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << std::endl;
    return kExitUsage;
  }
  return kExitUsage;
}
