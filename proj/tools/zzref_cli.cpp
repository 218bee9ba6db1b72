// Command-line front end for the zzref library.
//
// Exit codes: 0 success, 2 input error, 3 property violation.

#include <zzref/zzref.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

using namespace zzref;

namespace {

constexpr int kInputError = 2;
constexpr int kViolation = 3;

std::string number(double x) {
  if (std::isinf(x)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Field default_field() {
  const char* env = std::getenv("ZZ_FIELD_PRIME");
  if (!env || !*env) return Field{};
  char* end = nullptr;
  const unsigned long long p = std::strtoull(env, &end, 10);
  if (*end != '\0' || p < 2 || p > Field::kMaxPrime || !Field::is_prime(static_cast<Field::value_type>(p)))
    throw ParseError(std::string("ZZ_FIELD_PRIME: '") + env + "' is not a supported prime");
  return Field(static_cast<Field::value_type>(p));
}

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInfinity;
  std::size_t used = 0;
  double p = 0;
  try {
    p = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !(p >= 1.0)) throw ParseError("--p: expected a number >= 1 or 'inf', got '" + s + "'");
  return p;
}

SymbolicModule as_symbolic(const ModuleFile& f) {
  if (const auto* s = std::get_if<SymbolicModule>(&f)) return *s;
  const auto& v = std::get<ZigzagModule>(f);
  return {v.type(), decompose(v)};
}

ReflectionOp make_op(const std::string& kind, int k, const std::string& boundary, int n) {
  ReflectionKind rk;
  if (kind == "limit")
    rk = ReflectionKind::limit;
  else if (kind == "colimit")
    rk = ReflectionKind::colimit;
  else
    throw ParseError("--kind: expected 'limit' or 'colimit'");
  if (k < 1 || k > n) throw ParseError("--index: " + std::to_string(k) + " is outside [1, " + std::to_string(n) + "]");
  const bool endpoint = k == 1 || k == n;
  if (endpoint != !boundary.empty())
    throw ParseError(endpoint ? "--boundary-dir ('>' or '<') is required at an endpoint"
                              : "--boundary-dir applies only at index 1 or n");
  ReflectionOp op = ReflectionOp::interior(rk, k);
  if (endpoint) {
    if (boundary != ">" && boundary != "<") throw ParseError("--boundary-dir: expected '>' or '<'");
    op = ReflectionOp::endpoint(rk, k, boundary == ">" ? Arrow::forward : Arrow::backward);
  }
  op.validate(n);
  return op;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zigzag persistence modules: decomposition, reflections, and distances"};
  app.require_subcommand(1);

  std::string file, file2, kind, boundary, metric = "reflection", p_text = "1", output;
  int index = 0, n = 6;
  std::size_t max_points = 3, trials = 200;
  std::uint64_t seed = 1;
  unsigned prime = 0, threads = 1;
  bool astar = false, with_truth = false;

  auto* dec = app.add_subcommand("decompose", "Print the persistence diagram of a module");
  dec->add_option("file", file, "Module file")->required();

  auto* syn = app.add_subcommand("synthesize", "Build matrices for a diagram file");
  syn->add_option("file", file, "Diagram file")->required();
  syn->add_option("--prime", prime, "Field prime (default: ZZ_FIELD_PRIME or 2)");

  auto* ref = app.add_subcommand("reflect", "Apply one reflection functor");
  ref->add_option("file", file, "Module file")->required();
  ref->add_option("--kind", kind, "limit or colimit")->required();
  ref->add_option("--index", index, "Index k (1-based)")->required();
  ref->add_option("--boundary-dir", boundary, "Endpoint arrow direction, '>' or '<'");

  auto* ann = app.add_subcommand("annihilate", "Print a reflection sequence that kills the module");
  ann->add_option("file", file, "Module file")->required();

  auto* dist = app.add_subcommand("distance", "Distance between two modules");
  dist->add_option("first", file, "First module file")->required();
  dist->add_option("second", file2, "Second module file")->required();
  dist->add_option("--metric", metric, "reflection or bottleneck")
      ->check(CLI::IsMember({"reflection", "bottleneck"}));
  dist->add_option("--p", p_text, "Exponent p >= 1, or inf");
  dist->add_flag("--astar", astar, "Use A* instead of breadth-first search");

  auto* gen = app.add_subcommand("gen", "Generate a random module");
  gen->add_option("--n", n, "Length")->check(CLI::Range(2, 64));
  gen->add_option("--max-points", max_points, "Maximum number of intervals");
  gen->add_option("--prime", prime, "Field prime (default: ZZ_FIELD_PRIME or 2)");
  gen->add_option("--seed", seed, "Random seed");
  gen->add_flag("--diagram", with_truth, "Print the generating diagram instead of matrices");

  auto* stab = app.add_subcommand("verify-stability", "Check d_b^1 <= d_R^1 on random pairs");
  stab->add_option("--trials", trials, "Number of trials");
  stab->add_option("--n", n, "Maximum length")->check(CLI::Range(2, 12));
  stab->add_option("--max-points", max_points, "Maximum intervals per module");
  stab->add_option("--seed", seed, "Random seed");
  stab->add_option("--threads", threads, "Worker threads");
  stab->add_option("--output", output, "Write the full report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    Field field = default_field();
    if (prime != 0) {
      if (!Field::is_prime(prime) || prime > Field::kMaxPrime)
        throw ParseError("--prime: " + std::to_string(prime) + " is not a supported prime");
      field = Field(prime);
    }

    if (*dec) {
      std::cout << serialize(ModuleFile{as_symbolic(parse_module_file(file, field))});
    } else if (*syn) {
      const auto m = parse_module_file(file, field);
      const auto* s = std::get_if<SymbolicModule>(&m);
      if (!s) throw ParseError(file + ": synthesize expects a diagram file");
      std::cout << serialize(ModuleFile{synthesize(*s, field)});
    } else if (*ref) {
      const auto m = parse_module_file(file, field);
      const int len = std::visit([](const auto& x) { return x.length(); }, m);
      const ReflectionOp op = make_op(kind, index, boundary, len);
      if (const auto* v = std::get_if<ZigzagModule>(&m))
        std::cout << serialize(ModuleFile{reflect(op, *v)});
      else
        std::cout << serialize(ModuleFile{act_raw(op, std::get<SymbolicModule>(m))});
    } else if (*ann) {
      const auto m = parse_module_file(file, field);
      const auto seq = std::holds_alternative<ZigzagModule>(m) ? annihilating_sequence(std::get<ZigzagModule>(m))
                                                               : annihilating_sequence(std::get<SymbolicModule>(m));
      std::cout << "sequence: " << to_string(seq) << "\n";
      std::cout << "length: " << seq.size() << "\n";
    } else if (*dist) {
      const double p = parse_exponent(p_text);
      const auto a = as_symbolic(parse_module_file(file, field));
      const auto b = as_symbolic(parse_module_file(file2, field));
      if (a.length() != b.length()) throw ParseError("modules have different lengths");
      if (metric == "bottleneck") {
        const auto r = bottleneck_distance(a.diagram, b.diagram, p);
        std::cout << "d_b: " << number(r.value) << "\n";
        const auto s = a.diagram.expanded(), t = b.diagram.expanded();
        std::cout << "matched:";
        for (auto [i, j] : r.matching.pairs) std::cout << " " << to_string(s[i]) << "->" << to_string(t[j]);
        std::cout << "\n";
      } else {
        if (std::isinf(p)) throw ParseError("--p inf is only supported for the bottleneck metric");
        const auto r = reflection_distance(a, b, p, {astar});
        std::cout << "d_R: " << number(r.value) << "\n";
        std::cout << "steps_forward: " << r.steps_forward << "\n";
        std::cout << "steps_backward: " << r.steps_backward << "\n";
        std::cout << "witness_forward: " << to_string(r.witness_forward) << "\n";
        std::cout << "witness_backward: " << to_string(r.witness_backward) << "\n";
      }
    } else if (*gen) {
      const auto g = generate_random_module(n, max_points, field.prime(), seed);
      std::cout << (with_truth ? serialize(ModuleFile{g.truth}) : serialize(ModuleFile{g.module}));
    } else if (*stab) {
      const auto rep = stability_experiment(trials, n, max_points, seed, threads, field);
      const std::string text = to_json(rep).dump(2) + "\n";
      if (output.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(output);
        if (!out) throw ParseError("cannot write " + output);
        out << text;
      }
      for (const auto& t : rep.trials)
        if (!t.ok()) {
          std::cerr << "violation in trial " << t.index << ":\n" << to_json(t).dump(2) << "\n";
          return kViolation;
        }
      std::cerr << rep.trials.size() << " trials, no violations\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return 0;
}
